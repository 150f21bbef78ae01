"""Unitary DFT matrices, their eigenspaces, and the bridge to periodic eigenmeasures.

An eigenvector ``c`` of ``U_n`` for eigenvalue ``lam`` gives the
``sqrt(n)``-periodic eigenmeasure ``sum_m c_m Z(0, m/sqrt(n), sqrt(n))``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measure import FourthRoot, MeasureExpr, ZAtom, canonicalize
from .scalar import QuadScalar, normalize_radicand

RANK_CUTOFF = 1e-9


class EigenvectorError(ValueError):
    """The supplied coefficient vector is not an eigenvector of the DFT."""


def fourier_matrix(n: int) -> np.ndarray:
    """``U_n[k, l] = exp(-2 pi i k l / n) / sqrt(n)``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k = np.arange(n)
    # reduce k*l mod n before the exponential to keep the phases exact-ish
    return np.exp(-2j * np.pi * (np.outer(k, k) % n) / n) / np.sqrt(n)


def multiplicities(n: int) -> tuple[int, int, int, int]:
    """Eigenvalue multiplicities of ``U_n`` in the order (1, i, -1, -i)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return (1, 0, 0, 0)
    m, rest = divmod(n, 4)
    return {
        0: (m + 1, m - 1, m, m),
        1: (m + 1, m, m, m),
        2: (m + 1, m, m + 1, m),
        3: (m + 1, m, m + 1, m + 1),
    }[rest]


def spectral_projector(n: int, lam: FourthRoot) -> np.ndarray:
    u = fourier_matrix(n)
    if n <= 2:
        # U is an involution here; only +1 and -1 occur
        if lam in (FourthRoot.I, FourthRoot.MINUS_I):
            return np.zeros((n, n), dtype=complex)
        return 0.5 * (np.eye(n) + lam.value_complex * u)
    p = np.zeros((n, n), dtype=complex)
    power = np.eye(n, dtype=complex)
    for j in range(4):
        p += (lam ** -j).value_complex * power
        power = power @ u
    return p / 4


@dataclass(frozen=True)
class EigvecSet:
    lam: FourthRoot
    vectors: np.ndarray  # shape (k, n), orthonormal rows

    def __len__(self):
        return self.vectors.shape[0]

    def projection_residual(self, c) -> float:
        """Distance from ``c/|c|`` to the span of the basis."""
        c = np.asarray(c, dtype=complex)
        c = c / np.linalg.norm(c)
        if len(self) == 0:
            return 1.0
        coeffs = self.vectors.conj() @ c
        return float(np.linalg.norm(c - self.vectors.T @ coeffs))

    def to_json(self) -> dict:
        return {
            "n": int(self.vectors.shape[1]),
            "lambda": str(self.lam),
            "vectors": [[{"re": float(z.real), "im": float(z.imag)} for z in v]
                        for v in self.vectors],
        }


def eigenbasis(n: int, lam: FourthRoot) -> EigvecSet:
    """Orthonormal basis of ``ker(U_n - lam)`` via the spectral projector."""
    p = spectral_projector(n, lam)
    u, sv, _ = np.linalg.svd(p)
    rank = int(np.sum(sv > RANK_CUTOFF))
    vectors = u[:, :rank].T.copy()
    # fix a phase per vector so output is reproducible: largest entry real positive
    for row in vectors:
        k = int(np.argmax(np.abs(row) > np.abs(row).max() - 1e-12))
        row *= abs(row[k]) / row[k]
    return EigvecSet(lam, vectors.reshape(rank, n))


def eigen_residual(c, lam: FourthRoot) -> float:
    c = np.asarray(c, dtype=complex)
    return float(np.linalg.norm(fourier_matrix(len(c)) @ c - lam.value_complex * c))


def check_palindrome(c, lam: FourthRoot, tol: float = 1e-9) -> bool:
    """``c_0 = lam**2 c_0`` and ``c_{n-k} = lam**2 c_k`` for 1 <= k < n."""
    c = np.asarray(c, dtype=complex)
    sq = (lam ** 2).value_complex
    if abs(c[0] - sq * c[0]) > tol:
        return False
    tail = c[1:]
    return bool(np.all(np.abs(tail[::-1] - sq * tail) <= tol))


def periodic_eigenmeasure(c, lam: FourthRoot, n: int | None = None,
                          tol: float = 1e-9) -> MeasureExpr:
    """``sum_m c_m Z(0, m/sqrt(n), sqrt(n))`` for a DFT eigenvector ``c``."""
    c = np.asarray(c, dtype=complex)
    if n is None:
        n = len(c)
    if len(c) != n:
        raise ValueError(f"vector has length {len(c)}, expected {n}")
    res = eigen_residual(c, lam)
    if res > tol * max(1.0, float(np.linalg.norm(c))):
        raise EigenvectorError(f"U_{n} c != {lam} c (residual {res:.3e})")
    _, d = normalize_radicand(n)
    step = QuadScalar.sqrt(n).inverse()
    zero = QuadScalar.rational(0, d)
    atoms = tuple(ZAtom(complex(cm), zero, step * m) for m, cm in enumerate(c))
    return canonicalize(MeasureExpr(n, d, atoms))


def measure_to_vector(mu: MeasureExpr) -> tuple[int, np.ndarray] | None:
    """Inverse of :func:`periodic_eigenmeasure`, or None outside that normal form."""
    mu = canonicalize(mu)
    if mu.alpha_sq.denominator != 1:
        return None
    n = mu.n
    root = QuadScalar.sqrt(n)
    c = np.zeros(n, dtype=complex)
    for atom in mu.atoms:
        if atom.r != 0:
            return None
        m = atom.s * root
        if not m.is_rational or m.a.denominator != 1:
            return None
        c[int(m.a) % n] += atom.amp
    return n, c

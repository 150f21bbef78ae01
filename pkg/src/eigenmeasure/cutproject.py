"""Shadow measures from the self-dual planar lattices (rotated copies of Z^2).

A lattice point ``z = m u + n v`` with ``u = (cos t, sin t)``, ``v = (-sin t, cos t)``
contributes a point mass ``g(y)`` at its horizontal coordinate ``x``.  When
``g^ = lam g`` the resulting comb satisfies ``w^ = conj(lam) w``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .schwartz import (
    DEFAULT_WINDOW,
    PairingReport,
    TestFunction,
    analytic_ft,
    default_probes,
    ft_eigenvalue,
    gaussian,
    pair,
)

DEFAULT_PRUNE = 1e-14


@dataclass(frozen=True)
class Lattice2D:
    """``Gamma_theta``; ``tan_pq = (p, q)`` records an exact rational slope ``tan(theta) = p/q``."""

    theta: float
    tan_pq: tuple[int, int] | None = None

    def __post_init__(self):
        if not 0 <= self.theta < math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2), got {self.theta}")

    @classmethod
    def from_angle(cls, theta: float) -> "Lattice2D":
        return cls(float(theta))

    @classmethod
    def rational(cls, p: int, q: int) -> "Lattice2D":
        if p < 0 or q < 1:
            raise ValueError("rational slope needs p >= 0 and q >= 1")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        return cls(math.atan2(p, q), (p, q))

    @property
    def cos(self) -> float:
        if self.tan_pq is not None:
            p, q = self.tan_pq
            return q / math.hypot(p, q)
        return math.cos(self.theta)

    @property
    def sin(self) -> float:
        if self.tan_pq is not None:
            p, q = self.tan_pq
            return p / math.hypot(p, q)
        return math.sin(self.theta)

    def basis(self) -> np.ndarray:
        """Columns ``u_theta``, ``v_theta``."""
        c, s = self.cos, self.sin
        return np.array([[c, -s], [s, c]])

    @property
    def period_sq(self) -> int | None:
        """``p**2 + q**2`` for rational slopes (the horizontal period squared)."""
        if self.tan_pq is None:
            return None
        p, q = self.tan_pq
        return p * p + q * q


class LatticePoints(NamedTuple):
    m: np.ndarray
    n: np.ndarray
    x: np.ndarray
    y: np.ndarray


def lattice_points(lattice: Lattice2D, window: float, internal: float | None = None) -> LatticePoints:
    """Points with ``|x| <= window`` and ``|y| <= internal`` (default: ``window``)."""
    if window <= 0:
        raise ValueError("window must be positive")
    internal = window if internal is None else internal
    bound = math.ceil(math.hypot(window, internal)) + 1
    k = np.arange(-bound, bound + 1)
    m, n = (a.ravel() for a in np.meshgrid(k, k, indexing="ij"))
    c, s = lattice.cos, lattice.sin
    x = m * c - n * s
    y = m * s + n * c
    keep = (np.abs(x) <= window) & (np.abs(y) <= internal)
    return LatticePoints(m[keep], n[keep], x[keep], y[keep])


@dataclass(frozen=True)
class WeightedComb:
    positions: np.ndarray
    weights: np.ndarray
    window: float
    prune: float
    lattice: Lattice2D | None = None

    def __len__(self):
        return len(self.positions)

    def to_csv(self) -> str:
        lines = ["position,re,im"]
        lines += [f"{x:.17g},{w.real:.17g},{w.imag:.17g}" for x, w in zip(self.positions, self.weights)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "prune": self.prune,
            "atoms": [{"position": float(x), "re": float(w.real), "im": float(w.imag)}
                      for x, w in zip(self.positions, self.weights)],
        }


def shadow_measure(g: TestFunction, lattice: Lattice2D, window: float = DEFAULT_WINDOW,
                   prune: float = DEFAULT_PRUNE) -> WeightedComb:
    """Project the lattice horizontally, weighting each point by ``g`` of its height."""
    internal = g.reach(min(prune, 1e-14) if prune > 0 else 1e-16)
    pts = lattice_points(lattice, window, internal)
    w = g(pts.y)
    if lattice.tan_pq is not None:
        p, q = lattice.tan_pq
        alpha = math.sqrt(p * p + q * q)
        # x = (m q - n p)/alpha; merge exactly on the integer label
        label = pts.m * q - pts.n * p
        labels, inv = np.unique(label, return_inverse=True)
        merged = np.zeros(labels.size, dtype=complex)
        np.add.at(merged, inv, w)
        x, w = labels / alpha, merged
    else:
        order = np.argsort(pts.x, kind="stable")
        x, w = pts.x[order], w[order]
    keep = np.abs(w) > prune
    return WeightedComb(x[keep], w[keep], window, prune, lattice)


class CosetCoefficients(NamedTuple):
    coefficients: np.ndarray
    max_deviation: float


def coset_coefficients(w: WeightedComb, p: int, q: int) -> CosetCoefficients:
    """Common weights ``c_0 .. c_{N-1}`` on the cosets ``j/alpha + alpha Z``, ``N = p^2 + q^2``."""
    if w.lattice is None or w.lattice.tan_pq is None:
        raise ValueError("coset coefficients need a lattice with rational slope")
    g = math.gcd(p, q)
    if w.lattice.tan_pq != (p // g, q // g):
        raise ValueError(f"comb was built for tan(theta) = {w.lattice.tan_pq}, not {p}/{q}")
    n_cosets = (p * p + q * q) // (g * g)
    alpha = math.sqrt(n_cosets)
    labels = np.rint(w.positions * alpha).astype(np.int64)
    if w.positions.size and np.abs(w.positions * alpha - labels).max() > 1e-9:
        raise ValueError("comb positions are not on (1/alpha) Z")
    coeffs = np.zeros(n_cosets, dtype=complex)
    deviation = 0.0
    for j in range(n_cosets):
        vals = w.weights[labels % n_cosets == j]
        if vals.size:
            # interior atoms carry the fully converged internal sums
            coeffs[j] = vals[np.argmin(np.abs(w.positions[labels % n_cosets == j]))]
            deviation = max(deviation, float(np.abs(vals - coeffs[j]).max()))
    return CosetCoefficients(coeffs, deviation)


def verify_shadow_eigen(g: TestFunction, lattice: Lattice2D,
                        probes: Sequence[TestFunction] | None = None, tol: float = 1e-6,
                        window: float = DEFAULT_WINDOW) -> PairingReport:
    """Residuals ``|<w, phi^> - conj(lam) <w, phi>|`` for the shadow of ``g``."""
    lam = ft_eigenvalue(g)
    if lam is None:
        raise ValueError("g is not an eigenfunction of the Fourier transform")
    probes = list(probes) if probes is not None else default_probes()
    reach = max(max(p.reach(), analytic_ft(p).reach()) for p in probes)
    window = max(window, reach)
    w = shadow_measure(g, lattice, window, prune=0.0)
    factor = lam.conjugate().value_complex
    residuals = [abs(pair(w, analytic_ft(phi), window) - factor * pair(w, phi, window))
                 for phi in probes]
    return PairingReport([float(r) for r in residuals], [p.describe() for p in probes], tol)


def default_probes_2d() -> list[tuple[TestFunction, TestFunction]]:
    return [
        (gaussian(1.0), gaussian(1.0)),
        (gaussian(1.0), gaussian(2.0)),
        (gaussian(1.0, c=1 / 3), gaussian(0.5, b=0.5)),
    ]


def verify_psf_2d(lattice: Lattice2D,
                  probes: Sequence[tuple[TestFunction, TestFunction]] | None = None,
                  tol: float = 1e-8, window: float = DEFAULT_WINDOW) -> PairingReport:
    """Residuals of ``sum_z phi1(x) phi2(y) = sum_z phi1^(x) phi2^(y)`` over ``Gamma_theta``."""
    probes = list(probes) if probes is not None else default_probes_2d()
    reach = max(max(f.reach(), analytic_ft(f).reach()) for pr in probes for f in pr)
    pts = lattice_points(lattice, max(window, reach))
    residuals, names = [], []
    for f1, f2 in probes:
        lhs = np.sum(f1(pts.x) * f2(pts.y))
        rhs = np.sum(analytic_ft(f1)(pts.x) * analytic_ft(f2)(pts.y))
        residuals.append(float(abs(lhs - rhs)))
        names.append(f"{f1.describe()} x {f2.describe()}")
    return PairingReport(residuals, names, tol)

"""The Fourier transform on comb expressions and its order-four cycle structure."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .measure import (
    DEFAULT_EPS,
    ROOTS,
    FourthRoot,
    MeasureExpr,
    ZAtom,
    _assemble,
    add,
    canonicalize,
    equals,
    linear_combination,
    make_z,
    refine,
    reflect,
    scale,
)
from .scalar import QuadScalar, phase_value, reduce_mod


@lru_cache(maxsize=None)
def _unit_root(m: int, n: int) -> complex:
    """``exp(2 pi i m/n)``, exact at quarter turns."""
    return phase_value(QuadScalar(Fraction(m % n, n)))


@lru_cache(maxsize=1 << 16)
def _transform_atom(r: QuadScalar, s: QuadScalar, n: int, d: int) -> tuple:
    """Canonical terms of F(Z(r, s, sqrt(n))) over the same lattice ``sqrt(n)*Z``.

    F(Z(r, s, a)) = exp(2 pi i r s)/a * Z(-s, r, 1/a), and Z(., ., 1/sqrt(n))
    splits into the n cosets Z(-s, r + k/sqrt(n), sqrt(n)).
    """
    mu = MeasureExpr(Fraction(n), d)
    alpha, inv_alpha = mu.alpha, mu.inv_alpha
    front = phase_value(r * s) / math.sqrt(n)
    # the new frequency -s reduces once, shifting by j steps of 1/alpha
    freq, j = reduce_mod(-s, inv_alpha)
    # the translates r + k/alpha: one full residue system mod alpha
    rho, _ = reduce_mod(r, inv_alpha)
    k_top = (Fraction(n, 2) - rho * alpha).floor()
    base = front * (phase_value(rho * inv_alpha * j) if j else 1)
    out = []
    k = k_top - n + 1
    shift = rho + inv_alpha * k
    for _ in range(n):
        coef = base * _unit_root(j * k, n) if j else base
        out.append(((shift, freq), coef))
        shift, k = shift + inv_alpha, k + 1
    return tuple(out)


def _integral(mu: MeasureExpr) -> MeasureExpr:
    if mu.alpha_sq.denominator == 1:
        return canonicalize(mu)
    # alpha**2 = p/q: move to beta = sqrt(p*q) first
    return refine(mu, mu.alpha_sq.denominator)


def fourier(mu: MeasureExpr, eps: float = DEFAULT_EPS) -> MeasureExpr:
    """Transform of a comb expression, returned over the input's lattice."""
    mu = _integral(mu)
    n, d = mu.n, mu.d
    acc: dict = {}
    for atom in mu.atoms:
        for key, coef in _transform_atom(atom.r, atom.s, n, d):
            acc[key] = acc.get(key, 0j) + atom.amp * coef
    return _assemble(mu, acc, eps)


def fourier_pow(mu: MeasureExpr, k: int) -> MeasureExpr:
    """``F**k`` for any integer k (taken mod 4)."""
    out = _integral(mu)
    for _ in range(k % 4):
        out = fourier(out)
    return out


def cycle(mu: MeasureExpr) -> list[MeasureExpr]:
    """``[mu, F mu, F^2 mu, F^3 mu]``."""
    out = [_integral(mu)]
    for _ in range(3):
        out.append(fourier(out[-1]))
    return out


def _cycle_sum(powers: list[MeasureExpr], lam: FourthRoot, weight: float) -> MeasureExpr:
    terms = [(weight * (lam ** -j).value_complex, p) for j, p in enumerate(powers)]
    return linear_combination(terms)


def project(mu: MeasureExpr, lam: FourthRoot) -> MeasureExpr:
    """Cycle projector ``(1/4) sum_j lam**-j F**j`` onto the lam-eigenspace."""
    return _cycle_sum(cycle(mu), lam, 0.25)


def decompose(mu: MeasureExpr) -> dict[FourthRoot, MeasureExpr]:
    """All four projections, sharing one computation of the transform powers."""
    powers = cycle(mu)
    return {lam: _cycle_sum(powers, lam, 0.25) for lam in ROOTS}


def even_odd_split(mu: MeasureExpr) -> tuple[MeasureExpr, MeasureExpr]:
    mu = canonicalize(mu)
    rho = reflect(mu)
    return scale(0.5, add(mu, rho)), scale(0.5, add(mu, scale(-1, rho)))


def build_y(r, s, n: int, lam: FourthRoot) -> MeasureExpr:
    """``(id + lam^-1 F + lam^-2 F^2 + lam^-3 F^3) Z(r, s, sqrt(n))``."""
    return _cycle_sum(cycle(make_z(1, r, s, n)), lam, 1.0)


def classify(mu: MeasureExpr, tol: float = DEFAULT_EPS) -> FourthRoot | None:
    """The eigenvalue of ``mu`` under F, or None when it is not an eigenmeasure."""
    mu = _integral(mu)
    if not mu.atoms:
        raise ValueError("the zero measure is not an eigenmeasure")
    image = fourier(mu)
    hits = [lam for lam in ROOTS if equals(image, scale(lam, mu), tol)]
    return hits[0] if len(hits) == 1 else None


def check_symmetry(mu: MeasureExpr, lam: FourthRoot, tol: float = DEFAULT_EPS) -> bool:
    """Whether ``I.mu = lam**2 * mu`` holds, as it must for an eigenmeasure."""
    mu = canonicalize(mu)
    return equals(reflect(mu), scale(lam ** 2, mu), tol)


def omega(s, n: int = 1) -> MeasureExpr:
    """The modulated comb ``Z(s, s, sqrt(n))``."""
    return canonicalize(make_z(1, s, s, n))


def nu_m(mu: MeasureExpr, m: int) -> MeasureExpr:
    """``mu + i^m F mu + i^2m F^2 mu + i^3m F^3 mu``; an eigenmeasure for (-i)^m."""
    powers = cycle(mu)
    return linear_combination([((1j ** (m * j)), p) for j, p in enumerate(powers)])


__all__ = [
    "ZAtom",
    "build_y",
    "check_symmetry",
    "classify",
    "cycle",
    "decompose",
    "even_odd_split",
    "fourier",
    "fourier_pow",
    "nu_m",
    "omega",
    "project",
]

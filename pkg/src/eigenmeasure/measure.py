"""Finite linear combinations of modulated shifted Dirac combs.

A single comb ``Z(r, s, alpha)`` is the measure

    sum_k exp(2*pi*i*r*(s + k*alpha)) * delta_{s + k*alpha},

i.e. the lattice ``alpha*Z`` shifted by ``s`` and modulated by the character
of frequency ``r``.  A :class:`MeasureExpr` holds finitely many such combs
with complex amplitudes at one fixed lattice constant.  Parameters are exact
elements of Q(sqrt(d)); amplitudes are floating point.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .scalar import QuadScalar, RadicandError, normalize_radicand, phase_value, reduce_mod

DEFAULT_EPS = 1e-9


class AmbientError(ValueError):
    """Raised when combining expressions over different lattice constants."""


class FourthRoot(enum.Enum):
    """A fourth root of unity, the only possible eigenvalues of the transform."""

    ONE = 0
    I = 1
    MINUS_ONE = 2
    MINUS_I = 3

    @property
    def value_complex(self) -> complex:
        return (1 + 0j, 1j, -1 + 0j, -1j)[self.value]

    def __complex__(self):
        return self.value_complex

    def __mul__(self, other: "FourthRoot") -> "FourthRoot":
        return FourthRoot((self.value + other.value) % 4)

    def __pow__(self, k: int) -> "FourthRoot":
        return FourthRoot((self.value * k) % 4)

    def inverse(self) -> "FourthRoot":
        return FourthRoot((-self.value) % 4)

    def conjugate(self) -> "FourthRoot":
        return self.inverse()

    def __str__(self):
        return ("1", "i", "-1", "-i")[self.value]

    @classmethod
    def parse(cls, text: str) -> "FourthRoot":
        table = {"1": cls.ONE, "i": cls.I, "-1": cls.MINUS_ONE, "-i": cls.MINUS_I,
                 "+1": cls.ONE, "+i": cls.I}
        key = text.strip().replace(" ", "")
        if key not in table:
            raise ValueError(f"not a fourth root of unity: {text!r}")
        return table[key]

    @classmethod
    def from_complex(cls, z: complex, tol: float = 1e-12) -> "FourthRoot":
        for root in cls:
            if abs(z - root.value_complex) <= tol:
                return root
        raise ValueError(f"{z} is not a fourth root of unity")


ROOTS = tuple(FourthRoot)


@dataclass(frozen=True, slots=True)
class ZAtom:
    amp: complex
    r: QuadScalar
    s: QuadScalar


def _ambient_alpha(alpha_sq: Fraction) -> tuple[QuadScalar, int]:
    """``sqrt(p/q) = sqrt(p*q)/q`` as an exact scalar, plus its radicand."""
    p, q = alpha_sq.numerator, alpha_sq.denominator
    f, d = normalize_radicand(p * q)
    return QuadScalar.sqrt(p * q, Fraction(1, q)), d


@dataclass(frozen=True)
class MeasureExpr:
    """A finite sum of combs ``amp * Z(r, s, alpha)`` with ``alpha**2 = alpha_sq``.

    ``d`` is the radicand of the field that holds the parameters.  It is the
    square-free core of ``alpha_sq`` unless that core is 1, in which case any
    field may be used (a rational lattice constant lives in every Q(sqrt(d))).
    """

    alpha_sq: Fraction
    d: int
    atoms: tuple[ZAtom, ...] = ()
    canonical: bool = False
    alpha: QuadScalar = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alpha_sq = Fraction(self.alpha_sq)
        if alpha_sq <= 0:
            raise ValueError("lattice constant must be positive")
        object.__setattr__(self, "alpha_sq", alpha_sq)
        alpha, core = _ambient_alpha(alpha_sq)
        if core != 1 and core != self.d:
            raise RadicandError(
                f"lattice constant sqrt({alpha_sq}) does not lie in Q(sqrt({self.d}))")
        object.__setattr__(self, "alpha", alpha.over(self.d) if core == 1 else alpha)
        atoms = tuple(self.atoms)
        for atom in atoms:
            for x in (atom.r, atom.s):
                if x.d != self.d and not x.is_rational:
                    raise RadicandError(f"parameter {x} does not lie in Q(sqrt({self.d}))")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def zero(cls, n, d: int | None = None) -> "MeasureExpr":
        n = Fraction(n)
        if d is None:
            d = normalize_radicand(n.numerator * n.denominator)[1]
        return cls(n, d, (), True)

    @property
    def n(self) -> int:
        """The integer ``alpha**2``; only defined for integral lattice constants."""
        if self.alpha_sq.denominator != 1:
            raise AmbientError(f"alpha**2 = {self.alpha_sq} is not an integer")
        return self.alpha_sq.numerator

    @property
    def f(self) -> int:
        return normalize_radicand(self.n)[0]

    @property
    def inv_alpha(self) -> QuadScalar:
        return self.alpha.inverse()

    def is_zero(self) -> bool:
        return len(canonicalize(self).atoms) == 0

    def __len__(self):
        return len(self.atoms)

    def __add__(self, other):
        if not isinstance(other, MeasureExpr):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, MeasureExpr):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, c):
        if isinstance(c, FourthRoot):
            c = c.value_complex
        if not isinstance(c, (int, float, complex)):
            return NotImplemented
        return scale(c, self)

    def to_json(self) -> dict:
        mu = canonicalize(self)
        out: dict = {}
        if mu.alpha_sq.denominator == 1:
            out["n"] = mu.alpha_sq.numerator
        else:
            out["alpha_sq"] = f"{mu.alpha_sq.numerator}/{mu.alpha_sq.denominator}"
        out["atoms"] = [
            {"r": a.r.over(mu.d).to_json(), "s": a.s.over(mu.d).to_json(),
             "amp": {"re": a.amp.real, "im": a.amp.imag}}
            for a in mu.atoms
        ]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MeasureExpr":
        alpha_sq = Fraction(obj["n"]) if "n" in obj else Fraction(obj["alpha_sq"])
        atoms = []
        for a in obj.get("atoms", []):
            r, s = QuadScalar.from_json(a["r"]), QuadScalar.from_json(a["s"])
            atoms.append(ZAtom(complex(a["amp"]["re"], a["amp"]["im"]), r, s))
        d = _field_of(alpha_sq, (x for a in atoms for x in (a.r, a.s)))
        atoms = [ZAtom(a.amp, a.r.over(d), a.s.over(d)) for a in atoms]
        return canonicalize(cls(alpha_sq, d, tuple(atoms)))


def _field_of(alpha_sq: Fraction, params: Iterable[QuadScalar]) -> int:
    core = normalize_radicand(alpha_sq.numerator * alpha_sq.denominator)[1]
    ds = {x.d for x in params if not x.is_rational}
    if core != 1:
        ds.add(core)
    if len(ds) > 1:
        raise RadicandError(f"parameters mix radicands {sorted(ds)}")
    return ds.pop() if ds else 1


def make_z(amp: complex, r, s, n) -> MeasureExpr:
    """Single comb ``amp * Z(r, s, sqrt(n))``; not canonicalized."""
    n = Fraction(n)
    r, s = QuadScalar.coerce(r), QuadScalar.coerce(s)
    d = _field_of(n, (r, s))
    return MeasureExpr(n, d, (ZAtom(complex(amp), r.over(d), s.over(d)),))


def dirac_comb(n: int = 1) -> MeasureExpr:
    """The unmodulated comb on ``sqrt(n)*Z``."""
    return canonicalize(make_z(1, 0, 0, n))


def _atom_order(x: tuple, y: tuple) -> int:
    (sx, rx), (sy, ry) = x, y
    c = (sx - sy).sign()
    return c if c else (rx - ry).sign()


_sort_key = cmp_to_key(_atom_order)


def _reduce_pair(r: QuadScalar, s: QuadScalar, alpha: QuadScalar, inv_alpha: QuadScalar):
    s_red, _ = reduce_mod(s, alpha)
    r_red, m = reduce_mod(r, inv_alpha)
    phase = phase_value(s_red * inv_alpha * m) if m else 1 + 0j
    return r_red, s_red, phase


def _assemble(mu: MeasureExpr, acc: dict, eps: float) -> MeasureExpr:
    keys = sorted((k for k, v in acc.items() if abs(v) > eps), key=_sort_key)
    atoms = tuple(ZAtom(acc[k], k[1], k[0]) for k in keys)
    return MeasureExpr(mu.alpha_sq, mu.d, atoms, True)


def canonicalize(mu: MeasureExpr, eps: float = DEFAULT_EPS) -> MeasureExpr:
    """Reduce every comb to the fundamental domain and merge like terms.

    The translate is reduced first (no phase), then the frequency, which
    picks up ``exp(2*pi*i*m*s/alpha)`` when shifted by ``m/alpha``.  Terms
    with ``|amp| <= eps`` are dropped.
    """
    if mu.canonical and eps == DEFAULT_EPS:
        return mu
    alpha, inv_alpha = mu.alpha, mu.inv_alpha
    acc: dict = {}
    for atom in mu.atoms:
        r, s, phase = _reduce_pair(atom.r, atom.s, alpha, inv_alpha)
        key = (s, r)
        acc[key] = acc.get(key, 0j) + atom.amp * phase
    return _assemble(mu, acc, eps)


def _accumulate(mus: Sequence[tuple[complex, MeasureExpr]], eps: float) -> MeasureExpr:
    base = mus[0][1]
    acc: dict = {}
    for c, mu in mus:
        for atom in canonicalize(mu).atoms:
            key = (atom.s, atom.r)
            acc[key] = acc.get(key, 0j) + c * atom.amp
    return _assemble(base, acc, eps)


def _check_same(mu: MeasureExpr, nu: MeasureExpr) -> None:
    if mu.alpha_sq != nu.alpha_sq:
        raise AmbientError(
            f"ambient mismatch: alpha**2 = {mu.alpha_sq} vs {nu.alpha_sq}; rebase first")
    if mu.d != nu.d:
        raise RadicandError(f"field mismatch: sqrt({mu.d}) vs sqrt({nu.d})")


def lift_field(mu: MeasureExpr, d: int) -> MeasureExpr:
    """Move an expression with rational data into Q(sqrt(d))."""
    if mu.d == d:
        return mu
    atoms = tuple(ZAtom(a.amp, a.r.over(d), a.s.over(d)) for a in mu.atoms)
    return MeasureExpr(mu.alpha_sq, d, atoms, mu.canonical)


def add(mu: MeasureExpr, nu: MeasureExpr, eps: float = DEFAULT_EPS) -> MeasureExpr:
    _check_same(mu, nu)
    return _accumulate([(1, mu), (1, nu)], eps)


def linear_combination(terms: Sequence[tuple[complex, MeasureExpr]],
                       eps: float = DEFAULT_EPS) -> MeasureExpr:
    """``sum c_i * mu_i`` over expressions sharing one ambient."""
    if not terms:
        raise ValueError("empty linear combination")
    for _, mu in terms[1:]:
        _check_same(terms[0][1], mu)
    return _accumulate(list(terms), eps)


def scale(c, mu: MeasureExpr, eps: float = DEFAULT_EPS) -> MeasureExpr:
    if isinstance(c, FourthRoot):
        c = c.value_complex
    return _accumulate([(complex(c), mu)], eps)


def refine(mu: MeasureExpr, k: int) -> MeasureExpr:
    """Rewrite over the coarser lattice ``k*alpha*Z`` (``k`` cosets per comb)."""
    if k < 1:
        raise ValueError("refinement factor must be a positive integer")
    if k == 1:
        return canonicalize(mu)
    alpha = mu.alpha
    atoms = [ZAtom(a.amp, a.r, a.s + alpha * m) for a in mu.atoms for m in range(k)]
    target = MeasureExpr(mu.alpha_sq * k * k, mu.d, tuple(atoms))
    return canonicalize(target)


def rebase(mu: MeasureExpr, p: int, q: int) -> MeasureExpr:
    """Coset decomposition from ``alpha = sqrt(p/q)`` to ``beta = sqrt(p*q)``."""
    if math.gcd(p, q) != 1 or p < 1 or q < 1:
        raise ValueError(f"p, q must be coprime positive integers, got {p}, {q}")
    if mu.alpha_sq != Fraction(p, q):
        raise AmbientError(f"alpha**2 = {mu.alpha_sq}, not {p}/{q}")
    return refine(mu, q)


def common_ambient(mu: MeasureExpr, nu: MeasureExpr) -> tuple[MeasureExpr, MeasureExpr]:
    """Refine both expressions to the smallest common lattice, if one exists."""
    if mu.d != nu.d:
        if mu.d == 1:
            mu = lift_field(mu, nu.d)
        elif nu.d == 1:
            nu = lift_field(nu, mu.d)
        else:
            raise RadicandError(f"field mismatch: sqrt({mu.d}) vs sqrt({nu.d})")
    if mu.alpha_sq == nu.alpha_sq:
        return mu, nu
    ratio = mu.alpha_sq / nu.alpha_sq
    u, v = math.isqrt(ratio.numerator), math.isqrt(ratio.denominator)
    if u * u != ratio.numerator or v * v != ratio.denominator:
        raise AmbientError(
            f"lattices sqrt({mu.alpha_sq})Z and sqrt({nu.alpha_sq})Z are incommensurate")
    # alpha_mu / alpha_nu = u/v, so v*alpha_mu = u*alpha_nu
    return refine(mu, v), refine(nu, u)


def reflect(mu: MeasureExpr) -> MeasureExpr:
    """Push-forward under ``x -> -x``."""
    atoms = tuple(ZAtom(a.amp, -a.r, -a.s) for a in mu.atoms)
    return canonicalize(MeasureExpr(mu.alpha_sq, mu.d, atoms))


def conjugate(mu: MeasureExpr) -> MeasureExpr:
    atoms = tuple(ZAtom(a.amp.conjugate(), -a.r, a.s) for a in mu.atoms)
    return canonicalize(MeasureExpr(mu.alpha_sq, mu.d, atoms))


def max_difference(mu: MeasureExpr, nu: MeasureExpr) -> float:
    """Largest absolute amplitude difference between canonical forms."""
    _check_same(mu, nu)
    acc: dict = {}
    for atom in canonicalize(mu).atoms:
        acc[(atom.s, atom.r)] = atom.amp
    for atom in canonicalize(nu).atoms:
        key = (atom.s, atom.r)
        acc[key] = acc.get(key, 0j) - atom.amp
    return max((abs(v) for v in acc.values()), default=0.0)


def equals(mu: MeasureExpr, nu: MeasureExpr, tol: float = DEFAULT_EPS) -> bool:
    return max_difference(mu, nu) <= tol


def support_atoms(mu: MeasureExpr, window: float) -> list[tuple[float, complex]]:
    """All support points within ``|x| <= window`` with their point masses."""
    xs, ws = support_arrays(mu, window)
    return list(zip(xs.tolist(), ws.tolist()))


def support_arrays(mu: MeasureExpr, window: float) -> tuple[np.ndarray, np.ndarray]:
    if window <= 0:
        raise ValueError("window must be positive")
    mu = canonicalize(mu)
    alpha = float(mu.alpha)
    xs, ws = [], []
    for atom in mu.atoms:
        s, r = float(atom.s), float(atom.r)
        k0 = math.ceil((-window - s) / alpha) - 1
        k1 = math.floor((window - s) / alpha) + 1
        k = np.arange(k0, k1 + 1)
        x = s + k * alpha
        x = x[np.abs(x) <= window]
        xs.append(x)
        ws.append(atom.amp * np.exp(2j * np.pi * r * x))
    if not xs:
        return np.empty(0), np.empty(0, dtype=complex)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    order = np.argsort(x, kind="stable")
    return x[order], w[order]

"""Test functions with closed-form transforms, and the pairing oracle.

The transform convention throughout is ``g^(y) = int exp(-2 pi i x y) g(x) dx``.
A measure ``mu`` and its symbolic transform are checked against the
distributional identity ``<F mu, phi> = <mu, F phi>`` on Gaussian probes.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .measure import FourthRoot, MeasureExpr, support_arrays

HERMITE_MAX_DEGREE = 60
DEFAULT_WINDOW = 12.0
QUAD_HALF_WIDTH = 12.0
QUAD_STEP = 1.0 / 256


def hermite(k: int, x):
    """Normalised Hermite function ``h_k(x)`` with ``h_k^ = (-i)**k h_k``.

    ``h_k(x) = (sqrt(2)/(2**k k!))**(1/2) H_k(sqrt(2 pi) x) exp(-pi x**2)``,
    evaluated by the three-term recurrence of the normalised functions.
    """
    if k < 0 or k > HERMITE_MAX_DEGREE:
        raise ValueError(f"Hermite degree must lie in [0, {HERMITE_MAX_DEGREE}], got {k}")
    x = np.asarray(x, dtype=float)
    t = math.sqrt(2 * math.pi) * x
    prev = np.zeros_like(x)
    cur = 2 ** 0.25 * np.exp(-math.pi * x * x)
    for j in range(k):
        prev, cur = cur, math.sqrt(2.0 / (j + 1)) * t * cur - math.sqrt(j / (j + 1)) * prev
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class Gaussian:
    """``amp * exp(2 pi i b (x - c)) * exp(-pi a (x - c)**2)``."""

    amp: complex = 1.0
    a: float = 1.0
    b: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("Gaussian width parameter must be positive")

    def __call__(self, x):
        u = np.asarray(x, dtype=float) - self.c
        return self.amp * np.exp(2j * np.pi * self.b * u - np.pi * self.a * u * u)

    def ft(self) -> "Gaussian":
        amp = self.amp * self.a ** -0.5 * cmath.exp(-2j * math.pi * self.b * self.c)
        return Gaussian(amp, 1.0 / self.a, -self.c, self.b)

    def scaled(self, z: complex) -> "Gaussian":
        return Gaussian(z * self.amp, self.a, self.b, self.c)

    def reach(self, level: float) -> float:
        """Distance from the origin beyond which ``|term| < level * |amp|``."""
        return abs(self.c) + math.sqrt(-math.log(level) / (math.pi * self.a))

    def describe(self) -> str:
        return f"gauss(a={self.a:g}, b={self.b:g}, c={self.c:g})"


@dataclass(frozen=True)
class Hermite:
    amp: complex = 1.0
    k: int = 0

    def __call__(self, x):
        return self.amp * hermite(self.k, x)

    def ft(self) -> "Hermite":
        return Hermite(self.amp * (-1j) ** self.k, self.k)

    def scaled(self, z: complex) -> "Hermite":
        return Hermite(z * self.amp, self.k)

    def reach(self, level: float) -> float:
        # turning point plus a Gaussian tail margin
        return math.sqrt((2 * self.k + 1) / (2 * math.pi)) + math.sqrt(-math.log(level) / math.pi) + 1

    def describe(self) -> str:
        return f"hermite({self.k})"


Term = Union[Gaussian, Hermite]


@dataclass(frozen=True)
class TestFunction:
    """A finite sum of Gaussian and Hermite terms."""

    __test__ = False  # not a pytest class

    terms: tuple[Term, ...] = ()

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for term in self.terms:
            out = out + term(x)
        return out

    def __add__(self, other: "TestFunction") -> "TestFunction":
        return TestFunction(self.terms + other.terms)

    def __mul__(self, z: complex) -> "TestFunction":
        return TestFunction(tuple(t.scaled(z) for t in self.terms))

    __rmul__ = __mul__

    def reach(self, level: float = 1e-14) -> float:
        return max((t.reach(level) for t in self.terms), default=0.0)

    def describe(self) -> str:
        return " + ".join(t.describe() for t in self.terms) or "0"


def gaussian(a: float = 1.0, b: float = 0.0, c: float = 0.0, amp: complex = 1.0) -> TestFunction:
    return TestFunction((Gaussian(complex(amp), a, b, c),))


def hermite_fn(k: int, amp: complex = 1.0) -> TestFunction:
    if k < 0 or k > HERMITE_MAX_DEGREE:
        raise ValueError(f"Hermite degree must lie in [0, {HERMITE_MAX_DEGREE}], got {k}")
    return TestFunction((Hermite(complex(amp), k),))


def analytic_ft(phi: TestFunction) -> TestFunction:
    return TestFunction(tuple(t.ft() for t in phi.terms))


def ft_eigenvalue(g: TestFunction, tol: float = 1e-10) -> FourthRoot | None:
    """The root ``lam`` with ``g^ = lam g`` (checked on a grid), if any."""
    x = np.linspace(-8, 8, 641)
    gx, fx = g(x), analytic_ft(g)(x)
    scale_ = max(1.0, float(np.abs(gx).max()))
    for lam in FourthRoot:
        if np.abs(fx - lam.value_complex * gx).max() <= tol * scale_:
            return lam
    return None


def pair(mu, phi: TestFunction, window: float = DEFAULT_WINDOW) -> complex:
    """``<mu, phi>`` truncated to the support points with ``|x| <= window``."""
    if window <= 0:
        raise ValueError("window must be positive")
    if isinstance(mu, MeasureExpr):
        x, w = support_arrays(mu, window)
    else:
        x, w = mu.positions, mu.weights
        keep = np.abs(x) <= window
        x, w = x[keep], w[keep]
    if x.size == 0:
        return 0j
    return complex(np.sum(w * phi(x)))


def simpson(y: np.ndarray, h: float) -> complex:
    """Composite Simpson rule on an odd number of equally spaced samples."""
    if y.shape[-1] % 2 == 0:
        raise ValueError("Simpson's rule needs an odd number of samples")
    return h / 3 * (y[..., 0] + y[..., -1] + 4 * y[..., 1:-1:2].sum(-1) + 2 * y[..., 2:-1:2].sum(-1))


def quad_grid(half_width: float = QUAD_HALF_WIDTH, step: float = QUAD_STEP) -> np.ndarray:
    count = int(round(2 * half_width / step))
    return np.linspace(-half_width, half_width, count + 1)


def quad_inner(f: TestFunction, g: TestFunction,
               half_width: float = QUAD_HALF_WIDTH, step: float = QUAD_STEP) -> complex:
    """``<f|g> = int conj(f) g dx`` by Simpson's rule."""
    x = quad_grid(half_width, step)
    return complex(simpson(np.conj(f(x)) * g(x), step))


def quadrature_ft(phi: TestFunction, y, half_width: float = QUAD_HALF_WIDTH,
                  step: float = QUAD_STEP) -> np.ndarray:
    """Brute-force ``int exp(-2 pi i x y) phi(x) dx`` at the points ``y``."""
    x = quad_grid(half_width, step)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    kernel = np.exp(-2j * np.pi * np.outer(y, x))
    return simpson(kernel * phi(x), step)


def hermite_sum_rule(k: int, K: int = 20) -> float:
    """``|sum_{|m| <= K} h_k(m)|``; vanishes for k not divisible by 4."""
    m = np.arange(-K, K + 1, dtype=float)
    return float(abs(np.sum(hermite(k, m))))


def default_probes() -> list[TestFunction]:
    """27 Gaussians: widths {1/2, 1, 2} x shifts {0, 1/3, 1/sqrt 2} x modulations {0, 1/2, 1}."""
    return [gaussian(a, b, c)
            for a in (0.5, 1.0, 2.0)
            for c in (0.0, 1 / 3, 1 / math.sqrt(2))
            for b in (0.0, 0.5, 1.0)]


@dataclass
class PairingReport:
    residuals: list[float]
    probes: list[str]
    tol: float
    max_residual: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_residual = max(self.residuals, default=0.0)
        self.passed = self.max_residual < self.tol

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
            "probes": [{"probe": p, "residual": r} for p, r in zip(self.probes, self.residuals)],
        }


def _window_for(probes: Sequence[TestFunction], window: float) -> float:
    need = max(max(p.reach(), analytic_ft(p).reach()) for p in probes)
    return max(window, need)


def verify_transform(mu: MeasureExpr, probes: Sequence[TestFunction] | None = None,
                     tol: float = 1e-8, window: float = DEFAULT_WINDOW,
                     transform: MeasureExpr | None = None) -> PairingReport:
    """Check ``<F mu, phi> = <mu, phi^>`` probe by probe.

    ``transform`` defaults to the symbolic transform of ``mu``; passing a
    different measure tests that one instead.
    """
    from .fourier import fourier

    probes = list(probes) if probes is not None else default_probes()
    window = _window_for(probes, window)
    if transform is None:
        transform = fourier(mu)
    x0, w0 = support_arrays(mu, window)
    x1, w1 = support_arrays(transform, window)
    residuals = []
    for phi in probes:
        lhs = np.sum(w1 * phi(x1)) if x1.size else 0j
        rhs = np.sum(w0 * analytic_ft(phi)(x0)) if x0.size else 0j
        residuals.append(float(abs(lhs - rhs)))
    return PairingReport(residuals, [p.describe() for p in probes], tol)

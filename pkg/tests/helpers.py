"""Random generators shared by the test modules."""
import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from eigenmeasure.measure import MeasureExpr, ZAtom
from eigenmeasure.scalar import QuadScalar, normalize_radicand

CORPUS_SIZE = 500
CORPUS_SEED = 20240917


def random_rational(rng: random.Random, max_den: int = 12, span: int = 2) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * den, span * den), den)


def random_param(rng: random.Random, d: int) -> QuadScalar:
    b = random_rational(rng) if d > 1 and rng.random() < 0.5 else Fraction(0)
    return QuadScalar(random_rational(rng), b, d)


def random_measure(rng: random.Random, max_n: int = 12, max_atoms: int = 3) -> MeasureExpr:
    n = rng.randint(1, max_n)
    _, d = normalize_radicand(n)
    atoms = tuple(
        ZAtom(rng.uniform(0.1, 1) * complex(math.cos(t), math.sin(t)), random_param(rng, d), random_param(rng, d))
        for t in (rng.uniform(0, 2 * math.pi) for _ in range(rng.randint(1, max_atoms)))
    )
    return MeasureExpr(n, d, atoms)


def make_corpus(size: int = CORPUS_SIZE, seed: int = CORPUS_SEED, max_n: int = 12) -> list[MeasureExpr]:
    rng = random.Random(seed)
    return [random_measure(rng, max_n) for _ in range(size)]


def rationals(max_den: int = 12, span: int = 3):
    return st.builds(lambda num, den: Fraction(num, den),
                     st.integers(-span * 12, span * 12), st.integers(1, max_den))


def quad_scalars(d: int):
    if d == 1:
        return st.builds(lambda a: QuadScalar(a, 0, 1), rationals())
    return st.builds(lambda a, b: QuadScalar(a, b, d), rationals(), rationals())


@st.composite
def measures(draw, max_n: int = 12, max_atoms: int = 3):
    n = draw(st.integers(1, max_n))
    _, d = normalize_radicand(n)
    count = draw(st.integers(1, max_atoms))
    # amplitudes stay well above the merge tolerance
    amp = st.builds(lambda m, t: m * complex(math.cos(t), math.sin(t)),
                    st.floats(0.1, 1), st.floats(0, 2 * math.pi))
    atoms = tuple(ZAtom(draw(amp), draw(quad_scalars(d)), draw(quad_scalars(d))) for _ in range(count))
    return MeasureExpr(n, d, atoms)

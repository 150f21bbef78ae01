import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from eigenmeasure.dsl import (
    BinOp,
    Comb,
    DslError,
    Proj,
    Scaled,
    Unary,
    YNode,
    ZNode,
    evaluate,
    evaluate_text,
    format_measure,
    parse,
)
from eigenmeasure.fourier import classify, project
from eigenmeasure.measure import FourthRoot, canonicalize, dirac_comb, equals, make_z, max_difference
from eigenmeasure.scalar import QuadScalar
from helpers import measures


def test_parse_examples():
    assert parse("dirac_comb(1)") == Comb(1)
    node = parse("ft(Z(0, 1/2*sqrt(2), 2))")
    assert isinstance(node, Unary) and node.op == "ft" and isinstance(node.arg, ZNode)
    assert node.arg.s.to_quad() == QuadScalar(0, Fraction(1, 2), 2)
    with pytest.raises(DslError) as err:
        parse("Z(1/2, 1/3, 1) + (")
    assert err.value.offset == 17


def test_parse_node_kinds():
    node = parse("2*proj(-i, Y(1/4, 1/3, 5, i)) - refl(conj(Z(0,0,1)))")
    assert isinstance(node, BinOp) and node.op == "-"
    assert isinstance(node.left, Scaled) and isinstance(node.left.arg, Proj)
    assert node.left.arg.root is FourthRoot.MINUS_I
    assert isinstance(node.left.arg.arg, YNode) and node.left.arg.arg.root is FourthRoot.I
    assert isinstance(node.right, Unary) and node.right.op == "refl"


def test_scalar_syntax():
    mu = evaluate_text("(0.5-2*i)*Z(1/3-1/6*sqrt(12), -sqrt(3)/4, 3)")
    atom = make_z(0.5 - 2j, QuadScalar(Fraction(1, 3), Fraction(-1, 3), 3), QuadScalar(0, Fraction(-1, 4), 3), 3)
    assert equals(mu, atom, 1e-15)
    assert equals(evaluate_text("-Z(0,0,1)"), make_z(-1, 0, 0, 1), 0)
    assert equals(evaluate_text("i*Z(0,0,1)"), make_z(1j, 0, 0, 1), 0)
    assert equals(evaluate_text("1e-1*Z(0,0,1)"), make_z(0.1, 0, 0, 1), 1e-17)


def test_evaluate_examples():
    assert equals(evaluate_text("ft(dirac_comb(1))"), dirac_comb(1), 1e-12)
    mu = evaluate_text("proj(i, Z(1/4,1/3,1))")
    assert not mu.atoms or classify(mu) is FourthRoot.I
    assert equals(mu, project(make_z(1, Fraction(1, 4), Fraction(1, 3), 1), FourthRoot.I), 1e-15)
    assert classify(evaluate_text("(1+1*sqrt(2))*Z(0,0,2) + Z(0,1/2*sqrt(2),2)")) is FourthRoot.ONE


def test_mixed_lattices_are_unified():
    mu = evaluate_text("Z(0,0,1) + Z(0,0,4)")
    assert mu.n == 4
    assert equals(mu, evaluate_text("2*Z(0,0,4) + Z(0,1,4)"), 1e-15)


@pytest.mark.parametrize("text, offset", [
    ("Z(1/2, 1/3, 1) + (", 17),
    ("Z(1/2, 1/3, 1) $", 15),
    ("Z(1, 2, 0)", 8),
    ("foo(1)", 0),
    ("Z(1, 2, 3", 9),
    ("Z(sqrt(3), 0, 2)", 0),
    ("proj(2, Z(0,0,1))", 5),
    ("Z(0,0,1) Z(0,0,1)", 9),
    ("2*Z(0,0", 7),
    ("Z(0,0,1) + Z(0,0,2)", None),
    ("", 0),
    ("Z(i, 0, 1)", 0),
])
def test_errors_have_offsets(text, offset):
    with pytest.raises(ValueError) as err:
        evaluate_text(text)
    if offset is not None:
        assert isinstance(err.value, DslError)
        assert err.value.offset == offset


def random_expression(rng: random.Random, depth: int = 0) -> str:
    n = rng.choice([1, 2, 3, 4, 5, 6, 8, 12])
    rad = {2: 2, 3: 3, 5: 5, 6: 6, 8: 2, 12: 3}.get(n)

    def param():
        text = f"{rng.randint(-7, 7)}/{rng.randint(1, 9)}"
        if rad and rng.random() < 0.5:
            text += f"+{rng.randint(1, 5)}/{rng.randint(1, 9)}*sqrt({rad})"
        return text

    atom = f"Z({param()}, {param()}, {n})"
    roll = rng.random()
    if depth > 1 or roll < 0.3:
        return atom
    if roll < 0.45:
        return f"ft({random_expression(rng, depth + 1)})"
    if roll < 0.55:
        return f"proj({rng.choice(['1', 'i', '-1', '-i'])}, {atom})"
    if roll < 0.65:
        return f"Y({param()}, {param()}, {n}, {rng.choice(['1', 'i', '-1', '-i'])})"
    if roll < 0.75:
        return f"({rng.randint(1, 5)}-{rng.randint(1, 5)}*i)*{atom}"
    if roll < 0.85:
        return f"refl({atom}) - conj({atom})"
    return f"{atom} + {atom}"


def test_format_round_trip_corpus():
    rng = random.Random(5)
    texts = [random_expression(rng) for _ in range(50)]
    for text in texts:
        mu = evaluate_text(text)
        again = evaluate_text(format_measure(mu))
        assert max_difference(again, mu) == 0, text


@settings(max_examples=100, deadline=None)
@given(measures())
def test_format_round_trip_random(mu):
    mu = canonicalize(mu)
    assert max_difference(evaluate_text(format_measure(mu)), mu) == 0


def test_format_zero():
    assert format_measure(evaluate_text("Z(0,0,3) - Z(0,0,3)")) == "0*dirac_comb(3)"
    assert evaluate_text("0*dirac_comb(3)").atoms == ()

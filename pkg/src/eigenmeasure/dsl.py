"""A small expression language for comb measures.

Grammar::

    expr   := term { ("+" | "-") term }
    term   := [scalar "*"] prim | "-" term
    prim   := "Z(" scalar "," scalar "," uint ")"
            | "Y(" scalar "," scalar "," uint "," root ")"
            | "ft(" expr ")" | "refl(" expr ")" | "conj(" expr ")"
            | "proj(" root "," expr ")" | "dirac_comb(" uint ")" | "(" expr ")"
    root   := "1" | "i" | "-1" | "-i"
    scalar := sums and products of rationals, sqrt(uint) and i

``Z(r, s, n)`` is the comb on ``s + sqrt(n) Z`` modulated with frequency ``r``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .fourier import build_y, fourier, project
from .measure import (
    FourthRoot,
    MeasureExpr,
    canonicalize,
    common_ambient,
    conjugate,
    dirac_comb,
    make_z,
    reflect,
    scale,
)
from .scalar import QuadScalar, normalize_radicand


class DslError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"at offset {offset}: {message}")
        self.offset = offset
        self.message = message


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[()+\-*/,])
""", re.VERBOSE)

KEYWORDS = {"Z", "Y", "ft", "refl", "conj", "proj", "dirac_comb", "sqrt", "i"}


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "eof"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "name" and m.group() not in KEYWORDS:
            raise DslError(f"unknown name {m.group()!r}", pos)
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


# -- scalar literals --------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    """``sum coeff * sqrt(d) * i**k`` with square-free ``d`` and ``k`` in {0, 1}."""

    terms: tuple[tuple[int, int, Fraction], ...]  # (d, k, coeff), no zero coeffs

    @classmethod
    def build(cls, items) -> "Scalar":
        acc: dict = {}
        for d, k, c in items:
            acc[(d, k)] = acc.get((d, k), Fraction(0)) + c
        return cls(tuple(sorted((d, k, c) for (d, k), c in acc.items() if c != 0)))

    @classmethod
    def rational(cls, x: Fraction) -> "Scalar":
        return cls.build([(1, 0, Fraction(x))])

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar.build(self.terms + other.terms)

    def __neg__(self) -> "Scalar":
        return Scalar(tuple((d, k, -c) for d, k, c in self.terms))

    def __mul__(self, other: "Scalar") -> "Scalar":
        items = []
        for d1, k1, c1 in self.terms:
            for d2, k2, c2 in other.terms:
                f, d = normalize_radicand(d1 * d2)
                c = c1 * c2 * f
                k = k1 + k2
                if k == 2:
                    c, k = -c, 0
                items.append((d, k, c))
        return Scalar.build(items)

    def as_rational(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][:2] == (1, 0):
            return self.terms[0][2]
        return None

    def to_quad(self) -> QuadScalar:
        if any(k for _, k, _ in self.terms):
            raise ValueError("comb parameters must be real")
        ds = {d for d, _, _ in self.terms if d != 1}
        if len(ds) > 1:
            raise ValueError(f"scalar mixes radicands {sorted(ds)}")
        d = ds.pop() if ds else 1
        a = sum((c for dd, _, c in self.terms if dd == 1), Fraction(0))
        b = sum((c for dd, _, c in self.terms if dd != 1), Fraction(0))
        return QuadScalar(a, b, d)

    def to_complex(self) -> complex:
        total = 0j
        for d, k, c in self.terms:
            total += float(c) * d ** 0.5 * (1j if k else 1)
        return total


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class ZNode:
    r: Scalar
    s: Scalar
    n: int
    offset: int = 0


@dataclass(frozen=True)
class YNode:
    r: Scalar
    s: Scalar
    n: int
    root: FourthRoot
    offset: int = 0


@dataclass(frozen=True)
class Comb:
    n: int


@dataclass(frozen=True)
class Unary:
    op: str  # "ft", "refl", "conj"
    arg: "Node"


@dataclass(frozen=True)
class Proj:
    root: FourthRoot
    arg: "Node"


@dataclass(frozen=True)
class Scaled:
    coef: Scalar
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # "+" or "-"
    left: "Node"
    right: "Node"


Node = Union[ZNode, YNode, Comb, Unary, Proj, Scaled, BinOp]


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, what: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DslError(f"expected {what}, found {found}", tok.offset)

    def _accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.pos += 1
            return True
        return False

    def _expect(self, text: str) -> Token:
        tok = self.tok
        if not self._accept(text):
            self._fail(repr(text))
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self._fail("end of input")
        return node

    # expr := term { (+|-) term }
    def expr(self) -> Node:
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        start = self.pos
        try:
            coef = self.scalar(strict=True)
        except (_Backtrack, DslError):
            coef = None
        if coef is not None and self.tok.text == "*":
            # committed: errors in the measure are reported where they occur
            self.pos += 1
            return Scaled(coef, self.prim())
        self.pos = start
        if self._accept("-"):
            return Scaled(Scalar.rational(Fraction(-1)), self.term())
        return self.prim()

    def prim(self) -> Node:
        tok = self.tok
        if tok.text == "(":
            self.pos += 1
            try:
                node = self.expr()
                self._expect(")")
            except DslError as err:
                if self.tok.kind == "eof":
                    raise DslError("unclosed '('", tok.offset) from err
                raise
            return node
        if tok.kind != "name":
            self._fail("a measure")
        name = tok.text
        self.pos += 1
        self._expect("(")
        if name == "Z":
            r = self.scalar()
            self._expect(",")
            s = self.scalar()
            self._expect(",")
            n = self.uint()
            node = ZNode(r, s, n, tok.offset)
        elif name == "Y":
            r = self.scalar()
            self._expect(",")
            s = self.scalar()
            self._expect(",")
            n = self.uint()
            self._expect(",")
            node = YNode(r, s, n, self.root(), tok.offset)
        elif name in ("ft", "refl", "conj"):
            node = Unary(name, self.expr())
        elif name == "proj":
            root = self.root()
            self._expect(",")
            node = Proj(root, self.expr())
        elif name == "dirac_comb":
            node = Comb(self.uint())
        else:
            raise DslError(f"{name!r} is not a measure constructor", tok.offset)
        self._expect(")")
        return node

    def uint(self) -> int:
        tok = self.tok
        if tok.kind != "num" or not tok.text.isdigit() or int(tok.text) < 1:
            self._fail("a positive integer")
        self.pos += 1
        return int(tok.text)

    def root(self) -> FourthRoot:
        tok = self.tok
        sign = ""
        if self._accept("-"):
            sign = "-"
        if self.tok.text in ("1", "i"):
            text = sign + self.tok.text
            self.pos += 1
            return FourthRoot.parse(text)
        self.pos -= bool(sign)
        raise DslError("expected a fourth root of unity (1, i, -1, -i)", tok.offset)

    # scalar := sterm { (+|-) sterm }
    def scalar(self, strict: bool = False) -> Scalar:
        value = self.sterm(strict)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            save = self.pos
            neg = self.tok.text == "-"
            self.pos += 1
            try:
                nxt = self.sterm(strict=True)
            except (_Backtrack, DslError):
                self.pos = save
                break
            value = value + (-nxt if neg else nxt)
        return value

    def sterm(self, strict: bool = False) -> Scalar:
        neg = False
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            neg ^= self.tok.text == "-"
            self.pos += 1
        value = self.factor(strict)
        while self.tok.kind == "op" and self.tok.text in ("*", "/"):
            save = self.pos
            op = self.tok.text
            self.pos += 1
            try:
                rhs = self.factor(strict=True)
            except (_Backtrack, DslError):
                self.pos = save
                break
            if op == "*":
                value = value * rhs
            else:
                q = rhs.as_rational()
                if q is None or q == 0:
                    raise DslError("division only by nonzero rationals", self.tokens[save].offset)
                value = value * Scalar.rational(1 / q)
        return -value if neg else value

    def factor(self, strict: bool = False) -> Scalar:
        tok = self.tok
        if tok.kind == "num":
            self.pos += 1
            return Scalar.rational(Fraction(tok.text))
        if tok.text == "i" and tok.kind == "name":
            self.pos += 1
            return Scalar.build([(1, 1, Fraction(1))])
        if tok.text == "sqrt":
            self.pos += 1
            self._expect("(")
            k = self.uint()
            self._expect(")")
            f, d = normalize_radicand(k)
            return Scalar.build([(d, 0, Fraction(f))])
        if tok.text == "(":
            save = self.pos
            self.pos += 1
            try:
                value = self.scalar(strict=True)
                if self.tok.text != ")":
                    raise _Backtrack
                self.pos += 1
                return value
            except (_Backtrack, DslError):
                self.pos = save
                if strict:
                    raise _Backtrack
                self._fail("a scalar")
        if strict:
            raise _Backtrack
        self._fail("a scalar")


def parse(text: str) -> Node:
    return Parser(text).parse()


# -- evaluation -------------------------------------------------------------

def _z_params(node, r: Scalar, s: Scalar):
    try:
        return r.to_quad(), s.to_quad()
    except ValueError as err:
        raise DslError(str(err), getattr(node, "offset", 0)) from err


def evaluate(node: Node) -> MeasureExpr:
    """Reduce an AST to a canonical measure, unifying lattices as needed."""
    if isinstance(node, ZNode):
        r, s = _z_params(node, node.r, node.s)
        try:
            return canonicalize(make_z(1, r, s, node.n))
        except ValueError as err:
            raise DslError(str(err), node.offset) from err
    if isinstance(node, YNode):
        r, s = _z_params(node, node.r, node.s)
        try:
            return build_y(r, s, node.n, node.root)
        except ValueError as err:
            raise DslError(str(err), node.offset) from err
    if isinstance(node, Comb):
        return dirac_comb(node.n)
    if isinstance(node, Unary):
        arg = evaluate(node.arg)
        return {"ft": fourier, "refl": reflect, "conj": conjugate}[node.op](arg)
    if isinstance(node, Proj):
        return project(evaluate(node.arg), node.root)
    if isinstance(node, Scaled):
        return scale(node.coef.to_complex(), evaluate(node.arg))
    if isinstance(node, BinOp):
        left, right = common_ambient(evaluate(node.left), evaluate(node.right))
        if node.op == "-":
            right = scale(-1, right)
        return left + right
    raise TypeError(f"unknown node {node!r}")


def evaluate_text(text: str) -> MeasureExpr:
    return evaluate(parse(text))


def _num(x: float) -> str:
    return repr(float(x))


def format_measure(mu: MeasureExpr) -> str:
    """Render a measure in the expression language (re-parses to the same measure)."""
    mu = canonicalize(mu)
    n = mu.n
    if not mu.atoms:
        return f"0*dirac_comb({n})"
    parts = []
    for atom in mu.atoms:
        re_, im = atom.amp.real, atom.amp.imag
        sign = "-" if (im < 0 or (im == 0 and str(im).startswith("-"))) else "+"
        coef = f"({_num(re_)}{sign}{_num(abs(im))}*i)"
        parts.append(f"{coef}*Z({atom.r.to_dsl()}, {atom.s.to_dsl()}, {n})")
    return " + ".join(parts)

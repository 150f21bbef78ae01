"""Exact comb calculus and numerical checks for Fourier eigenmeasures on the real line."""
from .scalar import PhaseExponent, QuadScalar, normalize_radicand, phase_value, reduce_mod
from .measure import (
    FourthRoot,
    MeasureExpr,
    ZAtom,
    add,
    canonicalize,
    conjugate,
    dirac_comb,
    equals,
    make_z,
    rebase,
    reflect,
    scale,
    support_atoms,
)
from .fourier import build_y, check_symmetry, classify, even_odd_split, fourier, fourier_pow, project

__version__ = "0.1.0"

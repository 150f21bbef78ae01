"""Command-line front end.

Output is JSON on stdout (CSV where requested).  Exit status: 0 on success,
1 when a verification fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from . import dft
from .fourier import classify, fourier, project
from .cutproject import Lattice2D, coset_coefficients, shadow_measure
from .dsl import DslError, evaluate_text
from .measure import FourthRoot, support_atoms
from .schwartz import default_probes, hermite_fn, verify_transform


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-i" through as a value, the way argparse already treats "-1"
        self._negative_number_matcher = re.compile(r"^-(i|\d+|\d*\.\d+)$")

    def error(self, message):
        raise UsageError(message)


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{name} must be a number, got {raw!r}") from None


def _read_expr(text: str) -> str:
    return sys.stdin.read() if text == "-" else text


def _root(text: str) -> FourthRoot:
    try:
        return FourthRoot.parse(text)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _complex_list(text: str) -> np.ndarray:
    try:
        return np.array([complex(v.strip().replace("i", "j").replace(" ", ""))
                         for v in text.split(",")])
    except ValueError:
        raise UsageError(f"cannot read vector {text!r}") from None


def _theta(text: str) -> Lattice2D:
    m = re.fullmatch(r"\s*atan\(\s*(\d+)\s*/\s*(\d+)\s*\)\s*", text)
    try:
        if m:
            return Lattice2D.rational(int(m.group(1)), int(m.group(2)))
        return Lattice2D.from_angle(float(text))
    except ValueError as err:
        raise UsageError(f"bad --theta {text!r}: {err}") from None


def _hermite_weight(text: str):
    m = re.fullmatch(r"hermite:(\d+)", text.strip())
    if not m:
        raise UsageError(f"--g must look like hermite:K, got {text!r}")
    return hermite_fn(int(m.group(1)))


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_points(points, fmt: str, out) -> None:
    if fmt == "csv":
        out.write("position,re,im\n")
        for x, w in points:
            out.write(f"{x:.17g},{w.real:.17g},{w.imag:.17g}\n")
    else:
        _emit_json({"atoms": [{"position": x, "re": w.real, "im": w.imag} for x, w in points]}, out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eigenmeasure", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("transform", help="Fourier transform of an expression")
    s.add_argument("expr")
    s = sub.add_parser("classify", help="eigenvalue of an expression, if any")
    s.add_argument("expr")
    s.add_argument("--tol", type=float)
    s = sub.add_parser("project", help="cycle projection onto one eigenvalue")
    s.add_argument("root")
    s.add_argument("expr")
    s = sub.add_parser("dft", help="DFT eigenvalue multiplicities and eigenbases")
    s.add_argument("n", type=int)
    s.add_argument("--eigenvalue")
    s = sub.add_parser("periodic", help="periodic eigenmeasure from a DFT eigenvector")
    s.add_argument("n", type=int)
    s.add_argument("root")
    s.add_argument("--vector", help="comma-separated complex coefficients")
    s = sub.add_parser("verify", help="check the transform against the pairing oracle")
    s.add_argument("expr")
    s.add_argument("--tol", type=float)
    s.add_argument("--probes", type=int, help="use only the first K default probes")
    s = sub.add_parser("shadow", help="shadow measure of a rotated square lattice")
    s.add_argument("--theta", required=True, help='angle in radians or "atan(p/q)"')
    s.add_argument("--g", required=True, help="internal weight, hermite:K")
    s.add_argument("--window", type=float)
    s.add_argument("--prune", type=float, default=1e-14)
    s.add_argument("--out", choices=("csv", "json"), default="json")
    s = sub.add_parser("sample", help="support points of an expression in a window")
    s.add_argument("expr")
    s.add_argument("--window", type=float)
    s.add_argument("--out", choices=("csv", "json"), default="json")
    return p


def _dispatch(args, out) -> int:
    tol_default = _env_float("EIG_TOL", 1e-9)
    window_default = _env_float("EIG_WINDOW", 12.0)
    cmd = args.command

    if cmd == "transform":
        _emit_json(fourier(evaluate_text(_read_expr(args.expr))).to_json(), out)
    elif cmd == "classify":
        mu = evaluate_text(_read_expr(args.expr))
        lam = classify(mu, args.tol if args.tol is not None else tol_default)
        _emit_json({"eigenvalue": None if lam is None else str(lam)}, out)
    elif cmd == "project":
        lam = _root(args.root)
        _emit_json(project(evaluate_text(_read_expr(args.expr)), lam).to_json(), out)
    elif cmd == "dft":
        if args.n < 1:
            raise UsageError("n must be a positive integer")
        roots = [_root(args.eigenvalue)] if args.eigenvalue else list(FourthRoot)
        _emit_json({
            "n": args.n,
            "multiplicities": list(dft.multiplicities(args.n)),
            "eigenspaces": [dft.eigenbasis(args.n, lam).to_json() for lam in roots],
        }, out)
    elif cmd == "periodic":
        if args.n < 1:
            raise UsageError("n must be a positive integer")
        lam = _root(args.root)
        if args.vector:
            c = _complex_list(args.vector)
        else:
            basis = dft.eigenbasis(args.n, lam)
            if len(basis) == 0:
                raise VerificationFailed(f"U_{args.n} has no eigenvector for {lam}")
            c = basis.vectors[0]
        try:
            mu = dft.periodic_eigenmeasure(c, lam, args.n, tol=tol_default)
        except dft.EigenvectorError as err:
            raise VerificationFailed(str(err)) from None
        found = classify(mu, tol_default) if mu.atoms else None
        _emit_json({
            "n": args.n,
            "lambda": str(lam),
            "vector": [{"re": float(z.real), "im": float(z.imag)} for z in c],
            "eigenvalue": None if found is None else str(found),
            "measure": mu.to_json(),
        }, out)
        if found is not lam:
            return 1
    elif cmd == "verify":
        mu = evaluate_text(_read_expr(args.expr))
        probes = default_probes()
        if args.probes is not None:
            if not 1 <= args.probes <= len(probes):
                raise UsageError(f"--probes must lie in 1..{len(probes)}")
            probes = probes[: args.probes]
        tol = args.tol if args.tol is not None else 1e-8
        report = verify_transform(mu, probes, tol=tol, window=window_default)
        _emit_json(report.to_json(), out)
        return 0 if report.passed else 1
    elif cmd == "shadow":
        lattice = _theta(args.theta)
        g = _hermite_weight(args.g)
        window = args.window if args.window is not None else window_default
        if window <= 0:
            raise UsageError("--window must be positive")
        comb = shadow_measure(g, lattice, window, args.prune)
        if args.out == "csv":
            out.write(comb.to_csv())
        else:
            obj = {"theta": lattice.theta, "g": args.g.strip(), **comb.to_json()}
            if lattice.tan_pq is not None:
                cc = coset_coefficients(comb, *lattice.tan_pq)
                obj["cosets"] = {
                    "coefficients": [{"re": float(z.real), "im": float(z.imag)}
                                     for z in cc.coefficients],
                    "max_deviation": cc.max_deviation,
                }
            _emit_json(obj, out)
    elif cmd == "sample":
        window = args.window if args.window is not None else window_default
        if window <= 0:
            raise UsageError("--window must be positive")
        _emit_points(support_atoms(evaluate_text(_read_expr(args.expr)), window), args.out, out)
    return 0


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, out)
    except UsageError as e:
        err.write(f"eigenmeasure: usage error: {e}\n")
        return 2
    except VerificationFailed as e:
        err.write(f"eigenmeasure: verification failed: {e}\n")
        return 1
    except DslError as e:
        err.write(f"eigenmeasure: syntax error {e}\n")
        return 2
    except (ValueError, ArithmeticError) as e:
        err.write(f"eigenmeasure: error: {' '.join(str(e).split())}\n")
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

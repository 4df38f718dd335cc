"""Command-line interface.

Exit codes: 0 success, 1 verification or expectation failure, 2 usage or
input error.  Angles are radians throughout.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import curves
from .errors import LatticeExp3Error, PoleHit
from .exp_circle import DEDUP_TOL, make_subset
from .knot_cert import Polyline3, Verdict, certify
from .lattice_core import Basis, enumerate_generator_triangles, gauss_reduce, is_rectangular
from .phi_map import Degenerate, phi, phi_inverse
from .verify import SUITES, run_suite

TOL_ENV = "LATTICE_EXP3_TOL"

CHIRALITY_NOTE = (
    "RightTrefoil means Jones = -t^-4 + t^-3 + t^-1 (diagram writhe -3); "
    "LeftTrefoil is the mirror t + t^3 - t^4"
)


class UsageError(Exception):
    pass


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError("numbers must be finite")
    return vals


def _tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEDUP_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError(f"{TOL_ENV} must be positive")
    return tol


def _basis(args) -> Basis:
    return Basis.from_coords(*_floats(args.basis, 4))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_phi(args) -> int:
    tol = _tolerance()
    if args.degenerate is not None:
        s = phi(Degenerate(args.degenerate), tol)
    elif args.basis is not None:
        s = phi(_basis(args), tol)
    else:
        raise UsageError("phi needs --basis or --degenerate")
    _emit({"subset": list(s.points)})
    return 0


def cmd_phi_inv(args) -> int:
    tol = _tolerance()
    angles = _floats(args.angles)
    if not 1 <= len(angles) <= 3:
        raise UsageError("--angles takes one to three values")
    L = phi_inverse(make_subset(angles, tol), tol)
    if isinstance(L, Degenerate):
        _emit({"basis": None, "degenerate": L.direction})
    else:
        _emit({"basis": L.basis.as_lists(), "degenerate": None})
    return 0


def cmd_reduce(args) -> int:
    b = _basis(args)
    _emit({"basis": gauss_reduce(b).as_lists(), "rectangular": is_rectangular(b)})
    return 0


def cmd_triangles(args) -> int:
    tris = enumerate_generator_triangles(_basis(args))
    out = [[[p.x, p.y] for p in t.vertices()] for t in tris]
    _emit({"triangles": out, "count": len(out)})
    return 0


def cmd_trefoil_curve(args) -> int:
    if args.samples < 8:
        raise UsageError("--samples must be at least 8")
    if not 0 < args.delta < math.pi / 6:
        raise UsageError("--delta must lie in (0, pi/6)")
    fmt = args.format or (curves.format_of(args.out) if args.out and "." in args.out else "csv")
    if fmt not in curves.FORMATS:
        raise UsageError(f"unknown format {fmt!r}")
    tol = _tolerance()
    try:
        if args.curve == "torus":
            s3 = curves.torus_knot_curve(args.samples)
        else:
            s3 = curves.pushoff_curve(args.samples, args.delta, tol)
        pts = curves.to_r3(s3)
    except PoleHit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = curves.dumps_polyline(pts, fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _matches(verdict: Verdict, expect: str) -> bool:
    if expect.lower() == "trefoil":
        return verdict.is_trefoil
    return verdict.value.lower() == expect.lower()


def cmd_certify(args) -> int:
    try:
        pts = curves.read_polyline(args.path, args.format)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read polyline {args.path!r}: {exc}") from None
    cert = certify(Polyline3(pts), args.seed)
    _emit({
        "verdict": cert.verdict.value,
        "jones": {str(e): v for e, v in sorted(cert.jones.coeffs.items())},
        "crossings": cert.crossings,
        "convention": CHIRALITY_NOTE,
    })
    if args.expect is not None and not _matches(cert.verdict, args.expect):
        print(f"expected {args.expect}, got {cert.verdict.value}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    checks = run_suite(args.suite, args.seed, args.n)
    passed = all(c.passed for c in checks)
    _emit({
        "suite": args.suite,
        "seed": args.seed,
        "n": args.n,
        "passed": passed,
        "checks": [c.as_dict() for c in checks],
    })
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattice-exp3", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="image of a lattice in exp_3 RP^1")
    p.add_argument("--basis", help="ux,uy,vx,vy")
    p.add_argument("--degenerate", type=float, help="angle of a degenerate lattice")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("phi-inv", help="lattice with a given image")
    p.add_argument("--angles", required=True, help="one to three comma-separated angles")
    p.set_defaults(func=cmd_phi_inv)

    p = sub.add_parser("reduce", help="Gauss-Lagrange reduced basis")
    p.add_argument("--basis", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("triangles", help="non-obtuse generating triangles at the origin")
    p.add_argument("--basis", required=True)
    p.set_defaults(func=cmd_triangles)

    p = sub.add_parser("trefoil-curve", help="emit the push-off or torus curve as a polyline")
    p.add_argument("--samples", type=int, default=720)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--curve", choices=("pushoff", "torus"), default="pushoff")
    p.add_argument("--out")
    p.add_argument("--format", choices=curves.FORMATS)
    p.set_defaults(func=cmd_trefoil_curve)

    p = sub.add_parser("certify", help="knot verdict for a polyline file")
    p.add_argument("path")
    p.add_argument("--format", choices=curves.FORMATS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--expect", help="trefoil, unknot, RightTrefoil, LeftTrefoil or Other")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=1000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LatticeExp3Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: every command writes one JSON document to stdout.

Exit codes: 0 success, 1 verification failure, 2 usage error (including a
lambda too close to an excluded value), 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import braid, projectors, smatrix, spectrum, spinchain, transfer
from .errors import BraidlabError, ResourceError, SingularityError
from .params import load_params, params_to_dict, random_param_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def _theta(args, which: str = "theta") -> complex:
    return complex(getattr(args, which), getattr(args, which + "_im"))


def _cmd_gen_params(args):
    p = random_param_set(
        args.N, args.seed, low=args.low, high=args.high, imaginary=args.imaginary, boltzmann=args.boltzmann
    )
    return params_to_dict(p), EXIT_OK


def _cmd_check(args):
    if args.kind == "projectors":
        N = args.N
        if N is None:
            if args.params is None:
                raise _UsageError("check projectors needs --N or --params")
            N = load_params(args.params).N
        tol = 0.0 if args.tol is None else args.tol
        rep = projectors.verify_projector_algebra(N, tol)
        residuals = {
            "orthogonality": rep.orthogonality,
            "completeness": rep.completeness,
            "idempotence": rep.idempotence,
        }
        doc = {"check": "projectors", "N": N, "tol": tol, "residuals": residuals, "passed": rep.passed}
        return doc, EXIT_OK if rep.passed else EXIT_FAIL

    if args.params is None:
        raise _UsageError(f"check {args.kind} needs --params")
    p = load_params(args.params)
    t1 = _theta(args)
    doc = {"check": args.kind, "N": p.N, "theta": _cplx(t1)}
    if args.kind in ("braid", "ybe"):
        t2 = _theta(args, "theta2")
        fn = braid.braid_residual if args.kind == "braid" else braid.ybe_residual
        residuals = {"raw": fn(p, t1, t2), "scaled": fn(p, t1, t2, scaled=True)}
        doc["theta2"] = _cplx(t2)
        tol = 1e-10 if args.tol is None else args.tol
        passed = residuals["scaled"] <= tol
    elif args.kind == "unitarity":
        if t1.imag != 0:
            raise _UsageError("unitarity is checked at real theta only")
        residuals = {"unitarity": braid.unitarity_residual(p, t1.real)}
        tol = 1e-10 if args.tol is None else args.tol
        passed = residuals["unitarity"] <= tol
    else:
        t2 = _theta(args, "theta2")
        residuals = {"commutator": transfer.commutator_residual(p, args.r, t1, t2)}
        doc.update({"theta2": _cplx(t2), "r": args.r})
        tol = 1e-9 if args.tol is None else args.tol
        passed = residuals["commutator"] <= tol
    doc.update({"tol": tol, "residuals": residuals, "passed": passed})
    return doc, EXIT_OK if passed else EXIT_FAIL


def _cmd_transfer(args):
    p = load_params(args.params)
    theta = _theta(args)
    if args.derivative:
        op = transfer.transfer_derivative(p, args.r, theta, args.derivative)
    else:
        op = transfer.transfer_matrix(p, args.r, theta)
    doc = {"N": p.N, "r": args.r, "theta": _cplx(theta), "derivative_order": args.derivative}
    doc.update(op.to_dict())
    return doc, EXIT_OK


def _cmd_spectrum(args):
    p = load_params(args.params)
    theta = _theta(args)
    records = spectrum.closed_form_spectrum(p, args.r)
    values = spectrum.sort_spectrum(spectrum.spectrum_values(records, theta))
    doc = {
        "N": p.N,
        "r": args.r,
        "theta": _cplx(theta),
        "records": [rec.to_dict(theta) for rec in records],
        "values": [_cplx(v) for v in values],
    }
    code = EXIT_OK
    if args.oracle or args.compare:
        oracle = spectrum.oracle_spectrum(p, args.r, theta)
        if args.oracle:
            doc["oracle"] = [_cplx(v) for v in oracle]
        if args.compare:
            m = spectrum.match_spectra(values, oracle, args.tol)
            doc.update({"matched": m.matched, "max_deviation": _finite_or_none(m.max_deviation), "tolerance": m.tolerance})
            code = EXIT_OK if m.matched else EXIT_FAIL
    return doc, code


def _cmd_census(args):
    p = load_params(args.params)
    census = spectrum.multiplet_census(p, args.r, args.index, args.theta)
    doc = {"N": p.N}
    doc.update(census.to_dict())
    return doc, EXIT_OK


def _cmd_spin_chain(args):
    p = load_params(args.params)
    if args.conserved is not None:
        if args.boundary != "closed":
            raise _UsageError("conserved charges are defined for the closed chain")
        op = spinchain.conserved_quantity(p, args.r, args.conserved)
        doc = {"N": p.N, "kind": "conserved", "l": args.conserved}
    else:
        op = spinchain.hamiltonian(p, args.r, args.boundary)
        doc = {"N": p.N, "kind": "hamiltonian"}
    doc.update(op.to_dict())
    return doc, EXIT_OK


def _cmd_potential(args):
    p = load_params(args.params)
    lam = complex(args.lambda_re, args.lambda_im)
    table = smatrix.potential(p, _theta(args), lam, margin=args.margin)
    return table.to_dict(), EXIT_OK


def _add_theta(parser, name="theta", default=None, required=True):
    flag = "--" + name
    parser.add_argument(flag, type=float, default=default, required=required and default is None,
                        help=f"real part of {name}")
    parser.add_argument(flag + "-im", dest=name + "_im", type=float, default=0.0, help=f"imaginary part of {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-params", help="draw a random parameter set")
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--imaginary", action="store_true", help="purely imaginary exponents (unitary regime)")
    g.add_argument("--boltzmann", action="store_true", help="enforce m+ > m- (non-negative weights)")
    g.add_argument("--low", type=float, default=-1.0)
    g.add_argument("--high", type=float, default=1.0)
    g.set_defaults(func=_cmd_gen_params)

    c = sub.add_parser("check", help="residual checks")
    c.add_argument("kind", choices=["braid", "ybe", "unitarity", "commute", "projectors"])
    c.add_argument("--params")
    c.add_argument("--N", type=int, help="dimension for the projector check")
    _add_theta(c, default=0.5)
    _add_theta(c, "theta2", default=0.7)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--tol", type=float)
    c.set_defaults(func=_cmd_check)

    t = sub.add_parser("transfer", help="sparse transfer matrix T^(r)(theta)")
    t.add_argument("--params", required=True)
    t.add_argument("--r", type=int, required=True)
    _add_theta(t)
    t.add_argument("--derivative", type=int, default=0, help="exact theta-derivative order")
    t.set_defaults(func=_cmd_transfer)

    s = sub.add_parser("spectrum", help="closed-form transfer-matrix spectrum")
    s.add_argument("--params", required=True)
    s.add_argument("--r", type=int, required=True)
    _add_theta(s)
    s.add_argument("--oracle", action="store_true", help="include dense diagonalization")
    s.add_argument("--compare", action="store_true", help="match closed form against the oracle")
    s.add_argument("--tol", type=float, default=1e-8)
    s.set_defaults(func=_cmd_spectrum)

    z = sub.add_parser("census", help="zero-sum multiplets of the identical-index subspace")
    z.add_argument("--params", required=True)
    z.add_argument("--r", type=int, required=True)
    z.add_argument("--index", type=int, default=1)
    z.add_argument("--theta", type=float, default=0.5, help="theta used for the oracle cross-check")
    z.set_defaults(func=_cmd_census)

    h = sub.add_parser("spin-chain", help="spin-chain Hamiltonian or conserved charge")
    h.add_argument("--params", required=True)
    h.add_argument("--r", type=int, required=True)
    h.add_argument("--boundary", choices=["closed", "open"], default="closed")
    h.add_argument("--conserved", type=int, metavar="L")
    h.set_defaults(func=_cmd_spin_chain)

    v = sub.add_parser("potential", help="inverse Cayley transform potential table")
    v.add_argument("--params", required=True)
    _add_theta(v)
    v.add_argument("--lambda-re", type=float, required=True)
    v.add_argument("--lambda-im", type=float, default=0.0)
    v.add_argument("--margin", type=float, default=smatrix.DEFAULT_MARGIN)
    v.set_defaults(func=_cmd_potential)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.func(args)
    except ResourceError as exc:
        print(f"braidlab: resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SingularityError as exc:
        print(f"braidlab: {exc} (offending value {exc.offending})", file=sys.stderr)
        return EXIT_USAGE
    except (_UsageError, BraidlabError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"braidlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(json.dumps(doc, indent=2, allow_nan=False) + "\n")
    if code == EXIT_FAIL:
        print("braidlab: verification failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

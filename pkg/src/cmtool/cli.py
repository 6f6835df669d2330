"""Command-line front end: ``cmtool SUBCOMMAND FILES...``.

Exit status: 0 yes/success, 3 no, 1 invalid input, 2 internal or resource
failure. A JSON object is printed on standard output in every case.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .alattice import invertible_test
from .auxideals import good_ideal_set
from .descent import iso_between, main_standard_iso, roots_of_unity, verify_iso, verify_standard_iso
from .errors import InputError, InternalError, ResourceError
from .io import (
    decode_lattice, decode_order, decode_order_raw, decode_pair, enc_array, enc_int,
    encode_element, encode_ideal, load_json,
)
from .lattice import DEFAULT_BUDGET
from .orders import Order, cm_order_test, has_cm_structure
from .wpic import (
    InvalidPairError, principal_test, validate_pair, verify_equal, verify_principal, wpic_equal,
)

EXIT_YES, EXIT_INVALID, EXIT_INTERNAL, EXIT_NO = 0, 1, 2, 3


def _yes(payload=None):
    out = {"answer": "yes"}
    out.update(payload or {})
    return EXIT_YES, out


def _no(payload=None):
    out = {"answer": "no"}
    out.update(payload or {})
    return EXIT_NO, out


def cmd_check_cm(args):
    mul, inv = decode_order_raw(load_json(args.order))
    if inv is not None:
        # an explicit involution is checked as given
        A = Order(mul, inv, validate=True)
        if has_cm_structure(A, inv):
            return _yes({"involution": inv})
        return _no({"failed_step": "given involution is not a CM involution"})
    res = cm_order_test(Order(mul))
    if res.order is None:
        return _no({"failed_step": res.failed_step})
    return _yes({"involution": enc_array(res.order.involution_in_input())})


def _order_and_lattices(args, names):
    A = decode_order(load_json(args.order))
    return A, [decode_lattice(load_json(getattr(args, nm)), A) for nm in names]


def cmd_invertible(args):
    A, (L,) = _order_and_lattices(args, ["lattice"])
    form = invertible_test(L) if L.rank == A.n else None
    if form is None:
        return _no()
    return _yes({"ideal": encode_ideal(form.ideal), "w": encode_element(form.w)})


def cmd_standard_iso(args):
    A, (L,) = _order_and_lattices(args, ["lattice"])
    cert = main_standard_iso(A, L, args.budget)
    if cert is None:
        return _no()
    payload = {"short_vector": enc_array(cert.short_vector), "matrix": enc_array(cert.matrix)}
    if args.verify:
        ok = verify_standard_iso(A, L, cert.short_vector)
        if not ok:
            raise InternalError("certificate failed re-verification")
        if args.verbose:
            payload["verification"] = ["short vector: True", "A-linear, isometric, unimodular: True"]
    return _yes(payload)


def cmd_iso(args):
    A, (L, M) = _order_and_lattices(args, ["lattice1", "lattice2"])
    cert = iso_between(A, L, M, args.budget)
    if cert is None:
        return _no()
    payload = {"matrix": enc_array(cert.matrix)}
    if args.verify:
        if not verify_iso(A, M.gram, M.action, L, cert.matrix):
            raise InternalError("certificate failed re-verification")
        if args.verbose:
            payload["verification"] = ["A-linear, isometric, unimodular: True"]
    return _yes(payload)


def _pair(A, path):
    I, w = decode_pair(load_json(path), A)
    return validate_pair(A, I, w)


def cmd_principal(args):
    A = decode_order(load_json(args.order))
    p = _pair(A, args.pair)
    res = principal_test(A, p, args.budget, verify=False)
    if not res:
        return _no()
    payload = {"v": encode_element(res.certificate)}
    if args.verify:
        lines = verify_principal(A, p, res.certificate)
        if args.verbose:
            payload["verification"] = lines
    return _yes(payload)


def cmd_wpic_eq(args):
    A = decode_order(load_json(args.order))
    p, q = _pair(A, args.pair1), _pair(A, args.pair2)
    res = wpic_equal(A, p, q, args.budget, verify=False)
    if not res:
        return _no()
    payload = {"v": encode_element(res.certificate)}
    if args.verify:
        lines = verify_equal(A, p, q, res.certificate)
        if args.verbose:
            payload["verification"] = lines
    return _yes(payload)


def cmd_mu(args):
    A = decode_order(load_json(args.order))
    roots = roots_of_unity(A, args.budget)
    return EXIT_YES, {"count": len(roots), "roots": enc_array(roots)}


def cmd_aux(args):
    A = decode_order(load_json(args.order))
    data = good_ideal_set(A)
    ideals = []
    for g, f in zip(data.ideals, data.f):
        ideals.append({
            "ideal": encode_ideal(g.ideal),
            "k": enc_int(g.k),
            "f": enc_int(f),
            "factors": [{"p": P.p, "residue_degree": P.residue_degree, "exponent": t,
                         "basis": enc_array(P.ideal.hnf)} for P, t in g.factors],
        })
    return EXIT_YES, {"ideals": ideals, "k": enc_int(data.k), "beta": data.usable.beta}


COMMANDS = {
    "check-cm": (cmd_check_cm, ["order"]),
    "invertible": (cmd_invertible, ["order", "lattice"]),
    "standard-iso": (cmd_standard_iso, ["order", "lattice"]),
    "iso": (cmd_iso, ["order", "lattice1", "lattice2"]),
    "principal": (cmd_principal, ["order", "pair"]),
    "wpic-eq": (cmd_wpic_eq, ["order", "pair1", "pair2"]),
    "mu": (cmd_mu, ["order"]),
    "aux": (cmd_aux, ["order"]),
}


def _default_budget():
    env = os.environ.get("CMTOOL_BUDGET")
    if env is None:
        return DEFAULT_BUDGET
    try:
        value = int(env)
    except ValueError:
        raise InputError("CMTOOL_BUDGET must be an integer") from None
    if value <= 0:
        raise InputError("CMTOOL_BUDGET must be positive")
    return value


def build_parser(default_budget: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmtool", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verify", dest="verify", action="store_true", default=True,
                        help="re-check certificates before printing (default)")
    common.add_argument("--no-verify", dest="verify", action="store_false")
    common.add_argument("--budget", type=int, default=default_budget,
                        help="cap on enumeration nodes (env CMTOOL_BUDGET)")
    common.add_argument("--verbose", action="store_true",
                        help="include the verification transcript")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, positionals) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        for pos in positionals:
            p.add_argument(pos)
    return parser


def run(argv=None):
    """Return ``(exit_status, json_object)`` without printing."""
    try:
        budget = _default_budget()
    except InputError as exc:
        return EXIT_INVALID, {"error": "invalid input", "message": str(exc)}
    parser = build_parser(budget)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INVALID
        return (EXIT_YES if code == 0 else EXIT_INVALID), None
    if args.budget <= 0:
        return EXIT_INVALID, {"error": "invalid input", "message": "--budget must be positive"}
    func = COMMANDS[args.command][0]
    try:
        return func(args)
    except InvalidPairError as exc:
        return EXIT_INVALID, {"error": "invalid input", "message": exc.violation}
    except InputError as exc:
        return EXIT_INVALID, {"error": "invalid input", "message": str(exc)}
    except ResourceError as exc:
        return EXIT_INTERNAL, {"error": "resource limit", "message": str(exc)}
    except (InternalError, RecursionError) as exc:
        return EXIT_INTERNAL, {"error": "internal error", "message": str(exc)}


def main(argv=None) -> int:
    status, obj = run(argv)
    if obj is not None:
        json.dump(obj, sys.stdout)
        sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())

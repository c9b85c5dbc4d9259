"""Command line front end.

Subcommands:
  compute          cohomology of a configured group/module pair
  symbol           a local Hilbert symbol with its invariant
  verify-paper     run the named reproduction checks against expectations
  condition-check  evaluate the two product-of-local-conditions criteria

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 a resource bound was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .groups import (
    GroupError, FiniteGroup, make_abelian, make_cyclic, make_direct_product,
    make_semidirect,
)
from .gmodules import GModule, ModuleError, make_module, trivial_module
from .cohomology import CohomologyError, ResourceLimitError, cohomology_group
from .extensions import ExtensionError, d8_group
from .real_galois import (
    ConditionInput, RealGaloisError, check_condition_double_star,
    check_condition_star,
)
from .local_symbols import LocalError, Place, hilbert_symbol
from .verify import VerifyError, run_checks


class InputError(ValueError):
    """Bad command input; carries a location string for the message."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")


GROUP_KINDS = ("cyclic", "abelian", "product", "semidirect", "d8")


def group_from_config(config, location: str = "group config") -> FiniteGroup:
    if not isinstance(config, dict):
        raise InputError(location, "expected a JSON object")
    kind = config.get("kind")
    name = config.get("name")
    try:
        if kind == "cyclic":
            return make_cyclic(int(config["n"]), name)
        if kind == "abelian":
            return make_abelian([int(f) for f in config["factors"]], name)
        if kind == "product":
            left = group_from_config(config["left"], location + ".left")
            right = group_from_config(config["right"], location + ".right")
            return make_direct_product(left, right, name)
        if kind == "semidirect":
            normal = group_from_config(config["normal"], location + ".normal")
            quotient = group_from_config(config["quotient"], location + ".quotient")
            return make_semidirect(normal, quotient, config["action"], name)
        if kind == "d8":
            return d8_group()
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, GroupError) as e:
        raise InputError(location, str(e)) from e
    raise InputError(location, f"kind must be one of {GROUP_KINDS}, got {kind!r}")


def module_from_config(config, group: FiniteGroup, location: str = "module config") -> GModule:
    if not isinstance(config, dict):
        raise InputError(location, "expected a JSON object")
    try:
        factors = [int(f) for f in config["invariant_factors"]]
        action = config.get("action", "trivial")
        name = config.get("name")
        if action == "trivial":
            return trivial_module(group, factors, name=name)
        matrices = action["generator_matrices"]
        return make_module(group, factors, matrices, name=name)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ModuleError) as e:
        raise InputError(location, str(e)) from e


def _load_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise InputError(path, e.strerror or str(e)) from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}", e.msg) from e


def cmd_compute(args) -> int:
    group = group_from_config(_load_json(args.group), args.group)
    module = module_from_config(_load_json(args.module), group, args.module)
    if args.degree not in (0, 1, 2):
        raise InputError("degree", "supported degrees are 0, 1, 2")
    h = cohomology_group(group, module, args.degree)
    if args.json:
        out = {"group": group.name, "module": module.name, "degree": args.degree,
               "invariant_factors": list(h.invariant_factors),
               "description": h.describe()}
        if args.basis:
            out["basis"] = [_basis_entry(h, i) for i in range(len(h.basis))]
        print(json.dumps(out, indent=2))
    else:
        print(f"H^{args.degree} = {h.describe()}")
        if args.basis:
            for i in range(len(h.basis)):
                entry = _basis_entry(h, i)
                print(f"basis[{i}] (order {entry['order']}):")
                for line in entry["values"]:
                    print(f"  {line}")
    return 0


def _basis_entry(h, i: int) -> dict:
    cls = h.class_from_coordinates(
        tuple(1 if j == i else 0 for j in range(len(h.invariant_factors)))
    )
    c = cls.representative
    n = h.group.order
    lines = []
    for flat in range(c.values.shape[0]):
        row = c.values[flat]
        if not row.any():
            continue
        gids = []
        rem = flat
        for _ in range(c.degree):
            gids.append(rem % n)
            rem //= n
        gids.reverse()
        args = ",".join(str(g) for g in gids)
        vals = ",".join(str(int(v)) for v in row)
        lines.append(f"({args}) -> ({vals})")
    return {"order": int(h.invariant_factors[i]), "values": lines}


def cmd_symbol(args) -> int:
    try:
        a = Fraction(args.a)
        b = Fraction(args.b)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("symbol arguments", str(e)) from e
    try:
        place = Place.parse(args.place)
        s = hilbert_symbol(a, b, place)
    except LocalError as e:
        raise InputError("symbol arguments", str(e)) from e
    inv = "0" if s == 1 else "1/2"
    print(f"{s:+d} (inv {inv})")
    return 0


def cmd_verify_paper(args) -> int:
    report = run_checks(filter_tag=args.filter)
    if not report.results:
        raise InputError("--filter", f"no checks match {args.filter!r}")
    if args.human:
        for line in report.human_lines():
            print(line)
    else:
        print(report.to_json())
    return 0 if report.all_pass else 1


def cmd_condition_check(args) -> int:
    data = _load_json(args.input)
    try:
        ci = ConditionInput.from_dict(data)
    except RealGaloisError as e:
        raise InputError(args.input, str(e)) from e
    star_ok, star_cert = check_condition_star(ci)
    dbl_ok, dbl_cert = check_condition_double_star(ci)
    if args.json:
        print(json.dumps({
            "star": {"holds": star_ok,
                     "certificate": list(star_cert) if star_cert else None},
            "double_star": {"holds": dbl_ok,
                            "certificate": list(dbl_cert) if dbl_cert else None},
        }, indent=2))
    else:
        for label, ok, cert in (("(*)", star_ok, star_cert),
                                ("(**)", dbl_ok, dbl_cert)):
            if ok:
                print(f"{label} holds")
            else:
                print(f"{label} fails, missing element {tuple(cert)}")
    return 0 if (star_ok and dbl_ok) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galcoh",
        description="group cohomology workbench: finite coefficient computations, "
                    "local symbols, and reproduction checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="cohomology of a group/module config pair")
    p.add_argument("group", help="path to a group config JSON file")
    p.add_argument("module", help="path to a module config JSON file")
    p.add_argument("degree", type=int, help="cohomology degree (0, 1 or 2)")
    p.add_argument("--basis", action="store_true",
                   help="also print representative cocycles for a basis")
    p.add_argument("--json", action="store_true", help="machine readable output")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("symbol", help="local Hilbert symbol of two rationals")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("place", help="'real' or a prime number")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("verify-paper",
                       help="run every reproduction check against expectations")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", default=True,
                      help="JSON report on stdout (default)")
    mode.add_argument("--human", action="store_true",
                      help="one line per check instead of JSON")
    p.add_argument("--filter", metavar="TAG",
                   help="run only checks carrying this tag")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("condition-check",
                       help="evaluate conditions (*) and (**) on a JSON input")
    p.add_argument("input", help="path to a condition input JSON file")
    p.add_argument("--json", action="store_true", help="machine readable output")
    p.set_defaults(func=cmd_condition_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (VerifyError, RealGaloisError, LocalError, GroupError, ModuleError,
            CohomologyError, ExtensionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"resource bound: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

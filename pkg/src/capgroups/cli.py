"""Command-line driver.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for invalid
input or a group over the enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import core
from .capability import (
    WitnessReport,
    check_lemma,
    lemma_commutator,
    scan,
    verify_witness,
    witness_easterfield,
)
from .constructions import EasterfieldSpec, dihedral, easterfield, easterfield_columns, easterfield_orders
from .core import GroupError

PRESENTATION_VERSION = 1


def _power_word(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_presentation(p: int, r: int) -> str:
    """Plain-text presentation of ``K(p, r)``.

    Exponents in the conjugation relations are the signed values of the
    construction, not reduced residues.  Generators of order 1 are listed but
    left out of every relator.
    """
    EasterfieldSpec(p, r)
    orders = easterfield_orders(p, r)
    cols = easterfield_columns(p, r)
    names = [f"x{i}" for i in range(p)]
    live = [i for i in range(p) if orders[i] > 1]
    lines = [
        f"# capgroups presentation v{PRESENTATION_VERSION}",
        f"# easterfield p={p} r={r} order={EasterfieldSpec(p, r).order}",
    ]
    for i in range(p):
        if orders[i] == 1:
            lines.append(f"# {names[i]} has order 1 (trivial); omitted from relators")
    lines.append("generators: " + ", ".join(["y"] + [names[i] for i in live]))
    lines.append("orders: " + ", ".join([f"y={p}"] + [f"{names[i]}={orders[i]}" for i in live]))
    lines.append("relators:")
    lines.append(f"y^{p} = e")
    for i in live:
        lines.append(f"{names[i]}^{orders[i]} = e")
    for a_pos, i in enumerate(live):
        for j in live[a_pos + 1:]:
            lines.append(f"[{names[i]},{names[j]}] = e")
    for j in live:
        image = [
            _power_word(names[i], cols[j][i])
            for i in live
            if cols[j][i] % orders[i]
        ]
        lines.append(f"y^-1*{names[j]}*y = " + ("*".join(image) or "e"))
    return "\n".join(lines) + "\n"


def _emit_report(report: WitnessReport, as_json: bool, extra: dict | None = None):
    if as_json:
        d = report.to_dict()
        d.update(extra or {})
        print(json.dumps(d, indent=2))
        return
    print(format_report(report, extra))


def format_report(report: WitnessReport, extra: dict | None = None) -> str:
    fields = {k: v for k, v in report.to_dict().items() if k != "big_ints_as_strings"}
    fields.update(extra or {})
    width = max(len(k) for k in fields)
    lines = [f"{k.ljust(width)}  {'-' if v is None else v}" for k, v in fields.items()]
    lines.append("")
    checks = report.checks()
    for name, ok in checks.items():
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        lines.append(f"{status}  {name}")
    if extra and "quotient_matches_smaller" in extra:
        lines.append(f"{'PASS' if extra['quotient_matches_smaller'] else 'FAIL'}  quotient_matches_smaller")
    return "\n".join(lines)


def _check_p(p):
    if not core.is_prime(p):
        raise GroupError("p must be prime")


def run_witness(args) -> int:
    _check_p(args.p)
    report = witness_easterfield(args.p, args.r, cap=args.cap)
    _emit_report(report, args.json)
    return 0 if report.passed else 1


def run_dihedral(args) -> int:
    c = args.c
    if c < 1:
        raise GroupError("c must be a positive integer")
    small = dihedral(2**c, cap=args.cap)
    big = dihedral(2 ** (c + 1), cap=args.cap)
    report = verify_witness(big, 2, c + 1)
    matches = report.quotient_order == small.order
    pair_ok = (report.a_exponent, report.b_exponent) == (1, c)
    extra = {
        "smaller_group_order": small.order,
        "quotient_matches_smaller": matches,
    }
    _emit_report(report, args.json, extra)
    return 0 if report.passed and matches and pair_ok else 1


def run_scan(args) -> int:
    _check_p(args.p)
    reports = scan(args.p, args.r_max, cap=args.cap)
    if args.json:
        print(json.dumps([rep.to_dict() for rep in reports], indent=2))
    else:
        for rep in reports:
            status = "PASS" if rep.passed else "FAIL"
            detail = rep.error or (
                f"order={rep.group_order} class={rep.class_computed} "
                f"a={rep.a_exponent} b={rep.b_exponent} bound={rep.bound_rhs}"
            )
            print(f"{status}  p={rep.p} r={rep.params}  {detail}")
    return 0 if all(rep.passed for rep in reports) else 1


def run_lemma(args) -> int:
    _check_p(args.p)
    G = easterfield(args.p, args.r, cap=args.cap)
    holds = check_lemma(args.p, args.r, cap=args.cap)
    word = G.label(lemma_commutator(G, args.p, args.r))
    if args.json:
        print(json.dumps({"p": args.p, "r": args.r, "commutator": word, "lemma_holds": holds}, indent=2))
    else:
        print(f"[x0^{args.p ** (args.r - 1)}, y] = {word}")
        print(f"{'PASS' if holds else 'FAIL'}  lemma_holds")
    return 0 if holds else 1


def run_presentation(args) -> int:
    _check_p(args.p)
    sys.stdout.write(format_presentation(args.p, args.r))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capgroups",
        description="Build and verify capable p-group witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, json_flag=True):
        sp.add_argument("--cap", type=int, default=core.DEFAULT_CAP,
                        help="largest group order to enumerate (default %(default)s)")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="emit JSON instead of text")

    sp = sub.add_parser("witness", help="verify K(p, r) as a witness")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    common(sp)
    sp.set_defaults(func=run_witness)

    sp = sub.add_parser("dihedral", help="verify the dihedral witness for class c at p=2")
    sp.add_argument("--c", type=int, required=True)
    common(sp)
    sp.set_defaults(func=run_dihedral)

    sp = sub.add_parser("scan", help="verify K(p, r) for r = 1..r_max")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r-max", "--r", dest="r_max", type=int, required=True)
    common(sp)
    sp.set_defaults(func=run_scan)

    sp = sub.add_parser("lemma", help="check that x0^(p^(r-1)) does not commute with y")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    common(sp)
    sp.set_defaults(func=run_lemma)

    sp = sub.add_parser("presentation", help="print the presentation of K(p, r)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.set_defaults(func=run_presentation, cap=core.DEFAULT_CAP)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GroupError as exc:
        print(f"capgroups {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit codes: 0 for success or a verified-true answer, 1 for a verified-false
answer (axiom failure, rejected proof, missing subgroup, non-isomorphism),
2 for usage or input errors.  Every subcommand takes --json and then emits a
single JSON object on stdout instead of the human text.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import construct, derivations  # noqa: F401  (derivations re-exported for scripts)
from . import permaction, search, tables, verify
from .errors import NearDomainError

OK, FALSE, USAGE = 0, 1, 2


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif human:
        print(human)


def _write_or_print(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    elif not args.json:
        sys.stdout.write(text)


def _table_payload(t: tables.NearDomainTable) -> dict:
    return {
        "order": t.order,
        "label": t.label,
        "add": [list(row) for row in t.add],
        "mul": [list(row) for row in t.mul],
    }


def _cmd_construct(args) -> int:
    if args.kind == "gf":
        modulus = None
        if args.modulus:
            modulus = [int(c) for c in args.modulus.split(",")]
        t = construct.galois_field(args.p, args.n, modulus)
    else:
        t = construct.dickson_near_field(args.q)
    _write_or_print(args, tables.format_table(t))
    _emit(args, _table_payload(t), "")
    return OK


def _cmd_check(args) -> int:
    t = tables.load_table(args.table)
    report = tables.check_near_domain(t)
    payload = {
        "near_domain": report.ok,
        "failures": [[axiom, list(witness)] for axiom, witness in report.failures],
    }
    if report.ok:
        nf = tables.is_near_field(t)
        payload["near_field"] = nf
        _emit(args, payload,
              f"near-domain: yes, near-field: {'yes' if nf else 'no'}")
        return OK
    first = report.failures[0]
    _emit(args, payload,
          f"near-domain: no ({first[0]} fails at {first[1]})")
    return FALSE


def _cmd_d(args) -> int:
    t = tables.load_table(args.table)
    n = t.order
    if not (0 <= args.a < n and 0 <= args.b < n):
        raise NearDomainError(f"elements must lie in [0, {n})")
    d = tables.compute_d(t, args.a, args.b)
    _emit(args, {"d": d}, f"d({args.a}, {args.b}) = {d}")
    return OK


def _cmd_e(args) -> int:
    t = tables.load_table(args.table)
    elems = sorted(tables.compute_e(t))
    _emit(args, {"elements": elems}, " ".join(str(x) for x in elems))
    return OK


def _cmd_char(args) -> int:
    t = tables.load_table(args.table)
    p = tables.characteristic(t)
    _emit(args, {"characteristic": p}, str(p))
    return OK


def _cmd_identities(args) -> int:
    t = tables.load_table(args.table)
    if not tables.check_near_domain(t).ok:
        _emit(args, {"ok": False, "reason": "not a near-domain"},
              "not a near-domain")
        return FALSE
    report = tables.d_identity_suite(t)
    payload = {
        "ok": report.ok,
        "reflexive": report.reflexive_ok,
        "quotient": report.quotient_ok,
        "conjugation": report.conjugation_ok,
        "cocycle": report.cocycle_ok,
        "doubling": report.doubling_ok,
        "all_d_trivial": report.all_d_trivial,
        "negatives": report.negatives_ok,
        "failures": [[name, list(w)] for name, w in report.failures],
    }
    if report.ok:
        _emit(args, payload, "all coefficient identities hold")
        return OK
    first = report.failures[0]
    _emit(args, payload, f"identity {first[0]} fails at {first[1]}")
    return FALSE


def _cmd_aff(args) -> int:
    t = tables.load_table(args.table)
    group = permaction.affine_group(t)
    _write_or_print(args, permaction.format_group(group))
    _emit(args, {"degree": group.degree, "order": group.order}, "")
    return OK


def _cmd_check2t(args) -> int:
    group = permaction.load_group(args.group)
    answer = permaction.is_sharply_2_transitive(group)
    _emit(args, {"sharply_2_transitive": answer},
          f"sharply 2-transitive: {'yes' if answer else 'no'}")
    return OK if answer else FALSE


def _cmd_split(args) -> int:
    group = permaction.load_group(args.group)
    normal = permaction.split_check(group)
    if normal is None:
        _emit(args, {"splits": False}, "no regular normal subgroup")
        return FALSE
    if args.out:
        permaction.save_group(normal, args.out)
    _emit(args, {"splits": True, "order": normal.order},
          f"regular normal subgroup of order {normal.order}")
    return OK


def _cmd_stab(args) -> int:
    group = permaction.load_group(args.group)
    stab = permaction.point_stabilizer(group, args.point)
    _write_or_print(args, permaction.format_group(stab))
    _emit(args, {"order": stab.order, "point": args.point}, "")
    return OK


def _cmd_coordinatize(args) -> int:
    group = permaction.load_group(args.group)
    t = permaction.coordinatize(group, args.zero, args.one)
    _write_or_print(args, tables.format_table(t))
    _emit(args, _table_payload(t), "")
    return OK


def _cmd_iso(args) -> int:
    t1 = tables.load_table(args.table1)
    t2 = tables.load_table(args.table2)
    answer = permaction.iso_near_domain(t1, t2)
    _emit(args, {"isomorphic": answer}, f"isomorphic: {'yes' if answer else 'no'}")
    return OK if answer else FALSE


def _cmd_search(args) -> int:
    result = search.enumerate_near_domains(args.order, jobs=args.jobs)
    if args.emit:
        directory = Path(args.emit)
        directory.mkdir(parents=True, exist_ok=True)
        for i, t in enumerate(result.tables):
            tables.save_table(t, directory / f"nd{args.order}_{i}.nd")
    summary = f"order={result.order} found={len(result.tables)} nodes={result.nodes}"
    _emit(args, {
        "order": result.order,
        "found": len(result.tables),
        "nodes": result.nodes,
        "labels": [t.label for t in result.tables],
    }, summary)
    if args.json:
        return OK
    return OK


def _cmd_prove(args) -> int:
    text = Path(args.script).read_text(encoding="utf-8")
    derivation = verify.parse_derivation(text)
    if args.trace and not args.json:
        for i, (stmt, _line) in enumerate(derivation.hypotheses, start=1):
            print(f"{i}: assume {verify.statement_text(stmt)}")
        base = len(derivation.hypotheses)
        for i, step in enumerate(derivation.steps, start=base + 1):
            print(f"{i}: {verify.statement_text(step.claim)}  [{step.rule}]")
    verdict = verify.check_derivation(derivation)
    payload = {
        "accepted": verdict.ok,
        "line": verdict.line,
        "reason": verdict.reason,
        "expected": verdict.expected,
        "claimed": verdict.claimed,
    }
    if verdict.ok:
        _emit(args, payload, "accepted")
        return OK
    detail = f"rejected at line {verdict.line}: {verdict.reason}"
    if verdict.expected:
        detail += f"\n  expected: {verdict.expected}"
    if verdict.claimed:
        detail += f"\n  claimed:  {verdict.claimed}"
    _emit(args, payload, detail)
    return FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neardomain",
        description="finite near-domains, near-fields, and sharply 2-transitive actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        return p

    p = add("construct", _cmd_construct, "build a model table")
    kind = p.add_subparsers(dest="kind", required=True)
    gf = kind.add_parser("gf", help="Galois field GF(p^n)")
    gf.add_argument("p", type=int)
    gf.add_argument("n", type=int, nargs="?", default=1)
    gf.add_argument("--modulus", help="comma-separated coefficients, low degree first")
    gf.add_argument("--out")
    gf.add_argument("--json", action="store_true")
    gf.set_defaults(func=_cmd_construct, kind="gf")
    dk = kind.add_parser("dickson", help="Dickson near-field of order q^2")
    dk.add_argument("q", type=int)
    dk.add_argument("--out")
    dk.add_argument("--json", action="store_true")
    dk.set_defaults(func=_cmd_construct, kind="dickson")

    p = add("check", _cmd_check, "verify the near-domain axioms")
    p.add_argument("table")

    p = add("d", _cmd_d, "the coefficient d(a, b)")
    p.add_argument("table")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = add("e", _cmd_e, "elements commuting additively with 1")
    p.add_argument("table")

    p = add("char", _cmd_char, "the characteristic")
    p.add_argument("table")

    p = add("identities", _cmd_identities, "exhaustive coefficient identity suite")
    p.add_argument("table")

    p = add("aff", _cmd_aff, "the affine permutation group of a table")
    p.add_argument("table")
    p.add_argument("--out")

    p = add("check2t", _cmd_check2t, "test sharp 2-transitivity")
    p.add_argument("group")

    p = add("split", _cmd_split, "find the regular normal subgroup")
    p.add_argument("group")
    p.add_argument("--out")

    p = add("stab", _cmd_stab, "a point stabilizer")
    p.add_argument("group")
    p.add_argument("point", type=int)
    p.add_argument("--out")

    p = add("coordinatize", _cmd_coordinatize, "recover a table from an action")
    p.add_argument("group")
    p.add_argument("--zero", type=int, required=True)
    p.add_argument("--one", type=int, required=True)
    p.add_argument("--out")

    p = add("iso", _cmd_iso, "isomorphism of two tables")
    p.add_argument("table1")
    p.add_argument("table2")

    p = add("search", _cmd_search, "enumerate near-domains of one order")
    p.add_argument("order", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--emit", help="directory for the found tables")

    p = add("prove", _cmd_prove, "check a derivation script")
    p.add_argument("script")
    p.add_argument("--trace", action="store_true")

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NearDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line interface: ``asq <command> --poset FILE ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import construction as C
from . import koszul as K
from . import schroder as S
from .errors import OperadError
from .oracle import quotient_dim
from .poset import (
    Poset,
    enumerate_forests,
    enumerate_posets,
    enumerate_thin_forests,
    intervals_count,
    is_forest,
    is_standardly_labeled,
    is_thin_forest,
    is_total,
    is_trivial,
    parse_poset,
    standard_labeling,
    thin_dual,
)
from .rewriting import is_confluent
from .trees import format_tree, parse_tree


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload: Any):
        self.payload = payload


def load_poset(arg: str) -> Poset:
    text = arg if arg.lstrip().startswith("{") else _read(arg)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"poset is not valid JSON: {exc}") from None
    return parse_poset(doc)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_tree(arg: str):
    text = arg.strip()
    if text.startswith("{") or text == "null":
        try:
            return S.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"tree is not valid JSON: {exc}") from None
    return parse_tree(text)


def _flags(P: Poset) -> dict:
    return {
        "forest": is_forest(P),
        "thin_forest": is_thin_forest(P),
        "trivial": is_trivial(P),
        "total": is_total(P),
    }


def _relation_dims(P: Poset) -> dict:
    star = C.relations_star(P).dimension
    dual = K.dual_relations_annihilator(P).dimension
    return {
        "star": star,
        "star_expected": C.expected_relation_dimension(P),
        "dual": dual,
        "dual_expected": K.expected_dual_dimension(P),
        "explicit_matches": K.dual_relations_explicit(P).relations == K.dual_relations_annihilator(P).relations,
    }


# commands

def cmd_check(args) -> dict:
    P = load_poset(args.poset)
    flags = _flags(P)
    rel = _relation_dims(P)
    star = is_confluent(C.orientation(P))
    schr = is_confluent(S.schroder_rule(P))
    dims = [C.dimension(P, n) for n in range(1, args.max_arity + 1)]
    oracle = [quotient_dim(C.relations_star(P), n) for n in range(1, min(args.max_arity, 5) + 1)]
    report = {
        "poset": P.to_doc(),
        **flags,
        "intervals": intervals_count(P),
        "relation_dims": rel,
        "dims": dims,
        "confluent": star.ok,
        "witness": star.witness.to_doc() if star.witness else None,
        "schroder_confluent": schr.ok,
        "schroder_witness": schr.witness.to_doc() if schr.witness else None,
    }
    if flags["thin_forest"] and is_standardly_labeled(P):
        report["duality_iso"] = K.verify_duality_iso(P).ok
    consistent = (
        rel["star"] == rel["star_expected"]
        and rel["dual"] == rel["dual_expected"]
        and rel["explicit_matches"]
        and dims[: len(oracle)] == oracle
        and star.ok == flags["forest"]
        and schr.ok == flags["forest"]
        and report.get("duality_iso", True)
    )
    if not consistent:
        raise VerificationFailed(report)
    return report


def _human_check(r: dict) -> str:
    lines = [
        f"poset        {r['poset']}",
        f"forest       {r['forest']}",
        f"thin forest  {r['thin_forest']}",
        f"trivial      {r['trivial']}",
        f"intervals    {r['intervals']}",
        f"relations    star {r['relation_dims']['star']}  dual {r['relation_dims']['dual']}",
        f"dims         {' '.join(map(str, r['dims']))}",
        f"confluent    {r['confluent']}",
    ]
    if r["witness"]:
        w = r["witness"]
        lines.append(f"  peak {w['peak']}  ->  {w['left']}  |  {w['right']}")
    lines.append(f"schroder     {r['schroder_confluent']}")
    if r["schroder_witness"]:
        w = r["schroder_witness"]
        lines.append(f"  peak {w['peak']}  ->  {w['left']}  |  {w['right']}")
    if "duality_iso" in r:
        lines.append(f"duality iso  {r['duality_iso']}")
    return "\n".join(lines)


def cmd_dims(args) -> dict:
    P = load_poset(args.poset)
    ns = range(1, args.max_arity + 1)
    if args.method == "auto":
        dims = [C.dimension(P, n) for n in ns]
    elif args.method == "normal-forms":
        dims = [C.count_normal_forms(P, n) for n in ns]
    elif args.method == "oracle":
        dims = [quotient_dim(C.relations_star(P), n) for n in ns]
    else:
        dims = C.hilbert_coeffs(P, args.max_arity)
    return {"poset": P.to_doc(), "method": args.method, "dims": dims}


def cmd_hilbert(args) -> dict:
    P = load_poset(args.poset)
    return {"poset": P.to_doc(), "coefficients": C.hilbert_coeffs(P, args.order)}


def _presentation(P: Poset, kind: str):
    if kind == "star":
        return C.relations_star(P)
    if kind == "dual":
        return K.dual_relations_annihilator(P)
    if kind == "dual-explicit":
        return K.dual_relations_explicit(P)
    if kind == "barB":
        return K.barB_presentation(P)[1]
    return K.triangle_presentation(P)


def cmd_relations(args) -> dict:
    P = load_poset(args.poset)
    pres = _presentation(P, args.kind)
    family = [str(p) for p in pres.family]
    return {"poset": P.to_doc(), "kind": args.kind, "dimension": pres.dimension, "generating_family": family, **pres.to_doc()}


def cmd_confluence(args) -> dict:
    P = load_poset(args.poset)
    R = C.orientation(P) if args.rule == "star" else S.schroder_rule(P)
    v = is_confluent(R)
    report = {
        "poset": P.to_doc(),
        "rule": args.rule,
        "forest": is_forest(P),
        "confluent": v.ok,
        "witness": v.witness.to_doc() if v.witness else None,
    }
    if v.ok != is_forest(P):
        raise VerificationFailed(report)
    return report


def cmd_normal_forms(args) -> dict:
    P = load_poset(args.poset)
    if args.schroder:
        trees = S.enumerate_alternating(P, args.arity)
    else:
        trees = C.normal_forms(P, args.arity)
    return {"poset": P.to_doc(), "arity": args.arity, "count": len(trees), "trees": [format_tree(t) for t in trees]}


def cmd_dual_poset(args) -> dict:
    P = load_poset(args.poset)
    if args.standardize:
        P = standard_labeling(P)
    D = thin_dual(P)
    return {"poset": P.to_doc(), "dual": D.to_doc()}


def cmd_verify_iso(args) -> dict:
    P = load_poset(args.poset)
    if args.standardize:
        P = standard_labeling(P)
    v = K.verify_duality_iso(P)
    inv = K.hilbert_inversion_check(P, args.order)
    report = {**v.witness, "pass": v.ok and inv, "hilbert_inversion": inv}
    if not report["pass"]:
        raise VerificationFailed(report)
    return report


def cmd_compose(args) -> dict:
    P = load_poset(args.poset)
    s, t = load_tree(args.left), load_tree(args.right)
    for x in (s, t):
        if not (S.is_schroder(x) and S.is_alternating(P, x)):
            raise InputError(f"{format_tree(x)} is not an alternating Schröder tree")
    out = S.compose(P, s, args.index, t)
    return {"poset": P.to_doc(), "result": format_tree(out), "json": S.to_json(out)}


def _monomial(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad monomial {text!r}; use comma separated elements") from None


def cmd_algebra(args) -> dict:
    P = load_poset(args.poset)
    if args.antichain:
        out = S.antichain_star(P, args.op, _monomial(args.left), _monomial(args.right))
        return {"poset": P.to_doc(), "result": list(out)}
    out = S.free_algebra_star(P, args.op, load_tree(args.left), load_tree(args.right))
    return {"poset": P.to_doc(), "result": format_tree(out)}


def _family(name: str, size: int) -> list[Poset]:
    if name == "thin-forest":
        return enumerate_thin_forests(size)
    if name == "forest":
        return enumerate_forests(size)
    return list(enumerate_posets(size, up_to_iso=True))


def cmd_sweep(args) -> dict:
    rows = []
    ok = True
    for idx, P in enumerate(_family(args.family, args.size), start=1):
        dim = C.dimension(P, args.arity)
        dual_ok = K.dual_relations_annihilator(P).dimension == K.expected_dual_dimension(P)
        confluent = is_confluent(C.orientation(P)).ok
        row = {
            "poset_id": idx,
            "n": P.size,
            "dim": dim,
            "dim_dual_check": dual_ok,
            "confluent": confluent,
            "iso_ok": "",
            "covers": " ".join(f"{a}<{b}" for a, b in P.covers),
        }
        checks = [dual_ok, confluent == is_forest(P)]
        if args.family == "thin-forest":
            D = thin_dual(P)
            row["iso_ok"] = K.verify_duality_iso(P).ok
            row["involution"] = thin_dual(D) == P
            row["interval_identity"] = intervals_count(P) + intervals_count(D) == (P.size**2 + 3 * P.size) // 2
            checks += [row["iso_ok"], row["involution"], row["interval_identity"]]
        ok = ok and all(checks)
        rows.append(row)
    report = {"family": args.family, "size": args.size, "arity": args.arity, "count": len(rows), "rows": rows, "all_ok": ok}
    if not ok:
        raise VerificationFailed(report)
    return report


CSV_COLUMNS = ["poset_id", "n", "dim", "dim_dual_check", "confluent", "iso_ok"]


def _sweep_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in report["rows"]:
        w.writerow(row)
    return buf.getvalue().rstrip("\n")


def _human(cmd: str, r: dict) -> str:
    if cmd == "check":
        return _human_check(r)
    if cmd == "dims":
        return " ".join(map(str, r["dims"]))
    if cmd == "hilbert":
        return " ".join(map(str, r["coefficients"]))
    if cmd == "relations":
        return "\n".join(r["generating_family"]) + f"\ndimension {r['dimension']}"
    if cmd == "confluence":
        line = f"confluent {r['confluent']}"
        if r["witness"]:
            w = r["witness"]
            line += f"\npeak {w['peak']}\n  -> {w['left']}\n  -> {w['right']}"
        return line
    if cmd == "normal-forms":
        return "\n".join(r["trees"])
    if cmd == "dual-poset":
        return json.dumps(r["dual"])
    if cmd == "verify-iso":
        lines = [f"{k} = {v}" for k, v in r["phi"].items()]
        lines.append("pass" if r["pass"] else "FAIL")
        return "\n".join(lines)
    if cmd in ("compose", "algebra"):
        res = r["result"]
        return res if isinstance(res, str) else ("1" if not res else " ".join(f"x{a}" for a in res))
    if cmd == "sweep":
        lines = [f"{row['poset_id']:>4}  {row['covers'] or '-':<30} dim={row['dim']} confluent={row['confluent']} iso={row['iso_ok']}" for row in r["rows"]]
        lines.append(f"{r['count']} posets, all checks {'pass' if r['all_ok'] else 'FAIL'}")
        return "\n".join(lines)
    return json.dumps(r, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asq", description="Operads of finite posets")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--json", action="store_true", help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, needs_poset: bool = True, **kw):
        p = sub.add_parser(name, parents=[fmt], **kw)
        if needs_poset:
            p.add_argument("--poset", required=True, help="JSON file or inline JSON")
        p.set_defaults(func=fn)
        return p

    p = add("check", cmd_check, help="full report for one poset")
    p.add_argument("--max-arity", type=int, default=5)
    p = add("dims", cmd_dims, help="dimensions of As(Q)(n)")
    p.add_argument("--max-arity", type=int, default=6)
    p.add_argument("--method", choices=["auto", "normal-forms", "oracle", "hilbert"], default="auto")
    p = add("hilbert", cmd_hilbert, help="Hilbert series coefficients")
    p.add_argument("--order", type=int, default=8)
    p = add("relations", cmd_relations, help="relation spaces")
    p.add_argument("--kind", choices=["star", "dual", "dual-explicit", "barB", "triangle"], default="star")
    p = add("confluence", cmd_confluence, help="critical pair analysis")
    p.add_argument("--rule", choices=["star", "schroder"], default="star")
    p = add("normal-forms", cmd_normal_forms, help="basis trees of one arity")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--schroder", action="store_true", help="alternating Schröder trees instead")
    p = add("dual-poset", cmd_dual_poset, help="dual of a thin forest")
    p.add_argument("--standardize", action="store_true")
    p = add("verify-iso", cmd_verify_iso, help="check the thin forest duality isomorphism")
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--order", type=int, default=7)
    p = add("compose", cmd_compose, help="partial composition of alternating Schröder trees")
    p.add_argument("--left", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--right", required=True)
    p = add("algebra", cmd_algebra, help="products in the free algebra or the antichain algebra")
    p.add_argument("--op", type=int, required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--antichain", action="store_true", help="operands are comma separated monomials")
    p = add("sweep", cmd_sweep, needs_poset=False, help="checks over a family of posets")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--family", choices=["thin-forest", "forest", "all"], default="thin-forest")
    p.add_argument("--arity", type=int, default=4)
    p.add_argument("--csv", action="store_true")
    return parser


def _emit(args, report: dict, out) -> None:
    if args.json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif getattr(args, "csv", False):
        out.write(_sweep_csv(report) + "\n")
    else:
        out.write(_human(args.command, report) + "\n")


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report = args.func(args)
    except VerificationFailed as exc:
        _emit(args, exc.payload, out)
        err.write("verification failed\n")
        return 1
    except (InputError, OperadError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    _emit(args, report, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

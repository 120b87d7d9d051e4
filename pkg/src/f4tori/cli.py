"""f4tori command line.

Verbs: dump-roots, dump-tits, classes, formula, torus, verify, tables, render.
Exit status is 0 when every selected check passes, 1 when one fails and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from .gfq import DEFAULT_MAX_Q, FieldError, prime_power

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------

def parse_int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def parse_q_list(text: str) -> list[int]:
    qs = parse_int_list(text)
    for q in qs:
        try:
            p, _ = prime_power(q)
        except FieldError as exc:
            raise UsageError(str(exc)) from None
        if p == 2:
            raise UsageError(f"q = {q} is even; concrete checks need odd q")
        if q > DEFAULT_MAX_Q:
            raise UsageError(f"q = {q} exceeds the bound {DEFAULT_MAX_Q}")
    return qs


def parse_rows(text: str | None) -> list[int] | None:
    if text is None:
        return None
    rows = parse_int_list(text)
    bad = [r for r in rows if not 1 <= r <= 25]
    if bad:
        raise UsageError(f"torus ids must lie in 1..25, got {bad}")
    return sorted(set(rows))


def parse_weyl_word(text: str) -> list[int]:
    """Accepts ``3,2`` or ``w3w2``."""
    text = text.strip()
    if not text or text == "1":
        return []
    if text.startswith("w"):
        return [int(p) for p in text.split("w") if p]
    return parse_int_list(text)


# -- rendering -----------------------------------------------------------------------

def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_cell(x) for x in v) + ")"
    return str(v).replace("|", "\\|")


def _md_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[str]:
    out = ["| " + " | ".join(_cell(h) for h in header) + " |", "|" + "---|" * len(header)]
    for r in rows:
        out.append("| " + " | ".join(_cell(c) for c in r) + " |")
    return out


def render_report_markdown(report: dict) -> str:
    lines = [f"# f4tori {report['command']}", ""]
    cfg = report.get("config", {})
    for k in sorted(cfg):
        lines.append(f"- {k}: {_cell(cfg[k])}")
    s = report["summary"]
    lines += ["", f"pass {s['pass']}, fail {s['fail']}, skip {s['skip']}", ""]
    lines += _md_table(
        ["torus", "q", "check", "expected", "got", "status"],
        [[c["torus"], c["q"], c["check"], c["expected"], c["got"], c["status"]] for c in report["checks"]],
    )
    return "\n".join(lines) + "\n"


def render_tables_markdown(doc: dict) -> str:
    lines = []
    for t in doc["tables"]:
        q = t["q"]
        lines += [f"## Minimal supplements, q = {q}", ""]
        lines += _md_table(
            ["No.", "w", "|w|", "C_W(w)", "|C_W(w)|", "T", "Suppl. (claimed)", "upper", "oracle", "status"],
            [
                [
                    f"{r['id']}" + (f" ({r['pair']})" if r["pair"] else ""),
                    r["w"], r["order"], r["centralizer"]["structure"], r["centralizer"]["got"],
                    " x ".join(str(f) for f in r["torus"]["got"]) or "1",
                    r["supplement"]["expected"], r["supplement"]["upper"], r["supplement"]["oracle"],
                    r["status"],
                ]
                for r in t["table1"]
            ],
        )
        lines += ["", f"## Lifts of order |w|, q = {q}", ""]
        lines += _md_table(
            ["w", "|w|", "lift of order |w|", "condition", "min lift order", "expected", "status"],
            [
                [r["w"], r["order"], r["lift"], r["condition"], r["min_lift_order"]["got"],
                 r["min_lift_order"]["expected"], r["status"]]
                for r in t["table2"]
            ],
        )
        lines.append("")
    return "\n".join(lines)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if "tables" in doc:
        return render_tables_markdown(doc)
    if "checks" in doc:
        return render_report_markdown(doc)
    if "classes" in doc:
        rows = [[c["torus"], "w" + "w".join(map(str, c["representative"])) if c["representative"] else "1",
                 c["order"], c["class_size"], c["centralizer_order"], c["centralizer_abelian_invariants"]]
                for c in doc["classes"]]
        header = ["No.", "w", "|w|", "class size", "|C_W(w)|", "C_W(w) abelianized"]
        return "\n".join(_md_table(header, rows)) + "\n"
    return "```json\n" + json.dumps(doc, indent=2, sort_keys=True) + "\n```\n"


def emit(doc: dict, args) -> None:
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- verbs ---------------------------------------------------------------------------

def dump_roots() -> dict:
    from .rootsys import enumerate_roots

    R = enumerate_roots()
    roots = [{"index": r.index, "coeffs": list(r.coeffs), "length": r.length} for r in R.roots]
    nconst = [{"r": r, "s": s, "n": n} for (r, s), n in sorted(R.nconst.items())]
    extra = [{"root": t, "pair": list(p)} for t, p in sorted(R.extraspecial_pairs.items())]
    return {"roots": roots, "nconst": nconst, "extraspecial": extra}


def dump_tits(cocycle: bool = True) -> dict:
    from .extweyl import tits_group

    G = tits_group()
    R = G.R
    idx = R.indices
    eta = [{"s": s, "r": r, "eta": G.eta(s, r)} for s in idx for r in idx]
    doc: dict[str, Any] = {
        "eta": eta,
        "weyl_words": [list(w) for w in G.W.reduced_words],
        "cocycle_encoding": "row a, character b: hex code of s(a)s(b)s(ab)^-1, bit i set for h_(i+1)",
    }
    if cocycle:
        doc["cocycle"] = ["".join(f"{int(v):x}" for v in row) for row in G.cocycle]
    return doc


def classes_doc() -> dict:
    from .certdata import ROWS
    from .weylgrp import weyl_group

    W = weyl_group()
    row_of = {int(W.class_of[W.from_word(d["w"]).idx]): r for r, d in ROWS.items()}
    out = []
    for cid, c in enumerate(W.conjugacy_classes()):
        row = row_of.get(cid)
        rep = W.from_word(ROWS[row]["w"]) if row is not None else c["rep"]
        C = W.centralizer(rep)
        out.append({
            "torus": row,
            "representative": list(ROWS[row]["w"]) if row is not None else list(rep.word),
            "order": rep.order,
            "class_size": c["size"],
            "centralizer_order": C.order,
            "centralizer_abelian_invariants": C.abelian_invariants(),
        })
    out.sort(key=lambda d: (d["torus"] is None, d["torus"] or 0))
    return {"classes": out}


def formula_doc(word: str, m: int, tits_word: str | None) -> dict:
    from .certify import TitsAdapter
    from .extweyl import tits_group
    from .symtorus import power_formula, render_conjugate, universal_obstruction
    from .words import parse_word

    G = tits_group()
    if tits_word:
        n = parse_word(tits_word, TitsAdapter(G))
    else:
        n = G.canonical_lift(G.W.from_word(parse_weyl_word(word)))
    f = power_formula(n, m)
    y = universal_obstruction(f)
    return {
        "w": list(n.weyl_part.word),
        "B": n.weyl_part.B.tolist(),
        "conjugate": render_conjugate(n),
        "power": f.as_dict(),
        "obstruction": list(y) if y else None,
    }


def torus_doc(row: int, q: int) -> dict:
    from .certify import row_torus
    from .fixedtori import normalizer_order

    T = row_torus(row, q)
    C = T.W.centralizer(T.w)
    return {
        "torus": row,
        "q": q,
        "k": T.field.k,
        "order": T.order,
        "invariant_factors": list(T.factors),
        "centralizer_order": C.order,
        "normalizer_order": normalizer_order(T),
    }


def _job(tier: str, q: int | None, row: int | None, budget: int, seed: int) -> list[dict]:
    from . import certify

    if tier == "a":
        checks = certify.verify_tier_a(None if row is None else [row])
    elif tier == "b":
        checks = certify.verify_tier_b(q, [row], seed=seed)
    else:
        checks = [certify.oracle_check(row, q, budget)]
    return [c.as_dict() for c in checks]


def _run_jobs(jobs: list[tuple], workers: int) -> list[dict]:
    if workers <= 1 or len(jobs) <= 1:
        results = [_job(*j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_job, *zip(*jobs)))
    return [c for r in results for c in r]


def verify_doc(tiers: list[str], qs: list[int], rows: list[int] | None, budget: int, workers: int, seed: int) -> dict:
    from .certdata import ROWS
    from .certify import summarize

    jobs: list[tuple] = []
    ids = rows or sorted(ROWS)
    for tier in tiers:
        if tier == "a":
            if rows is None:
                jobs.append(("a", None, None, budget, seed))
            else:
                jobs += [("a", None, r, budget, seed) for r in ids]
        else:
            jobs += [(tier, q, r, budget, seed) for q in qs for r in ids]
    checks = _run_jobs(jobs, workers)
    return {
        "command": "verify",
        "config": {"tiers": tiers, "q": qs, "torus": rows or "all", "budget": budget, "seed": seed},
        "checks": checks,
        "summary": summarize(checks),
    }


def _table_job(q: int, budget: int) -> dict:
    from .certify import table_rows

    return table_rows(q, budget)


def tables_doc(qs: list[int], budget: int, workers: int) -> dict:
    if workers > 1 and len(qs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            tables = list(ex.map(_table_job, qs, [budget] * len(qs)))
    else:
        tables = [_table_job(q, budget) for q in qs]
    return {"tables": tables}


def tables_ok(doc: dict) -> bool:
    return all(r["status"] == "pass" for t in doc["tables"] for key in ("table1", "table2") for r in t[key])


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="f4tori", description="Normalizers of maximal tori in F4(q).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "markdown"], default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="verb", required=True)

    sub.add_parser("dump-roots", parents=[common], help="root table, extraspecial pairs and N_{r,s}")
    d = sub.add_parser("dump-tits", parents=[common], help="eta table and the section cocycle")
    d.add_argument("--no-cocycle", action="store_true", help="omit the 1152 x 1152 cocycle table")
    sub.add_parser("classes", parents=[common], help="conjugacy classes of W with centralizers")

    f = sub.add_parser("formula", parents=[common], help="symbolic (H n)^m")
    f.add_argument("--w", default="", help="Weyl word, e.g. 3,2 or w3w2 (uses the reduced-word lift)")
    f.add_argument("--n", help="Tits word instead of --w, e.g. n21n8n3n2 or h1n2")
    f.add_argument("--m", type=int, required=True)

    t = sub.add_parser("torus", parents=[common], help="structure of T and N for one row")
    t.add_argument("--id", type=int, required=True)
    t.add_argument("--q", type=str, required=True)

    for name in ("verify", "tables"):
        v = sub.add_parser(name, parents=[common])
        v.add_argument("--q", default="3,5,7,9,13")
        v.add_argument("--budget", type=int, default=10**8 if name == "verify" else 0,
                       help="oracle tuple budget (tables: 0 disables the oracle column)")
        v.add_argument("--workers", type=int, default=1)
        v.add_argument("--seed", type=int, default=0)
        if name == "verify":
            v.add_argument("--tier", default="a", help="a, b, c or a comma list")
            v.add_argument("--torus", help="row ids, e.g. 1,2,5-8")

    r = sub.add_parser("render", parents=[common], help="re-render a saved JSON report")
    r.add_argument("input")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"f4tori: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.verb == "dump-roots":
        emit(dump_roots(), args)
        return EXIT_OK
    if args.verb == "dump-tits":
        emit(dump_tits(not args.no_cocycle), args)
        return EXIT_OK
    if args.verb == "classes":
        emit(classes_doc(), args)
        return EXIT_OK
    if args.verb == "formula":
        if args.m < 1:
            raise UsageError("--m must be positive")
        if not args.w and not args.n:
            raise UsageError("give --w or --n")
        emit(formula_doc(args.w, args.m, args.n), args)
        return EXIT_OK
    if args.verb == "torus":
        qs = parse_q_list(args.q)
        if len(qs) != 1:
            raise UsageError("torus takes a single --q")
        q = qs[0]
        if not 1 <= args.id <= 25:
            raise UsageError("--id must lie in 1..25")
        emit(torus_doc(args.id, q), args)
        return EXIT_OK
    if args.verb == "render":
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
        emit(doc, args)
        ok = tables_ok(doc) if "tables" in doc else doc.get("summary", {}).get("fail", 0) == 0
        return EXIT_OK if ok else EXIT_FAIL
    if args.budget < 0:
        raise UsageError("--budget must be non-negative")
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    qs = parse_q_list(args.q)
    if args.verb == "tables":
        doc = tables_doc(qs, args.budget, args.workers)
        emit(doc, args)
        return EXIT_OK if tables_ok(doc) else EXIT_FAIL
    tiers = [t.strip() for t in args.tier.split(",") if t.strip()]
    if not tiers or any(t not in ("a", "b", "c") for t in tiers):
        raise UsageError(f"unknown tier in {args.tier!r}")
    if args.budget == 0 and "c" in tiers:
        raise UsageError("tier c needs a positive --budget")
    doc = verify_doc(tiers, qs, parse_rows(args.torus), args.budget, args.workers, args.seed)
    emit(doc, args)
    return EXIT_OK if doc["summary"]["fail"] == 0 else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

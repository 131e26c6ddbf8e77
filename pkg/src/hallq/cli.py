"""Command-line front end: ``hallq <command> ...``.

Every command prints a report (text or JSON) and exits 0 iff all of its
checks passed. Input errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import gflinalg as gf
from .gallery import example_quiver, golden_relations, match_golden
from .hall import (
    DEFAULT_DEGREE_BOUND,
    HallAlgebra,
    nonvanishing,
    rho_verify,
    verify_associativity,
    verify_hallcon,
)
from .presentation import degrees_up_to, generate_relations, quotient
from .quiver import BoundQuiver, QuiverError, load, relation_counts
from .repmod import (
    DIM_CAP,
    GlobalDimensionTooLarge,
    IndecompTable,
    enumerate_indecomposables,
    gldim,
    r_consistency,
)
from .unitform import (
    DEFAULT_ROOT_CAP,
    CapTooSmall,
    evaluate,
    is_weakly_positive,
    positive_roots,
    unit_form_of,
)

log = logging.getLogger("hallq")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


@dataclass
class Report:
    command: str
    results: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        # timing is left out so that reruns serialize identically
        return {"command": self.command, "passed": self.passed,
                "checks": self.checks, "results": self.results}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(data["command"], data["results"], data["checks"])


# -- formatting helpers ---------------------------------------------------------


def vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def class_label(hall: HallAlgebra, cls) -> str:
    if not any(cls):
        return "0"
    parts = []
    for m, rep in zip(cls, hall.table.reps):
        if m:
            tag = "[" + "".join(str(x) for x in rep.dims) + "]"
            parts.append(tag if m == 1 else f"{tag}^{m}")
    return " ".join(parts)


# -- shared pipeline --------------------------------------------------------------


def cache_dir(args) -> Path | None:
    raw = args.cache_dir or os.environ.get("HALLQ_CACHE_DIR")
    return Path(raw) if raw else None


def roots_for(bq: BoundQuiver, args):
    return positive_roots(unit_form_of(bq), args.root_cap)


def table_for(bq: BoundQuiver, args, roots=None) -> IndecompTable:
    roots = roots or roots_for(bq, args)
    too_big = [r for r in roots if max(r) > args.dim_cap]
    if too_big:
        raise gf.CapExceeded(f"root {too_big[0]} exceeds --dim-cap {args.dim_cap}")
    where = cache_dir(args)
    path = None
    if where is not None:
        key = f"{bq.canonical_hash()}-q{args.q}-dim{args.dim_cap}-root{args.root_cap}.json"
        path = where / key
        if path.exists():
            log.info("cache hit %s", path)
            return IndecompTable.from_dict(bq, json.loads(path.read_text()), roots)
    table = enumerate_indecomposables(bq, args.q, roots, dim_cap=args.dim_cap, strict=False)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(table.to_dict(), sort_keys=True))
    return table


def load_quiver(args) -> BoundQuiver:
    if getattr(args, "example", None):
        return example_quiver(args.example, args.length)
    return load(args.quiver)


# -- commands ------------------------------------------------------------------------


def cmd_analyze(args, bq: BoundQuiver | None = None) -> Report:
    bq = bq or load_quiver(args)
    T = unit_form_of(bq)
    rep = Report("analyze")
    gd = gldim(bq, args.q)
    if gd > 2:
        raise GlobalDimensionTooLarge(f"global dimension {gd} > 2")
    roots = roots_for(bq, args)
    rc = r_consistency(bq, args.q)
    r = relation_counts(bq)
    rep.results = {
        "quiver": bq.to_dict(),
        "hash": bq.canonical_hash(),
        "unit_form": T.to_dict(),
        "unit_form_text": T.pretty(),
        "relation_counts": {f"{i},{j}": c for (i, j), c in r.items() if c},
        "gldim": gd,
        "weakly_positive": is_weakly_positive(T, args.root_cap),
        "roots": [list(x) for x in roots],
        "r_consistency_warnings": rc.warnings,
    }
    rep.checks = {"gldim_at_most_2": True,
                  "weakly_positive": rep.results["weakly_positive"],
                  "r_consistency": not rc.warnings}
    return rep


def cmd_roots(args, bq: BoundQuiver | None = None) -> Report:
    bq = bq or load_quiver(args)
    roots = roots_for(bq, args)
    rep = Report("roots")
    T = unit_form_of(bq)
    rep.results = {"cap": args.root_cap, "count": len(roots),
                   "roots": [{"vector": list(x), "T_value": evaluate(T, x)} for x in roots]}
    rep.checks = {"complete_within_cap": True}
    return rep


def cmd_indecomposables(args, bq: BoundQuiver | None = None) -> Report:
    bq = bq or load_quiver(args)
    table = table_for(bq, args)
    rep = Report("indecomposables")
    rep.results = table.to_dict()
    rep.checks = {"directed_order": table.ordering_ok()}
    # the bijection is only guaranteed away from q = 2
    if args.q != 2:
        rep.checks["root_bijection"] = table.bijection_holds()
    return rep


def cmd_hall_table(args, bq: BoundQuiver | None = None) -> Report:
    bq = bq or load_quiver(args)
    hall = HallAlgebra(table_for(bq, args), args.degree_bound)
    basis = [c for c in hall.basis() if any(c)]
    rows = []
    for M in basis:
        for N in basis:
            if sum(hall.dim_of(M)) + sum(hall.dim_of(N)) > args.degree_bound:
                continue
            twist = hall.twist_exponent(M, N)
            total = tuple(a + b for a, b in zip(hall.dim_of(M), hall.dim_of(N)))
            for R in hall.classes_of_degree(total):
                F = hall.hall_number(M, N, R)
                if F:
                    rows.append({"M": list(M), "N": list(N), "R": list(R), "F": F,
                                 "twist_exponent": twist,
                                 "labels": [class_label(hall, c) for c in (M, N, R)]})
    assoc = verify_associativity(hall, min(args.degree_bound, 3))
    hc = verify_hallcon(hall)
    rep = Report("hall-table")
    rep.results = {
        "q": args.q, "degree_bound": args.degree_bound,
        "basis": [{"class": list(c), "label": class_label(hall, c), "dims": list(hall.dim_of(c)),
                   "aut": hall.aut_order(c)} for c in basis],
        "products": rows,
        "associativity_triples": assoc.triples,
        "hallcon_checked": len(hc.checked),
    }
    rep.checks = {"associativity": assoc.passed, "hallcon": not hc.failures}
    return rep


def cmd_presentation(args, bq: BoundQuiver | None = None) -> Report:
    bq = bq or load_quiver(args)
    T = unit_form_of(bq)
    P = generate_relations(T, roots_for(bq, args))
    labels = [f"e{v}" for v in bq.vertices]
    tower = quotient(P, args.mode)
    essential = {}
    for alpha, gens in P.by_degree().items():
        if sum(alpha) <= args.max_degree:
            ess = tower.essential_generators(alpha)
            essential[vec(alpha)] = [gens[k].element.format(labels) for k in ess]
    rep = Report("presentation")
    rep.results = {
        "mode": str(args.mode),
        "relation_count": len(P.relations),
        "discarded_zero": P.discarded_zero,
        "relations": [
            {"sequence": [bq.vertices[i] for i in r.sequence], "degree": list(r.degree),
             "text": r.element.format(labels), "terms": r.element.to_json()}
            for r in P.relations
        ],
        "independent_low_degree": essential,
        "dims": [{"alpha": list(a), "dim": tower.dim(a)} for a in degrees_up_to(bq.n, args.max_degree)],
    }
    rep.checks = {"relations_homogeneous": all(r.element.is_homogeneous() for r in P.relations)}
    return rep


def cmd_verify_rho(args, bq: BoundQuiver | None = None) -> Report:
    bq = bq or load_quiver(args)
    roots = roots_for(bq, args)
    T = unit_form_of(bq)
    P = generate_relations(T, roots)
    hall = HallAlgebra(table_for(bq, args, roots), args.degree_bound)
    rr = rho_verify(P, hall, args.max_degree)
    rep = Report("verify-rho")
    rep.results = rr.to_dict()
    rep.results["nonzero_relation_text"] = [
        r.element.format([f"e{v}" for v in bq.vertices])
        for r in P.relations if r.sequence in set(rr.nonzero)
    ][:10]
    rep.checks = {"homomorphism": rr.homomorphism_verified}
    if args.q != 2:
        rep.checks["isomorphism"] = bool(rr.isomorphism_verified)
    return rep


def cmd_examples(args) -> Report:
    bq = example_quiver(args.example, args.length)
    parts = {
        "analyze": cmd_analyze(args, bq),
        "indecomposables": cmd_indecomposables(args, bq),
        "verify-rho": cmd_verify_rho(args, bq),
    }
    P = generate_relations(unit_form_of(bq), roots_for(bq, args))
    golden = match_golden(P, args.example, args.length, args.max_degree)
    hall = HallAlgebra(table_for(bq, args), args.degree_bound)
    _, published = golden_relations(args.example, args.length)
    bad_published = nonvanishing(hall, published)
    hall_dims = {a: hall.hall_graded_dim(a) for a in golden.dims}
    published_vs_hall = [list(a) for a, (_, p) in golden.dims.items() if p != hall_dims[a]]
    rep = Report("examples")
    rep.results = {
        "example": args.example,
        "quiver": bq.to_dict(),
        "golden": golden.to_dict(),
        "published_relations_nonvanishing": bad_published,
        "published_dims_differing_from_hall": published_vs_hall,
        "steps": {k: v.to_dict() for k, v in parts.items()},
    }
    rep.checks = {"golden_relations": golden.passed,
                  "published_relations_vanish": not bad_published}
    if args.q != 2:
        rep.checks["published_dims_match_hall"] = not published_vs_hall
    for k, v in parts.items():
        for name, ok in v.checks.items():
            rep.checks[f"{k}:{name}"] = ok
    return rep


COMMANDS = {
    "analyze": cmd_analyze,
    "roots": cmd_roots,
    "indecomposables": cmd_indecomposables,
    "hall-table": cmd_hall_table,
    "presentation": cmd_presentation,
    "verify-rho": cmd_verify_rho,
    "examples": cmd_examples,
}


# -- text output ------------------------------------------------------------------------


def render_text(rep: Report) -> str:
    lines = [f"== {rep.command} ({rep.elapsed:.2f}s)"]
    res = rep.results
    if rep.command == "analyze":
        lines += [f"unit form: {res['unit_form_text']}",
                  f"gldim: {res['gldim']}",
                  f"weakly positive: {res['weakly_positive']}",
                  f"roots ({len(res['roots'])}): " + " ".join(vec(r) for r in res["roots"])]
        lines += [f"warning: {w}" for w in res["r_consistency_warnings"]]
    elif rep.command == "roots":
        lines += [f"{len(res['roots'])} positive roots (cap {res['cap']}):"]
        lines += [f"  {vec(r['vector'])}  T = {r['T_value']}" for r in res["roots"]]
    elif rep.command == "indecomposables":
        for e in res["indecomposables"]:
            lines.append(f"  V{e['index']}: dim {vec(e['dims'])}  |End|={e['end']}  |Aut|={e['aut']}")
        lines.append(f"root bijection: {res['root_bijection']}  directed order: {res['ordering_ok']}")
    elif rep.command == "hall-table":
        for row in res["products"]:
            m, n, r = row["labels"]
            lines.append(f"  F({r}; {m}, {n}) = {row['F']}   twist (sqrt q)^{row['twist_exponent']}")
    elif rep.command == "presentation":
        lines.append(f"{res['relation_count']} relation generators "
                     f"({res['discarded_zero']} identically zero dropped)")
        lines += [f"  {vec(r['degree'])}: {r['text']}" for r in res["relations"]]
        lines.append("graded dimensions:")
        lines += [f"  {vec(d['alpha'])}: {d['dim']}" for d in res["dims"]]
    elif rep.command == "verify-rho":
        lines.append(f"relations checked: {res['relations_checked']}, "
                     f"nonzero images: {len(res['nonzero_relations'])}")
        lines += [f"  nonzero: {t}" for t in res["nonzero_relation_text"]]
        for d in res["dimensions"]:
            flag = "" if d["presentation"] == d["hall"] else "   <-- differs"
            lines.append(f"  {vec(d['alpha'])}: U={d['presentation']} H={d['hall']}{flag}")
        lines.append(f"homomorphism verified: {res['homomorphism_verified']}; "
                     f"isomorphism verified: {res['isomorphism_verified']}")
    elif rep.command == "examples":
        g = res["golden"]
        for m in g["golden"]:
            lines.append(f"  {m['relation']:28s} degree {vec(m['degree'])}  in ideal: {m['in_ideal']}  "
                         f"dim generated/published: {m['dim_generated']}/{m['dim_published']}")
        if res["published_relations_nonvanishing"]:
            lines.append(f"  published relations not vanishing: {res['published_relations_nonvanishing']}")
    for name, ok in rep.checks.items():
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return "\n".join(lines)


# -- argument parsing -----------------------------------------------------------------------


def positive_prime(text: str) -> int:
    q = int(text)
    if not gf.is_prime(q):
        raise argparse.ArgumentTypeError(f"{q} is not a prime")
    return q


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=positive_prime, default=3, help="prime field size (default 3)")
    common.add_argument("--dim-cap", type=int, default=DIM_CAP,
                        help="largest entry of a dimension vector to enumerate")
    common.add_argument("--root-cap", type=int, default=DEFAULT_ROOT_CAP, help="root search box")
    common.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND,
                        help="total dimension bound of the Hall table")
    common.add_argument("--max-degree", type=int, default=5,
                        help="largest |alpha| for dimension comparisons")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir", default=None, help="cache for indecomposable tables "
                        "(default: $HALLQ_CACHE_DIR)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hallq", description="Hall algebras of bound quivers "
                                     "and their quantized presentations.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "unit form, global dimension and positive roots",
        "roots": "positive roots of the unit form",
        "indecomposables": "indecomposable representations over F_q",
        "hall-table": "Hall numbers and twisted structure constants",
        "presentation": "generated relations and graded dimensions",
        "verify-rho": "check the map from the presentation to the Hall algebra",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("quiver", help="quiver file (line format or JSON)")
        if name == "presentation":
            sp.add_argument("--mode", default="generic",
                            help="'generic', '1', or 'sqrt:<q>' for the coefficient field")
    ex = sub.add_parser("examples", parents=[common], help="run a worked example end to end")
    ex.add_argument("example", type=int, choices=(1, 2, 3, 4))
    ex.add_argument("--length", type=int, default=4, help="number of vertices for example 2")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "mode", None) == "1":
        args.mode = 1
    start = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args)
    except (QuiverError, GlobalDimensionTooLarge, CapTooSmall, gf.CapExceeded,
            OSError, ValueError) as exc:
        print(f"hallq: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.elapsed = time.perf_counter() - start
    print(rep.to_json() if args.format == "json" else render_text(rep))
    return EXIT_OK if rep.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

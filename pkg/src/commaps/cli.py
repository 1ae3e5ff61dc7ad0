"""Command-line front end.

    commaps analyze POSET.json [--ring Q] [--dot out.dot] [--figure out.png]
    commaps solve POSET.json --ring Q
    commaps witness POSET.json --ring Q
    commaps verify POSET.json MAP.json
    commaps enumerate --max-size 4 --ring Q [--figure out.png]

JSON and CSV go to standard output, logs to standard error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra import element_to_json
from .circles import equiv_classes_bruteforce, properness_guaranteed
from .commuting import (
    commuting_space,
    commuting_violation,
    decompose_proper,
    improper_witness,
    is_commuting,
    map_from_json,
    proper_space,
    relations_check,
    shape_check,
)
from .errors import CommapsError, InputError, NotAField, OracleBoundExceeded
from .preorder import DEFAULT_ORACLE_BOUND, check_bound, enumerate_preorders, load_preorder, to_dot
from .ring import make_ring

log = logging.getLogger("commaps")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_FIELD = 3
EXIT_VIOLATION = 4
EXIT_NOT_GUARANTEED = 10
EXIT_NO_WITNESS = 11
EXIT_NOT_COMMUTING = 12


def _dump(doc):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _field_ring(args):
    ring = make_ring(args.ring)
    if not ring.is_field:
        raise NotAField(f"--ring {ring.name} is not a field; solving needs Q or Z/p")
    return ring


def analysis_report(poset, ring=None, oracle_bound=DEFAULT_ORACLE_BOUND) -> dict:
    rep = properness_guaranteed(poset)
    lab = poset.elements
    by_comp = rep.partition.classes_by_component()
    doc = {
        "guaranteed": rep.guaranteed,
        "components": [
            {
                "elements": [lab[x] for x in comp],
                "edge_classes": [[[lab[i], lab[j]] for i, j in cls] for cls in classes],
            }
            for comp, classes in zip(rep.components, by_comp)
        ],
        "input": {"size": poset.n, "strict_pairs": len(poset.strict_pairs)},
    }
    if poset.n <= oracle_bound:
        doc["oracle_agrees"] = equiv_classes_bruteforce(poset, oracle_bound) == rep.partition
    if ring is not None and ring.is_field:
        dc = commuting_space(poset, ring).dimension
        dp = proper_space(poset, ring).dimension
        doc["ring"] = ring.name
        doc["dimensions"] = {"commuting": dc, "proper": dp}
        doc["witness_exists"] = dc > dp
    return doc


def cmd_analyze(args) -> int:
    poset = load_preorder(args.poset)
    ring = make_ring(args.ring) if args.ring else None
    doc = analysis_report(poset, ring, args.oracle_bound)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(poset))
        log.info("wrote %s", args.dot)
    if args.figure:
        from .plotting import plot_edge_classes

        plot_edge_classes(poset, properness_guaranteed(poset).partition, args.figure)
        log.info("wrote %s", args.figure)
    _dump(doc)
    return EXIT_OK if doc["guaranteed"] else EXIT_NOT_GUARANTEED


def cmd_solve(args) -> int:
    ring = _field_ring(args)
    poset = load_preorder(args.poset)
    space = commuting_space(poset, ring)
    sys.stdout.write(f"dimension: {space.dimension}\n")
    for m in space.maps:
        sys.stdout.write(json.dumps(m.to_json()) + "\n")
    return EXIT_OK


def cmd_witness(args) -> int:
    ring = _field_ring(args)
    poset = load_preorder(args.poset)
    theta = improper_witness(poset, ring)
    if theta is None:
        sys.stdout.write("none\n")
        return EXIT_NO_WITNESS
    _dump(theta.to_json())
    return EXIT_OK


def verify_verdict(poset, theta, seed=0) -> dict:
    lab = poset.elements
    bad = commuting_violation(theta)
    commuting = bad is None and is_commuting(theta, seed=seed)
    verdict = {
        "ring": theta.ring.name,
        "commuting": commuting,
        "violation": None if bad is None else [[lab[i] for i in bad[0]], [lab[i] for i in bad[1]]],
        "shape": None,
        "relations": None,
        "proper": None,
    }
    if poset.is_connected():
        verdict["shape"] = shape_check(theta)
        if verdict["shape"]:
            rep = relations_check(theta)
            verdict["relations"] = {k: [list(t) for t in v] for k, v in rep.violations.items()}
    if commuting and theta.ring.is_field:
        dec = decompose_proper(theta)
        verdict["proper"] = dec is not None
        if dec is not None:
            verdict["lambda"] = element_to_json(dec.lam.element)
            verdict["mu"] = [
                {"on": [lab[i], lab[j]], "value": element_to_json(dec.mu[i, j].element)}
                for i, j in poset.pairs
                if not dec.mu[i, j].is_zero()
            ]
    return verdict


def cmd_verify(args) -> int:
    poset = load_preorder(args.poset)
    with open(args.map, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.map}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    ring = make_ring(args.ring) if args.ring else None
    theta = map_from_json(poset, doc, ring)
    verdict = verify_verdict(poset, theta, args.seed)
    _dump(verdict)
    return EXIT_OK if verdict["commuting"] else EXIT_NOT_COMMUTING


def _canonical(poset):
    n = poset.n
    return min(
        tuple(poset.leq[p[a]][p[b]] for a in range(n) for b in range(n)) for p in itertools.permutations(range(n))
    )


def _row(job):
    pid, poset, ring_name = job
    ring = make_ring(ring_name)
    g = properness_guaranteed(poset).guaranteed
    dc = commuting_space(poset, ring).dimension
    dp = proper_space(poset, ring).dimension
    rel = " ".join(f"{poset.label(i)}<{poset.label(j)}" for i, j in poset.strict_pairs)
    return {"poset_id": pid, "size": poset.n, "relations": rel, "guaranteed": g, "dim_commuting": dc, "dim_proper": dp}


def enumeration_jobs(max_size, ring_name, unique=False):
    for n in range(1, max_size + 1):
        seen = set()
        for k, poset in enumerate(enumerate_preorders(n)):
            if unique:
                key = _canonical(poset)
                if key in seen:
                    continue
                seen.add(key)
            yield f"n{n}-{k}", poset, ring_name


def cmd_enumerate(args) -> int:
    check_bound(args.max_size, args.oracle_bound)
    ring = _field_ring(args)
    jobs = list(enumeration_jobs(args.max_size, ring.name, args.unique))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_row, jobs, chunksize=16))
    else:
        rows = [_row(j) for j in jobs]
    fields = ["poset_id", "size", "relations", "guaranteed", "dim_commuting", "dim_proper"]
    w = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    violations = 0
    for r in rows:
        w.writerow({**r, "guaranteed": str(r["guaranteed"]).lower()})
        if r["guaranteed"] != (r["dim_commuting"] == r["dim_proper"]):
            violations += 1
            log.error("equivalence violated on %s (%s)", r["poset_id"], r["relations"])
    sys.stdout.flush()
    if args.figure:
        from .plotting import plot_enumeration

        plot_enumeration(rows, args.figure)
        log.info("wrote %s", args.figure)
    log.info("%d pre-orders, %d violations", len(rows), violations)
    if violations:
        log.error("fatal: %d violations of guaranteed <=> equal dimensions", violations)
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--oracle-bound", type=int, default=DEFAULT_ORACLE_BOUND, help="largest |X| for brute-force checks")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="commaps", description="Commuting maps on incidence algebras of finite pre-orders.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="decide whether every commuting map is proper")
    p.add_argument("poset")
    p.add_argument("--ring", default=None, help="Z, Q or Z/<m>; dimensions are reported for fields")
    p.add_argument("--dot", default=None, help="write the comparability graph as DOT")
    p.add_argument("--figure", default=None, help="render the edge classes to an image file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("solve", parents=[common], help="basis of the space of commuting maps")
    p.add_argument("poset")
    p.add_argument("--ring", default="Q")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("witness", parents=[common], help="an improper commuting map, if any")
    p.add_argument("poset")
    p.add_argument("--ring", default="Q")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="check a map file")
    p.add_argument("poset")
    p.add_argument("map")
    p.add_argument("--ring", default=None, help="defaults to the ring named in the map file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="all labeled pre-orders up to a size, as CSV")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--ring", default="Q")
    p.add_argument("--unique", action="store_true", help="keep one pre-order per isomorphism class")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--figure", default=None, help="render a summary plot to an image file")
    p.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.func(args)
    except NotAField as exc:
        log.error("%s", exc)
        return EXIT_NOT_FIELD
    except (InputError, OracleBoundExceeded, CommapsError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

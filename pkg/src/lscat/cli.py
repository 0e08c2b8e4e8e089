"""Command-line front end.

Exit codes are scripting-friendly: 0 = success/certified, 2 = violated
(an obstruction was found), 3 = inconclusive, 64 = usage error,
65 = file parse/validation error.  ``--json`` emits the machine form;
the text output is a projection of the same payload.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import catalogue
from .bounds import (
    CROSS_CHECK_LIMIT,
    cup_length_formula,
    cup_length_search,
    so_n_presentation,
)
from .catalogue import SpaceRecord, UnknownSpaceError
from .homs import (
    CERTIFIED,
    INCONCLUSIVE,
    VIOLATED,
    DimensionMismatch,
    HomValidationError,
    check_injectivity,
    check_top_class,
    full_report,
    thm_main_check,
    torus_stabilization_k,
    validate_hom,
)
from .rings import (
    GeneratorSpec,
    MultiplicationTable,
    TruncatedPresentation,
    check_poincare_duality,
    expand_to_table,
)
from .spacefile import (
    SpaceFileError,
    parse_map,
    parse_space,
    resolve_map,
    serialize_space,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_VIOLATED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_PARSE = 65

DEFAULT_SEED = 20938

# reference values for the special orthogonal family, n = 3..9:
# dimension, truncation exponents, cup-length
SO_REFERENCE = {
    3: (3, (4,), 3),
    4: (6, (4, 2), 4),
    5: (10, (8, 2), 8),
    6: (15, (8, 2, 2), 9),
    7: (21, (8, 4, 2), 11),
    8: (28, (8, 4, 2, 2), 12),
    9: (36, (16, 4, 2, 2), 20),
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we use 64
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="lscat",
        description="Cup-length, Morse and category bounds for closed manifolds, "
        "and degree-one map obstruction reports.",
    )
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for randomized cross-checks (default %(default)s)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_show = sub.add_parser("show", help="print a space as a normalized space file")
    p_show.add_argument("space", help="catalogue name or space file path")

    p_inv = sub.add_parser("invariants", help="Poincare polynomial, cup-length, ledger")
    p_inv.add_argument("space")

    p_cl = sub.add_parser("cup-length", help="cup-length by formula and/or search")
    p_cl.add_argument("space")

    p_map = sub.add_parser("check-map", help="validate a map file and its consequences")
    p_map.add_argument("mapfile")
    p_map.add_argument(
        "--space", action="append", default=[], help="extra space file (repeatable)"
    )

    p_rep = sub.add_parser(
        "degree1-report", help="run every criterion for maps domain -> range"
    )
    p_rep.add_argument("-m", "--domain", required=True, help="domain manifold M")
    p_rep.add_argument("-n", "--range", required=True, help="range manifold N")
    p_rep.add_argument("--map", dest="mapfile", help="optional map file with the induced hom")
    p_rep.add_argument("--space", action="append", default=[])

    sub.add_parser("verify-paper", help="recompute the SO(n) table and checks")

    sub.add_parser("catalogue", help="list built-in spaces")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"lscat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        handler = {
            "show": cmd_show,
            "invariants": cmd_invariants,
            "cup-length": cmd_cup_length,
            "check-map": cmd_check_map,
            "degree1-report": cmd_degree1_report,
            "verify-paper": cmd_verify_paper,
            "catalogue": cmd_catalogue,
        }[args.command]
        return handler(args)
    except SpaceFileError as exc:
        print(f"lscat: {exc} [{exc.kind}]", file=sys.stderr)
        return EXIT_PARSE
    except HomValidationError as exc:
        print("lscat: invalid homomorphism:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_PARSE
    except (_UsageError, UnknownSpaceError, DimensionMismatch, OSError) as exc:
        print(f"lscat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


# -- resolution ----------------------------------------------------------------


def _load_extra_spaces(paths: list[str]) -> dict[str, SpaceRecord]:
    loaded = {}
    for path in paths:
        record = parse_space(Path(path).read_text(encoding="utf-8"))
        loaded[record.name] = record
    return loaded


def _resolve_space(token: str, loaded: dict[str, SpaceRecord]) -> SpaceRecord:
    if token in loaded:
        return loaded[token]
    path = Path(token)
    if path.is_file():
        return parse_space(path.read_text(encoding="utf-8"))
    return catalogue.get(token)


def _emit(args, payload: dict, text: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


# -- commands -------------------------------------------------------------------


def cmd_show(args) -> int:
    record = _resolve_space(args.space, {})
    if args.json:
        print(json.dumps(_record_dict(record), indent=2, sort_keys=True))
        return EXIT_OK
    print(serialize_space(record), end="")
    return EXIT_OK


def _record_dict(record: SpaceRecord) -> dict:
    ring = record.ring
    if isinstance(ring, TruncatedPresentation):
        ring_info = {
            "kind": "presentation",
            "generators": [(g.name, g.degree) for g in ring.generators],
            "truncations": list(ring.truncations),
        }
    elif isinstance(ring, MultiplicationTable):
        ring_info = {"kind": "table", "basis": [list(b) for b in ring.basis]}
    else:
        ring_info = None
    return {
        "name": record.name,
        "dimension": record.dimension,
        "connectivity": record.connectivity,
        "orientable": record.orientable,
        "stably_parallelizable": record.stably_parallelizable,
        "known_cat": list(record.known_cat) if record.known_cat else None,
        "genus": record.genus,
        "ring": ring_info,
        "notes": list(record.notes),
    }


def _cup_length_info(record: SpaceRecord) -> dict:
    ring = record.ring
    if ring is None:
        return {"formula": None, "search": None, "agree": None}
    if isinstance(ring, TruncatedPresentation):
        formula = cup_length_formula(ring)
        search = None
        if ring.total_dimension <= CROSS_CHECK_LIMIT:
            search = cup_length_search(expand_to_table(ring))
        return {
            "formula": formula,
            "search": search,
            "agree": None if search is None else search == formula,
        }
    return {"formula": None, "search": cup_length_search(ring), "agree": None}


def cmd_invariants(args) -> int:
    record = _resolve_space(args.space, {})
    payload: dict = {
        "space": record.name,
        "dimension": record.dimension,
        "connectivity": record.connectivity,
        "stably_parallelizable": record.stably_parallelizable,
        "orientable": record.orientable,
        "known_cat": list(record.known_cat) if record.known_cat else None,
        "notes": list(record.notes),
    }
    text = [
        f"space {record.name}: dim {record.dimension}, connectivity "
        f"{record.connectivity}"
    ]
    if record.ring is None:
        payload.update(
            {"poincare_polynomial": None, "cup_length": None, "poincare_duality": None, "ledger": None}
        )
        text.append("no ring data stored; ring invariants not applicable")
    else:
        poly = record.ring.poincare_polynomial()
        cl = _cup_length_info(record)
        table = (
            record.ring
            if isinstance(record.ring, MultiplicationTable)
            else expand_to_table(record.ring)
        )
        duality = (
            check_poincare_duality(table) if table.size <= CROSS_CHECK_LIMIT else None
        )
        ledger = record.ledger()
        payload.update(
            {
                "poincare_polynomial": poly,
                "cup_length": cl,
                "poincare_duality": duality,
                "ledger": ledger.to_dict(),
            }
        )
        text.append("poincare polynomial: " + " ".join(str(c) for c in poly))
        if cl["formula"] is not None and cl["search"] is not None:
            status = "agree" if cl["agree"] else "MISMATCH"
            text.append(f"cup-length: {cl['formula']} (formula) = {cl['search']} (search) [{status}]")
        elif cl["formula"] is not None:
            text.append(f"cup-length: {cl['formula']} (formula)")
        else:
            text.append(f"cup-length: {cl['search']} (search)")
        text.append(f"poincare duality: {duality}")
        text.append(
            f"cat {ledger.cat}; e* {ledger.toomer_e}; ballcat {ledger.ballcat}; "
            f"crit {ledger.crit}; crit* {ledger.crit_star}"
        )
    if record.known_cat:
        text.append(f'known cat: {record.known_cat[0]} -- "{record.known_cat[1]}"')
    for note in record.notes:
        text.append(f"note: {note}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_cup_length(args) -> int:
    record = _resolve_space(args.space, {})
    if record.ring is None:
        print(f"lscat: error: {record.name} has no ring data", file=sys.stderr)
        return EXIT_USAGE
    cl = _cup_length_info(record)
    payload = {"space": record.name, "cup_length": cl}
    value = cl["formula"] if cl["formula"] is not None else cl["search"]
    text = [f"cup-length of {record.name}: {value}"]
    if cl["agree"] is not None:
        text.append(f"formula {cl['formula']} / search {cl['search']}: "
                    + ("agree" if cl["agree"] else "MISMATCH"))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check_map(args) -> int:
    loaded = _load_extra_spaces(args.space)
    spec = parse_map(Path(args.mapfile).read_text(encoding="utf-8"))
    try:
        domain = _resolve_space(spec.domain, loaded)
        range_ = _resolve_space(spec.range, loaded)
    except UnknownSpaceError as exc:
        raise SpaceFileError(str(exc), kind="unknown-space") from exc
    hom = resolve_map(spec, domain, range_)
    vh = validate_hom(hom)
    per_degree, overall = check_injectivity(vh)
    try:
        top_ok = check_top_class(vh)
    except (DimensionMismatch, ValueError) as exc:
        top_ok = None
        top_msg = str(exc)
    else:
        top_msg = None
    payload = {
        "map": spec.name,
        "domain": domain.name,
        "range": range_.name,
        "asserted_degree": spec.degree,
        "valid_ring_homomorphism": True,
        "injective_per_degree": {str(d): ok for d, ok in per_degree.items()},
        "injective_overall": overall,
        "top_class_preserved": top_ok,
    }
    text = [
        f"map {spec.name}: {domain.name} -> {range_.name}, asserted degree {spec.degree:+d}",
        "induced homomorphism is a valid graded ring homomorphism",
    ]
    for d in sorted(per_degree):
        text.append(f"  degree {d}: {'injective' if per_degree[d] else 'NOT injective'}")
    if top_ok is None:
        text.append(f"top class: not applicable ({top_msg})")
    else:
        text.append(f"top class preserved: {top_ok}")
    violated = (not overall) or top_ok is False
    text.append(
        "verdict: violated (no such degree +-1 map exists)"
        if violated
        else "verdict: consistent with a degree +-1 map"
    )
    payload["verdict"] = "violated" if violated else "consistent"
    _emit(args, payload, text)
    return EXIT_VIOLATED if violated else EXIT_OK


def cmd_degree1_report(args) -> int:
    loaded = _load_extra_spaces(args.space)
    m_record = _resolve_space(args.domain, loaded)
    n_record = _resolve_space(args.range, loaded)
    hom = None
    if args.mapfile:
        spec = parse_map(Path(args.mapfile).read_text(encoding="utf-8"))
        map_domain = _resolve_space(spec.domain, loaded)
        map_range = _resolve_space(spec.range, loaded)
        if (map_domain.name, map_range.name) != (m_record.name, n_record.name):
            raise _UsageError(
                f"map file connects {map_domain.name} -> {map_range.name}, "
                f"not {m_record.name} -> {n_record.name}"
            )
        hom = resolve_map(spec, map_domain, map_range)
    report = full_report(m_record, n_record, hom=hom)
    payload = report.to_dict()
    text = [
        f"degree-1 comparison for maps f: {report.domain} -> {report.range} "
        f"(equal dimensions {m_record.dimension})"
    ]
    for v in report.verdicts:
        text.append(f"  {v.criterion_id}: {v.status} -- {v.reason}")
        for c in v.citations:
            text.append(f"      [{c}]")
    text.append(f"overall: {report.overall}")
    for note in report.notes:
        text.append(f"note: {note}")
    _emit(args, payload, text)
    return {CERTIFIED: EXIT_OK, VIOLATED: EXIT_VIOLATED, INCONCLUSIVE: EXIT_INCONCLUSIVE}[
        report.overall
    ]


def cmd_verify_paper(args) -> int:
    rows = []
    ok_all = True

    for n, (dim_expected, truncs_expected, cl_expected) in SO_REFERENCE.items():
        p = so_n_presentation(n)
        cl_f = cup_length_formula(p)
        cl_s = cup_length_search(expand_to_table(p))
        record = catalogue.get(f"SO{n}")
        known = record.known_cat[0] if record.known_cat else None
        checks = [
            p.top_degree == dim_expected == n * (n - 1) // 2,
            p.truncations == truncs_expected,
            cl_f == cl_expected,
            cl_s == cl_expected,
            known == cl_expected,
        ]
        ok = all(checks)
        ok_all &= ok
        rows.append(
            {
                "row": f"SO{n}",
                "dimension": p.top_degree,
                "truncations": list(p.truncations),
                "cup_length_formula": cl_f,
                "cup_length_search": cl_s,
                "known_cat": known,
                "ok": ok,
            }
        )

    g2 = catalogue.get("G2")
    x14 = SpaceRecord(
        name="X14",
        dimension=14,
        connectivity=0,
        orientable=True,
        stably_parallelizable=True,
        ring=None,
    )
    verdict = thm_main_check(x14, g2)
    g2_ok = verdict.status == CERTIFIED and "20" in verdict.reason
    ok_all &= g2_ok
    rows.append(
        {
            "row": "G2",
            "condition": "dim 14 <= 2*q*cat - 4 = 20 (q = 3, cat = 4)",
            "status": verdict.status,
            "ok": g2_ok,
        }
    )

    st = torus_stabilization_k(14)
    torus_ok = st.k == 18 and st.lhs == st.rhs == 32
    ok_all &= torus_ok
    rows.append(
        {
            "row": "torus stabilization",
            "k": st.k,
            "inequality": f"2k-4 = {st.lhs} >= k+n = {st.rhs}",
            "ok": torus_ok,
        }
    )

    rng = random.Random(args.seed)
    spot_ok = True
    for i in range(5):
        p = _random_presentation(rng)
        cl_f = cup_length_formula(p)
        cl_s = cup_length_search(expand_to_table(p))
        spot_ok &= cl_f == cl_s
    ok_all &= spot_ok
    rows.append(
        {"row": "randomized oracle spot-check", "cases": 5, "seed": args.seed, "ok": spot_ok}
    )

    payload = {"rows": rows, "ok": ok_all}
    text = []
    for row in rows:
        status = "OK" if row["ok"] else "FAIL"
        detail = ", ".join(
            f"{k} {v}" for k, v in row.items() if k not in ("row", "ok")
        )
        text.append(f"{row['row']:<28} {detail}  [{status}]")
    text.append("all checks passed" if ok_all else "MISMATCH DETECTED")
    _emit(args, payload, text)
    return EXIT_OK if ok_all else EXIT_MISMATCH


def _random_presentation(rng: random.Random) -> TruncatedPresentation:
    while True:
        k = rng.randint(1, 3)
        gens = tuple(GeneratorSpec(f"g{i}", rng.randint(1, 4)) for i in range(k))
        truncs = tuple(rng.choice((2, 2, 3, 4, 8)) for _ in range(k))
        size = 1
        for q in truncs:
            size *= q
        if size <= 256:
            top = sum((q - 1) * g.degree for g, q in zip(gens, truncs))
            return TruncatedPresentation(gens, truncs, top)


def cmd_catalogue(args) -> int:
    entries = []
    for name in catalogue.names():
        record = catalogue.get(name)
        entries.append(
            {
                "name": name,
                "dimension": record.dimension,
                "known_cat": record.known_cat[0] if record.known_cat else None,
            }
        )
    payload = {"spaces": entries}
    text = [f"{e['name']:<8} dim {e['dimension']:<3} known cat {e['known_cat']}" for e in entries]
    text.append(
        "families: SOn (n >= 2), Tk (k >= 1), Sn (n >= 1), S_g (g >= 0); "
        "products on demand, e.g. S3xS3"
    )
    _emit(args, payload, text)
    return EXIT_OK


if __name__ == "__main__":
    entry()

"""Command-line front end.

    peirce-lab ring verify|idempotents|peirce|center ...
    peirce-lab map classify|structure ...
    peirce-lab conditions check --set thm1|thm2|ei ...
    peirce-lab search maps|nonadditive|theorem ...
    peirce-lab demo eg1|eg2|eg3|all [--modulus M]

Exit codes: 0 computed successfully, 1 a checked property failed or a
witness was found, 2 usage error, 3 guard or budget exceeded. JSON output
(--format json) is deterministic: sorted keys, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import conditions as conditions_mod
from . import maps as maps_mod
from . import peirce as peirce_mod
from . import rings as rings_mod
from . import search as search_mod
from .rings import GuardError, Ring, SpecError, parse_coords


def _emit_json(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _load_ring(args) -> Ring:
    if args.ring_file:
        return rings_mod.load_ring(args.ring_file, max_size=args.max_ring)
    name, *params = args.catalog
    try:
        params = [int(p) for p in params]
    except ValueError:
        raise SpecError(f"catalog parameters must be integers, got {params}") from None
    return rings_mod.construct_catalog_ring(name, params)


def _load_map(ring: Ring, args) -> maps_mod.MapTable:
    if getattr(args, "map_file", None):
        return maps_mod.load_map(ring, args.map_file)
    if getattr(args, "map_expr", None):
        return maps_mod.build_map(ring, args.map_expr)
    return maps_mod.build_map(ring, args.map)


def _idempotent(ring: Ring, args):
    return ring.element(parse_coords(args.idempotent))


def _ring_source_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--catalog",
        nargs="+",
        metavar=("NAME", "PARAM"),
        help="catalog ring id plus integer parameters, e.g. --catalog zn 6",
    )
    group.add_argument("--ring-file", help="path to a ring JSON file")
    p.add_argument(
        "--max-ring",
        type=int,
        default=None,
        help="override the full-scan size guard for this invocation",
    )


def _format_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def _map_source_args(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--map", help="catalog map id or inline 'vars ... : (...)' text")
    group.add_argument("--map-file", help="path to a map JSON file")
    group.add_argument("--map-expr", help="map expression text")


def _search_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("csp", "oracle"), default="csp")
    p.add_argument("--max-solutions", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--max-search-ring", type=int, default=None,
                   help="override the search ring-size cap")


def _search_config(args) -> search_mod.SearchConfig:
    return search_mod.SearchConfig(
        mode=args.mode,
        max_ring_size=args.max_search_ring,
        max_solutions=args.max_solutions,
        time_budget=args.time_budget,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peirce-lab",
        description="finite-ring laboratory: Peirce decompositions, map "
        "classification, additivity conditions, exhaustive map search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="ring-level operations")
    ring_sub = ring.add_subparsers(dest="subcommand", required=True)
    for name, helptext in (
        ("verify", "full element-level axiom scan"),
        ("idempotents", "list idempotents, flagging nontrivial ones"),
        ("peirce", "Peirce decomposition at an idempotent"),
        ("center", "elements commuting with everything"),
    ):
        p = ring_sub.add_parser(name, help=helptext)
        _ring_source_args(p)
        _format_arg(p)
        if name == "peirce":
            p.add_argument("--idempotent", required=True, help='coordinates, e.g. "3,0"')

    mp = sub.add_parser("map", help="map-level operations")
    mp_sub = mp.add_subparsers(dest="subcommand", required=True)
    p = mp_sub.add_parser("classify", help="decide each defining law by pair scan")
    _ring_source_args(p)
    _map_source_args(p)
    _format_arg(p)
    p = mp_sub.add_parser(
        "structure", help="observe Peirce structure of a reverse derivable map"
    )
    _ring_source_args(p)
    _map_source_args(p)
    p.add_argument("--idempotent", required=True)
    _format_arg(p)

    cond = sub.add_parser("conditions", help="hypothesis-set checks")
    cond_sub = cond.add_subparsers(dest="subcommand", required=True)
    p = cond_sub.add_parser("check", help="check one condition set at an idempotent")
    _ring_source_args(p)
    p.add_argument("--idempotent", required=True)
    p.add_argument("--set", required=True, choices=sorted(conditions_mod.CONDITION_SETS),
                   dest="condition_set")
    p.add_argument("--strict", action="store_true",
                   help="ei only: restrict m to the annihilator of the center")
    _format_arg(p)

    srch = sub.add_parser("search", help="exhaustive map search")
    srch_sub = srch.add_subparsers(dest="subcommand", required=True)
    p = srch_sub.add_parser("maps", help="enumerate all reverse derivable maps")
    _ring_source_args(p)
    _search_args(p)
    _format_arg(p)
    p = srch_sub.add_parser("nonadditive", help="find a non-additive reverse derivable map")
    _ring_source_args(p)
    _search_args(p)
    _format_arg(p)
    p = srch_sub.add_parser("theorem", help="empirical hypothesis/conclusion report")
    _ring_source_args(p)
    p.add_argument("--idempotent", required=True)
    _search_args(p)
    _format_arg(p)

    demo = sub.add_parser("demo", help="reproduce the worked examples")
    demo.add_argument("which", choices=("eg1", "eg2", "eg3", "all"))
    demo.add_argument("--modulus", type=int, default=5,
                      help="coefficient modulus for the eg1/eg3 demos (default 5)")
    _format_arg(demo)

    return parser


# -- handlers -------------------------------------------------------------------


def _cmd_ring(args) -> tuple[int, dict, list[str]]:
    if args.subcommand == "verify":
        try:
            ring = _load_ring(args)
        except SpecError as exc:
            report = {"ring": None, "ok": False, "error": str(exc)}
            return 1, report, [f"ring verify: FAIL ({exc})"]
        axioms = rings_mod.verify_ring_axioms(ring, max_size=args.max_ring)
        report = {"ring": ring.to_dict(), "order": ring.order, **axioms.to_dict()}
        lines = [f"ring {ring.name}: order {ring.order}"]
        lines.append(f"axioms: {'PASS' if axioms.ok else 'FAIL'}")
        if not axioms.ok:
            for law in ("associativity", "left_distributivity", "right_distributivity"):
                t = getattr(axioms, law)
                if t is not None:
                    lines.append(f"  {law} fails at ({t[0]}), ({t[1]}), ({t[2]})")
            if axioms.unit_failure is not None:
                lines.append(f"  unit fails at ({axioms.unit_failure})")
        return (0 if axioms.ok else 1), report, lines

    ring = _load_ring(args)
    if args.subcommand == "idempotents":
        found = peirce_mod.find_idempotents(ring, max_size=args.max_ring)
        report = {
            "ring": ring.name,
            "idempotents": [
                {"element": e.as_list(), "nontrivial": nt} for e, nt in found
            ],
        }
        lines = [f"ring {ring.name}: {len(found)} idempotent(s)"]
        for e, nt in found:
            lines.append(f"  ({e}){'  [nontrivial]' if nt else ''}")
        return 0, report, lines
    if args.subcommand == "peirce":
        dec = peirce_mod.peirce_decompose(ring, _idempotent(ring, args))
        report = {"ring": ring.name, **dec.to_dict()}
        sizes = dec.component_sizes()
        lines = [
            f"ring {ring.name}, idempotent ({dec.e})",
            "component sizes: "
            + ", ".join(f"R{i}{j}={sizes[(i, j)]}" for i, j in peirce_mod.COMPONENT_TAGS),
        ]
        return 0, report, lines
    if args.subcommand == "center":
        zs = rings_mod.center(ring, max_size=args.max_ring)
        report = {"ring": ring.name, "center": [z.as_list() for z in zs]}
        lines = [f"ring {ring.name}: center has {len(zs)} element(s)"]
        lines.extend(f"  ({z})" for z in zs)
        return 0, report, lines
    raise AssertionError(args.subcommand)


def _classification_lines(cls: maps_mod.MapClassification) -> list[str]:
    lines = []
    for field_name, check in (
        ("additive", cls.additive),
        ("derivation", cls.derivation),
        ("reverse_derivation", cls.reverse_derivation),
        ("jordan_derivation", cls.jordan_derivation),
        ("left_centralizer", cls.left_centralizer),
        ("right_centralizer", cls.right_centralizer),
    ):
        if check.ok:
            lines.append(f"  {field_name}: yes")
        else:
            witness = ", ".join(f"({w})" for w in check.witness)
            lines.append(f"  {field_name}: no  [witness {witness}]")
    return lines


def _cmd_map(args) -> tuple[int, dict, list[str]]:
    ring = _load_ring(args)
    m = _load_map(ring, args)
    if args.subcommand == "classify":
        cls = maps_mod.classify_map(m, max_size=args.max_ring)
        report = {"ring": ring.name, "map": m.label, "classification": cls.to_dict()}
        lines = [f"map {m.label} on {ring.name}:"] + _classification_lines(cls)
        return 0, report, lines
    if args.subcommand == "structure":
        dec = peirce_mod.peirce_decompose(ring, _idempotent(ring, args))
        rep = maps_mod.verify_reverse_map_structure(m, dec)
        report = {"ring": ring.name, **rep.to_dict()}
        lines = [f"map {m.label} on {ring.name}, idempotent ({dec.e}):"]
        for item in rep.items:
            if item.passed is None:
                lines.append(f"  {item.item_id}: SKIPPED")
            elif item.passed:
                lines.append(f"  {item.item_id}: PASS")
            else:
                witness = ", ".join(f"({w})" for w in item.witness)
                lines.append(f"  {item.item_id}: FAIL  [witness {witness}]")
        return (0 if rep.all_passed() else 1), report, lines
    raise AssertionError(args.subcommand)


def _cmd_conditions(args) -> tuple[int, dict, list[str]]:
    ring = _load_ring(args)
    e = _idempotent(ring, args)
    rep = conditions_mod.check_conditions(
        ring, e, args.condition_set, strict=args.strict, max_size=args.max_ring
    )
    report = {"ring": ring.name, **rep.to_dict()}
    lines = [f"conditions {rep.set_name} on {ring.name}, idempotent ({e})"
             + (f" [mode={rep.mode}]" if rep.mode else "")]
    for item in rep.items:
        if item.passed:
            lines.append(f"  {rep.set_name}({item.item_id}): PASS")
        else:
            lines.append(
                f"  {rep.set_name}({item.item_id}): FAIL  [witness ({item.witness})]"
            )
    lines.append(f"overall: {'PASS' if rep.overall else 'FAIL'}")
    return (0 if rep.overall else 1), report, lines


def _cmd_search(args) -> tuple[int, dict, list[str]]:
    ring = _load_ring(args)
    cfg = _search_config(args)
    if args.subcommand == "maps":
        result = search_mod.enumerate_reverse_derivable_maps(ring, cfg)
        report = {"ring": ring.name, **result.to_dict()}
        lines = [
            f"ring {ring.name}: {len(result.maps)} reverse derivable map(s), "
            f"complete={result.complete}",
            f"stats: nodes={result.stats.nodes} propagations={result.stats.propagations} "
            f"wall={result.stats.wall_time:.3f}s",
        ]
        return 0, report, lines
    if args.subcommand == "nonadditive":
        found = search_mod.find_nonadditive_reverse_derivable(ring, cfg)
        report = {
            "ring": ring.name,
            "found": None if found is None else found.to_dict(),
        }
        if found is None:
            return 0, report, [f"ring {ring.name}: no non-additive reverse derivable map"]
        return 1, report, [
            f"ring {ring.name}: found non-additive reverse derivable map",
            f"  table {found.as_tuple()}",
        ]
    if args.subcommand == "theorem":
        e = _idempotent(ring, args)
        report = search_mod.empirical_theorem_report(ring, e, cfg)
        v = report["verdicts"]
        lines = [
            f"ring {ring.name}, idempotent ({e}): {report['search']['count']} "
            "reverse derivable map(s)",
            f"  non-additive map exists: {v['nonadditive_exists']}",
            f"  additive maps are all zero: {v['additive_maps_all_zero']}",
            f"  thm1 hypotheses hold: {v['thm1_hypotheses_hold']} "
            f"-> {v['thm1_implication']}",
            f"  thm2 hypotheses hold: {v['thm2_hypotheses_hold']} "
            f"-> {v['thm2_implication']}",
            f"  ei conditions hold: {v['ei_conditions_hold']}",
        ]
        if v["additivity_without_hypotheses"]:
            lines.append("  note: hypotheses not necessary for additivity on this ring")
        return 0, report, lines
    raise AssertionError(args.subcommand)


# -- demos ----------------------------------------------------------------------


def _demo_eg1(modulus: int) -> dict:
    ring = rings_mod.construct_catalog_ring("eg1", [modulus])
    m = maps_mod.build_map(ring, "eg1_map")
    cls = maps_mod.classify_map(m)
    x = ring.element((0, 1, 1))
    return {
        "ring": ring.to_dict(),
        "order": ring.order,
        "map": m.label,
        "expression": maps_mod.catalog_map_expr_text("eg1_map", ring),
        "classification": cls.to_dict(),
        "defect_example": {
            "x": x.as_list(),
            "y": x.as_list(),
            "defect": maps_mod.additivity_defect(m, x, x).as_list(),
        },
        "idempotents": [
            {"element": e.as_list(), "nontrivial": nt}
            for e, nt in peirce_mod.find_idempotents(ring)
        ],
    }


def _demo_eg1_lines(rep: dict) -> list[str]:
    cls = rep["classification"]
    name = rep["ring"]["name"]
    lines = [f"[{name}] strictly upper triangular 3x3 ring, order {rep['order']}"]
    lines.append(f"map {rep['map']}: {rep['expression']}")
    lines.append(
        f"  reverse derivable: {'yes' if cls['reverse_derivation']['pass'] else 'no'}"
    )
    add = cls["additive"]
    if add["pass"]:
        lines.append("  additive: yes")
    else:
        w = add["witness"]
        lines.append(
            f"  additive: no  [witness ({','.join(map(str, w[0]))}), "
            f"({','.join(map(str, w[1]))})]"
        )
    d = rep["defect_example"]
    lines.append(
        f"  defect at (({','.join(map(str, d['x']))}), ({','.join(map(str, d['y']))}))"
        f" = ({','.join(map(str, d['defect']))})"
    )
    nontrivial = [i for i in rep["idempotents"] if i["nontrivial"]]
    lines.append(
        f"  idempotents: {len(rep['idempotents'])} total, {len(nontrivial)} nontrivial"
    )
    return lines


def _demo_eg2() -> dict:
    ring = rings_mod.construct_catalog_ring("eg2")
    e = ring.element((3, 0))
    dec = peirce_mod.peirce_decompose(ring, e)
    cond = conditions_mod.check_conditions(ring, e, "thm1")
    m = maps_mod.build_map(ring, "eg2_map")
    cls = maps_mod.classify_map(m)
    return {
        "ring": ring.to_dict(),
        "order": ring.order,
        "idempotent": e.as_list(),
        "idempotent_nontrivial": peirce_mod.is_nontrivial_idempotent(ring, e),
        "peirce_sizes": {k: v for k, v in dec.to_dict()["sizes"].items()},
        "thm1": cond.to_dict(),
        "map": m.label,
        "expression": maps_mod.catalog_map_expr_text("eg2_map", ring),
        "classification": cls.to_dict(),
        "paper_witness_revalidates": conditions_mod.witness_revalidate(
            ring, e, "thm1.i", ring.element((2, 4))
        ),
    }


def _demo_eg2_lines(rep: dict) -> list[str]:
    cls = rep["classification"]
    lines = [f"[eg2] matrices [[a,b],[0,a]] over Z6, order {rep['order']}"]
    e = ",".join(map(str, rep["idempotent"]))
    lines.append(
        f"idempotent ({e}): nontrivial = {rep['idempotent_nontrivial']}"
    )
    sizes = rep["peirce_sizes"]
    lines.append(
        "Peirce sizes: "
        + ", ".join(f"R{k}={sizes[k]}" for k in ("11", "12", "21", "22"))
    )
    for item in rep["thm1"]["items"]:
        if item["pass"]:
            lines.append(f"thm1({item['id']}): PASS")
        else:
            w = ",".join(map(str, item["witness"]))
            lines.append(f"thm1({item['id']}): FAIL  [witness ({w})]")
    lines.append(
        f"witness (2,4) revalidates for thm1(i): {rep['paper_witness_revalidates']}"
    )
    verdict = (
        "additive reverse derivable"
        if cls["additive"]["pass"] and cls["reverse_derivation"]["pass"]
        else "NOT additive reverse derivable"
    )
    lines.append(f"map {rep['map']} ({rep['expression']}): {verdict}")
    lines.append("hypotheses not necessary for additivity on this ring")
    return lines


def _demo_eg3(modulus: int) -> dict:
    ring = rings_mod.construct_catalog_ring("eg3", [modulus])
    lam = maps_mod.build_map(ring, "lambda")
    phi = maps_mod.build_map(ring, "phi")
    return {
        "ring": ring.to_dict(),
        "order": ring.order,
        "lambda": {
            "expression": maps_mod.catalog_map_expr_text("lambda", ring),
            "classification": maps_mod.classify_map(lam).to_dict(),
        },
        "phi": {
            "expression": maps_mod.catalog_map_expr_text("phi", ring),
            "classification": maps_mod.classify_map(phi).to_dict(),
        },
    }


def _demo_eg3_lines(rep: dict) -> list[str]:
    name = rep["ring"]["name"]
    lines = [f"[{name}] 4x4 ring on coordinates (a,b,c), order {rep['order']}"]
    for label in ("lambda", "phi"):
        cls = rep[label]["classification"]
        lines.append(f"map {label}: {rep[label]['expression']}")
        lines.append(
            f"  reverse derivation: {'yes' if cls['reverse_derivation']['pass'] else 'no'}"
            f", derivation: {'yes' if cls['derivation']['pass'] else 'no'}"
            f", additive: {'yes' if cls['additive']['pass'] else 'no'}"
        )
    return lines


def _cmd_demo(args) -> tuple[int, dict, list[str]]:
    m = args.modulus
    if m < 2:
        raise SpecError("demo modulus must be >= 2")
    if args.which == "eg1":
        rep = _demo_eg1(m)
        return 0, rep, _demo_eg1_lines(rep)
    if args.which == "eg2":
        rep = _demo_eg2()
        return 0, rep, _demo_eg2_lines(rep)
    if args.which == "eg3":
        rep = _demo_eg3(m)
        return 0, rep, _demo_eg3_lines(rep)
    eg1 = _demo_eg1(m)
    eg2 = _demo_eg2()
    eg3 = _demo_eg3(m)
    lines = (
        _demo_eg1_lines(eg1) + [""] + _demo_eg2_lines(eg2) + [""] + _demo_eg3_lines(eg3)
    )
    return 0, {"eg1": eg1, "eg2": eg2, "eg3": eg3}, lines


_HANDLERS = {
    "ring": _cmd_ring,
    "map": _cmd_map,
    "conditions": _cmd_conditions,
    "search": _cmd_search,
    "demo": _cmd_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        code, report, lines = _HANDLERS[args.command](args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit_json(report)
    else:
        for line in lines:
            print(line)
    return code


def entry() -> None:
    raise SystemExit(main())

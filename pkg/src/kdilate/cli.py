"""Batch command-line front end.

Problem files are JSON documents with a top-level "kind" drawn from
{"group_endo", "k_data", "cuntz", "graph"}; every integer is either a JSON
number within +-2^53 or a decimal string (arbitrary precision).  Results
render as text, canonical JSON (sorted keys, two-space indent, no floats),
or DOT for the two poset subcommands.

Exit codes: 0 success, 2 input/schema errors (diagnostic on stderr),
3 for computations whose outcome is an unresolved extension (the result is
still printed, with a status field).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    IntMatrix,
    _quotient_with_maps,
    lattice_contains,
    smith_normal_form,
)
from .colimit import (
    ColimitDescription,
    DilationProblem,
    TAG_EXTENSION,
    TAG_FINITE,
    TAG_LOCALIZED,
    TAG_UNRESOLVED,
    classify_colimit,
    ker_coker_one_minus,
)
from .graphalg import (
    Graph,
    enumerate_hereditary_saturated,
    ideal_lattice_hasse,
    prim_poset,
    subquotient_k,
    crossed_subquotient_k,
)
from .kcrossed import KTheoryData, cuntz_closed_form, pv_crossed_product

_MAX_JSON_INT = 2**53
_KINDS = ("group_endo", "k_data", "cuntz", "graph")


class InputError(Exception):
    """Anything wrong with the command line or a problem file."""


# ---------------------------------------------------------------------------
# Input parsing and validation
# ---------------------------------------------------------------------------

def _as_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        if abs(value) > _MAX_JSON_INT:
            raise InputError(f"{where}: integers beyond 2^53 must be decimal strings")
        return value
    if isinstance(value, str):
        if re.fullmatch(r"-?\d+", value.strip()):
            return int(value)
        raise InputError(f"{where}: {value!r} is not a decimal integer")
    raise InputError(f"{where}: expected an integer")


def _as_count(value, where: str) -> int:
    n = _as_int(value, where)
    if n < 0:
        raise InputError(f"{where}: must be nonnegative")
    return n


def _as_matrix(value, where: str, cols: int | None = None,
               rows: int | None = None) -> IntMatrix:
    if not isinstance(value, list) or any(not isinstance(r, list) for r in value):
        raise InputError(f"{where}: expected a list of rows")
    parsed = [[_as_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)]
              for i, row in enumerate(value)]
    widths = {len(r) for r in parsed}
    if len(widths) > 1:
        raise InputError(f"{where}: ragged rows")
    if not parsed and cols is None:
        raise InputError(f"{where}: cannot infer the width of an empty matrix")
    width = widths.pop() if parsed else cols
    if cols is not None and width != cols:
        raise InputError(f"{where}: expected {cols} columns, found {width}")
    if rows is not None and len(parsed) != rows:
        raise InputError(f"{where}: expected {rows} rows, found {len(parsed)}")
    return IntMatrix.from_rows(parsed, cols=width)


def _load_document(path: str, expected_kind: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: problem file must be a JSON object")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise InputError(f"{path}: kind must be one of {list(_KINDS)}, got {kind!r}")
    if kind != expected_kind:
        raise InputError(f"{path}: this subcommand expects kind {expected_kind!r}, "
                         f"file has {kind!r}")
    return doc


def _check_fields(doc: dict, where: str, required: set, optional: set = frozenset()):
    allowed = required | optional | {"kind", "comment"}
    for key in doc:
        if key not in allowed:
            raise InputError(f"{where}: unexpected field {key!r}")
    for key in required:
        if key not in doc:
            raise InputError(f"{where}: missing field {key!r}")


def _load_presentation(doc: dict, where: str) -> tuple[int, IntMatrix]:
    _check_fields(doc, where, {"generators", "relations"})
    generators = _as_count(doc["generators"], f"{where}.generators")
    relations = _as_matrix(doc["relations"], f"{where}.relations", cols=generators)
    return generators, relations


def _endo_on_presentation(generators: int, relations: IntMatrix, endo: IntMatrix,
                          where: str) -> DilationProblem:
    for row in relations.entries:
        if not lattice_contains(relations, endo.apply(row)):
            raise InputError(f"{where}: endomorphism does not preserve the relation lattice")
    group, projection, lift = _quotient_with_maps(generators, relations)
    return DilationProblem(group, GroupHom(group, group, projection @ endo @ lift))


def _load_group_endo(path: str, need_endo: bool):
    doc = _load_document(path, "group_endo")
    _check_fields(doc, path, {"generators", "relations"}, {"endo"})
    generators = _as_count(doc["generators"], f"{path}: generators")
    relations = _as_matrix(doc["relations"], f"{path}: relations", cols=generators)
    endo = None
    if "endo" in doc:
        endo = _as_matrix(doc["endo"], f"{path}: endo", cols=generators, rows=generators)
    if need_endo and endo is None:
        raise InputError(f"{path}: this subcommand needs an 'endo' matrix")
    return generators, relations, endo


def _load_k_data(path: str) -> KTheoryData:
    doc = _load_document(path, "k_data")
    _check_fields(doc, path, {"k0", "k1", "map0", "map1"})
    groups = []
    for key in ("k0", "k1"):
        if not isinstance(doc[key], dict):
            raise InputError(f"{path}: {key} must be an object with generators/relations")
        groups.append(_load_presentation(doc[key], f"{path}: {key}"))
    problems = []
    for (gens, rels), key in zip(groups, ("map0", "map1")):
        endo = _as_matrix(doc[key], f"{path}: {key}", cols=gens, rows=gens)
        problems.append(_endo_on_presentation(gens, rels, endo, f"{path}: {key}"))
    return KTheoryData(problems[0].base, problems[1].base,
                       problems[0].endo, problems[1].endo)


def _load_graph(path: str) -> Graph:
    doc = _load_document(path, "graph")
    _check_fields(doc, path, {"vertices", "adjacency"})
    vertices = doc["vertices"]
    if (not isinstance(vertices, list)
            or any(not isinstance(v, str) or not v for v in vertices)):
        raise InputError(f"{path}: vertices must be a list of nonempty strings")
    adjacency = _as_matrix(doc["adjacency"], f"{path}: adjacency",
                           cols=len(vertices), rows=len(vertices))
    try:
        return Graph(tuple(vertices), adjacency)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _parse_vertex_set(arg: str, where: str) -> list[str]:
    if arg in ("", "-"):
        return []
    names = [part.strip() for part in arg.split(",")]
    if any(not name for name in names):
        raise InputError(f"{where}: empty vertex name in {arg!r}")
    return names


def _parse_cuntz_n(text: str) -> int | None:
    if text == "inf":
        return None
    n = _as_int(text, "n")
    return n


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) > _MAX_JSON_INT:
        return str(obj)
    return obj


def render_json(payload: dict) -> str:
    return json.dumps(_json_safe(payload), indent=2, sort_keys=True)


def _group_json(group: FGAbelianGroup) -> dict:
    return {"free_rank": group.free_rank,
            "invariant_factors": list(group.invariant_factors),
            "pretty": str(group)}


def _description_json(desc: ColimitDescription) -> dict:
    if desc.tag == TAG_FINITE:
        return {"tag": desc.tag, "group": _group_json(desc.fg_part),
                "pretty": desc.pretty()}
    if desc.tag == TAG_LOCALIZED:
        diag = desc.localized_diagonal()
        return {"tag": desc.tag, "rank": desc.loc_rank,
                "matrix": desc.loc_matrix.to_lists(),
                "localizers": list(diag) if diag is not None else None,
                "pretty": desc.pretty()}
    if desc.tag == TAG_EXTENSION:
        return {"tag": desc.tag, "sub": _description_json(desc.sub),
                "quot": _description_json(desc.quot), "resolved": bool(desc.resolved),
                "pretty": desc.pretty()}
    return {"tag": TAG_UNRESOLVED, "pretty": desc.pretty()}


def _description_status(desc: ColimitDescription) -> str:
    if desc.tag == TAG_UNRESOLVED or (desc.tag == TAG_EXTENSION and not desc.resolved):
        return "unresolved"
    return "ok"


def _poset_payload(poset) -> tuple[dict, list[str], str]:
    payload = {"elements": list(poset.elements),
               "covers": [list(c) for c in poset.covers],
               "status": "ok"}
    lines = [f"{lower} < {upper}" for lower, upper in poset.covers]
    if not lines:
        lines = [f"single element: {e}" for e in poset.elements] or ["empty poset"]
    return payload, lines, poset.to_dot()


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (payload, text lines, dot or None)
# ---------------------------------------------------------------------------

def _cmd_snf(args):
    generators, relations, _ = _load_group_endo(args.input, need_endo=False)
    del generators
    result = smith_normal_form(relations)
    payload = {"S": result.S.to_lists(), "U": result.U.to_lists(),
               "V": result.V.to_lists(), "status": "ok"}
    lines = [f"S = {result.S}", f"U = {result.U}", f"V = {result.V}"]
    return payload, lines, None


def _problem_from_args(args) -> DilationProblem:
    generators, relations, endo = _load_group_endo(args.input, need_endo=True)
    try:
        return _endo_on_presentation(generators, relations, endo, args.input)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from exc


def _cmd_colim(args):
    problem = _problem_from_args(args)
    desc = classify_colimit(problem)
    status = _description_status(desc)
    payload = {"base": _group_json(problem.base), "colimit": _description_json(desc),
               "status": status}
    return payload, [f"colimit = {desc.pretty()}", f"status = {status}"], None


def _cmd_kercoker(args):
    problem = _problem_from_args(args)
    ker_desc, cok_desc = ker_coker_one_minus(problem)
    status = "ok"
    if "unresolved" in (_description_status(ker_desc), _description_status(cok_desc)):
        status = "unresolved"
    payload = {"kernel": _description_json(ker_desc),
               "cokernel": _description_json(cok_desc), "status": status}
    lines = [f"ker(1 - f) = {ker_desc.pretty()}",
             f"coker(1 - f) = {cok_desc.pretty()}",
             f"status = {status}"]
    return payload, lines, None


def _cmd_pv(args):
    data = _load_k_data(args.input)
    result = pv_crossed_product(data)
    k0, k1 = result.k0_description(), result.k1_description()
    status = "ok" if result.fully_resolved else "unresolved"
    payload = {"k0": _description_json(k0), "k1": _description_json(k1),
               "k0_sub": _description_json(result.k0_sub),
               "k0_quot": _description_json(result.k0_quot),
               "k1_sub": _description_json(result.k1_sub),
               "k1_quot": _description_json(result.k1_quot),
               "reason": result.resolution_reason, "status": status}
    lines = [f"K0 = {k0.pretty()}", f"K1 = {k1.pretty()}",
             f"reason: {result.resolution_reason}", f"status = {status}"]
    return payload, lines, None


def _cmd_cuntz(args):
    if args.input is not None and args.n is not None:
        raise InputError("give positional n and m or --input, not both")
    if args.input is not None:
        doc = _load_document(args.input, "cuntz")
        _check_fields(doc, args.input, {"n", "m"})
        n = None if doc["n"] is None else _as_int(doc["n"], f"{args.input}: n")
        m = _as_int(doc["m"], f"{args.input}: m")
    elif args.n is not None and args.m is not None:
        n = _parse_cuntz_n(args.n)
        m = _as_int(args.m, "m")
    else:
        raise InputError("cuntz needs positional arguments n m (n may be 'inf') or --input")
    try:
        form = cuntz_closed_form(n, m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"n": form.n, "m": form.m, "k": form.k,
               "order_gcd": form.order_gcd, "order_quotient": form.order_quotient,
               "emitted": form.emitted,
               "k0": _group_json(form.k0), "k1": _group_json(form.k1),
               "label": form.label, "status": "ok"}
    lines = [f"K0 = {form.k0}, K1 = {form.k1}, label = {form.label}"]
    if form.k is not None:
        lines.append(f"k = {form.k}, torsion order = {form.order_gcd} "
                     f"(gcd form; quotient form {form.order_quotient} recorded)")
    return payload, lines, None


def _cmd_graph_hs(args):
    graph = _load_graph(args.input)
    family = enumerate_hereditary_saturated(graph)
    labels = [graph.format_set(s) for s in family]
    payload = {"subsets": [sorted(s, key=graph.vertices.index) for s in family],
               "status": "ok"}
    return payload, labels, None


def _cmd_graph_lattice(args):
    return _poset_payload(ideal_lattice_hasse(_load_graph(args.input)))


def _cmd_graph_prim(args):
    graph = _load_graph(args.input)
    try:
        poset = prim_poset(graph)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from exc
    return _poset_payload(poset)


def _graph_k_sets(args, graph: Graph):
    zset = _parse_vertex_set(args.zset, "Z")
    yset = _parse_vertex_set(args.yset, "Y")
    return zset, yset


def _cmd_graph_k(args):
    graph = _load_graph(args.input)
    zset, yset = _graph_k_sets(args, graph)
    try:
        k0, k1 = subquotient_k(graph, zset, yset)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"k0": _group_json(k0), "k1": _group_json(k1), "status": "ok"}
    return payload, [f"K0 = {k0}, K1 = {k1}"], None


def _cmd_graph_crossed_k(args):
    graph = _load_graph(args.input)
    zset, yset = _graph_k_sets(args, graph)
    try:
        d0, d1 = crossed_subquotient_k(graph, zset, yset)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    status = "ok"
    if "unresolved" in (_description_status(d0), _description_status(d1)):
        status = "unresolved"
    payload = {"k0": _description_json(d0), "k1": _description_json(d1),
               "status": status}
    lines = [f"K0 = {d0.pretty()}", f"K1 = {d1.pretty()}", f"status = {status}"]
    return payload, lines, None


_HANDLERS = {
    "snf": _cmd_snf,
    "colim": _cmd_colim,
    "kercoker": _cmd_kercoker,
    "pv": _cmd_pv,
    "cuntz": _cmd_cuntz,
    "graph-hs": _cmd_graph_hs,
    "graph-lattice": _cmd_graph_lattice,
    "graph-prim": _cmd_graph_prim,
    "graph-k": _cmd_graph_k,
    "graph-crossed-k": _cmd_graph_crossed_k,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kdilate",
        description="Exact K-theory of crossed products by endomorphisms, "
                    "dilation colimits, and graph-algebra ideal lattices.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name: str, help_text: str, needs_input: bool) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=("text", "json", "dot"), default="text",
                        help="output format (default: text)")
        sp.add_argument("--input", metavar="FILE", required=needs_input,
                        default=None, help="JSON problem file")
        return sp

    add("snf", "Smith normal form of the relations matrix of a group_endo file", True)
    add("colim", "classify the dilation colimit of a group endomorphism", True)
    add("kercoker", "kernel and cokernel of (1 - fbar) on the dilation colimit", True)
    add("pv", "crossed-product K-theory from a k_data file", True)
    cuntz = add("cuntz", "closed-form table entry for the Cuntz family", False)
    cuntz.add_argument("n", nargs="?", default=None, help="'inf' or an integer >= 2")
    cuntz.add_argument("m", nargs="?", default=None, help="positive integer")
    add("graph-hs", "hereditary and saturated vertex sets of a graph", True)
    add("graph-lattice", "Hasse diagram of the ideal lattice of a graph", True)
    add("graph-prim", "primitive-ideal poset of a graph", True)
    gk = add("graph-k", "K-groups of the subquotient on Z minus Y", True)
    gk.add_argument("zset", metavar="Z", help="comma-separated vertex names ('' or '-' for empty)")
    gk.add_argument("yset", metavar="Y", nargs="?", default="",
                    help="comma-separated vertex names (default empty)")
    gck = add("graph-crossed-k", "crossed-product K-groups of the subquotient", True)
    gck.add_argument("zset", metavar="Z", help="comma-separated vertex names")
    gck.add_argument("yset", metavar="Y", nargs="?", default="",
                     help="comma-separated vertex names (default empty)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already wrote the diagnostic
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        payload, lines, dot = _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "dot":
        if dot is None:
            print("error: dot format is not available for this subcommand",
                  file=sys.stderr)
            return 2
        sys.stdout.write(dot)
    elif args.format == "json":
        print(render_json(payload))
    else:
        for line in lines:
            print(line)
    return 3 if payload.get("status") == "unresolved" else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

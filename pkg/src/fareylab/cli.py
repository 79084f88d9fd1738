"""``farey`` command line: thin wrappers over the library, JSON or DOT on stdout.

Exit codes: 0 success, 1 negative check (with a witness), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from . import amalgam, decomp, farey, kclass, lprime, models
from .errors import FareyError
from .graph import Graph, graph_from_dict, graph_to_dict, to_dot

SCHEMA = "farey-lab/1"


class InputError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}") from None


def _load_graph(path: str) -> Graph:
    return graph_from_dict(_load_json(path))


def _glue(text: str) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        try:
            a, b = part.split(":")
            out[int(a)] = int(b)
        except ValueError:
            raise InputError(f"glue entries look like b:c, got {part!r}") from None
    return out


def _catalog(args) -> lprime.CycleCatalog:
    return lprime.load_catalog(getattr(args, "max_vertices", 8) or 8)


def _emit(payload: dict, args, dot: str | None = None) -> None:
    if getattr(args, "format", "json") == "dot":
        if dot is None:
            raise InputError("this command has no DOT output")
        sys.stdout.write(dot)
        return
    payload = {"schema": SCHEMA, **payload}
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


# --- verbs ------------------------------------------------------------------------


def cmd_build(args) -> int:
    f = farey.build_level(args.level)
    _emit(f.to_dict(), args, f.to_dot())
    return 0


def cmd_check_k(args) -> int:
    g = _load_graph(args.input)
    rep = kclass.is_in_K(g)
    _emit(rep.to_dict(), args)
    return 0 if rep.member else 1


def cmd_peel(args) -> int:
    g = _load_graph(args.input)
    rng = random.Random(args.seed) if args.seed is not None else None
    seq, stuck = kclass.peel(g, _ints(args.protected), rng)
    _emit({"peel": seq.to_dict(), "stuck": sorted(stuck)}, args)
    return 0


def cmd_strong(args) -> int:
    g = _load_graph(args.input)
    ok, witness = kclass.is_strong(_ints(args.subset), g)
    if ok:
        _emit({"strong": True, "peel": witness.to_dict()}, args)
        return 0
    _emit({"strong": False, "stuck": sorted(witness)}, args)
    return 1


def cmd_amalgamate(args) -> int:
    b = _load_graph(args.b)
    c = _load_graph(args.c)
    glue = _glue(args.glue)
    fn = amalgam.free_amalgam if args.free else amalgam.amalgamate_in_K
    res = fn(glue.keys(), b, c, glue)
    _emit(res.to_dict(), args, to_dot(res.graph))
    return 0


def cmd_tree_model(args) -> int:
    spec = models.ModelSpec.from_dict(_load_json(args.spec))
    tm = models.build_tree_model(spec)
    _emit(tm.to_dict(), args, to_dot(tm.graph))
    return 0


def cmd_generic(args) -> int:
    cfg = models.GenericConfig(*args.weights) if args.weights else models.GenericConfig()
    g, log = models.build_generic(args.seed, args.steps, cfg)
    out = graph_to_dict(g)
    out["log"] = [{"vertex": s.vertex, "kind": s.kind, "attach": list(s.attach)} for s in log]
    _emit(out, args, to_dot(g))
    return 0


def cmd_blocks(args) -> int:
    g = _load_graph(args.input)
    t = decomp.build_g_tree(g)
    out = t.to_dict()
    out["cut_vertices"] = t.cut_vertices()
    out["is_forest"] = decomp.is_forest(t)
    _emit(out, args, t.to_dot())
    return 0


def cmd_acl(args) -> int:
    g = _load_graph(args.input)
    hull = decomp.conv_m(g, _ints(args.set))
    _emit(
        {
            "acl": sorted(hull.vertex_set),
            "hull_vertex_nodes": sorted(hull.vertex_nodes),
            "hull_classes": sorted(hull.class_nodes),
        },
        args,
    )
    return 0


def cmd_gate(args) -> int:
    g = _load_graph(args.input)
    _emit({"gate": decomp.gate(g, args.x, _ints(args.set))}, args)
    return 0


def cmd_indep(args) -> int:
    g = _load_graph(args.input)
    a, b, c = _ints(args.a), _ints(args.b), _ints(args.c)
    ok = decomp.is_independent(g, b, a, c)
    _emit({"independent": ok, "free_amalgam": decomp.free_amalgam_over(g, a, b, c)}, args)
    return 0 if ok else 1


def cmd_cycles(args) -> int:
    cat = lprime.enumerate_cycle_types(args.max_vertices)
    if args.out:
        cat.save(args.out)
    out = cat.to_dict()
    out["by_span"] = {str(k): [t.name for t in v] for k, v in sorted(cat.by_span().items())}
    _emit(out, args)
    return 0


def _delta(text: str | None, cat: lprime.CycleCatalog) -> lprime.DeltaSequence:
    return lprime.DeltaSequence.parse(text or "", cat)


def cmd_eval(args) -> int:
    g = _load_graph(args.input)
    cat = _catalog(args)
    if args.pred == "pc":
        if args.type is None or args.y is None:
            raise InputError("pc needs --type, --x and --y")
        holds, copy = lprime.eval_P_C(g, cat.get(args.type), args.x, args.y)
        out: dict = {"holds": holds, "copy": sorted(copy) if copy else None}
    elif args.pred == "pdelta":
        if args.y is None:
            raise InputError("pdelta needs --x and --y")
        holds, w = lprime.eval_P_delta(g, _delta(args.delta, cat), args.x, args.y)
        out = {"holds": holds}
        if w is not None:
            out.update(w.to_dict())
    elif args.pred == "d":
        if args.y is None or args.z is None:
            raise InputError("d needs --x, --y and --z")
        maps = lprime.eval_D(g, args.level, args.x, args.y, args.z)
        out = {"holds": bool(maps), "extensions": [{str(k): v for k, v in m.extension.items()} for m in maps]}
    else:
        if args.y is None or args.z is None:
            raise InputError("y needs --x, --y and --z")
        eps = lprime.EpsilonDescriptor(
            _delta(args.d1, cat), _delta(args.d2, cat), _delta(args.d3, cat), args.level
        )
        holds, w = lprime.eval_Y(g, eps, args.x, args.y, args.z)
        out = {"holds": holds, "witnesses": list(w.points) if w else None}
    _emit(out, args)
    return 0 if out["holds"] else 1


def cmd_fingerprint(args) -> int:
    g = _load_graph(args.input)
    bounds = lprime.FingerprintBounds(args.max_cycle, args.max_delta, args.max_eps, args.max_level)
    ctx = lprime.FingerprintContext(g, _ints(args.over), bounds)
    subjects = _ints(args.b)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        fps = list(pool.map(ctx.fingerprint, subjects))
    out: dict = {"fingerprints": {str(b): f.to_dict() for b, f in zip(subjects, fps)}}
    out["distinct"] = len(set(fps))
    if args.minimal:
        mb = lprime.separating_bounds(g, ctx.a, subjects, bounds)
        out["minimal_bounds"] = list(mb.as_tuple()) if mb else None
    _emit(out, args)
    return 0


def cmd_counts(args) -> int:
    if args.input is None:
        if args.level is None:
            raise InputError("counts needs --level, or --input with --atom")
        v, e, blue = farey.level_counts(args.level)
        _emit({"level": args.level, "vertices": v, "edges": e, "blue_edges": blue}, args)
        return 0
    g = _load_graph(args.input)
    cat = _catalog(args)
    atoms = []
    for spec in args.atom or []:
        seq, _, anchor = spec.rpartition("@")
        if not anchor:
            raise InputError(f"atoms look like delta@vertex, got {spec!r}")
        atoms.append((_delta(seq, cat), int(anchor)))
    sols = lprime.solutions(g, atoms)
    _emit({"count": len(sols), "solutions": sorted(sols)}, args)
    return 0


def cmd_export(args) -> int:
    data = _load_json(args.input)
    if "colors" in data:
        f = farey.ColoredFarey.from_dict(data)
        _emit(f.to_dict(), args, f.to_dot())
    else:
        g = graph_from_dict(data)
        _emit(graph_to_dict(g), args, to_dot(g))
    return 0


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="farey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, help: str, fmt: bool = False, inp: bool = False) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        if fmt:
            sp.add_argument("--format", choices=("json", "dot"), default="json")
        if inp:
            sp.add_argument("--input", required=True, help="graph JSON file or - for stdin")
        return sp

    sp = verb("build", cmd_build, "build the colored Farey level F_n", fmt=True)
    sp.add_argument("--level", type=int, required=True)

    verb("check-k", cmd_check_k, "membership in K", inp=True)

    sp = verb("peel", cmd_peel, "greedy peel of removable vertices", inp=True)
    sp.add_argument("--protected", default="")
    sp.add_argument("--seed", type=int)

    sp = verb("strong", cmd_strong, "is a vertex subset strong", inp=True)
    sp.add_argument("--subset", required=True)

    sp = verb("amalgamate", cmd_amalgamate, "amalgamate B and C over A", fmt=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--glue", default="", help="B:C vertex pairs for A, e.g. 0:0,1:1")
    sp.add_argument("--free", action="store_true", help="plain free amalgam, no collapse")

    sp = verb("tree-model", cmd_tree_model, "glue Farey levels along a forest", fmt=True)
    sp.add_argument("--spec", required=True)

    sp = verb("generic", cmd_generic, "random strong one-point extensions", fmt=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--weights", type=float, nargs=3, metavar=("ISOLATED", "PENDANT", "APEX"))

    verb("blocks", cmd_blocks, "edge classes and the incidence forest", fmt=True, inp=True)

    sp = verb("acl", cmd_acl, "algebraic closure of a set", inp=True)
    sp.add_argument("--set", required=True)

    sp = verb("gate", cmd_gate, "gate of x into the hull of a set", inp=True)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--set", required=True)

    sp = verb("indep", cmd_indep, "independence of b and c over a", inp=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--c", required=True)

    sp = verb("cycles", cmd_cycles, "catalog of minimal triangulated cycles")
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--out")

    sp = verb("eval", cmd_eval, "evaluate a predicate", inp=True)
    sp.add_argument("--pred", choices=("pc", "pdelta", "d", "y"), required=True)
    sp.add_argument("--type", help="cycle type name for pc")
    sp.add_argument("--delta", help="comma-separated cycle type names")
    sp.add_argument("--d1")
    sp.add_argument("--d2")
    sp.add_argument("--d3")
    sp.add_argument("--level", type=int, default=1)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--y", type=int)
    sp.add_argument("--z", type=int)
    sp.add_argument("--max-vertices", type=int, default=8)

    sp = verb("fingerprint", cmd_fingerprint, "bounded quantifier-free fingerprints", inp=True)
    sp.add_argument("--over", required=True)
    sp.add_argument("--b", required=True, help="comma-separated subject vertices")
    sp.add_argument("--max-cycle", type=int, default=8)
    sp.add_argument("--max-delta", type=int, default=4)
    sp.add_argument("--max-eps", type=int, default=4)
    sp.add_argument("--max-level", type=int, default=2)
    sp.add_argument("--minimal", action="store_true", help="also report minimal separating bounds")
    sp.add_argument("--jobs", type=int, default=1)

    sp = verb("counts", cmd_counts, "closed-form level counts or solution counts")
    sp.add_argument("--level", type=int)
    sp.add_argument("--input")
    sp.add_argument("--atom", action="append", help="delta@anchor, e.g. lozenge@0")
    sp.add_argument("--max-vertices", type=int, default=8)

    verb("export", cmd_export, "re-emit a graph as JSON or DOT", fmt=True, inp=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, FareyError, ValueError, OverflowError) as exc:
        print(f"farey {args.verb}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success (``classify``: coregular), 2 not coregular, 3 parse or
validation error, 4 invalid decomposition.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cycles import quasi_primitive_cycles
from .io import ParseError, parse_decomposition, read_quiver_file, to_dot
from .local import DecompositionError, local_quiver
from .oracle import estimate_iss_dimension
from .quiver import QuiverSetting, chi_setting, strip_zero_vertices
from .reduction import classify, reduce
from .simples import enumerate_decompositions, enumerate_simple_dimvectors, has_simple

SCHEMA = "quivarity/1"

EXIT_OK = 0
EXIT_NOT_COREGULAR = 2
EXIT_PARSE = 3
EXIT_DECOMPOSITION = 4


def _setting_json(s: QuiverSetting) -> dict:
    return {
        "vertices": [{"id": v, "dim": s.alpha[v]} for v in s.vertices],
        "arrows": [{"from": a, "to": b, "count": c} for (a, b), c in sorted(s.quiver.counts.items())],
    }


def _dims_json(beta) -> dict:
    return {v: beta[v] for v in beta}


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True))
    elif not args.quiet:
        print("\n".join(lines))


def _iss_formula(s: QuiverSetting) -> int | None:
    """``1 - chi(alpha, alpha)`` when simples of dimension alpha exist, else None."""
    info = has_simple(s)
    return info.iss_dimension if info.exists else None


def cmd_classify(args) -> int:
    s = read_quiver_file(args.path)
    v = classify(s)
    comps = []
    lines = [f"coregular: {'yes' if v.coregular else 'no'}"]
    for c in v.components:
        term = c.terminal.value if c.terminal else None
        comps.append(
            {
                "vertices": list(c.setting.vertices),
                "terminal": term,
                "polynomial_part": c.trace.polynomial_part,
                "final": _setting_json(c.trace.final),
                "steps": len(c.trace.steps),
            }
        )
        lines.append(
            f"  component {{{', '.join(c.setting.vertices)}}}: terminal {term or 'none'}, "
            f"polynomial part {c.trace.polynomial_part}, reduced to {c.trace.final}"
        )
    iss = _iss_formula(s)
    lines.append(f"polynomial part: {v.polynomial_part}")
    if v.dimension is not None:
        lines.append(f"dimension of quotient: {v.dimension}")
    if iss is not None:
        lines.append(f"1 - chi(alpha, alpha): {iss}")
    _emit(
        args,
        {
            "command": "classify",
            "coregular": v.coregular,
            "components": comps,
            "polynomial_part": v.polynomial_part,
            "dimension": v.dimension,
            "iss_dimension_formula": iss,
        },
        lines,
    )
    return EXIT_OK if v.coregular else EXIT_NOT_COREGULAR


def cmd_reduce(args) -> int:
    s = strip_zero_vertices(read_quiver_file(args.path))
    if args.seed is None:
        tr = reduce(s)
    else:
        tr = reduce(s, "randomized", args.seed)
    lines = []
    if args.trace:
        if tr.steps:
            lines += [f"  {i + 1}. {st.describe()}" for i, st in enumerate(tr.steps)]
        else:
            lines.append("  (no step applies)")
    lines.append(f"final: {tr.final}")
    lines.append(f"polynomial part: {tr.polynomial_part}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(tr.final))
    steps = []
    for st in tr.steps:
        d = {"kind": st.kind, "vertex": st.vertex}
        if st.kind == "RI":
            d["created"] = [{"from": a, "to": b, "count": c} for (a, b), c in st.detail]
        elif st.kind == "RII":
            d["k"] = st.detail
        else:
            d["orientation"], d["k"], d["neighbour"] = st.detail
        steps.append(d)
    _emit(
        args,
        {
            "command": "reduce",
            "strategy": "canonical" if args.seed is None else "randomized",
            "seed": args.seed,
            "steps": steps,
            "polynomial_part": tr.polynomial_part,
            "final": _setting_json(tr.final),
        },
        lines,
    )
    return EXIT_OK


def cmd_simples(args) -> int:
    s = read_quiver_file(args.path)
    info = has_simple(s)
    lines = [
        f"simple representations of dimension alpha: {'yes' if info.exists else 'no'}",
        f"classes: {info.class_count.value}",
    ]
    if info.exists:
        lines.append(f"dimension of quotient: {info.iss_dimension}")
    payload = {
        "command": "simples",
        "exists": info.exists,
        "class_count": info.class_count.value,
        "iss_dimension": info.iss_dimension,
    }
    if args.cap:
        found = enumerate_simple_dimvectors(s.quiver, args.cap)
        payload["simple_dimension_vectors"] = [_dims_json(b) for b in found]
        lines.append(f"simple dimension vectors with entries <= {args.cap}: {len(found)}")
        lines += [f"  ({','.join(map(str, b.values_tuple()))})" for b in found]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_local(args) -> int:
    s = strip_zero_vertices(read_quiver_file(args.path))
    if args.decomposition:
        try:
            d = parse_decomposition(args.decomposition, s)
            decs, truncated = [d], False
            locs = [local_quiver(s, d)]
        except (ValueError, DecompositionError) as e:
            print(f"invalid decomposition: {e}", file=sys.stderr)
            return EXIT_DECOMPOSITION
    else:
        found = enumerate_decompositions(s, args.limit)
        decs, truncated = list(found), found.truncated
        locs = [local_quiver(s, d, validate=False) for d in decs]
    entries = []
    lines = [f"decompositions: {len(decs)}" + (" (truncated)" if truncated else "")]
    for d, lq in zip(decs, locs):
        v = classify(lq.setting)
        entries.append(
            {
                "decomposition": [{"beta": _dims_json(b), "multiplicity": a} for b, a in d.factors],
                "local_quiver": _setting_json(lq.setting),
                "coregular": v.coregular,
            }
        )
        lines.append(f"  {d}  ->  {lq.setting}  coregular: {'yes' if v.coregular else 'no'}")
    _emit(args, {"command": "local", "truncated": truncated, "decompositions": entries}, lines)
    return EXIT_OK


def cmd_cycles(args) -> int:
    s = read_quiver_file(args.path)
    max_len = args.max_len if args.max_len is not None else s.alpha.size ** 2
    cycles = quasi_primitive_cycles(s, max_len)
    lines = [f"quasi-primitive cycles of length <= {max_len}: {len(cycles)}"]
    if args.list:
        lines += [f"  {c.label(s.quiver)}" for c in cycles]
    _emit(
        args,
        {
            "command": "cycles",
            "max_len": max_len,
            "count": len(cycles),
            "cycles": [[{"index": a, "from": s.arrows[a][0], "to": s.arrows[a][1]} for a in c.arrows] for c in cycles],
        },
        lines,
    )
    return EXIT_OK


def cmd_dim(args) -> int:
    s = read_quiver_file(args.path)
    g = strip_zero_vertices(s)
    val = 1 - chi_setting(g, g.alpha, g.alpha)
    info = has_simple(s)
    if args.json:
        _emit(args, {"command": "dim", "one_minus_chi": val, "simples_exist": info.exists}, [])
    else:
        print(val)
    return EXIT_OK


def cmd_oracle(args) -> int:
    s = read_quiver_file(args.path)
    rank = estimate_iss_dimension(s, args.samples, args.tol, args.seed, args.max_len)
    iss = _iss_formula(s)
    lines = [f"numerical dimension estimate: {rank}"]
    if iss is not None:
        lines.append(f"1 - chi(alpha, alpha): {iss} ({'agrees' if iss == rank else 'DISAGREES'})")
    _emit(
        args,
        {"command": "oracle", "rank": rank, "iss_dimension_formula": iss, "samples": args.samples, "tol": args.tol},
        lines,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quivarity", description="Coregularity of quiver settings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("path", help="quiver file (YAML or JSON)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--quiet", action="store_true", help="no prose output")
        sp.set_defaults(func=func)
        return sp

    add("classify", cmd_classify, "decide coregularity")
    sp = add("reduce", cmd_reduce, "apply reduction steps")
    sp.add_argument("--trace", action="store_true", help="list every step")
    sp.add_argument("--seed", type=int, default=None, help="randomized strategy with this seed")
    sp.add_argument("--dot", metavar="FILE", help="write the reduced setting as DOT")
    sp = add("simples", cmd_simples, "existence of simple representations")
    sp.add_argument("--cap", type=int, default=0, help="also list simple dimension vectors with entries <= CAP")
    sp = add("local", cmd_local, "local quiver settings")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--decomposition", help='e.g. "2x(1,0) + 1x(0,1)" (entries in sorted vertex order)')
    g.add_argument("--enumerate", action="store_true", help="enumerate decompositions")
    sp.add_argument("--limit", type=int, default=10_000)
    sp = add("cycles", cmd_cycles, "quasi-primitive cycles")
    sp.add_argument("--max-len", type=int, default=None, help="length bound (default |alpha|^2)")
    sp.add_argument("--list", action="store_true", help="print every cycle")
    add("dim", cmd_dim, "print 1 - chi(alpha, alpha)")
    sp = add("oracle", cmd_oracle, "numerical dimension estimate")
    sp.add_argument("--samples", type=int, default=8)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-len", type=int, default=None)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

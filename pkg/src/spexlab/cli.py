"""Command line front end.

One subcommand per operation group: construct, trees, spectral, classify,
contains, membership, embed-lemma, spex, ex, audit, enumerate. Parsing and
planning never compute anything; execution buffers its entire output and
emits it only on success, so failed invocations never print partial results.

Exit codes: 0 success, 2 usage or input error, 3 convergence failure.
Numeric output uses 12 significant digits and repeated invocations are
byte-identical. Output format defaults: graph-emitting subcommands print
graph6 lines; report subcommands print a table on a terminal and JSON when
piped; --format (alias --out) forces one.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

from . import graph6
from .errors import (
    ConvergenceError,
    ParameterError,
    SpexlabError,
    UsageError,
)
from .graphs import Graph, construct, family_parameters
from .search import MAX_N, ex_search, spex_search, enumerate_graphs
from .spectral import (
    audit_extremal_lemmas,
    classify_vertices,
    constants_with,
    default_constants,
    spectral_radius,
)
from .trees import MAX_VERTICES, bipartition, generate_trees, tree_from_graph
from .embed import constructive_with_case, contains_tree, family_membership

__all__ = ["CommandPlan", "parse_and_plan", "execute", "main", "dump_json"]

SUBCOMMANDS = (
    "construct", "trees", "spectral", "classify", "contains", "membership",
    "embed-lemma", "spex", "ex", "audit", "enumerate",
)


def fmt_num(x) -> str:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}") if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 12 significant digits."""
    return json.dumps(_round_floats(obj), sort_keys=True, indent=2) + "\n"


@dataclass
class CommandPlan:
    """A validated subcommand invocation: what to run, on what, output how."""

    command: str
    params: dict = field(default_factory=dict)
    fmt: str | None = None
    out_path: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="spexlab", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command")

    def fmt_arg(p, choices):
        p.add_argument("--format", "--out", dest="fmt", choices=choices, default=None)
        p.add_argument("--output", dest="out_path", default=None, metavar="PATH")

    def graph_args(p, with_k=True, with_t=True):
        p.add_argument("--graph", help="graph6 text, a file of graph6, or - for stdin")
        p.add_argument("--family", choices=("S", "S_plus", "K", "K_plus", "K_path", "K_matching", "path", "clique", "cycle"))
        p.add_argument("--n", type=int)
        if with_k:
            p.add_argument("--k", type=int)
        p.add_argument("--a", type=int)
        p.add_argument("--b", type=int)
        if with_t:
            p.add_argument("--t", type=int)

    def constants_args(p):
        p.add_argument("--eta", type=float)
        p.add_argument("--epsilon", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--no-chain-check", action="store_true",
                       help="accept constant overrides that violate the recommended chain")

    p = sub.add_parser("construct", description="emit a named construction")
    graph_args(p)
    fmt_arg(p, ("g6", "json"))

    p = sub.add_parser("trees", description="all non-isomorphic trees on t vertices")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--count", action="store_true")
    fmt_arg(p, ("g6", "json"))

    p = sub.add_parser("spectral", description="spectral radius and Perron vector")
    graph_args(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iterations", type=int, default=10**6)
    p.add_argument("--with-vector", action="store_true")
    fmt_arg(p, ("json", "table"))

    p = sub.add_parser("classify", description="weight classes of the Perron vector")
    graph_args(p, with_k=False)
    p.add_argument("--k", type=int, required=True,
                   help="weight-class parameter; doubles as the family k for --family")
    constants_args(p)
    p.add_argument("--tol", type=float, default=1e-12)
    fmt_arg(p, ("json", "table"))

    p = sub.add_parser("contains", description="decide tree containment")
    graph_args(p)
    p.add_argument("--tree", required=True, help="graph6 of the tree (or file / -)")
    fmt_arg(p, ("json", "table"))

    p = sub.add_parser("membership", description="does the graph miss a tree of the family")
    graph_args(p, with_t=False)
    p.add_argument("--t", type=int, required=True, help="tree order of the family")
    fmt_arg(p, ("json", "table"))

    p = sub.add_parser("embed-lemma", description="constructive embedding into a bipartite host")
    p.add_argument("--tree", required=True)
    p.add_argument("--target", required=True, choices=("K", "K_plus", "K_path", "K_matching"))
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    fmt_arg(p, ("json", "table"))

    p = sub.add_parser("spex", description="brute-force spectral Turan search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prime", action="store_true")
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--ground-truth", action="store_true", help="disable all pruning")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--split-depth", type=int, default=2)
    fmt_arg(p, ("json", "table", "csv", "g6"))

    p = sub.add_parser("ex", description="brute-force edge Turan search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--ground-truth", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--split-depth", type=int, default=2)
    fmt_arg(p, ("json", "table", "csv", "g6"))

    p = sub.add_parser("audit", description="recompute the structural inequalities")
    graph_args(p, with_k=False)
    p.add_argument("--k", type=int, required=True,
                   help="class parameter; doubles as the family k for --family")
    constants_args(p)
    p.add_argument("--tol", type=float, default=1e-12)
    fmt_arg(p, ("jsonl", "table"))

    p = sub.add_parser("enumerate", description="one graph per isomorphism class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--count", action="store_true")
    fmt_arg(p, ("g6", "json"))

    return parser


def parse_and_plan(argv: list[str]) -> CommandPlan:
    """Validate argv into a plan without computing or touching files."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError:
        raise
    except argparse.ArgumentError as exc:
        raise UsageError(str(exc))
    if ns.command is None:
        raise UsageError(f"a subcommand is required: one of {', '.join(SUBCOMMANDS)}")
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "fmt", "out_path")}
    plan = CommandPlan(ns.command, params, ns.fmt, getattr(ns, "out_path", None))
    _validate_plan(plan)
    return plan


def _validate_plan(plan: CommandPlan) -> None:
    p = plan.params
    if plan.command in ("construct", "spectral", "classify", "contains", "membership", "audit"):
        has_graph = p.get("graph") is not None
        has_family = p.get("family") is not None
        if plan.command == "construct":
            if not has_family:
                raise UsageError("construct needs --family with its parameters")
        elif has_graph == has_family:
            raise UsageError("give exactly one graph input: --graph, or --family with parameters")
    if plan.command == "trees" and not 1 <= p["t"] <= MAX_VERTICES:
        raise UsageError(f"--t must be in 1..{MAX_VERTICES}")
    if plan.command == "membership" and not 1 <= p["t"] <= MAX_VERTICES:
        raise UsageError(f"--t must be in 1..{MAX_VERTICES}")
    if plan.command == "enumerate" and not 1 <= p["n"] <= MAX_N:
        raise UsageError(f"--n must be in 1..{MAX_N}")
    if plan.command == "spex":
        n, k = p["n"], p["k"]
        least = 2 * k + 3 if p["prime"] else 2 * k + 2
        if k < 2:
            raise UsageError("spex needs k >= 2")
        if n < least:
            raise UsageError(f"spex needs n >= {least} for k={k}" + (" with --prime" if p["prime"] else ""))
        if n > MAX_N:
            raise UsageError(f"spex supports n <= {MAX_N}")
    if plan.command == "ex" and not 2 <= p["n"] <= MAX_N:
        raise UsageError(f"ex needs 2 <= n <= {MAX_N}")
    if plan.command in ("classify", "audit") and p["k"] < 2:
        raise UsageError("--k must be at least 2")


def _read_graph_arg(value: str) -> Graph:
    if value == "-":
        text = sys.stdin.read()
    elif os.path.isfile(value):
        with open(value, "r", encoding="ascii") as fh:
            text = fh.read()
    else:
        text = value
    for line in text.splitlines() or [text]:
        line = line.strip()
        if line:
            return graph6.decode(line)
    raise ParameterError("no graph6 data found in input")


def _resolve_graph(params: dict) -> Graph:
    if params.get("graph") is not None:
        return _read_graph_arg(params["graph"])
    family = params["family"]
    wanted = {name: params.get(name) for name in family_parameters(family)}
    return construct(family, **wanted)


def _resolve_constants(params: dict):
    k = params["k"]
    overrides = {key: params.get(key) for key in ("eta", "epsilon", "alpha")}
    if all(v is None for v in overrides.values()):
        return default_constants(k)
    c = constants_with(k, **overrides)
    if not c.satisfies_chain and not params.get("no_chain_check"):
        raise UsageError(
            "constant overrides violate the recommended chain; pass --no-chain-check to proceed"
        )
    return c


def _default_fmt(plan: CommandPlan) -> str:
    if plan.fmt:
        return plan.fmt
    if plan.command in ("construct", "trees", "enumerate"):
        return "g6"
    if plan.command == "audit":
        return "table" if sys.stdout.isatty() else "jsonl"
    return "table" if sys.stdout.isatty() else "json"


def _table(payload: dict, indent: str = "") -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_table(value, indent + "  "))
        elif isinstance(value, (list, tuple)):
            shown = " ".join(fmt_num(v) for v in value) if all(
                not isinstance(v, (dict, list, tuple)) for v in value
            ) else json.dumps(_round_floats(value))
            lines.append(f"{indent}{key}: {shown}")
        else:
            lines.append(f"{indent}{key}: {fmt_num(value)}")
    return "\n".join(lines)


def _emit(payload: dict, fmt: str, subcommand: str) -> str:
    if fmt == "json":
        return dump_json(payload)
    return _table(payload) + "\n"


def execute(plan: CommandPlan, out=None) -> int:
    """Run a plan; prints nothing until the computation fully succeeded."""
    fmt = _default_fmt(plan)
    text = _EXECUTORS[plan.command](plan, fmt)
    if plan.out_path:
        with open(plan.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (out or sys.stdout).write(text)
    return 0


def _exec_construct(plan: CommandPlan, fmt: str) -> str:
    g = _resolve_graph(plan.params)
    if fmt == "g6":
        return graph6.encode(g) + "\n"
    payload = {
        "family": plan.params["family"] or "graph6",
        "graph6": graph6.encode(g),
        "n": g.n,
        "edges": g.edge_count,
        "degrees": list(g.degrees()),
    }
    return dump_json(payload)


def _exec_trees(plan: CommandPlan, fmt: str) -> str:
    fam = generate_trees(plan.params["t"])
    if plan.params["count"]:
        return f"{len(fam)}\n"
    if fmt == "g6":
        return graph6.write_lines(t.graph for t in fam)
    payload = {
        "t": fam.t,
        "count": len(fam),
        "graphs": [graph6.encode(t.graph) for t in fam],
        "bipartitions": [list(bipartition(t)) for t in fam],
    }
    return dump_json(payload)


def _exec_spectral(plan: CommandPlan, fmt: str) -> str:
    g = _resolve_graph(plan.params)
    p = spectral_radius(g, tol=plan.params["tol"], max_iterations=plan.params["max_iterations"])
    payload = {
        "n": g.n,
        "radius": p.radius,
        "residual": p.residual,
        "z": p.z,
        "vector": list(p.vector) if plan.params["with_vector"] else None,
    }
    return _emit(payload, fmt, "spectral")


def _exec_classify(plan: CommandPlan, fmt: str) -> str:
    g = _resolve_graph(plan.params)
    c = _resolve_constants(plan.params)
    p = spectral_radius(g, tol=plan.params["tol"])
    part = classify_vertices(g, p, c)
    payload = {
        "constants": {
            "k": c.k, "eta": c.eta, "epsilon": c.epsilon,
            "alpha": c.alpha, "delta": c.delta, "satisfies_chain": c.satisfies_chain,
        },
        "sizes": {
            "large": len(part.large), "small": len(part.small), "mid": len(part.mid),
            "top": len(part.top), "common": len(part.common),
            "exceptional": len(part.exceptional),
        },
        "large": list(part.large),
        "small": list(part.small),
        "mid": list(part.mid),
        "top": list(part.top),
        "common": list(part.common),
        "exceptional": list(part.exceptional),
    }
    return _emit(payload, fmt, "classify")


def _read_tree_arg(value: str):
    return tree_from_graph(_read_graph_arg(value))


def _exec_contains(plan: CommandPlan, fmt: str) -> str:
    g = _resolve_graph(plan.params)
    tree = _read_tree_arg(plan.params["tree"])
    emb = contains_tree(g, tree)
    payload = {
        "contained": emb is not None,
        "embedding": list(emb.mapping) if emb else None,
    }
    return _emit(payload, fmt, "contains")


def _exec_membership(plan: CommandPlan, fmt: str) -> str:
    g = _resolve_graph(plan.params)
    fam = generate_trees(plan.params["t"])
    m = family_membership(g, fam)
    payload = {
        "t": fam.t,
        "family_size": len(fam),
        "in_family": m.in_family,
        "witness_index": m.witness_index,
        "witness_graph6": graph6.encode(m.witness.graph) if m.witness else None,
    }
    return _emit(payload, fmt, "membership")


def _exec_embed_lemma(plan: CommandPlan, fmt: str) -> str:
    tree = _read_tree_arg(plan.params["tree"])
    emb, case = constructive_with_case(
        tree, plan.params["target"], plan.params["a"], plan.params["b"]
    )
    payload = {
        "target": plan.params["target"],
        "a": plan.params["a"],
        "b": plan.params["b"],
        "case": case,
        "embedding": list(emb.mapping),
    }
    return _emit(payload, fmt, "embed-lemma")


def _report_text(report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return "n,k,best_value,closed_form,isomorphic_to_reference\n" + report.csv_row() + "\n"
    if fmt == "g6":
        return "".join(s + "\n" for s in report.argmax)
    return _table(_round_floats(report.to_dict())) + "\n"


def _exec_spex(plan: CommandPlan, fmt: str) -> str:
    p = plan.params
    report = spex_search(
        p["n"], p["k"], p["prime"],
        connected_only=p["connected_only"],
        prune=not p["ground_truth"],
        workers=p["workers"],
        split_depth=p["split_depth"],
    )
    return _report_text(report, fmt)


def _exec_ex(plan: CommandPlan, fmt: str) -> str:
    p = plan.params
    tree = _read_tree_arg(p["tree"])
    report = ex_search(
        p["n"], tree,
        prune=not p["ground_truth"],
        workers=p["workers"],
        split_depth=p["split_depth"],
    )
    return _report_text(report, fmt)


def _exec_audit(plan: CommandPlan, fmt: str) -> str:
    g = _resolve_graph(plan.params)
    c = _resolve_constants(plan.params)
    k = plan.params["k"]
    p = spectral_radius(g, tol=plan.params["tol"])
    report = audit_extremal_lemmas(g, k, c, p, tol=plan.params["tol"])
    if fmt == "jsonl":
        return "".join(
            json.dumps(_round_floats(e), sort_keys=True) + "\n" for e in report.to_dicts()
        )
    width = max(len(e.lemma) for e in report.entries)
    lines = [
        f"{e.lemma:<{width}}  {'pass' if e.passed else 'FAIL'}  "
        f"margin={'-' if e.margin is None else fmt_num(e.margin)}  {e.inequality}"
        for e in report.entries
    ]
    return "\n".join(lines) + "\n"


def _exec_enumerate(plan: CommandPlan, fmt: str) -> str:
    p = plan.params
    stream = enumerate_graphs(p["n"], p["connected_only"])
    if p["count"]:
        return f"{sum(1 for _ in stream)}\n"
    codes = [graph6.encode(g) for g in stream]
    if fmt == "g6":
        return "".join(s + "\n" for s in codes)
    payload = {
        "n": p["n"],
        "connected_only": p["connected_only"],
        "count": len(codes),
        "graphs": codes,
    }
    return dump_json(payload)


_EXECUTORS = {
    "construct": _exec_construct,
    "trees": _exec_trees,
    "spectral": _exec_spectral,
    "classify": _exec_classify,
    "contains": _exec_contains,
    "membership": _exec_membership,
    "embed-lemma": _exec_embed_lemma,
    "spex": _exec_spex,
    "ex": _exec_ex,
    "audit": _exec_audit,
    "enumerate": _exec_enumerate,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        plan = parse_and_plan(argv)
        return execute(plan)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3
    except SpexlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

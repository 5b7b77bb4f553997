"""Command-line front door: parse graphs and triples, run the computations
and verification suites, emit JSON/CSV/human output.

Exit codes: 0 on success with all checks passed, 1 when a verification ran
and failed, 2 on usage, parse, or budget errors.  All output is deterministic
for a fixed invocation, including under --jobs parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .budgets import BudgetError, Budgets
from .fields import Field, FieldError
from .graphs import (
    GraphError,
    SimplicialGraph,
    cheeger_graph_exact,
    cycle,
    complete,
    edgeless,
    labeled_graphs,
    margulis_like,
    path,
    random_regular,
    star,
)
from .linalg import LinalgError
from .pairing import (
    PairingError,
    PairingTriple,
    augment_triple,
    cheeger_constant_coordinate,
    cheeger_constant_exhaustive,
    is_pairing_connected_exhaustive,
    q_valence_coordinate,
    q_valence_exhaustive,
)
from .family import (
    field_invariance_check,
    graph_family_report,
    triple_family_report,
    verify_augmentation,
    verify_main_theorem,
)
from .raag import RaagTriple, build_triple

_USAGE_ERRORS = (GraphError, FieldError, PairingError, LinalgError, BudgetError)


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    field: Field
    budgets: Budgets
    seed: int
    output_format: str
    jobs: int


def _config(args: argparse.Namespace) -> RunConfig:
    budgets = Budgets(
        subset_vertices=args.budget_subsets if args.budget_subsets is not None else 24,
        subspace_dim=args.budget_subspaces,
        basis_dim=args.budget_bases,
    )
    return RunConfig(
        command=args.command,
        inputs=tuple(getattr(args, "input", None) or ()),
        field=Field.from_name(args.field),
        budgets=budgets,
        seed=args.seed,
        output_format=getattr(args, "format", "json"),
        jobs=args.jobs,
    )


# -- I/O helpers ---------------------------------------------------------------


def _one_input(cfg: RunConfig) -> str:
    if len(cfg.inputs) != 1:
        raise GraphError(f"command {cfg.command!r} needs exactly one --input file")
    return cfg.inputs[0]


def _load_graph(path_str: str) -> SimplicialGraph:
    text = Path(path_str).read_text()
    if text.lstrip().startswith("{"):
        return SimplicialGraph.from_json_dict(json.loads(text))
    return SimplicialGraph.from_edgelist(text)


def _load_triple(path_str: str):
    data = json.loads(Path(path_str).read_text())
    if "source_graph" in data:
        return RaagTriple.from_json_dict(data)
    return PairingTriple.from_json_dict(data)


def _human_lines(payload, indent: str = "") -> list[str]:
    lines: list[str] = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.extend(_human_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_human_scalar(v)}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                lines.extend(_human_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}- {_human_scalar(v)}")
    else:
        lines.append(f"{indent}{_human_scalar(payload)}")
    return lines


def _human_scalar(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f} (bound)"
    return str(v)


def _emit(cfg: RunConfig, payload: dict, csv_text: str | None = None) -> None:
    if cfg.output_format == "csv":
        if csv_text is None:
            raise GraphError(f"command {cfg.command!r} has no CSV form")
        sys.stdout.write(csv_text)
    elif cfg.output_format == "human":
        print("\n".join(_human_lines(payload)))
    else:
        print(json.dumps(payload, indent=2))


def _family_graphs(args: argparse.Namespace, cfg: RunConfig) -> list[SimplicialGraph]:
    makers = {
        "cycle": cycle,
        "path": path,
        "complete": complete,
        "star": star,
        "edgeless": edgeless,
        "margulis": margulis_like,
    }
    out = []
    for pos, size in enumerate(args.sizes):
        if args.family == "random-regular":
            if args.degree is None:
                raise GraphError("--family random-regular needs --degree")
            out.append(random_regular(size, args.degree, cfg.seed + pos))
        else:
            out.append(makers[args.family](size))
    return out


def _resolve_graphs(args: argparse.Namespace, cfg: RunConfig) -> list[SimplicialGraph]:
    sources = sum(
        1 for flag in (cfg.inputs, getattr(args, "all_graphs", None), getattr(args, "family", None))
        if flag
    )
    if sources != 1:
        raise GraphError("give exactly one of --input, --all-graphs, or --family/--sizes")
    if cfg.inputs:
        return [_load_graph(p) for p in cfg.inputs]
    if getattr(args, "all_graphs", None):
        return list(labeled_graphs(args.all_graphs))
    return _family_graphs(args, cfg)


# -- command handlers ----------------------------------------------------------


def _cmd_gen(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.family == "random-regular":
        if args.degree is None:
            raise GraphError("--family random-regular needs --degree")
        graph = random_regular(args.size, args.degree, cfg.seed)
    else:
        makers = {
            "cycle": cycle, "path": path, "complete": complete,
            "star": star, "edgeless": edgeless, "margulis": margulis_like,
        }
        graph = makers[args.family](args.size)
    if args.format == "edgelist":
        sys.stdout.write(graph.to_edgelist())
    else:
        print(json.dumps(graph.to_json_dict(), indent=2))
    return 0


def _cmd_graph_h(args: argparse.Namespace) -> int:
    cfg = _config(args)
    graph = _load_graph(_one_input(cfg))
    res = cheeger_graph_exact(graph, cfg.budgets)
    _emit(cfg, {"h": str(res.value), "minimizer": list(res.minimizer)})
    return 0


def _cmd_triple_h(args: argparse.Namespace) -> int:
    cfg = _config(args)
    triple = _load_triple(_one_input(cfg))
    if args.method == "coordinate":
        report = cheeger_constant_coordinate(triple, cfg.budgets)
    else:
        report = cheeger_constant_exhaustive(triple, cfg.budgets)
    _emit(cfg, report.to_json_dict())
    return 0


def _cmd_qvalence(args: argparse.Namespace) -> int:
    cfg = _config(args)
    triple = _load_triple(_one_input(cfg))
    if args.method == "coordinate":
        value, method = q_valence_coordinate(triple), "coordinate"
    else:
        value, method = q_valence_exhaustive(triple, cfg.budgets), "exhaustive"
    _emit(cfg, {"q_valence": value, "method": method})
    return 0


def _cmd_connectedness(args: argparse.Namespace) -> int:
    cfg = _config(args)
    triple = _load_triple(_one_input(cfg))
    _emit(cfg, {"pairing_connected": is_pairing_connected_exhaustive(triple, cfg.budgets)})
    return 0


def _cmd_build_triple(args: argparse.Namespace) -> int:
    cfg = _config(args)
    graph = _load_graph(_one_input(cfg))
    _emit(cfg, build_triple(graph, cfg.field).to_json_dict())
    return 0


def _cmd_augment(args: argparse.Namespace) -> int:
    cfg = _config(args)
    triple = _load_triple(_one_input(cfg))
    _emit(cfg, augment_triple(triple, args.pivot).to_json_dict())
    return 0


def _cmd_verify_theorem(args: argparse.Namespace) -> int:
    cfg = _config(args)
    graphs = _resolve_graphs(args, cfg)
    record = verify_main_theorem(graphs, cfg.field, cfg.budgets, jobs=cfg.jobs)
    _emit(cfg, record.to_json_dict(verbose=args.verbose), record.to_csv())
    return 0 if record.passed else 1


def _cmd_verify_augmentation(args: argparse.Namespace) -> int:
    cfg = _config(args)
    graphs = _resolve_graphs(args, cfg)
    record = verify_augmentation(graphs, cfg.field, args.pivot, cfg.budgets, jobs=cfg.jobs)
    _emit(cfg, record.to_json_dict(verbose=args.verbose), record.to_csv())
    return 0 if record.passed else 1


def _cmd_verify_invariance(args: argparse.Namespace) -> int:
    cfg = _config(args)
    graphs = _resolve_graphs(args, cfg)
    fields = [Field.from_name(name) for name in args.fields]
    record = field_invariance_check(graphs, fields, cfg.budgets, jobs=cfg.jobs)
    _emit(cfg, record.to_json_dict(verbose=args.verbose), record.to_csv())
    return 0 if record.passed else 1


def _cmd_family_report(args: argparse.Namespace) -> int:
    cfg = _config(args)
    graphs = _resolve_graphs(args, cfg)
    if args.kind == "triple":
        triples = [build_triple(g, cfg.field) for g in graphs]
        report = triple_family_report(triples, cfg.budgets, args.valence_bound, jobs=cfg.jobs)
    else:
        report = graph_family_report(graphs, args.mode, cfg.budgets, args.valence_bound, jobs=cfg.jobs)
    _emit(cfg, report.to_json_dict(), report.to_csv())
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raagcheeger",
        description="Exact Cheeger constants for graphs and cup-product pairing triples, "
                    "with brute-force verification of the dictionary between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt=("json", "human"), inputs: int | None = 1):
        if inputs == 1:
            p.add_argument("--input", nargs=1, help="input file")
        elif inputs == -1:
            p.add_argument("--input", nargs="+", help="input files")
        p.add_argument("--field", default="gf2", help="gf<p> or rational (default gf2)")
        p.add_argument("--budget-subsets", type=int, default=None, metavar="N")
        p.add_argument("--budget-subspaces", type=int, default=None, metavar="N")
        p.add_argument("--budget-bases", type=int, default=None, metavar="N")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=fmt, default="json")
        p.add_argument("--jobs", type=int, default=1)

    def family_source(p: argparse.ArgumentParser, all_graphs: bool = True):
        if all_graphs:
            p.add_argument("--all-graphs", type=int, metavar="N",
                           help="every labeled graph on N vertices")
        p.add_argument("--family",
                       choices=["cycle", "path", "complete", "star", "edgeless",
                                "random-regular", "margulis"])
        p.add_argument("--sizes", type=int, nargs="+", default=[])
        p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("gen", help="generate a graph from a named family")
    common(p, fmt=("json", "edgelist"), inputs=None)
    p.add_argument("--family", required=True,
                   choices=["cycle", "path", "complete", "star", "edgeless",
                            "random-regular", "margulis"])
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("graph-h", help="exact graph Cheeger constant")
    common(p)
    p.set_defaults(handler=_cmd_graph_h)

    p = sub.add_parser("triple-h", help="Cheeger constant of a pairing triple")
    common(p)
    p.add_argument("--method", choices=["exhaustive", "coordinate"], default="exhaustive")
    p.set_defaults(handler=_cmd_triple_h)

    p = sub.add_parser("qvalence", help="q-valence of a pairing triple")
    common(p)
    p.add_argument("--method", choices=["exhaustive", "coordinate"], default="exhaustive")
    p.set_defaults(handler=_cmd_qvalence)

    p = sub.add_parser("connectedness", help="pairing-connectedness of a triple")
    common(p)
    p.set_defaults(handler=_cmd_connectedness)

    p = sub.add_parser("build-triple", help="cup-product triple of a graph")
    common(p)
    p.set_defaults(handler=_cmd_build_triple)

    p = sub.add_parser("augment", help="pivot augmentation of a triple")
    common(p)
    p.add_argument("--pivot", type=int, default=0)
    p.set_defaults(handler=_cmd_augment)

    p = sub.add_parser("verify-theorem", help="machine-check the dictionary on graphs")
    common(p, fmt=("json", "csv", "human"), inputs=-1)
    family_source(p)
    p.add_argument("--verbose", action="store_true", help="list every item, not just failures")
    p.set_defaults(handler=_cmd_verify_theorem)

    p = sub.add_parser("verify-augmentation", help="check the pivot augmentation on graphs")
    common(p, fmt=("json", "csv", "human"), inputs=-1)
    family_source(p, all_graphs=False)
    p.add_argument("--pivot", type=int, default=0)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(handler=_cmd_verify_augmentation)

    p = sub.add_parser("verify-invariance", help="check field independence on graphs")
    common(p, fmt=("json", "csv", "human"), inputs=-1)
    family_source(p)
    p.add_argument("--fields", nargs="+", default=["gf2", "gf3", "gf5"])
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(handler=_cmd_verify_invariance)

    p = sub.add_parser("family-report", help="per-index expander bookkeeping")
    common(p, fmt=("json", "csv", "human"), inputs=-1)
    family_source(p, all_graphs=False)
    p.add_argument("--kind", choices=["graph", "triple"], default="graph")
    p.add_argument("--mode", choices=["exact", "spectral"], default="exact")
    p.add_argument("--valence-bound", type=int, default=None)
    p.set_defaults(handler=_cmd_family_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _USAGE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as err:
        print(f"error: cannot read input ({err})", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: centrality, simulate, optimize and compare."""

from __future__ import annotations

import argparse
import io
import json
import os
import secrets
import sys
import tempfile
from itertools import combinations
from pathlib import Path

from .centrality import (
    CentralityKind,
    betweenness_centrality,
    build_ranking,
    correlation_r2,
    degree_centrality,
    eigenvector_centrality,
    reduced_pool,
    write_scores_csv,
)
from .epidemic import SirParams, run_outbreak, write_trace_csv
from .ga import GaConfig, evolve, write_history_csv
from .graph import EdgeListError, load_edge_list
from .rng import generator, subsequence
from .strategies import Strategy, compare_strategies, evaluate_protection

_DEFAULTS = {
    "beta": 0.3,
    "gamma": 0.3,
    "k": 10,
    "l": 100,
    "m": 100,
    "runs": 500,
    "pop": 100,
    "gens": 100,
    "tour": 4,
    "elites": 10,
    "format": "json",
}

_CONFIG_KEYS = {
    "input", "out", "format", "beta", "gamma", "k", "l", "m", "runs",
    "pop", "gens", "tour", "elites", "seed", "threads",
}

_FLOAT_KEYS = {"beta", "gamma"}
_INT_KEYS = {"k", "l", "m", "runs", "pop", "gens", "tour", "elites",
             "seed", "threads"}


class CliError(RuntimeError):
    pass


def sig12(x: float) -> float:
    """Round to 12 significant digits for stable cross-run output."""
    return float(f"{float(x):.12g}")


def _round_tree(obj):
    if isinstance(obj, float):
        return sig12(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def atomic_write(path: Path, text: str) -> None:
    """Write via a temp file plus rename so failures leave no partial output."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _add_common_flags(parser):
    parser.add_argument("--input", help="edge-list file path")
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--beta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--k", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--runs", type=int)
    parser.add_argument("--pop", type=int)
    parser.add_argument("--gens", type=int)
    parser.add_argument("--tour", type=int)
    parser.add_argument("--elites", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int)
    parser.add_argument("--out", help="output file path")
    parser.add_argument("--format", choices=("json", "csv"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outbreak-opt",
        description="Search and benchmark immunization node sets against "
        "SIR outbreaks on contact networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("centrality", "per-node centrality scores and pairwise R-squared"),
        ("simulate", "SIR outbreak runs with no protection"),
        ("optimize", "genetic-algorithm immunization search"),
        ("compare", "benchmark all five protection strategies"),
    ):
        cmd = sub.add_parser(name, help=doc)
        _add_common_flags(cmd)
        if name == "simulate":
            cmd.add_argument("--trace", help="write one outbreak's t,S,I,R trace CSV")
    return parser


def _parse_config_file(path: str) -> dict:
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise CliError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _FLOAT_KEYS:
            values[key] = float(value)
        elif key in _INT_KEYS:
            values[key] = int(value)
        else:
            values[key] = value
    return values


def _resolve(args) -> dict:
    """Flags override config-file values, which override built-in defaults."""
    cfg = _parse_config_file(args.config) if args.config else {}
    values = {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
        elif key in cfg:
            values[key] = cfg[key]
        elif key in _DEFAULTS:
            values[key] = _DEFAULTS[key]
        else:
            values[key] = None
    if values["seed"] is None:
        values["seed"] = secrets.randbits(63)
        print(f"seed: {values['seed']}")
    if values["threads"] is None:
        env = os.environ.get("OUTBREAK_OPT_THREADS")
        values["threads"] = int(env) if env else (os.cpu_count() or 1)
    return values


def _load_graph(values):
    path = values["input"]
    if not path:
        raise CliError("missing --input edge-list path")
    try:
        with open(path, "rb") as handle:
            loaded = load_edge_list(handle)
    except FileNotFoundError as exc:
        raise CliError(f"input file not found: {path}") from exc
    except EdgeListError as exc:
        raise CliError(f"{path}: {exc}") from exc
    g = loaded.graph
    print(
        f"loaded {path}: {g.n} nodes, {g.edge_count} edges "
        f"({loaded.duplicates_collapsed} duplicate lines collapsed)"
    )
    return g


def _require_out(values) -> Path:
    if not values["out"]:
        raise CliError("missing --out output path")
    return Path(values["out"])


def cmd_centrality(values) -> int:
    g = _load_graph(values)
    out = _require_out(values)
    scores = {
        CentralityKind.DEGREE: degree_centrality(g),
        CentralityKind.BETWEENNESS: betweenness_centrality(g),
        CentralityKind.EIGENVECTOR: eigenvector_centrality(g),
    }
    r_squared = {}
    for kind_a, kind_b in combinations(scores, 2):
        key = f"{kind_a.value}_{kind_b.value}"
        try:
            r_squared[key] = sig12(correlation_r2(scores[kind_a], scores[kind_b]))
        except ValueError:
            r_squared[key] = None
    for key, value in r_squared.items():
        shown = "nan" if value is None else f"{value:.12g}"
        print(f"r2,{key},{shown}")
    if values["format"] == "json":
        payload = {
            "nodes": [
                {
                    "label": g.labels[v],
                    "degree": sig12(scores[CentralityKind.DEGREE][v]),
                    "betweenness": sig12(scores[CentralityKind.BETWEENNESS][v]),
                    "eigenvector": sig12(scores[CentralityKind.EIGENVECTOR][v]),
                }
                for v in range(g.n)
            ],
            "r_squared": r_squared,
        }
        atomic_write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        buf = io.StringIO()
        write_scores_csv(
            g,
            scores[CentralityKind.DEGREE],
            scores[CentralityKind.BETWEENNESS],
            scores[CentralityKind.EIGENVECTOR],
            buf,
        )
        atomic_write(out, buf.getvalue())
    return 0


def cmd_simulate(values, trace_path=None) -> int:
    g = _load_graph(values)
    out = _require_out(values)
    params = SirParams(values["beta"], values["gamma"])
    report = evaluate_protection(
        g,
        frozenset(),
        params,
        values["runs"],
        subsequence(values["seed"], 1),
        strategy=Strategy.NO_PROTECTION,
        threads=values["threads"],
    )
    if trace_path:
        trace = []
        rng = generator(values["seed"], 2)
        seed_node = int(rng.integers(g.n))
        run_outbreak(g, seed_node, params, rng, trace=trace)
        buf = io.StringIO()
        write_trace_csv(trace, buf)
        atomic_write(Path(trace_path), buf.getvalue())
    if values["format"] == "json":
        payload = _round_tree(
            {
                "runs": values["runs"],
                "beta": values["beta"],
                "gamma": values["gamma"],
                "seed": values["seed"],
                "stats": report.stats,
                "casualties": list(report.casualties),
            }
        )
        atomic_write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["run,casualties"]
        lines += [f"{i},{c}" for i, c in enumerate(report.casualties)]
        atomic_write(out, "\n".join(lines) + "\n")
    print(f"mean casualties: {report.stats['mean']:.12g}")
    return 0


def _ga_config(values) -> GaConfig:
    return GaConfig(
        k=values["k"],
        l=values["l"],
        m=values["m"],
        population_size=values["pop"],
        generations=values["gens"],
        tournament_size=values["tour"],
        elite_count=values["elites"],
        master_seed=values["seed"],
    )


def cmd_optimize(values) -> int:
    g = _load_graph(values)
    out = _require_out(values)
    params = SirParams(values["beta"], values["gamma"])
    rankings = (
        build_ranking(CentralityKind.DEGREE, degree_centrality(g)),
        build_ranking(CentralityKind.BETWEENNESS, betweenness_centrality(g)),
        build_ranking(CentralityKind.EIGENVECTOR, eigenvector_centrality(g)),
    )
    pool = reduced_pool(rankings, values["l"])
    best, history = evolve(
        g, pool, rankings, params, _ga_config(values), threads=values["threads"]
    )
    labels = [g.labels[v] for v in best.genes]
    print(f"best set ({best.fitness:.12g} expected casualties): {' '.join(labels)}")
    if values["format"] == "json":
        payload = _round_tree(
            {
                "best": {"nodes": labels, "fitness": best.fitness},
                "history": [
                    {
                        "generation": rec.generation,
                        "best_fitness": rec.best_fitness,
                        "mean_fitness": rec.mean_fitness,
                        "best_nodes": [g.labels[v] for v in rec.best_genes],
                    }
                    for rec in history
                ],
                "seed": values["seed"],
            }
        )
        atomic_write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        buf = io.StringIO()
        write_history_csv(history, g.labels, buf)
        atomic_write(out, buf.getvalue())
    return 0


def cmd_compare(values) -> int:
    g = _load_graph(values)
    out = _require_out(values)
    params = SirParams(values["beta"], values["gamma"])
    result = compare_strategies(
        g,
        params,
        values["k"],
        values["l"],
        _ga_config(values),
        values["runs"],
        values["seed"],
        threads=values["threads"],
    )
    for report in result.reports:
        print(f"{report.strategy.value}: mean casualties {report.stats['mean']:.12g}")
    if values["format"] == "json":
        payload = _round_tree(
            {
                "strategies": [rep.to_dict() for rep in result.reports],
                "overlap": result.overlap,
                "degree_overlay": [
                    {"degree": d, "nodes": total, "ga_selected": picked}
                    for d, total, picked in result.degree_overlay
                ],
                "params": {
                    "beta": values["beta"],
                    "gamma": values["gamma"],
                    "k": values["k"],
                    "l": values["l"],
                    "m": values["m"],
                    "runs": values["runs"],
                },
                "seed": values["seed"],
            }
        )
        atomic_write(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["strategy,run,casualties"]
        for report in result.reports:
            lines += [
                f"{report.strategy.value},{i},{c}"
                for i, c in enumerate(report.casualties)
            ]
        atomic_write(out, "\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        values = _resolve(args)
        if args.command == "centrality":
            return cmd_centrality(values)
        if args.command == "simulate":
            return cmd_simulate(values, trace_path=getattr(args, "trace", None))
        if args.command == "optimize":
            return cmd_optimize(values)
        if args.command == "compare":
            return cmd_compare(values)
        raise CliError(f"unknown command {args.command!r}")
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

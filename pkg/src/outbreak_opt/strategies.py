"""Immunization strategies, the five-way comparison protocol, and statistics."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .centrality import (
    CentralityKind,
    CentralityRanking,
    build_ranking,
    betweenness_centrality,
    degree_centrality,
    eigenvector_centrality,
    reduced_pool,
)
from .epidemic import SirParams, simulate_protected
from .ga import GaConfig, GenerationRecord, evolve
from .graph import Graph, check_node_set, degree_distribution
from .rng import derived_seed, subsequence


class Strategy(str, Enum):
    DEGREE = "degree"
    BETWEENNESS = "betweenness"
    EIGENVECTOR = "eigenvector"
    GENETIC_ALGORITHM = "genetic_algorithm"
    NO_PROTECTION = "no_protection"


def boxplot_stats(casualties) -> dict:
    """Five-number summary, mean, 1.5*IQR whiskers and outliers.

    Quartiles use linear interpolation between order statistics (the common
    "type 7" rule).
    """
    data = np.asarray(casualties, dtype=np.float64)
    if data.size == 0:
        raise ValueError("no data")
    q1, median, q3 = np.percentile(data, [25.0, 50.0, 75.0])
    iqr = q3 - q1
    low_fence = q1 - 1.5 * iqr
    high_fence = q3 + 1.5 * iqr
    inside = data[(data >= low_fence) & (data <= high_fence)]
    outliers = np.sort(data[(data < low_fence) | (data > high_fence)])
    return {
        "min": float(data.min()),
        "q1": float(q1),
        "median": float(median),
        "q3": float(q3),
        "max": float(data.max()),
        "mean": float(data.mean()),
        "whisker_low": float(inside.min()),
        "whisker_high": float(inside.max()),
        "outliers": [float(x) for x in outliers],
    }


@dataclass(frozen=True)
class StrategyReport:
    """Casualty distribution of one protection strategy over repeated runs."""

    strategy: Strategy
    protected_ids: tuple[int, ...]
    protected_nodes: tuple[str, ...]  # original labels
    casualties: tuple[int, ...]
    stats: dict

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "protected_nodes": list(self.protected_nodes),
            "casualties": list(self.casualties),
            "stats": self.stats,
        }


def top_k_nodes(ranking: CentralityRanking, k: int) -> frozenset:
    """The first k entries of the ranking order."""
    if k > len(ranking.order):
        raise ValueError(f"k={k} exceeds node count {len(ranking.order)}")
    return frozenset(int(v) for v in ranking.order[:k])


def evaluate_protection(
    g: Graph,
    protect,
    params: SirParams,
    runs: int,
    rng,
    strategy: Strategy | None = None,
    threads: int = 1,
) -> StrategyReport:
    """Run `runs` outbreaks on g minus `protect` and summarize casualties."""
    protect = check_node_set(g, protect)
    casualties = simulate_protected(g, protect, params, runs, rng, threads)
    ids = tuple(sorted(protect))
    return StrategyReport(
        strategy=strategy,
        protected_ids=ids,
        protected_nodes=tuple(g.labels[v] for v in ids),
        casualties=tuple(int(c) for c in casualties),
        stats=boxplot_stats(casualties),
    )


@dataclass(frozen=True)
class ComparisonResult:
    """Five strategy reports plus GA-vs-degree overlap and degree overlay."""

    reports: tuple[StrategyReport, ...]
    overlap: dict
    degree_overlay: tuple[tuple[int, int, int], ...]  # (degree, nodes, ga picks)
    ga_history: tuple[GenerationRecord, ...]

    def report(self, strategy: Strategy) -> StrategyReport:
        for rep in self.reports:
            if rep.strategy is strategy:
                return rep
        raise KeyError(strategy)


def compare_strategies(
    g: Graph,
    params: SirParams,
    k: int,
    l: int,
    ga_cfg: GaConfig,
    runs: int,
    master_seed: int,
    threads: int = 1,
) -> ComparisonResult:
    """Benchmark the three centrality strategies, the GA, and no protection.

    The three rankings are computed once; each strategy protects exactly k
    nodes (the GA searching the l-truncated pool) and is then scored with
    `runs` fresh outbreaks on its own RNG substream. The GA gets a sub-seed
    of `master_seed` so baseline evaluation order cannot perturb it.
    """
    rankings = (
        build_ranking(CentralityKind.DEGREE, degree_centrality(g)),
        build_ranking(CentralityKind.BETWEENNESS, betweenness_centrality(g)),
        build_ranking(CentralityKind.EIGENVECTOR, eigenvector_centrality(g)),
    )
    by_kind = dict(zip((Strategy.DEGREE, Strategy.BETWEENNESS,
                        Strategy.EIGENVECTOR), rankings))
    protected = {strat: top_k_nodes(rank, k) for strat, rank in by_kind.items()}
    protected[Strategy.NO_PROTECTION] = frozenset()

    ga_history: tuple[GenerationRecord, ...] = ()
    if k == 0:
        protected[Strategy.GENETIC_ALGORITHM] = frozenset()
    else:
        pool = reduced_pool(rankings, l)
        cfg = replace(
            ga_cfg, k=k, l=l, master_seed=derived_seed(master_seed, 0)
        )
        best, history = evolve(g, pool, rankings, params, cfg, threads)
        protected[Strategy.GENETIC_ALGORITHM] = frozenset(best.genes)
        ga_history = tuple(history)

    reports = []
    for index, strategy in enumerate(Strategy):
        reports.append(
            evaluate_protection(
                g,
                protected[strategy],
                params,
                runs,
                subsequence(master_seed, 1, index),
                strategy=strategy,
                threads=threads,
            )
        )

    ga_set = protected[Strategy.GENETIC_ALGORITHM]
    deg_set = protected[Strategy.DEGREE]
    label = lambda vs: [g.labels[v] for v in sorted(vs)]
    overlap = {
        "both": label(ga_set & deg_set),
        "ga_only": label(ga_set - deg_set),
        "degree_only": label(deg_set - ga_set),
    }

    degrees = g.degrees()
    distribution = degree_distribution(g)
    ga_by_degree: dict[int, int] = {}
    for v in ga_set:
        d = int(degrees[v])
        ga_by_degree[d] = ga_by_degree.get(d, 0) + 1
    overlay = tuple(
        (d, distribution[d], ga_by_degree.get(d, 0))
        for d in sorted(distribution)
    )
    return ComparisonResult(tuple(reports), overlap, overlay, ga_history)

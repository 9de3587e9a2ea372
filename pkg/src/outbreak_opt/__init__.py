"""Immunization-set search on contact networks via a centrality-seeded GA."""

from .centrality import (
    CentralityKind,
    CentralityRanking,
    ConvergenceError,
    ReducedPool,
    betweenness_centrality,
    build_ranking,
    correlation_r2,
    degree_centrality,
    eigenvector_centrality,
    reduced_pool,
)
from .epidemic import (
    OutbreakResult,
    SimulationError,
    SirParams,
    SirState,
    estimate_fitness,
    run_outbreak,
    simulate_protected,
    sir_step,
)
from .estimator import ImmunizationOptimizer, TopKCentralityImmunizer
from .ga import (
    EvaluatedIndividual,
    GaConfig,
    GenerationRecord,
    crossover,
    evolve,
    mutate,
    seed_population,
    tournament_select,
)
from .graph import (
    EdgeListError,
    Graph,
    LoadedGraph,
    connected_components,
    degree_distribution,
    load_edge_list,
    remove_nodes,
    write_edge_list,
)
from .strategies import (
    ComparisonResult,
    Strategy,
    StrategyReport,
    boxplot_stats,
    compare_strategies,
    evaluate_protection,
    top_k_nodes,
)

__version__ = "0.1.0"

__all__ = [
    "CentralityKind",
    "CentralityRanking",
    "ComparisonResult",
    "ConvergenceError",
    "EdgeListError",
    "EvaluatedIndividual",
    "GaConfig",
    "GenerationRecord",
    "Graph",
    "ImmunizationOptimizer",
    "LoadedGraph",
    "OutbreakResult",
    "ReducedPool",
    "SimulationError",
    "SirParams",
    "SirState",
    "Strategy",
    "StrategyReport",
    "TopKCentralityImmunizer",
    "betweenness_centrality",
    "boxplot_stats",
    "build_ranking",
    "compare_strategies",
    "connected_components",
    "correlation_r2",
    "crossover",
    "degree_centrality",
    "degree_distribution",
    "eigenvector_centrality",
    "estimate_fitness",
    "evaluate_protection",
    "evolve",
    "load_edge_list",
    "mutate",
    "reduced_pool",
    "remove_nodes",
    "run_outbreak",
    "seed_population",
    "simulate_protected",
    "sir_step",
    "top_k_nodes",
    "tournament_select",
    "write_edge_list",
]

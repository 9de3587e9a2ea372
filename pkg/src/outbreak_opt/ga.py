"""Genetic algorithm over k-subsets of the reduced candidate pool.

Chromosomes are sorted tuples of k distinct node ids drawn from the pool;
fitness is the Monte-Carlo estimate of expected outbreak casualties after
removing those nodes, and the GA minimizes it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .centrality import ReducedPool
from .epidemic import SirParams, estimate_fitness
from .graph import Graph
from .rng import generator, parallel_map, subsequence

logger = logging.getLogger(__name__)

# substream namespaces under the master seed
_STREAM_INIT = 0
_STREAM_OPS = 1
_STREAM_EVAL = 2


@dataclass(frozen=True)
class GaConfig:
    k: int
    l: int
    m: int = 100
    population_size: int = 100
    generations: int = 100
    tournament_size: int = 4
    elite_count: int = 10
    mutation_rate: float | None = None  # None -> 1/k
    master_seed: int = 0
    reevaluate_elites: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.m < 1:
            raise ValueError("m must be positive")
        if self.population_size < 1:
            raise ValueError("population_size must be positive")
        if self.generations < 1:
            raise ValueError("generations must be positive")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError("elite_count must be < population_size")
        if self.mutation_rate is not None and not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")

    @property
    def gene_mutation_rate(self) -> float:
        return 1.0 / self.k if self.mutation_rate is None else self.mutation_rate


@dataclass
class EvaluatedIndividual:
    genes: tuple[int, ...]
    fitness: float | None = None
    eval_generation: int | None = None


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: float
    mean_fitness: float
    best_genes: tuple[int, ...]


def check_chromosome(genes, k: int, pool_members) -> tuple[int, ...]:
    """Validate and normalize a chromosome: k distinct pool members, sorted."""
    genes = tuple(sorted(int(v) for v in genes))
    if len(genes) != k or len(set(genes)) != k:
        raise ValueError(f"chromosome must hold {k} distinct genes: {genes}")
    pool_set = set(pool_members)
    if not set(genes) <= pool_set:
        raise ValueError(f"chromosome {genes} leaves the candidate pool")
    return genes


def seed_population(
    pool: ReducedPool, rankings, cfg: GaConfig, rng
) -> list[tuple[int, ...]]:
    """Initial chromosomes: three centrality top-k prefixes, rest random.

    `rankings` is the (degree, betweenness, eigenvector) triple; individuals
    0..2 take the first k nodes of each, the remaining population members are
    uniform random k-subsets of the pool.
    """
    if cfg.population_size < 3:
        raise ValueError("population_size must be >= 3 to hold the seeded individuals")
    if cfg.k > cfg.l:
        raise ValueError("k must not exceed the ranking truncation l")
    if cfg.k > len(pool.members):
        raise ValueError(
            f"k={cfg.k} exceeds pool size {len(pool.members)}"
        )
    chromosomes = [
        tuple(sorted(int(v) for v in ranking.order[: cfg.k]))
        for ranking in rankings
    ]
    members = np.asarray(pool.members, dtype=np.int64)
    for _ in range(cfg.population_size - 3):
        picks = rng.choice(members, size=cfg.k, replace=False)
        chromosomes.append(tuple(sorted(int(v) for v in picks)))
    return chromosomes


def tournament_select(population, size: int, rng) -> EvaluatedIndividual:
    """Best (minimum fitness) of `size` draws with replacement.

    Ties break toward the lower population index.
    """
    if not population:
        raise ValueError("population is empty")
    picks = rng.integers(0, len(population), size=size)
    best = min(picks, key=lambda i: (population[i].fitness, i))
    return population[best]


def crossover(p1, p2) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sorted-concatenation crossover: merge, sort, deal alternate entries.

    Child 1 takes the odd (1-indexed) positions of the sorted 2k-array,
    child 2 the even ones; duplicate-free parents yield duplicate-free
    children because equal genes land adjacent and split across children.
    """
    merged = sorted(p1 + p2)
    return tuple(merged[0::2]), tuple(merged[1::2])


def mutate(genes, pool: ReducedPool, rate: float, rng) -> tuple[int, ...]:
    """Independently replace each gene with probability `rate`.

    Replacement draws uniformly from pool members not currently in the
    chromosome; genes are scanned in ascending order and earlier replacements
    are excluded from later draws.
    """
    members = tuple(pool.members)
    if rate > 0 and len(genes) == len(members):
        logger.warning("mutation skipped: chromosome already spans the pool")
        return tuple(genes)
    current = set(genes)
    for gene in tuple(genes):
        if rng.random() < rate:
            # rejection sampling is uniform over pool minus current genes
            while True:
                replacement = members[int(rng.integers(len(members)))]
                if replacement not in current:
                    break
            current.remove(gene)
            current.add(replacement)
    return tuple(sorted(current))


def evolve(
    g: Graph,
    pool: ReducedPool,
    rankings,
    params: SirParams,
    cfg: GaConfig,
    threads: int = 1,
    on_generation=None,
) -> tuple[EvaluatedIndividual, list[GenerationRecord]]:
    """Run the full GA loop; returns the best-ever individual and history.

    Fitness evaluations use RNG substreams keyed by (generation, individual
    index), so evaluating individuals in parallel cannot change results.
    Elites carry their fitness over unless cfg.reevaluate_elites is set.
    """
    init_rng = generator(cfg.master_seed, _STREAM_INIT)
    ops_rng = generator(cfg.master_seed, _STREAM_OPS)
    rate = cfg.gene_mutation_rate
    population = [
        EvaluatedIndividual(check_chromosome(genes, cfg.k, pool.members))
        for genes in seed_population(pool, rankings, cfg, init_rng)
    ]

    best_ever: EvaluatedIndividual | None = None
    history: list[GenerationRecord] = []
    for gen in range(cfg.generations):
        pending = [i for i, ind in enumerate(population) if ind.fitness is None]

        def evaluate(i):
            stream = subsequence(cfg.master_seed, _STREAM_EVAL, gen, i)
            return estimate_fitness(
                g, population[i].genes, params, cfg.m, stream
            )

        for i, fitness in zip(pending, parallel_map(evaluate, pending, threads)):
            population[i].fitness = fitness
            population[i].eval_generation = gen

        order = sorted(
            range(len(population)), key=lambda i: (population[i].fitness, i)
        )
        best = population[order[0]]
        mean_fitness = float(
            np.mean([ind.fitness for ind in population])
        )
        history.append(
            GenerationRecord(gen, best.fitness, mean_fitness, best.genes)
        )
        if best_ever is None or best.fitness < best_ever.fitness:
            best_ever = EvaluatedIndividual(
                best.genes, best.fitness, best.eval_generation
            )
        if on_generation is not None:
            on_generation(gen, population)

        if gen == cfg.generations - 1:
            break
        next_population = []
        for i in order[: cfg.elite_count]:
            elite = population[i]
            if cfg.reevaluate_elites:
                next_population.append(EvaluatedIndividual(elite.genes))
            else:
                next_population.append(
                    EvaluatedIndividual(
                        elite.genes, elite.fitness, elite.eval_generation
                    )
                )
        while len(next_population) < cfg.population_size:
            parent_a = tournament_select(population, cfg.tournament_size, ops_rng)
            parent_b = tournament_select(population, cfg.tournament_size, ops_rng)
            child_a, child_b = crossover(parent_a.genes, parent_b.genes)
            for child in (child_a, child_b):
                if len(next_population) >= cfg.population_size:
                    break
                mutated = mutate(child, pool, rate, ops_rng)
                next_population.append(
                    EvaluatedIndividual(
                        check_chromosome(mutated, cfg.k, pool.members)
                    )
                )
        population = next_population
    return best_ever, history


def write_history_csv(history, labels, sink) -> None:
    """CSV export: generation,best_fitness,mean_fitness,best_chromosome_labels.

    Chromosome labels are ';'-joined so the row stays a 4-field CSV record.
    """
    sink.write("generation,best_fitness,mean_fitness,best_chromosome_labels\n")
    for rec in history:
        names = ";".join(labels[v] for v in rec.best_genes)
        sink.write(
            f"{rec.generation},{rec.best_fitness:.12g},"
            f"{rec.mean_fitness:.12g},{names}\n"
        )

"""Discrete-time SIR outbreaks on graphs with synchronous state updates.

A susceptible node with d infectious neighbors turns infectious with
probability 1 - (1 - beta)**d; an infectious node recovers with probability
gamma. All transitions at step t+1 are computed from the state at t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, remove_nodes
from .rng import as_seed_sequence, generator, parallel_map, subsequence

S, I, R = 0, 1, 2

# Outbreaks with gamma > 0 end long before this; the cap only trips
# non-terminating configurations like gamma == 0 with a live infection.
STEP_CAP_FACTOR = 10


class SimulationError(RuntimeError):
    """Raised when an outbreak exceeds the hard step cap."""


@dataclass(frozen=True)
class SirParams:
    """Per-step infection probability per infectious neighbor, and recovery."""

    beta: float = 0.3
    gamma: float = 0.3

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")


@dataclass
class SirState:
    """Per-node compartments (S/I/R) at step t."""

    compartments: np.ndarray
    t: int = 0

    @classmethod
    def initial(cls, g: Graph, infectious) -> "SirState":
        comp = np.zeros(g.n, dtype=np.int8)
        for v in infectious:
            if not 0 <= v < g.n:
                raise ValueError(f"invalid node {v} for graph with {g.n} nodes")
            comp[v] = I
        return cls(comp, 0)

    def counts(self) -> tuple[int, int, int]:
        comp = self.compartments
        return int((comp == S).sum()), int((comp == I).sum()), int((comp == R).sum())


@dataclass(frozen=True)
class OutbreakResult:
    casualties: int
    duration: int
    seed_node: int


def _advance(a_csr, comp, beta, gamma, rng) -> None:
    """One synchronous update, in place; both phases read the pre-step state."""
    infectious = comp == I
    d_inf = a_csr @ infectious.astype(np.float64)
    exposed = np.nonzero((comp == S) & (d_inf > 0))[0]
    if exposed.size:
        p_infect = 1.0 - (1.0 - beta) ** d_inf[exposed]
        new_infectious = exposed[rng.random(exposed.size) < p_infect]
    else:
        new_infectious = exposed
    inf_idx = np.nonzero(infectious)[0]
    recovered = inf_idx[rng.random(inf_idx.size) < gamma]
    comp[new_infectious] = I
    comp[recovered] = R


def sir_step(g: Graph, state: SirState, params: SirParams, rng) -> SirState:
    """Return the state one synchronous step after `state`."""
    comp = state.compartments.copy()
    _advance(g.csr(), comp, params.beta, params.gamma, rng)
    return SirState(comp, state.t + 1)


def run_outbreak(
    g: Graph, seed_node: int, params: SirParams, rng, trace=None
) -> OutbreakResult:
    """Run one outbreak from `seed_node` until no infectious nodes remain.

    `trace`, if given, is a list that receives a (t, n_S, n_I, n_R) tuple per
    step including t=0. Raises SimulationError if the infection outlives the
    hard step cap (possible only when gamma is at or near 0).
    """
    if not 0 <= seed_node < g.n:
        raise ValueError(f"invalid seed node {seed_node} for graph with {g.n} nodes")
    a = g.csr()
    comp = np.zeros(g.n, dtype=np.int8)
    comp[seed_node] = I
    cap = STEP_CAP_FACTOR * g.n
    steps = 0
    if trace is not None:
        trace.append((0, g.n - 1, 1, 0))
    while (comp == I).any():
        if steps >= cap:
            raise SimulationError(
                f"non-terminating configuration: infection still live after "
                f"{cap} steps"
            )
        _advance(a, comp, params.beta, params.gamma, rng)
        steps += 1
        if trace is not None:
            trace.append(
                (steps, int((comp == S).sum()), int((comp == I).sum()),
                 int((comp == R).sum()))
            )
    return OutbreakResult(int((comp == R).sum()), steps, seed_node)


def simulate_protected(
    g: Graph, protect, params: SirParams, runs: int, rng, threads: int = 1
) -> np.ndarray:
    """Casualty counts of `runs` outbreaks on g minus the protected nodes.

    Run i draws its seed node uniformly over the residual graph and consumes
    its own RNG substream (stream index = run index), so any parallel
    execution order yields the same counts.
    """
    if runs < 1:
        raise ValueError("need at least one run")
    residual, _ = remove_nodes(g, protect)
    if residual.n == 0:
        raise ValueError("empty residual graph: every node is protected")
    base = as_seed_sequence(rng)

    def one_run(i):
        run_rng = generator(subsequence(base, i))
        seed_node = int(run_rng.integers(residual.n))
        return run_outbreak(residual, seed_node, params, run_rng).casualties

    return np.array(parallel_map(one_run, range(runs), threads), dtype=np.int64)


def estimate_fitness(
    g: Graph, protect, params: SirParams, m: int, rng, threads: int = 1
) -> float:
    """Monte-Carlo mean casualties over m outbreaks with `protect` removed."""
    return float(simulate_protected(g, protect, params, m, rng, threads).mean())


def write_trace_csv(trace, sink) -> None:
    """Single-run trace export: t,S,I,R counts per step."""
    sink.write("t,S,I,R\n")
    for t, n_s, n_i, n_r in trace:
        sink.write(f"{t},{n_s},{n_i},{n_r}\n")

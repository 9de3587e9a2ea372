import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from outbreak_opt import (
    CentralityKind,
    ConvergenceError,
    Graph,
    betweenness_centrality,
    build_ranking,
    correlation_r2,
    degree_centrality,
    eigenvector_centrality,
    reduced_pool,
)

from conftest import (
    complete_graph,
    cycle_graph,
    naive_betweenness,
    path_graph,
    random_graph,
    star_graph,
)


class TestDegree:
    def test_path(self):
        assert list(degree_centrality(path_graph(3))) == [1, 2, 1]

    def test_k4(self):
        assert list(degree_centrality(complete_graph(4))) == [3, 3, 3, 3]

    def test_edgeless(self):
        assert list(degree_centrality(Graph(4))) == [0, 0, 0, 0]


class TestBetweenness:
    def test_path3(self):
        scores = betweenness_centrality(path_graph(3))
        assert scores[1] == pytest.approx(1.0)
        assert scores[0] == scores[2] == 0.0

    def test_path4(self):
        scores = betweenness_centrality(path_graph(4))
        assert scores[1] == pytest.approx(2.0)
        assert scores[2] == pytest.approx(2.0)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_complete_graphs_zero(self, n):
        assert np.all(betweenness_centrality(complete_graph(n)) == 0.0)

    def test_leaves_and_isolated_score_zero(self):
        g = Graph(5, [(0, 1), (1, 2)])  # node 3, 4 isolated
        scores = betweenness_centrality(g)
        assert scores[0] == scores[2] == scores[3] == scores[4] == 0.0

    def test_matches_path_enumeration_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            g = random_graph(rng, int(rng.integers(4, 15)), 0.25)
            np.testing.assert_allclose(
                betweenness_centrality(g), naive_betweenness(g), atol=1e-9
            )

    def test_tree_sum_equals_interior_path_counts(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            n = int(rng.integers(3, 15))
            # random tree: each node attaches to a random earlier node
            edges = [(int(rng.integers(v)), v) for v in range(1, n)]
            g = Graph(n, edges)
            oracle = naive_betweenness(g)
            assert betweenness_centrality(g).sum() == pytest.approx(
                oracle.sum(), abs=1e-9
            )


class TestEigenvector:
    def test_cycle_is_uniform(self):
        scores = eigenvector_centrality(cycle_graph(5))
        np.testing.assert_allclose(scores, np.full(5, 1 / np.sqrt(5)), atol=1e-8)

    def test_star_hub_leaf_ratio(self):
        # dense-eigensolver oracle on the 4x4 adjacency: hub/leaf = sqrt(3)
        scores = eigenvector_centrality(star_graph(3))
        assert scores[0] / scores[1] == pytest.approx(np.sqrt(3), abs=1e-8)

    def test_disjoint_cliques_mass_on_larger(self):
        edges = list(complete_graph(4).edges()) + [
            (u + 4, v + 4) for u, v in complete_graph(3).edges()
        ]
        g = Graph(7, edges)
        scores = eigenvector_centrality(g, tol=1e-12)
        assert np.all(scores[4:] <= 1e-6)
        assert np.all(scores[:4] > 0.1)

    def test_residual_bound_holds(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            g = random_graph(rng, 12, 0.3)
            if g.edge_count == 0:
                continue
            x = eigenvector_centrality(g, tol=1e-10)
            a = g.csr()
            lam = float(x @ (a @ x))
            assert np.max(np.abs(a @ x - lam * x)) <= 1e-10
            assert np.linalg.norm(x) == pytest.approx(1.0)
            assert np.all(x >= 0)

    def test_bipartite_converges(self):
        scores = eigenvector_centrality(path_graph(3))
        oracle = np.array([0.5, np.sqrt(0.5), 0.5])
        np.testing.assert_allclose(scores, oracle, atol=1e-8)

    def test_isolated_nodes_score_zero(self):
        g = Graph(4, [(0, 1)])
        scores = eigenvector_centrality(g)
        assert scores[2] == scores[3] == 0.0

    def test_edgeless_rejected(self):
        with pytest.raises(ValueError, match="undefined"):
            eigenvector_centrality(Graph(3))

    def test_nonconvergence_reports_residual(self):
        with pytest.raises(ConvergenceError, match="residual"):
            eigenvector_centrality(path_graph(4), tol=0.0, max_iters=3)


class TestRanking:
    def test_tie_broken_by_node_id(self):
        ranking = build_ranking(CentralityKind.DEGREE, [1, 2, 1])
        assert list(ranking.order) == [1, 0, 2]

    def test_all_ties_ascending(self):
        ranking = build_ranking(CentralityKind.DEGREE, [5, 5, 5])
        assert list(ranking.order) == [0, 1, 2]

    def test_order_is_permutation_and_descending(self):
        rng = np.random.default_rng(0)
        scores = rng.random(20)
        ranking = build_ranking(CentralityKind.BETWEENNESS, scores)
        assert sorted(ranking.order) == list(range(20))
        ordered = scores[ranking.order]
        assert np.all(ordered[:-1] >= ordered[1:])

    def test_first_entry_is_a_maximum(self):
        rng = np.random.default_rng(1)
        g = random_graph(rng, 30, 0.2)
        scores = degree_centrality(g)
        ranking = build_ranking(CentralityKind.DEGREE, scores)
        assert scores[ranking.order[0]] == scores.max()

    def test_deterministic_across_runs(self):
        g = random_graph(np.random.default_rng(2), 25, 0.3)
        a = build_ranking(CentralityKind.DEGREE, degree_centrality(g))
        b = build_ranking(CentralityKind.DEGREE, degree_centrality(g))
        assert list(a.order) == list(b.order)


class TestReducedPool:
    def _rankings(self, n, seed=0):
        rng = np.random.default_rng(seed)
        return tuple(
            build_ranking(kind, rng.random(n))
            for kind in CentralityKind
        )

    def test_identical_rankings_give_l_members(self):
        ranking = build_ranking(CentralityKind.DEGREE, np.arange(10.0))
        pool = reduced_pool((ranking, ranking, ranking), 5)
        assert len(pool.members) == 5

    def test_disjoint_prefixes_give_3l(self):
        r1 = build_ranking(CentralityKind.DEGREE, [3, 2, 1, 0, 0, 0, 0, 0, 0])
        r2 = build_ranking(CentralityKind.BETWEENNESS, [0, 0, 0, 3, 2, 1, 0, 0, 0])
        r3 = build_ranking(CentralityKind.EIGENVECTOR, [0, 0, 0, 0, 0, 0, 3, 2, 1])
        pool = reduced_pool((r1, r2, r3), 3)
        assert len(pool.members) == 9

    def test_members_sorted_ascending(self):
        pool = reduced_pool(self._rankings(20), 7)
        assert list(pool.members) == sorted(pool.members)

    def test_monotone_in_l(self):
        rankings = self._rankings(30, seed=4)
        for l1, l2 in [(3, 7), (7, 15), (15, 29)]:
            small = set(reduced_pool(rankings, l1).members)
            large = set(reduced_pool(rankings, l2).members)
            assert small <= large

    def test_l_must_be_below_n(self):
        rankings = self._rankings(10)
        with pytest.raises(ValueError):
            reduced_pool(rankings, 10)


class TestCorrelationR2:
    def test_perfect_linear_fit(self):
        xs = np.arange(10.0)
        assert correlation_r2(xs, 2 * xs + 3) == pytest.approx(1.0)

    def test_hand_computed_case(self):
        # OLS by hand: slope 0.2, SSR 0.2, SST 1.0
        assert correlation_r2([0, 1, 2, 3], [0, 1, 0, 1]) == pytest.approx(0.2)

    def test_identity(self):
        xs = np.random.default_rng(0).random(50)
        assert correlation_r2(xs, xs) == pytest.approx(1.0)

    def test_zero_variance_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            correlation_r2([1, 1, 1], [1, 2, 3])

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.floats(min_value=-1e3, max_value=1e3), min_size=3, max_size=30
        ),
        st.floats(min_value=-10, max_value=10),
        st.floats(min_value=-10, max_value=10),
    )
    def test_in_unit_interval(self, xs, a, b):
        ys = [a * x + b + (i % 3) for i, x in enumerate(xs)]
        if np.ptp(xs) < 1e-9 or np.ptp(ys) < 1e-9:
            return
        r2 = correlation_r2(xs, ys)
        assert -1e-9 <= r2 <= 1 + 1e-9

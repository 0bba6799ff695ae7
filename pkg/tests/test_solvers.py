import numpy as np
import pytest

import oracles
from kdcover import gen, graph as kg, solvers
from kdcover.solvers import CoverageIndex, CoverageMemoryError


def er(n, p, seed, directed=True):
    return gen.erdos_renyi(gen.GenSpec(n=n, p=p, seed=seed, directed=directed))


def undirected_path(n):
    src = list(range(n - 1)) + list(range(1, n))
    dst = list(range(1, n)) + list(range(n - 1))
    return kg.from_arcs(n, src, dst)


class TestCoverageIndex:
    def test_entries_equal_sum_of_coverage_sizes(self):
        g = er(40, 0.08, seed=21)
        for d in (1, 2, 3):
            idx = CoverageIndex.build(g, d)
            sizes = [len(kg.d_coverage(g, u, d)) for u in range(g.n)]
            assert idx.entries == sum(sizes)
            for u in range(g.n):
                assert idx.cover_list(u).tolist() == sorted(kg.d_coverage(g, u, d))

    def test_cap_refused_with_explicit_error(self):
        g = er(40, 0.1, seed=22)
        with pytest.raises(CoverageMemoryError):
            CoverageIndex.build(g, 2, max_entries=10)

    def test_disk_cache_round_trip(self, tmp_path):
        g = er(30, 0.1, seed=23)
        idx = solvers.load_or_build_index(g, 2, cache_dir=tmp_path)
        files = list(tmp_path.glob("cov-*.npz"))
        assert len(files) == 1
        again = solvers.load_or_build_index(g, 2, cache_dir=tmp_path)
        assert np.array_equal(idx.flat, again.flat)
        assert np.array_equal(idx.indptr, again.indptr)


class TestNaiveGreedy:
    def test_star_unique_maximizer(self):
        g = kg.from_arcs(6, [0] * 5, [1, 2, 3, 4, 5])
        s = solvers.naive_greedy(g, k=1, d=1)
        assert s.seeds.tolist() == [0]
        assert s.gains.tolist() == [6]

    def test_path_two_seeds(self):
        g = undirected_path(5)
        s = solvers.naive_greedy(g, k=2, d=1)
        assert s.seeds.tolist() == [1, 3]
        assert s.gains.tolist() == [3, 2]

    def test_gains_non_increasing(self):
        for seed in range(8):
            g = er(50, 0.05, seed=seed)
            s = solvers.naive_greedy(g, k=8, d=2)
            assert np.all(np.diff(s.gains) <= 0)

    def test_early_stop_returns_fewer_seeds(self):
        g = kg.from_arcs(5, [0] * 4, [1, 2, 3, 4])
        s = solvers.naive_greedy(g, k=3, d=1)
        assert s.seeds.tolist() == [0]

    def test_parameter_validation(self):
        g = er(10, 0.2, seed=1)
        with pytest.raises(ValueError):
            solvers.naive_greedy(g, k=0, d=1)
        with pytest.raises(ValueError):
            solvers.naive_greedy(g, k=11, d=1)
        with pytest.raises(ValueError):
            solvers.naive_greedy(g, k=2, d=0)

    def test_toy_graph_misses_deep_tail(self, data_dir):
        g = kg.load_edge_list(data_dir / "toy_undirected.txt", directed=False)
        s = solvers.naive_greedy(g, k=2, d=2)
        covered = kg.d_coverage_of_set(g, s, 2)
        assert len(covered) == 12
        best = solvers.brute_force(g, k=2, d=2)
        assert len(kg.d_coverage_of_set(g, best, 2)) == 12
        # the uncovered vertex is the one needing three hops from both seeds
        dense = {int(e): i for i, e in enumerate(g.orig_ids.tolist())}
        assert dense[13] not in covered


class TestCelf:
    def test_path_matches_hand_enumeration(self):
        g = undirected_path(5)
        s = solvers.celf(g, k=2, d=1)
        assert s.seeds.tolist() == [1, 3]
        assert s.gains.tolist() == [3, 2]

    def test_equals_naive_greedy_elementwise(self):
        rng = np.random.default_rng(77)
        cases = 0
        for i in range(30):
            n = int(rng.integers(10, 61))
            p = float(rng.uniform(1.5 / n, 0.15))
            g = er(n, p, seed=1000 + i)
            d = int(rng.integers(1, 4))
            k = int(rng.choice([1, 4, 8]))
            k = min(k, n)
            a = solvers.naive_greedy(g, k, d)
            b = solvers.celf(g, k, d)
            assert a.seeds.tolist() == b.seeds.tolist()
            assert a.gains.tolist() == b.gains.tolist()
            cases += 1
        assert cases == 30

    def test_stats_out_param(self):
        g = er(100, 0.05, seed=5)
        stats: dict = {}
        s = solvers.celf(g, k=8, d=2, stats=stats)
        assert stats["index_entries"] > 0
        assert stats["heap_pops"] >= len(s)
        assert stats["gain_recomputes"] <= stats["heap_pops"]

    def test_d1_uses_no_index(self):
        g = er(100, 0.05, seed=6)
        stats: dict = {}
        solvers.celf(g, k=4, d=1, stats=stats)
        assert stats["index_entries"] == 0

    def test_memory_cap_refusal(self):
        g = er(60, 0.1, seed=7)
        with pytest.raises(CoverageMemoryError):
            solvers.celf(g, k=4, d=2, max_index_entries=20)

    def test_prebuilt_index_reused(self):
        g = er(50, 0.08, seed=8)
        idx = CoverageIndex.build(g, 2)
        a = solvers.celf(g, k=5, d=2, index=idx)
        b = solvers.celf(g, k=5, d=2)
        assert a.seeds.tolist() == b.seeds.tolist()
        with pytest.raises(ValueError):
            solvers.celf(g, k=5, d=3, index=idx)


class TestGreedyOne:
    def test_equals_celf_at_d1(self):
        for seed in range(6):
            g = er(60, 0.06, seed=30 + seed)
            a = solvers.greedy_one(g, k=6, d=1)
            b = solvers.celf(g, k=6, d=1)
            assert a.seeds.tolist() == b.seeds.tolist()
            assert a.gains.tolist() == b.gains.tolist()

    def test_one_hop_myopia_counterexample(self):
        # hub 0 feeds three middle nodes, each with five leaves (2-hop
        # coverage 19); node 19 has the largest out-degree but a small
        # 2-hop reach, and 1-hop greedy falls for it
        src, dst = [], []
        for m in (1, 2, 3):
            src.append(0)
            dst.append(m)
        leaf = 4
        for m in (1, 2, 3):
            for _ in range(5):
                src.append(m)
                dst.append(leaf)
                leaf += 1
        z = 19
        for x in range(20, 26):
            src.append(z)
            dst.append(x)
        g = kg.from_arcs(26, src, dst)

        myopic = solvers.greedy_one(g, k=1, d=2)
        farsighted = solvers.celf(g, k=1, d=2)
        assert myopic.seeds.tolist() == [z]
        assert farsighted.seeds.tolist() == [0]
        assert myopic.gains.tolist() == [7]
        # the verdict, confirmed against the reachability oracle
        sg, dg = g.arcs()
        assert len(oracles.coverage_of_set(g.n, sg, dg, [0], 2)) == 19
        assert len(oracles.coverage_of_set(g.n, sg, dg, [z], 2)) == 7

    def test_gains_reported_at_true_d(self):
        g = undirected_path(7)
        s = solvers.greedy_one(g, k=2, d=3)
        expect = []
        covered: list = []
        for v in s.seeds.tolist():
            before = len(kg.d_coverage_of_set(g, covered, 3)) if covered else 0
            covered.append(v)
            expect.append(len(kg.d_coverage_of_set(g, covered, 3)) - before)
        assert s.gains.tolist() == expect


class TestBruteForce:
    def test_k_equals_n(self):
        g = kg.from_arcs(4, [], [])
        s = solvers.brute_force(g, k=4, d=1)
        assert s.seeds.tolist() == [0, 1, 2, 3]
        assert kg.coverage_rate(g, s, 1) == 1.0

    def test_k1_reduces_to_argmax(self):
        g = er(12, 0.15, seed=40)
        s = solvers.brute_force(g, k=1, d=2)
        sizes = [len(kg.d_coverage(g, u, 2)) for u in range(g.n)]
        assert sizes[s.seeds[0]] == max(sizes)
        assert s.seeds[0] == int(np.argmax(sizes))

    def test_budget_errors(self):
        with pytest.raises(ValueError):
            solvers.brute_force(er(20, 0.1, seed=1), k=2, d=1)
        with pytest.raises(ValueError):
            solvers.brute_force(er(10, 0.1, seed=1), k=5, d=1)

    def test_lexicographic_tie_break(self):
        g = kg.from_arcs(4, [0, 2], [1, 3])
        s = solvers.brute_force(g, k=1, d=1)
        assert s.seeds.tolist() == [0]

    def test_against_independent_enumerator(self):
        rng = np.random.default_rng(55)
        for i in range(50):
            n = int(rng.integers(4, 11))
            p = float(rng.uniform(0.1, 0.4))
            g = er(n, p, seed=2000 + i)
            k = int(rng.integers(1, min(4, n) + 1))
            d = int(rng.integers(1, 3))
            s = solvers.brute_force(g, k=k, d=d)
            src, dst = g.arcs()
            best, argbest = oracles.best_seed_sets(g.n, src, dst, k, d)
            assert len(kg.d_coverage_of_set(g, s, d)) == best
            assert tuple(s.seeds.tolist()) == argbest[0]


class TestApproximationBound:
    def test_greedy_within_1_minus_1_over_e_of_optimum(self):
        rng = np.random.default_rng(66)
        bound = 1 - 1 / np.e
        for i in range(30):
            n = int(rng.integers(5, 13))
            p = float(rng.uniform(0.08, 0.35))
            g = er(n, p, seed=3000 + i)
            k = int(rng.integers(1, 4))
            d = int(rng.integers(1, 3))
            greedy_cov = len(kg.d_coverage_of_set(g, solvers.celf(g, k, d), d))
            best_cov = len(kg.d_coverage_of_set(g, solvers.brute_force(g, k, d), d))
            assert greedy_cov >= bound * best_cov


class TestTopKByScore:
    def test_simple_ranking(self):
        s = solvers.top_k_by_score(np.array([0.1, 0.9, 0.5]), k=2)
        assert s.seeds.tolist() == [1, 2]
        assert s.gains is None

    def test_all_equal_takes_smallest_ids(self):
        s = solvers.top_k_by_score(np.full(6, 0.4), k=3)
        assert s.seeds.tolist() == [0, 1, 2]

    def test_against_full_sort_oracle(self):
        rng = np.random.default_rng(88)
        for _ in range(1000):
            n = int(rng.integers(1, 30))
            scores = np.round(rng.random(n), 2)  # rounding forces ties
            k = int(rng.integers(1, n + 1))
            got = solvers.top_k_by_score(scores, k).seeds.tolist()
            want = sorted(range(n), key=lambda i: (-scores[i], i))[:k]
            assert got == want

    def test_k_validation(self):
        with pytest.raises(ValueError):
            solvers.top_k_by_score(np.array([0.5]), k=2)

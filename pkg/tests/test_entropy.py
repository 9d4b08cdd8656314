import math

import numpy as np
import pytest

from graphsampen import (
    DimensionMismatch,
    Graph,
    InsufficientPatterns,
    InvalidParameter,
    NoExtendedMatches,
    NoMatches,
    SampEnParams,
    build_path,
    chebyshev,
    correlation_mean,
    graph_embedding,
    logistic_map,
    permute,
    sampen_classic,
    sampen_graph,
    tolerance,
)

from conftest import brute_force_pair_counts, random_graph, two_pass_sd

# 6-node directed path, worked by hand: values (0,0,0,1,0,1), m=1, r=0.4,
# epsilon = 0.4*sqrt(2/9). Literal mode: B over nodes 0..4 -> 12/20, A over
# nodes 0..3 -> 2/12, value ln(18/5). Strict mode: B over 0..3 -> 6/12,
# value ln 3. Classical: A over the full 0..4 range -> 4/20, value ln 3.
HAND_SIGNAL = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 1.0])
HAND_PARAMS = SampEnParams(m=1, r=0.4)


class TestSampEnParams:
    def test_defaults(self):
        p = SampEnParams()
        assert (p.m, p.r, p.lag, p.mode, p.sd_convention) == (
            2, 0.2, 1, "literal", "population")

    @pytest.mark.parametrize("kwargs", [
        {"m": 0}, {"m": 1.5}, {"r": 0.0}, {"r": -1.0}, {"lag": 0},
        {"mode": "loose"}, {"sd_convention": "robust"},
    ])
    def test_validation(self, kwargs):
        with pytest.raises(InvalidParameter):
            SampEnParams(**kwargs)


class TestTolerance:
    def test_constant_signal(self):
        assert tolerance(np.full(10, 4.2), 0.2) == 0.0

    def test_two_level_population(self):
        assert tolerance([0.0, 0.0, 2.0, 2.0], 0.5) == pytest.approx(0.5, abs=0)

    def test_sample_convention(self):
        x = [1.0, 2.0, 3.0, 4.0]
        assert tolerance(x, 0.3, "sample") == pytest.approx(
            0.3 * two_pass_sd(x, "sample"), rel=1e-14)

    def test_against_two_pass_oracle(self):
        x = logistic_map(4.0, 0.37, 500)
        for conv in ("population", "sample"):
            assert tolerance(x, 0.2, conv) == pytest.approx(
                0.2 * two_pass_sd(x, conv), rel=1e-12)

    def test_invalid(self):
        with pytest.raises(InvalidParameter):
            tolerance([1.0, 2.0], 0.0)
        with pytest.raises(InvalidParameter):
            tolerance([], 0.2)
        with pytest.raises(InvalidParameter):
            tolerance([1.0], 0.2, "sample")


class TestChebyshev:
    def test_identical(self):
        assert chebyshev((1.0, 2.0), (1.0, 2.0)) == 0.0

    def test_max_component(self):
        assert chebyshev((0.0, 3.0), (1.0, 1.0)) == 2.0

    def test_random_pairs_against_loop(self, rng):
        for _ in range(50):
            a = rng.standard_normal(5)
            b = rng.standard_normal(5)
            ref = max(abs(u - v) for u, v in zip(a, b))
            assert chebyshev(a, b) == ref

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            chebyshev((1.0,), (1.0, 2.0))


class TestCorrelationMean:
    def test_identical_patterns_zero_epsilon(self):
        per, mean = correlation_mean(np.zeros((3, 2)) + 7.0, 0.0)
        assert np.array_equal(per, [1.0, 1.0, 1.0])
        assert mean == 1.0

    def test_spread_patterns_no_matches(self):
        per, mean = correlation_mean(np.array([[0.0], [10.0], [20.0]]), 0.5)
        assert np.array_equal(per, [0.0, 0.0, 0.0])
        assert mean == 0.0

    def test_inclusive_threshold(self):
        per, mean = correlation_mean(np.array([[0.0], [1.0]]), 1.0)
        assert mean == 1.0

    def test_against_brute_force(self, rng):
        for m in (1, 2, 4):
            pats = rng.standard_normal((50, m))
            eps = float(rng.uniform(0.2, 1.5))
            ref = brute_force_pair_counts(pats, eps)
            per, mean = correlation_mean(pats, eps)
            assert np.array_equal(per, ref / (len(pats) - 1))
            assert mean == pytest.approx(ref.sum() / (50 * 49), rel=1e-15)

    def test_chunking_matches_brute_force(self, rng, monkeypatch):
        # shrink the scratch budget so the kernel walks many tiny chunks
        import graphsampen.entropy as entropy_mod
        monkeypatch.setattr(entropy_mod, "_CHUNK_ELEMENTS", 1500)
        pats = rng.standard_normal((700, 3))
        eps = 0.8
        ref = brute_force_pair_counts(pats, eps)
        per, _ = correlation_mean(pats, eps)
        assert np.array_equal(per, ref / 699)

    def test_too_few(self):
        with pytest.raises(InsufficientPatterns):
            correlation_mean(np.zeros((1, 2)), 0.1)


class TestGraphEmbedding:
    def test_directed_path_reduces_to_windows(self, rng):
        g = build_path(9, directed=True)
        x = rng.standard_normal(9)
        emb = graph_embedding(g, x, m=3)
        assert list(emb.node_ids) == list(range(7))
        for row, i in zip(emb.patterns, emb.node_ids):
            assert np.array_equal(row, x[i:i + 3])

    def test_constant_signal(self):
        g = build_path(5, directed=False)
        emb = graph_embedding(g, np.full(5, 2.5), m=3)
        assert np.allclose(emb.patterns, 2.5, rtol=0, atol=0)

    def test_undirected_three_path(self):
        g = build_path(3, directed=False)
        x = np.array([1.0, 5.0, 9.0])
        emb = graph_embedding(g, x, m=3)
        assert list(emb.node_ids) == [0, 1, 2]
        assert np.allclose(emb.patterns[0], [1.0, 5.0, (1.0 + 9.0) / 2], rtol=1e-15)
        assert np.allclose(emb.patterns[1], [5.0, (1.0 + 9.0) / 2, 5.0], rtol=1e-15)

    def test_m1_is_identity(self):
        g = build_path(4, directed=True)
        x = np.array([3.0, 1.0, 4.0, 1.5])
        emb = graph_embedding(g, x, m=1)
        assert np.array_equal(emb.patterns.ravel(), x)

    def test_empty_eligible_set(self):
        # leaf -> centre star: nobody has two-hop reachability
        edges = [(leaf, 0, 1.0) for leaf in range(1, 4)]
        g = Graph.from_edges(4, edges, directed=True)
        with pytest.raises(InsufficientPatterns):
            graph_embedding(g, np.zeros(4), m=3)

    def test_lag_skips_hops(self):
        g = build_path(7, directed=True)
        x = np.arange(7.0)
        emb = graph_embedding(g, x, m=2, lag=3)
        assert list(emb.node_ids) == [0, 1, 2, 3]
        for row, i in zip(emb.patterns, emb.node_ids):
            assert np.array_equal(row, [x[i], x[i + 3]])


class TestSampEnGraphHandCase:
    def test_literal_mode(self):
        g = build_path(6, directed=True)
        res = sampen_graph(g, HAND_SIGNAL, HAND_PARAMS)
        assert res.b == pytest.approx(12 / 20, abs=0)
        assert res.a == pytest.approx(2 / 12, abs=0)
        assert res.value == pytest.approx(math.log(18 / 5), rel=1e-15)
        assert (res.n_templates_m, res.n_templates_m1) == (5, 4)
        assert res.epsilon == pytest.approx(0.4 * math.sqrt(2 / 9), rel=1e-15)

    def test_strict_mode(self):
        g = build_path(6, directed=True)
        res = sampen_graph(g, HAND_SIGNAL,
                           SampEnParams(m=1, r=0.4, mode="strict"))
        assert res.b == pytest.approx(6 / 12, abs=0)
        assert res.a == pytest.approx(2 / 12, abs=0)
        assert res.value == pytest.approx(math.log(3), rel=1e-15)
        assert (res.n_templates_m, res.n_templates_m1) == (4, 4)

    def test_classic_same_series(self):
        res = sampen_classic(HAND_SIGNAL, m=1, r=0.4)
        assert res.b == pytest.approx(12 / 20, abs=0)
        assert res.a == pytest.approx(4 / 20, abs=0)
        assert res.value == pytest.approx(math.log(3), rel=1e-14)
        assert (res.n_templates_m, res.n_templates_m1) == (5, 5)


class TestSampEnGraph:
    def test_constant_signal_both_modes(self):
        g = build_path(8, directed=True)
        for mode in ("literal", "strict"):
            res = sampen_graph(g, np.full(8, 1.23), SampEnParams(m=2, mode=mode))
            assert res.value == 0.0
            assert res.epsilon == 0.0

    def test_insufficient_patterns(self):
        g = build_path(3, directed=True)
        with pytest.raises(InsufficientPatterns):
            sampen_graph(g, np.array([1.0, 2.0, 3.0]), SampEnParams(m=1, r=0.2))

    def test_no_matches(self):
        g = build_path(8, directed=True)
        x = np.array([0.0, 10.0, 1.0, 11.0, 2.0, 12.0, 3.0, 13.0])
        with pytest.raises(NoMatches) as exc:
            sampen_graph(g, x, SampEnParams(m=2, r=1e-6))
        assert exc.value.epsilon == pytest.approx(1e-6 * np.std(x), rel=1e-12)

    def test_no_extended_matches_carries_b(self):
        g = build_path(5, directed=True)
        x = np.array([0.0, 0.05, 0.5, 0.55, 0.0])
        with pytest.raises(NoExtendedMatches) as exc:
            sampen_graph(g, x, SampEnParams(m=1, r=0.5))
        assert exc.value.b == pytest.approx(1 / 3, rel=1e-12)

    def test_params_type_checked(self):
        g = build_path(5)
        with pytest.raises(InvalidParameter):
            sampen_graph(g, np.zeros(5), {"m": 2, "r": 0.2})

    def test_path_reduction_shares_b_with_classic(self, rng):
        # identical m-template sets on a directed path; A differs by the
        # one boundary template the graph variant drops
        x = rng.standard_normal(120)
        g = build_path(120, directed=True)
        graph_res = sampen_graph(g, x, SampEnParams(m=2, r=0.25))
        classic_res = sampen_classic(x, m=2, r=0.25)
        assert graph_res.b == classic_res.b
        assert graph_res.n_templates_m == classic_res.n_templates_m
        assert graph_res.n_templates_m1 == classic_res.n_templates_m1 - 1
        assert abs(graph_res.value - classic_res.value) < 0.05


class TestSampEnClassic:
    def test_periodic_series_is_zero(self):
        x = np.tile([0.0, 1.0], 50)
        res = sampen_classic(x, m=2, r=0.2)
        assert res.value == 0.0
        assert res.a == res.b

    def test_chaotic_above_periodic_window(self):
        chaotic = sampen_classic(logistic_map(4.0, 0.37, 1000, burn_in=500))
        periodic3 = sampen_classic(logistic_map(3.83, 0.37, 1000, burn_in=500))
        assert chaotic.value > 0.4
        assert periodic3.value < 0.05

    def test_too_short(self):
        with pytest.raises(InsufficientPatterns):
            sampen_classic([1.0, 2.0, 3.0], m=2)


class TestInvariances:
    def _cases(self, seed, count, n_max=30):
        rng = np.random.default_rng(seed)
        for _ in range(count):
            g = random_graph(rng, n_max=n_max)
            x = rng.uniform(0.0, 1.0, g.n)
            m = int(rng.integers(1, 4))
            mode = "strict" if rng.integers(2) else "literal"
            yield rng, g, x, SampEnParams(m=m, r=0.25, mode=mode)

    @staticmethod
    def _defined(g, x, params):
        try:
            return sampen_graph(g, x, params)
        except Exception:
            return None

    def test_affine_invariance(self):
        checked = 0
        for rng, g, x, params in self._cases(101, 40):
            base = self._defined(g, x, params)
            if base is None:
                continue
            a = float(rng.uniform(0.5, 3.0)) * (-1 if rng.integers(2) else 1)
            b = float(rng.uniform(-5, 5))
            shifted = self._defined(g, a * x + b, params)
            assert shifted is not None
            assert abs(shifted.value - base.value) <= 1e-9
            checked += 1
        assert checked >= 20

    def test_relabeling_invariance(self):
        checked = 0
        for rng, g, x, params in self._cases(202, 40):
            base = self._defined(g, x, params)
            if base is None:
                continue
            g2, x2 = permute(g, x, rng.permutation(g.n))
            res2 = self._defined(g2, x2, params)
            assert res2 is not None
            assert abs(res2.value - base.value) <= 1e-12
            checked += 1
        assert checked >= 20

    def test_monotone_in_r(self):
        for rng, g, x, params in self._cases(303, 30):
            rs = sorted(rng.uniform(0.05, 0.6, 3))
            prev_a = prev_b = -1.0
            for r in rs:
                try:
                    res = sampen_graph(g, x, SampEnParams(
                        m=params.m, r=float(r), mode=params.mode))
                    a, b = res.a, res.b
                except NoMatches:
                    a = b = 0.0
                except NoExtendedMatches as exc:
                    a, b = 0.0, exc.b
                except InsufficientPatterns:
                    break
                assert b >= prev_b
                assert a >= prev_a
                prev_a, prev_b = a, b

    def test_strict_mode_a_below_b(self):
        checked = 0
        for rng, g, x, _ in self._cases(404, 40):
            try:
                res = sampen_graph(g, x, SampEnParams(m=2, r=0.3, mode="strict"))
            except Exception:
                continue
            assert res.a <= res.b
            assert res.value >= 0.0
            checked += 1
        assert checked >= 15

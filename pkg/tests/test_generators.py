import numpy as np
import pytest

from graphsampen import (
    DegenerateDegree,
    Graph,
    InvalidParameter,
    SampEnParams,
    build_path,
    er_graph,
    er_p_for_degree,
    heat_smooth,
    logistic_map,
    mix2d,
    piecewise_signal,
    sampen_classic,
    smooth_wgn,
    uniform_signal,
    ws_graph,
)

from conftest import edge_set


class TestLogisticMap:
    def test_closed_form_first_steps(self):
        assert np.array_equal(logistic_map(4.0, 0.5, 5), [0.5, 1.0, 0.0, 0.0, 0.0])

    def test_fixed_point_at_rho2(self):
        series = logistic_map(2.0, 0.1337, 200)
        assert series[-1] == pytest.approx(0.5, abs=1e-12)

    def test_rho32_period_two(self):
        series = logistic_map(3.2, 0.4, 400, burn_in=500)
        assert np.max(np.abs(series[:-2] - series[2:])) < 1e-12
        assert sampen_classic(series, m=2, r=0.2).value < 0.05

    def test_burn_in_shifts(self):
        full = logistic_map(3.7, 0.2, 30)
        assert np.array_equal(logistic_map(3.7, 0.2, 20, burn_in=10), full[10:])

    def test_stays_in_unit_interval(self, rng):
        for _ in range(10):
            rho = float(rng.uniform(0.1, 4.0))
            series = logistic_map(rho, float(rng.uniform(0.01, 0.99)), 500)
            assert series.min() >= 0.0 and series.max() <= 1.0

    @pytest.mark.parametrize("kwargs", [
        {"rho": 4.2, "x0": 0.5}, {"rho": 0.0, "x0": 0.5},
        {"rho": 3.0, "x0": 0.0}, {"rho": 3.0, "x0": 1.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParameter):
            logistic_map(n=10, **kwargs)


class TestMix2d:
    def test_p_zero_is_pure_sine(self):
        img = mix2d(24, 36, 0.0, seed=1)
        i = np.arange(24)[:, None]
        j = np.arange(36)[None, :]
        expected = np.sin(2 * np.pi * i / 12) + np.sin(2 * np.pi * j / 12)
        assert np.array_equal(img.pixels, expected)

    def test_p_one_unit_variance(self):
        img = mix2d(120, 120, 1.0, seed=2)
        assert img.pixels.var() == pytest.approx(1.0, abs=0.05)
        assert np.abs(img.pixels).max() <= np.sqrt(3.0)

    def test_translation_by_period(self):
        img = mix2d(36, 36, 0.0, seed=3).pixels
        assert np.allclose(img[:-12, :], img[12:, :], atol=1e-12)
        assert np.allclose(img[:, :-12], img[:, 12:], atol=1e-12)

    def test_determinism(self):
        a = mix2d(15, 17, 0.4, seed=99).pixels
        b = mix2d(15, 17, 0.4, seed=99).pixels
        assert np.array_equal(a, b)

    def test_invalid_p(self):
        with pytest.raises(InvalidParameter):
            mix2d(10, 10, 1.5, seed=0)


class TestErGraph:
    def test_p_for_target_degree(self):
        assert er_p_for_degree(3, 31) == pytest.approx(0.1, abs=0)

    def test_p_for_degree_bounds(self):
        with pytest.raises(InvalidParameter):
            er_p_for_degree(31, 31)
        with pytest.raises(InvalidParameter):
            er_p_for_degree(-1, 31)

    def test_complete_digraph(self):
        g = er_graph(4, 1.0, directed=True, seed=0)
        assert g.adjacency.nnz == 12

    def test_complete_undirected(self):
        g = er_graph(4, 1.0, directed=False, seed=0)
        assert not g.directed
        assert g.adjacency.nnz == 12  # 6 pairs, both directions stored

    def test_determinism(self):
        assert edge_set(er_graph(40, 0.1, seed=7)) == edge_set(er_graph(40, 0.1, seed=7))

    def test_edge_count_statistics(self):
        # directed n(n-1)p edges on average; empirical mean over 200 seeds
        # within 5 standard errors
        n, p, reps = 50, 0.1, 200
        counts = [er_graph(n, p, directed=True, seed=(123, k)).adjacency.nnz
                  for k in range(reps)]
        expected = n * (n - 1) * p
        sigma = np.sqrt(n * (n - 1) * p * (1 - p))
        assert abs(np.mean(counts) - expected) <= 5 * sigma / np.sqrt(reps)


class TestWsGraph:
    def test_beta_zero_regular_ring(self):
        g = ws_graph(20, 3, 0.0, seed=0)
        assert not g.directed
        assert np.array_equal(g.out_degrees(), np.full(20, 6.0))

    def test_edge_count_preserved(self):
        for beta in (0.0, 0.5, 1.0):
            g = ws_graph(100, 2, beta, seed=4)
            assert g.adjacency.nnz == 2 * 100 * 2  # n*k undirected edges

    def test_beta_one_not_regular(self):
        g = ws_graph(200, 1, 1.0, seed=5)
        assert g.out_degrees().std() > 0

    def test_degrees_at_least_k(self):
        g = ws_graph(120, 2, 1.0, seed=6)
        assert g.out_degrees().min() >= 2

    def test_determinism(self):
        assert edge_set(ws_graph(60, 2, 0.3, seed=11)) == edge_set(
            ws_graph(60, 2, 0.3, seed=11))

    def test_invalid(self):
        with pytest.raises(InvalidParameter):
            ws_graph(4, 2, 0.5)
        with pytest.raises(InvalidParameter):
            ws_graph(10, 1, 1.5)


class TestHeatSmoothing:
    def test_constant_fixed_point_on_regular_graph(self):
        g = ws_graph(30, 2, 0.0, seed=0)
        out = heat_smooth(g, np.full(30, 5.0), tau0=0.3, iters=30)
        assert np.allclose(out, 5.0, atol=1e-12)

    def test_two_node_hand_case(self):
        g = build_path(2, directed=False)
        out = heat_smooth(g, np.array([1.0, -1.0]), tau0=0.01, iters=1)
        assert out == pytest.approx([0.98, -0.98], rel=1e-15)

    def test_variance_contracts(self):
        for k in range(20):
            g = ws_graph(500, 2, 0.1, seed=(77, k))
            n0 = np.random.default_rng((78, k)).standard_normal(500)
            out = heat_smooth(g, n0, tau0=0.3, iters=30)
            assert out.var() < n0.var()

    def test_smooth_wgn_determinism(self):
        g = ws_graph(50, 1, 0.2, seed=1)
        assert np.array_equal(smooth_wgn(g, seed=9), smooth_wgn(g, seed=9))

    def test_isolated_node_rejected(self):
        g = Graph.from_edges(3, [(0, 1, 1.0), (1, 0, 1.0)], directed=False)
        with pytest.raises(DegenerateDegree):
            smooth_wgn(g, seed=0)

    def test_directed_rejected(self):
        with pytest.raises(InvalidParameter):
            heat_smooth(build_path(5, directed=True), np.zeros(5))


class TestPiecewiseSignal:
    def test_exact_construction_n8(self):
        assert np.array_equal(
            piecewise_signal(8, sigma=0.0),
            [1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0])

    def test_remainder_goes_to_last_block(self):
        x = piecewise_signal(10, sigma=0.0)
        assert np.array_equal(x, [1, 1, -1, -1, 1, 1, -1, -1, -1, -1])

    def test_mean_near_zero(self):
        for k in range(5):
            x = piecewise_signal(500, sigma=0.1, seed=(31, k))
            assert abs(x.mean()) <= 3 * 0.1 / np.sqrt(500)

    def test_too_small(self):
        with pytest.raises(InvalidParameter):
            piecewise_signal(7)


class TestUniformSignal:
    def test_support(self):
        x = uniform_signal(1000, 0.01, 0.10, seed=3)
        assert x.min() >= 0.01 and x.max() <= 0.10

    def test_degenerate_range_rejected(self):
        with pytest.raises(InvalidParameter):
            uniform_signal(5, 0.1, 0.1)

    def test_determinism(self):
        assert np.array_equal(uniform_signal(20, 0, 1, seed=5),
                              uniform_signal(20, 0, 1, seed=5))

    def test_tiny_range_stays_in_support(self):
        x = uniform_signal(5, 0.0, 1e-12, seed=8)
        assert x.min() >= 0.0 and x.max() <= 1e-12

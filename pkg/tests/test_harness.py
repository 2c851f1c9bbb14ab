import math

import numpy as np
import pytest

from fkgs.harness import (
    RunConfig,
    _orders,
    bench,
    build_grid,
    closed_form_error,
    initial_state,
    invariant_series,
    run,
    run_with_diagnostics,
    spatial_error_table,
    sup_error,
    temporal_error_table,
)
from fkgs.model import InitialData, InputError, State
from fkgs.spectral import ConfigurationError, OrderDomainError, make_grid


class TestRunConfig:
    def test_presets(self):
        c = RunConfig("ex42")
        g = build_grid(c)
        assert g.n == (16, 16) and g.dim == 2
        assert c.alpha_value == 2.0
        assert build_grid(RunConfig("ex41")).n == (128,)

    def test_overrides(self):
        c = RunConfig("ex41", n=32, box=((-10, 10),), alpha=1.5)
        g = build_grid(c)
        assert g.n == (32,) and g.box == ((-10.0, 10.0),)
        assert c.alpha_value == 1.5 and c.beta_value == 2.0

    @pytest.mark.parametrize("kw, exc", [({"example": "ex99"}, ConfigurationError),
                                         ({"scheme": "euler"}, ValueError),
                                         ({"alpha": 0.5}, OrderDomainError),
                                         ({"tau": -1.0}, InputError),
                                         ({"sample_every": 0}, ConfigurationError),
                                         ({"u0_variant": "guess"}, ConfigurationError),
                                         ({"example": "custom"}, ConfigurationError)])
    def test_invalid(self, kw, exc):
        with pytest.raises(exc):
            RunConfig(**kw)

    def test_custom(self):
        data = InitialData(lambda x: np.exp(-(x**2)) + 0j, lambda x: 0 * x, lambda x: 0 * x)
        c = RunConfig("custom", alpha=1.5, beta=1.5, box=((-5, 5),), n=32, initial_data=data, t_final=0.1, tau=0.05)
        s = run(c)
        assert s.t == pytest.approx(0.1)

    def test_to_dict(self):
        d = RunConfig("ex41", n=64).to_dict()
        assert d["n"] == [64] and d["box"] == [[-20.0, 20.0]]
        assert d["u0_variant"] == "exact"
        assert "initial_data" not in d


class TestSupError:
    def test_nested_restriction(self):
        fine = make_grid((0, 1), 16)
        coarse = make_grid((0, 1), 8)
        (xf,) = fine.nodes()
        (xc,) = coarse.nodes()
        f = State(fine, np.sin(xf), 0 * xf, np.cos(xf), xf)
        c = State(coarse, np.sin(xc), 0 * xc, np.cos(xc), xc + 0.5)
        assert sup_error(c, f) == pytest.approx(0.5)

    def test_rejects_non_nested(self):
        a = State.zeros(make_grid((0, 1), 8))
        with pytest.raises(ConfigurationError):
            sup_error(a, State.zeros(make_grid((0, 1), 12)))
        with pytest.raises(ConfigurationError):
            sup_error(a, State.zeros(make_grid((0, 2), 16)))


class TestOrders:
    def test_ratio_four_is_order_two(self):
        orders = _orders([0.1, 0.05, 0.025], [4e-3, 1e-3, 2.5e-4])
        assert orders[0] is None
        assert orders[1:] == pytest.approx([2.0, 2.0], rel=1e-14)

    def test_zero_error_gives_nan(self):
        assert math.isnan(_orders([1, 0.5], [1.0, 0.0])[1])

    def test_temporal_table_shape(self):
        cfg = RunConfig("ex41", "fpavf-c", 1.7, 1.7, n=32, t_final=0.2, tol=1e-14)
        table = temporal_error_table(cfg, [0.05, 0.025, 0.0125])
        assert [r.param for r in table.rows] == [0.05, 0.025]
        assert table.rows[0].order is None
        assert 1.8 <= table.orders[0] <= 2.2

    def test_temporal_table_first_order(self):
        cfg = RunConfig("ex41", "fpavf", 1.7, 1.7, n=64, t_final=0.5, tol=1e-14)
        table = temporal_error_table(cfg, [0.02, 0.01, 0.005, 0.0025])
        assert np.all((table.orders > 0.8) & (table.orders < 1.2))

    @pytest.mark.parametrize("taus", [[0.1], [0.1, 0.04], [0.05, 0.1]])
    def test_rejects_non_dyadic(self, taus):
        with pytest.raises(ConfigurationError):
            temporal_error_table(RunConfig("ex41"), taus)

    def test_rejects_non_doubling(self):
        with pytest.raises(ConfigurationError):
            spatial_error_table(RunConfig("ex41"), [8, 24])

    def test_failure_carries_context(self):
        cfg = RunConfig("ex41", "fpavf", n=32, t_final=0.1, max_iter=1)
        with pytest.raises(RuntimeError, match="tau=0.05"):
            temporal_error_table(cfg, [0.05, 0.025])

    def test_spatial_table_spectral(self):
        cfg = RunConfig("ex41", "fpavf-c", 2.0, 2.0, tau=1e-3, t_final=0.05, tol=1e-14)
        table = spatial_error_table(cfg, [16, 32, 64, 128])
        e = table.errors
        assert np.all(np.diff(e) < 0)
        assert np.all(np.diff(table.orders) > 0)

    def test_band_limited_data_hits_floor(self):
        cfg = RunConfig("ex42", "fpavf-c", 1.5, 1.8, tau=0.01, t_final=0.1, tol=1e-14)
        table = spatial_error_table(cfg, [8, 16])
        assert table.errors[0] < 1e-12


class TestInvariantSeries:
    def test_rows(self):
        cfg = RunConfig("ex41", "fpavf-c", 1.4, 1.4, n=64, tau=0.01, t_final=0.55, sample_every=5)
        rows = invariant_series(cfg)
        assert rows[0].rm == 0 and rows[0].rh == 0 and rows[0].step == 0
        assert [r.step for r in rows] == list(range(0, 60, 5))
        np.testing.assert_allclose(np.diff([r.t for r in rows]), 0.05, rtol=0, atol=1e-14)
        assert max(r.rm for r in rows) < 1e-12 and max(r.rh for r in rows) < 1e-12
        assert all(r.iters > 0 for r in rows[1:])

    def test_keep_final(self):
        cfg = RunConfig("ex41", "fpavf", n=32, tau=0.01, t_final=0.57, sample_every=5)
        assert invariant_series(cfg)[-1].step == 55
        rows, final = run_with_diagnostics(cfg, keep_final=True)
        assert rows[-1].step == 57
        assert cfg.t_final - cfg.tau <= rows[-1].t <= cfg.t_final
        assert final.t == rows[-1].t

    def test_favf_loses_mass(self):
        cfg = RunConfig("ex41", "favf", 1.7, 1.7, n=64, tau=0.01, t_final=0.5, sample_every=10)
        rows = invariant_series(cfg)
        assert max(r.rh for r in rows) < 1e-10 < max(r.rm for r in rows)


class TestClosedForm:
    def test_soliton_second_order(self):
        errs = [closed_form_error(RunConfig("ex41", "fpavf-c", tau=t, t_final=0.5, tol=1e-14)) for t in (0.02, 0.01)]
        assert 3.5 < errs[0] / errs[1] < 4.5

    def test_fractional_soliton_rejected(self):
        with pytest.raises(InputError):
            closed_form_error(RunConfig("ex41", alpha=1.5, tau=0.1, t_final=0.1))

    def test_plane_wave(self):
        cfg = RunConfig("ex42", "fpavf-c", tau=1e-3, t_final=0.1)
        assert closed_form_error(cfg) < 1e-12

    def test_no_closed_form(self):
        with pytest.raises(InputError):
            closed_form_error(RunConfig("ex43", n=8), State.zeros(make_grid([(-10, 10)] * 2, 8)))


def test_bench_rows():
    cfg = RunConfig("ex41", n=32, tau=0.01, t_final=0.1)
    rows = bench(cfg, ["fpavf", "favf"], repeats=2)
    assert [r.scheme for r in rows] == ["fpavf", "favf"]
    assert all(r.steps == 10 and r.wall_time > 0 for r in rows)
    assert rows[1].iterations >= rows[0].iterations


def test_initial_state_variants():
    a = initial_state(RunConfig("ex41", r=0.0))
    b = initial_state(RunConfig("ex41", r=0.0, u0_variant="printed"))
    assert a.u.max() == pytest.approx(0.75, rel=1e-3)
    assert np.all(b.u == 0)

import numpy as np
import pytest
from itertools import combinations

from xyquench.model import ChainParams, dispersion, momentum_grid
from xyquench import measures, oracle, spectral
from xyquench.quench import QuenchProtocol, equilibrium_correlators
from xyquench.steady import steady_single


def test_g0_no_quench_is_one():
    assert spectral.g0(0.7, 0.7, 0.5, 128) == 1.0


def test_g0_cross_phase_quench_vanishes_at_large_n():
    assert spectral.g0(0.5, 2.0, 0.5, 2000) < 1e-12


def test_g0_matches_ed_overlap(ed8):
    ov = abs(np.vdot(ed8.ground_state(2.0), ed8.ground_state(0.5)))
    assert spectral.g0(0.5, 2.0, 0.5, 8) == pytest.approx(ov, abs=1e-8)


def test_sector_probabilities_sum_to_one():
    for n in (8, 12, 16):
        probs = spectral.sector_probabilities(0.5, 2.0, 0.5, n)
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert len(probs) == 2 ** (n // 2)


def test_sector_enumeration_cap():
    with pytest.raises(ValueError):
        spectral.sector_probabilities(0.5, 2.0, 0.5, 50)
    with pytest.raises(ValueError):
        spectral.steady_concurrence_decomposition(0.5, 2.0, 0.5, 50)


def test_no_quench_sector_maxima_vanish():
    for s in spectral.g_max_per_sector(0.7, 0.7, 0.5, 16):
        assert s.g_abs == 0.0


@pytest.mark.parametrize("h_i,h_f", [(0.5, 2.0), (2.0, 0.5), (0.9, 1.1)])
def test_greedy_argmax_equals_exhaustive(h_i, h_f):
    N = 16
    nm = N // 2
    _, _, phi = spectral._quench_angles(h_i, h_f, 0.5, N)
    sectors = spectral.g_max_per_sector(h_i, h_f, 0.5, N)
    for m in range(1, nm + 1):
        best = max(
            np.prod(np.abs(np.sin(phi))[list(combo)])
            * np.prod(np.abs(np.cos(phi))[[i for i in range(nm) if i not in combo]])
            for combo in combinations(range(nm), m)
        )
        assert sectors[m - 1].g_abs == pytest.approx(best, abs=1e-14)
        assert sectors[m - 1].n_f == 2 * m


def test_excited_state_concurrence_matches_ed(ed8):
    k = momentum_grid(8)
    _, _, eps = dispersion(ChainParams(h=2.0, delta=0.5, N=8), k)
    w, V = ed8.eigensystem(2.0)
    e0 = -eps.sum()
    for idx in range(4):
        j = int(np.argmin(np.abs(w - (e0 + 2 * eps[idx]))))
        assert abs(w[j] - (e0 + 2 * eps[idx])) < 1e-10
        rho_ed = oracle.reduced_density_two_site(V[:, j], 0, 8)
        c_ff = spectral.excited_state_concurrence([idx], 2.0, 0.5, 8)
        assert c_ff == pytest.approx(oracle.wootters_concurrence(rho_ed), abs=1e-8)


def test_empty_sector_gives_equilibrium_concurrence():
    c_eq = measures.concurrence(
        measures.assemble_xstate(equilibrium_correlators(ChainParams(h=2.0, delta=0.5, N=64)))
    )
    mask = np.zeros(32, dtype=bool)
    assert spectral.excited_state_concurrence(mask, 2.0, 0.5, 64) == pytest.approx(c_eq, abs=1e-12)


def test_decomposition_reduces_to_equilibrium_at_zero_quench():
    c_eq = measures.concurrence(
        measures.assemble_xstate(equilibrium_correlators(ChainParams(h=2.0, delta=0.5, N=8)))
    )
    assert spectral.steady_concurrence_decomposition(2.0, 2.0, 0.5, 8) == pytest.approx(c_eq, abs=1e-10)


def test_decomposition_differs_from_direct_steady_value(ed8, capsys):
    dec = spectral.steady_concurrence_decomposition(0.5, 2.0, 0.5, 8)
    direct = measures.concurrence(
        measures.assemble_xstate(steady_single(QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=8)))
    )
    print(f"sector decomposition = {dec:.6f}, direct steady concurrence = {direct:.6f}, "
          f"difference = {dec - direct:+.6f}")
    assert 0.0 <= dec <= 1.0  # the two values need not agree; both are reported


def test_loschmidt_no_quench():
    ls = spectral.loschmidt_steady_single(0.7, 0.7, 0.5, 64)
    assert ls.lbar == 1.0
    assert ls.rate == 0.0


def test_loschmidt_product_equals_enumeration():
    for n in (8, 12, 16):
        probs = spectral.sector_probabilities(0.5, 2.0, 0.5, n)
        ls = spectral.loschmidt_steady_single(0.5, 2.0, 0.5, n)
        assert ls.lbar == pytest.approx(np.sum(probs**2), abs=1e-12)


def test_loschmidt_single_matches_ed(ed8):
    gs = ed8.ground_state(0.5)
    w, V = ed8.eigensystem(2.0)
    lbar_ed = oracle.diagonal_ensemble_loschmidt(w, V, gs, gs)
    assert spectral.loschmidt_steady_single(0.5, 2.0, 0.5, 8).lbar == pytest.approx(lbar_ed, abs=1e-8)


def test_loschmidt_double_matches_ed(ed8):
    proto = QuenchProtocol(h_i=0.8, h_m=1.5, h_f=5.0, T=2.0, delta=0.5, N=8)
    w, V = ed8.eigensystem(5.0)
    lbar_ed = oracle.diagonal_ensemble_loschmidt(w, V, ed8.ground_state(0.8), ed8.state_at(proto, 2.0))
    lbar_ff = spectral.loschmidt_steady_double(0.8, 1.5, 5.0, 2.0, 0.5, 8).lbar
    assert lbar_ff == pytest.approx(lbar_ed, abs=1e-8)


def test_loschmidt_double_degenerate_reductions():
    single = spectral.loschmidt_steady_single(0.5, 2.0, 0.5, 64)
    via_middle_i = spectral.loschmidt_steady_double(0.5, 0.5, 2.0, 1.3, 0.5, 64)
    via_middle_f = spectral.loschmidt_steady_double(0.5, 2.0, 2.0, 1.3, 0.5, 64)
    assert via_middle_i.lbar == pytest.approx(single.lbar, abs=1e-14)
    assert via_middle_f.lbar == pytest.approx(single.lbar, abs=1e-14)


def test_rate_survives_lbar_underflow():
    ls = spectral.loschmidt_steady_single(0.5, 2.0, 0.5, 10000)
    assert ls.lbar == 0.0  # exp(-N * rate) underflows at this size
    assert 0.0 < ls.rate < 1.0
    assert np.isfinite(ls.rate)


def test_finite_time_echo_matches_ed(ed8):
    proto = QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=8)
    gs = ed8.ground_state(0.5)
    ts = np.linspace(0.1, 4.0, 9)
    rates = spectral.loschmidt_echo_rate(proto, ts)
    for t, r in zip(ts, rates):
        le = abs(np.vdot(gs, ed8.state_at(proto, float(t)))) ** 2
        assert r == pytest.approx(-np.log(le) / 8, abs=1e-8)


def test_dqpt_no_quench_has_no_critical_mode():
    assert spectral.dqpt_critical_times(0.7, 0.7, 0.5, 256) == []


def test_dqpt_no_crossing_no_critical_mode():
    assert spectral.dqpt_critical_times(0.5, 0.8, 0.5, 256) == []


def test_dqpt_crossing_quench():
    res = spectral.dqpt_critical_times(0.5, 2.0, 0.5, 2000)
    assert len(res) == 1
    ct = res[0]
    assert not ct.divergent
    # k* solves cos(2 Phi) = 0 on the continuum
    from xyquench.model import bogoliubov_angle

    phi = bogoliubov_angle(ChainParams(h=2.0, delta=0.5, N=2000), ct.k_star) - bogoliubov_angle(
        ChainParams(h=0.5, delta=0.5, N=2000), ct.k_star
    )
    assert np.cos(2 * phi) == pytest.approx(0.0, abs=1e-10)
    assert ct.times[0] == pytest.approx(0.5 * ct.t_star)
    assert abs(ct.k_grid - ct.k_star) <= np.pi / 2000


def test_dqpt_quench_onto_critical_point_is_divergent():
    res = spectral.dqpt_critical_times(0.5, 1.0, 0.5, 2000)
    assert len(res) == 1
    assert res[0].divergent
    assert res[0].t_star == np.inf
    assert res[0].k_star == pytest.approx(np.pi)


def test_dqpt_double_reduces_to_single_when_middle_is_initial():
    s = spectral.dqpt_critical_times(0.5, 2.0, 0.5, 1000)[0]
    d = spectral.dqpt_critical_times(0.5, 2.0, 0.5, 1000, h_m=0.5, T=1.7)[0]
    assert d.k_star == pytest.approx(s.k_star, abs=1e-9)
    assert d.phase_shift == pytest.approx(0.0, abs=1e-10)
    assert d.times[0] == pytest.approx(s.times[0], abs=1e-9)


def test_dqpt_double_needs_spending_time():
    with pytest.raises(ValueError):
        spectral.dqpt_critical_times(0.5, 2.0, 0.5, 256, h_m=1.0)


def test_cusp_location_matches_rate_function_maximum():
    ct = spectral.dqpt_critical_times(0.5, 2.0, 0.5, 4000)[0]
    ts = np.linspace(0.5 * ct.times[0], 1.5 * ct.times[0], 4001)
    rates = spectral.loschmidt_echo_rate(QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=4000), ts)
    assert ts[np.argmax(rates)] == pytest.approx(ct.times[0], abs=2e-3)

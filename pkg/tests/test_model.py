import numpy as np
import pytest

from xyquench.model import (
    ChainParams,
    bogoliubov_angle,
    dispersion,
    ground_state_energy,
    mode_data,
    momentum_grid,
)
from xyquench.oracle import ground_state_energy_ed


def test_momentum_grid_n4():
    assert np.allclose(momentum_grid(4), [np.pi / 4, 3 * np.pi / 4])


def test_momentum_grid_excludes_pi():
    k = momentum_grid(8)
    assert len(k) == 4
    assert np.all(np.diff(k) > 0)
    assert k[-1] == pytest.approx(7 * np.pi / 8)
    assert np.all((k > 0) & (k < np.pi))


@pytest.mark.parametrize("bad", [3, 7, 2, 0, -4])
def test_momentum_grid_rejects_bad_sizes(bad):
    with pytest.raises(ValueError):
        momentum_grid(bad)


def test_chain_params_validation():
    with pytest.raises(ValueError):
        ChainParams(h=1.0, N=5)
    with pytest.raises(ValueError):
        ChainParams(h=1.0, J=0.0)
    with pytest.raises(ValueError):
        ChainParams(h=1.0, delta=1.5)
    with pytest.raises(ValueError):
        ChainParams(h=np.inf)


def test_dispersion_gap_closes_at_critical_field():
    p = ChainParams(h=1.0, delta=0.5, N=100)
    a, b, eps = dispersion(p, np.pi - 1e-9)
    assert abs(a) < 2e-9 and abs(b) < 1e-8 and eps < 1e-8


def test_dispersion_flat_band_ising_zero_field():
    p = ChainParams(h=0.0, delta=1.0, N=100)
    _, _, eps = dispersion(p, momentum_grid(100))
    assert np.allclose(eps, 1.0)


def test_dispersion_direct_point():
    p = ChainParams(h=0.5, delta=0.5, N=8)
    a, b, eps = dispersion(p, np.pi / 2)
    assert a == pytest.approx(-0.5)
    assert b == pytest.approx(0.5)
    assert eps == pytest.approx(np.sqrt(0.5))


def test_bogoliubov_branch_consistency():
    # A tan(2 theta) + B = 0 wherever cos(2 theta) != 0, and the +eps branch
    # satisfies cos(2 theta) = A/eps, sin(2 theta) = -B/eps
    for h in (0.0, 0.3, 0.866, 1.0, 2.5, 5.0):
        p = ChainParams(h=h, delta=0.5, N=64)
        md = mode_data(p)
        assert np.allclose(np.cos(2 * md.theta_k) * md.eps_k, md.a_k, atol=1e-12)
        assert np.allclose(np.sin(2 * md.theta_k) * md.eps_k, -md.b_k, atol=1e-12)
        c2 = np.cos(2 * md.theta_k)
        mask = np.abs(c2) > 1e-8
        assert np.allclose(
            (md.a_k * np.tan(2 * md.theta_k) + md.b_k)[mask], 0.0, atol=1e-9
        )


def test_bogoliubov_angle_at_pure_pairing_point():
    # A = 0, B = 1 at k = pi/2 for h = 0, delta = 1: the +eps branch puts
    # 2 theta on -pi/2 (sign fixed by the ED equivalence battery)
    p = ChainParams(h=0.0, delta=1.0, N=8)
    assert bogoliubov_angle(p, np.pi / 2) == pytest.approx(-np.pi / 4)


def test_bogoliubov_degenerate_mode_convention():
    p = ChainParams(h=1.0, delta=0.0, N=8, J=1.0)
    # A = B = 0 exactly at k = pi for h = J; arctan2(0, 0) -> 0 by convention
    assert bogoliubov_angle(p, np.pi) == 0.0


def test_deep_field_modes_fully_occupied():
    # h >> J: every mode of the polarized ground state is occupied
    p = ChainParams(h=5.0, delta=0.5, N=64)
    md = mode_data(p)
    assert np.all(np.sin(md.theta_k) ** 2 > 0.9)


def test_no_quench_angle_difference_vanishes():
    p = ChainParams(h=0.7, delta=0.5, N=32)
    k = momentum_grid(32)
    assert np.allclose(bogoliubov_angle(p, k) - bogoliubov_angle(p, k), 0.0)


def test_ground_energy_flat_band():
    assert ground_state_energy(ChainParams(h=0.0, delta=1.0, N=8)) == pytest.approx(-4.0)


def test_eps_nonnegative_everywhere():
    for h in (0.0, 0.5, 1.0, 3.0):
        p = ChainParams(h=h, delta=0.5, N=256)
        _, _, eps = dispersion(p, momentum_grid(256))
        assert np.all(eps > 0)


@pytest.mark.parametrize("h", [0.25, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("delta", [0.5, 1.0])
def test_ground_energy_matches_ed(h, delta):
    p = ChainParams(h=h, delta=delta, N=8)
    assert ground_state_energy(p) == pytest.approx(ground_state_energy_ed(p), abs=1e-10)


def test_ground_energy_matches_ed_n10():
    p = ChainParams(h=2.0, delta=0.5, N=10)
    assert ground_state_energy(p) == pytest.approx(ground_state_energy_ed(p), abs=1e-10)

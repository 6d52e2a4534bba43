import numpy as np
import pytest

from xyquench.model import ChainParams
from xyquench.quench import QuenchProtocol, equilibrium_correlators
from xyquench import steady as steady_mod
from xyquench.steady import (
    numeric_time_average,
    steady_double,
    steady_double_dephased_middle,
    steady_single,
)


def test_no_quench_steady_equals_equilibrium():
    s = steady_single(QuenchProtocol(h_i=0.7, h_f=0.7, delta=0.5, N=200))
    e = equilibrium_correlators(ChainParams(h=0.7, delta=0.5, N=200))
    assert s.G == pytest.approx(e.G, abs=1e-12)
    assert s.Z == pytest.approx(e.Z, abs=1e-12)
    assert s.f == pytest.approx(e.f, abs=1e-12)


def test_middle_equals_final_reduces_exactly():
    sd = steady_double(QuenchProtocol(h_i=0.5, h_f=2.0, h_m=2.0, T=3.7, delta=0.5, N=200))
    ss = steady_single(QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=200))
    assert sd.G == pytest.approx(ss.G, abs=1e-12)
    assert sd.Z == pytest.approx(ss.Z, abs=1e-12)
    assert sd.f == pytest.approx(ss.f, abs=1e-12)


def test_zero_spending_time_reduces_exactly():
    sd = steady_double(QuenchProtocol(h_i=0.5, h_f=2.0, h_m=1.3, T=0.0, delta=0.5, N=200))
    ss = steady_single(QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=200))
    assert sd.G == pytest.approx(ss.G, abs=1e-12)
    assert sd.Z == pytest.approx(ss.Z, abs=1e-12)
    assert sd.f == pytest.approx(ss.f, abs=1e-12)


def test_middle_equals_initial_dephased_reduces_exactly():
    sd = steady_double_dephased_middle(
        QuenchProtocol(h_i=0.5, h_f=2.0, h_m=0.5, T=1.0, delta=0.5, N=200)
    )
    ss = steady_single(QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=200))
    assert sd.G == pytest.approx(ss.G, abs=1e-12)
    assert sd.Z == pytest.approx(ss.Z, abs=1e-12)
    assert sd.f == pytest.approx(ss.f, abs=1e-12)


def test_single_quench_averaged_pairing_is_real():
    s = steady_single(QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=500))
    assert abs(s.f.imag) < 1e-12
    assert abs(s.Z.imag) < 1e-12


def test_numeric_average_constant_integrand_is_exact():
    proto = QuenchProtocol(h_i=0.7, h_f=0.7, delta=0.5, N=64)
    num = numeric_time_average(proto, tau=50.0, samples=2000)
    eq = equilibrium_correlators(ChainParams(h=0.7, delta=0.5, N=64))
    assert num.G == pytest.approx(eq.G, abs=1e-13)
    assert num.f == pytest.approx(eq.f, abs=1e-13)


def test_numeric_average_converges_as_one_over_tau():
    proto = QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=200)
    an = steady_single(proto)

    def dev(tau, samples):
        nm = numeric_time_average(proto, tau=tau, samples=samples)
        return max(abs(an.G - nm.G), abs(an.Z - nm.Z), abs(an.f - nm.f))

    d1, d2 = dev(400.0, 20_000), dev(800.0, 40_000)
    assert d1 < 1e-3
    assert 1.5 < d1 / d2 < 2.5


def test_numeric_average_double_quench():
    proto = QuenchProtocol(h_i=0.8, h_f=5.0, h_m=1.5, T=2.0, delta=0.5, N=200)
    an = steady_double(proto)
    nm = numeric_time_average(proto, tau=500.0, samples=25_000)
    assert abs(an.G - nm.G) < 1e-3
    assert abs(an.Z - nm.Z) < 1e-3
    assert abs(an.f - nm.f) < 1e-3


def test_dephased_middle_equals_spending_time_average():
    kwargs = dict(h_i=0.8, h_f=5.0, h_m=0.5, delta=0.5, N=200)
    target = steady_double_dephased_middle(QuenchProtocol(T=1.0, **kwargs))
    Ts = np.linspace(0.0, 500.0, 1501)
    acc = np.zeros(3)
    for T in Ts:
        s = steady_double(QuenchProtocol(T=float(T), **kwargs))
        acc += [s.G, s.Z.real, s.f.real]
    acc /= len(Ts)
    assert acc[0] == pytest.approx(target.G, abs=2e-3)
    assert acc[1] == pytest.approx(target.Z.real, abs=2e-3)
    assert acc[2] == pytest.approx(target.f.real, abs=2e-3)


def test_spending_time_scan_oscillates_about_a_mean():
    kwargs = dict(h_i=0.8, h_f=5.0, h_m=0.5, delta=0.5, N=400)
    Ts = np.linspace(0.0, 10.0, 401)
    z = np.array([steady_double(QuenchProtocol(T=float(T), **kwargs)).Z.real for T in Ts])
    centered = z - z.mean()
    crossings = np.sum(np.diff(np.sign(centered)) != 0)
    assert z.std() > 1e-3
    assert crossings >= 2  # FM middle points oscillate slowly over the window


def test_dephased_middle_scan_kinks_at_critical_field():
    from xyquench.measures import assemble_xstate, quantum_discord

    hm = np.arange(0.96, 1.04 + 1e-12, 0.004)
    qd = np.array(
        [
            quantum_discord(
                assemble_xstate(
                    steady_double_dephased_middle(
                        QuenchProtocol(h_i=0.5, h_f=5.0, h_m=float(h), T=0.0, delta=0.5, N=2000)
                    )
                )
            )
            for h in hm
        ]
    )
    d2 = np.abs(qd[2:] - 2 * qd[1:-1] + qd[:-2])
    assert abs(hm[1:-1][np.argmax(d2)] - 1.0) <= 0.004 + 1e-12


def test_input_validation():
    proto = QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=64)
    with pytest.raises(ValueError):
        numeric_time_average(proto, tau=-1.0)
    with pytest.raises(ValueError):
        numeric_time_average(proto, tau=10.0, samples=10)
    with pytest.raises(ValueError):
        steady_single(QuenchProtocol(h_i=0.5, h_f=2.0, h_m=1.0, T=1.0, delta=0.5, N=64))
    with pytest.raises(ValueError):
        steady_double(proto)


def test_short_window_warns():
    proto = QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=2000)
    with pytest.warns(UserWarning, match="slowest mode"):
        numeric_time_average(proto, tau=10.0, samples=1000)


def test_stationary_modes_kept(monkeypatch):
    proto = QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=64)
    monkeypatch.setattr(steady_mod, "_STATIONARY_EPS", 10.0)
    with pytest.warns(UserWarning, match="stationary"):
        frozen = steady_single(proto)
    # with every mode frozen the "average" is the t = 0 snapshot
    from xyquench.quench import single_quench_correlators

    c0 = single_quench_correlators(proto, 0.0)
    assert frozen.G == pytest.approx(c0.G, abs=1e-12)
    assert frozen.f == pytest.approx(c0.f, abs=1e-12)

"""Infinite-time averages of the quench correlators.

The mode sums of the correlators contain, per momentum, a stationary part
and oscillations at frequency 2 eps_k of the running Hamiltonian.  Because
no cross-mode terms appear, the long-time average simply drops the
oscillatory factors mode by mode.  All three averaging variants reduce to
one kernel with a mode-dependent dephasing factor D_k:

    single quench                D_k = cos(2 Phi^f)
    double quench, fixed T       D_k = cos(2 Phi^f) cos(2 Phi^m)
                                       - sin(2 Phi^f) sin(2 Phi^m) cos(2 eps^m T)
    dephased middle point        D_k = cos(2 Phi^f) cos(2 Phi^m)

    <G> = (1/N) sum_k [1 - cos(2 theta^f) D_k]
    <Z> = (1/N) sum_k cos(k) [1 - cos(2 theta^f) D_k]
    <f> = -(1/N) sum_k sin(k) sin(2 theta^f) D_k

Modes with eps^f below the stationary threshold do not dephase; their full
t = T (single quench: t = 0) contribution is kept instead of the average.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .quench import (
    PairCorrelators,
    QuenchProtocol,
    _modes,
    _single_kernels,
    _double_amplitudes,
    double_quench_correlators_batch,
    single_quench_correlators_batch,
)

__all__ = [
    "SteadyCorrelators",
    "steady_single",
    "steady_double",
    "steady_double_dephased_middle",
    "numeric_time_average",
]

_STATIONARY_EPS = 1e-12


@dataclass(frozen=True)
class SteadyCorrelators:
    """Long-time-averaged correlators with the protocol they belong to."""

    G: float
    Z: complex
    f: complex
    protocol: QuenchProtocol

    def pair(self) -> PairCorrelators:
        return PairCorrelators(G=self.G, Z=self.Z, f=self.f)


def _steady_sum(protocol: QuenchProtocol, dephasing, frozen_occ=None, frozen_pair=None):
    """Assemble steady (G, Z, f) from the dephasing factor D_k.

    ``frozen_occ``/``frozen_pair`` supply the undamped t = T kernels used for
    modes whose final-Hamiltonian gap is below the stationary threshold.
    """
    k, _, _, final = _modes(protocol)
    c2t = np.cos(2 * final.theta_k)
    s2t = np.sin(2 * final.theta_k)
    occ = 1.0 - c2t * dephasing
    pair = -0.5j * s2t * dephasing
    stationary = final.eps_k < _STATIONARY_EPS
    if np.any(stationary):
        warnings.warn(
            f"{int(stationary.sum())} stationary mode(s) with eps^f < {_STATIONARY_EPS}; "
            "their oscillatory terms are kept, not dropped"
        )
        occ = np.where(stationary, frozen_occ, occ)
        pair = np.where(stationary, frozen_pair, pair)
    N = protocol.N
    G = float(np.sum(occ) / N)
    Z = complex(np.sum(np.cos(k) * occ) / N)
    f = complex(-2j * np.sum(np.sin(k) * pair) / N)
    return SteadyCorrelators(G=G, Z=Z, f=f, protocol=protocol)


def steady_single(protocol: QuenchProtocol) -> SteadyCorrelators:
    """Steady-state correlators after a single quench h_i -> h_f."""
    if protocol.is_double:
        raise ValueError("protocol has a middle point; use steady_double")
    _, initial, _, final = _modes(protocol)
    phi = final.theta_k - initial.theta_k
    _, occ0, pair0 = _single_kernels(protocol, np.zeros(1))
    return _steady_sum(protocol, np.cos(2 * phi), occ0[:, 0], pair0[:, 0])


def steady_double(protocol: QuenchProtocol) -> SteadyCorrelators:
    """Steady-state correlators after a double quench with fixed spending time."""
    if not protocol.is_double:
        raise ValueError("protocol has no middle point; use steady_single")
    _, initial, middle, final = _modes(protocol)
    phi_m = middle.theta_k - initial.theta_k
    phi_f = final.theta_k - middle.theta_k
    dephasing = np.cos(2 * phi_f) * np.cos(2 * phi_m) - np.sin(2 * phi_f) * np.sin(2 * phi_m) * np.cos(
        2 * middle.eps_k * protocol.T
    )
    _, u, v = _double_amplitudes(protocol, np.array([protocol.T]))
    return _steady_sum(protocol, dephasing, 2 * np.abs(v[:, 0]) ** 2, u[:, 0] * v[:, 0].conj())


def steady_double_dephased_middle(protocol: QuenchProtocol) -> SteadyCorrelators:
    """Double-quench steady state with a fully dephased middle point.

    Models a system that has itself reached the steady state at h_m before
    the second quench: every middle-stage phase exp(+-2i T eps^m) is averaged
    away, which equals the T -> infinity average of ``steady_double``.
    """
    if protocol.h_m is None:
        raise ValueError("dephased-middle average needs a protocol with a middle point")
    _, initial, middle, final = _modes(protocol)
    phi_m = middle.theta_k - initial.theta_k
    phi_f = final.theta_k - middle.theta_k
    dephasing = np.cos(2 * phi_f) * np.cos(2 * phi_m)
    # stationary modes keep the T-independent part only, which is the same expression
    return _steady_sum(protocol, dephasing, 1.0 - np.cos(2 * final.theta_k) * dephasing, -0.5j * np.sin(2 * final.theta_k) * dephasing)


def numeric_time_average(
    protocol: QuenchProtocol,
    tau: float,
    samples: int = 100_000,
    t0: float | None = None,
) -> SteadyCorrelators:
    """Trapezoidal time average of the engine correlators over [t0, t0 + tau].

    Independent numerical check of the analytic averages; converges to them
    as O(1/tau).  ``t0`` defaults to T for double quenches and 0 otherwise.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {samples}")
    if t0 is None:
        t0 = protocol.T if protocol.is_double else 0.0
    _, _, _, final = _modes(protocol)
    slowest = 2.0 * float(np.min(final.eps_k))
    if tau * slowest < 20 * np.pi:
        warnings.warn(
            f"tau = {tau} gives the slowest mode (frequency {slowest:.3e}) fewer than "
            "ten periods; the average may not have converged"
        )
    ts = np.linspace(t0, t0 + tau, samples)
    weights = np.full(samples, 1.0)
    weights[0] = weights[-1] = 0.5
    weights /= weights.sum()
    batch = double_quench_correlators_batch if protocol.is_double else single_quench_correlators_batch
    acc = np.zeros(3, dtype=complex)
    chunk = max(1, int(2e7) // max(protocol.N // 2, 1))
    for lo in range(0, samples, chunk):
        sl = slice(lo, min(lo + chunk, samples))
        G, Z, f = batch(protocol, ts[sl])
        w = weights[sl]
        acc += np.array([np.sum(w * G), np.sum(w * Z), np.sum(w * f)])
    return SteadyCorrelators(G=float(np.real(acc[0])), Z=complex(acc[1]), f=complex(acc[2]), protocol=protocol)

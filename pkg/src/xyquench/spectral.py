"""Excited-state expansion of the quenched state and Loschmidt-echo averages.

A quench h_i -> h_f writes the initial ground state per momentum pair as
cos(Phi_k) - i sin(Phi_k) a+_k a+_{-k} acting on the post-quench vacuum, so
the overlap with the eigenstate exciting the pair set S is

    |g_S| = prod_{k in S} |sin Phi_k| * prod_{k not in S} |cos Phi_k|,

nonzero only in even-occupation pair sectors.  The eigenstate itself is
Gaussian with the occupation/pairing kernels of the excited pairs flipped,
so every sector has a closed-form two-site concurrence C_S.

Long-time Loschmidt averages factorize over modes:
single quench   Lbar = prod_k (cos^4 Phi_k + sin^4 Phi_k),
double quench   Lbar = prod_k [ |a_k(T)|^2 cos^2(Phi^f+Phi^m)
                                + |b_k(T)|^2 sin^2(Phi^f+Phi^m) ],
with (a_k, b_k) the post-second-quench eigenbasis amplitudes.  Critical
times of the finite-time echo come from the mode k* where the ground and
excited weights balance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .model import ChainParams, mode_data, momentum_grid
from .quench import PairCorrelators, QuenchProtocol
from . import measures

__all__ = [
    "SpectralSector",
    "LoschmidtSteady",
    "CriticalTimes",
    "g0",
    "g_max_per_sector",
    "excited_state_correlators",
    "excited_state_concurrence",
    "sector_probabilities",
    "steady_concurrence_decomposition",
    "loschmidt_steady_single",
    "loschmidt_steady_double",
    "loschmidt_echo_rate",
    "dqpt_critical_times",
]

_ENUMERATION_CAP = 24  # pair modes; 2^24 sectors is the exhaustive-sum limit


@dataclass(frozen=True)
class SpectralSector:
    """One even-excitation sector of the post-quench Hamiltonian."""

    excited_pairs: tuple[float, ...]  # momenta k of the excited (k, -k) pairs
    indices: tuple[int, ...]  # positions on the momentum grid
    g_abs: float
    n_f: int  # quasiparticle count, 2 * number of excited pairs
    concurrence: float


@dataclass(frozen=True)
class LoschmidtSteady:
    """Long-time-averaged Loschmidt echo and its rate -log(Lbar)/N."""

    lbar: float
    rate: float


@dataclass(frozen=True)
class CriticalTimes:
    """DQPT prediction for one critical mode (times counted from the last quench)."""

    k_star: float
    k_grid: float
    eps_star: float
    t_star: float
    times: tuple[float, ...]
    phase_shift: float
    divergent: bool


def _quench_angles(h_i: float, h_f: float, delta: float, N: int, J: float = 1.0):
    k = momentum_grid(N)
    initial = mode_data(ChainParams(h=h_i, delta=delta, J=J, N=N), k)
    final = mode_data(ChainParams(h=h_f, delta=delta, J=J, N=N), k)
    return k, final, final.theta_k - initial.theta_k


def g0(h_i: float, h_f: float, delta: float, N: int, J: float = 1.0) -> float:
    """|g_0| = prod_{k>0} |cos Phi_k|: ground-to-ground overlap after the quench."""
    _, _, phi = _quench_angles(h_i, h_f, delta, N, J)
    return float(np.prod(np.abs(np.cos(phi))))


def excited_state_correlators(
    excited: np.ndarray, h_f: float, delta: float, N: int, J: float = 1.0
) -> PairCorrelators:
    """(G, Z, f) of the H(h_f) eigenstate with pairs ``excited`` (bool mask) flipped."""
    k = momentum_grid(N)
    final = mode_data(ChainParams(h=h_f, delta=delta, J=J, N=N), k)
    sign = np.where(np.asarray(excited, dtype=bool), -1.0, 1.0)
    occ = 1.0 - sign * np.cos(2 * final.theta_k)
    pair = sign * np.sin(2 * final.theta_k)
    G = float(np.sum(occ) / N)
    Z = complex(np.sum(np.cos(k) * occ) / N)
    f = complex(-np.sum(np.sin(k) * pair) / N)
    return PairCorrelators(G=G, Z=Z, f=f)


def excited_state_concurrence(excited, h_f: float, delta: float, N: int, J: float = 1.0) -> float:
    """Concurrence of the excited eigenstate selected by mask or index list."""
    excited = np.asarray(excited)
    if excited.dtype != bool:
        mask = np.zeros(N // 2, dtype=bool)
        mask[excited.astype(int)] = True
        excited = mask
    c = excited_state_correlators(excited, h_f, delta, N, J)
    return measures.concurrence(measures.assemble_xstate(c))


def g_max_per_sector(h_i: float, h_f: float, delta: float, N: int, J: float = 1.0) -> list[SpectralSector]:
    """Maximal |g_n| in each even sector of fixed quasiparticle number.

    For m excited pairs the maximizing sector excites the m modes of largest
    |tan Phi_k|; returns one entry per m = 1..N/2 with the sector's
    concurrence.
    """
    k, final, phi = _quench_angles(h_i, h_f, delta, N, J)
    abs_sin = np.abs(np.sin(phi))
    abs_cos = np.abs(np.cos(phi))
    with np.errstate(divide="ignore"):
        ratio = np.where(abs_cos > 0, abs_sin / np.maximum(abs_cos, 1e-300), np.inf)
    order = np.argsort(-ratio, kind="stable")
    s_sorted, c_sorted = abs_sin[order], abs_cos[order]
    nm = N // 2
    # |g_m| = prod_{i<m} sin_(i) * prod_{i>=m} cos_(i) via prefix/suffix products
    pre_sin = np.concatenate(([1.0], np.cumprod(s_sorted)))
    suf_cos = np.concatenate((np.cumprod(c_sorted[::-1])[::-1], [1.0]))
    g_all = pre_sin * suf_cos  # index m = number of excited pairs, m = 0..nm

    c2t = np.cos(2 * final.theta_k)
    s2t = np.sin(2 * final.theta_k)
    cos_k, sin_k = np.cos(k), np.sin(k)
    # base sums with no excitation, plus cumulative flips along the ranking
    occ_base = np.sum(1.0 - c2t)
    z_base = np.sum(cos_k * (1.0 - c2t))
    f_base = -np.sum(sin_k * s2t)
    d_occ = np.concatenate(([0.0], np.cumsum(2.0 * c2t[order])))
    d_z = np.concatenate(([0.0], np.cumsum(2.0 * cos_k[order] * c2t[order])))
    d_f = np.concatenate(([0.0], np.cumsum(2.0 * sin_k[order] * s2t[order])))

    sectors = []
    for m in range(1, nm + 1):
        G = (occ_base + d_occ[m]) / N
        Z = (z_base + d_z[m]) / N
        f = (f_base + d_f[m]) / N
        cval = measures.concurrence(measures.assemble_xstate(PairCorrelators(G=G, Z=Z, f=f)))
        idx = tuple(sorted(int(i) for i in order[:m]))
        sectors.append(
            SpectralSector(
                excited_pairs=tuple(float(k[i]) for i in idx),
                indices=idx,
                g_abs=float(g_all[m]),
                n_f=2 * m,
                concurrence=cval,
            )
        )
    return sectors


def _sector_bits(n_modes: int, masks: np.ndarray) -> np.ndarray:
    return ((masks[:, None] >> np.arange(n_modes, dtype=np.uint64)) & np.uint64(1)).astype(float)


def sector_probabilities(h_i: float, h_f: float, delta: float, N: int, J: float = 1.0) -> np.ndarray:
    """|g_n|^2 for every pair sector (2^(N/2) entries, index = excitation bitmask)."""
    nm = N // 2
    if nm > _ENUMERATION_CAP:
        raise ValueError(f"sector enumeration capped at {_ENUMERATION_CAP} pair modes, got {nm}")
    _, _, phi = _quench_angles(h_i, h_f, delta, N, J)
    s2, c2 = np.sin(phi) ** 2, np.cos(phi) ** 2
    with np.errstate(divide="ignore"):
        log_s, log_c = np.log(s2), np.log(c2)
    masks = np.arange(1 << nm, dtype=np.uint64)
    bits = _sector_bits(nm, masks)
    with np.errstate(invalid="ignore"):
        logp = bits @ np.where(np.isfinite(log_s), log_s, -1e300) + (1.0 - bits) @ np.where(
            np.isfinite(log_c), log_c, -1e300
        )
    return np.exp(logp)


def steady_concurrence_decomposition(h_i: float, h_f: float, delta: float, N: int, J: float = 1.0) -> float:
    """Exact sector sum  <C> = sum_n |g_n|^2 C_n  over all even pair sectors.

    Treats the concurrence as if it averaged like a linear observable; the
    comparison against the direct steady-state concurrence is made by the
    caller (the two need not agree, see the validation report).
    """
    nm = N // 2
    if nm > _ENUMERATION_CAP:
        raise ValueError(f"sector enumeration capped at {_ENUMERATION_CAP} pair modes, got {nm}")
    k = momentum_grid(N)
    final = mode_data(ChainParams(h=h_f, delta=delta, J=J, N=N), k)
    c2t, s2t = np.cos(2 * final.theta_k), np.sin(2 * final.theta_k)
    cos_k, sin_k = np.cos(k), np.sin(k)
    probs = sector_probabilities(h_i, h_f, delta, N, J)

    occ_base = np.sum(1.0 - c2t)
    z_base = np.sum(cos_k * (1.0 - c2t))
    f_base = -np.sum(sin_k * s2t)
    total = 0.0
    chunk = 1 << 18
    for lo in range(0, 1 << nm, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << nm), dtype=np.uint64)
        bits = _sector_bits(nm, masks)
        G = (occ_base + bits @ (2.0 * c2t)) / N
        Z = (z_base + bits @ (2.0 * cos_k * c2t)) / N
        f = (f_base + bits @ (2.0 * sin_k * s2t)) / N
        xp = G * G - Z * Z + f * f
        y = G - xp
        xm = 1.0 - 2.0 * G + xp
        lam1 = 2.0 * (np.abs(Z) - np.sqrt(np.clip(xp * xm, 0.0, None)))
        lam2 = 2.0 * (np.abs(f) - np.sqrt(np.clip(y * y, 0.0, None)))
        C = np.maximum(0.0, np.maximum(lam1, lam2))
        total += float(np.dot(probs[lo : lo + len(masks)], C))
    return total


def loschmidt_steady_single(h_i: float, h_f: float, delta: float, N: int, J: float = 1.0) -> LoschmidtSteady:
    """Lbar = prod_{k>0} (cos^4 Phi_k + sin^4 Phi_k) and its rate.

    The rate is accumulated in log space, so it stays finite when Lbar
    underflows at large N.
    """
    _, _, phi = _quench_angles(h_i, h_f, delta, N, J)
    per_mode = np.cos(phi) ** 4 + np.sin(phi) ** 4
    rate = -float(np.sum(np.log(per_mode))) / N
    return LoschmidtSteady(lbar=float(np.exp(-N * rate)), rate=rate)


def _double_block_weights(h_i, h_m, h_f, T, delta, N, J=1.0):
    """Per-mode (|a|^2, |b|^2, cos^2 Sigma, sin^2 Sigma) of the double quench."""
    k = momentum_grid(N)
    th_i = mode_data(ChainParams(h=h_i, delta=delta, J=J, N=N), k).theta_k
    mid = mode_data(ChainParams(h=h_m, delta=delta, J=J, N=N), k)
    th_f = mode_data(ChainParams(h=h_f, delta=delta, J=J, N=N), k).theta_k
    phi_m = mid.theta_k - th_i
    phi_f = th_f - mid.theta_k
    e_mid = np.exp(1j * mid.eps_k * T)
    a = np.cos(phi_f) * np.cos(phi_m) * e_mid - np.sin(phi_f) * np.sin(phi_m) * e_mid.conj()
    b = np.sin(phi_f) * np.cos(phi_m) * e_mid + np.cos(phi_f) * np.sin(phi_m) * e_mid.conj()
    sigma = phi_f + phi_m
    return a, b, np.cos(sigma), np.sin(sigma)


def loschmidt_steady_double(
    h_i: float, h_m: float, h_f: float, T: float, delta: float, N: int, J: float = 1.0
) -> LoschmidtSteady:
    """Long-time-averaged echo of the double quench at fixed spending time."""
    a, b, cs, sn = _double_block_weights(h_i, h_m, h_f, T, delta, N, J)
    per_mode = np.abs(a) ** 2 * cs**2 + np.abs(b) ** 2 * sn**2
    rate = -float(np.sum(np.log(per_mode))) / N
    return LoschmidtSteady(lbar=float(np.exp(-N * rate)), rate=rate)


def loschmidt_echo_rate(protocol: QuenchProtocol, ts) -> np.ndarray:
    """Finite-time rate -log LE(t)/N of a single quench on a time grid."""
    if protocol.is_double:
        raise ValueError("finite-time echo rate implemented for single quenches")
    _, final, phi = _quench_angles(protocol.h_i, protocol.h_f, protocol.delta, protocol.N, protocol.J)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    le = 1.0 - (np.sin(2 * phi[:, None]) * np.sin(final.eps_k[:, None] * ts[None, :])) ** 2
    with np.errstate(divide="ignore"):
        return -np.sum(np.log(le), axis=0) / protocol.N


def _scan_roots(fn, lo=1e-6, hi=np.pi - 1e-6, samples=4096):
    ks = np.linspace(lo, hi, samples)
    vals = np.array([fn(x) for x in ks])
    roots = []
    for i in range(len(ks) - 1):
        if vals[i] == 0.0:
            roots.append(ks[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(bisect(fn, ks[i], ks[i + 1], xtol=1e-13))
    return roots


def dqpt_critical_times(
    h_i: float,
    h_f: float,
    delta: float,
    N: int,
    h_m: float | None = None,
    T: float | None = None,
    J: float = 1.0,
    n_times: int = 4,
) -> list[CriticalTimes]:
    """Critical modes and cusp times of the post-quench Loschmidt echo.

    Single quench: k* solves cos(2 Phi^f_k) = 0 on the continuum dispersion
    (bisection), and the cusps sit at t_l = (pi/eps^f_{k*}) (l + 1/2).  With a
    middle stage the balance condition and a phase shift phi_{k*} follow from
    the two-level amplitudes, giving t_l = (pi/2eps^f_{k*}) [(2l+1) - phi_{k*}],
    measured from the second quench.  Returns an empty list when no critical
    mode exists; a gapless critical mode is flagged divergent (t* = inf).
    """

    def angles(k):
        k = np.atleast_1d(k)
        th_i = mode_data(ChainParams(h=h_i, delta=delta, J=J, N=N), k).theta_k
        final = mode_data(ChainParams(h=h_f, delta=delta, J=J, N=N), k)
        if h_m is None:
            return final, th_i, None, None
        mid = mode_data(ChainParams(h=h_m, delta=delta, J=J, N=N), k)
        return final, th_i, mid.theta_k, mid.eps_k

    if h_m is None:

        def balance(k):
            final, th_i, _, _ = angles(k)
            return float(np.cos(2 * (final.theta_k - th_i))[0])

        def phase_shift(k):
            return 0.0

    else:
        if T is None:
            raise ValueError("double-quench critical times need the spending time T")

        def _amp(k):
            # ground/excited weights of the echo amplitude W0 e^{i eps t'} + W1 e^{-i eps t'}
            final, th_i, th_m, eps_m = angles(k)
            phi_m = th_m - th_i
            phi_f = final.theta_k - th_m
            e_mid = np.exp(1j * eps_m * T)
            a = np.cos(phi_f) * np.cos(phi_m) * e_mid - np.sin(phi_f) * np.sin(phi_m) * e_mid.conj()
            b = np.sin(phi_f) * np.cos(phi_m) * e_mid + np.cos(phi_f) * np.sin(phi_m) * e_mid.conj()
            sigma = phi_f + phi_m
            return complex((np.cos(sigma) * a)[0]), complex((np.sin(sigma) * b)[0])

        def balance(k):
            w0a, w1b = _amp(k)
            return abs(w1b) ** 2 - abs(w0a) ** 2

        def phase_shift(k):
            w0a, w1b = _amp(k)
            return -float(np.angle(w1b / w0a)) / np.pi

    grid = momentum_grid(N)
    results = []
    gapless_at_pi = abs(J - h_f) < 1e-9
    if gapless_at_pi:
        # quench onto the critical point: the balancing mode is the gap-closing
        # momentum itself, so no finite critical time exists (t* = infinity)
        results.append(
            CriticalTimes(
                k_star=float(np.pi),
                k_grid=float(grid[-1]),
                eps_star=0.0,
                t_star=np.inf,
                times=(),
                phase_shift=0.0,
                divergent=True,
            )
        )
    for k_star in _scan_roots(balance):
        if gapless_at_pi and k_star > np.pi - 1e-3:
            continue  # numerical shadow of the degenerate root at k = pi
        final, _, _, _ = angles(k_star)
        eps_star = float(final.eps_k[0])
        k_grid = float(grid[np.argmin(np.abs(grid - k_star))])
        if eps_star < 1e-9:
            results.append(
                CriticalTimes(
                    k_star=float(k_star),
                    k_grid=k_grid,
                    eps_star=eps_star,
                    t_star=np.inf,
                    times=(),
                    phase_shift=0.0,
                    divergent=True,
                )
            )
            continue
        shift = phase_shift(k_star)
        t_star = np.pi / eps_star
        times = tuple((np.pi / (2 * eps_star)) * ((2 * l + 1) - shift) for l in range(n_times))
        results.append(
            CriticalTimes(
                k_star=float(k_star),
                k_grid=k_grid,
                eps_star=eps_star,
                t_star=t_star,
                times=times,
                phase_shift=shift,
                divergent=False,
            )
        )
    return results

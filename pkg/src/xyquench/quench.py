"""Time-dependent nearest-neighbor correlators under single and double quenches.

Each momentum pair (k, -k) is a driven two-level system spanned by the empty
state and the doubly excited state |k,-k>.  Writing the pair amplitude as
(u_k, v_k) in that basis, the chain-averaged correlators are

    G(t) = (2/N) sum_{k>0} |v_k|^2                 <a+_i a_i>
    Z(t) = (2/N) sum_{k>0} cos(k) |v_k|^2          <a+_i a_{i+1}>
    f(t) = -(2i/N) sum_{k>0} sin(k) u_k v_k*       <a+_i a+_{i+1}>

The amplitudes follow from expanding the initial pair ground state in the
post-quench quasiparticle basis (overlap angle Phi_k = difference of
Bogoliubov angles) and attaching phases exp(-+ i eps t) to the ground/excited
components; a double quench composes two such expansions with the middle
phases exp(-+ i eps^m T) retained.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import ChainParams, mode_data, momentum_grid

__all__ = [
    "QuenchProtocol",
    "PairCorrelators",
    "equilibrium_correlators",
    "single_quench_correlators",
    "double_quench_correlators",
    "correlators",
]


@dataclass(frozen=True)
class QuenchProtocol:
    """Ordered field values defining a single or double quench.

    ``h_m`` and ``T`` are either both present (double quench: h_i -> h_m at
    t=0, then h_m -> h_f at t=T) or both absent (single quench h_i -> h_f).
    Times are in units of 1/J.
    """

    h_i: float
    h_f: float
    h_m: float | None = None
    T: float | None = None
    delta: float = 0.5
    J: float = 1.0
    N: int = 2000

    def __post_init__(self):
        if (self.h_m is None) != (self.T is None):
            raise ValueError("h_m and T must be given together")
        if self.T is not None and self.T < 0:
            raise ValueError(f"spending time T must be >= 0, got {self.T}")
        ChainParams(h=self.h_i, delta=self.delta, J=self.J, N=self.N)  # validates shared fields

    @property
    def is_double(self) -> bool:
        return self.h_m is not None

    def params(self, h: float) -> ChainParams:
        return ChainParams(h=h, delta=self.delta, J=self.J, N=self.N)

    def first_leg(self) -> "QuenchProtocol":
        """The t < T window of a double quench as a single quench h_i -> h_m."""
        if not self.is_double:
            return self
        return QuenchProtocol(h_i=self.h_i, h_f=self.h_m, delta=self.delta, J=self.J, N=self.N)


@dataclass(frozen=True)
class PairCorrelators:
    """Nearest-neighbor fermionic correlators G, Z, f at one instant."""

    G: float
    Z: complex
    f: complex

    def check_bounds(self, tol: float = 1e-9):
        if not -tol <= self.G <= 1 + tol:
            raise ValueError(f"G out of [0, 1]: {self.G}")
        if abs(self.Z) > np.sqrt(max(self.G * (1 - self.G), 0.0)) + tol:
            raise ValueError(f"|Z| violates Cauchy-Schwarz: {self.Z}")
        if abs(self.f) > 0.5 + tol:
            raise ValueError(f"|f| exceeds 1/2: {self.f}")
        return self


@lru_cache(maxsize=128)
def _modes(protocol: QuenchProtocol):
    """Per-mode angles and energies shared by all time evaluations."""
    k = momentum_grid(protocol.N)
    final = mode_data(protocol.params(protocol.h_f), k)
    initial = mode_data(protocol.params(protocol.h_i), k)
    middle = mode_data(protocol.params(protocol.h_m), k) if protocol.is_double else None
    return k, initial, middle, final


def _sum_correlators(k, weights_n, weights_f, N):
    """Assemble (G, Z, f) from per-mode occupation and pairing kernels.

    ``weights_n`` holds 2|v_k|^2 per mode (shape (nk,) or (nk, nt)),
    ``weights_f`` holds u_k v_k* per mode.
    """
    cos_k = np.cos(k)
    sin_k = np.sin(k)
    if weights_n.ndim == 2:
        cos_k = cos_k[:, None]
        sin_k = sin_k[:, None]
    G = np.sum(weights_n, axis=0) / N
    Z = np.sum(cos_k * weights_n, axis=0) / N
    f = -2j * np.sum(sin_k * weights_f, axis=0) / N
    return G, Z, f


def _single_kernels(protocol: QuenchProtocol, ts: np.ndarray):
    """(2|v|^2, u v*) per (mode, time) for a single quench h_i -> h_f."""
    k, initial, _, final = _modes(protocol)
    phi = final.theta_k - initial.theta_k
    c2t, s2t = np.cos(2 * final.theta_k), np.sin(2 * final.theta_k)
    c2p, s2p = np.cos(2 * phi), np.sin(2 * phi)
    wt = 2.0 * final.eps_k[:, None] * ts[None, :]
    cos_wt, sin_wt = np.cos(wt), np.sin(wt)
    occ = 1.0 - c2t[:, None] * c2p[:, None] - s2t[:, None] * s2p[:, None] * cos_wt
    pair = (
        -0.5 * s2p[:, None] * sin_wt
        - 0.5j * (s2t[:, None] * c2p[:, None] - s2p[:, None] * c2t[:, None] * cos_wt)
    )
    return k, occ, pair


def _double_amplitudes(protocol: QuenchProtocol, ts: np.ndarray):
    """(u, v) per (mode, time) for the t >= T stage of a double quench."""
    k, initial, middle, final = _modes(protocol)
    phi_m = middle.theta_k - initial.theta_k
    phi_f = final.theta_k - middle.theta_k
    e_mid = np.exp(1j * middle.eps_k * protocol.T)
    alpha0 = np.cos(phi_f) * np.cos(phi_m) * e_mid - np.sin(phi_f) * np.sin(phi_m) * e_mid.conj()
    beta0 = np.sin(phi_f) * np.cos(phi_m) * e_mid + np.cos(phi_f) * np.sin(phi_m) * e_mid.conj()
    e_fin = np.exp(1j * final.eps_k[:, None] * (ts[None, :] - protocol.T))
    a = e_fin * alpha0[:, None]
    b = -1j * e_fin.conj() * beta0[:, None]
    cos_t, sin_t = np.cos(final.theta_k)[:, None], np.sin(final.theta_k)[:, None]
    u = a * cos_t + 1j * b * sin_t
    v = 1j * a * sin_t + b * cos_t
    return k, u, v


def single_quench_correlators_batch(protocol: QuenchProtocol, ts):
    """(G, Z, f) arrays over times ``ts`` for a single quench."""
    if protocol.is_double:
        raise ValueError("protocol has a middle point; use double_quench_correlators")
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(ts < 0):
        raise ValueError("times must be >= 0")
    k, occ, pair = _single_kernels(protocol, ts)
    return _sum_correlators(k, occ, pair, protocol.N)


def double_quench_correlators_batch(protocol: QuenchProtocol, ts):
    """(G, Z, f) arrays over times ``ts >= T`` for a double quench."""
    if not protocol.is_double:
        raise ValueError("protocol has no middle point; use single_quench_correlators")
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(ts < protocol.T):
        raise ValueError(
            "double-quench correlators are defined for t >= T; "
            "the earlier window is the single quench h_i -> h_m"
        )
    k, u, v = _double_amplitudes(protocol, ts)
    occ = 2.0 * np.abs(v) ** 2
    pair = u * v.conj()
    return _sum_correlators(k, occ, pair, protocol.N)


def _scalar(G, Z, f) -> PairCorrelators:
    return PairCorrelators(G=float(np.real(G[0])), Z=complex(Z[0]), f=complex(f[0]))


def equilibrium_correlators(params: ChainParams) -> PairCorrelators:
    """Ground-state correlators of H(h): the no-quench limit."""
    proto = QuenchProtocol(h_i=params.h, h_f=params.h, delta=params.delta, J=params.J, N=params.N)
    return single_quench_correlators(proto, 0.0)


def single_quench_correlators(protocol: QuenchProtocol, t: float) -> PairCorrelators:
    """Correlators at time t >= 0 after the sudden quench h_i -> h_f."""
    return _scalar(*single_quench_correlators_batch(protocol, [t]))


def double_quench_correlators(protocol: QuenchProtocol, t: float) -> PairCorrelators:
    """Correlators at time t >= T after the second quench of a double protocol."""
    return _scalar(*double_quench_correlators_batch(protocol, [t]))


def correlators(protocol: QuenchProtocol, t: float) -> PairCorrelators:
    """Correlators at any t >= 0 under the full quench schedule."""
    if protocol.is_double and t < protocol.T:
        return single_quench_correlators(protocol.first_leg(), t)
    if protocol.is_double:
        return double_quench_correlators(protocol, t)
    return single_quench_correlators(protocol, t)

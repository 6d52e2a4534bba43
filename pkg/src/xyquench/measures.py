"""Two-site X-state density matrix and quantum-correlation measures.

The nearest-neighbor reduced density matrix of the fermionized chain is an
X matrix in the occupation basis [|11>, |10>, |01>, |00>],

    rho = [[X+ , 0  , 0  , f*],
           [0  , Y+ , Z* , 0 ],
           [0  , Z  , Y- , 0 ],
           [f  , 0  , 0  , X-]],

with populations fixed by Wick's theorem for the Gaussian state:
X+ = G^2 - |Z|^2 + |f|^2, Y+- = G - X+, X- = 1 - 2G + X+.

Measures: concurrence in closed form; mutual information from single-site
and block entropies; classical correlation by maximizing over rank-1
projective measurements on the second site, parametrized by Bloch angles
(theta, phi); quantum discord as their difference.  Concurrence and discord
are invariant under the local phase rotation taking Z -> |Z|, f -> |f|, so
the measurement optimization works on the phase-fixed matrix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

__all__ = [
    "XStateDensity",
    "QCValues",
    "ClassicalCorrelation",
    "assemble_xstate",
    "xstate_eigenvalues",
    "concurrence",
    "mutual_information",
    "classical_correlation",
    "quantum_discord",
    "qc_values",
]

_EIG_FLOOR = -1e-8  # assembled states beyond this are treated as upstream bugs
_CLIP = 1e-10  # eigenvalue clipping window for entropies


@dataclass(frozen=True)
class XStateDensity:
    """Populations and coherences of a two-site X-state."""

    Xp: float
    Xm: float
    Yp: float
    Ym: float
    Z: complex
    f: complex

    def matrix(self) -> np.ndarray:
        """Dense 4x4 matrix in the occupation basis [|11>, |10>, |01>, |00>]."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = self.Xp, self.Yp, self.Ym, self.Xm
        rho[2, 1] = self.Z
        rho[1, 2] = np.conj(self.Z)
        rho[3, 0] = self.f
        rho[0, 3] = np.conj(self.f)
        return rho

    def phase_fixed(self) -> "XStateDensity":
        """Local-unitary equivalent state with real non-negative coherences."""
        return XStateDensity(self.Xp, self.Xm, self.Yp, self.Ym, abs(self.Z), abs(self.f))

    def occupation_a(self) -> float:
        return self.Xp + self.Yp

    def occupation_b(self) -> float:
        return self.Xp + self.Ym


@dataclass(frozen=True)
class QCValues:
    """Quantum-correlation measures at one parameter point."""

    concurrence: float
    discord: float
    mutual_info: float
    classical_corr: float


@dataclass(frozen=True)
class ClassicalCorrelation:
    """Maximized classical correlation and the arg-max measurement angles."""

    value: float
    theta: float
    phi: float
    converged: bool


def assemble_xstate(c, check: bool = True) -> XStateDensity:
    """Build the two-site X-state from correlators (anything with .G, .Z, .f).

    Raises ValueError when the input produces eigenvalues below -1e-8, which
    signals an upstream bug rather than floating-point noise.
    """
    G = float(np.real(c.G))
    Z = complex(c.Z)
    f = complex(c.f)
    xp = G * G - abs(Z) ** 2 + abs(f) ** 2
    y = G - xp
    xm = 1.0 - 2.0 * G + xp
    rho = XStateDensity(Xp=xp, Xm=xm, Yp=y, Ym=y, Z=Z, f=f)
    if check:
        eigs = xstate_eigenvalues(rho)
        if eigs[-1] < _EIG_FLOOR:
            raise ValueError(f"assembled density matrix has eigenvalue {eigs[-1]:.3e} < {_EIG_FLOOR}")
    return rho


def xstate_eigenvalues(rho: XStateDensity) -> np.ndarray:
    """The four eigenvalues in closed block form, sorted descending."""
    sx = 0.5 * (rho.Xp + rho.Xm)
    dx = np.hypot(0.5 * (rho.Xp - rho.Xm), abs(rho.f))
    sy = 0.5 * (rho.Yp + rho.Ym)
    dy = np.hypot(0.5 * (rho.Yp - rho.Ym), abs(rho.Z))
    return np.sort(np.array([sx + dx, sx - dx, sy + dy, sy - dy]))[::-1]


def concurrence(rho: XStateDensity) -> float:
    """C = max[0, 2(|Z| - sqrt(X+ X-)), 2(|f| - sqrt(Y+ Y-))]."""
    xp = max(rho.Xp, 0.0)
    xm = max(rho.Xm, 0.0)
    yp = max(rho.Yp, 0.0)
    ym = max(rho.Ym, 0.0)
    lam1 = 2.0 * (abs(rho.Z) - np.sqrt(xp * xm))
    lam2 = 2.0 * (abs(rho.f) - np.sqrt(yp * ym))
    return float(max(0.0, lam1, lam2))


def _entropy(p: np.ndarray) -> float:
    """Shannon entropy in bits with 0 log 0 = 0 and tiny-negative clipping."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -_CLIP):
        raise ValueError(f"probability below clipping window: {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz)))


def _binary_entropy(x: float) -> float:
    return _entropy(np.array([0.5 * (1 + x), 0.5 * (1 - x)]))


def mutual_information(rho: XStateDensity) -> float:
    """I = S(rho_A) + S(rho_B) - S(rho_AB), entropies in bits."""
    s_a = _binary_entropy(2.0 * rho.occupation_a() - 1.0)
    s_b = _binary_entropy(2.0 * rho.occupation_b() - 1.0)
    return s_a + s_b - _entropy(xstate_eigenvalues(rho))


def _correlation_vector(rho: XStateDensity):
    """(c1, c2, c3, r, s) of the phase-fixed X-state.

    c1 = <sx sx>, c2 = <sy sy>, c3 = <sz sz>; r, s are the Bloch-z components
    of the two sites.  For translation-invariant chain states r = s, which is
    the single common coefficient of the measurement formulas.
    """
    g = rho.phase_fixed()
    c1 = 2.0 * (g.Z.real + g.f.real)
    c2 = 2.0 * (g.Z.real - g.f.real)
    c3 = g.Xp + g.Xm - g.Yp - g.Ym
    r = 2.0 * g.occupation_a() - 1.0
    s = 2.0 * g.occupation_b() - 1.0
    return c1, c2, c3, r, s


def _cc_objective(cvec, theta, phi):
    """Vectorized classical-correlation objective over measurement angles.

    Post-measurement Bloch vectors of site A after projecting site B along
    (theta, phi): chi_j = [(-1)^k c_j n_j + delta_{j3} r] / (1 + (-1)^k s cos theta).
    """
    c1, c2, c3, r, s = cvec
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st, ct = np.sin(theta), np.cos(theta)
    n1 = st * np.cos(phi)
    n2 = st * np.sin(phi)
    out = np.full(np.broadcast(theta, phi).shape, _binary_entropy(r))
    for sign in (1.0, -1.0):
        denom = 1.0 + sign * s * ct
        p = 0.5 * denom
        safe = denom > 1e-12
        d = np.where(safe, denom, 1.0)
        chi = np.sqrt((sign * c1 * n1) ** 2 + (sign * c2 * n2) ** 2 + (sign * c3 * ct + r) ** 2) / d
        chi = np.clip(chi, 0.0, 1.0)
        hp = 0.5 * (1.0 + chi)
        hm = 0.5 * (1.0 - chi)
        with np.errstate(divide="ignore", invalid="ignore"):
            s_cond = -np.where(hp > 0, hp * np.log2(np.maximum(hp, 1e-300)), 0.0) - np.where(
                hm > 0, hm * np.log2(np.maximum(hm, 1e-300)), 0.0
            )
        out = out - np.where(safe, p * s_cond, 0.0)
    return out


_GRID_THETA = 64
_GRID_PHI = 64


def _cc_grid(cvec, n_theta: int = _GRID_THETA, n_phi: int = _GRID_PHI):
    th = np.linspace(0.0, np.pi, n_theta)
    ph = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    vals = _cc_objective(cvec, th[:, None], ph[None, :])
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    return float(vals[i, j]), float(th[i]), float(ph[j])


def classical_correlation(rho: XStateDensity, tol: float = 1e-8) -> ClassicalCorrelation:
    """Maximal classical correlation over rank-1 measurements on site B.

    Coarse 64x64 (theta, phi) grid to localize the basin, then Nelder-Mead
    refinement; the exact axial candidates theta = 0 and theta = pi/2 with
    phi in {0, pi/2} are always included.  Non-convergence is reported with
    the best value found.
    """
    cvec = _correlation_vector(rho)
    best, th0, ph0 = _cc_grid(cvec)
    starts = [(th0, ph0), (0.0, 0.0), (np.pi / 2, 0.0), (np.pi / 2, np.pi / 2)]
    value, theta, phi = best, th0, ph0
    converged = True
    for x0 in starts:
        res = minimize(
            lambda x: -_cc_objective(cvec, x[0], x[1]),
            x0=np.asarray(x0),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": tol * 1e-3, "maxiter": 600},
        )
        if -res.fun > value:
            value, theta, phi = float(-res.fun), float(res.x[0]), float(res.x[1])
            converged = bool(res.success)
    if not converged:
        warnings.warn("classical-correlation refinement did not converge; returning best value found")
    return ClassicalCorrelation(value=value, theta=theta, phi=phi, converged=converged)


def quantum_discord(rho: XStateDensity) -> float:
    """QD = I - C_classical, clamped at zero within -1e-8."""
    qd = mutual_information(rho) - classical_correlation(rho).value
    if qd < -1e-8:
        warnings.warn(f"discord {qd:.3e} below tolerance; measurement optimization suspect")
        return qd
    return max(qd, 0.0)


def qc_values(rho: XStateDensity) -> QCValues:
    """All four measures of one state, sharing a single optimization."""
    mi = mutual_information(rho)
    cc = classical_correlation(rho).value
    qd = mi - cc
    if qd < -1e-8:
        warnings.warn(f"discord {qd:.3e} below tolerance; measurement optimization suspect")
    else:
        qd = max(qd, 0.0)
    return QCValues(
        concurrence=concurrence(rho),
        discord=qd,
        mutual_info=mi,
        classical_corr=cc,
    )


def _cc_grid_batch(cvecs: np.ndarray, n_theta: int = _GRID_THETA, n_phi: int = _GRID_PHI) -> np.ndarray:
    """Grid-level classical correlation for a batch of states.

    ``cvecs`` has shape (n_states, 5) with rows (c1, c2, c3, r, s).  Used by
    scans that only need the maximum located to grid accuracy before a local
    refinement of the selected point.
    """
    c1, c2, c3, r, s = (cvecs[:, j][:, None] for j in range(5))
    th = np.linspace(0.0, np.pi, n_theta)
    ph = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    st = np.sin(th)[None, :, None]
    ct = np.cos(th)[None, :, None]
    n1 = st * np.cos(ph)[None, None, :]
    n2 = st * np.sin(ph)[None, None, :]
    ct = np.broadcast_to(ct, (1, n_theta, 1))
    h_r = np.array([_binary_entropy(x) for x in r[:, 0]])
    out = np.broadcast_to(h_r[:, None, None], (len(cvecs), n_theta, n_phi)).copy()
    c1 = c1[:, :, None]
    c2 = c2[:, :, None]
    c3 = c3[:, :, None]
    rr = r[:, :, None]
    ss = s[:, :, None]
    for sign in (1.0, -1.0):
        denom = 1.0 + sign * ss * ct
        p = 0.5 * denom
        safe = denom > 1e-12
        d = np.where(safe, denom, 1.0)
        chi = np.sqrt((sign * c1 * n1) ** 2 + (sign * c2 * n2) ** 2 + (sign * c3 * ct + rr) ** 2) / d
        chi = np.clip(chi, 0.0, 1.0)
        hp = 0.5 * (1.0 + chi)
        hm = 0.5 * (1.0 - chi)
        with np.errstate(divide="ignore", invalid="ignore"):
            s_cond = -np.where(hp > 0, hp * np.log2(np.maximum(hp, 1e-300)), 0.0) - np.where(
                hm > 0, hm * np.log2(np.maximum(hm, 1e-300)), 0.0
            )
        out -= np.where(safe, p * s_cond, 0.0)
    return out.reshape(len(cvecs), -1).max(axis=1)

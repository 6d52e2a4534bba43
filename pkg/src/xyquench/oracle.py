"""Dense exact diagonalization of the spin chain for N <= 12.

Ground truth for every free-fermion result: spin Hamiltonian in the full
2^N-dimensional product basis, two-stage time evolution, two-site partial
traces, Wootters concurrence and a numerically optimized quantum discord.

Basis convention (fixed for bit-exact fixtures): basis states are indexed by
integers whose bit j gives the state of site j, site 0 = least significant
bit, bit 1 = spin up.  Under the Jordan-Wigner mapping used throughout,
spin up is the occupied fermion state (n = Sz + 1/2), so two-site reduced
density matrices are reported in the occupation basis order

    [|11>, |10>, |01>, |00>]

which matches the X-state layout of the analytic engine entrywise.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.optimize import minimize

from .model import ChainParams

__all__ = [
    "build_hamiltonian",
    "ground_state",
    "ground_state_energy_ed",
    "evolve",
    "reduced_density_two_site",
    "pair_correlators_ed",
    "wootters_concurrence",
    "numeric_discord",
    "mutual_information_dense",
    "diagonal_ensemble_loschmidt",
    "EDChain",
]

_MAX_SITES = 12

# local basis order (|0> = down, |1> = up); spin-1/2 operators
_SZ = np.array([[-0.5, 0.0], [0.0, 0.5]])
_SX = np.array([[0.0, 0.5], [0.5, 0.0]])
_SY = np.array([[0.0, 0.5j], [-0.5j, 0.0]])


def _site_operator(ops: dict[int, np.ndarray], N: int) -> sp.csr_matrix:
    """Kronecker chain with ``ops[j]`` acting on site j (site 0 = LSB)."""
    out = sp.identity(1, format="csr", dtype=complex)
    for j in range(N - 1, -1, -1):
        op = ops.get(j)
        factor = sp.csr_matrix(op.astype(complex)) if op is not None else sp.identity(2, format="csr", dtype=complex)
        out = sp.kron(out, factor, format="csr")
    return out


def build_hamiltonian(params: ChainParams) -> sp.csr_matrix:
    """Spin Hamiltonian of the periodic XY chain in a transverse field.

    Returns a sparse 2^N x 2^N Hermitian matrix; use ``.toarray()`` where a
    dense operator is needed.  Rejects N > 12.
    """
    N = params.N
    if N > _MAX_SITES:
        raise ValueError(f"exact diagonalization limited to N <= {_MAX_SITES}, got {N}")
    J, delta, h = params.J, params.delta, params.h
    dim = 2**N
    H = sp.csr_matrix((dim, dim), dtype=complex)
    for n in range(N):
        m = (n + 1) % N
        H = H - J * (1 + delta) * _site_operator({n: _SX, m: _SX}, N)
        H = H - J * (1 - delta) * _site_operator({n: _SY, m: _SY}, N)
        H = H - h * _site_operator({n: _SZ}, N)
    return H


def _parity_diagonal(N: int) -> np.ndarray:
    """Diagonal of the fermion-parity operator prod_j sigma^z_j (even N)."""
    bits = np.arange(2**N, dtype=np.uint64)
    n_up = np.zeros(2**N, dtype=np.int64)
    for j in range(N):
        n_up += ((bits >> np.uint64(j)) & np.uint64(1)).astype(np.int64)
    return np.where(n_up % 2 == 0, 1.0, -1.0)


def ground_state(params: ChainParams) -> tuple[float, np.ndarray]:
    """Even-parity ground state (energy, normalized vector) via dense eigh.

    The free-fermion engine lives in the even fermion-parity (antiperiodic)
    sector, so the lowest eigenvector with parity +1 is selected; for the
    ferromagnetic quasi-degenerate doublet this resolves the splitting.
    """
    H = build_hamiltonian(params).toarray()
    w, V = np.linalg.eigh(H)
    par = _parity_diagonal(params.N)
    for idx in np.argsort(w):
        vec = V[:, idx]
        p = float(np.real(np.vdot(vec, par * vec)))
        if p > 0.99:
            return float(w[idx]), vec
    raise RuntimeError("no even-parity eigenstate found")


def ground_state_energy_ed(params: ChainParams, sector: str = "even") -> float:
    """Ground-state energy via sparse Lanczos (cheap up to N = 12).

    ``sector`` selects the fermion-parity block: "even" (the sector the
    free-fermion engine describes) or "global".  Inside the factorization
    circle h^2 + (J delta)^2 < J^2 the finite-chain parity sectors cross, so
    the sector-resolved energy is the one that pins the Bogoliubov branch.
    """
    H = build_hamiltonian(params)
    if sector == "even":
        keep = np.flatnonzero(_parity_diagonal(params.N) > 0)
        H = H[keep, :][:, keep]
    elif sector != "global":
        raise ValueError(f"sector must be 'even' or 'global', got {sector!r}")
    w = spla.eigsh(H, k=1, which="SA", return_eigenvectors=False, tol=0)
    return float(w[0])


def evolve(state: np.ndarray, H, t: float, eig=None) -> np.ndarray:
    """Apply exp(-i H t) by full eigendecomposition.

    ``eig`` may carry a precomputed (eigenvalues, eigenvectors) pair to
    amortize the diagonalization across many times.
    """
    if eig is None:
        Hd = H.toarray() if sp.issparse(H) else np.asarray(H)
        eig = np.linalg.eigh(Hd)
    w, V = eig
    return V @ (np.exp(-1j * w * t) * (V.conj().T @ state))


def reduced_density_two_site(state: np.ndarray, site: int, N: int) -> np.ndarray:
    """Two-site reduced density matrix of sites (site, site+1 mod N).

    Returned in the occupation basis order [|11>, |10>, |01>, |00>].
    """
    j1 = site % N
    j2 = (site + 1) % N
    psi = np.asarray(state).reshape((2,) * N)
    # axis of site j is N-1-j (site 0 = least significant bit)
    ax1, ax2 = N - 1 - j1, N - 1 - j2
    psi = np.moveaxis(psi, (ax1, ax2), (0, 1)).reshape(4, -1)
    rho = psi @ psi.conj().T
    # reorder (|00>,|01>,|10>,|11>) -> (|11>,|10>,|01>,|00>)
    order = [3, 2, 1, 0]
    return rho[np.ix_(order, order)]


def pair_correlators_ed(state: np.ndarray, N: int, site: int = 0):
    """(G, Z, f) fermionic nearest-neighbor correlators read off the spin RDM.

    Valid entries of the two-site RDM in the occupation basis: for adjacent
    sites the Jordan-Wigner strings cancel, so G = <n_i>, Z = <a+_i a_{i+1}>
    and f = <a+_i a+_{i+1}> are plain matrix elements.
    """
    rho = reduced_density_two_site(state, site, N)
    G = float(np.real(rho[0, 0] + rho[1, 1]))
    Z = complex(rho[2, 1])
    f = complex(rho[3, 0])
    return G, Z, f


def wootters_concurrence(rho: np.ndarray) -> float:
    """Two-qubit concurrence max(0, sqrt(m1)-sqrt(m2)-sqrt(m3)-sqrt(m4)).

    m_i are eigenvalues of rho (sy x sy) rho* (sy x sy), descending.  The
    anti-diagonal spin-flip matrix is identical in the occupation ordering.
    """
    Y = np.zeros((4, 4))
    Y[0, 3] = Y[3, 0] = -1.0
    Y[1, 2] = Y[2, 1] = 1.0
    R = rho @ Y @ rho.conj() @ Y
    mu = np.sort(np.abs(np.real(np.linalg.eigvals(R))))[::-1]
    return max(0.0, float(np.sqrt(mu[0]) - np.sqrt(mu[1]) - np.sqrt(mu[2]) - np.sqrt(mu[3])))


def _entropy_from_eigs(w: np.ndarray) -> float:
    w = np.clip(np.real(w), 0.0, None)
    nz = w[w > 0]
    return float(-np.sum(nz * np.log2(nz)))


def mutual_information_dense(rho: np.ndarray) -> float:
    """S(A) + S(B) - S(AB) of a two-qubit density matrix (any basis order)."""
    r4 = rho.reshape(2, 2, 2, 2)
    rho_a = np.einsum("abcb->ac", r4)
    rho_b = np.einsum("abac->bc", r4)
    return (
        _entropy_from_eigs(np.linalg.eigvalsh(rho_a))
        + _entropy_from_eigs(np.linalg.eigvalsh(rho_b))
        - _entropy_from_eigs(np.linalg.eigvalsh(rho))
    )


def _measurement_grid(n_theta: int, n_phi: int):
    th = np.linspace(0.0, np.pi, n_theta)
    ph = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    T, P = np.meshgrid(th, ph, indexing="ij")
    return T.ravel(), P.ravel()


def _classical_corr_points(rho: np.ndarray, thetas, phis) -> np.ndarray:
    """Classical correlation objective for projective measurements on site B.

    Works on a general (not necessarily X-form) two-qubit density matrix by
    explicit partial-measurement algebra; independent of the closed-form
    X-state machinery of the analytic engine.
    """
    r4 = rho.reshape(2, 2, 2, 2)
    rho_a = np.einsum("abcb->ac", r4)
    s_a = _entropy_from_eigs(np.linalg.eigvalsh(rho_a))
    nx = np.sin(thetas) * np.cos(phis)
    ny = np.sin(thetas) * np.sin(phis)
    nz = np.cos(thetas)
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sy = np.array([[0.0, -1j], [1j, 0.0]], dtype=complex)
    sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    ndots = nx[:, None, None] * sx + ny[:, None, None] * sy + nz[:, None, None] * sz
    vals = np.full(len(thetas), s_a)
    for sign in (+1.0, -1.0):
        proj = 0.5 * (np.eye(2) + sign * ndots)  # (M, 2, 2)
        sub = np.einsum("abck,mkb->mac", r4, proj)  # unnormalized post-measurement A states
        p = np.real(np.trace(sub, axis1=1, axis2=2))
        w = np.linalg.eigvalsh(sub)  # eigenvalues of p * rho_A|outcome
        w = np.clip(np.real(w), 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            lg = np.where(w > 0, np.log2(np.maximum(w, 1e-300)), 0.0)
            lp = np.where(p > 0, np.log2(np.maximum(p, 1e-300)), 0.0)
        # p * S(rho_k) = -sum w log2 w + p log2 p
        vals -= -np.sum(w * lg, axis=1) + p * lp
    return vals


def numeric_discord(rho: np.ndarray, n_theta: int = 128, n_phi: int = 128) -> float:
    """Quantum discord I - max_{B-measurement} [S(A) - sum_k p_k S(A|k)].

    Dense-grid maximization over rank-1 projective measurements on site B
    followed by Nelder-Mead refinement from the best grid point.
    """
    th, ph = _measurement_grid(n_theta, n_phi)
    vals = _classical_corr_points(rho, th, ph)
    best = int(np.argmax(vals))

    def neg(x):
        return -_classical_corr_points(rho, np.array([x[0]]), np.array([x[1]]))[0]

    res = minimize(
        neg,
        x0=[th[best], ph[best]],
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400},
    )
    cc = max(float(vals[best]), float(-res.fun))
    return mutual_information_dense(rho) - cc


def diagonal_ensemble_loschmidt(w: np.ndarray, V: np.ndarray, psi0: np.ndarray, psi_entry: np.ndarray) -> float:
    """Long-time average of |<psi0| e^{-iHt} |psi_entry>|^2 in eigenbasis (w, V).

    Degenerate eigenvalues are grouped (rounded at 1e-10) so that stationary
    cross terms inside a degenerate multiplet are kept.
    """
    c = (V.conj().T @ psi0).conj() * (V.conj().T @ psi_entry)
    key = np.round(w, 10)
    total = 0.0
    order = np.argsort(key)
    ck, wk = c[order], key[order]
    start = 0
    for i in range(1, len(wk) + 1):
        if i == len(wk) or wk[i] != wk[start]:
            total += abs(np.sum(ck[start:i])) ** 2
            start = i
    return float(total)


class EDChain:
    """Convenience wrapper caching eigensystems for one (delta, J, N) family."""

    def __init__(self, delta: float, N: int, J: float = 1.0):
        self.delta = delta
        self.N = N
        self.J = J
        self._eigs: dict[float, tuple[np.ndarray, np.ndarray]] = {}

    def params(self, h: float) -> ChainParams:
        return ChainParams(h=h, delta=self.delta, J=self.J, N=self.N)

    def eigensystem(self, h: float):
        if h not in self._eigs:
            H = build_hamiltonian(self.params(h)).toarray()
            self._eigs[h] = np.linalg.eigh(H)
        return self._eigs[h]

    def ground_state(self, h: float) -> np.ndarray:
        w, V = self.eigensystem(h)
        par = _parity_diagonal(self.N)
        for idx in np.argsort(w):
            vec = V[:, idx]
            if float(np.real(np.vdot(vec, par * vec))) > 0.99:
                return vec
        raise RuntimeError("no even-parity eigenstate found")

    def state_at(self, protocol, t: float) -> np.ndarray:
        """State under the quench schedule: H(h_i) ground state evolved by
        H(h_m) for min(t, T), then by H(h_f) for t - T (single quench: by
        H(h_f) throughout)."""
        psi = self.ground_state(protocol.h_i)
        if protocol.h_m is None:
            return evolve(psi, None, t, eig=self.eigensystem(protocol.h_f))
        T = protocol.T
        psi = evolve(psi, None, min(t, T), eig=self.eigensystem(protocol.h_m))
        if t > T:
            psi = evolve(psi, None, t - T, eig=self.eigensystem(protocol.h_f))
        return psi

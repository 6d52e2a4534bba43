"""Scenario runner: parameter sweeps for the bundled figure presets, CSV out.

Subcommands
-----------
equilibrium       ground-state C and QD versus h                    (fig2)
single-scan       steady QCs versus h_f at fixed h_i                (fig3)
initial-scan      steady QCs versus h_i at fixed h_f                (fig5)
double-time-scan  steady QCs versus spending time T                 (fig6)
middle-scan       steady QCs versus h_m, dephased or argmax-T mode  (fig7, fig8)
spectral          |g0| curves and maximal-sector profiles           (fig4)
loschmidt         steady echo rate versus h_f, critical times       (loschmidt)
validate          exact-diagonalization equivalence battery

Configuration is a flat key = value file (see the bundled presets named
fig2..fig8); command-line flags override file values.  Output is CSV with
'#'-prefixed metadata lines, one header row, floats at 12 significant
digits, and full protocol provenance on every row, so identical configs
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__, measures, spectral
from .model import ChainParams, ground_state_energy
from .oracle import (
    EDChain,
    ground_state_energy_ed,
    numeric_discord,
    pair_correlators_ed,
    reduced_density_two_site,
    wootters_concurrence,
)
from .quench import QuenchProtocol, correlators, equilibrium_correlators
from .steady import steady_double, steady_double_dephased_middle, steady_single

__all__ = ["ScanConfig", "ConfigError", "main", "run_scenario", "run_validate", "BATTERY"]

SCENARIOS = (
    "equilibrium",
    "single-scan",
    "initial-scan",
    "double-time-scan",
    "middle-scan",
    "spectral",
    "loschmidt",
)

_PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "loschmidt")


class ConfigError(ValueError):
    pass


@dataclass
class ScanConfig:
    """One sweep: chain defaults, protocol fixed fields, grid, output."""

    scenario: str = ""
    n_sites: int = 2000
    delta: float = 0.5
    j: float = 1.0
    hi: tuple[float, ...] = ()
    hm: tuple[float, ...] = ()
    hf: tuple[float, ...] = ()
    spend_time: float | None = None
    grid: tuple[float, float, float] = (0.0, 0.0, 0.0)
    mode: str = "dephased"
    out: str = "scan.csv"
    jobs: int = 1
    argmax_t_window: tuple[float, float, float] = (0.0, 10.0, 0.01)

    def grid_values(self) -> np.ndarray:
        start, stop, step = self.grid
        if step <= 0 or stop < start:
            raise ConfigError(f"bad grid {self.grid}; need START:STOP:STEP with step > 0")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(n)

    def echo(self) -> str:
        parts = [
            f"scenario={self.scenario}",
            f"n_sites={self.n_sites}",
            f"delta={_fmt(self.delta)}",
            f"j={_fmt(self.j)}",
            f"hi={','.join(_fmt(x) for x in self.hi)}",
            f"hm={','.join(_fmt(x) for x in self.hm)}",
            f"hf={','.join(_fmt(x) for x in self.hf)}",
            f"spend_time={_fmt(self.spend_time) if self.spend_time is not None else ''}",
            f"grid={_fmt(self.grid[0])}:{_fmt(self.grid[1])}:{_fmt(self.grid[2])}",
            f"mode={self.mode}",
        ]
        return " ".join(parts)


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return f"{x:.12g}"


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}: {exc}") from exc


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be START:STOP:STEP, got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from exc


def load_config(path_or_preset: str) -> ScanConfig:
    """Read a flat key = value config file; bare preset names resolve to
    the bundled files (fig2..fig8, loschmidt)."""
    p = Path(path_or_preset)
    if not p.exists() and path_or_preset in _PRESETS:
        text = resources.files("xyquench").joinpath(f"presets/{path_or_preset}.cfg").read_text()
    elif p.exists():
        text = p.read_text()
    else:
        raise ConfigError(f"config file not found: {path_or_preset}")
    cfg = ScanConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "scenario":
                cfg.scenario = value
            elif key == "n_sites":
                cfg.n_sites = int(value)
            elif key == "delta":
                cfg.delta = float(value)
            elif key == "j":
                cfg.j = float(value)
            elif key == "hi":
                cfg.hi = _parse_floats(value)
            elif key == "hm":
                cfg.hm = _parse_floats(value)
            elif key == "hf":
                cfg.hf = _parse_floats(value)
            elif key == "spend_time":
                cfg.spend_time = float(value)
            elif key == "grid":
                cfg.grid = _parse_grid(value)
            elif key == "mode":
                cfg.mode = value
            elif key == "out":
                cfg.out = value
            elif key == "jobs":
                cfg.jobs = int(value)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    return cfg


def write_csv(path: str, scenario: str, config_echo: str, header: list[str], rows: list[tuple]) -> None:
    lines = [
        f"# xyquench {__version__}",
        f"# scenario: {scenario}",
        f"# config: {config_echo}",
        ",".join(header),
    ]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n")


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# ---------------------------------------------------------------- scenarios

def _qc_of(scorr) -> measures.QCValues:
    return measures.qc_values(measures.assemble_xstate(scorr))


def _equilibrium_qc(args):
    h, delta, J, N = args
    vals = _qc_of(equilibrium_correlators(ChainParams(h=h, delta=delta, J=J, N=N)))
    return (h, vals.concurrence, vals.discord, vals.mutual_info, vals.classical_corr, N, delta, J)


def run_equilibrium_scan(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    header = ["h", "concurrence", "discord", "mutual_info", "classical_corr", "n_sites", "delta", "j"]
    items = [(float(h), cfg.delta, cfg.j, cfg.n_sites) for h in cfg.grid_values()]
    return header, _pmap(_equilibrium_qc, items, cfg.jobs)


def _single_scan_row(args):
    h_i, h_f, delta, J, N = args
    steady = _qc_of(steady_single(QuenchProtocol(h_i=h_i, h_f=h_f, delta=delta, J=J, N=N)))
    eq = _qc_of(equilibrium_correlators(ChainParams(h=h_f, delta=delta, J=J, N=N)))
    return (h_i, h_f, steady.concurrence, steady.discord, eq.concurrence, eq.discord, N, delta, J)


def run_single_quench_scan(cfg: ScanConfig, sweep: str) -> tuple[list[str], list[tuple]]:
    """Sweep h_f at fixed h_i (sweep='final') or h_i at fixed h_f (sweep='initial')."""
    header = ["h_i", "h_f", "c_steady", "qd_steady", "c_eq", "qd_eq", "n_sites", "delta", "j"]
    if sweep == "final":
        fixed = cfg.hi or (0.5,)
        items = [(hi, float(hf), cfg.delta, cfg.j, cfg.n_sites) for hi in fixed for hf in cfg.grid_values()]
    else:
        fixed = cfg.hf or (2.0,)
        items = [(float(hi), hf, cfg.delta, cfg.j, cfg.n_sites) for hf in fixed for hi in cfg.grid_values()]
    return header, _pmap(_single_scan_row, items, cfg.jobs)


def _protocol_pairs(cfg: ScanConfig) -> list[tuple[float, float]]:
    if not cfg.hi or not cfg.hf:
        raise ConfigError(f"scenario {cfg.scenario!r} needs hi and hf lists of equal length")
    if len(cfg.hi) != len(cfg.hf):
        raise ConfigError("hi and hf lists are zipped into protocols and must have equal length")
    return list(zip(cfg.hi, cfg.hf))


def _double_time_row(args):
    h_i, h_m, h_f, T, delta, J, N, base_c, base_qd = args
    qc = _qc_of(steady_double(QuenchProtocol(h_i=h_i, h_f=h_f, h_m=h_m, T=T, delta=delta, J=J, N=N)))
    return (h_i, h_m, h_f, T, qc.concurrence, qc.discord, base_c, base_qd, N, delta, J)


def run_double_quench_time_scan(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    header = [
        "h_i", "h_m", "h_f", "spend_time", "c_steady", "qd_steady",
        "c_single", "qd_single", "n_sites", "delta", "j",
    ]
    if not cfg.hm:
        raise ConfigError("double-time-scan needs at least one middle field hm")
    items = []
    for h_i, h_f in _protocol_pairs(cfg):
        base = _qc_of(steady_single(QuenchProtocol(h_i=h_i, h_f=h_f, delta=cfg.delta, J=cfg.j, N=cfg.n_sites)))
        for h_m in cfg.hm:
            for T in cfg.grid_values():
                items.append((h_i, h_m, h_f, float(T), cfg.delta, cfg.j, cfg.n_sites, base.concurrence, base.discord))
    return header, _pmap(_double_time_row, items, cfg.jobs)


def _steady_double_batch(h_i, h_m, h_f, delta, J, N, Ts):
    """Steady (G, Z, f) arrays over a grid of spending times."""
    from .model import mode_data, momentum_grid

    k = momentum_grid(N)
    th_i = mode_data(ChainParams(h=h_i, delta=delta, J=J, N=N), k).theta_k
    mid = mode_data(ChainParams(h=h_m, delta=delta, J=J, N=N), k)
    th_f = mode_data(ChainParams(h=h_f, delta=delta, J=J, N=N), k).theta_k
    phi_m = mid.theta_k - th_i
    phi_f = th_f - mid.theta_k
    deph = (
        np.cos(2 * phi_f)[:, None] * np.cos(2 * phi_m)[:, None]
        - np.sin(2 * phi_f)[:, None] * np.sin(2 * phi_m)[:, None] * np.cos(2 * mid.eps_k[:, None] * Ts[None, :])
    )
    c2t = np.cos(2 * th_f)[:, None]
    s2t = np.sin(2 * th_f)[:, None]
    occ = 1.0 - c2t * deph
    G = occ.sum(axis=0) / N
    Z = (np.cos(k)[:, None] * occ).sum(axis=0) / N
    f = -(np.sin(k)[:, None] * s2t * deph).sum(axis=0) / N
    return G, Z, f


def _xstate_batch(G, Z, f):
    xp = G * G - Z * Z + f * f
    y = G - xp
    xm = 1.0 - 2.0 * G + xp
    return xp, xm, y


def _concurrence_batch(G, Z, f):
    xp, xm, y = _xstate_batch(G, Z, f)
    lam1 = 2.0 * (np.abs(Z) - np.sqrt(np.clip(xp * xm, 0.0, None)))
    lam2 = 2.0 * (np.abs(f) - np.sqrt(np.clip(y * y, 0.0, None)))
    return np.maximum(0.0, np.maximum(lam1, lam2))


def _qd_batch_coarse(G, Z, f, n_theta=48, n_phi=24):
    """Grid-resolution discord for argmax localization over many states."""
    xp, xm, y = _xstate_batch(G, Z, f)
    az, af = np.abs(Z), np.abs(f)
    c1 = 2.0 * (az + af)
    c2 = 2.0 * (az - af)
    c3 = xp + xm - 2.0 * y
    r = 2.0 * (xp + y) - 1.0
    cvecs = np.stack([c1, c2, c3, r, r], axis=1)
    cc = measures._cc_grid_batch(cvecs, n_theta=n_theta, n_phi=n_phi)
    # mutual information from the closed-form block eigenvalues
    sx = 0.5 * (xp + xm)
    dx = np.hypot(0.5 * (xp - xm), af)
    sy = y
    dy = az
    eigs = np.stack([sx + dx, sx - dx, sy + dy, sy - dy], axis=1)
    eigs = np.clip(eigs, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_ab = -np.sum(np.where(eigs > 0, eigs * np.log2(np.maximum(eigs, 1e-300)), 0.0), axis=1)
    pa = np.clip(np.stack([xp + y, 1.0 - (xp + y)], axis=1), 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_a = -np.sum(np.where(pa > 0, pa * np.log2(np.maximum(pa, 1e-300)), 0.0), axis=1)
    return 2.0 * s_a - s_ab - cc


def _middle_scan_row(args):
    h_i, h_m, h_f, delta, J, N, mode, window, base_c, base_qd = args
    if mode == "dephased":
        proto = QuenchProtocol(h_i=h_i, h_f=h_f, h_m=h_m, T=0.0, delta=delta, J=J, N=N)
        qc = _qc_of(steady_double_dephased_middle(proto))
        return (h_i, h_m, h_f, mode, qc.concurrence, qc.discord, float("nan"), float("nan"), base_c, base_qd, N, delta, J)
    t0, t1, dt = window
    Ts = t0 + dt * np.arange(int(np.floor((t1 - t0) / dt + 1e-9)) + 1)
    G, Z, f = _steady_double_batch(h_i, h_m, h_f, delta, J, N, Ts)
    Z, f = np.real(Z), np.real(f)

    def state_at(T):
        return measures.assemble_xstate(
            steady_double(QuenchProtocol(h_i=h_i, h_f=h_f, h_m=h_m, T=float(T), delta=delta, J=J, N=N))
        )

    def c_of(T):
        return measures.concurrence(state_at(T))

    def qd_of(T):
        return measures.quantum_discord(state_at(T))

    def refine(metric_values, value_of):
        from scipy.optimize import minimize_scalar

        i = int(np.argmax(metric_values))
        lo, hi = Ts[max(i - 1, 0)], Ts[min(i + 1, len(Ts) - 1)]
        if hi <= lo:
            return float(Ts[i]), float(value_of(Ts[i]))
        res = minimize_scalar(lambda T: -value_of(T), bounds=(lo, hi), method="bounded", options={"xatol": 1e-6})
        if -res.fun >= value_of(Ts[i]):
            return float(res.x), float(-res.fun)
        return float(Ts[i]), float(value_of(Ts[i]))

    t_c, c_best = refine(_concurrence_batch(G, Z, f), c_of)
    t_qd, qd_best = refine(_qd_batch_coarse(G, Z, f), qd_of)
    return (h_i, h_m, h_f, mode, c_best, qd_best, t_c, t_qd, base_c, base_qd, N, delta, J)


def run_middle_point_scan(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    header = [
        "h_i", "h_m", "h_f", "mode", "c_steady", "qd_steady", "t_best_c", "t_best_qd",
        "c_single", "qd_single", "n_sites", "delta", "j",
    ]
    if cfg.mode not in ("dephased", "argmax-T"):
        raise ConfigError(f"middle-scan mode must be 'dephased' or 'argmax-T', got {cfg.mode!r}")
    items = []
    for h_i, h_f in _protocol_pairs(cfg):
        base = _qc_of(steady_single(QuenchProtocol(h_i=h_i, h_f=h_f, delta=cfg.delta, J=cfg.j, N=cfg.n_sites)))
        for h_m in cfg.grid_values():
            items.append(
                (h_i, float(h_m), h_f, cfg.delta, cfg.j, cfg.n_sites, cfg.mode, cfg.argmax_t_window,
                 base.concurrence, base.discord)
            )
    return header, _pmap(_middle_scan_row, items, cfg.jobs)


def _g0_row(args):
    h_i, h_f, delta, J, N = args
    return (h_i, h_f, spectral.g0(h_i, h_f, delta, N, J), N, delta, J)


def run_spectral_analysis(cfg: ScanConfig) -> tuple[tuple[list[str], list[tuple]], tuple[list[str], list[tuple]]]:
    """Returns the |g0| table and the maximal-sector profile table."""
    if not cfg.hi:
        raise ConfigError("spectral scenario needs at least one initial field hi")
    g0_header = ["h_i", "h_f", "g0_abs", "n_sites", "delta", "j"]
    items = [(hi, float(hf), cfg.delta, cfg.j, cfg.n_sites) for hi in cfg.hi for hf in cfg.grid_values()]
    g0_rows = _pmap(_g0_row, items, cfg.jobs)

    sec_header = ["h_i", "h_f", "n_f", "g_max", "c_n", "n_sites", "delta", "j"]
    sec_rows = []
    for h_i in cfg.hi:
        for h_f in cfg.hf:
            if h_f == h_i:
                continue
            for s in spectral.g_max_per_sector(h_i, h_f, cfg.delta, cfg.n_sites, cfg.j):
                sec_rows.append((h_i, h_f, s.n_f, s.g_abs, s.concurrence, cfg.n_sites, cfg.delta, cfg.j))
    return (g0_header, g0_rows), (sec_header, sec_rows)


def _loschmidt_row(args):
    h_i, h_f, h_m, T, delta, J, N = args
    if h_m is None:
        ls = spectral.loschmidt_steady_single(h_i, h_f, delta, N, J)
        crit = spectral.dqpt_critical_times(h_i, h_f, delta, N, J=J, n_times=1)
    else:
        ls = spectral.loschmidt_steady_double(h_i, h_m, h_f, T, delta, N, J)
        crit = spectral.dqpt_critical_times(h_i, h_f, delta, N, h_m=h_m, T=T, J=J, n_times=1)
    k_star = crit[0].k_star if crit else float("nan")
    t_star = crit[0].t_star if crit else float("nan")
    t0 = crit[0].times[0] if crit and crit[0].times else float("nan")
    hm_out = h_m if h_m is not None else float("nan")
    t_out = T if T is not None else float("nan")
    return (h_i, hm_out, h_f, t_out, ls.rate, ls.lbar, k_star, t_star, t0, N, delta, J)


def run_loschmidt_scan(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    header = ["h_i", "h_m", "h_f", "spend_time", "rate", "lbar", "k_star", "t_star", "t0", "n_sites", "delta", "j"]
    fixed = cfg.hi or (0.5,)
    h_m = cfg.hm[0] if cfg.hm else None
    if h_m is not None and cfg.spend_time is None:
        raise ConfigError("double-quench loschmidt scan needs spend_time")
    items = [
        (hi, float(hf), h_m, cfg.spend_time, cfg.delta, cfg.j, cfg.n_sites)
        for hi in fixed
        for hf in cfg.grid_values()
    ]
    return header, _pmap(_loschmidt_row, items, cfg.jobs)


def run_scenario(cfg: ScanConfig) -> list[str]:
    """Run one configured scenario, write its CSV file(s), return the paths."""
    if cfg.scenario == "equilibrium":
        header, rows = run_equilibrium_scan(cfg)
    elif cfg.scenario == "single-scan":
        header, rows = run_single_quench_scan(cfg, sweep="final")
    elif cfg.scenario == "initial-scan":
        header, rows = run_single_quench_scan(cfg, sweep="initial")
    elif cfg.scenario == "double-time-scan":
        header, rows = run_double_quench_time_scan(cfg)
    elif cfg.scenario == "middle-scan":
        header, rows = run_middle_point_scan(cfg)
    elif cfg.scenario == "spectral":
        (g0_h, g0_r), (sec_h, sec_r) = run_spectral_analysis(cfg)
        write_csv(cfg.out, cfg.scenario, cfg.echo(), g0_h, g0_r)
        sectors_path = str(Path(cfg.out).with_suffix("")) + "_sectors.csv"
        write_csv(sectors_path, "spectral-sectors", cfg.echo(), sec_h, sec_r)
        return [cfg.out, sectors_path]
    elif cfg.scenario == "loschmidt":
        header, rows = run_loschmidt_scan(cfg)
    else:
        raise ConfigError(f"unknown scenario {cfg.scenario!r}; choose from {SCENARIOS}")
    write_csv(cfg.out, cfg.scenario, cfg.echo(), header, rows)
    return [cfg.out]


# ---------------------------------------------------------------- validation

BATTERY = (
    QuenchProtocol(h_i=0.5, h_f=2.0, delta=0.5, N=8),
    QuenchProtocol(h_i=2.0, h_f=0.5, delta=0.5, N=8),
    QuenchProtocol(h_i=0.8, h_m=1.5, h_f=5.0, T=2.0, delta=0.5, N=8),
    QuenchProtocol(h_i=0.7, h_m=2.0, h_f=0.5, T=1.0, delta=0.5, N=8),
)
BATTERY_TIMES = (0.0, 0.5, 1.0, 5.0)


def battery_protocols(sizes=(8, 10)) -> list[QuenchProtocol]:
    return [replace(p, N=n) for n in sizes for p in BATTERY]


def run_validate(sizes=(8, 10), energy_sizes=(8, 10, 12), verbose: bool = True) -> bool:
    """ED-vs-free-fermion battery; prints one line per check with the max
    deviation found.  Returns True when every check passes its tolerance."""

    def report(name, dev, tol):
        ok = dev < tol
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}  {name:<44s} max|dev| = {dev:.3e}  (tol {tol:g})")
        return ok

    ok = True
    dev_e = 0.0
    for n in energy_sizes:
        for h in (0.25, 0.5, 1.0, 2.0):
            for d in (0.5, 1.0):
                p = ChainParams(h=h, delta=d, N=n)
                dev_e = max(dev_e, abs(ground_state_energy(p) - ground_state_energy_ed(p)))
    ok &= report(f"ground energy, N in {tuple(energy_sizes)}", dev_e, 1e-10)

    dev_c, dev_rho, dev_meas = 0.0, 0.0, 0.0
    for n in sizes:
        chain = EDChain(0.5, n)
        for proto in battery_protocols((n,)):
            for t in BATTERY_TIMES:
                psi = chain.state_at(proto, t)
                G, Z, f = pair_correlators_ed(psi, n)
                c = correlators(proto, t)
                dev_c = max(dev_c, abs(c.G - G), abs(c.Z - Z), abs(c.f - f))
                rho = measures.assemble_xstate(c)
                rho_ed = reduced_density_two_site(psi, 0, n)
                dev_rho = max(dev_rho, float(np.max(np.abs(rho.matrix() - rho_ed))))
                dev_meas = max(
                    dev_meas,
                    abs(measures.concurrence(rho) - wootters_concurrence(rho_ed)),
                    abs(measures.quantum_discord(rho) - numeric_discord(rho_ed)),
                )
    ok &= report(f"correlators G,Z,f, N in {tuple(sizes)}", dev_c, 1e-8)
    ok &= report("two-site density matrix, entrywise", dev_rho, 1e-8)
    ok &= report("concurrence and discord", dev_meas, 1e-6)
    return bool(ok)


# ---------------------------------------------------------------- entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xyquench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SCENARIOS + ("validate",):
        p = sub.add_parser(name)
        p.add_argument("--config", help="config file path or bundled preset name (fig2..fig8)")
        p.add_argument("--delta", type=float)
        p.add_argument("--n-sites", type=int)
        p.add_argument("--hi", type=str, help="initial field(s), comma separated")
        p.add_argument("--hm", type=str, help="middle field(s), comma separated")
        p.add_argument("--hf", type=str, help="final field(s), comma separated")
        p.add_argument("--spend-time", type=float)
        p.add_argument("--grid", type=str, help="swept variable as START:STOP:STEP")
        p.add_argument("--mode", choices=["dephased", "argmax-T"])
        p.add_argument("--out", type=str)
        p.add_argument("--jobs", type=int)
    return parser


def _apply_overrides(cfg: ScanConfig, args: argparse.Namespace) -> ScanConfig:
    if args.delta is not None:
        cfg.delta = args.delta
    if args.n_sites is not None:
        cfg.n_sites = args.n_sites
    if args.hi is not None:
        cfg.hi = _parse_floats(args.hi)
    if args.hm is not None:
        cfg.hm = _parse_floats(args.hm)
    if args.hf is not None:
        cfg.hf = _parse_floats(args.hf)
    if args.spend_time is not None:
        cfg.spend_time = args.spend_time
    if args.grid is not None:
        cfg.grid = _parse_grid(args.grid)
    if args.mode is not None:
        cfg.mode = args.mode
    if args.out is not None:
        cfg.out = args.out
    if args.jobs is not None:
        cfg.jobs = args.jobs
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "validate":
        return 0 if run_validate() else 1
    try:
        cfg = load_config(args.config) if args.config else ScanConfig()
        cfg.scenario = args.command
        cfg = _apply_overrides(cfg, args)
        paths = run_scenario(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())

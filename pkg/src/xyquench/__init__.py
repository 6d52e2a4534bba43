"""Exact quench dynamics and steady-state quantum correlations of the
spin-1/2 transverse-field XY chain."""

__version__ = "0.1.0"

from .model import ChainParams, ModeData, bogoliubov_angle, dispersion, ground_state_energy, mode_data, momentum_grid
from .quench import (
    PairCorrelators,
    QuenchProtocol,
    correlators,
    double_quench_correlators,
    equilibrium_correlators,
    single_quench_correlators,
)
from .steady import (
    SteadyCorrelators,
    numeric_time_average,
    steady_double,
    steady_double_dephased_middle,
    steady_single,
)
from .measures import (
    QCValues,
    XStateDensity,
    assemble_xstate,
    classical_correlation,
    concurrence,
    mutual_information,
    qc_values,
    quantum_discord,
    xstate_eigenvalues,
)
from .spectral import (
    CriticalTimes,
    LoschmidtSteady,
    SpectralSector,
    dqpt_critical_times,
    excited_state_concurrence,
    g0,
    g_max_per_sector,
    loschmidt_steady_double,
    loschmidt_steady_single,
    steady_concurrence_decomposition,
)

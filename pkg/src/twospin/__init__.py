"""Irreversible decay of a driven two-nucleus spin system.

Modules
-------
spin_model   Hamiltonian matrices and energy levels of the spin pair.
lineshape    Lorentzian lineshape, decay rate, transition rate, level shift.
evolution    Closed-form survival element <-1|rho(t)|-1> and its kernels.
oracle       Independent quadrature reference for every closed-form integral.
cli          Figure presets, key=value configs and CSV output.
"""

from .errors import DomainError, NumericError, UsageError
from .evolution import (
    EvolutionParams,
    EvolutionSeries,
    KernelEvaluation,
    evolve_series,
    kernel_AB,
    markov_term,
    memory_integral,
    rho_element,
    second_order_constant,
)
from .lineshape import LineshapeParams, RateReport, decay_rate, lorentzian, rate_w, renormalized_energy
from .spin_model import (
    CARBON_13,
    HYDROGEN_1,
    FieldConfig,
    GeometricFactors,
    Nucleus,
    SpectrumReport,
    SpinGeometry,
    dipolar_matrix,
    geometric_factors,
    gyromagnetic_ratio,
    rf_matrix,
    spectrum,
    zeeman_matrix,
)

__version__ = "0.1.0"

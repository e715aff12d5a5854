"""Exact nonrelativistic wavefunction of a charged particle in a plane-wave laser field."""
from .errors import (
    DegenerateOrderError,
    EvaluationOverflow,
    InvalidConfig,
    NonConvergenceError,
    NrvolkovError,
    NumericalError,
    PoleError,
    ResonanceError,
    UnitError,
)
from .model import (
    DimensionlessParams,
    PhysicalConfig,
    SpacetimePoint,
    UnitSystem,
    light_cone_phase,
    to_dimensionless,
)
from .perturbation import (
    ExpansionCoefficients,
    driven_coefficients_oracle,
    expansion_coefficients,
    psi_perturbative,
)
from .solution import DerivedQuantities, derived_quantities, psi_free, psi_hat_exact
from .specfun import SeriesControl, kummer_1f1, laguerre_general, log_gamma
from .verify import ResidualReport, compare_report, residual_convergence, schrodinger_residual

__version__ = "0.1.0"

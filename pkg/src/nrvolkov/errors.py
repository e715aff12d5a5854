"""Exception hierarchy shared by the numerical kernel, the model and the CLI."""


class NrvolkovError(Exception):
    """Base class for all package errors."""


class InvalidConfig(NrvolkovError, ValueError):
    """A configuration or parameter set violates its invariants."""


class UnitError(InvalidConfig):
    """Dimensionful input that cannot be reconciled with the unit system."""


class NumericalError(NrvolkovError, ArithmeticError):
    """A special-function evaluation failed."""


class PoleError(NumericalError):
    """Argument sits on a pole of the gamma function."""


class DegenerateOrderError(NumericalError):
    """Kummer series denominator parameter is a nonpositive integer."""


class NonConvergenceError(NumericalError):
    """Series did not reach its stopping rule within the term budget."""


class EvaluationOverflow(NumericalError, OverflowError):
    """A result is not representable as a finite binary64 complex."""


class ResonanceError(NrvolkovError, ArithmeticError):
    """A perturbative denominator vanishes (driven mode on the free dispersion)."""

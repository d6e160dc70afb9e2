"""parwhit: parabolic (Grassmannian) Whittaker function numerics.

Evaluates the specialized Whittaker function Psi^(m,N)_lambda(x, 0, ..., 0)
by Mellin-Barnes contour quadrature and by its residue-lattice series,
computes the leading x -> -infinity asymptotics, and numerically verifies
the Gelfand-Zetlin difference-operator scaffolding behind those formulas.
"""

__version__ = "0.1.0"

from .asympt import coset_coefficient, enumerate_cosets, leading_asymptotic
from .errors import (CoincidentPointsError, ConfigError, DeskScaleError,
                     DomainError, GenericityError, ParwhitError, PoleError,
                     QuadratureError, SupportError, VerificationError)
from .gammafns import HbarParam, gamma1, log_gamma, recip_gamma1
from .logcomplex import LogComplex, rescaled_sum
from .mbquad import MBResult, auto_contour, eval_mb, integrand
from .residues import (PoleAssignment, SeriesConfig, SeriesResult,
                       enumerate_terms, eval_residue_series, residue_term)
from .spectral import ContourConfig, SpectralData

__all__ = [
    "__version__",
    "LogComplex", "rescaled_sum",
    "HbarParam", "log_gamma", "gamma1", "recip_gamma1",
    "SpectralData", "ContourConfig",
    "MBResult", "integrand", "eval_mb", "auto_contour",
    "PoleAssignment", "SeriesConfig", "SeriesResult",
    "enumerate_terms", "residue_term", "eval_residue_series",
    "enumerate_cosets", "coset_coefficient", "leading_asymptotic",
    "ParwhitError", "ConfigError", "DomainError", "PoleError",
    "GenericityError", "CoincidentPointsError", "DeskScaleError",
    "QuadratureError", "SupportError", "VerificationError",
]

"""Complex gamma machinery in the hbar-rescaled normalization.

The workhorse is the rescaled gamma

    gamma1(z | hbar) = hbar^(z/hbar) * Gamma(z/hbar),

with the principal branch of hbar^(z/hbar) = exp((z/hbar) log hbar), hbar > 0.
It has simple poles exactly at z = -n*hbar, n = 0, 1, 2, ..., and satisfies
the recurrence gamma1(z + hbar) = z * gamma1(z).

All values are returned in log space (LogComplex); the reciprocal, which is
entire, is returned as an ordinary complex with exact zeros on the pole set.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import loggamma as _loggamma

from .errors import ConfigError, PoleError
from .logcomplex import LogComplex

__all__ = ["HbarParam", "log_gamma", "gamma1", "recip_gamma1", "log_gamma1_value", "POLE_TOL"]

#: distance (in units of hbar for gamma1) below which an argument counts as a pole
POLE_TOL = 1e-12


@dataclass(frozen=True)
class HbarParam:
    """Strictly positive quantization scale; negative or zero values are rejected."""

    hbar: float

    def __post_init__(self):
        if not (isinstance(self.hbar, (int, float)) and math.isfinite(self.hbar) and self.hbar > 0):
            raise ConfigError(f"hbar must be a finite real > 0, got {self.hbar!r}")


def _as_hbar(hbar: "HbarParam | float") -> float:
    if isinstance(hbar, HbarParam):
        return float(hbar.hbar)
    return float(HbarParam(hbar).hbar)


def _near_nonpositive_integer(w: complex, tol: float) -> bool:
    n = round(w.real)
    return n <= 0 and abs(w.real - n) <= tol and abs(w.imag) <= tol


def log_gamma(z: complex) -> LogComplex:
    """Gamma(z) in log form (principal branch).

    Raises PoleError when z is within POLE_TOL of a nonpositive integer.
    """
    z = complex(z)
    if _near_nonpositive_integer(z, POLE_TOL):
        raise PoleError(f"Gamma pole at z = {z}")
    return LogComplex.from_log(complex(_loggamma(z)))


def log_gamma1_value(z: complex, hbar: "HbarParam | float") -> complex:
    """Unchecked natural log of gamma1(z|hbar); caller guards poles."""
    h = _as_hbar(hbar)
    w = complex(z) / h
    return w * math.log(h) + complex(_loggamma(w))


def gamma1(z: complex, hbar: "HbarParam | float") -> LogComplex:
    """The rescaled gamma hbar^(z/hbar) Gamma(z/hbar) in log form.

    Raises PoleError when z/hbar is within POLE_TOL of a nonpositive integer.
    """
    h = _as_hbar(hbar)
    w = complex(z) / h
    if _near_nonpositive_integer(w, POLE_TOL):
        raise PoleError(f"gamma1 pole: z = {z} is within tolerance of {round(w.real)}*hbar")
    return LogComplex.from_log(w * math.log(h) + complex(_loggamma(w)))


def recip_gamma1(z: complex, hbar: "HbarParam | float") -> complex:
    """1 / gamma1(z|hbar) as an ordinary complex; entire in z.

    Returns exactly 0 when z sits on the pole set z = -n*hbar (within
    POLE_TOL in units of hbar), where the reciprocal has its zeros.
    """
    h = _as_hbar(hbar)
    w = complex(z) / h
    if _near_nonpositive_integer(w, POLE_TOL):
        return 0j
    return cmath.exp(-(w * math.log(h) + complex(_loggamma(w))))

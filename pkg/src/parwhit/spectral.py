"""Problem-instance and contour-configuration containers."""

from __future__ import annotations

import math
from dataclasses import dataclass


import numpy as np

from .errors import ConfigError, DeskScaleError, GenericityError

__all__ = ["SpectralData", "ContourConfig", "GENERICITY_MARGIN"]

#: minimal distance of lambda_i - lambda_j from hbar*Z, in units of hbar
GENERICITY_MARGIN = 1e-6

#: largest quadrature dimension supported by the tensor-product grid
MAX_QUAD_DIM = 3


@dataclass(frozen=True)
class SpectralData:
    """One problem instance: evaluate Psi^(m,N)_lambda at (x, 0, ..., 0).

    lam holds the N real spectral parameters; hbar > 0; x real (the residue
    series additionally requires x < 0).
    """

    m: int
    N: int
    lam: tuple[float, ...]
    hbar: float
    x: float

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.N, int)):
            raise ConfigError("m and N must be integers")
        if not 1 <= self.m < self.N:
            raise ConfigError(f"need 1 <= m < N, got m={self.m}, N={self.N}")
        lam = tuple(float(v) for v in self.lam)
        if len(lam) != self.N:
            raise ConfigError(f"lambda must have length N={self.N}, got {len(lam)}")
        if not all(math.isfinite(v) for v in lam):
            raise ConfigError("lambda entries must be finite")
        object.__setattr__(self, "lam", lam)
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise ConfigError(f"hbar must be finite and > 0, got {self.hbar}")
        if not math.isfinite(self.x):
            raise ConfigError("x must be finite")

    @property
    def lam_array(self) -> np.ndarray:
        return np.asarray(self.lam, dtype=float)

    @property
    def lam_max(self) -> float:
        return max(self.lam)

    def require_generic(self, margin: float = GENERICITY_MARGIN) -> None:
        """Reject instances with lambda_i - lambda_j within margin*hbar of hbar*Z.

        Non-generic spectra produce higher-order poles in the residue lattice,
        which this library does not evaluate.
        """
        h = self.hbar
        for i in range(self.N):
            for j in range(self.N):
                if i == j:
                    continue
                d = (self.lam[i] - self.lam[j]) / h
                if abs(d - round(d)) < margin:
                    raise GenericityError(
                        f"lambda_{i + 1} - lambda_{j + 1} = {self.lam[i] - self.lam[j]:.6g} "
                        f"is within {margin:g}*hbar of {round(d)}*hbar"
                    )

    def require_quad_dim(self) -> None:
        if self.m > MAX_QUAD_DIM:
            raise DeskScaleError(
                f"m = {self.m} exceeds the desk-scale limit ({MAX_QUAD_DIM}) for tensor-product quadrature"
            )


@dataclass(frozen=True)
class ContourConfig:
    """Truncated vertical-line contour (i*R + epsilon)^m.

    epsilon must clear max(lambda); the trapezoid step 2T/(nodes-1) must not
    exceed hbar/4 (validated against a SpectralData by validate_for).
    """

    epsilon: float
    half_extent: float
    nodes_per_dim: int

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and math.isfinite(self.half_extent) and self.half_extent > 0):
            raise ConfigError("contour needs finite epsilon and half_extent > 0")
        if not (isinstance(self.nodes_per_dim, int) and self.nodes_per_dim >= 16):
            raise ConfigError(f"nodes_per_dim must be an int >= 16, got {self.nodes_per_dim}")

    @property
    def step(self) -> float:
        return 2.0 * self.half_extent / (self.nodes_per_dim - 1)

    def validate_for(self, s: SpectralData) -> None:
        if self.epsilon <= s.lam_max:
            raise ConfigError(
                f"contour offset epsilon = {self.epsilon:.6g} must exceed max(lambda) = {s.lam_max:.6g}"
            )
        if self.step > s.hbar / 4 * (1 + 1e-12):
            raise ConfigError(
                f"trapezoid step {self.step:.6g} exceeds hbar/4 = {s.hbar / 4:.6g}; increase nodes_per_dim"
            )

"""Mellin-Barnes contour quadrature for the specialized Whittaker function.

Evaluates

    Psi(x) = (2*pi*i)^(-m) Int_C dgamma  e^{-(x/hbar) sum gamma_i}
             * prod_{i<=m, j<=N} gamma1(gamma_i - lambda_j | hbar)
             * prod_{i != k}    1 / gamma1(gamma_i - gamma_k | hbar)

on the truncated product contour C = (i[-T, T] + epsilon)^m with a uniform
trapezoid rule per dimension.  The integrand is analytic in a strip around
the contour and decays in every |Im gamma_i| direction, so the trapezoid
converges geometrically in both the step and the truncation.

Numerical structure exploited here:

* the integrand is symmetric under permutations of the gamma_i and vanishes
  identically on coincident nodes (the reciprocal-gamma measure has zeros),
  so the tensor-product sum is m! times the sum over the strictly increasing
  index wedge;
* magnitudes are assembled in log space and the wedge sum is accumulated
  with exact compensated summation after rescaling by the peak log-magnitude.

Contour placement trades two error sources against each other: the distance
of epsilon above max(lambda) sets the analyticity margin (hence the step),
while for x << 0 every unit of that distance inflates the oscillatory
cancellation of the integral by e^{|x| m / hbar}.  auto_contour shrinks the
offset adaptively so the cancellation stays within double-precision reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import loggamma as _loggamma

from .errors import ConfigError, PoleError, QuadratureError
from .gammafns import POLE_TOL, log_gamma1_value, recip_gamma1
from .logcomplex import LogComplex
from .spectral import ContourConfig, SpectralData

__all__ = ["MBResult", "integrand", "eval_mb", "auto_contour"]

#: target exponent for the discretization (aliasing) error of the trapezoid;
#: the Poisson-image amplitude carries a prefactor of order a few hundred
_DISC_DECADES = 25.3  # ln(1e11)

#: cancellation budget (in nats) allotted to the contour offset at large |x|*m
_CANCEL_BUDGET = 10.0

_PROBE_NODES = 33
_GROWTH = 1.5


@dataclass(frozen=True)
class MBResult:
    """Quadrature value with a relative error estimate.

    error_estimate aggregates the contour-truncation tail, the trapezoid
    aliasing error, and the round-off noise floor of the rescaled sum; it is
    an order-of-magnitude bound, not a rigorous one.
    """

    value: LogComplex
    error_estimate: float
    config: ContourConfig


def integrand(gamma: Sequence[complex], s: SpectralData) -> LogComplex:
    """The MB integrand at a single point gamma in C^m (no contour weights).

    Coincident gamma components are legal and give an exact zero through the
    reciprocal-gamma measure; a gamma_i - lambda_j on the pole lattice raises
    PoleError.
    """
    gamma = [complex(g) for g in gamma]
    if len(gamma) != s.m:
        raise ConfigError(f"gamma must have m = {s.m} components")
    h = s.hbar
    log_parts = 0j
    for gi in gamma:
        log_parts += -(s.x / h) * gi
        for lam_j in s.lam:
            w = (gi - lam_j) / h
            n = round(w.real)
            if n <= 0 and abs(w.real - n) <= POLE_TOL and abs(w.imag) <= POLE_TOL:
                raise PoleError(
                    f"gamma - lambda_j = {gi - lam_j} lies on the gamma1 pole lattice"
                )
            log_parts += log_gamma1_value(gi - lam_j, h)
    measure = 1.0 + 0j
    for i, gi in enumerate(gamma):
        for k, gk in enumerate(gamma):
            if i != k:
                measure *= recip_gamma1(gi - gk, h)
    if measure == 0:
        return LogComplex.zero()
    return LogComplex.from_log(log_parts) * LogComplex.from_complex(measure)


def _numerator_log(s: SpectralData, epsilon: float, y: np.ndarray) -> np.ndarray:
    """Per-dimension log factor A(y): exponent plus the N gamma1 numerators."""
    h = s.hbar
    g = epsilon + 1j * y
    A = -(s.x / h) * g
    for lam_j in s.lam:
        w = (g - lam_j) / h
        A = A + w * math.log(h) + _loggamma(w)
    return A


def _pair_log(s: SpectralData, y: np.ndarray) -> np.ndarray:
    """Symmetrized log of the pair measure: Q[a,b] = -log gamma1(i(y_a - y_b)) - log gamma1(i(y_b - y_a)).

    The diagonal carries the exact zero of the measure (log = -inf).
    """
    h = s.hbar
    d = 1j * (y[:, None] - y[None, :])
    w = d / h
    n = len(y)
    eye = np.eye(n, dtype=bool)
    safe = np.where(eye, 1.0, w)
    C = -(safe * math.log(h) + _loggamma(safe))
    C[eye] = -np.inf
    return C + C.T


_NOISE_FLOOR = 1e-40


def _wedge_reduce(s: SpectralData, c: ContourConfig):
    """Rescaled compensated sum over the strictly increasing index wedge.

    Returns (M, S, bsum, neff): the full tensor integral equals
    m! * exp(M) * S; bsum is the rescaled sum of magnitudes on the
    truncation boundary of the wedge (any coordinate at +-T) and neff counts
    nodes contributing above the round-off floor.
    """
    m, n = s.m, c.nodes_per_dim
    y = np.linspace(-c.half_extent, c.half_extent, n)
    step = y[1] - y[0]
    logw = np.full(n, math.log(step))
    logw[0] -= math.log(2.0)
    logw[-1] -= math.log(2.0)
    A = _numerator_log(s, c.epsilon, y) + logw - math.log(2.0 * math.pi)

    if m == 1:
        R = A.real
        M = float(np.max(R))
        W = np.exp(A - M)
        S = math.fsum(W.real.tolist()) + 1j * math.fsum(W.imag.tolist())
        aw = np.abs(W)
        bsum = float(aw[0] + aw[-1])
        neff = int(np.count_nonzero(aw > _NOISE_FLOOR))
        return M, S, bsum, neff

    Q = _pair_log(s, y)

    if m == 2:
        iu, ju = np.triu_indices(n, k=1)
        L = A[iu] + A[ju] + Q[iu, ju]
        M = float(np.max(L.real))
        W = np.exp(L - M)
        S = math.fsum(W.real.tolist()) + 1j * math.fsum(W.imag.tolist())
        aw = np.abs(W)
        bsum = float(np.sum(aw[(iu == 0) | (ju == n - 1)]))
        neff = int(np.count_nonzero(aw > _NOISE_FLOOR))
        return M, S, bsum, neff

    # m == 3: slab over the smallest wedge index i; within a slab the (j, k)
    # block is the strict upper triangle of an (n-i-1)-square.  A wedge node
    # touches the truncation boundary iff i == 0 or k == n-1.
    B2 = A[:, None] + A[None, :] + Q
    M = -np.inf
    for i in range(n - 2):
        row = Q[i, i + 1:].real
        sub = B2[i + 1:, i + 1:].real + (A[i].real + row[:, None] + row[None, :])
        tri = np.triu(np.ones(sub.shape, dtype=bool), k=1)
        vals = sub[tri]
        if vals.size:
            M = max(M, float(np.max(vals)))
    sre, sim = [], []
    bsum = 0.0
    neff = 0
    for i in range(n - 2):
        row = Q[i, i + 1:]
        sub = B2[i + 1:, i + 1:] + (A[i] + row[:, None] + row[None, :])
        tri = np.triu(np.ones(sub.shape, dtype=bool), k=1)
        W = np.exp(sub[tri] - M)
        aw = np.abs(W)
        neff += int(np.count_nonzero(aw > _NOISE_FLOOR))
        if i == 0:
            bsum += float(np.sum(aw))
        else:
            edge = np.abs(np.exp(sub[:-1, -1] - M))
            bsum += float(np.sum(edge))
        sre.append(math.fsum(W.real.tolist()))
        sim.append(math.fsum(W.imag.tolist()))
    S = math.fsum(sre) + 1j * math.fsum(sim)
    return M, S, bsum, neff


def eval_mb(
    s: SpectralData,
    c: ContourConfig,
    *,
    max_rel_err: float | None = 1e-3,
) -> MBResult:
    """Trapezoid approximation of the MB integral on the contour c.

    Returns the value together with a relative error estimate.  When the
    estimate exceeds max_rel_err the quadrature is reported as non-converged
    (QuadratureError); pass max_rel_err=None to disable the check.
    """
    s.require_quad_dim()
    c.validate_for(s)
    m, h = s.m, s.hbar

    M, S, bsum, neff = _wedge_reduce(s, c)
    if S == 0:
        value = LogComplex.zero()
    else:
        value = LogComplex.from_log(complex(M + math.log(abs(S)), math.atan2(S.imag, S.real)))
        value = value * LogComplex.from_real(float(math.factorial(m)))

    if value.is_zero:
        return MBResult(value, math.inf, c)

    # peak-to-value log ratio of the rescaled sum (oscillatory cancellation)
    peak_excess = M + math.log(math.factorial(m)) - value.log_mag
    amp = max(0.0, peak_excess)
    # truncation: boundary magnitude sum, extended over ~2 hbar of further decay
    tail_rel = bsum * (2.0 * h / c.step) * math.exp(min(700.0, peak_excess))
    # aliasing: analyticity margin d, oscillation |x|/h, pair-measure growth pi(m-1)/h
    d = min(c.epsilon - s.lam_max, h)
    alias_log = -(2 * math.pi / c.step) * d + (abs(s.x) / h + math.pi * (m - 1) / h) * d
    alias_rel = 300.0 * math.exp(max(-700.0, alias_log + 0.5 * amp))
    # round-off noise of the rescaled compensated sum
    noise_rel = 2e-16 * math.sqrt(max(neff, 1)) * math.exp(min(700.0, amp))
    err = tail_rel + alias_rel + noise_rel

    if max_rel_err is not None and err > max_rel_err:
        raise QuadratureError(
            f"quadrature error estimate {err:.2e} exceeds {max_rel_err:.2e} "
            f"(tail {tail_rel:.1e}, aliasing {alias_rel:.1e}, round-off {noise_rel:.1e})"
        )
    return MBResult(value, err, c)


def _contour_offset(s: SpectralData) -> float:
    """Offset of the contour above max(lambda).

    The default is one full hbar.  For strongly negative x the integrand's
    oscillatory cancellation grows like e^{(|x|/hbar)(m*offset + spread)}, so
    the offset shrinks (floored at 0.2 hbar) to keep the cancellation within
    the double-precision budget.
    """
    h = s.hbar
    if s.x == 0:
        return h
    top = float(np.sort(s.lam_array)[-s.m:].sum())
    intrinsic = (abs(s.x) / h) * (s.m * s.lam_max - top)
    frac = (_CANCEL_BUDGET - intrinsic) * h / (s.m * abs(s.x))
    return h * min(1.0, max(0.2, frac))


def auto_contour(s: SpectralData, tol: float) -> ContourConfig:
    """Choose a contour for eval_mb by growing the truncation geometrically.

    The half-extent T grows until the largest integrand magnitude on the
    truncation boundary of a coarse probe grid falls below tol times the
    largest magnitude in the interior; the node count then enforces both the
    step bound hbar/4 and the aliasing/oscillation budget.
    """
    if not (tol > 0):
        raise ConfigError(f"tol must be > 0, got {tol}")
    s.require_quad_dim()
    m, h = s.m, s.hbar
    eps = s.lam_max + _contour_offset(s)

    T = 2.0 * h
    while True:
        if T > 200.0 * h * s.N:
            raise QuadratureError(
                f"no contour truncation below T = {T:.3g} reached boundary decay {tol:g}; "
                "the integrand decays too slowly (check m < N and the instance scale)"
            )
        y = np.linspace(-T, T, _PROBE_NODES)
        A = _numerator_log(s, eps, y).real
        if m == 1:
            R = A
        else:
            Q = _pair_log(s, y).real
            if m == 2:
                R = A[:, None] + A[None, :] + Q
            else:
                R = (
                    A[:, None, None] + A[None, :, None] + A[None, None, :]
                    + Q[:, :, None] + Q[:, None, :] + Q[None, :, :]
                )
        finite = np.isfinite(R)
        bmask = np.zeros(R.shape, dtype=bool)
        for ax in range(m):
            sl = [slice(None)] * m
            sl[ax] = 0
            bmask[tuple(sl)] = True
            sl[ax] = _PROBE_NODES - 1
            bmask[tuple(sl)] = True
        gmax = float(np.max(np.where(finite, R, -np.inf)))
        bmax = float(np.max(np.where(bmask & finite, R, -np.inf)))
        if bmax <= math.log(tol) + gmax:
            break
        T *= _GROWTH

    delta = eps - s.lam_max
    step = 2.0 * math.pi * delta / (_DISC_DECADES + (abs(s.x) + math.pi * (m - 1)) * delta / h)
    step = min(step, h / 4.0)
    nodes = max(16, int(math.ceil(2.0 * T / step)) + 1)
    return ContourConfig(epsilon=eps, half_extent=T, nodes_per_dim=nodes)

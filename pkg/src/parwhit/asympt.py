"""Leading x -> -infinity behavior of the Whittaker function.

The limit is a sum over the C(N, m) cosets of S_N / (S_m x S_{N-m}),
realized as m-subsets S of {1..N}:

    Psi(x)  ~  m! * hbar^m * sum_S  e^{-(x/hbar) sum_{i in S} lambda_i}
                            * prod_{i in S, j not in S} gamma1(lambda_i - lambda_j | hbar)

This closed form is identical to the order-0 partial sum of the residue
series, which ties it to the quadrature evaluator; the hbar^m factor is the
per-variable residue of gamma1 and reduces to 1 at hbar = 1.  Coefficients
like gamma1 at negative arguments are genuinely signed, so the coset sum is
accumulated with sign tracking in log space.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .errors import ConfigError, PoleError
from .gammafns import gamma1
from .logcomplex import LogComplex, rescaled_sum
from .spectral import SpectralData

__all__ = ["enumerate_cosets", "coset_coefficient", "leading_asymptotic"]


def enumerate_cosets(m: int, N: int) -> list[tuple[int, ...]]:
    """All m-subsets of {1..N} in lexicographic order (C(N, m) of them)."""
    if not 1 <= m < N:
        raise ConfigError(f"need 1 <= m < N, got m={m}, N={N}")
    return list(itertools.combinations(range(1, N + 1), m))


def coset_coefficient(S: Sequence[int], lam: Sequence[float], hbar: float) -> LogComplex:
    """prod_{i in S, j not in S} gamma1(lambda_i - lambda_j | hbar).

    Raises PoleError (naming the pair) when some lambda_i - lambda_j with
    i in S, j outside lands on the gamma1 pole lattice.
    """
    S = tuple(S)
    N = len(lam)
    args = []
    for i in S:
        for j in range(1, N + 1):
            if j in S:
                continue
            try:
                gamma1(lam[i - 1] - lam[j - 1], hbar)
            except PoleError as exc:
                raise PoleError(
                    f"coset {S}: lambda_{i} - lambda_{j} = {lam[i - 1] - lam[j - 1]:.6g} "
                    f"sits on a gamma1 pole"
                ) from exc
            args.append(lam[i - 1] - lam[j - 1])
    out = LogComplex.from_real(1.0)
    # canonical order keeps the product bit-identical under lambda relabeling
    for z in sorted(args):
        out = out * gamma1(z, hbar)
    return out


def leading_asymptotic(s: SpectralData) -> LogComplex:
    """m! * hbar^m * sum over cosets of the exponential-weighted coefficients."""
    h = s.hbar
    pref = LogComplex.from_real(float(math.factorial(s.m))) * LogComplex.from_log(
        complex(s.m * math.log(h), 0.0)
    )
    terms = []
    for S in enumerate_cosets(s.m, s.N):
        expo = -(s.x / h) * math.fsum(sorted(s.lam[i - 1] for i in S))
        terms.append(LogComplex.from_log(complex(expo, 0.0)) * coset_coefficient(S, s.lam, h))
    return pref * rescaled_sum(terms)

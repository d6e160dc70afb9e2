"""Triangular arrays of Gelfand-Zetlin variables and the right-vector support."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import ConfigError, SupportError

__all__ = ["TriangularArray", "SupportConstraints", "random_array"]

Position = tuple[int, int]          # (row n, column i), both 1-based
ShiftMap = Mapping[Position, int]   # integer shifts in units of hbar


@dataclass(frozen=True)
class TriangularArray:
    """gamma_{n,i} for 1 <= i <= n <= N; row N is the spectral row (lambda)."""

    rows: tuple[tuple[complex, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(complex(v) for v in r) for r in self.rows)
        for n, r in enumerate(rows, start=1):
            if len(r) != n:
                raise ConfigError(f"row {n} must have {n} entries, got {len(r)}")
        object.__setattr__(self, "rows", rows)

    @property
    def N(self) -> int:
        return len(self.rows)

    def gamma(self, n: int, i: int) -> complex:
        return self.rows[n - 1][i - 1]

    def row(self, n: int) -> tuple[complex, ...]:
        return self.rows[n - 1]

    def shifted(self, shift: ShiftMap, hbar: float) -> "TriangularArray":
        """gamma_{n,i} -> gamma_{n,i} + shift[(n,i)] * hbar."""
        if not shift:
            return self
        rows = [list(r) for r in self.rows]
        for (n, i), k in shift.items():
            rows[n - 1][i - 1] += k * hbar
        return TriangularArray(tuple(tuple(r) for r in rows))


def random_array(N: int, rng: np.random.Generator, scale: float = 2.0,
                 min_row_gap: float = 0.05, max_tries: int = 200) -> TriangularArray:
    """Random complex array with within-row entries separated by min_row_gap.

    Row separation keeps the generator denominators prod (gamma_{n,i} -
    gamma_{n,s}) and the measure ratios well conditioned.
    """
    for _ in range(max_tries):
        rows = []
        ok = True
        for n in range(1, N + 1):
            r = rng.uniform(-scale, scale, size=n) + 1j * rng.uniform(-scale, scale, size=n)
            for a in range(n):
                for b in range(a + 1, n):
                    if abs(r[a] - r[b]) < min_row_gap:
                        ok = False
            rows.append(tuple(complex(v) for v in r))
            if not ok:
                break
        if ok:
            return TriangularArray(tuple(rows))
    raise ConfigError("failed to sample a well-separated array")


@dataclass(frozen=True)
class SupportConstraints:
    """Affine support of the right Whittaker vector's delta factors.

    gamma_{1,1} = 0; for every row n in 2..N-1 except n = m the first n-1
    entries follow the row below minus hbar/2 and the row sums telescope,
    pinning gamma_{n,n} = -(n-1) hbar / 2.  Row m stays free (the m
    integration variables) and row N carries lambda.
    """

    m: int
    N: int
    hbar: float

    def __post_init__(self):
        if not 2 <= self.m < self.N:
            raise SupportError(
                f"right-vector support needs 2 <= m < N, got m={self.m}, N={self.N}"
            )
        if not self.hbar > 0:
            raise SupportError("hbar must be > 0")

    def build(self, row_m: Sequence[complex], lam: Sequence[complex]) -> TriangularArray:
        """The unique support array with the given free row m and spectral row."""
        m, N, h = self.m, self.N, self.hbar
        if len(row_m) != m:
            raise SupportError(f"row_m must have {m} entries")
        if len(lam) != N:
            raise SupportError(f"lam must have {N} entries")
        rows: list[tuple[complex, ...]] = []
        for n in range(1, N + 1):
            if n < m:
                rows.append(tuple(complex((n + 1 - 2 * k) * h / 2) for k in range(1, n + 1)))
            elif n == m:
                rows.append(tuple(complex(v) for v in row_m))
            elif n < N:
                prev = rows[n - 2]
                rows.append(tuple(prev[k] + h / 2 for k in range(n - 1)) + (complex(-(n - 1) * h / 2),))
            else:
                rows.append(tuple(complex(v) for v in lam))
        return TriangularArray(tuple(rows))

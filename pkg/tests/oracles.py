"""Independent oracles used by the test suite.

These deliberately avoid the library's own gamma/quadrature machinery:
k0_series is the textbook convergent expansion of the modified Bessel
function; homogeneous_poly enumerates monomials directly.
"""

import itertools
import math


def k0_series(z: float, terms: int = 120) -> float:
    """Modified Bessel K0 via its convergent small-argument series."""
    euler = 0.5772156649015328606065120900824024
    t = z * z / 4.0
    i0 = 1.0
    term = 1.0
    tail = 0.0
    harmonic = 0.0
    for k in range(1, terms):
        term *= t / (k * k)
        i0 += term
        harmonic += 1.0 / k
        tail += term * harmonic
    return -(math.log(z / 2.0) + euler) * i0 + tail


def homogeneous_poly(gamma, degree: int) -> complex:
    """Complete homogeneous symmetric polynomial by brute monomial enumeration."""
    if degree == 0:
        return 1.0 + 0j
    total = 0j
    for combo in itertools.combinations_with_replacement(range(len(gamma)), degree):
        term = 1.0 + 0j
        for idx in combo:
            term *= gamma[idx]
        total += term
    return total


#: 2*K0(2*e^(x/2)) frozen from k0_series (cross-checked against the series at test time)
BESSEL_REFERENCE = {
    -4.0: 2.934809711458726,
    -2.0: 1.2485966466549918,
    0.0: 0.2277877454990671,
    1.0: 0.04936529700560932,
}

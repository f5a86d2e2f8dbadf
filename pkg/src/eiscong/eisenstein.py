"""Generators for level-one q-expansions: G_k, E_k, Delta, and E_4^a E_6^b Delta^c.

Normalizations: E_k has constant term 1 and higher coefficients
-(2k/B_k) * sigma_{k-1}(n); G_k = -(B_k/2k) * E_k has constant term -B_k/2k
and higher coefficients sigma_{k-1}(n). E_0 is the constant series 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotPIntegralError
from .exact import bernoulli, padic_valuation, sigma_power, sigma_power_mod
from .residue import ResidueRing
from .series import QSeries

__all__ = [
    "EFactor",
    "delta_series",
    "e_factor",
    "e_series",
    "e_series_exact",
    "g_series",
    "g_series_exact",
    "monomial_series",
]


def _check_even_weight(k: int, minimum: int) -> None:
    if k % 2 == 1 or k < minimum:
        raise ValueError(f"weight must be an even integer >= {minimum}, got {k}")


def e_normalizer(k: int) -> Fraction:
    """The exact coefficient -2k/B_k multiplying the divisor sums in E_k."""
    return Fraction(-2 * k) / bernoulli(k)


@lru_cache(maxsize=512)
def g_series(k: int, ring: ResidueRing, precision: int) -> QSeries:
    """G_k modulo p^m through q^precision.

    Requires (p-1) to not divide k: otherwise the constant term -B_k/2k has
    negative p-valuation and no residue reduction exists.
    """
    _check_even_weight(k, 2)
    if k % (ring.p - 1) == 0:
        raise NotPIntegralError(
            f"G_{k} is not {ring.p}-integral: {ring.p - 1} divides {k}"
        )
    constant = ring.reduce_rational(Fraction(-1, 2) * bernoulli(k) / k)
    mod = ring.modulus
    coeffs = [constant] + [sigma_power_mod(k - 1, n, mod) for n in range(1, precision + 1)]
    return QSeries(ring, tuple(coeffs), precision)


def g_series_exact(k: int, precision: int) -> QSeries:
    """G_k with exact rational coefficients."""
    _check_even_weight(k, 2)
    constant = Fraction(-1, 2) * bernoulli(k) / k
    coeffs = [constant] + [Fraction(sigma_power(k - 1, n)) for n in range(1, precision + 1)]
    return QSeries(None, tuple(coeffs), precision)


@lru_cache(maxsize=512)
def e_series(k: int, ring: ResidueRing, precision: int) -> QSeries:
    """Normalized E_k modulo p^m through q^precision (E_0 = 1).

    The multiplier -2k/B_k is formed over the exact rationals first, so the
    cancellation of p between 2k and B_k when (p-1) | k happens before any
    reduction.
    """
    if k == 0:
        return QSeries.one(ring, precision)
    _check_even_weight(k, 2)
    c = e_normalizer(k)
    if padic_valuation(c, ring.p) < 0:
        # Only possible when p divides the numerator of B_k/k (an irregular
        # pair); never hit for the primes this package targets by default.
        raise NotPIntegralError(f"E_{k} is not {ring.p}-integral")
    c_res = ring.reduce_rational(c)
    mod = ring.modulus
    coeffs = [1] + [
        c_res * sigma_power_mod(k - 1, n, mod) % mod for n in range(1, precision + 1)
    ]
    return QSeries(ring, tuple(coeffs), precision)


def e_series_exact(k: int, precision: int) -> QSeries:
    """Normalized E_k with exact rational coefficients."""
    if k == 0:
        return QSeries.one(None, precision)
    _check_even_weight(k, 2)
    c = e_normalizer(k)
    coeffs = [Fraction(1)] + [c * sigma_power(k - 1, n) for n in range(1, precision + 1)]
    return QSeries(None, tuple(coeffs), precision)


@lru_cache(maxsize=64)
def delta_series(ring: ResidueRing, precision: int) -> QSeries:
    """The discriminant cusp form (E_4^3 - E_6^2)/1728 modulo p^m."""
    e4 = e_series(4, ring, precision)
    e6 = e_series(6, ring, precision)
    diff = e4.pow(3) - e6.pow(2)
    return diff.scale(ring.invert(1728))


@dataclass(frozen=True)
class EFactor:
    """E with E_{p-1} = 1 + p*E; coefficients are p-integral."""

    p: int
    series: QSeries


def e_factor(ring: ResidueRing, precision: int) -> EFactor:
    """The series E in E_{p-1} = 1 + pE, reduced modulo p^m.

    E is computed from the exact rational expansion of E_{p-1} (whose
    non-constant coefficients all carry exactly one factor of p) before any
    reduction, so it is meaningful for every m >= 1.
    """
    p = ring.p
    c = e_normalizer(p - 1)  # nu_p(c) = 1
    exact = [Fraction(0)] + [
        c * sigma_power(p - 2, n) / p for n in range(1, precision + 1)
    ]
    series = QSeries.exact(exact, precision).reduce(ring)
    return EFactor(p, series)


@lru_cache(maxsize=4096)
def monomial_series(a: int, b: int, c: int, ring: ResidueRing, precision: int) -> QSeries:
    """E_4^a * E_6^b * Delta^c modulo p^m (weight 4a + 6b + 12c)."""
    if a < 0 or b < 0 or c < 0:
        raise ValueError("exponents must be non-negative")
    out = QSeries.one(ring, precision)
    if a:
        out = out * e_series(4, ring, precision).pow(a)
    if b:
        out = out * e_series(6, ring, precision).pow(b)
    if c:
        out = out * delta_series(ring, precision).pow(c)
    return out

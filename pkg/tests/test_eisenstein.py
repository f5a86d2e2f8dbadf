from fractions import Fraction

import pytest

from eiscong.errors import NotPIntegralError
from eiscong.exact import bernoulli
from eiscong.eisenstein import (
    delta_series,
    e_factor,
    e_series,
    e_series_exact,
    g_series,
    g_series_exact,
    monomial_series,
)
from eiscong.residue import ResidueRing
from eiscong.series import QSeries, series_equal_mod


class TestGSeries:
    def test_g4_mod_7(self):
        # 1/240 + q + 9 q^2, reduced
        ring = ResidueRing(7, 1)
        g = g_series(4, ring, 2)
        assert g.coeffs == (ring.reduce_rational(Fraction(1, 240)), 1, 9 % 7)

    def test_rejects_weight_divisible_by_p_minus_one(self):
        with pytest.raises(NotPIntegralError):
            g_series(4, ResidueRing(5, 1), 5)
        with pytest.raises(NotPIntegralError):
            g_series(12, ResidueRing(7, 2), 5)

    def test_large_weight_constant_term(self):
        ring = ResidueRing(7, 8)
        g = g_series(2026, ring, 3)
        expected = ring.reduce_rational(Fraction(-1, 2) * bernoulli(2026) / 2026)
        assert g.coeffs[0] == expected

    def test_matches_exact_expansion(self):
        ring = ResidueRing(11, 2)
        for k in (4, 6, 8, 14):
            if k % 10 == 0:
                continue
            exact = g_series_exact(k, 12).reduce(ring)
            assert g_series(k, ring, 12) == exact

    def test_weight_two_constructible(self):
        g = g_series(2, ResidueRing(5, 1), 4)
        assert g.coeffs[1] == 1 and g.coeffs[2] == 3

    def test_g_equals_constant_times_e(self):
        # G_k = reduce(-B_k/2k) * E_k whenever both sides are defined
        for p, m in ((5, 1), (7, 2), (13, 2)):
            ring = ResidueRing(p, m)
            for k in (4, 6, 8, 10, 14):
                if k % (p - 1) == 0:
                    continue
                lhs = g_series(k, ring, 10)
                rhs = e_series(k, ring, 10).scale(
                    ring.reduce_rational(Fraction(-1, 2) * bernoulli(k) / k)
                )
                assert series_equal_mod(lhs, rhs, 10).ok


class TestESeries:
    def test_weight_zero_is_one(self):
        ring = ResidueRing(5, 2)
        assert e_series(0, ring, 4) == QSeries.one(ring, 4)

    def test_e_p_minus_one_is_one_mod_p(self):
        for p in (5, 7, 11):
            ring = ResidueRing(p, 1)
            assert e_series(p - 1, ring, 25) == QSeries.one(ring, 25)

    def test_e_congruent_one_mod_pm(self):
        # E_k = 1 (mod p^m) when p^(m-1)(p-1) divides k
        for p, m in ((5, 2), (7, 2), (5, 3)):
            ring = ResidueRing(p, m)
            k = p ** (m - 1) * (p - 1)
            assert e_series(k, ring, 20) == QSeries.one(ring, 20)

    def test_classical_expansions(self):
        ring = ResidueRing(13, 2)
        mod = ring.modulus
        e4 = e_series(4, ring, 3)
        assert e4.coeffs == (1, 240 % mod, 240 * 9 % mod, 240 * 28 % mod)
        e6 = e_series(6, ring, 2)
        assert e6.coeffs == (1, (-504) % mod, (-504 * 33) % mod)


class TestDelta:
    def test_first_coefficients(self):
        ring = ResidueRing(7, 3)
        mod = ring.modulus
        d = delta_series(ring, 4)
        assert d.coeffs[0] == 0
        assert d.coeffs[1] == 1
        assert d.coeffs[2] == -24 % mod
        assert d.coeffs[3] == 252 % mod

    def test_discriminant_relation(self):
        ring = ResidueRing(5, 3)
        lhs = monomial_series(3, 0, 0, ring, 8) - monomial_series(0, 2, 0, ring, 8)
        rhs = delta_series(ring, 8).scale(1728)
        assert series_equal_mod(lhs, rhs, 8).ok

    def test_matches_eta_product_oracle(self):
        # independent route: Delta = q * prod_{n>=1} (1-q^n)^24 over exact ints
        n_max = 14
        poly = [0] * (n_max + 1)
        poly[0] = 1
        for n in range(1, n_max + 1):
            for _ in range(24):
                step = poly[:]
                for i in range(n_max + 1 - n):
                    step[i + n] -= poly[i]
                poly = step
        tau = [0] + poly[:n_max]
        for p, m in ((5, 2), (7, 3), (11, 1)):
            ring = ResidueRing(p, m)
            d = delta_series(ring, n_max)
            assert [t % ring.modulus for t in tau] == list(d.coeffs[: n_max + 1])


class TestEFactor:
    def test_defining_relation(self):
        for p, m in ((5, 2), (7, 3), (11, 2)):
            ring = ResidueRing(p, m)
            ef = e_factor(ring, 12)
            assert ef.series.coeffs[0] == 0
            reconstructed = QSeries.one(ring, 12) + ef.series.scale(p)
            assert series_equal_mod(reconstructed, e_series(p - 1, ring, 12), 12).ok

    def test_q_coefficient_p5(self):
        # (-2*4/B_4) * sigma_3(1) / 5 = 240/5 = 48
        ring = ResidueRing(5, 3)
        assert e_factor(ring, 1).series.coeffs[1] == 48


class TestMonomials:
    def test_empty_monomial_is_one(self):
        ring = ResidueRing(5, 2)
        assert monomial_series(0, 0, 0, ring, 5) == QSeries.one(ring, 5)

    def test_e4_power_13_leading_terms(self):
        ring = ResidueRing(7, 8)
        mono = monomial_series(13, 0, 0, ring, 2)
        expected = e_series(4, ring, 2).pow(13)
        assert mono == expected
        assert mono.coeffs[0] == 1
        assert mono.coeffs[1] == 13 * 240 % ring.modulus

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            monomial_series(-1, 0, 0, ResidueRing(5, 1), 3)


class TestClassicalCongruences:
    def test_g_mod_p_depends_only_on_weight_class(self):
        # G_k = G_k' (mod p) for k = k' != 0 (mod p-1)
        for p in (5, 7):
            ring = ResidueRing(p, 1)
            for k in (6, 8, 10):
                if k % (p - 1) == 0:
                    continue
                for t in (1, 2, 3):
                    kp = k + t * (p - 1)
                    assert series_equal_mod(
                        g_series(k, ring, 25), g_series(kp, ring, 25), 25
                    ).ok

    def test_g_stable_under_weight_shift_mod_pm(self):
        # G_{k0} = G_{p^(m-1)(p-1)+k0} (mod p^m) for k0 > m
        for p, m, k0 in ((5, 2, 6), (7, 2, 4), (5, 3, 6)):
            ring = ResidueRing(p, m)
            k = p ** (m - 1) * (p - 1) + k0
            assert series_equal_mod(
                g_series(k0, ring, 20), g_series(k, ring, 20), 20
            ).ok

    def test_euler_power_congruence(self):
        # d^(k-1) = d^(k'-1) (mod p^m) when k = k' (mod p^(m-1)(p-1)), p does not divide d
        for p, m in ((5, 2), (7, 3)):
            step = p ** (m - 1) * (p - 1)
            mod = p**m
            for d in (2, 3, 6, 12):
                for k in (4, 9, 20):
                    assert pow(d, k - 1, mod) == pow(d, k + step - 1, mod)

    def test_exact_e_series_matches_reduction(self):
        ring = ResidueRing(7, 2)
        for k in (0, 4, 6, 12):
            assert e_series_exact(k, 8).reduce(ring) == e_series(k, ring, 8)

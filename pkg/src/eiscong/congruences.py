"""Exact verifiers for the congruence families between Eisenstein series.

Series statements are checked coefficient-wise in Z/p^m; rational statements
are checked by exact evaluation followed by a p-adic valuation test. Nothing
here is probabilistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import (
    BudgetExceededError,
    DNotCoprimeError,
    MOutOfRangeError,
    ParameterOutOfRangeError,
)
from .exact import bernoulli, gen_binomial, h_coefficient, padic_valuation
from .eisenstein import e_series, g_series
from .filtration import sturm_bound
from .residue import ResidueRing
from .series import QSeries, series_equal_mod

__all__ = [
    "CongruenceReport",
    "RegularityVerdict",
    "check_bernoulli_prop41",
    "check_dpower_congruence",
    "check_eq14",
    "check_eq16",
    "check_kummer",
    "check_p_regular",
    "check_prop_ek_fixed",
    "check_prop_gk_fixed",
    "check_sum_recurrence",
    "check_sun97",
    "check_telescoping",
    "check_thm_ek",
    "check_thm_gk",
    "combin_identity_sum",
    "constant_function",
    "dpower_function",
    "inversion_identity_holds",
    "prop21_recovery_holds",
    "scale_function",
    "scan_conjecture_bernoulli",
    "scan_conjecture_ek_series",
    "sun_bernoulli_function",
    "times_p_function",
]

DEFAULT_BERNOULLI_BUDGET = 4000

IntegerSequenceFunction = Callable[[int], Fraction]


@dataclass(frozen=True)
class CongruenceReport:
    """Structured verdict for one congruence statement at one parameter point."""

    statement_id: str
    params: dict
    verdict: str  # "Pass" | "Fail"
    failure_detail: dict | None = None
    certification: str = "coefficient-evidence"

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"

    def to_json_dict(self) -> dict:
        return {
            "statement-id": self.statement_id,
            "params": dict(self.params),
            "verdict": self.verdict,
            "failure-detail": self.failure_detail,
            "certification": self.certification,
        }


def _series_report(statement_id: str, params: dict, lhs: QSeries, rhs: QSeries,
                   upto: int, shared_weight: int | None) -> CongruenceReport:
    verdict = series_equal_mod(lhs, rhs, upto)
    cert = "coefficient-evidence"
    if shared_weight is not None and upto >= sturm_bound(shared_weight):
        cert = "sturm-certified"
    if verdict.ok:
        return CongruenceReport(statement_id, params, "Pass", None, cert)
    detail = {
        "first-failing-index": verdict.first_index,
        "lhs": str(verdict.lhs),
        "rhs": str(verdict.rhs),
    }
    return CongruenceReport(statement_id, params, "Fail", detail, cert)


def _valuation_report(statement_id: str, params: dict, difference: Fraction,
                      p: int, required: int) -> CongruenceReport:
    v = padic_valuation(difference, p)
    if v >= required:
        return CongruenceReport(statement_id, params, "Pass", None, "coefficient-evidence")
    detail = {"valuation": v, "required": required, "difference": str(difference)}
    return CongruenceReport(statement_id, params, "Fail", detail, "coefficient-evidence")


# ---------------------------------------------------------------------------
# Weighted combinations  sum_r H(m, alpha, r) * f_r * E_{p-1}^(alpha - r)
# ---------------------------------------------------------------------------

def _h_combination(ring: ResidueRing, precision: int, m: int, alpha: int,
                   series_for_r: Callable[[int], QSeries],
                   with_e_powers: bool) -> QSeries:
    total = QSeries.residue(ring, [0] * (precision + 1))
    rs = [r for r in range(m) if h_coefficient(m, alpha, r) != 0]
    powers: dict[int, QSeries] = {}
    if with_e_powers and rs:
        e = e_series(ring.p - 1, ring, precision)
        r_hi = max(rs)
        pw = e.pow(alpha - r_hi)
        powers[r_hi] = pw
        for r in range(r_hi - 1, min(rs) - 1, -1):
            pw = pw * e
            powers[r] = pw
    for r in rs:
        term = series_for_r(r).scale(h_coefficient(m, alpha, r))
        if with_e_powers:
            term = term * powers[r]
        total = total + term
    return total


def _validate_gk_args(p: int, m: int, kstar: int, alpha: int) -> None:
    if m < 1:
        raise ParameterOutOfRangeError("m must be at least 1")
    if alpha < 0:
        raise ParameterOutOfRangeError("alpha must be non-negative")
    if kstar <= m:
        raise ParameterOutOfRangeError(f"k* must exceed m, got k*={kstar}, m={m}")
    if kstar % (p - 1) == 0:
        raise ParameterOutOfRangeError(f"{p - 1} must not divide k*={kstar}")


def check_thm_gk(p: int, m: int, kstar: int, alpha: int, precision: int = 50) -> CongruenceReport:
    """G_{alpha(p-1)+k*} against the H-weighted sum of G_{r(p-1)+k*} E_{p-1}^(alpha-r)."""
    _validate_gk_args(p, m, kstar, alpha)
    ring = ResidueRing(p, m)
    weight = alpha * (p - 1) + kstar
    lhs = g_series(weight, ring, precision)
    rhs = _h_combination(ring, precision, m, alpha,
                         lambda r: g_series(r * (p - 1) + kstar, ring, precision),
                         with_e_powers=True)
    params = {"p": p, "m": m, "kstar": kstar, "alpha": alpha, "N": precision}
    return _series_report("Thm1.1", params, lhs, rhs, precision, weight)


def check_prop_gk_fixed(p: int, m: int, kstar: int, alpha: int,
                        precision: int = 50) -> CongruenceReport:
    """Same family as check_thm_gk but without the E_{p-1} powers (mixed weights)."""
    _validate_gk_args(p, m, kstar, alpha)
    ring = ResidueRing(p, m)
    lhs = g_series(alpha * (p - 1) + kstar, ring, precision)
    rhs = _h_combination(ring, precision, m, alpha,
                         lambda r: g_series(r * (p - 1) + kstar, ring, precision),
                         with_e_powers=False)
    params = {"p": p, "m": m, "kstar": kstar, "alpha": alpha, "N": precision}
    return _series_report("Prop3.1", params, lhs, rhs, precision, None)


def _validate_ek_args(p: int, m: int, alpha: int) -> None:
    if not 1 <= m <= p - 1:
        raise MOutOfRangeError(f"m must satisfy 1 <= m <= p-1 = {p - 1}, got {m}")
    if alpha < 1:
        raise ParameterOutOfRangeError("alpha must be at least 1")


def check_thm_ek(p: int, m: int, alpha: int, precision: int = 50) -> CongruenceReport:
    """E_{alpha(p-1)} against the H-weighted sum of E_{r(p-1)} E_{p-1}^(alpha-r)."""
    _validate_ek_args(p, m, alpha)
    ring = ResidueRing(p, m)
    weight = alpha * (p - 1)
    lhs = e_series(weight, ring, precision)
    rhs = _h_combination(ring, precision, m, alpha,
                         lambda r: e_series(r * (p - 1), ring, precision),
                         with_e_powers=True)
    params = {"p": p, "m": m, "alpha": alpha, "N": precision}
    return _series_report("Thm1.2", params, lhs, rhs, precision, weight)


def check_prop_ek_fixed(p: int, m: int, alpha: int, precision: int = 50) -> CongruenceReport:
    """E_{alpha(p-1)} against the H-weighted sum of E_{r(p-1)} (mixed weights)."""
    _validate_ek_args(p, m, alpha)
    ring = ResidueRing(p, m)
    lhs = e_series(alpha * (p - 1), ring, precision)
    rhs = _h_combination(ring, precision, m, alpha,
                         lambda r: e_series(r * (p - 1), ring, precision),
                         with_e_powers=False)
    params = {"p": p, "m": m, "alpha": alpha, "N": precision}
    return _series_report("Prop4.2", params, lhs, rhs, precision, None)


# ---------------------------------------------------------------------------
# Exact rational congruences
# ---------------------------------------------------------------------------

def check_bernoulli_prop41(p: int, m: int, alpha: int, d: int) -> CongruenceReport:
    """d^{a(p-1)} a/B_{a(p-1)} against the H-weighted sum over r, modulo p^m.

    Each r/B_{r(p-1)} is p-integral because B_{r(p-1)} has p-valuation -1;
    the whole check runs over exact rationals and ends in a valuation test.
    """
    if not 1 <= m <= p - 1:
        raise MOutOfRangeError(f"m must satisfy 1 <= m <= p-1 = {p - 1}, got {m}")
    if alpha < 1:
        raise ParameterOutOfRangeError("alpha must be at least 1")
    if d % p == 0:
        raise DNotCoprimeError(f"d = {d} must be coprime to p = {p}")
    lhs = d ** (alpha * (p - 1)) * Fraction(alpha) / bernoulli(alpha * (p - 1))
    rhs = Fraction(0)
    for r in range(1, m):
        h = h_coefficient(m, alpha, r)
        if h:
            rhs += h * d ** (r * (p - 1)) * Fraction(r) / bernoulli(r * (p - 1))
    params = {"p": p, "m": m, "alpha": alpha, "d": d}
    return _valuation_report("Prop4.1", params, lhs - rhs, p, m)


def check_dpower_congruence(p: int, m: int, alpha: int, d: int) -> CongruenceReport:
    """d^{a(p-1)} against the H-weighted sum of d^{r(p-1)}, modulo p^m."""
    if m < 1:
        raise ParameterOutOfRangeError("m must be at least 1")
    if alpha < 0:
        raise ParameterOutOfRangeError("alpha must be non-negative")
    if d % p == 0:
        raise DNotCoprimeError(f"d = {d} must be coprime to p = {p}")
    lhs = d ** (alpha * (p - 1))
    rhs = sum(h_coefficient(m, alpha, r) * d ** (r * (p - 1)) for r in range(m))
    params = {"p": p, "m": m, "alpha": alpha, "d": d}
    return _valuation_report("Eq3.1", params, Fraction(lhs - rhs), p, m)


def check_eq14(p: int, k: int, kprime: int, precision: int = 50) -> CongruenceReport:
    """G_k and G_k' agree modulo p when k and k' share a nonzero residue mod p-1."""
    if k % (p - 1) != kprime % (p - 1) or k % (p - 1) == 0:
        raise ParameterOutOfRangeError(
            "weights must be congruent and nonzero modulo p-1"
        )
    ring = ResidueRing(p, 1)
    lhs = g_series(k, ring, precision)
    rhs = g_series(kprime, ring, precision)
    params = {"p": p, "k": k, "kprime": kprime, "N": precision}
    return _series_report("Eq1.4", params, lhs, rhs, precision, None)


def check_eq16(p: int, m: int, k0: int, precision: int = 50) -> CongruenceReport:
    """G_{k0} and G_{p^(m-1)(p-1)+k0} agree modulo p^m for k0 > m."""
    if k0 <= m:
        raise ParameterOutOfRangeError("k0 must exceed m")
    if k0 % (p - 1) == 0:
        raise ParameterOutOfRangeError(f"{p - 1} must not divide k0")
    ring = ResidueRing(p, m)
    k = p ** (m - 1) * (p - 1) + k0
    lhs = g_series(k0, ring, precision)
    rhs = g_series(k, ring, precision)
    params = {"p": p, "m": m, "k0": k0, "N": precision}
    return _series_report("Eq1.6", params, lhs, rhs, precision, None)


def check_kummer(p: int, r: int, k: int, kprime: int) -> CongruenceReport:
    """(1-p^{k-1})B_k/k vs (1-p^{k'-1})B_k'/k' modulo p^r, as exact rationals."""
    if r < 1:
        raise ParameterOutOfRangeError("r must be at least 1")
    if k % (p - 1) == 0:
        raise ParameterOutOfRangeError(f"{p - 1} must not divide k")
    if (k - kprime) % (p ** (r - 1) * (p - 1)) != 0:
        raise ParameterOutOfRangeError(
            f"k and k' must be congruent modulo p^(r-1)(p-1) = {p ** (r - 1) * (p - 1)}"
        )
    lhs = (1 - Fraction(p) ** (k - 1)) * bernoulli(k) / k
    rhs = (1 - Fraction(p) ** (kprime - 1)) * bernoulli(kprime) / kprime
    params = {"p": p, "r": r, "k": k, "kprime": kprime}
    return _valuation_report("Kummer", params, lhs - rhs, p, r)


# ---------------------------------------------------------------------------
# p-regular functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularityVerdict:
    n: int
    valuation: int | float
    ok: bool


def forward_difference_sum(f: IntegerSequenceFunction, n: int) -> Fraction:
    """The alternating binomial sum  sum_k C(n,k)(-1)^k f(k)."""
    return sum(
        Fraction(math.comb(n, k)) * (-1) ** k * Fraction(f(k)) for k in range(n + 1)
    )


def check_p_regular(f: IntegerSequenceFunction, p: int, n_max: int) -> list[RegularityVerdict]:
    """For each n <= n_max, test nu_p of the n-th alternating difference >= n."""
    out = []
    for n in range(1, n_max + 1):
        v = padic_valuation(forward_difference_sum(f, n), p)
        out.append(RegularityVerdict(n, v, v >= n))
    return out


def prop21_recovery_holds(f: IntegerSequenceFunction, p: int, m: int, alpha: int) -> bool:
    """For p-regular f: f(alpha) matches its H-weighted history modulo p^m."""
    rhs = sum(h_coefficient(m, alpha, r) * Fraction(f(r)) for r in range(m))
    return padic_valuation(Fraction(f(alpha)) - rhs, p) >= m


def inversion_identity_holds(f: IntegerSequenceFunction, n: int, alpha: int) -> bool:
    """Exact binomial-inversion identity expressing f(alpha) through H(n, ., .)."""
    if n < 1 or alpha < 0:
        raise ParameterOutOfRangeError("need n >= 1 and alpha >= 0")
    head = sum(h_coefficient(n, alpha, r) * Fraction(f(r)) for r in range(n))
    tail = Fraction(0)
    for r in range(n, alpha + 1):
        inner = sum(math.comb(r, s) * (-1) ** s * Fraction(f(s)) for s in range(r + 1))
        tail += math.comb(alpha, r) * (-1) ** r * inner
    return Fraction(f(alpha)) == head + tail


def dpower_function(d: int, p: int) -> IntegerSequenceFunction:
    """k -> d^{k(p-1)} (p-regular for p not dividing d)."""
    return lambda k: Fraction(d ** (k * (p - 1)))


def constant_function(c) -> IntegerSequenceFunction:
    return lambda k: Fraction(c)


def times_p_function(p: int) -> IntegerSequenceFunction:
    """k -> p*k."""
    return lambda k: Fraction(p * k)


def scale_function(f: IntegerSequenceFunction, g: IntegerSequenceFunction) -> IntegerSequenceFunction:
    """Pointwise product of two integer-sequence functions."""
    return lambda k: Fraction(f(k)) * Fraction(g(k))


def sun_bernoulli_function(p: int) -> IntegerSequenceFunction:
    """k -> (p - p^{k(p-1)}) B_{k(p-1)}; p-integral for every k >= 0."""
    return lambda k: (p - Fraction(p) ** (k * (p - 1))) * bernoulli(k * (p - 1))


def check_sun97(p: int, n_max: int) -> list[CongruenceReport]:
    """Alternating differences of (p - p^{k(p-1)})B_{k(p-1)}: 0 mod p^n when
    (p-1) does not divide n, and p^{n-1} mod p^n when it does."""
    f = sun_bernoulli_function(p)
    reports = []
    for n in range(1, n_max + 1):
        s = forward_difference_sum(f, n)
        target = Fraction(p) ** (n - 1) if n % (p - 1) == 0 else Fraction(0)
        params = {"p": p, "n": n, "case": "p^(n-1)" if target else "0"}
        reports.append(_valuation_report("Sun97", params, s - target, p, n))
    return reports


# ---------------------------------------------------------------------------
# Combinatorial identities
# ---------------------------------------------------------------------------

def _binom0(top: int, j: int) -> int:
    """Binomial extended by zero to negative lower index."""
    return 0 if j < 0 else gen_binomial(top, j)


def _validate_identity_box(m: int, j: int, s: int) -> None:
    if not 1 <= j <= m - 1:
        raise ParameterOutOfRangeError(f"need 1 <= j <= m-1, got j={j}, m={m}")
    if not 0 <= s <= m - j - 1:
        raise ParameterOutOfRangeError(f"need 0 <= s <= m-j-1, got s={s}")


def combin_identity_sum(m: int, j: int, s: int, alpha: int) -> int:
    """sum_{r=s}^{m-1} C(alpha-r, j) H(m, alpha, r) H(m-j, r, s), exactly."""
    _validate_identity_box(m, j, s)
    if alpha < 0:
        raise ParameterOutOfRangeError("alpha must be non-negative")
    return sum(
        gen_binomial(alpha - r, j) * h_coefficient(m, alpha, r) * h_coefficient(m - j, r, s)
        for r in range(s, m)
    )


def _telescope_f(m: int, j: int, s: int, alpha: int, r: int) -> int:
    sign = -1 if (r + j + s) % 2 else 1
    return (sign * _binom0(alpha - r, j) * _binom0(alpha - 1 - r, m - 1 - r)
            * _binom0(alpha, r) * _binom0(r - 1 - s, m - j - 1 - s) * _binom0(r, s))


def _telescope_g(m: int, j: int, s: int, alpha: int, r: int) -> Fraction:
    sign = -1 if (r + j + s) % 2 else 1
    num = (sign * (s - r) * (j + r - alpha) * _binom0(r, s) * _binom0(alpha, r)
           * _binom0(alpha - r, j) * _binom0(alpha - 1 - r, m - 1 - r)
           * _binom0(r - 1 - s, m - j - 1 - s))
    return Fraction(num, m - j - s)


def check_telescoping(m: int, j: int, s: int, alpha: int, r: int) -> bool:
    """(alpha-m)F(m,r) + (m-s)F(m+1,r) equals the difference G(r) - G(r-1)."""
    _validate_identity_box(m, j, s)
    if alpha < 0 or not s <= r <= m - 1:
        raise ParameterOutOfRangeError(f"need alpha >= 0 and s <= r <= m-1, got r={r}")
    lhs = ((alpha - m) * _telescope_f(m, j, s, alpha, r)
           + (m - s) * _telescope_f(m + 1, j, s, alpha, r))
    rhs = _telescope_g(m, j, s, alpha, r) - _telescope_g(m, j, s, alpha, r - 1)
    return Fraction(lhs) == rhs


def check_sum_recurrence(m: int, j: int, s: int, alpha: int) -> bool:
    """(alpha-m)S(m) + (m-s)S(m+1) = 0 for the sums in combin_identity_sum."""
    _validate_identity_box(m, j, s)
    s_m = combin_identity_sum(m, j, s, alpha)
    s_m1 = sum(_telescope_f(m + 1, j, s, alpha, r) for r in range(s, m + 1))
    return (alpha - m) * s_m + (m - s) * s_m1 == 0


# ---------------------------------------------------------------------------
# Conjecture scanners (evidence, not proof)
# ---------------------------------------------------------------------------

def _check_budget(index: int, budget: int) -> None:
    if index > budget:
        raise BudgetExceededError(
            f"Bernoulli index {index} exceeds budget {budget}"
        )


def _validate_kstar_multiple(p: int, m: int, kstar: int) -> None:
    if kstar % (p - 1) != 0 or kstar <= m:
        raise ParameterOutOfRangeError(
            f"k* must be a multiple of p-1 = {p - 1} exceeding m = {m}, got {kstar}"
        )


def scan_conjecture_bernoulli(p: int, m: int, alphas: Iterable[int], kstar: int,
                              budget: int = DEFAULT_BERNOULLI_BUDGET) -> list[CongruenceReport]:
    """Evidence scan: (a(p-1)+k*)/B_{a(p-1)+k*} vs its H-weighted history mod p^m."""
    _validate_kstar_multiple(p, m, kstar)
    alphas = list(alphas)
    if alphas:
        _check_budget(max(alphas) * (p - 1) + kstar, budget)
    reports = []
    rhs_terms = {}
    for alpha in alphas:
        lhs_k = alpha * (p - 1) + kstar
        lhs = Fraction(lhs_k) / bernoulli(lhs_k)
        rhs = Fraction(0)
        for r in range(m):
            h = h_coefficient(m, alpha, r)
            if h:
                if r not in rhs_terms:
                    rk = r * (p - 1) + kstar
                    rhs_terms[r] = Fraction(rk) / bernoulli(rk)
                rhs += h * rhs_terms[r]
        params = {"p": p, "m": m, "kstar": kstar, "alpha": alpha}
        reports.append(_valuation_report("ConjEq6.4", params, lhs - rhs, p, m))
    return reports


def scan_conjecture_ek_series(p: int, m: int, kstar: int, alpha: int, precision: int = 40,
                              budget: int = DEFAULT_BERNOULLI_BUDGET) -> CongruenceReport:
    """Evidence scan: E_{a(p-1)+k*} vs the H-weighted sum of E_{r(p-1)+k*} E_{p-1}^(a-r)."""
    _validate_kstar_multiple(p, m, kstar)
    if alpha < 0:
        raise ParameterOutOfRangeError("alpha must be non-negative")
    weight = alpha * (p - 1) + kstar
    _check_budget(weight, budget)
    ring = ResidueRing(p, m)
    lhs = e_series(weight, ring, precision)
    rhs = _h_combination(ring, precision, m, alpha,
                         lambda r: e_series(r * (p - 1) + kstar, ring, precision),
                         with_e_powers=True)
    params = {"p": p, "m": m, "kstar": kstar, "alpha": alpha, "N": precision}
    return _series_report("ConjEq6.1", params, lhs, rhs, precision, weight)

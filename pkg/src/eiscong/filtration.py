"""Level-one modular form bases, linear solving over Z/p^m, and factor
filtration bounds.

The filtration scan asks, for f of weight k: what is the least w with
w = k - n(p-1) for some n >= 0 such that f matches E_{p-1}^n * g for some g
in the weight-w monomial basis, coefficient-wise modulo p^m through the
Sturm index of weight k. Candidate weights are scanned in ascending order,
so the first solvable weight is the bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EiscongError,
    OddWeightError,
    ParameterOutOfRangeError,
    PrecisionTooLowError,
    QuasimodularWeightError,
    RingMismatchError,
    WeightMismatchError,
)
from .eisenstein import e_series, g_series, monomial_series
from .residue import ResidueRing
from .series import QSeries

__all__ = [
    "BasisMatrix",
    "BoundReport",
    "FiltrationReport",
    "LinearSystem",
    "NoSolution",
    "Solution",
    "basis",
    "cor13_bound",
    "cor14_bound",
    "factor_filtration_bound",
    "k0_of",
    "k0m_of",
    "monomial_exponents",
    "sharpness_probe",
    "solve_mod_pm",
    "space_dimension",
    "sturm_bound",
    "verify_refined_bounds",
]


# ---------------------------------------------------------------------------
# Dimensions, monomials, Sturm bound
# ---------------------------------------------------------------------------

def space_dimension(weight: int) -> int:
    """dim M_weight at level one (weight even, >= 0)."""
    if weight % 2 == 1:
        raise OddWeightError(f"no odd-weight spaces at level one, got {weight}")
    if weight < 0:
        return 0
    if weight % 12 == 2:
        return weight // 12
    return weight // 12 + 1


def monomial_exponents(weight: int) -> list[tuple[int, int, int]]:
    """Exponent triples (a, b, c) with 4a + 6b + 12c = weight, b in {0, 1},
    ordered by ascending c (so column j leads with q^j)."""
    if weight % 2 == 1:
        raise OddWeightError(f"weight must be even, got {weight}")
    out = []
    c = 0
    while 12 * c <= weight:
        rem = weight - 12 * c
        b = 1 if rem % 4 == 2 else 0
        rem -= 6 * b
        if rem >= 0:
            out.append((rem // 4, b, c))
        c += 1
    return out


def sturm_bound(weight: int) -> int:
    """Coefficient index through which equal-weight congruence is certified."""
    if weight % 2 == 1:
        raise OddWeightError(f"weight must be even, got {weight}")
    return weight // 12 + 1


@dataclass(frozen=True)
class BasisMatrix:
    """Monomial (or Miller-echelonized) basis of M_weight over Z/p^m."""

    weight: int
    ring: ResidueRing
    precision: int
    monomials: tuple[tuple[int, int, int], ...]
    columns: tuple[QSeries, ...]
    echelonized: bool = False

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def coefficient_rows(self, upto: int) -> list[list[int]]:
        """Rows q^0..q^upto of the column matrix."""
        return [[col.coefficient(n) for col in self.columns] for n in range(upto + 1)]


def basis(weight: int, ring: ResidueRing, precision: int, echelon: bool = False) -> BasisMatrix:
    """Basis of M_weight with integral q-expansions through q^precision.

    Default columns are the monomials E_4^a E_6^b Delta^c (b in {0,1}, c
    ascending); with echelon=True they are reduced to Miller form, column j
    having expansion q^j + O(q^dimension).
    """
    if weight % 2 == 1:
        raise OddWeightError(f"weight must be even, got {weight}")
    if weight == 2:
        raise QuasimodularWeightError("weight 2 is quasimodular; no basis")
    if weight < 0:
        raise ParameterOutOfRangeError("weight must be non-negative")
    monomials = tuple(monomial_exponents(weight))
    dim = space_dimension(weight)
    if len(monomials) != dim:
        raise EiscongError(
            f"monomial count {len(monomials)} != dimension {dim} at weight {weight}"
        )
    cols = [monomial_series(a, b, c, ring, precision) for a, b, c in monomials]
    if echelon:
        # Columns are unitriangular (column j leads with q^j); clear the
        # entries above each leading 1 with integral column operations.
        for i in range(dim):
            for j in range(i):
                factor = cols[j].coefficient(i)
                if factor:
                    cols[j] = cols[j] - cols[i].scale(factor)
    return BasisMatrix(weight, ring, precision, monomials, tuple(cols), echelon)


# ---------------------------------------------------------------------------
# Linear algebra over Z/p^m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    """matrix * x = rhs over one residue ring; entries canonicalized."""

    ring: ResidueRing
    matrix: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    @staticmethod
    def build(ring: ResidueRing, matrix, rhs) -> "LinearSystem":
        mod = ring.modulus
        rows = tuple(tuple(x % mod for x in row) for row in matrix)
        b = tuple(x % mod for x in rhs)
        if len(rows) != len(b):
            raise ValueError("matrix and rhs row counts differ")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        return LinearSystem(ring, rows, b)


@dataclass(frozen=True)
class Solution:
    vector: tuple[int, ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoSolution:
    reason: str
    detail: dict

    def __bool__(self) -> bool:
        return False


def solve_mod_pm(system: LinearSystem) -> Solution | NoSolution:
    """Decide solvability of a linear system over Z/p^m and produce a solution.

    Diagonalization with global minimum-valuation pivoting: at each step the
    active entry with the least p-valuation becomes the pivot, its row is
    scaled by the unit inverse (pivot becomes p^e), and its column and row
    are cleared. All eliminations divide exactly because the pivot valuation
    is minimal, so solvability is decided correctly despite zero divisors.
    Column operations are tracked to map the diagonal solution back.
    """
    ring = system.ring
    p, m, mod = ring.p, ring.m, ring.modulus
    nrows = len(system.matrix)
    ncols = len(system.matrix[0]) if nrows else 0
    M = [list(row) for row in system.matrix]
    b = list(system.rhs)
    # x = X @ y where y solves the diagonalized system
    X = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    pivot_exponents: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        best_v = m
        for i in range(t, nrows):
            row = M[i]
            for j in range(t, ncols):
                if row[j]:
                    v = ring.valuation(row[j])
                    if v < best_v:
                        best_v, best = v, (i, j)
                        if v == 0:
                            break
            if best_v == 0:
                break
        if best is None:
            break
        i0, j0 = best
        M[t], M[i0] = M[i0], M[t]
        b[t], b[i0] = b[i0], b[t]
        if j0 != t:
            for row in M:
                row[t], row[j0] = row[j0], row[t]
            for row in X:
                row[t], row[j0] = row[j0], row[t]
        e = best_v
        pe = p**e
        uinv = pow(M[t][t] // pe, -1, mod)
        M[t] = [x * uinv % mod for x in M[t]]
        b[t] = b[t] * uinv % mod
        for i in range(nrows):
            if i != t and M[i][t]:
                f = M[i][t] // pe
                row, prow = M[i], M[t]
                for j in range(t, ncols):
                    row[j] = (row[j] - f * prow[j]) % mod
                b[i] = (b[i] - f * b[t]) % mod
        for j in range(t + 1, ncols):
            if M[t][j]:
                f = M[t][j] // pe
                # column t is zero outside row t, so col_j -= f*col_t only
                # touches M[t][j]
                M[t][j] = 0
                for i in range(ncols):
                    X[i][j] = (X[i][j] - f * X[i][t]) % mod
        pivot_exponents.append(e)
        t += 1
    for i in range(t, nrows):
        if b[i] % mod:
            return NoSolution("inconsistent-row", {"row": i, "residue": b[i]})
    y = [0] * ncols
    for i, e in enumerate(pivot_exponents):
        pe = p**e
        if b[i] % pe:
            return NoSolution(
                "valuation-obstruction",
                {"pivot": i, "pivot-valuation": e, "rhs-valuation": ring.valuation(b[i])},
            )
        y[i] = b[i] // pe
    x = tuple(sum(X[i][j] * y[j] for j in range(ncols)) % mod for i in range(ncols))
    return Solution(x)


# ---------------------------------------------------------------------------
# Factor filtration
# ---------------------------------------------------------------------------

def k0_of(k: int, p: int) -> int:
    """Least non-negative residue of k modulo p-1."""
    return k % (p - 1)

def k0m_of(k: int, p: int, m: int) -> int:
    """Smallest integer greater than m congruent to k modulo p-1."""
    x = k % (p - 1)
    while x <= m:
        x += p - 1
    return x


def cor13_bound(p: int, m: int, k: int) -> int:
    """Stated filtration bound (m-1)(p-1) + k0(m) for G_k, (p-1) not dividing k."""
    return (m - 1) * (p - 1) + k0m_of(k, p, m)


def cor14_bound(p: int, m: int) -> int:
    """Stated filtration bound (m-1)(p-1) for E_k with (p-1) | k and m <= p-1."""
    return (m - 1) * (p - 1)


@dataclass(frozen=True)
class FiltrationReport:
    input_id: str
    p: int
    m: int
    weight: int
    bound_found: int
    witness_exponent: int
    witness_monomials: tuple[tuple[int, int, int], ...]
    witness_coeffs: tuple[int, ...]
    certification: str
    certified_coefficients: int
    sharpness: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "input-id": self.input_id,
            "p": self.p,
            "m": self.m,
            "weight": self.weight,
            "bound-found": self.bound_found,
            "witness": {
                "n": self.witness_exponent,
                "monomials": [list(t) for t in self.witness_monomials],
                "coefficients": [str(c) for c in self.witness_coeffs],
            },
            "certification": self.certification,
            "certified-coefficients": self.certified_coefficients,
            "sharpness": self.sharpness,
        }


def _candidate_weights(k: int, p: int) -> list[int]:
    """Weights w <= k with w = k mod p-1, ascending; weight 2 is skipped."""
    w = k % (p - 1)
    out = []
    while w <= k:
        if w != 2:
            out.append(w)
        w += p - 1
    return out


def _check_weight_match(k: int, w: int, p: int) -> int:
    if w < 0 or (k - w) % (p - 1) or k - w < 0:
        raise WeightMismatchError(
            f"candidate weight {w} is not k - n(p-1) for any n >= 0 (k = {k})"
        )
    return (k - w) // (p - 1)


def _witness_system(f: QSeries, k: int, w: int, upto: int) -> tuple[LinearSystem, BasisMatrix, int]:
    ring = f.ring
    n = _check_weight_match(k, w, ring.p)
    bm = basis(w, ring, upto)
    epow = e_series(ring.p - 1, ring, upto).pow(n)
    cols = [epow * col for col in bm.columns]
    rows = [[col.coefficient(i) for col in cols] for i in range(upto + 1)]
    rhs = [f.coefficient(i) for i in range(upto + 1)]
    return LinearSystem.build(ring, rows, rhs), bm, n


def sharpness_probe(f: QSeries, k: int, w: int, upto: int | None = None) -> Solution | NoSolution:
    """Decide whether f matches E_{p-1}^((k-w)/(p-1)) * g for some g of weight w."""
    if f.ring is None:
        raise RingMismatchError("filtration probes require a residue-mode series")
    _check_weight_match(k, w, f.ring.p)
    if w == 2:
        return NoSolution("empty-space", {"weight": 2})
    if upto is None:
        upto = sturm_bound(k)
    if f.precision < upto:
        raise PrecisionTooLowError(
            f"need coefficients through q^{upto}, have precision {f.precision}"
        )
    system, _, _ = _witness_system(f, k, w, upto)
    return solve_mod_pm(system)


def factor_filtration_bound(f: QSeries, k: int, input_id: str | None = None,
                            upto: int | None = None) -> FiltrationReport:
    """Least w = k - n(p-1) admitting a witness f = E_{p-1}^n g, g of weight w.

    Matching is coefficient-wise through q^upto (default: the Sturm index of
    weight k, which certifies the congruence; lower values are reported as
    coefficient evidence only). The returned witness is round-trip checked.
    """
    if f.ring is None:
        raise RingMismatchError("filtration bounds require a residue-mode series")
    ring = f.ring
    certified = upto is None
    if upto is None:
        upto = sturm_bound(k)
    if f.precision < upto:
        raise PrecisionTooLowError(
            f"need coefficients through q^{upto}, have precision {f.precision}"
        )
    if input_id is None:
        input_id = f"weight-{k}-series"
    p = ring.p
    previous_unsolvable = False
    for w in _candidate_weights(k, p):
        system, bm, n = _witness_system(f, k, w, upto)
        outcome = solve_mod_pm(system)
        if isinstance(outcome, NoSolution):
            previous_unsolvable = True
            continue
        witness = outcome.vector
        epow = e_series(p - 1, ring, upto).pow(n)
        total = QSeries.residue(ring, [0] * (upto + 1))
        for coeff, col in zip(witness, bm.columns):
            total = total + (epow * col).scale(coeff)
        for i in range(upto + 1):
            if total.coefficient(i) != f.coefficient(i):
                raise EiscongError("witness failed round-trip verification")
        cert = "sturm-certified" if certified else f"coefficient-evidence({upto + 1})"
        sharpness = None
        if previous_unsolvable:
            sharpness = f"NoSolution at weight {w - (p - 1)}"
        return FiltrationReport(
            input_id, p, ring.m, k, w, n, bm.monomials, tuple(witness),
            cert, upto + 1, sharpness,
        )
    raise EiscongError(
        f"no witness found through weight {k}; is the declared weight correct?"
    )


# ---------------------------------------------------------------------------
# Refined bound tables for m = 2, 3, 4
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    p: int
    m: int
    k: int
    k0: int
    alpha: int
    case: str
    stated_bound: int | None
    computed_bound: int | None
    verdict: str  # "Pass" | "Fail" | "Skipped"

    @property
    def passed(self) -> bool:
        return self.verdict != "Fail"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "k": self.k,
            "k0": self.k0,
            "alpha": self.alpha,
            "case": self.case,
            "stated-bound": self.stated_bound,
            "computed-bound": self.computed_bound,
            "verdict": self.verdict,
        }


def refined_bound_case(p: int, m: int, k: int) -> tuple[str, int | None]:
    """Case label and stated filtration bound for G_k at m in {2, 3, 4}.

    Returns (case, None) for the one combination sourced from prior work
    rather than verified here (m = 2 with k0 = 2).
    """
    k0 = k0_of(k, p)
    alpha = (k - k0) // (p - 1)
    if k0 == 0 or k0 % 2 or not 2 <= k0 <= p - 3:
        raise ParameterOutOfRangeError(f"k0 = {k0} must be even with 2 <= k0 <= p-3")
    if m == 2:
        if k0 == 2:
            return "m2-k0eq2-external", None
        return "m2-k0ge4", (p - 1) + k0
    if m == 3:
        if k0 >= 4:
            if alpha % p in (0, 1):
                return "m3-k0ge4-alpha01", (p - 1) + k0
            return "m3-k0ge4-general", 2 * (p - 1) + k0
        if alpha % p == 1:
            return "m3-k0eq2-alpha1", (p - 1) + 2
        if alpha % p == 2:
            return "m3-k0eq2-alpha2", 2 * (p - 1) + 2
        return "m3-k0eq2-general", 3 * (p - 1) + 2
    if m == 4:
        if k0 >= 6:
            if alpha % (p * p) in (0, 1):
                return "m4-k0ge6-alpha01-psq", (p - 1) + k0
            if alpha % p in (0, 1, 2):
                return "m4-k0ge6-alpha012", 2 * (p - 1) + k0
            return "m4-k0ge6-general", 3 * (p - 1) + k0
        if k0 == 4:
            if alpha % (p * p) == 1:
                return "m4-k0eq4-alpha1-psq", (p - 1) + 4
            if alpha % p in (1, 2):
                return "m4-k0eq4-alpha12", 2 * (p - 1) + 4
            if alpha % p == 3:
                return "m4-k0eq4-alpha3", 3 * (p - 1) + 4
            return "m4-k0eq4-general", 4 * (p - 1) + 4
        if alpha % (p * p) == 1:
            return "m4-k0eq2-alpha1-psq", (p - 1) + 2
        if alpha % (p * p) == 2:
            return "m4-k0eq2-alpha2-psq", 2 * (p - 1) + 2
        if alpha % p in (1, 2, 3):
            return "m4-k0eq2-alpha123", 3 * (p - 1) + 2
        return "m4-k0eq2-general", 4 * (p - 1) + 2
    raise ParameterOutOfRangeError(f"refined bounds cover m in {{2, 3, 4}}, got {m}")


def verify_refined_bounds(p: int, m: int, k: int) -> BoundReport:
    """Check the computed filtration bound of G_k against the m = 2/3/4 tables."""
    if k < 4:
        raise ParameterOutOfRangeError("k must be at least 4")
    k0 = k0_of(k, p)
    alpha = (k - k0) // (p - 1)
    case, stated = refined_bound_case(p, m, k)
    if stated is None:
        return BoundReport(p, m, k, k0, alpha, case, None, None, "Skipped")
    ring = ResidueRing(p, m)
    f = g_series(k, ring, sturm_bound(k))
    report = factor_filtration_bound(f, k, input_id=f"G_{k}")
    verdict = "Pass" if report.bound_found <= stated else "Fail"
    return BoundReport(p, m, k, k0, alpha, case, stated, report.bound_found, verdict)

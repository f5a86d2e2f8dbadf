"""Truncated q-expansions with explicit precision tracking.

A QSeries holds coefficients of q^0 .. q^precision, either as canonical
residues in a ResidueRing or as exact Fractions (ring is None). Reading past
the declared precision raises instead of returning zero, and every binary
operation propagates the minimum precision of its operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionTooLowError, RingMismatchError
from .residue import ResidueRing

__all__ = ["CongruenceVerdict", "QSeries", "series_equal_mod", "series_mul", "series_pow"]


@dataclass(frozen=True)
class CongruenceVerdict:
    """Outcome of a coefficient-wise comparison through q^upto."""

    ok: bool
    upto: int
    first_index: int | None = None
    lhs: int | None = None
    rhs: int | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class QSeries:
    ring: ResidueRing | None
    coeffs: tuple
    precision: int

    def __post_init__(self) -> None:
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        if len(self.coeffs) != self.precision + 1:
            raise ValueError("coefficient vector must have length precision+1")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def residue(ring: ResidueRing, coeffs, precision: int | None = None) -> "QSeries":
        coeffs = tuple(c % ring.modulus for c in coeffs)
        if precision is None:
            precision = len(coeffs) - 1
        return QSeries(ring, coeffs, precision)

    @staticmethod
    def exact(coeffs, precision: int | None = None) -> "QSeries":
        coeffs = tuple(Fraction(c) for c in coeffs)
        if precision is None:
            precision = len(coeffs) - 1
        return QSeries(None, coeffs, precision)

    @staticmethod
    def one(ring: ResidueRing | None, precision: int) -> "QSeries":
        unit = 1 if ring is not None else Fraction(1)
        zero = 0 if ring is not None else Fraction(0)
        return QSeries(ring, (unit,) + (zero,) * precision, precision)

    # -- accessors ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.ring is None

    def coefficient(self, n: int):
        if n < 0:
            raise ValueError("coefficient index must be non-negative")
        if n > self.precision:
            raise PrecisionTooLowError(
                f"coefficient q^{n} requested but precision is {self.precision}"
            )
        return self.coeffs[n]

    def __getitem__(self, n: int):
        return self.coefficient(n)

    def truncate(self, precision: int) -> "QSeries":
        if precision > self.precision:
            raise PrecisionTooLowError(
                f"cannot extend precision {self.precision} to {precision}"
            )
        return QSeries(self.ring, self.coeffs[: precision + 1], precision)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "QSeries") -> int:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} != {other.ring}")
        return min(self.precision, other.precision)

    def __add__(self, other: "QSeries") -> "QSeries":
        prec = self._check_compatible(other)
        coeffs = [self.coeffs[i] + other.coeffs[i] for i in range(prec + 1)]
        if self.ring is not None:
            mod = self.ring.modulus
            coeffs = [c % mod for c in coeffs]
        return QSeries(self.ring, tuple(coeffs), prec)

    def __sub__(self, other: "QSeries") -> "QSeries":
        prec = self._check_compatible(other)
        coeffs = [self.coeffs[i] - other.coeffs[i] for i in range(prec + 1)]
        if self.ring is not None:
            mod = self.ring.modulus
            coeffs = [c % mod for c in coeffs]
        return QSeries(self.ring, tuple(coeffs), prec)

    def __mul__(self, other: "QSeries") -> "QSeries":
        prec = self._check_compatible(other)
        zero = 0 if self.ring is not None else Fraction(0)
        out = [zero] * (prec + 1)
        for i, a in enumerate(self.coeffs[: prec + 1]):
            if a == 0:
                continue
            for j in range(prec + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        if self.ring is not None:
            mod = self.ring.modulus
            out = [c % mod for c in out]
        return QSeries(self.ring, tuple(out), prec)

    def scale(self, scalar) -> "QSeries":
        """Multiply every coefficient by a scalar (int, Fraction, or residue)."""
        if self.ring is not None:
            s = self.ring.reduce_rational(scalar) if isinstance(scalar, Fraction) else scalar
            mod = self.ring.modulus
            coeffs = tuple(c * s % mod for c in self.coeffs)
        else:
            coeffs = tuple(c * scalar for c in self.coeffs)
        return QSeries(self.ring, coeffs, self.precision)

    def pow(self, n: int) -> "QSeries":
        """Binary exponentiation; a^0 is the constant series 1."""
        if n < 0:
            raise ValueError("exponent must be non-negative")
        result = QSeries.one(self.ring, self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __pow__(self, n: int) -> "QSeries":
        return self.pow(n)

    def reduce(self, ring: ResidueRing) -> "QSeries":
        """Reduce an exact-mode series coefficient-wise into a residue ring."""
        if self.ring is not None:
            raise RingMismatchError("series is already in residue mode")
        return QSeries(ring, tuple(ring.reduce_rational(c) for c in self.coeffs), self.precision)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.ring is not None:
            return {
                "p": self.ring.p,
                "m": self.ring.m,
                "precision": self.precision,
                "coefficients": [str(c) for c in self.coeffs],
            }
        return {
            "p": None,
            "m": None,
            "precision": self.precision,
            "coefficients": [
                f"{c.numerator}/{c.denominator}" for c in self.coeffs
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "QSeries":
        precision = int(data["precision"])
        raw = data["coefficients"]
        if data.get("p") is None:
            return QSeries.exact([Fraction(c) for c in raw], precision)
        ring = ResidueRing(int(data["p"]), int(data["m"]))
        return QSeries.residue(ring, [int(c) for c in raw], precision)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated to the minimum precision of the operands."""
    return a * b


def series_pow(a: QSeries, n: int) -> QSeries:
    return a.pow(n)


def series_equal_mod(a: QSeries, b: QSeries, upto: int) -> CongruenceVerdict:
    """Coefficient-wise comparison through q^upto.

    Both series must carry at least that much declared precision; a shortfall
    is an error, never a silent pass.
    """
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} != {b.ring}")
    if a.precision < upto or b.precision < upto:
        raise PrecisionTooLowError(
            f"comparison through q^{upto} needs precision >= {upto}; "
            f"have {a.precision} and {b.precision}"
        )
    for n in range(upto + 1):
        if a.coeffs[n] != b.coeffs[n]:
            return CongruenceVerdict(False, upto, n, a.coeffs[n], b.coeffs[n])
    return CongruenceVerdict(True, upto)

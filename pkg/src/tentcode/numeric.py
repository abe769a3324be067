"""Exact numbers: rationals, the slope parameter, and exact Bernoulli draws."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _backend

Rational = Fraction
BitSource = _backend.BitSource

HALF = Fraction(1, 2)


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


def rational_bit_size(r: Fraction) -> int:
    """Bits needed to write ``r`` as numerator and denominator.

    >>> rational_bit_size(Fraction(3, 4))
    5
    """
    return abs(r.numerator).bit_length() + r.denominator.bit_length()


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


@dataclass(frozen=True)
class Mu:
    """Slope c/d of the tent map, irreducible with 1 < c/d < 2."""

    c: int
    d: int

    def __post_init__(self):
        if self.d < 2 or gcd(self.c, self.d) != 1 or not self.d < self.c < 2 * self.d:
            raise DomainError(f"mu={self.c}/{self.d} must be irreducible with 1 < mu < 2")

    @property
    def value(self) -> Fraction:
        return Fraction(self.c, self.d)

    @classmethod
    def parse(cls, text: str) -> "Mu":
        """Parse "c/d"; non-reduced input is reduced before the range check.

        Decimal strings are refused so no unintended denominator sneaks in.
        """
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise DomainError(f"mu must be written as c/d, got {text!r}")
        try:
            c, d = int(parts[0]), int(parts[1])
        except ValueError:
            raise DomainError(f"mu must be written as c/d, got {text!r}") from None
        if d <= 0:
            raise DomainError("denominator of mu must be positive")
        g = gcd(c, d)
        return cls(c // g, d // g)

    def __str__(self):
        return f"{self.c}/{self.d}"


def bernoulli_exact(p: Fraction, src) -> int:
    """Return 1 with probability exactly ``p`` using bits from ``src``.

    The source's bits are read as the binary digits of a uniform U and
    compared lazily against p; the answer is ``U < p``. p = 0 and p = 1
    consume no bits.
    """
    p = Fraction(p)
    if p < 0 or p > 1:
        raise DomainError(f"probability {p} outside [0, 1]")
    k = _backend.kernel
    kind, p64 = k.prob_prefix(p.numerator, p.denominator)
    return k.draw(src, kind, p64, p.numerator, p.denominator)

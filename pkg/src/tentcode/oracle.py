"""Brute-force ground truth by exact subdivision of [0, 1).

Every section of length n is an interval [lo, hi) on which f^n is affine.
Each one carries the value of f^n at lo and its left limit at hi; a section
is split where that affine image crosses 1/2. Nothing here touches the
segment-type table, so it can serve as an independent check on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import HALF, DomainError, Mu
from .tent import Code

DEFAULT_CAP = 16


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Section:
    code: Code
    lo: Fraction
    hi: Fraction
    # f^n(lo) and lim f^n(x) as x -> hi from the left
    y_lo: Fraction
    y_hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def image_lo(self) -> Fraction:
        return min(self.y_lo, self.y_hi)

    @property
    def image_hi(self) -> Fraction:
        return max(self.y_lo, self.y_hi)

    @property
    def image_orientation(self) -> int:
        """0 if f^n increases on the section, 1 if it decreases."""
        return 0 if self.y_lo < self.y_hi else 1


def _next_bit(b: int, y_mid: Fraction) -> int:
    # y_mid is never exactly 1/2: it is the midpoint of an image on one side
    if b == 0:
        return 0 if y_mid < HALF else 1
    return 1 if y_mid < HALF else 0


def _image(m: Fraction, y: Fraction) -> Fraction:
    return m * y if y <= HALF else m * (1 - y)


def _first(m: Fraction) -> list[Section]:
    top = m / 2
    return [
        Section("0", Fraction(0), HALF, Fraction(0), top),
        Section("1", HALF, Fraction(1), top, Fraction(0)),
    ]


def _children(m: Fraction, s: Section) -> list[Section]:
    """Split ``s`` into its (n+1)-sections, left to right."""
    b = int(s.code[-1])
    lo_y, hi_y = s.image_lo, s.image_hi
    if lo_y < HALF < hi_y:
        x_star = s.lo + (HALF - s.y_lo) / (s.y_hi - s.y_lo) * (s.hi - s.lo)
        parts = [(s.lo, x_star, s.y_lo, HALF), (x_star, s.hi, HALF, s.y_hi)]
    else:
        parts = [(s.lo, s.hi, s.y_lo, s.y_hi)]
    out = []
    for lo, hi, ya, yb in parts:
        bit = _next_bit(b, (ya + yb) / 2)
        out.append(Section(s.code + str(bit), lo, hi, _image(m, ya), _image(m, yb)))
    return out


def enumerate_sections(mu: Mu, n: int, cap: int = DEFAULT_CAP, force: bool = False) -> list[Section]:
    """All n-sections, sorted by lo."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > cap and not force:
        raise CapExceeded(f"n={n} exceeds enumeration cap {cap}")
    m = mu.value
    level = _first(m)
    for _ in range(n - 1):
        nxt = []
        for s in level:
            nxt.extend(_children(m, s))
        level = nxt
    return level


def exact_distribution(mu: Mu, n: int, cap: int = DEFAULT_CAP, force: bool = False) -> dict[Code, Fraction]:
    return {s.code: s.length for s in enumerate_sections(mu, n, cap, force)}


def section_of(mu: Mu, x: Fraction, n: int) -> Section:
    """The n-section containing x, found by descending one branch only."""
    x = Fraction(x)
    if x < 0 or x >= 1:
        raise DomainError(f"x={x} outside [0, 1)")
    if n < 1:
        raise DomainError("n must be positive")
    m = mu.value
    s = _first(m)[0 if x < HALF else 1]
    for _ in range(n - 1):
        for child in _children(m, s):
            if child.lo <= x < child.hi:
                s = child
                break
    return s


def type_set(sections: list[Section]) -> set[tuple[Fraction, Fraction, int]]:
    """Distinct (image_lo, image_hi, orientation) triples."""
    return {(s.image_lo, s.image_hi, s.image_orientation) for s in sections}

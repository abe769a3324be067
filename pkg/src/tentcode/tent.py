"""The tent map and the naive tent-code encoder.

Codes are plain strings of '0'/'1' with b1 first.
"""

from __future__ import annotations

from fractions import Fraction

from .numeric import HALF, DomainError, Mu

Code = str


def _check_unit(x: Fraction, *, closed: bool = True) -> Fraction:
    x = Fraction(x)
    if x < 0 or x > 1 or (not closed and x == 1):
        raise DomainError(f"x={x} outside [0, 1{']' if closed else ')'}")
    return x


def _f(m: Fraction, x: Fraction) -> Fraction:
    return m * x if x <= HALF else m * (1 - x)


def tent_apply(mu: Mu, x: Fraction) -> Fraction:
    """f(x) = mu*x for x <= 1/2, mu*(1 - x) otherwise."""
    return _f(mu.value, _check_unit(x))


def tent_tilde(mu: Mu, x: Fraction) -> Fraction:
    """Folded map: f(x) left of 1/2, 1 - f(x) right of it.

    Satisfies f^(n+1)(x) == f^n(tent_tilde(x)) for n >= 1.
    """
    x = _check_unit(x)
    y = _f(mu.value, x)
    return y if x <= HALF else 1 - y


def tent_iterate(mu: Mu, x: Fraction, n: int) -> Fraction:
    if n < 0:
        raise DomainError("iteration count must be non-negative")
    x = _check_unit(x)
    m = mu.value
    for _ in range(n):
        if x == 0:
            break
        x = _f(m, x)
    return x


def critical_orbit(mu: Mu, n: int) -> list[Fraction]:
    """[f^0(1/2), f^1(1/2), ..., f^n(1/2)]."""
    m = mu.value
    out = [HALF]
    x = HALF
    for _ in range(n):
        x = _f(m, x)
        out.append(x)
    return out


def encode(mu: Mu, x: Fraction, n: int) -> Code:
    """n-bit tent code of x in [0, 1), computed by exact iteration."""
    if n < 1:
        raise DomainError("code length must be positive")
    x = _check_unit(x, closed=False)
    m = mu.value
    b = 0 if x < HALF else 1
    bits = [b]
    for _ in range(n - 1):
        x = _f(m, x)
        if b == 0:
            b = 0 if x < HALF else 1
        else:
            b = 1 if x <= HALF else 0
        bits.append(b)
    return "".join("1" if t else "0" for t in bits)


def decode_partial(mu: Mu, code: Code) -> Fraction:
    """(mu - 1) * sum of b_i * mu^-i over the code's bits."""
    if not code:
        raise DomainError("empty code")
    m = mu.value
    inv = 1 / m
    w = Fraction(1)
    total = Fraction(0)
    for ch in code:
        w *= inv
        if ch == "1":
            total += w
    return (m - 1) * total


def complement(code: Code) -> Code:
    return code.translate(str.maketrans("01", "10"))

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tentcode import _backend, _walk_py
from tentcode.numeric import (
    BitSource,
    DomainError,
    Mu,
    bernoulli_exact,
    format_rational,
    parse_rational,
    rational_bit_size,
)

fractions = st.fractions(max_denominator=10 ** 12)


@pytest.mark.parametrize("r,bits", [(Fraction(0), 1), (Fraction(3, 4), 5), (Fraction(9, 16), 9),
                                    (Fraction(-3, 4), 5), (Fraction(1), 2)])
def test_bit_size(r, bits):
    assert rational_bit_size(r) == bits


def test_format_roundtrip():
    assert format_rational(Fraction(6, 16)) == "3/8"
    assert parse_rational("3/8") == Fraction(3, 8)
    assert parse_rational("6/16") == Fraction(3, 8)


@given(fractions, fractions)
def test_rational_exactness(a, b):
    assert (a + b) - b == a
    assert (a.denominator * b.denominator) % (a * b).denominator == 0


@pytest.mark.parametrize("text,c,d", [("3/2", 3, 2), ("4/3", 4, 3), ("6/4", 3, 2), (" 9/5 ", 9, 5)])
def test_mu_parse(text, c, d):
    m = Mu.parse(text)
    assert (m.c, m.d) == (c, d)
    assert str(m) == f"{c}/{d}"


@pytest.mark.parametrize("text", ["5/2", "4/2", "1/1", "1.5", "3/0", "3/-2", "abc", "2/2", "7/3"])
def test_mu_rejects(text):
    with pytest.raises(DomainError):
        Mu.parse(text)


def test_mu_direct_validation():
    with pytest.raises(DomainError):
        Mu(6, 4)
    assert Mu(3, 2).value == Fraction(3, 2)


def test_bernoulli_endpoints():
    src = BitSource(5)
    state = src.getstate()
    assert all(bernoulli_exact(Fraction(0), src) == 0 for _ in range(100))
    assert all(bernoulli_exact(Fraction(1), src) == 1 for _ in range(100))
    assert src.getstate() == state  # no bits consumed


@pytest.mark.parametrize("p", [Fraction(-1, 3), Fraction(4, 3)])
def test_bernoulli_domain(p):
    with pytest.raises(DomainError):
        bernoulli_exact(p, BitSource(1))


def _draws(p, seed, count):
    k = _backend.kernel
    kind, p64 = k.prob_prefix(p.numerator, p.denominator)
    src = k.BitSource(seed)
    return sum(k.draw(src, kind, p64, p.numerator, p.denominator) for _ in range(count))


def test_bernoulli_third_mean():
    n, p = 10 ** 6, 1 / 3
    hits = _draws(Fraction(1, 3), 2024, n)
    assert abs(hits / n - p) <= 4 * math.sqrt(p * (1 - p) / n)


def test_bernoulli_half_chisquare():
    from scipy.stats import chisquare

    n = 10 ** 5
    ones = _draws(Fraction(1, 2), 77, n)
    assert chisquare([ones, n - ones]).pvalue > 1e-6


def test_bernoulli_deterministic():
    p = Fraction(5, 7)
    a = [bernoulli_exact(p, s) for s in [BitSource(9)] for _ in range(500)]
    b = [bernoulli_exact(p, s) for s in [BitSource(9)] for _ in range(500)]
    assert a == b


def test_bernoulli_expected_two_bits():
    src = _walk_py.BitSource(3)
    p = Fraction(2, 7)
    kind, p64 = _walk_py.prob_prefix(2, 7)
    draws = 20000
    for _ in range(draws):
        _walk_py.draw(src, kind, p64, 2, 7)
    state, _, left = src.getstate()
    ref = _walk_py.BitSource(3)
    words = 0
    while ref.getstate()[0] != state:
        ref.next_word()
        words += 1
    used = 64 * words - left
    assert 1.9 < used / draws < 2.1


@pytest.mark.parametrize("kernel", [_walk_py, _backend.kernel])
def test_tie_path_uses_remainder(kernel):
    # 1/3 = 0.0101...b; after matching the 64-bit prefix, digits 65, 66 are 0, 1
    kind, p64 = kernel.prob_prefix(1, 3)
    assert p64 == (1 << 64) // 3
    below = kernel.BitSource.from_words([p64, 0])
    above = kernel.BitSource.from_words([p64, 1 << 63])
    assert kernel.draw(below, kind, p64, 1, 3) == 1
    assert kernel.draw(above, kind, p64, 1, 3) == 0


def test_bitsource_same_seed_same_stream():
    a, b = BitSource(123), BitSource(123)
    assert [a.next_bit() for _ in range(300)] == [b.next_bit() for _ in range(300)]
    assert BitSource(1).next_word() != BitSource(2).next_word()


def test_bitsource_msb_first():
    src = BitSource.from_words([0b101 << 61])
    assert [src.next_bit() for _ in range(4)] == [1, 0, 1, 0]


def test_bitsource_seed_range():
    with pytest.raises((ValueError, OverflowError)):
        BitSource(-1)
    with pytest.raises((ValueError, OverflowError)):
        BitSource(1 << 64)

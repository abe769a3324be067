import random
from fractions import Fraction

import pytest

from tentcode.numeric import DomainError, Mu
from tentcode.oracle import (
    CapExceeded,
    enumerate_sections,
    exact_distribution,
    section_of,
    type_set,
)
from tentcode.tent import encode

MU = Mu(3, 2)
F = Fraction


def test_n1():
    secs = enumerate_sections(MU, 1)
    assert [(s.code, s.lo, s.hi) for s in secs] == [("0", 0, F(1, 2)), ("1", F(1, 2), 1)]


def test_n2():
    got = [(s.code, s.lo, s.hi) for s in enumerate_sections(MU, 2)]
    assert got == [("00", 0, F(1, 3)), ("01", F(1, 3), F(1, 2)),
                   ("10", F(1, 2), F(2, 3)), ("11", F(2, 3), 1)]


def test_distribution_n2():
    assert exact_distribution(MU, 2) == {"00": F(1, 3), "01": F(1, 6), "10": F(1, 6), "11": F(1, 3)}
    assert exact_distribution(MU, 1) == {"0": F(1, 2), "1": F(1, 2)}


@pytest.mark.parametrize("n", [1, 3, 7, 11])
def test_partition_and_order(mu, n):
    secs = enumerate_sections(mu, n)
    assert secs[0].lo == 0 and secs[-1].hi == 1
    for a, b in zip(secs, secs[1:]):
        assert a.hi == b.lo
        assert a.code < b.code
    assert all(s.lo < s.hi for s in secs)
    assert sum(s.length for s in secs) == 1


@pytest.mark.parametrize("n", [2, 6, 10])
def test_orientation_is_last_bit(mu, n):
    for s in enumerate_sections(mu, n):
        assert s.image_orientation == int(s.code[-1])


@pytest.mark.parametrize("n", [1, 5, 10])
def test_right_continuity(mu, n):
    for s in enumerate_sections(mu, n):
        assert encode(mu, s.lo, n) == s.code


@pytest.mark.parametrize("n", range(1, 13))
def test_type_count(mu, n):
    assert len(type_set(enumerate_sections(mu, n))) <= 2 * n


def test_section_of_examples():
    s = section_of(MU, F(0), 3)
    assert (s.code, s.lo) == ("000", 0)
    s = section_of(MU, F(1, 2), 2)
    assert (s.code, s.lo, s.hi) == ("10", F(1, 2), F(2, 3))
    assert section_of(MU, F(3, 5), 2).code == "10"


def test_section_of_matches_encoder(mu):
    rng = random.Random(5)
    for _ in range(2500):
        d = rng.randint(1, 10 ** 6)
        x = F(rng.randrange(d), d)
        n = rng.randint(1, 12)
        s = section_of(mu, x, n)
        assert s.lo <= x < s.hi
        assert s.code == encode(mu, x, n)


def test_section_of_domain():
    with pytest.raises(DomainError):
        section_of(MU, F(1), 2)
    with pytest.raises(DomainError):
        section_of(MU, F(-1, 2), 2)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_sections(MU, 17)
    with pytest.raises(CapExceeded):
        enumerate_sections(MU, 5, cap=4)
    assert len(enumerate_sections(MU, 5, cap=4, force=True)) > 0


def _preimages_of_half(mu, n):
    """All x in [0, 1) with f^n(x) == 1/2."""
    m = mu.value
    ys = {F(1, 2)}
    for _ in range(n):
        nxt = set()
        for y in ys:
            if y <= m / 2:
                nxt.add(y / m)
                nxt.add(1 - y / m)
        ys = nxt
    return sorted(x for x in ys if x < 1)


@pytest.mark.parametrize("n", range(0, 7))
def test_half_preimage_is_section_minimum(mu, n):
    xs = _preimages_of_half(mu, n)
    for x in xs:
        assert section_of(mu, x, n + 1).lo == x

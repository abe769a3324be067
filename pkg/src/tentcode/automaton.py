"""Segment-type table, transition function and exact code probabilities.

Level k >= 1 stores the interval (v[k], u[k]) of the type I_k together with
the bit c[k] of the kneading code; I_k is [v, u) when c[k] == 0 and (v, u]
otherwise, and its complement type has the opposite openness. A walker is
at I_l when its last emitted bit equals c[l] ("straight") and at the
complement otherwise ("mirrored"), so openness never needs storing.

Level 0 is the start state q0 and ``REJECT`` (-1) the dead state.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .numeric import HALF, Mu, format_rational, rational_bit_size

REJECT = -1


class InvariantFault(RuntimeError):
    """A structural guarantee of the table was found broken."""


class AutomatonState(NamedTuple):
    level: int
    straight: bool

    @property
    def rejected(self) -> bool:
        return self.level == REJECT


START = AutomatonState(0, False)
REJECTED = AutomatonState(REJECT, False)


class SegmentTable:
    """Append-only table of segment types, grown one level at a time.

    Row k's transitions are final once ``k < resolved``; the frontier row is
    still pending unless the table has stabilized. Growth is single-writer.
    """

    def __init__(self, mu: Mu):
        self.mu = mu
        m = mu.value
        self.v: list[Fraction] = [Fraction(0), Fraction(0)]
        self.u: list[Fraction] = [Fraction(1), m / 2]
        self.c: list[int] = [0, 1]
        self.delta0: list[int] = [1, 2]
        self.delta1: list[int] = [1, 1]
        self.theta: list[Optional[int]] = [None, None]
        self.frontier = 1
        self.stabilized_at: Optional[int] = None
        self.grow_events = 0
        # levels where the theta shortcut missed and the endpoint index answered
        self.theta_misses: list[int] = []
        self._index = {(self.v[1], self.u[1]): 1}
        self._p0: list[Optional[Fraction]] = [None, None]

    # -- structure -------------------------------------------------------

    @property
    def resolved(self) -> int:
        """Number of rows (from level 0) whose transitions are final."""
        return self.frontier + (1 if self.stabilized_at is not None else 0)

    def length(self, level: int) -> Fraction:
        if level == REJECT:
            return Fraction(0)
        return self.u[level] - self.v[level]

    def out_degree(self, k: int) -> int:
        self.ensure_row(k)
        return (self.delta0[k] != REJECT) + (self.delta1[k] != REJECT)

    def ensure_row(self, k: int) -> None:
        if k > self.frontier and self.stabilized_at is not None:
            raise InvariantFault(f"level {k} beyond a stabilized table")
        while k >= self.resolved:
            table_grow(self)

    def ensure_frontier(self, k: int) -> None:
        """Grow until level k exists (or the table stops growing)."""
        while self.frontier < k and self.stabilized_at is None:
            table_grow(self)

    def step_probability(self, k: int) -> Fraction:
        """|delta(I_k, 0)| / (mu |I_k|), the bit-0 probability from I_k."""
        self.ensure_row(k)
        p = self._p0[k]
        if p is None:
            p = self.length(self.delta0[k]) / (self.mu.value * self.length(k))
            self._p0[k] = p
        return p

    def types(self) -> set[tuple[Fraction, Fraction, int]]:
        """Segment types I_k and their complements as (v, u, openness-bit)."""
        out = set()
        for k in range(1, self.frontier + 1):
            out.add((self.v[k], self.u[k], self.c[k]))
            out.add((self.v[k], self.u[k], 1 - self.c[k]))
        return out

    def table_bits(self, upto: Optional[int] = None) -> int:
        """Bits held by levels 0..upto: endpoints, c bit and index fields."""
        top = self.frontier if upto is None else min(upto, self.frontier)
        total = 0
        for k in range(top + 1):
            total += rational_bit_size(self.v[k]) + rational_bit_size(self.u[k]) + 1
            for idx in (self.delta0[k], self.delta1[k], self.theta[k]):
                if idx is not None:
                    total += abs(idx).bit_length() or 1
        return total

    def rows(self) -> Iterator[tuple]:
        for k in range(self.frontier + 1):
            yield (k, self.v[k], self.u[k], self.c[k], self.delta0[k], self.delta1[k], self.theta[k])

    def dump(self) -> str:
        lines = []
        for k, v, u, c, d0, d1, th in self.rows():
            pending = k >= self.resolved
            fields = [
                str(k),
                format_rational(v),
                format_rational(u),
                str(c),
                "-" if pending else str(d0),
                "-" if pending else str(d1),
                "-" if th is None else str(th),
            ]
            lines.append("\t".join(fields))
        return "\n".join(lines) + "\n"


def table_init(mu: Mu) -> SegmentTable:
    return SegmentTable(mu)


def _f(m: Fraction, x: Fraction) -> Fraction:
    return m * x if x <= HALF else m * (1 - x)


def _place(table: SegmentTable, k: int, v: Fraction, u: Fraction, c: int, theta: int) -> int:
    """Append level k+1 = (v, u, c), or alias an existing level with equal endpoints."""
    hit = table._index.get((v, u))
    if hit is not None:
        table.stabilized_at = k
        return hit
    table.v.append(v)
    table.u.append(u)
    table.c.append(c)
    table.delta0.append(REJECT)
    table.delta1.append(REJECT)
    table.theta.append(theta)
    table._p0.append(None)
    table._index[(v, u)] = k + 1
    table.frontier = k + 1
    return k + 1


def table_grow(table: SegmentTable) -> int:
    """Resolve the frontier row and materialize the next level.

    Returns the level the frontier's continuing branch leads to: the new
    level, or an existing one if the table has stabilized.
    """
    if table.stabilized_at is not None:
        k = table.stabilized_at
        return table.delta0[k] if table.delta0[k] != REJECT else table.delta1[k]
    m = table.mu.value
    k = table.frontier
    v, u, c = table.v[k], table.u[k], table.c[k]
    top = m / 2
    if v < HALF < u:
        # the endpoint f^k(1/2) is u when c == 1, v when c == 0
        main, other = (v, u) if c == 0 else (u, v)
        nxt = _place(table, k, _f(m, main), top, 0, 1)
        table.delta0[k] = nxt
        table.delta1[k] = _branch_target(table, k, _f(m, other), top)
    elif u <= HALF:
        theta = table.theta[k] + 1
        nxt = _place(table, k, _f(m, v), _f(m, u), c, theta)
        if c == 0:
            table.delta0[k], table.delta1[k] = nxt, REJECT
        else:
            table.delta0[k], table.delta1[k] = REJECT, nxt
    else:
        theta = table.theta[k] + 1
        nxt = _place(table, k, _f(m, u), _f(m, v), 1 - c, theta)
        if c == 0:
            table.delta0[k], table.delta1[k] = REJECT, nxt
        else:
            table.delta0[k], table.delta1[k] = nxt, REJECT
    table.grow_events += 1
    return nxt


def _branch_target(table: SegmentTable, k: int, lo: Fraction, hi: Fraction) -> int:
    # level theta(k)+1 by the back-transition law; level 1 for I_1's self-loop
    guess = 1 if k == 1 else table.theta[k] + 1
    if guess <= table.frontier and table.v[guess] == lo and table.u[guess] == hi:
        return guess
    hit = table._index.get((lo, hi))
    if hit is None:
        raise InvariantFault(f"branch target ({lo}, {hi}] of level {k} is not a known type")
    table.theta_misses.append(k)
    return hit


def delta_step(table: SegmentTable, state: AutomatonState, bit: int) -> AutomatonState:
    """One transition; REJECT absorbs."""
    l = state.level
    if l == REJECT:
        return REJECTED
    table.ensure_row(l)
    if state.straight:
        nxt = table.delta1[l] if bit else table.delta0[l]
    else:
        nxt = table.delta0[l] if bit else table.delta1[l]
    if nxt == REJECT:
        return REJECTED
    return AutomatonState(nxt, bit == table.c[nxt])


def trace(table: SegmentTable, code: str) -> list[AutomatonState]:
    """States visited while reading ``code`` from q0 (START included)."""
    states = [START]
    st = START
    for ch in code:
        st = delta_step(table, st, 1 if ch == "1" else 0)
        states.append(st)
        if st.rejected:
            break
    return states


def recognize(mu: Mu, code: str, table: Optional[SegmentTable] = None) -> bool:
    table = table or SegmentTable(mu)
    return not trace(table, code)[-1].rejected


def transition_probability(table: SegmentTable, state: AutomatonState, bit: int) -> Fraction:
    """Probability that the chain at ``state`` emits ``bit``."""
    l = state.level
    p0 = table.step_probability(l)
    p_zero_branch = p0 if state.straight else 1 - p0
    return p_zero_branch if bit == 0 else 1 - p_zero_branch


def code_probability(mu: Mu, code: str, table: Optional[SegmentTable] = None) -> Fraction:
    table = table or SegmentTable(mu)
    prob = Fraction(1)
    st = START
    for ch in code:
        bit = 1 if ch == "1" else 0
        prob *= transition_probability(table, st, bit)
        st = delta_step(table, st, bit)
        if st.rejected:
            return Fraction(0)
    return prob


def count_codes(mu: Mu, n: int, table: Optional[SegmentTable] = None) -> int:
    """|L_n| by counting paths of length n from q0."""
    if n < 1:
        raise ValueError("n must be positive")
    table = table or SegmentTable(mu)
    counts = {START: 1}
    for _ in range(n):
        nxt: dict[AutomatonState, int] = {}
        for st, cnt in counts.items():
            for bit in (0, 1):
                t = delta_step(table, st, bit)
                if not t.rejected:
                    nxt[t] = nxt.get(t, 0) + cnt
        counts = nxt
    return sum(counts.values())

"""Batch experiments on the chain: K histograms, tail and space checks, audits."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .automaton import SegmentTable, AutomatonState, delta_step, transition_probability
from .numeric import HALF, Mu
from .sampler import RunStats, run_stats_only, sample_trace
from .tent import critical_orbit


def ceil_log(mu: Mu, x) -> int:
    """Smallest m >= 0 with mu**m >= x, by integer power comparison."""
    x = Fraction(x)
    m = 0
    cp, dp = 1, 1
    while cp < x * dp:
        cp *= mu.c
        dp *= mu.d
        m += 1
    return m


def l_star(mu: Mu, n: int) -> int:
    return 8 * ceil_log(mu, mu.d) * ceil_log(mu, n)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    K: int
    table_bits: int
    grow_events: int


@dataclass
class KHistogram:
    n: int
    trials: int
    seed0: int
    counts: dict[int, int]
    l_star: int
    records: list[TrialRecord] = field(default_factory=list, repr=False)

    def exceedances(self, threshold: int) -> int:
        return sum(c for k, c in self.counts.items() if k >= threshold)

    @property
    def tail_exceedances(self) -> int:
        """Trials with K >= 2 * l_star."""
        return self.exceedances(2 * self.l_star)

    @property
    def tail_allowance(self) -> float:
        return max(3, 10 * self.trials / self.n ** 2)

    @property
    def mean_k2(self) -> Fraction:
        return Fraction(sum(k * k * c for k, c in self.counts.items()), self.trials)

    @property
    def max_table_bits(self) -> int:
        return max(r.table_bits for r in self.records)

    @property
    def max_k(self) -> int:
        return max(self.counts)


def _trial_chunk(args) -> list[tuple[int, RunStats]]:
    c, d, n, seeds = args
    mu = Mu(c, d)
    return [(s, run_stats_only(mu, n, s)) for s in seeds]


def k_distribution(mu: Mu, n: int, trials: int, seed0: int, jobs: int = 1) -> KHistogram:
    """Run ``trials`` independent chains with seeds seed0, seed0+1, ..."""
    if trials < 1:
        raise ValueError("trials must be positive")
    seeds = list(range(seed0, seed0 + trials))
    if jobs > 1:
        step = -(-trials // (4 * jobs))
        chunks = [(mu.c, mu.d, n, seeds[i:i + step]) for i in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_trial_chunk, chunks) for r in part]
    else:
        results = _trial_chunk((mu.c, mu.d, n, seeds))
    counts: dict[int, int] = {}
    records = []
    for i, (s, st) in enumerate(results):
        counts[st.K] = counts.get(st.K, 0) + 1
        records.append(TrialRecord(i, s, st.K, st.table_bits, st.grow_events))
    return KHistogram(n, trials, seed0, dict(sorted(counts.items())), l_star(mu, n), records)


def half_return(mu: Mu, n: int) -> Optional[int]:
    """First i in 1..n-1 with f^i(1/2) == 1/2, or None."""
    orbit = critical_orbit(mu, max(n - 1, 0))
    for i in range(1, len(orbit)):
        if orbit[i] == HALF:
            return i
    return None


def jump_allowed(prev: tuple[int, bool], cur: tuple[int, bool]) -> bool:
    """Level rule: up by one keeping orientation, or back to k+1 (1 <= k <= n/2) flipping it."""
    (l, s), (l2, s2) = prev, cur
    if l == 0:
        return l2 == 1
    if l == 1 and l2 == 1:
        # I_1 --1--> I_1 (and its mirror) is the one self-loop
        return s2 == s
    if l2 == l + 1:
        return s2 == s
    return 2 <= l2 <= l // 2 + 1 and s2 != s


@dataclass(frozen=True)
class AuditResult:
    status: str  # "pass", "fail" or "skipped"
    reason: str = ""
    steps: int = 0

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def level_jump_audit(mu: Mu, n: int, seed: int, table: Optional[SegmentTable] = None) -> AuditResult:
    bad = half_return(mu, n)
    if bad is not None:
        return AuditResult("skipped", f"f^{bad}(1/2) == 1/2")
    _, tr = sample_trace(mu, n, seed, table)
    prev = (0, False)
    for t, cur in enumerate(tr, start=1):
        if not jump_allowed(prev, cur):
            return AuditResult("fail", f"step {t}: level {prev[0]} -> {cur[0]}", t)
        prev = cur
    return AuditResult("pass", "", len(tr))


def first_visit_violations(tr: list[tuple[int, bool]]) -> list[int]:
    """Times t where a first visit to level 2j is not preceded by the straight run j..2j-1."""
    seen: set[int] = set()
    out = []
    for t, (lvl, s) in enumerate(tr):
        if lvl not in seen:
            seen.add(lvl)
            if lvl >= 2 and lvl % 2 == 0:
                j = lvl // 2
                for i in range(1, j + 1):
                    if t - i < 0 or tr[t - i] != (lvl - i, s):
                        out.append(t)
                        break
    return out


def go_back_probability(table: SegmentTable, l: int) -> Fraction:
    """Probability of walking I_l, I_{l+1}, ..., I_{2l} along the table."""
    table.ensure_frontier(2 * l)
    prob = Fraction(1)
    for i in range(l, 2 * l):
        st = AutomatonState(i, True)
        bit = table.c[i + 1]
        if delta_step(table, st, bit) != AutomatonState(i + 1, True):
            raise ValueError(f"no straight arc from level {i} to {i + 1}")
        prob *= transition_probability(table, st, bit)
    return prob


def go_back_ratio(table: SegmentTable, l: int) -> Fraction:
    """|I_{2l}| / (mu^l |I_l|)."""
    table.ensure_frontier(2 * l)
    return table.length(2 * l) / (table.mu.value ** l * table.length(l))


def short_l_search(mu: Mu, n: int, table: Optional[SegmentTable] = None) -> Optional[int]:
    """First l = 2^i * ceil(log_mu n) <= l_star with go_back_ratio(l) <= n^-3."""
    table = table or SegmentTable(mu)
    base = ceil_log(mu, n)
    limit = l_star(mu, n)
    bound = Fraction(1, n ** 3)
    l = base
    while l <= limit:
        if go_back_ratio(table, l) <= bound:
            return l
        l *= 2
    return None


@dataclass(frozen=True)
class SpaceReport:
    k: int
    table_bits: int
    bound: float
    guard: float

    @property
    def ok(self) -> bool:
        return self.table_bits <= self.guard

    def line(self) -> str:
        return (f"k={self.k} table_bits={self.table_bits} bound={self.bound:.1f} "
                f"guard={self.guard:.1f} ok={int(self.ok)}")


def shape_guard(mu: Mu, k: int) -> float:
    """Envelope 16 k^2 log2 d + 64 k (log2 k + 1) that table_bits must fit."""
    lg_k = math.log2(k) if k > 1 else 0.0
    return 16 * k * k * math.log2(mu.d) + 64 * k * (lg_k + 1)


def space_report(table: SegmentTable, mu: Optional[Mu] = None, upto: Optional[int] = None) -> SpaceReport:
    """Measured table size against the k^2 log d shape.

    ``bound`` is the per-type endpoint estimate 4k(k log2 d + 1) plus the
    index fields; ``guard`` is the generous envelope the measurement must fit.
    """
    mu = mu or table.mu
    k = table.frontier if upto is None else min(upto, table.frontier)
    bits = table.table_bits(k)
    overhead = (k + 1) * (1 + 3 * max(1, k.bit_length()))
    bound = 4 * k * (k * math.log2(mu.d) + 1) + overhead
    return SpaceReport(k, bits, bound, shape_guard(mu, k))


def endpoint_denominators_ok(table: SegmentTable) -> bool:
    """Every endpoint of levels 1..k has a denominator dividing 2 d^k."""
    k = table.frontier
    top = 2 * table.mu.d ** k
    return all(top % x.denominator == 0 for i in range(1, k + 1) for x in (table.v[i], table.u[i]))

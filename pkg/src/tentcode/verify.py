"""Invariant suites shared by ``tentcode verify`` and the test-suite.

Each check returns a list of human-readable violations; empty means pass.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Optional

from .analysis import endpoint_denominators_ok, level_jump_audit
from .automaton import REJECT, SegmentTable, code_probability, count_codes, recognize
from .numeric import Mu
from .oracle import enumerate_sections, section_of, type_set
from .sampler import sample_code
from .tent import critical_orbit, decode_partial, encode

TableFactory = Callable[[Mu], SegmentTable]


class FaultyTable(SegmentTable):
    """Negative control: swaps level 2's successors once they are resolved."""

    _faulted = False

    def ensure_row(self, k: int) -> None:
        super().ensure_row(k)
        if not self._faulted and self.resolved > 2:
            self._faulted = True
            self.delta0[2], self.delta1[2] = self.delta1[2], self.delta0[2]
            self._p0[2] = None


def check_language(mu: Mu, max_n: int, make: TableFactory = SegmentTable) -> list[str]:
    bad = []
    table = make(mu)
    for n in range(1, max_n + 1):
        oracle = {s.code for s in enumerate_sections(mu, n, force=True)}
        accepted = {
            "".join(w) for w in product("01", repeat=n) if recognize(mu, "".join(w), table)
        }
        if oracle != accepted:
            bad.append(f"n={n}: {len(oracle ^ accepted)} codes differ")
        elif count_codes(mu, n, table) != len(oracle):
            bad.append(f"n={n}: count_codes={count_codes(mu, n, table)} vs {len(oracle)}")
    return bad


def check_distribution(mu: Mu, max_n: int, make: TableFactory = SegmentTable) -> list[str]:
    bad = []
    table = make(mu)
    for n in range(1, max_n + 1):
        secs = enumerate_sections(mu, n, force=True)
        total = Fraction(0)
        for s in secs:
            p = code_probability(mu, s.code, table)
            total += p
            if p != s.length:
                bad.append(f"n={n} code={s.code}: {p} != {s.length}")
                break
        if total != 1 or sum(s.length for s in secs) != 1:
            bad.append(f"n={n}: probabilities sum to {total}")
    return bad


def check_structure(mu: Mu, frontier: int, make: TableFactory = SegmentTable) -> list[str]:
    """Type-count, sum rule, minimum length, theta laws, endpoint provenance."""
    bad = []
    t = make(mu)
    t.ensure_frontier(frontier)
    for k in range(1, t.frontier):
        t.ensure_row(k)
    m = mu.value
    top = t.frontier
    if top > frontier:
        bad.append(f"frontier {top} > {frontier}")
    if len(t.types()) > 2 * top:
        bad.append("more than 2n segment types")
    orbit = critical_orbit(mu, top)
    where = {x: i for i, x in reversed(list(enumerate(orbit)))}
    for k in range(1, top + 1):
        d0, d1 = t.delta0[k], t.delta1[k]
        lk = t.length(k)
        known = k < t.resolved
        if known and t.length(d0) + t.length(d1) != m * lk:
            bad.append(f"sum rule fails at level {k}")
        if k >= 2 and lk < Fraction(1, 2 * mu.d ** k):
            bad.append(f"|I_{k}| below 1/(2 d^k)")
        for x in (t.v[k], t.u[k]):
            if k > 1 and where.get(x, top + 1) > k:
                bad.append(f"endpoint {x} of level {k} is not f^i(1/2) with i <= k")
        if k >= 2:
            th = t.theta[k]
            if t.c[k] == t.c[th]:
                bad.append(f"c[{k}] == c[theta={th}]")
            if known and d0 != REJECT and d1 != REJECT:
                if 2 * th > k:
                    bad.append(f"theta({k})={th} > {k}/2 at a branching level")
                if t.c[th + 1] != 0:
                    bad.append(f"c[theta({k})+1] != 0")
    for k in range(2, top + 1):
        branching = t.delta0[k - 1] != REJECT and t.delta1[k - 1] != REJECT
        want = 1 if branching else t.theta[k - 1] + 1
        if t.theta[k] != want:
            bad.append(f"theta[{k}]={t.theta[k]}, expected {want}")
    if not endpoint_denominators_ok(t):
        bad.append("endpoint denominator does not divide 2 d^k")
    if t.theta_misses:
        bad.append(f"theta shortcut missed at levels {t.theta_misses}")
    return bad


def check_types(mu: Mu, max_n: int, make: TableFactory = SegmentTable) -> list[str]:
    bad = []
    for n in range(1, max_n + 1):
        t = make(mu)
        t.ensure_frontier(n)
        if type_set(enumerate_sections(mu, n, force=True)) != t.types():
            bad.append(f"n={n}: oracle types differ from table types")
    return bad


def random_unit(rng: random.Random, max_den: int = 10 ** 6) -> Fraction:
    """A rational in [0, 1) with a random denominator."""
    den = rng.randint(1, max_den)
    return Fraction(rng.randrange(den), den)


def check_encoder(mu: Mu, max_n: int, seed: int, samples: int = 300) -> list[str]:
    bad = []
    rng = random.Random(seed)
    for _ in range(samples):
        x = random_unit(rng)
        n = rng.randint(1, max_n)
        code = encode(mu, x, n)
        if section_of(mu, x, n).code != code:
            bad.append(f"x={x} n={n}: encode and section_of disagree")
        if abs(x - decode_partial(mu, code)) > (1 / mu.value) ** n:
            bad.append(f"x={x} n={n}: reconstruction error too large")
    for s in enumerate_sections(mu, max_n, force=True):
        if encode(mu, s.lo, max_n) != s.code:
            bad.append(f"section {s.code}: encode(lo) differs")
    return bad


def check_jumps(mu: Mu, n: int, seed: int, traces: int = 10) -> list[str]:
    bad = []
    for s in range(seed, seed + traces):
        r = level_jump_audit(mu, n, s)
        if not r.ok:
            bad.append(f"seed={s}: {r.reason}")
    return bad


def check_sampler(mu: Mu, n: int, seed: int, samples: int = 200,
                  make: TableFactory = SegmentTable) -> list[str]:
    bad = []
    table = make(mu)
    for s in range(seed, seed + samples):
        code = sample_code(mu, n, s, table)
        if not recognize(mu, code, table):
            bad.append(f"seed={s}: sampled {code} is rejected")
            break
    if sample_code(mu, 64, seed) != sample_code(mu, 64, seed):
        bad.append("sampling is not deterministic")
    return bad


def run_suites(mu: Mu, max_n: int, seed: int, inject_fault: bool = False
               ) -> Iterator[tuple[str, bool, str]]:
    make: TableFactory = FaultyTable if inject_fault else SegmentTable
    suites = [
        ("language", lambda: check_language(mu, max_n, make)),
        ("distribution", lambda: check_distribution(mu, max_n, make)),
        ("structure", lambda: check_structure(mu, 20 * max_n, make)),
        ("types", lambda: check_types(mu, max_n, make)),
        ("encoder", lambda: check_encoder(mu, max_n, seed)),
        ("level_jumps", lambda: check_jumps(mu, 100 * max_n, seed)),
        ("sampler", lambda: check_sampler(mu, max_n, seed, make=make)),
    ]
    for name, fn in suites:
        bad = fn()
        yield name, not bad, (bad[0] if bad else "")

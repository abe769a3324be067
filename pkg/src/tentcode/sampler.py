"""Streaming generator of tent codes distributed exactly as D_n.

The chain walks the segment-type table, one bit per step, and asks the
table to grow only when it stands on a level whose transitions are not yet
known. The inner loop lives in the walk kernel; this module keeps the
kernel's row arrays in sync with the exact-rational table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from . import _backend
from .automaton import REJECT, InvariantFault, SegmentTable
from .numeric import Mu


@dataclass(frozen=True)
class RunStats:
    K: int
    table_bits: int
    steps: int
    grow_events: int


class ChainSampler:
    """Pull-based walker: each ``next_bit()`` computes exactly one bit.

    Several samplers may share one ``table`` as long as they run on one
    thread; by default each gets its own.
    """

    def __init__(self, mu: Mu, seed: int, table: Optional[SegmentTable] = None,
                 record_trace: bool = False, kernel=None):
        self.mu = mu
        self.seed = seed
        self.table = table if table is not None else SegmentTable(mu)
        kernel = kernel or _backend.kernel
        self.core = kernel.WalkCore(seed)
        self._upto = 1
        self._grows = 0
        self.trace: Optional[list[tuple[int, bool]]] = [] if record_trace else None

    def _sync(self) -> None:
        l = self.core.level
        table = self.table
        before = table.grow_events
        table.ensure_row(l)
        self._grows += table.grow_events - before
        for k in range(self.core.rows, l + 1):
            p = table.step_probability(k)
            self.core.push_row(table.delta0[k], table.delta1[k], table.c[k],
                               p.numerator, p.denominator)
        self._upto = max(self._upto, min(l + 1, table.frontier))

    def next_bit(self) -> int:
        core = self.core
        bit = core.step()
        if bit < 0:
            self._sync()
            bit = core.step()
            if bit < 0:
                raise InvariantFault("row still missing after growth")
        if self.trace is not None:
            lvl = core.level
            self.trace.append((lvl, bit == self.table.c[lvl]))
        return bit

    def run(self, nsteps: int, out: Optional[bytearray] = None) -> None:
        """Advance ``nsteps`` bits, writing ASCII digits into ``out`` if given."""
        if self.trace is not None:
            for i in range(nsteps):
                b = self.next_bit()
                if out is not None:
                    out[i] = 48 + b
            return
        done = 0
        core = self.core
        while done < nsteps:
            done += core.run(nsteps - done, out, done)
            if done < nsteps:
                self._sync()

    @property
    def level(self) -> int:
        return self.core.level

    @property
    def last_bit(self) -> int:
        return self.core.last_bit

    def stats(self) -> RunStats:
        return RunStats(
            K=self.core.max_level,
            table_bits=self.table.table_bits(self._upto),
            steps=self.core.steps,
            grow_events=self._grows,
        )


class CodeStream:
    """Iterable over the n bits of one sampled code; ``stats`` once done."""

    def __init__(self, mu: Mu, n: int, seed: int, table: Optional[SegmentTable] = None, kernel=None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.sampler = ChainSampler(mu, seed, table, kernel=kernel)

    def __iter__(self) -> Iterator[int]:
        s = self.sampler
        for _ in range(self.n - s.core.steps):
            yield s.next_bit()

    def chunks(self, size: int = 8192) -> Iterator[bytearray]:
        """ASCII chunks of at most ``size`` bits; memory stays O(size)."""
        s = self.sampler
        buf = bytearray(size)
        left = self.n - s.core.steps
        while left > 0:
            m = min(size, left)
            s.run(m, buf)
            left -= m
            yield buf[:m]

    @property
    def stats(self) -> RunStats:
        return self.sampler.stats()


def sample_stream(mu: Mu, n: int, seed: int, table: Optional[SegmentTable] = None) -> CodeStream:
    return CodeStream(mu, n, seed, table)


def sample_code(mu: Mu, n: int, seed: int, table: Optional[SegmentTable] = None) -> str:
    return "".join("1" if b else "0" for b in CodeStream(mu, n, seed, table))


def run_stats_only(mu: Mu, n: int, seed: int, table: Optional[SegmentTable] = None,
                   kernel=None) -> RunStats:
    s = ChainSampler(mu, seed, table, kernel=kernel)
    s.run(n)
    return s.stats()


def sample_trace(mu: Mu, n: int, seed: int, table: Optional[SegmentTable] = None) -> tuple[str, list[tuple[int, bool]]]:
    """Bits and the visited (level, straight) states Z_1..Z_n of one run."""
    s = ChainSampler(mu, seed, table, record_trace=True)
    bits = "".join("1" if s.next_bit() else "0" for _ in range(n))
    assert s.trace is not None
    return bits, s.trace


__all__ = [
    "REJECT",
    "ChainSampler",
    "CodeStream",
    "RunStats",
    "run_stats_only",
    "sample_code",
    "sample_stream",
    "sample_trace",
]

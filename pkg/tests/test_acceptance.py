"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from tentcode.analysis import k_distribution, level_jump_audit, shape_guard
from tentcode.automaton import SegmentTable, code_probability, count_codes, recognize
from tentcode.numeric import Mu
from tentcode.oracle import enumerate_sections
from tentcode.sampler import sample_code
from tentcode.tent import decode_partial, encode
from tentcode.verify import check_structure

MUS = [Mu(3, 2), Mu(4, 3), Mu(7, 4), Mu(9, 5)]


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, detail
    return emit


def test_1_language_equivalence(report):
    t0 = time.perf_counter()
    bad = []
    for mu in MUS:
        table = SegmentTable(mu)
        for n in range(1, 13):
            oracle = {s.code for s in enumerate_sections(mu, n)}
            accepted = {w for w in map("".join, product("01", repeat=n)) if recognize(mu, w, table)}
            if oracle != accepted or count_codes(mu, n, table) != len(oracle):
                bad.append((str(mu), n))
    dt = time.perf_counter() - t0
    report(1, "language equivalence", not bad and dt < 60, f"mismatches={bad} time={dt:.1f}s")


def test_2_distribution_exactness(report):
    t0 = time.perf_counter()
    bad = []
    for mu in MUS:
        table = SegmentTable(mu)
        for n in range(1, 11):
            secs = enumerate_sections(mu, n)
            probs = [code_probability(mu, s.code, table) for s in secs]
            if any(p != s.length for p, s in zip(probs, secs)):
                bad.append((str(mu), n, "value"))
            if sum(probs) != 1 or sum(s.length for s in secs) != 1:
                bad.append((str(mu), n, "sum"))
    dt = time.perf_counter() - t0
    report(2, "distribution exactness", not bad and dt < 60, f"mismatches={bad} time={dt:.1f}s")


def test_3_sampler_statistics(report):
    from scipy.stats import chisquare

    t0 = time.perf_counter()
    mu, n, samples = Mu(3, 2), 8, 10 ** 5
    dist = {s.code: s.length for s in enumerate_sections(mu, n)}
    table = SegmentTable(mu)
    counts = dict.fromkeys(dist, 0)
    for seed in range(samples):
        counts[sample_code(mu, n, seed, table)] += 1  # KeyError would mean a code outside L_n
    worst = 0.0
    for code, p in dist.items():
        if p >= Fraction(1, 100):
            pf = float(p)
            z = abs(counts[code] / samples - pf) / math.sqrt(pf * (1 - pf) / samples)
            worst = max(worst, z)
    codes = sorted(dist)
    pval = chisquare([counts[c] for c in codes], [samples * float(dist[c]) for c in codes]).pvalue
    dt = time.perf_counter() - t0
    ok = worst <= 4 and pval > 1e-4 and dt < 120
    report(3, "sampler statistics", ok,
           f"codes={len(dist)} max_sigma={worst:.2f} chi2_p={pval:.3g} time={dt:.1f}s")


def test_4_structure_bound(report):
    t0 = time.perf_counter()
    problems = {str(mu): check_structure(mu, 200) for mu in MUS}
    sizes = {}
    for mu in MUS:
        t = SegmentTable(mu)
        t.ensure_frontier(200)
        sizes[str(mu)] = (t.frontier, len(t.types()))
    dt = time.perf_counter() - t0
    ok = not any(problems.values()) and all(f <= 200 and ty <= 2 * f for f, ty in sizes.values())
    report(4, "structure bound", ok and dt < 10,
           f"(frontier, types)={sizes} problems={sum(map(len, problems.values()))} time={dt:.1f}s")


def test_5_level_jump_law(report):
    t0 = time.perf_counter()
    status = {}
    for mu in MUS:
        results = [level_jump_audit(mu, 1000, seed) for seed in range(1, 101)]
        status[str(mu)] = {s: sum(r.status == s for r in results) for s in ("pass", "skipped", "fail")}
    dt = time.perf_counter() - t0
    ok = all(v["fail"] == 0 for v in status.values()) and dt < 120
    report(5, "level-jump law", ok, f"{status} time={dt:.1f}s")


def test_6_space_growth(report):
    t0 = time.perf_counter()
    mu, trials = Mu(3, 2), 1000
    hists = {n: k_distribution(mu, n, trials, 0) for n in (10 ** 2, 10 ** 3, 10 ** 4)}
    tail_ok = all(h.tail_exceedances <= h.tail_allowance for h in hists.values())
    ratio = hists[10 ** 4].mean_k2 / hists[10 ** 2].mean_k2
    over = [r for h in hists.values() for r in h.records if r.table_bits > shape_guard(mu, r.K + 1)]
    dt = time.perf_counter() - t0
    detail = " ".join(
        f"n={n}:exceed={h.tail_exceedances}/allow={h.tail_allowance:g},EK2={float(h.mean_k2):.1f},"
        f"maxK={h.max_k},maxbits={h.max_table_bits}" for n, h in hists.items())
    ok = tail_ok and ratio <= 8 and not over and dt < 600
    report(6, "space growth", ok, f"{detail} ratio={float(ratio):.2f} guard_violations={len(over)} "
                                  f"time={dt:.1f}s")


COMMANDS = [
    ["gen", "--mu", "3/2", "-n", "4096", "--seed", "42"],
    ["gen", "--mu", "7/4", "-n", "5000", "--seed", "9", "--emit", "hex"],
    ["enumerate", "--mu", "9/5", "-n", "8", "--probs"],
    ["table", "--mu", "4/3", "-k", "30"],
    ["stats", "--mu", "3/2", "-n", "500", "--trials", "40", "--seed", "5", "--jobs", "2"],
    ["verify", "--mu", "3/2", "--max-n", "6"],
]


def test_7_determinism(report):
    differing = []
    for cmd in COMMANDS:
        outs = [subprocess.run([sys.executable, "-m", "tentcode", *cmd], capture_output=True).stdout
                for _ in range(2)]
        if outs[0] != outs[1] or not outs[0]:
            differing.append(cmd[0])
    report(7, "determinism", not differing, f"commands={len(COMMANDS)} differing={differing}")


def test_8_reconstruction(report):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    n, bad = 30, 0
    for i in range(1000):
        mu = MUS[i % 4]
        d = rng.randint(1, 10 ** 9)
        x = Fraction(rng.randrange(d), d)
        if abs(x - decode_partial(mu, encode(mu, x, n))) > (1 / mu.value) ** n:
            bad += 1
    dt = time.perf_counter() - t0
    report(8, "reconstruction", bad == 0 and dt < 10, f"samples=1000 n=30 violations={bad} time={dt:.2f}s")

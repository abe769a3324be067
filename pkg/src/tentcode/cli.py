"""Command-line interface: gen, enumerate, table, stats, verify.

Exit codes: 0 ok, 1 internal fault, 2 bad input, 3 enumeration cap exceeded.
Payload goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Callable, Optional

from .analysis import k_distribution, space_report
from .automaton import InvariantFault, SegmentTable, code_probability
from .numeric import DomainError, Mu, format_rational
from .oracle import DEFAULT_CAP, CapExceeded, enumerate_sections
from .sampler import CodeStream

EXIT_OK, EXIT_FAULT, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

VERIFY_MUS = ("3/2", "4/3", "7/4", "9/5")
U64_MAX = (1 << 64) - 1


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _add_mu(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--mu", required=required, help="slope as an exact fraction c/d with 1 < c/d < 2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tentcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="stream one n-bit tent code drawn from D_n")
    _add_mu(p)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--emit", choices=("bits", "hex"), default="bits")
    p.add_argument("--stats", action="store_true", help="print run statistics to stderr")

    p = sub.add_parser("enumerate", help="list every n-section with its exact length")
    _add_mu(p)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--probs", action="store_true", help="add the chain's code probability column")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    p.add_argument("--force", action="store_true", help="ignore the enumeration cap")

    p = sub.add_parser("table", help="materialize and dump the segment-type table")
    _add_mu(p)
    p.add_argument("-k", type=_positive, required=True, help="frontier level to reach")

    p = sub.add_parser("stats", help="K histogram and tail-bound verdict over many seeds")
    _add_mu(p)
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=_u64, default=0, help="first seed (default 0); trials use seed, seed+1, ...")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--csv", metavar="PATH", help="write per-trial records as CSV")

    p = sub.add_parser("verify", help="run the invariant suites")
    _add_mu(p, required=False)
    p.add_argument("--max-n", type=_positive, default=10)
    p.add_argument("--seed", type=_u64, default=1)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def cmd_gen(args, out, err) -> int:
    mu = Mu.parse(args.mu)
    stream = CodeStream(mu, args.n, args.seed)
    if args.emit == "bits":
        for chunk in stream.chunks():
            out.write(chunk.decode("ascii"))
    else:
        pending = ""
        for chunk in stream.chunks(8192):
            s = pending + chunk.decode("ascii")
            full = len(s) - len(s) % 8
            out.write(_hex(s[:full]))
            pending = s[full:]
        if pending:
            out.write(_hex(pending.ljust(8, "0")))
    out.write("\n")
    if args.stats:
        st = stream.stats
        err.write(f"K={st.K}\ntable_bits={st.table_bits}\nsteps={st.steps}\n"
                  f"grow_events={st.grow_events}\n")
    return EXIT_OK


def _hex(bits: str) -> str:
    return "".join(f"{int(bits[i:i + 8], 2):02x}" for i in range(0, len(bits), 8))


def cmd_enumerate(args, out, err) -> int:
    mu = Mu.parse(args.mu)
    sections = enumerate_sections(mu, args.n, cap=args.cap, force=args.force)
    table = SegmentTable(mu) if args.probs else None
    for s in sections:
        row = [s.code, format_rational(s.lo), format_rational(s.hi), format_rational(s.length)]
        if table is not None:
            row.append(format_rational(code_probability(mu, s.code, table)))
        out.write("\t".join(row) + "\n")
    if table is not None and any(code_probability(mu, s.code, table) != s.length for s in sections):
        err.write("chain probabilities disagree with section lengths\n")
        return EXIT_FAULT
    return EXIT_OK


def cmd_table(args, out, err) -> int:
    mu = Mu.parse(args.mu)
    table = SegmentTable(mu)
    table.ensure_frontier(args.k)
    out.write(table.dump())
    if table.stabilized_at is not None:
        err.write(f"stabilized_at={table.stabilized_at}\n")
    return EXIT_OK


def cmd_stats(args, out, err) -> int:
    mu = Mu.parse(args.mu)
    h = k_distribution(mu, args.n, args.trials, args.seed, jobs=args.jobs)
    for k, c in h.counts.items():
        out.write(f"K={k} count={c}\n")
    worst = max(h.records, key=lambda r: (r.table_bits, r.K))
    probe = SegmentTable(mu)
    probe.ensure_frontier(worst.K + 1)
    rep = space_report(probe, mu, upto=worst.K + 1)
    verdict = "pass" if h.tail_exceedances <= h.tail_allowance else "fail"
    out.write(
        f"mu={mu} n={h.n} trials={h.trials} seed0={h.seed0} l_star={h.l_star} "
        f"threshold={2 * h.l_star} exceedances={h.tail_exceedances} "
        f"allowance={h.tail_allowance:g} tail={verdict} max_K={h.max_k} "
        f"mean_K2={float(h.mean_k2):.6g} max_table_bits={h.max_table_bits} "
        f"space_guard={rep.guard:.1f} space={'pass' if h.max_table_bits <= rep.guard else 'fail'}\n"
    )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["trial", "seed", "K", "table_bits", "grow_events"])
            for r in h.records:
                w.writerow([r.trial, r.seed, r.K, r.table_bits, r.grow_events])
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    from .verify import run_suites

    mus = [Mu.parse(args.mu)] if args.mu else [Mu.parse(m) for m in VERIFY_MUS]
    failed = []
    for mu in mus:
        for name, ok, detail in run_suites(mu, args.max_n, args.seed, inject_fault=args.inject_fault):
            out.write(f"mu={mu} suite={name} status={'pass' if ok else 'fail'}"
                      + (f" detail={detail}" if detail else "") + "\n")
            if not ok:
                failed.append(f"{mu}:{name}")
    if failed:
        err.write("failing suites: " + ", ".join(failed) + "\n")
        return EXIT_FAULT
    return EXIT_OK


COMMANDS: dict[str, Callable] = {
    "gen": cmd_gen,
    "enumerate": cmd_enumerate,
    "table": cmd_table,
    "stats": cmd_stats,
    "verify": cmd_verify,
}


def main(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out, err)
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CapExceeded as exc:
        err.write(f"error: {exc} (use --force or raise --cap)\n")
        return EXIT_CAP
    except (InvariantFault, RuntimeError, AssertionError) as exc:
        err.write(f"internal fault: {exc}\n")
        return EXIT_FAULT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

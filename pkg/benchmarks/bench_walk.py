"""Compare the compiled walk kernel with the pure-Python fallback.

    python benchmarks/bench_walk.py --mu 3/2 -n 1000000 --repeat 3
"""

import argparse
import time

from tentcode import _walk_py
from tentcode.automaton import SegmentTable
from tentcode.numeric import Mu
from tentcode.sampler import ChainSampler

try:
    from tentcode import _walk
except ImportError:  # extension not built
    _walk = None


def time_walk(kernel, mu, n, seed, table):
    s = ChainSampler(mu, seed, table, kernel=kernel)
    buf = bytearray(n)
    t0 = time.perf_counter()
    s.run(n, buf)
    return time.perf_counter() - t0, bytes(buf)


def time_draws(kernel, count, seed):
    kind, p64 = kernel.prob_prefix(5, 13)
    src = kernel.BitSource(seed)
    draw = kernel.draw
    t0 = time.perf_counter()
    for _ in range(count):
        draw(src, kind, p64, 5, 13)
    return time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mu", default="3/2")
    ap.add_argument("-n", type=int, default=10 ** 6, help="bits per walk")
    ap.add_argument("--draws", type=int, default=10 ** 6, help="Bernoulli draws per timing")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    mu = Mu.parse(args.mu)
    # grow the table once so both kernels time the walk, not exact-rational growth
    table = SegmentTable(mu)
    table.ensure_frontier(120)
    kernels = [("python", _walk_py)] + ([("cython", _walk)] if _walk else [])
    walks, draws, outputs = {}, {}, {}
    for name, k in kernels:
        best = min(time_walk(k, mu, args.n, args.seed, table) for _ in range(args.repeat))
        walks[name], outputs[name] = best
        draws[name] = min(time_draws(k, args.draws, args.seed) for _ in range(args.repeat))

    print(f"mu={mu} n={args.n} draws={args.draws} repeat={args.repeat}")
    print(f"{'kernel':8} {'walk s':>9} {'Mbit/s':>8} {'draw s':>9} {'Mdraw/s':>8}")
    for name, _ in kernels:
        w, d = walks[name], draws[name]
        print(f"{name:8} {w:9.3f} {args.n / w / 1e6:8.2f} {d:9.3f} {args.draws / d / 1e6:8.2f}")
    if _walk:
        print(f"speedup walk={walks['python'] / walks['cython']:.1f}x "
              f"draw={draws['python'] / draws['cython']:.1f}x "
              f"identical_output={outputs['python'] == outputs['cython']}")
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()

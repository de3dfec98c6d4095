"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are called explicitly, so the SUBSETSUMS_DISABLE_NUMBA flag
does not matter here.  The first numba call per signature is a warm-up and
is excluded from the timings.
"""
import argparse
import time

from subsetsums import _kernels
from subsetsums.counting import count_brute_force, count_dp
from subsetsums.group import make_group

DP_CASES = [([64], 32), ([8, 8], 32), ([128], 64), ([200], 100), ([2] * 8, 128)]
ENUM_CASES = [([20], 10), ([4, 5], 10), ([22], 11)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numba", "numpy"] if _kernels.HAVE_NUMBA else ["numpy"]
    for b in backends:
        count_dp(make_group([6]), 3, backend=b)
        count_brute_force(make_group([6]), 3, backend=b)

    print(f"{'kernel':8} {'group':>10} {'h':>4} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for orders, h in DP_CASES:
        G = make_group(orders)
        ts = [best_of(lambda: count_dp(G, h, backend=b), args.repeat) for b in backends]
        _row("dp", G, h, ts)
    for orders, h in ENUM_CASES:
        G = make_group(orders)
        ts = [best_of(lambda: count_brute_force(G, h, backend=b), max(1, args.repeat // 2))
              for b in backends]
        _row("enum", G, h, ts)


def _row(kind, G, h, ts):
    speed = f"{ts[1] / ts[0]:8.1f}x" if len(ts) == 2 else ""
    print(f"{kind:8} {str(G):>10} {h:>4} " + " ".join(f"{t * 1e3:8.2f}ms" for t in ts) + "  " + speed)


if __name__ == "__main__":
    main()

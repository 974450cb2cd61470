"""Compare the compiled and pure-Python exact kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 4 8 12 16]

Times Bareiss determinant and rank on random small-entry integer matrices,
then the randomized span test end to end on Kronecker data whose matrices
share a zero row (every trial runs, answer NO), with the native backend
allowed and then disabled.
"""
import argparse
import random
import statistics
import time
from contextlib import contextmanager

from quiver_edmonds import build_block_matrices, kernels, randomized_span_test
from quiver_edmonds.fixtures import kronecker_datum, random_matrix


@contextmanager
def pure_python():
    saved = kernels.fits_native
    kernels.fits_native = lambda rows: False
    try:
        yield
    finally:
        kernels.fits_native = saved


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times), statistics.median(times)


def matrices(n, count, rng):
    return [[[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)] for _ in range(count)]


def row(label, native, python):
    speedup = python[0] / native[0] if native[0] else float("inf")
    print(f"{label:<34} {native[0] * 1e3:>10.3f} {python[0] * 1e3:>10.3f} {speedup:>8.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12, 16])
    ap.add_argument("--count", type=int, default=200, help="matrices per size")
    args = ap.parse_args()
    rng = random.Random(0)

    print(f"native backend available: {kernels.BACKEND == 'native'}")
    print(f"{'benchmark (best of %d, ms)' % args.repeat:<34} {'native':>10} {'python':>10} {'speedup':>9}")
    for n in args.sizes:
        mats = matrices(n, args.count, rng)
        if not all(kernels.fits_native(m) for m in mats):
            print(f"det n={n}: entries too large for int64 path, skipped")
            continue
        for name, fn in (("det", kernels.det_int), ("rank", kernels.rank_int)):
            nat = best_of(lambda: [fn(m, "native") for m in mats], args.repeat) \
                if kernels.BACKEND == "native" else (float("nan"),)
            py = best_of(lambda: [fn(m, "python") for m in mats], args.repeat)
            assert kernels.BACKEND != "native" or \
                [fn(m, "native") for m in mats] == [fn(m, "python") for m in mats]
            row(f"{name} n={n} x{args.count}", nat, py)

    for n, mult in ((3, 2), (4, 2), (6, 1), (4, 3)):
        mats = []
        for _ in range(3):
            m = random_matrix(rng, n, n).to_rows()
            m[-1] = [0] * n
            mats.append(m)
        F = build_block_matrices(kronecker_datum(mats).scaled(mult))
        run = lambda: randomized_span_test(F, trials=40, seed=1)  # noqa: E731
        nat = best_of(run, args.repeat)
        expected = run().to_dict()
        with pure_python():
            py = best_of(run, args.repeat)
            assert run().to_dict() == expected
        row(f"span test N={F.N} |F|={len(F)}", nat, py)


if __name__ == "__main__":
    main()

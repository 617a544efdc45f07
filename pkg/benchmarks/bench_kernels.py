"""Compare the numba and numpy row-reduction kernels over F_p.

    python benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 5]

Also times a socle computation end to end with each backend.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from maxmult import _kernels

P = 32003


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_rref(sizes, repeat):
    rng = np.random.default_rng(0)
    print(f"{'size':>6} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in sizes:
        a = rng.integers(0, P, size=(n, n + n // 2), dtype=np.int64)
        ref = _kernels.rref(a, P, "numpy")
        got = _kernels.rref(a, P, "numba")  # also warms up the jit
        assert np.array_equal(ref[0], got[0]) and np.array_equal(ref[1], got[1])
        t_np = best_of(lambda: _kernels.rref(a, P, "numpy"), repeat)
        t_nb = best_of(lambda: _kernels.rref(a, P, "numba"), repeat)
        print(f"{n:>6} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>8.1f}x")


SOCLE_SCRIPT = """
import time
from maxmult.corpus import catalecticant
from maxmult.reduction import artinian_reduction, socle_profile
I = catalecticant(2, 2, 5).ideal
A = artinian_reduction(I)
socle_profile(A)
t = time.perf_counter()
for _ in range(3):
    socle_profile(A)
print((time.perf_counter() - t) / 3)
"""


def bench_socle():
    # each backend in a fresh interpreter, since the flag is read at import
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, MAXMULT_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", SOCLE_SCRIPT], env=env,
                             capture_output=True, text=True, check=True)
        print(f"socle of catalecticant-2-2-5 reduction ({label}): {float(out.stdout) * 1e3:.1f} ms")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba is None:
        sys.exit("numba is not installed; nothing to compare")
    bench_rref(args.sizes, args.repeat)
    bench_socle()


if __name__ == "__main__":
    main()

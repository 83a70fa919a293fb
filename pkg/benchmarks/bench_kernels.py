"""Compare the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the best wall time of each implementation and checks that the answers agree.
"""
import argparse
import time

import numpy as np

from bzigzag import _kernels
from bzigzag.zigzag import build_algebra


def best_of(fn, repeat: int) -> tuple[float, object]:
    times, result = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def row(label: str, slow, fast, repeat: int):
    t_np, r_np = best_of(slow, repeat)
    if not _kernels.USING_NUMBA:
        print(f"{label:32s} numpy {t_np * 1e3:9.2f} ms   numba unavailable")
        return
    fast()  # compile outside the timing
    t_nb, r_nb = best_of(fast, repeat)
    agree = "agree" if r_np == r_nb else f"DISAGREE {r_np} vs {r_nb}"
    print(f"{label:32s} numpy {t_np * 1e3:9.2f} ms   numba {t_nb * 1e3:9.2f} ms   "
          f"x{t_np / max(t_nb, 1e-9):7.1f}   {agree}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    for n in (3, 4, 6, 8):
        alg = build_algebra(n)
        row(f"associativity n={n} (dim {alg.dim})",
            lambda: _kernels._assoc_defects_numpy(alg.table, alg.signs),
            lambda: _kernels._assoc_defects_numba(alg.table, alg.signs), args.repeat)
    rng = np.random.default_rng(0)
    for size in (40, 120, 250):
        m = rng.integers(-9, 10, size=(size, size + 7))
        m[size // 2] = m[0] - 3 * m[1]
        row(f"rank mod p {size}x{size + 7}",
            lambda: _kernels._rank_mod_p_numpy(m, _kernels.PRIME),
            lambda: _kernels._rank_mod_p_numba(m, _kernels.PRIME), args.repeat)


if __name__ == "__main__":
    main()

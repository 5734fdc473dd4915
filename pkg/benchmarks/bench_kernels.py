"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from sqtri import _kernels_py

try:
    from sqtri import _kernels as native
except ImportError:
    native = None

CASES = [
    ("scan T_1..T_65534", "scan_triangular_squares", (1, 65534)),
    ("scan T_1..T_10^7", "scan_triangular_squares", (1, 10**7)),
    ("merge triangular/square <= 10^14", "merge_polygonal", (3, 4, 10**14)),
    ("merge triangular/pentagonal <= 10^12", "merge_polygonal", (3, 5, 10**12)),
]


def best_of(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if native is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'case':40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, call in CASES:
        py_fn = getattr(_kernels_py, name)
        t_py = best_of(py_fn, call, args.repeat)
        if native is None:
            print(f"{label:40} {t_py:10.4f}")
            continue
        nat_fn = getattr(native, name)
        assert nat_fn(*call) == py_fn(*call), label
        t_nat = best_of(nat_fn, call, args.repeat)
        print(f"{label:40} {t_py:10.4f} {t_nat:10.4f} {t_py / t_nat:7.1f}x")


if __name__ == "__main__":
    main()

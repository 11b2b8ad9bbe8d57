"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the addition closure on random seeds (rank 8 systems) and the
closed-subset scan used by the small-rank parabolicity check.
"""
import argparse
import random
import timeit

from rescodim import kernels
from rescodim.roots import root_system


def closure_case(label, seeds=200):
    rs = root_system(label)
    rng = random.Random(label)
    picks = [[c for c in range(rs.nclasses) if rng.random() < 0.05] for _ in range(seeds)]

    def run(backend):
        for p in picks:
            kernels.close_classes(rs, p, backend=backend)
    return f"closure x{seeds} {label}", run


def scan_case(label):
    rs = root_system(label)

    def run(backend):
        kernels.scan_closed(rs, 0, backend=backend)
    return f"scan {label} ({rs.nclasses} classes)", run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    cases = [closure_case(x) for x in ("E8", "B8", "BC8")]
    cases += [scan_case(x) for x in ("A3", "B3", "BC3")]
    names = sorted(backends)
    print(f"{'case':34}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases:
        fn(backends["python"])  # warm the per-system tables
        times = {n: min(timeit.repeat(lambda b=backends[n]: fn(b), number=1, repeat=args.repeat)) for n in names}
        row = f"{label:34}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()

"""Compare the numba and numpy census kernels on real candidate streams.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from leibniz_rings import census as C
from leibniz_rings import fg_abelian as ab
from leibniz_rings import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_mask(factors, repeat):
    g = ab.make_group(factors)
    cands = C._entry_candidates(g)
    total = C.candidate_count(g)
    stop = min(total, 1 << 17)
    T = C._decode(cands, 0, stop, g.ngens)
    m = np.array(factors, dtype=np.int64)
    rows = []
    ref = None
    for backend in kernels.BACKENDS:
        kernels.left_leibniz_mask(T[:4], m, backend=backend)  # compile / warm up
        t, mask = best_of(lambda: kernels.left_leibniz_mask(T, m, backend=backend), repeat)
        if ref is None:
            ref = mask
        assert np.array_equal(mask, ref), "backends disagree"
        rows.append((f"left_leibniz_mask {factors}", backend, stop, t))
    return rows


def bench_transport(factors, repeat):
    g = ab.make_group(factors)
    tables = C.valid_tables(g)
    autos, inverses = C._aut_arrays(g)
    m = np.array(factors, dtype=np.int64)
    rows = []
    for backend in kernels.BACKENDS:
        kernels.transport_tables(tables[0], autos, inverses, m, backend=backend)
        t, _ = best_of(
            lambda: [kernels.transport_tables(T, autos, inverses, m, backend=backend) for T in tables], repeat
        )
        rows.append((f"transport {factors} x{len(autos)} autos", backend, len(tables), t))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = []
    for f in ([5, 5], [9, 3], [81]):
        rows += bench_mask(f, args.repeat)
    for f in ([5, 5], [9, 3]):
        rows += bench_transport(f, args.repeat)
    print(f"{'kernel':44} {'backend':8} {'tables':>8} {'seconds':>9} {'per table':>11}")
    for name, backend, n, t in rows:
        print(f"{name:44} {backend:8} {n:>8} {t:>9.4f} {t / n * 1e6:>9.2f}us")


if __name__ == "__main__":
    main()

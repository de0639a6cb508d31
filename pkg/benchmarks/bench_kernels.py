"""Compare the compiled and numpy kernel backends on stage-4 workloads (65536 states).

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Each workload is checked for identical output across backends before timing.
"""
import argparse
import json
import timeit

import numpy as np

from plexus import kernels

DIM = 65536
N_GEN = 16


def workloads(rng):
    states = np.arange(DIM, dtype=np.int64)
    kinds = rng.integers(0, 2, size=6).astype(np.int8)
    ks = rng.integers(0, N_GEN, size=6).astype(np.int64)

    def frame_product(mod):
        rows, signs = mod.frame_gamma(states, 0, -1)
        for k in range(1, N_GEN):
            r2, s2 = mod.frame_gamma(states, k, -1)
            rows, signs = mod.compose(rows, signs, r2, s2)
        return rows, signs

    return {
        "sign_above(k=7)": lambda mod: mod.sign_above(states, 7),
        "apply_word(len 6)": lambda mod: mod.apply_word(states, kinds, ks),
        "frame_gamma(k=11)": lambda mod: mod.frame_gamma(states, 11, -1),
        "pauli beta (16 composes)": frame_product,
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    backends = kernels.backends()
    rng = np.random.default_rng(0)
    results = []
    for name, fn in workloads(rng).items():
        outs = {b: fn(mod) for b, mod in backends.items()}
        ref = outs["python"]
        agree = all(_same(ref, o) for o in outs.values())
        row = {"workload": name, "agree": agree}
        for b, mod in backends.items():
            t = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
            row[f"{b}_ms"] = round(1e3 * t, 3)
        if "cython" in backends:
            row["speedup"] = round(row["python_ms"] / max(row["cython_ms"], 1e-6), 2)
        results.append(row)
    if args.json:
        print(json.dumps({"active": kernels.BACKEND, "results": results}, indent=1))
    else:
        print(f"active backend: {kernels.BACKEND}; available: {', '.join(backends)}")
        cols = list(results[0])
        print("  ".join(f"{c:>24}" if i == 0 else f"{c:>10}" for i, c in enumerate(cols)))
        for r in results:
            print("  ".join(f"{str(r[c]):>24}" if i == 0 else f"{str(r[c]):>10}" for i, c in enumerate(cols)))
    return 0 if all(r["agree"] for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())

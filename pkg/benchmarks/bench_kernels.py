"""Compare the compiled and pure-Python ball-counting kernels.

    python3 benchmarks/bench_kernels.py [--n 20] [--reps 2000] [--trials 20]

Prints per-call timings for each kernel and the wall time of planted
decider runs under each backend.
"""

import argparse
import random
import time

from hamwit import _pykernels, kernels
from hamwit.ball import Universe
from hamwit.core import ApproxParams, BitString
from hamwit.decider import DeciderConfig, PlantedOracle, check_universe
from hamwit.testkit import derive_seed
from hamwit.verifier import SetVerifier

try:
    from hamwit import _ckernels
except ImportError:
    _ckernels = None


def kernel_cases(n, reps, seed):
    rng = random.Random(seed)
    cases = []
    for _ in range(reps):
        a = rng.getrandbits(n)
        d = rng.randint(n // 3, 2 * n // 3)
        u = rng.randint((1 << (n - 1)) + 1, 1 << n)
        total = _pykernels.count_below(n, a, d, u)
        cases.append((a, d, u, rng.randrange(u), rng.randint(1, max(total, 1)), total))
    return cases


def time_kernels(mod, n, cases):
    out = {}
    start = time.perf_counter()
    for a, d, u, z, i, total in cases:
        mod.count_below(n, a, d, u)
    out["count_below"] = (time.perf_counter() - start) / len(cases)
    start = time.perf_counter()
    for a, d, u, z, i, total in cases:
        mod.rank_upto(n, a, d, z)
    out["rank_upto"] = (time.perf_counter() - start) / len(cases)
    start = time.perf_counter()
    for a, d, u, z, i, total in cases:
        if total:
            mod.unrank(n, a, d, u, i)
    out["unrank"] = (time.perf_counter() - start) / len(cases)
    return out


def time_decider(trials, n, seed):
    cfg = DeciderConfig(ApproxParams(0.25))
    start = time.perf_counter()
    for t in range(trials):
        s = derive_seed(seed, t)
        w = BitString(random.Random(s).getrandbits(n), n)
        ok, _ = check_universe(n, Universe.full(n), SetVerifier(n, [w]), PlantedOracle(w, "exact_max", s), cfg)
        assert ok
    return (time.perf_counter() - start) / trials


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20, help="string length for the kernel calls")
    parser.add_argument("--reps", type=int, default=2000)
    parser.add_argument("--trials", type=int, default=20, help="decider runs per backend")
    parser.add_argument("--decider-n", type=int, default=14)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is available")
    cases = kernel_cases(args.n, args.reps, args.seed)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    results = {name: time_kernels(mod, args.n, cases) for name, mod in backends}

    print(f"kernel calls, n = {args.n}, {args.reps} cases (microseconds per call)")
    print(f"{'kernel':<12}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _ckernels else ""))
    for k in ("count_below", "rank_upto", "unrank"):
        row = f"{k:<12}" + "".join(f"{results[name][k] * 1e6:>12.2f}" for name, _ in backends)
        if _ckernels:
            row += f"{results['python'][k] / results['cython'][k]:>11.1f}x"
        print(row)

    print(f"\nplanted decider runs, n = {args.decider_n}, exact_max oracle (seconds per run)")
    saved = kernels._LIMIT
    timings = {}
    try:
        kernels._LIMIT = -1
        timings["python"] = time_decider(args.trials, args.decider_n, args.seed)
        if _ckernels:
            kernels._LIMIT = _ckernels.MAX_BITS
            timings["cython"] = time_decider(args.trials, args.decider_n, args.seed)
    finally:
        kernels._LIMIT = saved
    for name, t in timings.items():
        print(f"{name:<12}{t:>12.4f}")
    if len(timings) == 2:
        print(f"{'speedup':<12}{timings['python'] / timings['cython']:>11.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs once per backend; the table lists the best of
``--repeat`` wall-clock timings and the speed-up of the compiled kernels.
"""

import argparse
import time

from sigmasl2 import _kernels
from sigmasl2.algebras import uq_system
from sigmasl2.base import BaseRing
from sigmasl2.bracket import check_twisted_jacobi
from sigmasl2.quadratic import check_confluence
from sigmasl2.scalar import ParamField
from sigmasl2.sigma import TwistData, check_well_defined


def scalar_mix():
    F = ParamField(["q", "p0", "p1"])
    q, p0, p1 = F.gens()
    acc = F.zero()
    for k in range(1, 40):
        acc = acc + (q**k - 1) / (q - 1) * p0 + p1 / (q + k)
    return acc


def jacobi_case1():
    F = ParamField(["q0", "q1", "p0"])
    R = BaseRing(F)
    tw = TwistData(R, R.parse("q0 + q1*t"), R.parse("p0"))
    return check_twisted_jacobi(tw, R.parse("q1"), bound=3)


def well_defined_n6():
    F = ParamField(["q1", "q2", "p0", "p1", "p2"])
    R = BaseRing(F, 6)
    tw = TwistData(R, R.parse("q1*t + q2*t^2"), R.parse("p0 + p1*t + p2*t^2"))
    return check_well_defined(tw)


def uq_confluence():
    sys_ = uq_system()
    return check_confluence(sys_)


WORKLOADS = [
    ("scalar arithmetic", scalar_mix),
    ("Jacobi, K[t] case 1", jacobi_case1),
    ("well-defined, N=6", well_defined_n6),
    ("U_q confluence", uq_confluence),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = _kernels.available()
    print(f"backends: {', '.join(backends)}")
    header = f"{'workload':24s}" + "".join(f"{b:>12s}" for b in backends)
    if "cython" in backends:
        header += f"{'speed-up':>10s}"
    print(header)
    for label, fn in WORKLOADS:
        times = {}
        for b in backends:
            with _kernels.use(b):
                times[b] = best_of(fn, args.repeat)
        row = f"{label:24s}" + "".join(f"{times[b]:12.4f}" for b in backends)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:9.2f}x"
        print(row)


if __name__ == "__main__":
    main()

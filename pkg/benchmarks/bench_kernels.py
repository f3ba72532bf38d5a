"""Time the numba kernels against their numpy twins.

Two views: raw ``survivors`` over a batch of candidate tables, and whole
enumerations with the backend switched through ``SUPERJORDAN_DISABLE_NUMBA``.
Both backends must agree; the script exits non-zero if they do not.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from superjordan import TrivialExtension, enumerate_jordan_super_biderivations, enumerate_jordan_superderivations, grade, kernels, zn_bimodule, zn_ring
from superjordan.abelian import HomSpace
from superjordan.axioms import superderivation_blocks
from superjordan.finring import upper_triangular_tn
from superjordan.maps import graded_hom_mask


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def raw_survivors(G, degree: int, limit: int):
    space = HomSpace(G.ring.carrier, G.ring.carrier, graded_hom_mask(G, degree))
    Ds = space.tables(0, min(space.count, limit))
    blocks = superderivation_blocks(G, degree, jordan=True)

    def run(fn):
        def go():
            alive = np.ones(len(Ds), dtype=np.bool_)
            for b in blocks:
                fn(np.ascontiguousarray(Ds), alive, b.xs, b.ys, b.P, b.Q1, b.Q2, b.add, b.neg, b.neg1, b.neg2)
            return alive

        return go

    return len(Ds), run(kernels._nb_survivors), run(kernels._np_survivors)


def with_backend(numba_on: bool, fn):
    def go():
        old = os.environ.get(kernels.ENV_FLAG)
        if numba_on:
            os.environ.pop(kernels.ENV_FLAG, None)
        else:
            os.environ[kernels.ENV_FLAG] = "1"
        try:
            return fn()
        finally:
            if old is None:
                os.environ.pop(kernels.ENV_FLAG, None)
            else:
                os.environ[kernels.ENV_FLAG] = old

    return go


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--limit", type=int, default=65536, help="candidate tables in the raw kernel benchmark")
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1

    R2, R3 = zn_ring(2), zn_ring(3)
    T3 = grade(upper_triangular_tn(R2, 3).ring)
    T2Z3 = grade(upper_triangular_tn(R3, 2).ring)
    TE3 = grade(TrivialExtension(R3, zn_bimodule(3, R3, R3)).ring)
    agree = True
    print(f"{'workload':52s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")

    for label, G, degree in (("survivors T3(Z2) degree 1", T3, 1), ("survivors T2(Z3) degree 0", T2Z3, 0)):
        n, nb, npy = raw_survivors(G, degree, args.limit)
        nb()  # compile outside the timing
        t_nb, a = best_of(nb, args.repeat)
        t_np, b = best_of(npy, args.repeat)
        agree &= bool(np.array_equal(a, b))
        print(f"{label + f' ({n} maps)':52s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}")

    workloads = (
        ("enumerate T3(Z2) degree 1", lambda: enumerate_jordan_superderivations(T3, 1).indices),
        ("enumerate T2(Z3) both degrees", lambda: [enumerate_jordan_superderivations(T2Z3, d).indices for d in (0, 1)]),
        ("enumerate super-biderivations T(Z3,Z3)", lambda: enumerate_jordan_super_biderivations(TE3).indices),
    )
    for label, fn in workloads:
        with_backend(True, fn)()
        t_nb, a = best_of(with_backend(True, fn), args.repeat)
        t_np, b = best_of(with_backend(False, fn), args.repeat)
        agree &= a == b
        print(f"{label:52s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}")

    print("backends agree" if agree else "BACKENDS DISAGREE")
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Benchmark the exhaustive strong-cleanness scan: numba kernel vs pure numpy.

The workload mirrors the theorem-equivalence audit: every monic quadratic
over each ring gets its companion matrix scanned over all |R|^4 candidate
idempotent complements.  Run with ``python benchmarks/bench_bruteforce.py``;
numba must be importable for the jit column (the script measures both paths
explicitly, independent of the CLEANMAT_PURE_NUMPY switch).
"""

from __future__ import annotations

import time

from cleanmat import _kernels
from cleanmat.brute import encode_matrix, encode_ring
from cleanmat.decide import monic_polys
from cleanmat.matrices import companion
from cleanmat.rings import build_ring

RINGS = [4, 6, 8, 9, 12]


def workload(ring_n):
    R = build_ring({"type": "zmod", "n": ring_n})
    tab = encode_ring(R)
    perms, signs = _kernels.permutation_table(2)
    jobs = []
    for h in monic_polys(R, 2):
        jobs.append(encode_matrix(tab, companion(h)))
    return tab, perms, signs, jobs, R.size**4


def run(scan, tab, perms, signs, jobs, total):
    hits = 0
    t0 = time.perf_counter()
    for a in jobs:
        if (
            scan(
                tab.add, tab.mul, tab.neg, tab.unit, a, 2, perms, signs,
                tab.one, tab.zero, 0, total,
            )
            >= 0
        ):
            hits += 1
    return time.perf_counter() - t0, hits


def main():
    if not _kernels.HAVE_NUMBA:
        print("numba is not active in this process; only the numpy path runs")
    header = f"{'ring':>6} {'polys':>6} {'candidates':>11} {'numpy (s)':>10}"
    if _kernels.HAVE_NUMBA:
        header += f" {'numba (s)':>10} {'speedup':>8}"
    print(header)
    for n in RINGS:
        tab, perms, signs, jobs, total = workload(n)
        if _kernels.HAVE_NUMBA:
            # warm the jit cache outside the timed region
            run(_kernels._scan_strongly_clean_jit, tab, perms, signs, jobs[:1], total)
        t_np, hits_np = run(
            _kernels._scan_strongly_clean_numpy, tab, perms, signs, jobs, total
        )
        row = f"{'Z/' + str(n):>6} {len(jobs):>6} {len(jobs) * total:>11} {t_np:>10.3f}"
        if _kernels.HAVE_NUMBA:
            t_jit, hits_jit = run(
                _kernels._scan_strongly_clean_jit, tab, perms, signs, jobs, total
            )
            assert hits_np == hits_jit, "kernel paths disagree"
            row += f" {t_jit:>10.3f} {t_np / t_jit:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()

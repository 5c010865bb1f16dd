"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the summary lines.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from doflab.alignment import (achieved_dof, build_design, extension_length, verify_alignment,
                              verify_decodability)
from doflab.bounds import build_outer_region, fd_lower, fd_upper, half_duplex, ic_dof, max_sum_dof
from doflab.converse import corrupt_genie, genie_replay, simulate_four_node
from doflab.network import RandomLinearEncoder, extend_channel, sample_instance
from doflab.ratesim import RateQuery, dof_slope, feedback_demo
from doflab.transforms import dual_simulate

REL_TOL = 0.05
GRID = RateQuery.from_range(40, 70, 10, trials=10, seed=1)
ALIGN_CASES = [(3, 1), (3, 2), (3, 3), (4, 1)]
SLOPE_CASES = [(3, 1, 0.6), (3, 3, 1.08)]


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number} [{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return emit


def check_outer_bounds():
    t0 = time.perf_counter()
    bad = [(s, d) for s in range(1, 7) for d in range(1, 7)
           if max_sum_dof(build_outer_region(s, d)) != Fraction(s * d, s + d - 1)]
    elapsed = time.perf_counter() - t0
    return not bad and elapsed < 1.0, f"36 regions, mismatches={bad}, {elapsed:.3f}s"


def check_sandwich():
    t0 = time.perf_counter()
    ok = achieved_dof(3, 50) == Fraction(7500, 5101) and achieved_dof(3, 50) >= Fraction(145, 100)
    for K in (3, 4, 5):
        seq = [achieved_dof(K, n) for n in range(1, 21)]
        ok &= all(a < b for a, b in zip(seq, seq[1:]))
        ok &= all(v <= fd_lower(K) <= fd_upper(K) for v in seq)
    elapsed = time.perf_counter() - t0
    return ok and elapsed < 1.0, f"achieved_dof(3,50)={achieved_dof(3, 50)}, {elapsed:.3f}s"


def alignment_sweep(reciprocal=True):
    worst, failures, symmetric = 0.0, [], True
    for K, n in ALIGN_CASES:
        for seed in range(20):
            inst = sample_instance("full_duplex", K=K, seed=seed, reciprocal=reciprocal)
            ch = extend_channel(inst, extension_length(K, n))
            symmetric &= bool(np.array_equal(ch.diagonals, ch.diagonals.transpose(1, 0, 2)))
            design = build_design(ch, K, n, seed)
            al, dec = verify_alignment(design, ch), verify_decodability(design, ch)
            worst = max(worst, al.max_residual)
            if not (al.passed and dec.passed):
                failures.append((K, n, seed))
    return worst, failures, symmetric


def check_alignment():
    t0 = time.perf_counter()
    worst, failures, _ = alignment_sweep()
    elapsed = time.perf_counter() - t0
    ok = not failures and worst <= 1e-10 and elapsed < 30
    return ok, f"80 designs, max residual={worst:.2e}, failures={failures}, {elapsed:.2f}s"


def slope_sweep(reciprocal=True):
    out = []
    for K, n, target in SLOPE_CASES:
        rep = dof_slope(K, n, GRID, reciprocal=reciprocal)
        out.append((K, n, target, rep.slope, abs(rep.slope - target) <= REL_TOL * target))
    return out


def check_slopes():
    t0 = time.perf_counter()
    rows = slope_sweep()
    elapsed = time.perf_counter() - t0
    ok = all(r[4] for r in rows) and elapsed < 60
    return ok, ", ".join(f"K={K} n={n}: {s:.4f} vs {t}" for K, n, t, s, _ in rows) + f", {elapsed:.2f}s"


def check_reciprocity():
    worst, failures, symmetric = alignment_sweep(reciprocal=True)
    rows = slope_sweep(reciprocal=True)
    ok = symmetric and not failures and worst <= 1e-10 and all(r[4] for r in rows)
    detail = (f"H symmetric={symmetric}, alignment failures={failures}, "
              + ", ".join(f"slope(K={K},n={n})={s:.4f}" for K, n, _, s, _ in rows))
    return ok, detail


def check_replay():
    t0 = time.perf_counter()
    inst = sample_instance("four_node_x", seed=0)
    worst, failures, local = 0.0, 0, True
    for seed in range(100):
        enc = RandomLinearEncoder(seed, 20)
        gt = simulate_four_node(inst, enc, 20, noise_seed=seed, payload_seed=seed)
        rep = genie_replay(gt, enc)
        worst = max(worst, rep.max_y_deviation, rep.max_x1_deviation)
        failures += not rep.passed
        if seed < 10:
            bad = genie_replay(corrupt_genie(gt, 10), enc)
            local &= (not bad.passed and bool(np.array_equal(bad.step_deviation[:9], rep.step_deviation[:9]))
                      and bool(np.all(bad.step_deviation[:9] <= 1e-9)))
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and worst <= 1e-9 and local and elapsed < 10
    return ok, f"100 seeds, max deviation={worst:.2e}, corruption local={local}, {elapsed:.2f}s"


def check_equivalence():
    results = []
    for K in (2, 3, 4):
        for seed in range(5):
            same, _, _ = dual_simulate(sample_instance("full_duplex", K=K, seed=seed), RandomLinearEncoder(seed, 20),
                                       20, noise_seed=seed, payload_seed=seed)
            results.append(same)
    return all(results), f"{sum(results)}/{len(results)} bit-identical (K=2,3,4, N=20)"


def check_feedback():
    fb = feedback_demo(GRID)
    base = feedback_demo(GRID, feedback=False)
    per = list(fb.per_stream_slopes.values())
    ok = (abs(fb.slope - 3) <= REL_TOL * 3 and all(abs(s - 1) <= REL_TOL for s in per) and base.slope < 2.1)
    return ok, (f"total={fb.slope:.4f}, per-message=" + "/".join(f"{s:.4f}" for s in per)
                + f", no-feedback={base.slope:.2e}")


def check_half_duplex():
    ok = all(fd_lower(K) > half_duplex(K) and fd_lower(K) == ic_dof(K) for K in range(3, 11))
    return ok, "fd_lower > half_duplex and fd_lower == ic_dof for K=3..10"


CRITERIA = [
    (1, "outer-bound exactness", check_outer_bounds),
    (2, "formula sandwich", check_sandwich),
    (3, "alignment verification", check_alignment),
    (4, "slope reproduction", check_slopes),
    (5, "reciprocity insensitivity", check_reciprocity),
    (6, "genie replay", check_replay),
    (7, "equivalence fidelity", check_equivalence),
    (8, "feedback demo", check_feedback),
    (9, "half-duplex comparison", check_half_duplex),
]


@pytest.mark.parametrize("number,name,check", CRITERIA, ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(number, name, check, report):
    ok, detail = check()
    report(number, name, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for number, name, check in CRITERIA:
        ok, detail = check()
        print(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {name}: {detail}")

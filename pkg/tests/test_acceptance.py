"""Acceptance suite: one test per criterion, each printing its verdict.

Tolerances are pinned here exactly as stated: 0.05 percentage points per
golden line, 1e-12 for closed forms and theorem instances, 1e-9 for the law
suite at seed 1 with 1000 trials and max dim 6.
"""

import math
from itertools import product as iter_product

import numpy as np
import pytest

from probfold.cases import CaseParams, fadd, fib_algebras, run_case, sq_algebras
from probfold.dims import Range, UNIT
from probfold.dist import dirac, tv_distance
from probfold.functors import ForLoopF
from probfold.laws import (
    CATALOGUE,
    TrialConfig,
    check_all,
    random_cs_matrix,
    random_sharp,
    risk_preorder,
)
from probfold.matrix import (
    compose,
    from_probfn,
    from_probfn_truncated,
    from_sharp_fn,
    fst_matrix,
    khatri,
    max_dev,
    snd_matrix,
)
from probfold.schemes import matrix_cata_fixpoint, tupled_from_mutual
from probfold import reference

LINE_TOL = 0.05 + 1e-12  # percentage points per golden line


def _verdict(number: int, label: str) -> None:
    print(f"ACCEPTANCE {number} ({label}): PASS")


def test_criterion_1_golden_tables():
    for table in reference.GOLDEN_TABLES:
        d = run_case(table.case, CaseParams(p=table.p, q=table.q, input=table.input))
        for value, pct in table.lines:
            got = d.mass(value) * 100.0
            assert abs(got - pct) <= LINE_TOL, (table.key, value, got, pct)
        if table.complete:
            golden = {v if not isinstance(v, (list, tuple)) else tuple(v)
                      for v, _ in table.lines}
            for value, mass in d.items():
                assert value in golden or mass * 100.0 < 0.05, (table.key, value, mass)
    _verdict(1, "golden distribution tables")


def test_criterion_2_fixpoint_matrix():
    states = Range(9)
    body, escapes = from_probfn_truncated(fadd(0.1, 2), states, states)
    init = from_probfn(lambda _u: dirac(0), UNIT, states)
    k = matrix_cata_fixpoint(body, init, 4, states, escapes=escapes)
    # every printed entry matches at its printed precision
    for i, row in enumerate(reference.FIXPOINT_ROWS):
        for j, printed in enumerate(row):
            decimals = len(printed.split(".")[1]) if "." in printed else 1
            assert round(float(k.data[i, j]), decimals) == pytest.approx(
                float(printed), abs=1e-12), (i, j, printed, k.data[i, j])
    # internal values match the closed binomial form within 1e-12
    for j in range(5):
        for i in range(9):
            if i % 2 == 0 and i // 2 <= j:
                analytic = math.comb(j, i // 2) * 0.9 ** (i // 2) * 0.1 ** (j - i // 2)
            else:
                analytic = 0.0
            assert abs(k.data[i, j] - analytic) <= 1e-12, (i, j)
    assert k.is_column_stochastic(1e-9)
    _verdict(2, "doubling-loop fixpoint matrix")


def test_criterion_3_weak_product_counterexample():
    k = reference.counterexample_matrix()
    b, c = Range(2), Range(3)
    recon = khatri(compose(fst_matrix(b, c), k), compose(snd_matrix(b, c), k))
    assert max_dev(recon, k) >= 0.2
    assert np.max(np.abs(recon.data[:, 0] - np.array(reference.RECONSTRUCTION_COL0))) <= 1e-12
    _verdict(3, "pair-projection counterexample")


def test_criterion_4_law_suite():
    cfg = TrialConfig(seed=1, trials=1000, max_dim=6, tol=1e-9)
    expected_fail = {"weak_product", "khatri_fusion_nonsharp", "mutual_recursion_fib"}
    reports = check_all(cfg)
    assert {r.law for r in reports} == set(CATALOGUE)
    for rep in reports:
        print(rep.line())
        if rep.law in expected_fail:
            assert rep.status == "expected-fail", rep
        else:
            assert rep.status == "pass", rep
            assert rep.max_dev <= cfg.tol, rep
    _verdict(4, "randomized law suite, seed 1, 1000 trials")


def test_criterion_5_theorem_instances():
    grid = [i / 4 for i in range(5)]
    strings = [""]
    for length in range(1, 7):
        strings += ["".join(cs) for cs in iter_product("ab", repeat=length)]
    for p, q in iter_product(grid, grid):
        for xs in strings:
            a = run_case("pipeline_count_cat", CaseParams(p=p, q=q, input=xs))
            b = run_case("pipeline_consolidated", CaseParams(p=p, q=q, input=xs))
            assert tv_distance(a, b) <= 1e-12, (p, q, xs)
    lists = [()]
    for length in range(1, 5):
        lists += list(iter_product(range(4), repeat=length))
    for p, q in iter_product(grid, grid):
        for xs in lists:
            a = run_case("favg_pair", CaseParams(p=p, q=q, input=xs))
            b = run_case("favg_split", CaseParams(p=p, q=q, input=xs))
            assert tv_distance(a, b) <= 1e-12, (p, q, xs)
    for p in (0.05, 0.1, 0.3):
        for n in range(13):
            a = run_case("msq", CaseParams(p=p, input=n))
            b = run_case("msql", CaseParams(p=p, input=n))
            assert tv_distance(a, b) <= 1e-12, (p, n)
    divergence = tv_distance(run_case("mfib", CaseParams(p=0.1, input=5)),
                             run_case("mfibl", CaseParams(p=0.1, input=5)))
    assert divergence >= 0.05
    _verdict(5, "tupling and fusion theorem instances")


def test_criterion_6_risk_preorder():
    fib = [0, 1, 1, 2, 3, 5, 8]
    inputs, outputs = Range(7), Range(9)
    g = from_probfn(lambda n: run_case("mfib", CaseParams(p=0.1, input=n)), inputs, outputs)
    h = from_probfn(lambda n: run_case("mfibl", CaseParams(p=0.1, input=n)), inputs, outputs)
    f = from_sharp_fn(lambda n: fib[n], inputs, outputs)
    rep = risk_preorder(g, h, f)
    assert rep.dominates
    for col in rep.columns:
        if col.input >= 1:
            assert col.g_mass <= col.h_mass + 1e-12, col
    rng = np.random.default_rng(1)
    for _ in range(100):
        cols, rows = Range(int(rng.integers(1, 7))), Range(int(rng.integers(2, 7)))
        sharp = random_sharp(rng, cols, rows)
        approx = random_cs_matrix(rng, cols, rows)
        assert risk_preorder(approx, sharp, sharp).dominates
    _verdict(6, "risk preorder: linear dominates recursive")


def test_criterion_7_sharpness_side_conditions():
    o = run_case("msqlo", CaseParams(p=0.1, input=5))
    assert o.is_dirac() and o.support == (11,)
    functor = ForLoopF()
    _, sq_report = tupled_from_mutual(functor, *sq_algebras(0.1), test_inputs=range(7))
    assert sq_report.holds and "holds" in sq_report.message
    _, fib_report = tupled_from_mutual(functor, *fib_algebras(0.1), test_inputs=range(7))
    assert not fib_report.holds and "fails" in fib_report.message
    _verdict(7, "sharpness side-condition demonstrations")

"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from displayed_matrices import intermediate_cells, mismatches, qx_cells, sigma3_cells
from case_table_oracle import closed_form_table
from pretzelslice.covers import (
    all_odd_pairs,
    blow_down,
    euler_number,
    intermediate_matrix,
    plumbing_graph,
    plumbing_matrix,
    plumbing_to_seifert,
    qx_matrix,
    sigma2_seifert,
    sigma3_matrix,
)
from pretzelslice.lattices import SearchConfig, SearchStatus, find_morphism, verify_morphism
from pretzelslice.linalg import (
    Definiteness,
    definiteness,
    homology_from_presentation,
    principal_submatrix,
    rank_rational,
)
from pretzelslice.obstruction import run_case_obstruction, solve_case
from pretzelslice.pretzel import Verdict, slice_screen

pytestmark = pytest.mark.acceptance

SMALL = [(3, 5), (3, 7), (5, 7)]


def test_criterion_1_matrix_fidelity(criterion):
    with criterion(1, "matrix fidelity for (3,5), (3,7), (5,7)", limit=1.0):
        for p, q in SMALL:
            assert mismatches(sigma3_matrix(p, q), sigma3_cells(p, q)) == []
            assert mismatches(intermediate_matrix(p, q), intermediate_cells(p, q)) == []
            Q = qx_matrix(p, q)
            assert mismatches(Q, qx_cells(p, q)) == []
            assert Fraction(Q["v1", "v1"]) == Fraction(5 * p * p - 2 * p + 4 * q + 1, 4)
            assert Fraction(Q["x0", "v1"]) == Fraction(3 * p + 1, 2)
            assert Fraction(Q["u1", "u2"]) == Fraction(p + q, 2)


def test_criterion_2_blow_down(criterion):
    with criterion(2, "double blow-down of intermediate equals Q_X", limit=1.0):
        for p, q in SMALL:
            M = intermediate_matrix(p, q)
            assert blow_down(blow_down(M, "w1"), "w2") == qx_matrix(p, q)


def test_criterion_3_homology_and_definiteness(criterion):
    with criterion(3, "b1 = 2, rank n-2, definiteness, plumbing Euler number 6/(p+q)"):
        for p, q in SMALL:
            start = time.monotonic()
            h = homology_from_presentation(sigma3_matrix(p, q).rows())
            assert h.b1 == 2 == (3 - 1) * (2 - 1)
            Q = qx_matrix(p, q)
            n = Q.n
            assert rank_rational(Q) == n - 2
            assert definiteness(Q) is Definiteness.POS_SEMIDEF
            assert definiteness(principal_submatrix(Q, range(n - 2))) is Definiteness.POS_DEF
            assert definiteness(plumbing_matrix(p, q)) is Definiteness.POS_DEF
            assert euler_number(plumbing_to_seifert(plumbing_graph(p, q))) == Fraction(6, p + q)
            assert time.monotonic() - start < 1.0


def test_criterion_4_case_table(criterion):
    with criterion(4, "12-row case table reproduced and obstructed for odd 1<p<q<=15"):
        for p, q in all_odd_pairs(15):
            start = time.monotonic()
            for i, row in enumerate(closed_form_table(p, q), start=1):
                sol = solve_case(p, q, i)
                assert (sol.u1, sol.u2) == row[:2]
                assert sol.unknowns == tuple(row[2:]), (p, q, i)
            res = run_case_obstruction(p, q)
            assert res.obstructed
            assert time.monotonic() - start < 1.0, (p, q)


def test_criterion_5_complete_search(criterion):
    with criterion(5, "complete search: Q_X(3,5) has no morphism into Z^12", limit=600.0):
        Q = qx_matrix(3, 5)
        res = find_morphism(Q, 12, SearchConfig(timeout=600.0))
        assert res.status is SearchStatus.NOT_FOUND
        S = principal_submatrix(Q, [name for name in Q.labels if name not in ("v1", "v2")])
        sub = find_morphism(S, 12, SearchConfig(timeout=600.0))
        assert sub.status is SearchStatus.FOUND
        assert verify_morphism(S, sub.morphism)


def test_criterion_6_search_oracle(criterion):
    with criterion(6, "search finds 200 random V V^T; A2 fails at r=2, succeeds at r=3", limit=60.0):
        rng = random.Random(20240601)
        for _ in range(200):
            k, r = rng.randint(1, 5), rng.randint(1, 5)
            V = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(k)]
            G = [[sum(a * b for a, b in zip(x, y)) for y in V] for x in V]
            res = find_morphism(G, r)
            assert res.status is SearchStatus.FOUND, (V, res.status)
            assert verify_morphism(G, res.morphism)
        A2 = [[2, 1], [1, 2]]
        assert find_morphism(A2, 2).status is SearchStatus.NOT_FOUND
        res = find_morphism(A2, 3)
        assert res.status is SearchStatus.FOUND and verify_morphism(A2, res.morphism)


def test_criterion_7_screener(criterion):
    with criterion(7, "screener case outcomes and Euler-number anchors", limit=1.0):
        expected = {
            (0, 0, 5, -5): {Verdict.SLICE_CANDIDATE},
            (3, -3, 1, -1): {Verdict.SLICE_CANDIDATE, Verdict.RIBBON_FAMILY},
            (3, 5, -3, -7): {Verdict.NOT_SLICE},
            (3, 5, -3, -5): {Verdict.NEEDS_THEOREM3},
            (3, 4, -3, -4): {Verdict.NOT_SLICE},
        }
        for params, allowed in expected.items():
            assert slice_screen(params).verdict in allowed, params
        assert slice_screen((3, 5, -3, -7)).reason == "sigma2:not_complementary"
        assert slice_screen((3, 4, -3, -4)).reason == "form_p_q_-p_-q:torus_knot_components"
        for p, q in all_odd_pairs(15):
            assert euler_number(sigma2_seifert((p, q, -p, -q))) == 0
            assert euler_number(plumbing_to_seifert(plumbing_graph(p, q))) == Fraction(6, p + q)


def test_criterion_8_end_to_end(criterion):
    with criterion(8, "obstruct --p 3 --q 5 --method both exits 0 with NotSliceObstructed"):
        proc = subprocess.run(
            [sys.executable, "-m", "pretzelslice", "obstruct", "--p", "3", "--q", "5", "--method", "both", "--json"],
            capture_output=True,
            text=True,
            check=False,
            timeout=900,
        )
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["verdict"] == "NotSliceObstructed"
        assert report["methods"]["table"]["verdict"] == "Obstructed"
        assert report["methods"]["search"]["verdict"] == "NotFound"

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pretzelslice.covers import qx_matrix, sigma3_matrix
from pretzelslice.linalg import (
    Definiteness,
    HomologyProfile,
    SingularMatrixError,
    SymIntMat,
    definiteness,
    determinant,
    format_matrix,
    homology_from_presentation,
    identity,
    matmul,
    parse_matrix,
    pivot_signature,
    principal_submatrix,
    rank_rational,
    smith_normal_form,
    solve_rational,
)


def int_matrices(max_rows=8, max_cols=8, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def symmetric_matrices(max_n=5, lo=-4, hi=4):
    def build(n):
        return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda vals: _sym_from_upper(n, vals)
        )

    return st.integers(1, max_n).flatmap(build)


def _sym_from_upper(n, vals):
    it = iter(vals)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = next(it)
    return M


class TestSmithNormalForm:
    def test_identity(self):
        D, U, V = smith_normal_form(identity(3))
        assert D == identity(3)

    def test_diag_2_3(self):
        D, _, _ = smith_normal_form([[2, 0], [0, 3]])
        assert D == [[1, 0], [0, 6]]

    def test_empty(self):
        D, U, V = smith_normal_form([])
        assert D == [] and U == [] and V == []

    def test_sigma3_has_two_zero_factors(self):
        D, _, _ = smith_normal_form(sigma3_matrix(3, 5))
        diag = [D[i][i] for i in range(6)]
        assert diag.count(0) == 2

    @settings(max_examples=150, deadline=None)
    @given(int_matrices())
    def test_postconditions(self, M):
        D, U, V = smith_normal_form(M)
        assert matmul(matmul(U, M), V) == D
        assert abs(determinant(U)) == 1
        assert abs(determinant(V)) == 1
        m, n = len(M), len(M[0])
        diag = [D[i][i] for i in range(min(m, n))]
        assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert (a == 0 and b == 0) or (a != 0 and b % a == 0)

    @settings(max_examples=60, deadline=None)
    @given(int_matrices(max_rows=5, max_cols=5))
    def test_matches_sympy(self, M):
        from sympy.matrices.normalforms import smith_normal_form as sympy_snf

        D, _, _ = smith_normal_form(M)
        S = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
        ours = sorted(abs(D[i][i]) for i in range(min(len(M), len(M[0]))))
        theirs = sorted(abs(int(S[i, i])) for i in range(min(S.shape)))
        assert ours == theirs

    def test_deterministic(self):
        M = [[4, 6, 2], [2, 8, 10], [6, 2, 4]]
        assert smith_normal_form(M) == smith_normal_form(M)


class TestRank:
    def test_identity(self):
        assert rank_rational(identity(5)) == 5

    def test_sigma3(self):
        assert rank_rational(sigma3_matrix(3, 5)) == 4

    def test_qx(self):
        assert rank_rational(qx_matrix(3, 5)) == 12

    @settings(max_examples=150, deadline=None)
    @given(int_matrices())
    def test_equals_nonzero_invariant_factors(self, M):
        D, _, _ = smith_normal_form(M)
        nonzero = sum(1 for i in range(min(len(M), len(M[0]))) if D[i][i])
        assert rank_rational(M) == nonzero

    @settings(max_examples=80, deadline=None)
    @given(int_matrices())
    def test_matches_sympy(self, M):
        assert rank_rational(M) == sympy.Matrix(M).rank()


class TestHomology:
    def test_zero_matrix(self):
        assert homology_from_presentation([[0] * 3 for _ in range(3)]) == HomologyProfile(3, ())

    def test_diag_2_3(self):
        assert homology_from_presentation([[2, 0], [0, 3]]) == HomologyProfile(0, (6,))

    def test_sigma3(self):
        h = homology_from_presentation(sigma3_matrix(3, 5))
        # (m^r - 1)(n - 1) with a 3-fold cover of a 2-component link
        assert h.b1 == (3 - 1) * (2 - 1)

    @settings(max_examples=100, deadline=None)
    @given(int_matrices(max_rows=6, max_cols=6).filter(lambda M: len(M) == len(M[0])))
    def test_b1_plus_nonzero_factors(self, M):
        h = homology_from_presentation(M)
        D, _, _ = smith_normal_form(M)
        nonzero = sum(1 for i in range(len(M)) if D[i][i])
        assert h.b1 + nonzero == len(M)
        assert all(t > 1 for t in h.torsion)
        for a, b in zip(h.torsion, h.torsion[1:]):
            assert b % a == 0


def box_signs(M, bound=3):
    """Signs of x^T M x over nonzero x in a box; a sound but incomplete witness set."""
    n = len(M)
    signs = set()
    for x in itertools.product(range(-bound, bound + 1), repeat=n):
        if any(x):
            v = sum(x[i] * M[i][j] * x[j] for i in range(n) for j in range(n))
            signs.add((v > 0) - (v < 0))
    return signs


ALLOWED = {
    Definiteness.POS_DEF: {1},
    Definiteness.NEG_DEF: {-1},
    Definiteness.ZERO: {0},
    Definiteness.POS_SEMIDEF: {0, 1},
    Definiteness.NEG_SEMIDEF: {0, -1},
    Definiteness.INDEFINITE: {-1, 0, 1},
}


class TestDefiniteness:
    def test_a2(self):
        assert definiteness([[2, 1], [1, 2]]) is Definiteness.POS_DEF

    def test_indefinite(self):
        assert definiteness([[1, 2], [2, 1]]) is Definiteness.INDEFINITE

    def test_zero(self):
        assert definiteness([[0, 0], [0, 0]]) is Definiteness.ZERO

    def test_hyperbolic_needs_off_diagonal_pivot(self):
        assert pivot_signature([[0, 1], [1, 0]]) == (1, 1, 0)

    def test_semidefinite_not_from_leading_minors(self):
        # leading minors 0, 0, ... but the form is indefinite
        assert definiteness([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) is Definiteness.INDEFINITE
        assert definiteness([[0, 0], [0, 1]]) is Definiteness.POS_SEMIDEF

    def test_qx(self):
        Q = qx_matrix(3, 5)
        assert definiteness(Q) is Definiteness.POS_SEMIDEF
        assert definiteness(principal_submatrix(Q, range(12))) is Definiteness.POS_DEF

    @settings(max_examples=120, deadline=None)
    @given(symmetric_matrices(max_n=4))
    def test_consistent_with_box_witnesses(self, M):
        kind = definiteness(M)
        seen = box_signs(M)
        assert seen <= ALLOWED[kind]
        if {1, -1} <= seen:
            assert kind is Definiteness.INDEFINITE

    def test_witness_outside_small_box(self):
        # smallest positive witness is (-2, -5, 4)
        M = [[-4, 1, -1], [1, -3, -3], [-1, -3, -4]]
        assert definiteness(M) is Definiteness.INDEFINITE
        assert box_signs(M) == {0, -1}

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), min_size=1, max_size=5))
    def test_gram_matrices(self, V):
        # V V^T is PSD; definite exactly when the rows of V are independent
        G = [[sum(a * b for a, b in zip(r, s)) for s in V] for r in V]
        expected = Definiteness.POS_DEF if rank_rational(V) == len(V) else Definiteness.POS_SEMIDEF
        if not any(any(row) for row in V):
            expected = Definiteness.ZERO
        assert definiteness(G) is expected
        assert box_signs(G, bound=1) <= ALLOWED[expected]

    @settings(max_examples=60, deadline=None)
    @given(symmetric_matrices(max_n=5))
    def test_inertia_matches_sympy_eigenvalues(self, M):
        eig = sympy.Matrix(M).eigenvals()
        pos = sum(mult for val, mult in eig.items() if sympy.re(sympy.N(val, 50)) > 1e-30)
        neg = sum(mult for val, mult in eig.items() if sympy.re(sympy.N(val, 50)) < -1e-30)
        assert pivot_signature(M) == (pos, neg, len(M) - pos - neg)


class TestPrincipalSubmatrix:
    def test_full(self):
        Q = qx_matrix(3, 5)
        assert principal_submatrix(Q, range(Q.n)) == Q

    def test_u_block(self):
        Q = qx_matrix(3, 5)
        S = principal_submatrix(Q, ["u1", "u2"])
        assert S.rows() == [[8, 4], [4, 8]]
        assert S.labels == ("u1", "u2")

    def test_order_preserved(self):
        Q = qx_matrix(3, 5)
        S = principal_submatrix(Q, ["v2", "u1"])
        assert S.rows() == [[12, -2], [-2, 8]]

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            principal_submatrix(qx_matrix(3, 5), [0, 14])


class TestSymIntMat:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            SymIntMat.from_rows([[1, 2], [3, 4]])

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            SymIntMat.from_rows([[1, 0], [0, 1]], ["a", "a"])

    def test_big_entries_stay_exact(self):
        big = 10**40
        M = SymIntMat.from_rows([[big, 1], [1, big]])
        assert determinant(M) == big * big - 1
        assert definiteness(M) is Definiteness.POS_DEF


class TestSolve:
    def test_small(self):
        assert solve_rational([[2, 1], [1, 3]], [1, 2]) == [Fraction(1, 5), Fraction(3, 5)]

    def test_fraction_entries(self):
        assert solve_rational([[Fraction(1, 2), 0], [0, 3]], [1, 1]) == [2, Fraction(1, 3)]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            solve_rational([[1, 2], [2, 4]], [1, 2])

    def test_random_roundtrip(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 6)
            A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            if determinant(A) == 0:
                continue
            b = [rng.randint(-9, 9) for _ in range(n)]
            x = solve_rational(A, b)
            assert [sum(a * xi for a, xi in zip(row, x)) for row in A] == b


class TestTextFormat:
    def test_roundtrip_with_labels(self):
        Q = sigma3_matrix(3, 5)
        rows, labels = parse_matrix(format_matrix(Q))
        assert SymIntMat.from_rows(rows, labels) == Q

    def test_layout(self):
        text = format_matrix(SymIntMat.from_rows([[2, -1], [-1, 2]], ["a", "b"]))
        assert text == "# label: a\n# label: b\n2\n2 -1\n-1 2\n"

    def test_without_labels(self):
        rows, labels = parse_matrix("2\n1 0\n0 1\n")
        assert rows == [[1, 0], [0, 1]] and labels is None

    def test_bad_row_count(self):
        with pytest.raises(ValueError):
            parse_matrix("3\n1 0 0\n0 1 0\n")

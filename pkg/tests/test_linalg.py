"""Exact rational linear algebra, differential matrices, cohomology."""

import random
from fractions import Fraction

import pytest
import sympy

from graphc.diagrams import EVEN, ODD, canonicalize, diagram, graph_vector
from graphc.differential import delta, partial
from graphc.linalg import (
    RationalMatrix,
    cocycle_representative,
    cohomology_dim,
    coords_of,
    express_in_support,
    format_matrix,
    homology_dim,
    in_image,
    kernel_basis,
    matrix_of_delta,
    matrix_of_partial,
    rank,
)
from graphc.enumeration import enumerate_basis
from graphc.errors import NoClassError

XI1 = diagram(EVEN, 4, 1, [(1, 5), (4, 5), (3, 5), (2, 5)])
XI2 = diagram(EVEN, 5, 0, [(1, 3), (1, 4), (2, 5)])


def _random_matrix(rng, nrows, ncols, density=0.4):
    entries = {}
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < density:
                x = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
                if x:
                    entries[(r, c)] = x
    return RationalMatrix(nrows, ncols, entries)


def _sympy_of(M):
    S = sympy.zeros(M.nrows, M.ncols)
    for (r, c), x in M.entries.items():
        S[r, c] = sympy.Rational(x.numerator, x.denominator)
    return S


class TestRankKernel:
    def test_rank_matches_sympy(self):
        rng = random.Random(1)
        for _ in range(15):
            M = _random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
            assert rank(M) == _sympy_of(M).rank()

    def test_rank_nullity(self):
        rng = random.Random(2)
        for _ in range(10):
            M = _random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
            assert rank(M) + len(kernel_basis(M)) == M.ncols

    def test_kernel_vectors_annihilated(self):
        rng = random.Random(3)
        for _ in range(10):
            M = _random_matrix(rng, 5, 6)
            for vec in kernel_basis(M):
                for r in range(M.nrows):
                    s = sum(
                        M.entries.get((r, c), Fraction(0)) * vec[c]
                        for c in range(M.ncols)
                    )
                    assert s == 0

    def test_kernel_normalized(self):
        rng = random.Random(4)
        for _ in range(10):
            M = _random_matrix(rng, 4, 6)
            for vec in kernel_basis(M):
                lead = next(x for x in vec if x)
                assert lead == 1

    def test_rank_of_transpose(self):
        for t in (ODD, EVEN):
            for m in (0, 1, 2):
                M = matrix_of_delta(t, 3, m)
                assert rank(M) == rank(M.transpose())


class TestInImage:
    def test_round_trip(self):
        rng = random.Random(5)
        for _ in range(10):
            M = _random_matrix(rng, 5, 4)
            x = [Fraction(rng.randint(-3, 3)) for _ in range(M.ncols)]
            v = [
                sum(M.entries.get((r, c), Fraction(0)) * x[c] for c in range(M.ncols))
                for r in range(M.nrows)
            ]
            u = in_image(M, v)
            assert u is not None
            back = [
                sum(M.entries.get((r, c), Fraction(0)) * u[c] for c in range(M.ncols))
                for r in range(M.nrows)
            ]
            assert back == v

    def test_detects_outside_image(self):
        M = RationalMatrix(2, 1, {(0, 0): Fraction(1)})
        assert in_image(M, [Fraction(0), Fraction(1)]) is None


class TestDifferentialMatrices:
    def test_columns_are_delta(self):
        for t, k, m in [(ODD, 2, 0), (EVEN, 3, 1)]:
            M = matrix_of_delta(t, k, m)
            for j, b in enumerate(M.col_basis.diagrams):
                col = M.column(j)
                dv = delta(graph_vector([(b, 1)]))
                expected = coords_of(dv, M.row_basis)
                for r in range(M.nrows):
                    assert col.get(r, Fraction(0)) == expected[r]

    def test_partial_is_transpose(self):
        for t in (ODD, EVEN):
            for k in (1, 2, 3):
                for m in range(1, 2 * k):
                    A = matrix_of_delta(t, k, m - 1)
                    P = matrix_of_partial(t, k, m)
                    assert P.entries == A.transpose().entries
                    assert (P.nrows, P.ncols) == (A.ncols, A.nrows)

    def test_delta_squared_matrix_zero(self):
        for t in (ODD, EVEN):
            for m in (0, 1, 2):
                A = matrix_of_delta(t, 3, m)
                B = matrix_of_delta(t, 3, m + 1)
                assert B.matmul(A).is_zero


class TestCohomology:
    def test_vanishing_low_orders(self):
        assert cohomology_dim(ODD, 1, 1) == 0
        assert cohomology_dim(ODD, 2, 1) == 0
        assert cohomology_dim(ODD, 3, 1) == 0
        assert cohomology_dim(EVEN, 1, 1) == 0
        assert cohomology_dim(EVEN, 2, 1) == 0

    def test_even_31_class_exists(self):
        assert cohomology_dim(EVEN, 3, 1) >= 1

    def test_homology_equals_cohomology(self):
        for t in (ODD, EVEN):
            for k in (1, 2, 3):
                for m in range(0, 2 * k):
                    assert homology_dim(t, k, m) == cohomology_dim(t, k, m)

    def test_trivial_class_raises(self):
        with pytest.raises(NoClassError):
            cocycle_representative(ODD, 1, 1)


class TestRepresentatives:
    def test_representative_is_cocycle_not_coboundary(self):
        rep = cocycle_representative(EVEN, 3, 1)
        assert delta(rep).is_zero
        B = matrix_of_delta(EVEN, 3, 0)
        assert in_image(B, coords_of(rep, B.row_basis)) is None

    def test_representative_normalized(self):
        rep = cocycle_representative(EVEN, 3, 1)
        basis = enumerate_basis(EVEN, 3, 1)
        coords = coords_of(rep, basis)
        lead = next(x for x in coords if x)
        assert lead == 1

    def test_even_31_supported_on_two_diagrams(self):
        rep = cocycle_representative(EVEN, 3, 1)
        w = express_in_support(rep, [XI1, XI2])
        assert w is not None
        assert delta(w).is_zero
        d1 = canonicalize(XI1).diagram
        d2 = canonicalize(XI2).diagram
        assert set(w.support()) == {d1, d2}
        c1, c2 = w.coefficient(d1), w.coefficient(d2)
        assert c1 != 0 and c2 != 0
        assert abs(c2 / c1) == 2

    def test_express_in_support_can_fail(self):
        rep = cocycle_representative(EVEN, 3, 1)
        assert express_in_support(rep, [XI2]) is None


def test_format_matrix():
    M = RationalMatrix(2, 2, {(0, 1): Fraction(-1, 2)})
    text = format_matrix(M, "r.jsonl", "aa", "c.jsonl", "bb")
    assert "# shape 2 2" in text
    assert "0 1 -1/2" in text
    assert "r.jsonl sha256:aa" in text

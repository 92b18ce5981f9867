"""Exact-arithmetic layer: rationals, matrices, Smith form, root counting.

Derived expected values are computed here by independent oracles (minor-gcd
invariant factors, cofactor-expansion characteristic polynomials, sympy,
numpy root finding) and then asserted against the library.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix as SympyMatrix
from sympy import ZZ
from sympy.matrices.normalforms import invariant_factors

from solvgeom.intmatrices import IntMatrix, smith_normal_form
from solvgeom.matrices import (
    Matrix,
    char_poly,
    clear_denominators,
    evaluate_poly_at_matrix,
    kernel_basis,
    vec,
)
from solvgeom.polynomials import (
    Polynomial,
    all_roots_real_nonpositive,
    count_real_roots_nonpositive,
    polynomial_gcd,
    split_root_at_zero,
    squarefree_part,
    as_polynomial_in_square,
)
from solvgeom.rationals import format_rational, parse_rational, rat

# ---------------------------------------------------------------------------
# oracles


def minor_gcd_invariant_factors(rows: list[list[int]]) -> list[int]:
    """Invariant factors via gcds of k×k minors: d_1···d_k = gcd(k-minors)."""
    m = SympyMatrix(rows)
    n_rows, n_cols = m.shape
    factors = []
    prev = 1
    for k in range(1, min(n_rows, n_cols) + 1):
        g = 0
        for rsel in itertools.combinations(range(n_rows), k):
            for csel in itertools.combinations(range(n_cols), k):
                g = gcd(g, int(m[rsel, csel].det()))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def cofactor_char_poly(m: Matrix) -> Polynomial:
    """det(λI − m) by direct cofactor expansion over polynomial entries."""
    n = m.rows
    entries = [
        [
            Polynomial([-m[i, j], 1]) if i == j else Polynomial([-m[i, j]])
            for j in range(n)
        ]
        for i in range(n)
    ]

    def det(rows: list[list[Polynomial]]) -> Polynomial:
        if not rows:
            return Polynomial([1])
        if len(rows) == 1:
            return rows[0][0]
        acc = Polynomial()
        for j, top in enumerate(rows[0]):
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = top * det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    return det(entries)


# ---------------------------------------------------------------------------
# rationals


def test_parse_and_format_round_trip_basics():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-8, 2)) == "-4"
    assert format_rational(Fraction(0)) == "0"


@pytest.mark.parametrize("bad", ["", "1/0", "3.5", "a", "1/ 2", "--3"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.1)


@given(st.fractions())
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


# ---------------------------------------------------------------------------
# matrices: arithmetic and elimination

rational_entries = st.fractions(
    min_value=-9, max_value=9, max_denominator=4
)


def matrices(max_n: int = 5, square: bool = True):
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_n))
        m = n if square else draw(st.integers(min_value=1, max_value=max_n))
        rows = draw(
            st.lists(
                st.lists(rational_entries, min_size=m, max_size=m),
                min_size=n,
                max_size=n,
            )
        )
        return Matrix(rows)

    return st.composite(lambda draw: build(draw))()


def test_matrix_basic_ops():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([["1/2", 0], [1, -1]])
    assert (a * b) == Matrix([["5/2", -2], ["11/2", -4]])
    assert a.transpose() == Matrix([[1, 3], [2, 4]])
    assert (a - a).is_zero()
    assert a.apply(vec([1, 0])) == vec([1, 3])
    assert a.det() == -2
    assert a.inverse() * a == Matrix.identity(2)
    assert a.trace() == 5


def test_solve_unique_and_errors():
    a = Matrix([[2, 0], [0, 3], [1, 1]])
    x = a.solve(vec([4, 6, 4]))
    assert x == vec([2, 2])
    with pytest.raises(ValueError):
        a.solve(vec([4, 6, 5]))  # inconsistent
    with pytest.raises(ValueError):
        Matrix([[1, 1]]).solve(vec([1]))  # underdetermined


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_kernel_of_identity_is_empty():
    assert kernel_basis(Matrix.identity(2)) == []


def test_kernel_of_rank_one_row():
    assert kernel_basis(Matrix([[1, -1]])) == [vec([1, 1])]


def test_kernel_of_heisenberg_center_relations():
    # relation matrix of the center computation for the 3-dim Heisenberg
    # algebra [e0,e1] = e2: rows are (input j, output k) slices of ad
    rows = []
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2], c[1][0][2] = 1, -1
    for j in range(3):
        for k in range(3):
            rows.append([c[i][j][k] for i in range(3)])
    m = Matrix(rows)
    gram = m.transpose() * m
    ker = kernel_basis(gram)
    assert len(ker) == 1
    assert ker[0] == vec([0, 0, 1])


@given(matrices(max_n=4, square=False))
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_annihilate(m):
    basis = kernel_basis(m)
    for v in basis:
        assert all(x == 0 for x in m.apply(v))
    assert len(basis) + m.rank() == m.cols


@given(matrices(max_n=4))
@settings(max_examples=40, deadline=None)
def test_det_vs_sympy(m):
    expected = SympyMatrix([[x for x in row] for row in m.to_lists()]).det()
    assert m.det() == Fraction(expected.p, expected.q)


# ---------------------------------------------------------------------------
# Smith normal form


def test_snf_already_diagonal():
    assert smith_normal_form([[2, 0], [0, 0]]) == ([2], 1)


def test_snf_dense_two_by_two():
    # oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8 -> [2, 4]
    assert minor_gcd_invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[2, 4], [6, 8]]) == ([2, 4], 2)


def test_snf_zero_matrix():
    assert smith_normal_form([[0] * 3 for _ in range(3)]) == ([], 0)


def test_snf_accepts_intmatrix():
    assert smith_normal_form(IntMatrix([[6], [4]])) == ([2], 1)


int_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.integers(min_value=1, max_value=5).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(min_value=-12, max_value=12), min_size=m, max_size=m),
            min_size=n,
            max_size=n,
        )
    )
)


@given(int_matrices)
@settings(max_examples=80, deadline=None)
def test_snf_matches_sympy_invariant_factors(rows):
    ours, rank = smith_normal_form(rows)
    # sympy keeps zero factors for the free part; the contract here is
    # positive factors only, with the free rank implied by the shape
    theirs = [
        int(d) for d in invariant_factors(SympyMatrix(rows), domain=ZZ) if d != 0
    ]
    assert ours == theirs
    assert rank == len(theirs)
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0


@given(int_matrices)
@settings(max_examples=50, deadline=None)
def test_snf_rank_agrees_with_kernel_rank(rows):
    factors, rank = smith_normal_form(rows)
    m = Matrix(rows)
    assert rank == m.rank()
    assert rank == m.cols - len(kernel_basis(m))


# ---------------------------------------------------------------------------
# characteristic polynomials


def test_char_poly_examples():
    assert char_poly(Matrix.zero(2)) == Polynomial([0, 0, 1])
    assert char_poly(Matrix([[0, -1], [1, 0]])) == Polynomial([1, 0, 1])
    # oracle first:
    assert cofactor_char_poly(Matrix([[0, 2], [1, 0]])) == Polynomial([-2, 0, 1])
    assert char_poly(Matrix([[0, 2], [1, 0]])) == Polynomial([-2, 0, 1])


def test_char_poly_empty_matrix():
    assert char_poly(Matrix([])) == Polynomial([1])


def test_char_poly_requires_square():
    with pytest.raises(ValueError):
        char_poly(Matrix([[1, 2]]))


@given(matrices(max_n=5))
@settings(max_examples=40, deadline=None)
def test_char_poly_matches_cofactor_expansion(m):
    assert char_poly(m) == cofactor_char_poly(m)


def test_cayley_hamilton_up_to_eight():
    rng = random.Random(60032)
    for n in range(1, 9):
        for _ in range(5):
            m = Matrix(
                [
                    [
                        Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                        for _ in range(n)
                    ]
                    for _ in range(n)
                ]
            )
            assert evaluate_poly_at_matrix(char_poly(m), m).is_zero()


# ---------------------------------------------------------------------------
# polynomials and root counting


def test_polynomial_divmod_round_trip():
    p = Polynomial([1, 2, 3, 4])
    d = Polynomial([-1, 1])
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree


def test_polynomial_gcd_of_shared_factor():
    shared = Polynomial([2, 1])  # x + 2
    a = shared * Polynomial([1, 1])
    b = shared * Polynomial([3, 1])
    assert polynomial_gcd(a, b) == shared.monic()


def test_squarefree_part_drops_multiplicity():
    p = Polynomial.from_roots([-2, -2, -3])
    assert squarefree_part(p) == Polynomial.from_roots([-2, -3]).monic()


def test_split_root_at_zero():
    m, q = split_root_at_zero(Polynomial([0, 0, 3, 1]))
    assert m == 2
    assert q == Polynomial([3, 1])


def test_as_polynomial_in_square():
    assert as_polynomial_in_square(Polynomial([4, 0, 5, 0, 1])) == Polynomial(
        [4, 5, 1]
    )
    assert as_polynomial_in_square(Polynomial([0, 1])) is None


def test_root_sign_verdicts():
    assert all_roots_real_nonpositive(Polynomial([1, 1]))  # x + 1
    assert not all_roots_real_nonpositive(Polynomial([1, 0, 1]))  # x² + 1
    # (x+2)²(x+3) expands to x³ + 7x² + 16x + 12
    expanded = Polynomial.from_roots([-2, -2, -3])
    assert expanded == Polynomial([12, 16, 7, 1])
    assert all_roots_real_nonpositive(expanded)
    assert not all_roots_real_nonpositive(Polynomial([-2, 0, 1]))  # root +√2
    assert all_roots_real_nonpositive(Polynomial([0, 0, 0, 1]))  # x³
    assert not all_roots_real_nonpositive(Polynomial([0, -1, 1]))  # x(x−1)
    assert all_roots_real_nonpositive(Polynomial([5]))  # no roots at all
    with pytest.raises(ValueError):
        all_roots_real_nonpositive(Polynomial())


def test_count_real_roots_nonpositive():
    assert count_real_roots_nonpositive(Polynomial([-2, 0, 1])) == 1  # −√2 only
    assert count_real_roots_nonpositive(Polynomial([0, -1, 1])) == 1  # 0 only
    assert count_real_roots_nonpositive(Polynomial([1, 0, 1])) == 0
    assert count_real_roots_nonpositive(Polynomial.from_roots([-1, -2, -3])) == 3


def test_root_verdict_against_float_oracle():
    """100 random products of linear/quadratic factors vs numpy roots."""
    rng = random.Random(77113)
    checked = 0
    while checked < 100:
        p = Polynomial([1])
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                p = p * Polynomial([Fraction(rng.randint(-6, 6)), 1])
            else:
                p = p * Polynomial(
                    [Fraction(rng.randint(-6, 6)), Fraction(rng.randint(-6, 6)), 1]
                )
        coeffs = [float(c) for c in reversed(p.coeffs)]
        roots = np.roots(coeffs)
        margin = 1e-6
        # skip draws where the float verdict itself is ambiguous
        if any(abs(r.imag) < margin and r.imag != 0 for r in roots):
            continue
        if any(abs(r.real) < margin and r.real != 0 for r in roots):
            continue
        oracle = all(r.imag == 0 or abs(r.imag) < margin for r in roots) and all(
            r.real <= margin for r in roots
        )
        strict = all(abs(r.imag) < margin for r in roots) and all(
            r.real < margin for r in roots
        )
        if oracle != strict:
            continue
        assert all_roots_real_nonpositive(p) == oracle
        checked += 1


def test_clear_denominators():
    assert clear_denominators(vec(["1/2", "2/3", 1])) == (3, 4, 6)

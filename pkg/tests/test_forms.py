"""Exterior forms and the Chevalley–Eilenberg differential.

The differential of a k-form is checked against the alternating bracket
expansion written out independently here, and d∘d = 0 is exercised over
randomly grown solvable algebras.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvgeom.forms import (
    KForm,
    ce_differential,
    covector,
    form_is_closed,
    one_form_from_values,
    two_form_from_matrix,
    wedge,
)
from solvgeom.liealgebras import (
    LieAlgebra,
    abelian,
    affine_line,
    direct_sum,
    heisenberg,
    oscillator,
    standard_vector,
)
from solvgeom.matrices import Matrix

from algebra_samplers import random_solvable_algebra


def r_times_h3() -> LieAlgebra:
    """Basis (x, y, z, w) with [x, y] = z and w spanning the extra line."""
    return LieAlgebra.from_brackets(
        4, {(0, 1): [0, 0, 1, 0]}, ("x", "y", "z", "w")
    )


def bracket_expansion_differential(g: LieAlgebra, alpha: KForm) -> KForm:
    """Independent oracle: (dα)(x₀,…,x_k) by the pairwise-bracket sum."""
    k = alpha.degree
    entries = {}
    for idx in itertools.combinations(range(g.dim), k + 1):
        total = Fraction(0)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                rest = [
                    standard_vector(g.dim, idx[c])
                    for c in range(k + 1)
                    if c not in (a, b)
                ]
                sign = (-1) ** (a + b)
                total += sign * alpha(
                    g.bracket(
                        standard_vector(g.dim, idx[a]),
                        standard_vector(g.dim, idx[b]),
                    ),
                    *rest,
                )
        if total:
            entries[idx] = total
    return KForm(g.dim, k + 1, entries)


rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


# ---------------------------------------------------------------------------
# form container behaviour


def test_indices_are_canonicalized_with_sign():
    alpha = KForm(4, 2, {(1, 0): 1})
    assert alpha.value((0, 1)) == -1
    assert alpha.value((1, 0)) == 1


def test_repeated_indices_are_dropped():
    assert KForm(3, 2, {(1, 1): 5}).is_zero()
    assert KForm(3, 2, {(0, 1): 1}).value((2, 2)) == 0


def test_call_matches_minor_expansion():
    rng = random.Random(331)
    for _ in range(20):
        entries = {
            (i, j): rng.randint(-3, 3)
            for i in range(4)
            for j in range(i + 1, 4)
        }
        omega = KForm(4, 2, entries)
        u = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        expected = sum(
            c * (u[i] * v[j] - u[j] * v[i])
            for (i, j), c in omega.entries.items()
        )
        assert omega(u, v) == expected


def test_degree_bounds_checked():
    with pytest.raises(ValueError):
        KForm(2, 3, {})
    with pytest.raises(ValueError):
        KForm(3, 2, {(0, 5): 1})
    with pytest.raises(ValueError):
        KForm(3, 2, {(0,): 1})


def test_two_form_from_matrix_requires_antisymmetry():
    with pytest.raises(ValueError, match="antisymmetric"):
        two_form_from_matrix(Matrix.identity(2))
    omega = two_form_from_matrix(Matrix([[0, 2], [-2, 0]]))
    assert omega.value((0, 1)) == 2


def test_arithmetic_and_scaling():
    a = one_form_from_values([1, 2, 0])
    b = covector(3, 2)
    assert (a + b).value((2,)) == 1
    assert (a - a).is_zero()
    assert (3 * a).value((1,)) == 6
    assert (-a).value((0,)) == -1


# ---------------------------------------------------------------------------
# wedge


def test_area_form_on_the_plane():
    area = wedge(covector(2, 0), covector(2, 1))
    assert area(
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    ) == 1


def test_one_form_wedge_self_is_zero():
    theta = one_form_from_values([2, -1, 3, 5])
    assert wedge(theta, theta).is_zero()


@given(
    st.lists(rationals, min_size=3, max_size=3),
    st.lists(rationals, min_size=3, max_size=3),
)
def test_wedge_of_one_forms_anticommutes(avals, bvals):
    a, b = one_form_from_values(avals), one_form_from_values(bvals)
    assert wedge(a, b) == -wedge(b, a)


@settings(max_examples=30)
@given(
    st.lists(rationals, min_size=4, max_size=4),
    st.lists(rationals, min_size=4, max_size=4),
    st.lists(rationals, min_size=4, max_size=4),
)
def test_wedge_is_associative(avals, bvals, cvals):
    a, b, c = map(one_form_from_values, (avals, bvals, cvals))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_one_two_wedge_follows_shuffle_convention():
    rng = random.Random(74)
    for _ in range(15):
        theta = one_form_from_values([rng.randint(-3, 3) for _ in range(4)])
        omega = KForm(
            4,
            2,
            {
                (i, j): rng.randint(-3, 3)
                for i in range(4)
                for j in range(i + 1, 4)
            },
        )
        vs = [
            tuple(Fraction(rng.randint(-2, 2)) for _ in range(4))
            for _ in range(3)
        ]
        x, y, z = vs
        assert wedge(theta, omega)(x, y, z) == (
            theta(x) * omega(y, z)
            - theta(y) * omega(x, z)
            + theta(z) * omega(x, y)
        )


def test_wedge_beyond_top_degree_vanishes():
    a = KForm(3, 2, {(0, 1): 1})
    b = KForm(3, 2, {(1, 2): 1})
    assert wedge(a, b).is_zero()


# ---------------------------------------------------------------------------
# the Chevalley–Eilenberg differential


def test_differential_of_center_dual_on_h3():
    g = heisenberg(1)
    dz = ce_differential(g, covector(3, 2))
    assert dz == KForm(3, 2, {(0, 1): -1})


def test_differential_of_transverse_dual_vanishes():
    g = r_times_h3()
    assert ce_differential(g, covector(4, 3)).is_zero()
    assert form_is_closed(g, covector(4, 3))


def test_everything_is_closed_on_abelian():
    g = abelian(4)
    rng = random.Random(12)
    for degree in (1, 2, 3):
        entries = {
            idx: rng.randint(-3, 3)
            for idx in itertools.combinations(range(4), degree)
        }
        assert ce_differential(g, KForm(4, degree, entries)).is_zero()


def test_one_form_differential_is_minus_bracket_pullback():
    g = oscillator((1, 2))
    rng = random.Random(88)
    alpha = one_form_from_values([rng.randint(-3, 3) for _ in range(g.dim)])
    da = ce_differential(g, alpha)
    for i, j in itertools.combinations(range(g.dim), 2):
        bracket = g.bracket_basis(i, j)
        assert da.value((i, j)) == -alpha(bracket)


@pytest.mark.parametrize(
    "make", [lambda: heisenberg(2), lambda: oscillator((1, 3)), affine_line]
)
def test_differential_matches_bracket_expansion_oracle(make):
    g = make()
    rng = random.Random(555)
    for degree in range(1, min(3, g.dim - 1) + 1):
        entries = {
            idx: rng.randint(-2, 2)
            for idx in itertools.combinations(range(g.dim), degree)
        }
        alpha = KForm(g.dim, degree, entries)
        assert ce_differential(g, alpha) == bracket_expansion_differential(
            g, alpha
        )


def test_fundamental_form_consistency_on_r_times_h3():
    # ω pairs (x, y) and (z, w) with opposite orientation; its differential
    # equals w* ∧ ω, and the shuffle convention makes both sides +1 on
    # (x, y, w).
    g = r_times_h3()
    omega = KForm(4, 2, {(0, 1): 1, (2, 3): -1})
    domega = ce_differential(g, omega)
    assert domega == wedge(covector(4, 3), omega)
    x, y, w = (standard_vector(4, i) for i in (0, 1, 3))
    assert domega(x, y, w) == 1
    assert wedge(covector(4, 3), omega)(x, y, w) == 1


def test_dd_vanishes_on_stock_algebras():
    rng = random.Random(2023)
    for g in (heisenberg(2), oscillator((1, 2)), direct_sum(affine_line(), abelian(1))):
        for degree in (1, 2):
            if degree + 2 > g.dim:
                continue
            entries = {
                idx: rng.randint(-2, 2)
                for idx in itertools.combinations(range(g.dim), degree)
            }
            alpha = KForm(g.dim, degree, entries)
            assert ce_differential(g, ce_differential(g, alpha)).is_zero()


def test_dd_vanishes_on_random_solvable_algebras():
    rng = random.Random(60601)
    for _ in range(50):
        g = random_solvable_algebra(rng)
        degree = rng.randint(1, min(3, g.dim - 2))
        entries = {
            idx: rng.randint(-2, 2)
            for idx in itertools.combinations(range(g.dim), degree)
        }
        alpha = KForm(g.dim, degree, entries)
        dd = ce_differential(g, ce_differential(g, alpha))
        assert dd.is_zero()

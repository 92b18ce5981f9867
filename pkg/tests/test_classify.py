"""Low-dimensional catalogue: family builders, invariants, separation.

The separation facts frozen here were verified constructively: every
separated pair differs in the named invariant component, and the one pair
no component separates is genuinely isomorphic — the witness basis change
transports the structure constants exactly, so the catalogue really does
contain the same algebra twice.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from solvgeom.classify import (
    OSCILLATOR_H3,
    OSCILLATOR_H5,
    OSCILLATOR_SASAKI5,
    PRODUCT_H3,
    PRODUCT_H5,
    PRODUCT_SASAKI5,
    FamilyTag,
    IsoInvariant,
    build_family,
    catalogue_overlap,
    classify_catalogue,
    dim6_family_tags,
    family_invariant,
    iso_invariant,
    separation_report,
)
from solvgeom.hermitian import lck_verdict
from solvgeom.lattices import oscillator_algebra
from solvgeom.liealgebras import (
    LieAlgebra,
    abelian,
    affine_line,
    change_basis,
    direct_sum,
    heisenberg,
    oscillator,
)
from solvgeom.matrices import Matrix

from vaisman_grid import abelian_package
from solvgeom.hermitian import construct_vaisman

ALL_TAGS = (
    FamilyTag(PRODUCT_H3),
    FamilyTag(OSCILLATOR_H3),
    FamilyTag(PRODUCT_H5),
    FamilyTag(OSCILLATOR_H5, Fraction(1, 3)),
    FamilyTag(PRODUCT_SASAKI5),
    FamilyTag(OSCILLATOR_SASAKI5),
)


# ---------------------------------------------------------------------------
# tags


def test_tag_validation():
    with pytest.raises(ValueError, match="unknown family"):
        FamilyTag("heisenberg-7")
    with pytest.raises(ValueError, match="needs its speed ratio"):
        FamilyTag(OSCILLATOR_H5)
    with pytest.raises(ValueError, match="lie in"):
        FamilyTag(OSCILLATOR_H5, Fraction(3, 2))
    with pytest.raises(ValueError, match="no parameter"):
        FamilyTag(PRODUCT_H5, Fraction(1, 2))


def test_tag_rendering():
    assert str(FamilyTag(PRODUCT_H3)) == "product-h3"
    assert str(FamilyTag(OSCILLATOR_H5, Fraction(1, 2))) == "oscillator-h5(r=1/2)"


def test_tag_accepts_rational_strings():
    assert FamilyTag(OSCILLATOR_H5, "2/3").r == Fraction(2, 3)


# ---------------------------------------------------------------------------
# builders


@pytest.mark.parametrize("tag", ALL_TAGS, ids=str)
def test_families_are_vaisman(tag):
    h = build_family(tag)
    assert lck_verdict(h).is_vaisman
    assert h.algebra.dim == (4 if "h3" in tag.name else 6)


def test_product_family_brackets():
    g = build_family(FamilyTag(PRODUCT_H3)).algebra
    expected = LieAlgebra.from_brackets(
        4, {(2, 3): [0, 1, 0, 0]}, ("A", "B", "x", "y")
    )
    assert g == expected


def test_oscillator_family_matches_lattice_builder():
    assert (
        build_family(FamilyTag(OSCILLATOR_H3)).algebra
        == oscillator_algebra((1,)).algebra
    )
    assert (
        build_family(FamilyTag(OSCILLATOR_H5, Fraction(1))).algebra
        == oscillator_algebra((1, 1)).algebra
    )


# ---------------------------------------------------------------------------
# invariants


def test_invariants_of_standard_algebras():
    assert iso_invariant(abelian(4)) == IsoInvariant(4, 4, (0, 4), 4, None)
    assert iso_invariant(direct_sum(heisenberg(1), abelian(1))) == IsoInvariant(
        4, 4, (1, 2), 2, None
    )


def test_transverse_speeds_on_plain_oscillator():
    # basis (A, x1, y1, x2, y2, z): codimension-one Heisenberg nilradical
    inv = iso_invariant(oscillator((1, 2)))
    assert inv.transverse_speeds == (1, 2)
    assert inv.nilradical_profile == (1, 1)


def test_transverse_speeds_scale_invariant():
    g = build_family(FamilyTag(OSCILLATOR_H5, Fraction(1, 3))).algebra
    doubled = change_basis(
        g, Matrix.diagonal([Fraction(2), 1, 1, 1, 1, 1])
    )
    assert iso_invariant(doubled) == iso_invariant(g)


def test_real_eigenvalues_leave_speeds_undefined():
    assert iso_invariant(affine_line()).transverse_speeds is None


def test_fractional_ratio_normalizes():
    inv = family_invariant(FamilyTag(OSCILLATOR_H5, Fraction(2, 5)))
    assert inv.transverse_speeds == (2, 5)


# ---------------------------------------------------------------------------
# separation


def test_default_grid_size():
    assert len(dim6_family_tags()) == 8
    assert len(separation_report()) == 28


def test_exactly_one_pair_is_inseparable():
    report = separation_report()
    flagged = [p for p in report if not p.separated]
    assert len(flagged) == 1
    pair = flagged[0]
    assert {pair.left, pair.right} == {
        FamilyTag(OSCILLATOR_H5, Fraction(0)),
        FamilyTag(OSCILLATOR_SASAKI5),
    }


def test_named_separating_components():
    report = {
        frozenset((str(p.left), str(p.right))): p.separated_by
        for p in separation_report()
    }
    assert "nilradical_dim" in report[
        frozenset(("product-h5", "oscillator-sasaki5"))
    ]
    assert "nilradical_profile" in report[
        frozenset(("product-sasaki5", "oscillator-sasaki5"))
    ]
    assert "transverse_speeds" in report[
        frozenset(("oscillator-h5(r=1/3)", "oscillator-h5(r=1/2)"))
    ]


def test_inseparable_pair_is_genuinely_isomorphic():
    left_tag, right_tag, witness = catalogue_overlap()
    left = build_family(left_tag).algebra
    right = build_family(right_tag).algebra
    assert change_basis(right, witness) == left


def test_distinct_ratios_separate():
    grid = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    invariants = [family_invariant(FamilyTag(OSCILLATOR_H5, r)) for r in grid]
    assert len(set(invariants)) == len(grid)


# ---------------------------------------------------------------------------
# matching


@pytest.mark.parametrize("tag", ALL_TAGS, ids=str)
def test_catalogue_members_match_themselves(tag):
    got, _ = classify_catalogue(build_family(tag).algebra)
    if tag.name == OSCILLATOR_SASAKI5:
        # the overlap: the oscillator tag wins deterministically
        assert got == FamilyTag(OSCILLATOR_H5, Fraction(0))
    else:
        assert got == tag


def test_outside_catalogue():
    tag, inv = classify_catalogue(abelian(6))
    assert tag is None
    assert inv.dim == 6
    assert classify_catalogue(direct_sum(affine_line(), abelian(2)))[0] is None


def test_dim4_instances_land_in_two_classes():
    catalogue = {
        family_invariant(FamilyTag(PRODUCT_H3)),
        family_invariant(FamilyTag(OSCILLATOR_H3)),
    }
    for s in range(-3, 4):
        h = construct_vaisman(abelian_package((s,)))
        assert iso_invariant(h.algebra) in catalogue

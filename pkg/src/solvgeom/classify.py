"""Catalogue of the unimodular solvable Vaisman algebras in dimensions four
and six, with non-isomorphism certificates.

Every such algebra is a rank-two extension of a flat Kähler core, and in low
dimensions the cores are few: the abelian plane sums and the plane-rotation
algebra with a central line.  The catalogue therefore has two product / one
oscillator class in dimension four, and four families in dimension six — the
Heisenberg product, the rotation-speed oscillator family (one rational
parameter in [0, 1]), and the product and twisted extensions over the
rotation core.

Separation is certified by invariants only: dimension, nilradical size and
profile, center dimension, and the normalized rotation speeds of an outer
generator acting on the collapsed nilradical.  These are necessary
conditions — equal invariants never proves an isomorphism, with one
deliberate exception: the zero-parameter oscillator and the twisted
rotation-core extension really are the same algebra, and
:func:`catalogue_overlap` returns the explicit basis change witnessing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .hermitian import HermitianData, KahlerFlatPackage, construct_vaisman
from .lattices import OscillatorParams
from .liealgebras import (
    LieAlgebra,
    Subspace,
    abelian,
    center,
    derived_series,
    is_solvable,
    is_unimodular,
    nilradical,
    restrict_to_subalgebra,
    rotation_block,
    span,
    standard_vector,
)
from .matrices import Matrix, char_poly
from .metrics import Metric
from .polynomials import (
    Polynomial,
    all_roots_real_nonpositive,
    as_polynomial_in_square,
    split_root_at_zero,
)
from .rationals import RatLike, rat

PRODUCT_H3 = "product-h3"
OSCILLATOR_H3 = "oscillator-h3"
PRODUCT_H5 = "product-h5"
OSCILLATOR_H5 = "oscillator-h5"
PRODUCT_SASAKI5 = "product-sasaki5"
OSCILLATOR_SASAKI5 = "oscillator-sasaki5"

FAMILY_NAMES = (
    PRODUCT_H3,
    OSCILLATOR_H3,
    PRODUCT_H5,
    OSCILLATOR_H5,
    PRODUCT_SASAKI5,
    OSCILLATOR_SASAKI5,
)


@dataclass(frozen=True)
class FamilyTag:
    """A catalogue entry: a family name, plus the rotation-speed ratio r for
    the one family that has a parameter."""

    name: str
    r: Fraction | None = None

    def __post_init__(self) -> None:
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}")
        if self.name == OSCILLATOR_H5:
            if self.r is None:
                raise ValueError("the oscillator family needs its speed ratio r")
            object.__setattr__(self, "r", rat(self.r))
            if not 0 <= self.r <= 1:
                raise ValueError("the speed ratio must lie in [0, 1]")
        elif self.r is not None:
            raise ValueError(f"{self.name} takes no parameter")

    def __str__(self) -> str:
        if self.r is None:
            return self.name
        return f"{self.name}(r={self.r})"


def _plane_sum_package(speeds: tuple[Fraction, ...]) -> KahlerFlatPackage:
    n = len(speeds)
    cols = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        cols[2 * i][2 * i + 1] = 1
        cols[2 * i + 1][2 * i] = -1
    blocks = [rotation_block(a) for a in speeds]
    d = Matrix.build(
        2 * n,
        2 * n,
        lambda r, c: (
            blocks[r // 2][r % 2, c % 2] if r // 2 == c // 2 else Fraction(0)
        ),
    )
    return KahlerFlatPackage(
        abelian(2 * n), Metric.standard(2 * n), Matrix.from_columns(cols), d
    )


def _rotation_core_package(alpha: Fraction) -> KahlerFlatPackage:
    core = LieAlgebra.from_brackets(
        4, {(0, 1): [0, 0, 1, 0], (0, 2): [0, -1, 0, 0]}, ("H", "e", "f", "Z")
    )
    j = Matrix.from_columns(
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    )
    d = Matrix.build(
        4,
        4,
        lambda r, c: alpha if (r, c) == (2, 1) else -alpha if (r, c) == (1, 2) else 0,
    )
    return KahlerFlatPackage(core, Metric.standard(4), j, d)


def build_family(tag: FamilyTag) -> HermitianData:
    """The named algebra with its canonical Vaisman structure.

    Each family is produced by construct_vaisman over its flat Kähler core,
    so the result always carries the (A, B, ...) adapted basis and passes
    the full Vaisman verdict.
    """
    zero, one = Fraction(0), Fraction(1)
    if tag.name == PRODUCT_H3:
        return construct_vaisman(_plane_sum_package((zero,)))
    if tag.name == OSCILLATOR_H3:
        return construct_vaisman(_plane_sum_package((one,)))
    if tag.name == PRODUCT_H5:
        return construct_vaisman(_plane_sum_package((zero, zero)))
    if tag.name == OSCILLATOR_H5:
        assert tag.r is not None
        return construct_vaisman(_plane_sum_package((tag.r, one)))
    if tag.name == PRODUCT_SASAKI5:
        return construct_vaisman(_rotation_core_package(zero))
    return construct_vaisman(_rotation_core_package(one))


@dataclass(frozen=True)
class IsoInvariant:
    """Isomorphism invariants computable from structure constants alone.

    ``nilradical_profile`` is the pair (derived dimension, center dimension)
    of the nilradical as an algebra in its own right.  ``transverse_speeds``
    is the normalized tuple of rotation speeds of a generator complementing
    a codimension-one nilradical, acting on the nilradical modulo its
    derived ideal; it is None when the action is not a pure rotation with
    rational speeds (or the nilradical is not of codimension one).  Equal
    invariants are necessary, never sufficient, for an isomorphism.
    """

    dim: int
    nilradical_dim: int
    nilradical_profile: tuple[int, int]
    center_dim: int
    transverse_speeds: tuple[int, ...] | None


INVARIANT_COMPONENTS = (
    "dim",
    "nilradical_dim",
    "nilradical_profile",
    "center_dim",
    "transverse_speeds",
)


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


def _rational_roots(p: Polynomial) -> list[Fraction] | None:
    """All roots, with multiplicity, provided p splits over the rationals."""
    roots: list[Fraction] = []
    while p.degree > 0:
        scale = math.lcm(*(c.denominator for c in p.coeffs))
        ints = [int(c * scale) for c in p.coeffs]
        if ints[0] == 0:
            root = Fraction(0)
        else:
            root = None
            for num in _divisors(abs(ints[0])):
                for den in _divisors(abs(ints[-1])):
                    for candidate in (Fraction(num, den), Fraction(-num, den)):
                        if p(candidate) == 0:
                            root = candidate
                            break
                    if root is not None:
                        break
                if root is not None:
                    break
            if root is None:
                return None
        p, remainder = p.divmod(Polynomial([-root, 1]))
        assert remainder.is_zero()
        roots.append(root)
    return roots


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def _transverse_speeds(
    g: LieAlgebra, nil: Subspace
) -> tuple[int, ...] | None:
    if nil.dim != g.dim - 1:
        return None
    x = standard_vector(g.dim, nil.complement_standard_indices()[0])
    m = nil.dim
    inner = restrict_to_subalgebra(g, nil)
    ad = Matrix.from_columns(
        [list(nil.coordinates_of(g.bracket(x, nil.basis[j]))) for j in range(m)]
    )
    derived = span(
        m,
        [
            inner.bracket_basis(i, j)
            for i in range(m)
            for j in range(i + 1, m)
        ],
    )
    keep = derived.complement_standard_indices()
    change = Matrix.from_columns(
        [list(b) for b in derived.basis]
        + [list(standard_vector(m, i)) for i in keep]
    )
    conjugated = change.inverse() * ad * change
    d = derived.dim
    for r in range(d, m):
        for c in range(d):
            if conjugated[r, c] != 0:
                return None
    block = Matrix.build(m - d, m - d, lambda r, c: conjugated[r + d, c + d])
    zeros, q = split_root_at_zero(char_poly(block))
    if zeros % 2:
        return None
    squares: list[Fraction] = []
    if q.degree > 0:
        even = as_polynomial_in_square(q)
        if even is None or not all_roots_real_nonpositive(even):
            return None
        roots = _rational_roots(even.monic())
        if roots is None:
            return None
        for root in roots:
            speed = _fraction_sqrt(-root)
            if speed is None:
                return None
            squares.append(speed)
    speeds = [Fraction(0)] * (zeros // 2) + squares
    if all(v == 0 for v in speeds):
        return tuple(0 for _ in speeds)
    return OscillatorParams(speeds).a


def iso_invariant(g: LieAlgebra) -> IsoInvariant:
    """Invariants separating the catalogue members (necessary conditions)."""
    g.require_valid()
    nil = nilradical(g)
    inner = restrict_to_subalgebra(g, nil)
    return IsoInvariant(
        dim=g.dim,
        nilradical_dim=nil.dim,
        nilradical_profile=(derived_series(inner)[1].dim, center(inner).dim),
        center_dim=center(g).dim,
        transverse_speeds=_transverse_speeds(g, nil),
    )


def family_invariant(tag: FamilyTag) -> IsoInvariant:
    return iso_invariant(build_family(tag).algebra)


def dim6_family_tags(
    r_grid: tuple[RatLike, ...] = (
        0,
        Fraction(1, 3),
        Fraction(1, 2),
        Fraction(2, 3),
        1,
    ),
) -> tuple[FamilyTag, ...]:
    """The six-dimensional catalogue, with the oscillator family sampled on
    the given ratio grid."""
    return (
        FamilyTag(PRODUCT_H5),
        *(FamilyTag(OSCILLATOR_H5, rat(r)) for r in r_grid),
        FamilyTag(PRODUCT_SASAKI5),
        FamilyTag(OSCILLATOR_SASAKI5),
    )


@dataclass(frozen=True)
class PairSeparation:
    """Which invariant components tell two catalogue members apart; an empty
    tuple flags a pair no component separates."""

    left: FamilyTag
    right: FamilyTag
    separated_by: tuple[str, ...]

    @property
    def separated(self) -> bool:
        return bool(self.separated_by)


def separation_report(
    tags: tuple[FamilyTag, ...] | None = None,
) -> tuple[PairSeparation, ...]:
    """Pairwise separation of the catalogue by invariant components.

    One pair is genuinely inseparable — see :func:`catalogue_overlap` — and
    shows up here with an empty component list.
    """
    if tags is None:
        tags = dim6_family_tags()
    computed = [(tag, family_invariant(tag)) for tag in tags]
    report = []
    for i, (left, a) in enumerate(computed):
        for right, b in computed[i + 1 :]:
            separated_by = tuple(
                name
                for name in INVARIANT_COMPONENTS
                if getattr(a, name) != getattr(b, name)
            )
            report.append(PairSeparation(left, right, separated_by))
    return tuple(report)


def catalogue_overlap() -> tuple[FamilyTag, FamilyTag, Matrix]:
    """The one coincidence in the six-dimensional catalogue.

    The twisted rotation-core extension equals the zero-ratio oscillator:
    the returned matrix, whose columns express an adapted basis of the
    former, transports its structure constants exactly onto the latter's
    (check with change_basis).  The key is that the outer generator minus
    the core rotor acts trivially, and together with the former center it
    forms a second symplectic pair.
    """
    witness = Matrix.from_columns(
        [
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [1, 0, -1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
        ]
    )
    return FamilyTag(OSCILLATOR_H5, Fraction(0)), FamilyTag(OSCILLATOR_SASAKI5), witness


def classify_catalogue(g: LieAlgebra) -> tuple[FamilyTag | None, IsoInvariant]:
    """Match an algebra against the catalogue by invariants.

    Returns the tag whose family invariant coincides, or None when nothing
    matches (including non-solvable or non-unimodular input).  Matching is
    by necessary conditions; at the known catalogue overlap the oscillator
    tag wins deterministically.
    """
    inv = iso_invariant(g)
    if not (is_solvable(g) and is_unimodular(g)):
        return None, inv
    candidates: list[FamilyTag] = []
    if g.dim == 4:
        candidates = [FamilyTag(PRODUCT_H3), FamilyTag(OSCILLATOR_H3)]
    elif g.dim == 6:
        speeds = inv.transverse_speeds
        if speeds is not None and len(speeds) == 2 and speeds[1] != 0:
            candidates.append(
                FamilyTag(OSCILLATOR_H5, Fraction(speeds[0], speeds[1]))
            )
        candidates += [
            FamilyTag(PRODUCT_H5),
            FamilyTag(PRODUCT_SASAKI5),
            FamilyTag(OSCILLATOR_SASAKI5),
        ]
    for tag in candidates:
        if family_invariant(tag) == inv:
            return tag, inv
    return None, inv

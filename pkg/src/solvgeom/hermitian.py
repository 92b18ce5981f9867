"""Complex structures on metric Lie algebras and the verdicts built on them.

A compatible integrable complex structure J turns (g, ⟨·,·⟩) into Hermitian
data with fundamental 2-form ω(x, y) = ⟨Jx, y⟩.  The Lee form
θ = −1/(n−1)·(δω)∘J then decides, exactly, whether the structure is Kähler
(dω = 0), locally conformally Kähler (dω = θ∧ω with dθ = 0), or Vaisman
(LCK whose Lee dual acts by a skew-symmetric operator — the algebraic form
of a parallel Lee form).

Unimodular solvable Vaisman algebras split over the plane spanned by the
Lee dual A and its image JA: the orthogonal complement carries a flat
Kähler algebra together with a skew derivation commuting with J.
``reduce_vaisman`` extracts that core and ``construct_vaisman`` rebuilds
the algebra from it; the two are mutually inverse in the canonical ordered
basis (A, B, core basis).

One convention is load-bearing for every sign in this file: J acts on
1-forms by Jα := −α∘J.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .forms import (
    KForm,
    ce_differential,
    covector,
    one_form_from_values,
    two_form_from_matrix,
    wedge,
)
from .liealgebras import (
    LieAlgebra,
    Subspace,
    center,
    change_basis,
    derived_subalgebra,
    double_extension,
    is_derivation,
    is_solvable,
    is_unimodular,
    span,
    standard_vector,
)
from .matrices import (
    Matrix,
    Vector,
    char_poly,
    is_zero_vec,
    kernel_basis,
    vadd,
    vec,
    vscale,
    vsub,
)
from .metrics import (
    FlatDecomposition,
    Metric,
    codifferential,
    flat_decomposition,
    is_flat,
    levi_civita,
    restricted_operator,
)
from .polynomials import (
    Polynomial,
    all_roots_real_nonpositive,
    as_polynomial_in_square,
    split_root_at_zero,
)
from .rationals import RatLike


class ComplexStructure:
    """An exact complex structure: a rational matrix J with J² = −I.

    Integrability and metric compatibility involve extra data, so they are
    checked where that data is known (`is_integrable`, `HermitianData`).
    """

    __slots__ = ("matrix",)

    matrix: Matrix

    def __init__(self, matrix: Matrix | Sequence[Sequence[RatLike]]) -> None:
        j = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        if j.rows != j.cols:
            raise ValueError("complex structure matrix must be square")
        if not (j * j + Matrix.identity(j.rows)).is_zero():
            raise ValueError("complex structure must square to minus the identity")
        object.__setattr__(self, "matrix", j)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ComplexStructure is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def on_one_form(self, alpha: KForm) -> KForm:
        """Jα := −α∘J."""
        if alpha.degree != 1 or alpha.dim != self.dim:
            raise ValueError("need a 1-form of matching dimension")
        composed = self.matrix.transpose().apply(
            vec(alpha.value((i,)) for i in range(self.dim))
        )
        return one_form_from_values([-c for c in composed])

    def restricted(self, space: Subspace) -> "ComplexStructure":
        """J on an invariant subspace, in that subspace's basis coordinates."""
        return ComplexStructure(restricted_operator(space, self.matrix))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ComplexStructure):
            return self.matrix == other.matrix
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.matrix)


def _nijenhuis(g: LieAlgebra, jm: Matrix, x: Vector, y: Vector) -> Vector:
    jx, jy = jm.apply(x), jm.apply(y)
    mixed = vadd(g.bracket(jx, y), g.bracket(x, jy))
    return vsub(vsub(g.bracket(jx, jy), g.bracket(x, y)), jm.apply(mixed))


def nijenhuis(
    g: LieAlgebra,
    j: ComplexStructure,
    x: Sequence[Fraction],
    y: Sequence[Fraction],
) -> Vector:
    """N_J(x, y) = [Jx, Jy] − [x, y] − J([Jx, y] + [x, Jy])."""
    return _nijenhuis(g, j.matrix, vec(x), vec(y))


def _integrability_witness(g: LieAlgebra, jm: Matrix) -> tuple[int, int] | None:
    n = g.dim
    basis = [standard_vector(n, i) for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if not is_zero_vec(_nijenhuis(g, jm, basis[a], basis[b])):
                return (a, b)
    return None


def is_integrable(g: LieAlgebra, j: ComplexStructure) -> bool:
    """Vanishing of the Nijenhuis tensor on all basis pairs."""
    return _integrability_witness(g, j.matrix) is None


def is_metric_compatible(m: Metric, j: ComplexStructure) -> bool:
    """JᵀGJ = G, i.e. J is an isometry."""
    return j.matrix.transpose() * m.gram * j.matrix == m.gram


def fundamental_form(m: Metric, j: ComplexStructure) -> KForm:
    """ω(x, y) = ⟨Jx, y⟩ as an exact 2-form (coefficient matrix JᵀG)."""
    return two_form_from_matrix(j.matrix.transpose() * m.gram)


@dataclass(frozen=True)
class Check:
    """One named exact test, with a witness for the first failure."""

    name: str
    passed: bool
    witness: str | None = None


def _matrix_witness(m: Matrix) -> str | None:
    for i in range(m.rows):
        for j in range(m.cols):
            if m[i, j] != 0:
                return f"entry ({i}, {j}) is {m[i, j]}"
    return None


def _form_witness(f: KForm) -> str | None:
    if f.is_zero():
        return None
    idx = min(f.entries)
    return f"value {f.entries[idx]} on basis tuple {idx}"


def hermitian_certificate(
    algebra: LieAlgebra, metric: Metric, jm: Matrix
) -> tuple[bool, tuple[Check, ...]]:
    """The three Hermitian conditions as certificate entries.

    Shape errors raise; mathematical failures come back as failed checks so
    callers can report a verdict instead of crashing.
    """
    if jm.rows != jm.cols:
        raise ValueError("complex structure matrix must be square")
    if jm.rows != algebra.dim or metric.dim != algebra.dim:
        raise ValueError("metric/complex structure dimension mismatch")
    square_gap = jm * jm + Matrix.identity(algebra.dim)
    compat_gap = jm.transpose() * metric.gram * jm - metric.gram
    nij = _integrability_witness(algebra, jm)
    checks = (
        Check(
            "squares-to-minus-identity",
            square_gap.is_zero(),
            _matrix_witness(square_gap),
        ),
        Check("metric-compatible", compat_gap.is_zero(), _matrix_witness(compat_gap)),
        Check(
            "integrable",
            nij is None,
            None if nij is None else f"Nijenhuis tensor nonzero at basis pair {nij}",
        ),
    )
    return all(c.passed for c in checks), checks


class HermitianData:
    """A Lie algebra with compatible metric and integrable complex structure.

    Construction is the "is Hermitian" verdict: it raises unless J² = −I,
    JᵀGJ = G, and the Nijenhuis tensor vanishes on all basis pairs.  The
    fundamental form ω(x, y) = ⟨Jx, y⟩ is computed once; its antisymmetry,
    nondegeneracy, and J-invariance follow from the above and are asserted.
    """

    __slots__ = ("algebra", "metric", "j", "omega")

    algebra: LieAlgebra
    metric: Metric
    j: ComplexStructure
    omega: KForm

    def __init__(
        self,
        algebra: LieAlgebra,
        metric: Metric,
        j: ComplexStructure | Matrix | Sequence[Sequence[RatLike]],
    ) -> None:
        if not isinstance(j, ComplexStructure):
            j = ComplexStructure(j)
        ok, checks = hermitian_certificate(algebra, metric, j.matrix)
        if not ok:
            failed = next(c for c in checks if not c.passed)
            detail = f" ({failed.witness})" if failed.witness else ""
            raise ValueError(f"not Hermitian: {failed.name} fails{detail}")
        omega_matrix = j.matrix.transpose() * metric.gram
        assert omega_matrix.det() != 0, "fundamental form must be nondegenerate"
        assert (
            j.matrix.transpose() * omega_matrix * j.matrix == omega_matrix
        ), "fundamental form must be J-invariant"
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "omega", two_form_from_matrix(omega_matrix))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HermitianData is immutable")

    @property
    def dim(self) -> int:
        return self.algebra.dim


def lee_form(h: HermitianData) -> KForm:
    """θ = −1/(n−1)·(δω)∘J on a 2n-dimensional algebra, n ≥ 2.

    δ is the metric codifferential.  For a locally conformally Kähler
    structure this is the unique 1-form with dω = θ∧ω; the formula itself
    makes sense for every Hermitian structure of dimension at least 4.
    """
    dim = h.algebra.dim
    if dim < 4:
        raise ValueError("the Lee form needs dimension at least 4")
    half = dim // 2
    delta = codifferential(h.algebra, h.metric, h.omega)
    composed = h.j.matrix.transpose().apply(
        vec(delta.value((i,)) for i in range(dim))
    )
    factor = Fraction(-1, half - 1)
    return one_form_from_values([factor * c for c in composed])


@dataclass(frozen=True)
class LckVerdict:
    is_hermitian: bool
    is_kahler: bool
    is_lck: bool
    is_vaisman: bool
    lee_form: KForm
    lee_dual: Vector
    certificate: tuple[Check, ...]


def lck_verdict(h: HermitianData) -> LckVerdict:
    """Decide Kähler / locally conformally Kähler / Vaisman, exactly.

    Kähler: dω = 0.  LCK: dω = θ∧ω and dθ = 0 (so Kähler is the θ = 0
    degenerate case).  Vaisman: LCK with θ ≠ 0 whose metric dual A has
    skew-symmetric ad_A.  Every equation lands in the certificate, with a
    witness for the first failing entry.
    """
    g, m = h.algebra, h.metric
    theta = lee_form(h)
    a = m.dual_vector(theta)
    d_omega = ce_differential(g, h.omega)
    d_theta = ce_differential(g, theta)
    equation_gap = d_omega - wedge(theta, h.omega)
    kahler = d_omega.is_zero()
    equation_ok = equation_gap.is_zero()
    theta_closed = d_theta.is_zero()
    lck = equation_ok and theta_closed
    ad_a = g.ad(a)
    skew_gap = ad_a.transpose() * m.gram + m.gram * ad_a
    skew_ok = skew_gap.is_zero()
    theta_nonzero = not theta.is_zero()
    vaisman = lck and theta_nonzero and skew_ok

    if kahler:
        assert not theta_nonzero, "closed fundamental form forces a zero Lee form"
    if lck and is_unimodular(g):
        assert derived_subalgebra(g).contains(h.j.apply(a)), (
            "the J-image of the Lee dual must land in the derived ideal"
        )
    if vaisman:
        _assert_vaisman_identities(h, a)

    certificate = (
        Check("hermitian", True),
        Check("fundamental-form-closed", kahler, _form_witness(d_omega)),
        Check("lck-equation", equation_ok, _form_witness(equation_gap)),
        Check("lee-form-closed", theta_closed, _form_witness(d_theta)),
        Check(
            "lee-form-nonzero",
            theta_nonzero,
            None if theta_nonzero else "Lee form vanishes identically",
        ),
        Check("lee-dual-skew", skew_ok, _matrix_witness(skew_gap)),
    )
    return LckVerdict(
        is_hermitian=True,
        is_kahler=kahler,
        is_lck=lck,
        is_vaisman=vaisman,
        lee_form=theta,
        lee_dual=a,
        certificate=certificate,
    )


def _assert_vaisman_identities(h: HermitianData, a: Vector) -> None:
    """Exact consequences of the Vaisman condition, used as tripwires."""
    g, m, jm = h.algebra, h.metric, h.j.matrix
    ja = jm.apply(a)
    assert is_zero_vec(g.bracket(a, ja)), "the Lee dual must commute with its J-image"
    ad_a, ad_ja = g.ad(a), g.ad(ja)
    assert (jm * ad_a - ad_a * jm).is_zero(), "ad of the Lee dual must commute with J"
    assert (jm * ad_ja - ad_ja * jm).is_zero(), (
        "ad of the J-image of the Lee dual must commute with J"
    )
    assert (ad_ja.transpose() * m.gram + m.gram * ad_ja).is_zero(), (
        "ad of the J-image of the Lee dual must be skew"
    )


def kahler_flat_check(
    g: LieAlgebra, m: Metric, j: ComplexStructure | Matrix
) -> bool:
    """Decide whether a flat metric algebra with compatible J is Kähler.

    Two independent routes, asserted to agree: ∇J = J∇ on every basis
    direction, and the structural criterion on the flat decomposition —
    z ⊕ h and the derived ideal J-invariant, every ad_H commuting with J.
    Only parallelism of J is decided; integrability is not required here.
    """
    if not isinstance(j, ComplexStructure):
        j = ComplexStructure(j)
    if not is_metric_compatible(m, j):
        raise ValueError("complex structure is not compatible with the metric")
    fd = flat_decomposition(g, m)  # raises when the metric is not flat
    conn = levi_civita(g, m)
    jm = j.matrix
    n = g.dim
    parallel = all(
        (conn.operator(standard_vector(n, i)) * jm
         - jm * conn.operator(standard_vector(n, i))).is_zero()
        for i in range(n)
    )
    zh = fd.z.sum(fd.h)
    invariant = all(zh.contains(jm.apply(b)) for b in zh.basis) and all(
        fd.kprime.contains(jm.apply(b)) for b in fd.kprime.basis
    )
    commuting = all(
        (g.ad(hb) * jm - jm * g.ad(hb)).is_zero() for hb in fd.h.basis
    )
    structural = invariant and commuting
    assert parallel == structural, (
        "the parallel-J and decomposition criteria must agree"
    )
    return parallel


class KahlerFlatPackage:
    """A flat Kähler Lie algebra plus a skew derivation commuting with J.

    Exactly the data from which the rank-two extension produces a Vaisman
    algebra, and exactly what reducing one returns.  Construction validates
    everything: the Hermitian invariants, dω = 0, zero curvature, the
    Leibniz rule for the derivation, its skewness, and [D, J] = 0.
    """

    __slots__ = ("algebra", "metric", "j", "omega", "derivation")

    algebra: LieAlgebra
    metric: Metric
    j: ComplexStructure
    omega: KForm
    derivation: Matrix

    def __init__(
        self,
        algebra: LieAlgebra,
        metric: Metric,
        j: ComplexStructure | Matrix | Sequence[Sequence[RatLike]],
        derivation: Matrix | Sequence[Sequence[RatLike]],
    ) -> None:
        herm = HermitianData(algebra, metric, j)
        if not ce_differential(algebra, herm.omega).is_zero():
            raise ValueError("fundamental form is not closed: Hermitian but not Kähler")
        flat = is_flat(algebra, metric)
        if not flat:
            raise ValueError(
                f"metric is not flat (curvature witness at basis triple {flat.witness})"
            )
        d = derivation if isinstance(derivation, Matrix) else Matrix(derivation)
        if not is_derivation(algebra, d):
            raise ValueError("the operator violates the Leibniz rule")
        if not (d.transpose() * metric.gram + metric.gram * d).is_zero():
            raise ValueError("the derivation is not skew for the metric")
        jm = herm.j.matrix
        if not (d * jm - jm * d).is_zero():
            raise ValueError("the derivation does not commute with the complex structure")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "j", herm.j)
        object.__setattr__(self, "omega", herm.omega)
        object.__setattr__(self, "derivation", d)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("KahlerFlatPackage is immutable")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __eq__(self, other: object) -> bool:
        if isinstance(other, KahlerFlatPackage):
            return (
                self.algebra == other.algebra
                and self.metric == other.metric
                and self.j == other.j
                and self.derivation == other.derivation
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.algebra, self.metric, self.j, self.derivation))


def construct_vaisman(p: KahlerFlatPackage) -> HermitianData:
    """Extend a flat Kähler package to a Vaisman algebra.

    Appends a central generator B paired into by ω and a line A acting by
    the derivation, ordered canonically as (A, B, core basis).  The metric
    makes A and B unit vectors orthogonal to everything else, and J is
    extended by JA = B.  The result is asserted to be unimodular, solvable,
    and Vaisman, with Lee form the metric dual of A.
    """
    k = p.algebra
    inner = k.dim
    lifted = Matrix.build(
        inner + 1,
        inner + 1,
        lambda r, c: p.derivation[r, c] if r < inner and c < inner else 0,
    )
    stacked = double_extension(k, p.omega, lifted)  # basis (A, core…, B)
    n = stacked.dim
    order = [0, n - 1] + list(range(1, n - 1))
    perm = Matrix.from_columns([standard_vector(n, i) for i in order])
    core_labels = tuple(k.labels)
    if len({"A", "B", *core_labels}) != inner + 2:
        core_labels = tuple(f"k{i + 1}" for i in range(inner))
    g = change_basis(stacked, perm, ("A", "B") + core_labels)

    gram = Matrix.build(
        n,
        n,
        lambda r, c: (
            Fraction(int(r == c))
            if r < 2 or c < 2
            else p.metric.gram[r - 2, c - 2]
        ),
    )

    def j_entry(r: int, c: int) -> Fraction:
        if c == 0:
            return Fraction(int(r == 1))
        if c == 1:
            return Fraction(-int(r == 0))
        return p.j.matrix[r - 2, c - 2] if r >= 2 else Fraction(0)

    herm = HermitianData(g, Metric(gram), ComplexStructure(Matrix.build(n, n, j_entry)))
    verdict = lck_verdict(herm)
    assert verdict.is_vaisman, "the extension of a Kähler flat package must be Vaisman"
    assert is_unimodular(g), "the extension must be unimodular"
    assert is_solvable(g), "the extension must be solvable"
    assert verdict.lee_form == covector(n, 0), (
        "the Lee form must be dual to the appended line"
    )
    return herm


@dataclass(frozen=True)
class VaismanReduction:
    """Output of `reduce_vaisman`: the flat Kähler core with its derivation,
    plus the data locating that core inside the original algebra."""

    package: KahlerFlatPackage
    lee_dual: Vector
    anti_lee: Vector
    complement: Subspace
    scale: Fraction
    structure: HermitianData
    verdict: LckVerdict


def reduce_vaisman(h: HermitianData) -> VaismanReduction:
    """Split a unimodular solvable Vaisman algebra over its Lee plane.

    The metric is first rescaled by |A|² — a rational factor — so the Lee
    dual A becomes a unit vector while the Lee form stays put.  W is the
    orthogonal complement of span{A, JA}; the bracket splits on ker θ as
    [x, y] = ω(x, y)·JA + [x, y]_W, and the W-component together with the
    restricted metric, J, and ad_A comes back as a validated
    KahlerFlatPackage.
    """
    g = h.algebra
    first = lck_verdict(h)
    if not first.is_vaisman:
        failing = ", ".join(c.name for c in first.certificate if not c.passed)
        raise ValueError(f"structure is not Vaisman (failing: {failing})")
    if not is_unimodular(g):
        raise ValueError("reduction needs a unimodular algebra")
    if not is_solvable(g):
        raise ValueError("reduction needs a solvable algebra")

    scale = h.metric.norm_squared(first.lee_dual)
    if scale == 1:
        data, verdict = h, first
    else:
        data = HermitianData(g, h.metric.scaled(scale), h.j)
        verdict = lck_verdict(data)
        assert verdict.is_vaisman, "rescaling the metric must preserve Vaisman"
    verdict = replace(
        verdict,
        certificate=verdict.certificate
        + (Check("unit-normalization", True, f"Gram matrix scaled by {scale}"),),
    )
    m = data.metric
    a = verdict.lee_dual
    assert m.norm_squared(a) == 1, "the rescaled Lee dual must be a unit vector"
    ja = data.j.apply(a)
    n = g.dim

    central = center(g)
    assert central.contains(ja), "the J-image of the Lee dual must be central"
    lee_plane = span(n, [a, ja])
    assert lee_plane.contains_subspace(central), "the center must lie in the Lee plane"

    w = lee_plane.orthogonal_complement(m.gram)
    theta = verdict.lee_form
    kernel = Subspace(
        n, kernel_basis(Matrix([[theta.value((i,)) for i in range(n)]]))
    )
    assert kernel == span(n, [ja]).sum(w), "ker θ must split as ℝ·JA ⊕ W"

    wb = w.basis
    core_dim = len(wb)
    brackets: dict[tuple[int, int], Vector] = {}
    for i in range(core_dim):
        for jdx in range(i + 1, core_dim):
            full = g.bracket(wb[i], wb[jdx])
            inside = vsub(full, vscale(data.omega(wb[i], wb[jdx]), ja))
            assert w.contains(inside), (
                "brackets on W must decompose as ω(x, y)·JA plus a W-part"
            )
            brackets[(i, jdx)] = w.coordinates_of(inside)
    core = LieAlgebra.from_brackets(core_dim, brackets)
    core_metric = Metric(Matrix([[m.inner(x, y) for y in wb] for x in wb]))
    core_j = data.j.restricted(w)
    core_d = restricted_operator(w, g.ad(a))
    package = KahlerFlatPackage(core, core_metric, core_j, core_d)
    return VaismanReduction(
        package=package,
        lee_dual=a,
        anti_lee=ja,
        complement=w,
        scale=scale,
        structure=data,
        verdict=verdict,
    )


@dataclass(frozen=True)
class NilradicalPrediction:
    """Commutator ideal and nilradical of a reduced Vaisman algebra, read off
    the shape of the derivation on the flat core (no ad-nilpotency search)."""

    commutator: Subspace
    nilradical: Subspace
    profile: tuple[int, int]
    case: str


def predict_nilradical(red: VaismanReduction) -> NilradicalPrediction:
    """Predict commutator and nilradical from the reduction data.

    Split the core as z ⊕ h ⊕ k′ and set u = z ∩ Jz.  The commutator of the
    ambient algebra is ℝ·JA ⊕ D(u) ⊕ k′.  The nilradical always contains
    ℝ·JA ⊕ z ⊕ k′ and picks up one extra line exactly when D vanishes on u
    and acts on k′ like some −ad_H: the line through A + H (H = 0 allowed).
    It is always abelian-times-Heisenberg; `profile` (p, q) names
    ℝ^p × h_{2q+1}.
    """
    p = red.package
    g = red.structure.algebra
    n = g.dim
    fd = flat_decomposition(p.algebra, p.metric)
    core_dim = p.algebra.dim
    jm = p.j.matrix
    jz = span(core_dim, [jm.apply(b) for b in fd.z.basis])
    u = fd.z.intersection(jz)
    d = p.derivation

    embed_cols = Matrix.from_columns([list(b) for b in red.complement.basis])

    def embed(vectors: Sequence[Vector]) -> list[Vector]:
        return [embed_cols.apply(v) for v in vectors]

    d_u_image = [d.apply(b) for b in u.basis]
    commutator = span(
        n, [red.anti_lee] + embed(d_u_image) + embed(fd.kprime.basis)
    )
    base = [red.anti_lee] + embed(fd.z.basis) + embed(fd.kprime.basis)

    two_r = u.dim + fd.kprime.dim
    assert two_r % 2 == 0, "u and the derived ideal must have even total dimension"
    r = two_r // 2
    s = fd.z.dim - u.dim

    d_kills_u = all(is_zero_vec(v) for v in d_u_image)
    extra: Vector | None = None
    jh_inside = False
    if d_kills_u:
        # skew + commuting with J forces D to vanish on h and Jh, so D is
        # determined by its action on u and k′ alone
        for b in fd.h.basis:
            assert is_zero_vec(d.apply(b)), "unitary derivations must kill h"
            assert is_zero_vec(d.apply(jm.apply(b))), "unitary derivations must kill Jh"
        matched = _match_in_h_action(fd, d)
        if matched is not None:
            if is_zero_vec(matched):
                case = "lee-dual-central"
                extra = red.lee_dual
                profile = (s + 1, r)
            else:
                case = "lee-dual-shifted"
                extra = vadd(red.lee_dual, embed_cols.apply(matched))
                jh_inside = fd.h.contains(jm.apply(matched))
                if jh_inside:
                    profile = (s + 1, r)
                else:
                    assert s >= 1, "J moving H out of h forces a central direction"
                    profile = (s - 1, r + 1)
        else:
            case = "no-extra-generator"
            profile = (s, r)
    else:
        case = "no-extra-generator"
        profile = (s, r)

    nil = span(n, base if extra is None else base + [extra])
    return NilradicalPrediction(commutator, nil, profile, case)


def _match_in_h_action(fd: "FlatDecomposition", d: Matrix) -> Vector | None:
    """Solve D|_{k′} = −ad_H|_{k′} for H ∈ h; None when no solution exists.

    The zero vector solves it exactly when D kills the derived ideal.
    Uniqueness comes from injectivity of the h-action, which the flat
    decomposition guarantees, so any kernel vector with nonzero last
    coordinate determines H.
    """
    kp = fd.kprime
    d_restricted = restricted_operator(kp, d)
    zero = tuple(Fraction(0) for _ in range(fd.algebra.dim))
    if fd.h.dim == 0:
        return zero if d_restricted.is_zero() else None
    g = fd.algebra
    columns = [
        [x for row in restricted_operator(kp, g.ad(hb)).to_lists() for x in row]
        for hb in fd.h.basis
    ]
    target = [x for row in d_restricted.to_lists() for x in row]
    augmented = Matrix.from_columns(columns + [target])
    for sol in kernel_basis(augmented):
        if sol[-1] != 0:
            coeffs = [c / sol[-1] for c in sol[:-1]]
            h_vec = [Fraction(0)] * fd.algebra.dim
            for c, hb in zip(coeffs, fd.h.basis):
                for idx, comp in enumerate(hb):
                    h_vec[idx] += c * comp
            return tuple(h_vec)
    return None


@dataclass(frozen=True)
class SpectrumReport:
    all_imaginary: bool
    witness: Vector | None = None

    def __bool__(self) -> bool:
        return self.all_imaginary


def spectrum_all_imaginary(
    g: LieAlgebra, samples: int = 100, seed: int = 0
) -> SpectrumReport:
    """Do the operators ad_x have purely imaginary spectrum?

    Exact per vector: the characteristic polynomial must satisfy
    p(λ) = (−1)^dim·p(−λ), and writing p(λ) = λ^m·r(λ²) every root of r
    must be real and ≤ 0 (decided by Sturm counts).  Every basis vector is
    checked, then `samples` seeded random rational vectors with numerators
    in [−9, 9] and denominators in [1, 4]; the first failing vector is the
    witness.
    """
    rng = random.Random(seed)
    n = g.dim
    candidates: list[Vector] = [standard_vector(n, i) for i in range(n)]
    for _ in range(samples):
        candidates.append(
            vec(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
        )
    for x in candidates:
        if not _poly_spectrum_imaginary(char_poly(g.ad(x))):
            return SpectrumReport(False, tuple(x))
    return SpectrumReport(True, None)


def _poly_spectrum_imaginary(p: Polynomial) -> bool:
    reflected = p.reflect_argument()
    if p.degree % 2 == 1:
        reflected = -reflected
    if p != reflected:
        return False
    _, stripped = split_root_at_zero(p)
    squared = as_polynomial_in_square(stripped)
    if squared is None:
        return False
    return all_roots_real_nonpositive(squared)

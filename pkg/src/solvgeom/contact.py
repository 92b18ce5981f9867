"""Almost contact metric structures, Sasakian/coKähler verdicts, and the
left-symmetric products living on flat central extensions.

An almost contact metric structure (φ, ξ, η, ⟨·,·⟩) on an odd-dimensional
algebra is validated exactly at construction.  The verdict layer decides
normality (N_φ = −dη⊗ξ), the Sasakian pairing dη(x, y) = −⟨φx, y⟩ — in
that sign convention and, independently, in the rescaled convention
dη = 2Φ — and the coKähler condition dη = dΦ = 0 with normality.

The bridge functions connect the Hermitian layer to this one in both
directions: a Vaisman algebra carries a Sasakian structure on the kernel
of its Lee form and a coKähler structure on the quotient-like semidirect
summand spanned by the Lee dual and the flat core; a Sasakian algebra
with center spanned by ξ reduces to a Kähler algebra on ker η.

Left-symmetric products come from parallel 2-forms on flat algebras:
(aξ + x)·(bξ + y) = ½β(x, y)ξ + ∇_x y on the central extension, with both
defining identities asserted and completeness certified by sampling
det(I + ρ(x)) plus, in low dimension, expanding that determinant
symbolically over the coordinate ring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .forms import KForm, ce_differential, one_form_from_values, two_form_from_matrix
from .hermitian import (
    Check,
    HermitianData,
    VaismanReduction,
    _form_witness,
    _matrix_witness,
    lck_verdict,
    reduce_vaisman,
)
from .liealgebras import (
    LieAlgebra,
    Subspace,
    center,
    central_extension,
    change_basis,
    is_solvable,
    is_unimodular,
    restrict_to_subalgebra,
    semidirect_sum,
    span,
    standard_vector,
)
from .matrices import (
    Matrix,
    Vector,
    is_zero_vec,
    kernel_basis,
    vadd,
    vec,
    vscale,
    vsub,
    zero_vec,
)
from .metrics import Metric, is_flat, levi_civita
from .rationals import RatLike


class AlmostContactStructure:
    """(g, ⟨·,·⟩, φ, ξ, η) on an odd-dimensional algebra, checked exactly.

    Construction enforces η(ξ) = 1, φ² = −I + η⊗ξ, and the compatibility
    ⟨φx, φy⟩ = ⟨x, y⟩ − η(x)η(y) on all basis pairs.  The fundamental form
    Φ(x, y) = ⟨φx, y⟩ is computed once and stored.
    """

    __slots__ = ("algebra", "metric", "phi", "xi", "eta", "fundamental")

    algebra: LieAlgebra
    metric: Metric
    phi: Matrix
    xi: Vector
    eta: KForm
    fundamental: KForm

    def __init__(
        self,
        algebra: LieAlgebra,
        metric: Metric,
        phi: Matrix | Sequence[Sequence[RatLike]],
        xi: Sequence[RatLike],
        eta: KForm | Sequence[RatLike],
    ) -> None:
        n = algebra.dim
        if n % 2 == 0:
            raise ValueError("almost contact structures need odd dimension")
        p = phi if isinstance(phi, Matrix) else Matrix(phi)
        if p.rows != n or p.cols != n or metric.dim != n:
            raise ValueError("structure tensors do not match the algebra dimension")
        xi_vec = vec(xi)
        if len(xi_vec) != n:
            raise ValueError("Reeb vector has the wrong length")
        eta_form = eta if isinstance(eta, KForm) else one_form_from_values(eta)
        if eta_form.degree != 1 or eta_form.dim != n:
            raise ValueError("η must be a 1-form on the algebra")

        if eta_form(xi_vec) != 1:
            raise ValueError("η(ξ) must equal 1")
        eta_values = [eta_form.value((i,)) for i in range(n)]
        corrector = Matrix.build(n, n, lambda r, c: xi_vec[r] * eta_values[c])
        if not (p * p + Matrix.identity(n) - corrector).is_zero():
            raise ValueError("φ² must equal −I + η⊗ξ")
        compat_gap = p.transpose() * metric.gram * p - metric.gram + Matrix.build(
            n, n, lambda r, c: eta_values[r] * eta_values[c]
        )
        if not compat_gap.is_zero():
            raise ValueError("⟨φx, φy⟩ must equal ⟨x, y⟩ − η(x)η(y)")

        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "phi", p)
        object.__setattr__(self, "xi", xi_vec)
        object.__setattr__(self, "eta", eta_form)
        object.__setattr__(
            self, "fundamental", two_form_from_matrix(p.transpose() * metric.gram)
        )

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("AlmostContactStructure is immutable")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def rescaled(self) -> "AlmostContactStructure":
        """The conventional rescaling ⟨·,·⟩ → ¼⟨·,·⟩, η → −½η, ξ → −2ξ
        that turns the pairing dη = −Φ into dη = 2Φ."""
        return AlmostContactStructure(
            self.algebra,
            self.metric.scaled(Fraction(1, 4)),
            self.phi,
            vscale(Fraction(-2), self.xi),
            self.eta * Fraction(-1, 2),
        )


def _phi_nijenhuis(g: LieAlgebra, p: Matrix, x: Vector, y: Vector) -> Vector:
    """N_φ(x,y) = φ²[x,y] + [φx,φy] − φ[φx,y] − φ[x,φy]."""
    px, py = p.apply(x), p.apply(y)
    mixed = vadd(g.bracket(px, y), g.bracket(x, py))
    return vsub(
        vadd(p.apply(p.apply(g.bracket(x, y))), g.bracket(px, py)),
        p.apply(mixed),
    )


@dataclass(frozen=True)
class ContactVerdict:
    is_normal: bool
    is_sasakian_paper: bool
    is_sasakian_standard: bool
    is_almost_cokahler: bool
    is_cokahler: bool
    certificate: tuple[Check, ...]


def contact_verdict(a: AlmostContactStructure) -> ContactVerdict:
    """Decide normality, both Sasakian conventions, and coKähler, exactly.

    Normality is N_φ(x, y) + dη(x, y)ξ = 0 on all basis pairs.  The two
    Sasakian flags pin opposite sign conventions — dη = −Φ directly, and
    dη = 2Φ on the rescaled structure — and are asserted to agree.  When
    the structure is coKähler, φ is additionally asserted ∇-parallel.
    """
    g, m = a.algebra, a.metric
    n = g.dim
    d_eta = ce_differential(g, a.eta)
    d_fund = ce_differential(g, a.fundamental)

    normal_witness: str | None = None
    for i in range(n):
        for j in range(i + 1, n):
            x, y = standard_vector(n, i), standard_vector(n, j)
            gap = vadd(
                _phi_nijenhuis(g, a.phi, x, y),
                vscale(d_eta.value((i, j)), a.xi),
            )
            if not is_zero_vec(gap):
                normal_witness = f"basis pair ({i}, {j})"
                break
        if normal_witness is not None:
            break
    normal = normal_witness is None

    pairing_gap = d_eta + a.fundamental  # dη = −Φ
    pairing = pairing_gap.is_zero()

    scaled = a.rescaled()
    scaled_gap = ce_differential(g, scaled.eta) - scaled.fundamental * 2
    scaled_pairing = scaled_gap.is_zero()

    eta_closed = d_eta.is_zero()
    fund_closed = d_fund.is_zero()
    almost_cokahler = eta_closed and fund_closed
    cokahler = almost_cokahler and normal

    sasakian_paper = normal and pairing
    sasakian_standard = normal and scaled_pairing
    assert sasakian_paper == sasakian_standard, (
        "the two Sasakian conventions must agree after rescaling"
    )

    if cokahler:
        conn = levi_civita(g, m)
        for i in range(n):
            op = conn.operator(standard_vector(n, i))
            assert (op * a.phi - a.phi * op).is_zero(), (
                "a coKähler structure must have parallel φ"
            )

    certificate = (
        Check("normal", normal, normal_witness),
        Check("contact-pairing", pairing, _form_witness(pairing_gap)),
        Check("rescaled-contact-pairing", scaled_pairing, _form_witness(scaled_gap)),
        Check("eta-closed", eta_closed, _form_witness(d_eta)),
        Check("fundamental-closed", fund_closed, _form_witness(d_fund)),
    )
    return ContactVerdict(
        is_normal=normal,
        is_sasakian_paper=sasakian_paper,
        is_sasakian_standard=sasakian_standard,
        is_almost_cokahler=almost_cokahler,
        is_cokahler=cokahler,
        certificate=certificate,
    )


def sasakian_kernel_reduction(a: AlmostContactStructure) -> HermitianData:
    """Project a Sasakian algebra with center ℝξ onto a Kähler algebra.

    k = ker η with the bracket [x, y] − η([x, y])ξ, the restricted metric,
    and J = φ|_k.  The result is asserted Kähler; when the input is
    unimodular and solvable its metric is additionally asserted flat.
    """
    verdict = contact_verdict(a)
    if not verdict.is_sasakian_paper:
        failing = ", ".join(c.name for c in verdict.certificate if not c.passed)
        raise ValueError(f"structure is not Sasakian (failing: {failing})")
    g = a.algebra
    n = g.dim
    if center(g) != span(n, [a.xi]):
        raise ValueError("center is not spanned by ξ")

    eta_row = Matrix([[a.eta.value((i,)) for i in range(n)]])
    w = Subspace(n, kernel_basis(eta_row))
    wb = w.basis
    k_dim = w.dim
    brackets: dict[tuple[int, int], Vector] = {}
    for i in range(k_dim):
        for j in range(i + 1, k_dim):
            full = g.bracket(wb[i], wb[j])
            projected = vsub(full, vscale(a.eta(full), a.xi))
            brackets[(i, j)] = w.coordinates_of(projected)
    k = LieAlgebra.from_brackets(k_dim, brackets)
    k.require_valid()
    k_metric = Metric(Matrix([[a.metric.inner(x, y) for y in wb] for x in wb]))
    phi_k = Matrix.from_columns([w.coordinates_of(a.phi.apply(b)) for b in wb])
    data = HermitianData(k, k_metric, phi_k)
    assert ce_differential(k, data.omega).is_zero(), (
        "the kernel of a Sasakian structure must be Kähler"
    )
    if is_unimodular(g) and is_solvable(g):
        assert is_flat(k, k_metric), (
            "unimodular solvable Sasakian algebras reduce to flat Kähler cores"
        )
    return data


def vaisman_contact_slice(h: HermitianData) -> AlmostContactStructure:
    """The Sasakian-type structure a Vaisman algebra induces on ker θ.

    The metric is normalized so the Lee dual A is a unit vector; on the
    kernel of θ (a subalgebra, θ being closed) the structure is
    φ = projection of J along A, ξ = JA, η(x) = −θ(Jx).
    """
    v = lck_verdict(h)
    if not v.is_vaisman:
        raise ValueError("structure is not Vaisman")
    scale = h.metric.norm_squared(v.lee_dual)
    if scale != 1:
        h = HermitianData(h.algebra, h.metric.scaled(scale), h.j)
        v = lck_verdict(h)
    g = h.algebra
    n = g.dim
    a_vec = v.lee_dual
    ja = h.j.apply(a_vec)
    theta_values = [v.lee_form.value((i,)) for i in range(n)]

    w = Subspace(n, kernel_basis(Matrix([theta_values])))
    k = restrict_to_subalgebra(g, w)
    wb = w.basis
    k_metric = Metric(Matrix([[h.metric.inner(x, y) for y in wb] for x in wb]))

    def project(vector: Vector) -> Vector:
        jx = h.j.apply(vector)
        return w.coordinates_of(vsub(jx, vscale(v.lee_form(jx), a_vec)))

    phi = Matrix.from_columns([project(b) for b in wb])
    xi = w.coordinates_of(ja)
    eta = [-v.lee_form(h.j.apply(b)) for b in wb]
    return AlmostContactStructure(k, k_metric, phi, xi, eta)


@dataclass(frozen=True)
class CokahlerReduction:
    """A Vaisman algebra collapsed onto ℝA ⋉ (flat Kähler core), carrying
    the coKähler structure φ = J on the core, ξ = A, η = θ."""

    structure: AlmostContactStructure
    verdict: ContactVerdict
    vaisman: VaismanReduction


def vaisman_to_cokahler(h: HermitianData) -> CokahlerReduction:
    """Collapse a Vaisman algebra along ℝ·JA to a coKähler algebra.

    d = ℝA ⋉_{D} core in the basis (A, core…); the verdict is asserted
    coKähler, the metric flat, and extending d centrally by the
    fundamental form must reproduce the input algebra in the ordered
    basis (A, core basis, JA) — structure constants on the nose.
    """
    red = reduce_vaisman(h)
    core = red.package
    d = semidirect_sum(core.derivation, core.algebra)
    n_d = d.dim

    gram = Matrix.build(
        n_d,
        n_d,
        lambda r, c: (
            Fraction(int(r == c))
            if r == 0 or c == 0
            else core.metric.gram[r - 1, c - 1]
        ),
    )
    phi = Matrix.build(
        n_d,
        n_d,
        lambda r, c: core.j.matrix[r - 1, c - 1] if r > 0 and c > 0 else Fraction(0),
    )
    structure = AlmostContactStructure(
        d,
        Metric(gram),
        phi,
        standard_vector(n_d, 0),
        [Fraction(int(i == 0)) for i in range(n_d)],
    )
    verdict = contact_verdict(structure)
    assert verdict.is_cokahler, "the Vaisman collapse must be coKähler"
    assert is_flat(d, structure.metric), "the collapsed algebra must be flat"

    ambient = red.structure.algebra
    adapted = Matrix.from_columns(
        [list(red.lee_dual)]
        + [list(b) for b in red.complement.basis]
        + [list(red.anti_lee)]
    )
    rebuilt = central_extension(d, structure.fundamental)
    assert change_basis(ambient, adapted) == rebuilt, (
        "centrally extending the collapse must reproduce the algebra"
    )
    return CokahlerReduction(structure=structure, verdict=verdict, vaisman=red)


# ---------------------------------------------------------------------------
# left-symmetric products


class LsaProduct:
    """A left-symmetric product compatible with a Lie algebra's bracket.

    `table[i][j]` holds e_i · e_j.  Construction asserts the torsion
    condition x·y − y·x = [x, y] on all basis pairs and left-symmetry of
    the associator on all basis triples.
    """

    __slots__ = ("algebra", "table")

    algebra: LieAlgebra
    table: tuple[tuple[Vector, ...], ...]

    def __init__(
        self,
        algebra: LieAlgebra,
        table: Sequence[Sequence[Sequence[RatLike]]],
    ) -> None:
        n = algebra.dim
        rows = tuple(tuple(vec(entry) for entry in row) for row in table)
        if len(rows) != n or any(
            len(row) != n or any(len(e) != n for e in row) for row in rows
        ):
            raise ValueError("product table does not match the algebra dimension")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "table", rows)
        for i in range(n):
            for j in range(i + 1, n):
                gap = vsub(vsub(rows[i][j], rows[j][i]), algebra.bracket_basis(i, j))
                if not is_zero_vec(gap):
                    raise ValueError(
                        f"product does not reproduce the bracket at pair ({i}, {j})"
                    )
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = vsub(
                        self.multiply(rows[i][j], standard_vector(n, k)),
                        self.multiply(standard_vector(n, i), rows[j][k]),
                    )
                    right = vsub(
                        self.multiply(rows[j][i], standard_vector(n, k)),
                        self.multiply(standard_vector(n, j), rows[i][k]),
                    )
                    if left != right:
                        raise ValueError(
                            f"associator is not left-symmetric at triple ({i}, {j}, {k})"
                        )

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LsaProduct is immutable")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        n = self.dim
        out = list(zero_vec(n))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                w = xi * yj
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] += w * c
        return tuple(out)

    def rho(self, x: Sequence[Fraction]) -> Matrix:
        """Right multiplication y ↦ y·x."""
        n = self.dim
        return Matrix.from_columns(
            [self.multiply(standard_vector(n, j), x) for j in range(n)]
        )


def lsa_from_central_extension(
    algebra: LieAlgebra, metric: Metric, beta: KForm
) -> LsaProduct:
    """The left-symmetric product (aξ+x)·(bξ+y) = ½β(x, y)ξ + ∇_x y on the
    central extension of a flat algebra by a ∇-parallel 2-form.

    Flatness of the metric and exact parallelism of β are required; both
    defining identities of the product are asserted downstream by the
    LsaProduct constructor.
    """
    if beta.degree != 2 or beta.dim != algebra.dim:
        raise ValueError("need a 2-form on the algebra")
    report = is_flat(algebra, metric)
    if not report:
        raise ValueError(
            f"metric is not flat (curvature witness at basis triple {report.witness})"
        )
    conn = levi_civita(algebra, metric)
    n = algebra.dim
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                gap = beta(conn.gamma[i][j], standard_vector(n, k)) + beta(
                    standard_vector(n, j), conn.gamma[i][k]
                )
                if gap != 0:
                    raise ValueError(
                        f"the 2-form is not parallel (∇ witness at ({i}, {j}, {k}))"
                    )
    ext = central_extension(algebra, beta)
    half = Fraction(1, 2)
    table = [[list(zero_vec(n + 1)) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            entry = list(conn.gamma[i][j]) + [half * beta.value((i, j))]
            table[i][j] = entry
    return LsaProduct(ext, table)


@dataclass(frozen=True)
class CompletenessReport:
    """Outcome of completeness sampling: a witness kills completeness; the
    nilpotency certificate and the symbolic determinant strengthen it."""

    complete: bool
    witness: Vector | None
    nilpotent_certificate: bool
    universal: bool | None

    def __bool__(self) -> bool:
        return self.complete


def lsa_completeness(
    p: LsaProduct, samples: int = 100, seed: int = 0
) -> CompletenessReport:
    """Certify completeness: det(I + ρ(x)) ≠ 0 for every sampled x.

    Checked on all basis vectors, all pairwise basis sums, and `samples`
    seeded random rational vectors.  `nilpotent_certificate` reports the
    sufficient condition ρ(x)^dim = 0 across all candidates; `universal`
    is True when (dimension ≤ 6 only) det(I + ρ(x)) expands symbolically
    to the constant 1, and None when the expansion is skipped or
    inconclusive.
    """
    n = p.dim
    rng = random.Random(seed)
    candidates: list[Vector] = [standard_vector(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            candidates.append(vadd(candidates[i], candidates[j]))
    for _ in range(samples):
        candidates.append(
            vec(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
        )

    identity = Matrix.identity(n)
    witness: Vector | None = None
    nilpotent = True
    for x in candidates:
        r = p.rho(x)
        if (identity + r).det() == 0:
            witness = tuple(x)
            nilpotent = False
            break
        if nilpotent and not r.power(n).is_zero():
            nilpotent = False

    universal = _symbolic_unit_determinant(p) if n <= 6 else None
    return CompletenessReport(
        complete=witness is None,
        witness=witness,
        nilpotent_certificate=witness is None and nilpotent,
        universal=universal,
    )


# det(I + ρ(x)) with x symbolic: multivariate polynomials as
# {exponent tuple: coefficient} dictionaries, expanded by cofactors.
_MPoly = dict[tuple[int, ...], Fraction]


def _mpoly_const(c: RatLike, nvars: int) -> _MPoly:
    value = Fraction(c)
    return {(0,) * nvars: value} if value else {}


def _mpoly_add(a: _MPoly, b: _MPoly) -> _MPoly:
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, Fraction(0)) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def _mpoly_mul(a: _MPoly, b: _MPoly) -> _MPoly:
    out: _MPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(mono, Fraction(0)) + ca * cb
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def _mpoly_det(rows: list[list[_MPoly]]) -> _MPoly:
    if len(rows) == 1:
        return rows[0][0]
    out: _MPoly = {}
    for r, row in enumerate(rows):
        pivot = row[0]
        if not pivot:
            continue
        minor = [
            [rows[i][j] for j in range(1, len(rows))]
            for i in range(len(rows))
            if i != r
        ]
        term = _mpoly_mul(pivot, _mpoly_det(minor))
        if r % 2 == 1:
            term = {m: -c for m, c in term.items()}
        out = _mpoly_add(out, term)
    return out


def _symbolic_unit_determinant(p: LsaProduct) -> bool | None:
    """True when det(I + ρ(x)) is identically 1 as a polynomial in the
    coordinates of x; None when the expanded determinant is non-constant
    (no exact universal decision either way)."""
    n = p.dim
    rhos = [p.rho(standard_vector(n, k)) for k in range(n)]
    entries: list[list[_MPoly]] = []
    for i in range(n):
        row: list[_MPoly] = []
        for j in range(n):
            e = _mpoly_const(1 if i == j else 0, n)
            for k in range(n):
                c = rhos[k][i, j]
                if c != 0:
                    mono = tuple(1 if t == k else 0 for t in range(n))
                    e = _mpoly_add(e, {mono: c})
            row.append(e)
        entries.append(row)
    det = _mpoly_det(entries)
    if det == _mpoly_const(1, n):
        return True
    return None

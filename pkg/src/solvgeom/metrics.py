"""Metric layer: Levi-Civita connection, curvature, codifferential, and the
orthogonal decomposition of flat metric Lie algebras.

Everything runs on a left-invariant metric given by a rational Gram matrix G.
The connection comes from the Koszul formula

    ⟨∇_x y, z⟩ = ½(⟨[x,y],z⟩ − ⟨[y,z],x⟩ + ⟨[z,x],y⟩)

(directional-derivative terms vanish on left-invariant data), solved exactly
with the inverse Gram matrix.  Curvature uses the convention
R(x,y) = ∇_{[x,y]} − [∇_x, ∇_y]; flatness is convention-independent,
witness components are not.

The one floating-point routine of the whole package lives here:
``adapted_block_basis`` displays commuting skew operators in simultaneous
2×2 rotation blocks.  It is for reporting only; every one of its
preconditions is checked rationally first, and no verdict anywhere depends
on its output.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import math

from .forms import KForm
from .liealgebras import (
    LieAlgebra,
    Subspace,
    bracket_span,
    center,
    derived_subalgebra,
    is_solvable,
    is_unimodular,
    standard_vector,
)
from .matrices import Matrix, Vector, is_zero_vec, kernel_basis, vadd, vec
from .rationals import RatLike, rat


class Metric:
    """Positive-definite symmetric Gram matrix; definiteness checked exactly
    through leading principal minors at construction time."""

    __slots__ = ("gram", "gram_inverse")

    gram: Matrix
    gram_inverse: Matrix

    def __init__(self, gram: Matrix | Sequence[Sequence[RatLike]]) -> None:
        g = gram if isinstance(gram, Matrix) else Matrix(gram)
        if g.rows != g.cols:
            raise ValueError("Gram matrix must be square")
        if not g.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        for k in range(1, g.rows + 1):
            minor = Matrix([[g[i, j] for j in range(k)] for i in range(k)])
            if minor.det() <= 0:
                raise ValueError(
                    f"Gram matrix is not positive definite "
                    f"(leading {k}×{k} minor is not positive)"
                )
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "gram_inverse", g.inverse())

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Metric is immutable")

    @staticmethod
    def standard(n: int) -> "Metric":
        return Metric(Matrix.identity(n))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum(
            (a * b for a, b in zip(self.gram.apply(v), u, strict=True)),
            Fraction(0),
        )

    def norm_squared(self, v: Sequence[Fraction]) -> Fraction:
        return self.inner(v, v)

    def scaled(self, factor: RatLike) -> "Metric":
        c = rat(factor)
        if c <= 0:
            raise ValueError("metric scale factor must be positive")
        return Metric(self.gram * c)

    def dual_vector(self, alpha: KForm) -> Vector:
        """The vector v with ⟨v, ·⟩ = α (α a 1-form)."""
        if alpha.degree != 1 or alpha.dim != self.dim:
            raise ValueError("need a 1-form of matching dimension")
        coeffs = vec(alpha.value((i,)) for i in range(self.dim))
        return self.gram_inverse.apply(coeffs)

    def dual_form(self, v: Sequence[Fraction]) -> KForm:
        """The 1-form ⟨v, ·⟩."""
        row = self.gram.apply(v)
        return KForm(self.dim, 1, {(i,): c for i, c in enumerate(row) if c != 0})

    def is_orthogonal(self, s: Subspace, t: Subspace) -> bool:
        return all(
            self.inner(a, b) == 0 for a in s.basis for b in t.basis
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Metric):
            return self.gram == other.gram
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.gram)


class Connection:
    """Christoffel table Γ[i][j] = ∇_{e_i} e_j, with bilinear extension."""

    __slots__ = ("algebra", "metric", "gamma")

    algebra: LieAlgebra
    metric: Metric
    gamma: tuple[tuple[Vector, ...], ...]

    def __init__(
        self,
        algebra: LieAlgebra,
        metric: Metric,
        gamma: Sequence[Sequence[Vector]],
    ) -> None:
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "gamma", tuple(tuple(row) for row in gamma))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Connection is immutable")

    def nabla(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        n = self.algebra.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                w = x[i] * y[j]
                if w != 0:
                    for k, c in enumerate(self.gamma[i][j]):
                        if c != 0:
                            out[k] += w * c
        return tuple(out)

    def operator(self, x: Sequence[Fraction]) -> Matrix:
        """The matrix of ∇_x acting on the algebra."""
        n = self.algebra.dim
        return Matrix.from_columns(
            [self.nabla(x, standard_vector(n, j)) for j in range(n)]
        )

    def curvature_operator(
        self, x: Sequence[Fraction], y: Sequence[Fraction]
    ) -> Matrix:
        """R(x,y) = ∇_{[x,y]} − [∇_x, ∇_y]."""
        nx, ny = self.operator(x), self.operator(y)
        return self.operator(self.algebra.bracket(x, y)) - (nx * ny - ny * nx)


@lru_cache(maxsize=None)
def levi_civita(g: LieAlgebra, m: Metric) -> Connection:
    """Solve the Koszul systems exactly; torsion-freeness and metric
    compatibility are asserted on all basis pairs/triples afterwards.

    Memoized: algebras and metrics are immutable and hash by content, so
    repeated verdicts on the same pair reuse the connection.
    """
    if m.dim != g.dim:
        raise ValueError("metric dimension does not match the algebra")
    n = g.dim
    half = Fraction(1, 2)
    # ⟨[e_i, e_j], e_k⟩ = (G·[e_i, e_j])_k; hoist the Gram applications so
    # the triple loop below only indexes
    gb = [[m.gram.apply(g.bracket_basis(i, j)) for j in range(n)] for i in range(n)]
    gamma: list[list[Vector]] = []
    for i in range(n):
        row: list[Vector] = []
        for j in range(n):
            rhs = vec(
                half * (gb[i][j][k] - gb[j][k][i] + gb[k][i][j]) for k in range(n)
            )
            row.append(m.gram_inverse.apply(rhs))
        gamma.append(row)
    conn = Connection(g, m, gamma)
    ggamma = [[m.gram.apply(gamma[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            torsion = vadd(
                tuple(-x for x in gamma[j][i]), gamma[i][j]
            )
            assert torsion == g.bracket_basis(i, j), "connection has torsion"
            for k in range(n):
                compat = ggamma[i][j][k] + ggamma[i][k][j]
                assert compat == 0, "connection is not metric"
    return conn


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    witness: tuple[int, int, int] | None = None
    witness_value: Vector | None = None

    def __bool__(self) -> bool:
        return self.flat


@lru_cache(maxsize=None)
def is_flat(g: LieAlgebra, m: Metric) -> FlatnessReport:
    """All curvature operators must vanish exactly; the first nonzero
    R(e_i, e_j)e_k is reported otherwise."""
    conn = levi_civita(g, m)
    n = g.dim
    ops = [conn.operator(standard_vector(n, i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            # R(e_i, e_j) = ∇_{[e_i,e_j]} − [∇_i, ∇_j], with the first term
            # assembled by linearity from the basis operators
            op = -(ops[i] * ops[j] - ops[j] * ops[i])
            for k, c in enumerate(g.bracket_basis(i, j)):
                if c != 0:
                    op = op + ops[k] * c
            if not op.is_zero():
                for k in range(n):
                    col = op.column(k)
                    if not is_zero_vec(col):
                        return FlatnessReport(False, (i, j, k), col)
    return FlatnessReport(True)


def codifferential(g: LieAlgebra, m: Metric, alpha: KForm) -> KForm:
    """(δα)(…) = −Σ_{j,l} G^{jl} (∇_{e_j} α)(e_l, …).

    Written with the inverse Gram matrix so non-orthonormal bases stay
    rational; for G = I this is the usual −Σ_j ι_{e_j}(∇_{e_j} α).
    """
    if alpha.degree < 1:
        raise ValueError("codifferential needs degree ≥ 1")
    if alpha.dim != g.dim:
        raise ValueError("form does not match the algebra")
    conn = levi_civita(g, m)
    n = g.dim
    ginv = m.gram_inverse

    def nabla_alpha(j: int, args: tuple[int, ...]) -> Fraction:
        # (∇_{e_j} α)(e_{a1}, …) = −Σ_t α(…, ∇_{e_j} e_{at}, …)
        total = Fraction(0)
        for t, a in enumerate(args):
            derivative = conn.gamma[j][a]
            for idx, coeff in enumerate(derivative):
                if coeff != 0:
                    replaced = args[:t] + (idx,) + args[t + 1 :]
                    total -= coeff * alpha.value(replaced)
        return total

    from itertools import combinations

    k = alpha.degree
    out: dict[tuple[int, ...], Fraction] = {}
    for rest in combinations(range(n), k - 1):
        total = Fraction(0)
        for j in range(n):
            for l in range(n):
                w = ginv[j, l]
                if w != 0:
                    total -= w * nabla_alpha(j, (l,) + rest)
        if total != 0:
            out[rest] = total
    return KForm(n, k - 1, out)


# ---------------------------------------------------------------------------
# flat structure


@dataclass(frozen=True)
class FlatDecomposition:
    """Orthogonal splitting of a flat metric algebra into center z, an
    abelian part h acting by skew rotations, and the derived ideal k′."""

    algebra: LieAlgebra
    metric: Metric
    z: Subspace
    h: Subspace
    kprime: Subspace
    u: Subspace | None = None  # set by the complex layer: z ∩ Jz

    def with_u(self, u: Subspace) -> "FlatDecomposition":
        return replace(self, u=u)


def restricted_operator(space: Subspace, op: Matrix) -> Matrix:
    """Matrix of op on the subspace basis; requires invariance (exact)."""
    k = Matrix.from_columns([list(b) for b in space.basis])
    cols = []
    for b in space.basis:
        image = op.apply(b)
        if not space.contains(image):
            raise ValueError("operator does not preserve the subspace")
        cols.append(k.solve(image))
    return Matrix.from_columns(cols)


@lru_cache(maxsize=None)
def flat_decomposition(g: LieAlgebra, m: Metric) -> FlatDecomposition:
    report = is_flat(g, m)
    if not report.flat:
        raise ValueError(
            f"algebra is not flat (curvature witness at basis triple "
            f"{report.witness})"
        )
    z = center(g)
    kprime = derived_subalgebra(g)
    h = z.sum(kprime).orthogonal_complement(m.gram)
    fd = FlatDecomposition(g, m, z, h, kprime)
    _assert_flat_structure(fd)
    return fd


def _assert_flat_structure(fd: FlatDecomposition) -> None:
    g, m = fd.algebra, fd.metric
    z, h, kp = fd.z, fd.h, fd.kprime
    n = g.dim
    assert z.dim + h.dim + kp.dim == n, "decomposition must span"
    assert m.is_orthogonal(z, h) and m.is_orthogonal(z, kp) and m.is_orthogonal(
        h, kp
    ), "decomposition must be orthogonal"
    # the derived ideal and h are abelian
    assert bracket_span(g, kp, kp).is_zero(), "derived ideal must be abelian"
    assert bracket_span(g, h, h).is_zero(), "h must be abelian"
    # ad: h -> so(k′) injective, k′ even-dimensional
    assert kp.dim % 2 == 0, "derived ideal must be even-dimensional"
    gram_kp = _subspace_gram(m, kp)
    for hb in h.basis:
        restricted = restricted_operator(kp, g.ad(hb))
        assert (
            restricted.transpose() * gram_kp + gram_kp * restricted
        ).is_zero(), "ad_H must be skew on the derived ideal"
    if h.dim > 0:
        stacked = []
        for col in range(h.dim):
            op = restricted_operator(kp, g.ad(h.basis[col]))
            stacked.append([x for row in op.to_lists() for x in row])
        coeff_kernel = kernel_basis(Matrix.from_columns(stacked))
        assert not coeff_kernel, "ad restricted to h must be injective"
    # ad_x = ∇_x on z ⊕ h, and ∇_x = 0 exactly on z ⊕ k′
    conn = levi_civita(g, m)
    for x in list(z.basis) + list(h.basis):
        assert conn.operator(x) == g.ad(x), "∇ must equal ad on z ⊕ h"
    nabla_kernel_rows = [
        [fd_gamma_entry(conn, i, j, k) for i in range(n)]
        for j in range(n)
        for k in range(n)
    ]
    nabla_kernel = Subspace(n, kernel_basis(Matrix(nabla_kernel_rows)))
    assert nabla_kernel == z.sum(kp), "∇_x = 0 exactly on z ⊕ k′"
    # flat algebras are unimodular and solvable
    assert is_unimodular(g), "flat algebras must be unimodular"
    assert is_solvable(g), "flat algebras must be solvable"


def fd_gamma_entry(conn: Connection, i: int, j: int, k: int) -> Fraction:
    return conn.gamma[i][j][k]


def _subspace_gram(m: Metric, s: Subspace) -> Matrix:
    return Matrix(
        [[m.inner(a, b) for b in s.basis] for a in s.basis]
    )


# ---------------------------------------------------------------------------
# adapted block basis (the package's only floating-point code)


@dataclass(frozen=True)
class AdaptedBlockBasis:
    """Float display of commuting skew operators in 2×2 rotation blocks.

    ``vectors`` are ambient-coordinate basis vectors of the block space
    (orthonormal for the metric, within tolerance); ``block_speeds[t][s]``
    is the rotation speed of operator t on block s.  For the ad_H family of
    a flat decomposition those speeds are the values λ_s(H_t).
    """

    vectors: tuple[tuple[float, ...], ...]
    block_speeds: tuple[tuple[float, ...], ...]
    residual: float
    tolerance: float


def adapted_block_basis(
    fd: FlatDecomposition,
    extra_operators: Sequence[Matrix] = (),
    tolerance: float = 1e-9,
) -> AdaptedBlockBasis:
    """Simultaneously rotate the block space into 2×2 blocks.

    The operators are ad(H) for a basis of h followed by the caller's extra
    operators (typically a skew derivation).  The block space is k′, enlarged
    by the complex-invariant central part u when that has been filled in —
    extra derivations act nontrivially there while every ad(H) vanishes.

    Two facts about the h-action on k′ are asserted exactly before any float
    appears: no direction of k′ is killed by all of ad(h) (each rotation
    functional λ_i is nonzero), and no combination of h acts by zero (the
    action is injective).  The numerics afterwards only *display* the
    guaranteed block structure.
    """
    g, m = fd.algebra, fd.metric
    ad_ops = [g.ad(hb) for hb in fd.h.basis]
    if ad_ops:
        on_kprime = [restricted_operator(fd.kprime, op) for op in ad_ops]
        rows = [row for r in on_kprime for row in r.to_lists()]
        if kernel_basis(Matrix(rows)):
            raise ValueError(
                "a rotation functional vanishes: some direction of the "
                "derived ideal commutes with all of h"
            )
        cols = [
            [x for row in r.to_lists() for x in row] for r in on_kprime
        ]
        if kernel_basis(Matrix.from_columns(cols)):
            raise ValueError("the h-action on the derived ideal is not injective")
    space = fd.kprime if fd.u is None else fd.kprime.sum(fd.u)
    return block_display(m, space, ad_ops + list(extra_operators), tolerance)


def block_display(
    m: Metric,
    space: Subspace,
    operators: Sequence[Matrix],
    tolerance: float = 1e-9,
) -> AdaptedBlockBasis:
    if space.dim % 2 != 0:
        raise ValueError("block space must be even-dimensional")
    if space.dim == 0:
        return AdaptedBlockBasis(
            vectors=(),
            block_speeds=tuple(() for _ in operators),
            residual=0.0,
            tolerance=tolerance,
        )
    gram = _subspace_gram(m, space)
    restrictions = [restricted_operator(space, op) for op in operators]
    for idx, r in enumerate(restrictions):
        if not (r.transpose() * gram + gram * r).is_zero():
            raise ValueError(f"operator {idx} is not skew on the block space")
    for a in range(len(restrictions)):
        for b in range(a + 1, len(restrictions)):
            ra, rb = restrictions[a], restrictions[b]
            if not (ra * rb - rb * ra).is_zero():
                raise ValueError(f"operators {a} and {b} do not commute")

    # ---- numeric display from here on -----------------------------------
    import numpy as np
    from scipy.linalg import schur

    d = space.dim
    gram_f = np.array([[float(x) for x in row] for row in gram.to_lists()])
    chol = np.linalg.cholesky(gram_f)
    chol_inv_t = np.linalg.inv(chol.T)
    skews = [
        chol.T @ np.array([[float(x) for x in row] for row in r.to_lists()])
        @ chol_inv_t
        for r in restrictions
    ]
    k_cols = np.array(
        [[float(x) for x in b] for b in space.basis]
    ).T  # ambient × d

    best_residual = math.inf
    for attempt in range(1, 6):
        # prime roots give deterministic generic weights without an RNG
        weights = [
            math.pow(p, 1.0 / (attempt + 1))
            for p in _first_primes(len(skews))
        ]
        combo = sum(
            (w * s for w, s in zip(weights, skews)), start=np.zeros((d, d))
        )
        _, q = schur(combo, output="real")
        blocked = [q.T @ s @ q for s in skews]
        residual = 0.0
        speeds = []
        for bm in blocked:
            row = []
            mask = np.zeros_like(bm)
            for s in range(d // 2):
                a, b = 2 * s, 2 * s + 1
                row.append(0.5 * (bm[b, a] - bm[a, b]))
                mask[a, b] = bm[a, b]
                mask[b, a] = bm[b, a]
            speeds.append(tuple(float(x) for x in row))
            residual = max(residual, float(np.max(np.abs(bm - mask))))
        best_residual = min(best_residual, residual)
        if residual < tolerance:
            adapted = k_cols @ chol_inv_t @ q
            vectors = tuple(
                tuple(float(x) for x in adapted[:, j]) for j in range(d)
            )
            return AdaptedBlockBasis(
                vectors=vectors,
                block_speeds=tuple(speeds),
                residual=residual,
                tolerance=tolerance,
            )
    raise ValueError(
        f"off-block residual {best_residual:.3e} exceeds tolerance "
        f"{tolerance:.3e}"
    )


def _first_primes(k: int) -> list[int]:
    primes = []
    cand = 2
    while len(primes) < k:
        if all(cand % p for p in primes):
            primes.append(cand)
        cand += 1
    return primes

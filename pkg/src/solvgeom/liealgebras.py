"""Lie algebras with rational structure constants.

An algebra is its bracket table: [e_i, e_j] = Σ_k c[i][j][k] e_k with every
c[i][j][k] an exact rational.  Everything downstream — ideals, derived and
lower central series, nilradical, unimodularity, extensions — is linear
algebra over those constants, done exactly.

The nilradical of a solvable algebra is computed through the associative
closure of the adjoint image: close {ad_x} under matrix products, take the
radical of the trace form on that associative algebra, and pull back.  For a
solvable algebra the adjoint image is simultaneously triangularizable over an
algebraic closure, the trace-form radical is exactly its strictly triangular
part, and x lies in the nilradical precisely when ad_x is nilpotent, i.e.
lands in that radical.  No eigenvalue computations over extension fields are
ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from . import forms as _forms
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
from .rationals import RatLike, rat


class UnsupportedAlgebraError(ValueError):
    """Raised when an operation's mathematical hypotheses exclude the input."""


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of ℚ^n held in reduced row echelon form (canonical)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    def __init__(self, ambient_dim: int, spanning: Iterable[Sequence[RatLike]] = ()) -> None:
        vectors = [vec(v) for v in spanning]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if vectors:
            reduced, pivots = Matrix(vectors).rref()
            rows = [reduced.row(i) for i in range(len(pivots))]
        else:
            rows, pivots = [], []
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def whole(n: int) -> "Subspace":
        return Subspace(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residue of v after eliminating all basis directions."""
        w = list(vec(v))
        for row, p in zip(self.basis, self.pivots):
            coeff = w[p]
            if coeff != 0:
                for k in range(self.ambient_dim):
                    w[k] -= coeff * row[k]
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vec(self.reduce(v))

    def coordinates_of(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients of v in the echelon basis; raises if v is outside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        cols = [list(b) for b in self.basis] + [
            [-x for x in b] for b in other.basis
        ]
        vectors = []
        for k in kernel_basis(Matrix.from_columns(cols)):
            combo = zero_vec(self.ambient_dim)
            for coeff, b in zip(k[: self.dim], self.basis):
                combo = vadd(combo, vscale(coeff, b))
            vectors.append(combo)
        return Subspace(self.ambient_dim, vectors)

    def orthogonal_complement(self, gram: Matrix) -> "Subspace":
        """{v : gram(b, v) = 0 for all basis b} — exact, no normalization."""
        if self.is_zero():
            return Subspace.whole(self.ambient_dim)
        rows = [gram.apply(b) for b in self.basis]
        return Subspace(self.ambient_dim, kernel_basis(Matrix(rows)))

    def complement_standard_indices(self) -> tuple[int, ...]:
        """Standard basis indices spanning a complement (the free columns)."""
        pivot_set = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in pivot_set)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Subspace):
            return (
                self.ambient_dim == other.ambient_dim and self.basis == other.basis
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")


def span(ambient_dim: int, vectors: Iterable[Sequence[RatLike]]) -> Subspace:
    return Subspace(ambient_dim, vectors)


# ---------------------------------------------------------------------------
# the algebra itself


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    message: str | None = None
    triple: tuple[int, ...] | None = None


class LieAlgebra:
    """Finite-dimensional Lie algebra over ℚ by structure constants."""

    __slots__ = ("dim", "labels", "table", "_nonzero_pairs")

    dim: int
    labels: tuple[str, ...]
    table: tuple[tuple[Vector, ...], ...]
    _nonzero_pairs: tuple[tuple[int, int, Vector], ...]

    def __init__(
        self,
        table: Sequence[Sequence[Sequence[RatLike]]],
        labels: Sequence[str] | None = None,
    ) -> None:
        dim = len(table)
        tab = tuple(
            tuple(vec(cell) for cell in row) for row in table
        )
        if any(len(row) != dim for row in tab) or any(
            len(cell) != dim for row in tab for cell in row
        ):
            raise ValueError("structure constant table must be dim×dim×dim")
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(dim))
        else:
            labels = tuple(labels)
            if len(labels) != dim:
                raise ValueError("label count does not match dimension")
        nz = tuple(
            (i, j, tab[i][j])
            for i in range(dim)
            for j in range(i + 1, dim)
            if not is_zero_vec(tab[i][j])
        )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", tab)
        object.__setattr__(self, "_nonzero_pairs", nz)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LieAlgebra is immutable")

    @staticmethod
    def from_brackets(
        dim: int,
        brackets: Mapping[tuple[int, int], Sequence[RatLike]],
        labels: Sequence[str] | None = None,
    ) -> "LieAlgebra":
        """Build from the sparse upper half; antisymmetry is filled in."""
        table = [[list(zero_vec(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            v = vec(coeffs)
            if i == j:
                if not is_zero_vec(v):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            table[i][j] = list(v)
            table[j][i] = [-x for x in v]
        return LieAlgebra(table, labels)

    # -- bracket ------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.table[i][j]

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.table[i][j][k]

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = list(zero_vec(self.dim))
        for i, j, cij in self._nonzero_pairs:
            w = u[i] * v[j] - u[j] * v[i]
            if w != 0:
                for k, ck in enumerate(cij):
                    if ck != 0:
                        out[k] += w * ck
        return tuple(out)

    def ad(self, v: Sequence[Fraction]) -> Matrix:
        """Matrix of ad_v = [v, ·] in the algebra basis (column convention)."""
        n = self.dim
        cols = [self.bracket(v, standard_vector(n, j)) for j in range(n)]
        return Matrix.from_columns(cols)

    def ad_basis(self) -> list[Matrix]:
        return [self.ad(standard_vector(self.dim, i)) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return not self._nonzero_pairs

    # -- validation -----------------------------------------------------------

    def validate(self) -> ValidationResult:
        for i in range(self.dim):
            if not is_zero_vec(self.table[i][i]):
                return ValidationResult(
                    False, f"[{self.labels[i]}, {self.labels[i]}] ≠ 0", (i, i)
                )
            for j in range(i + 1, self.dim):
                if not is_zero_vec(
                    vadd(self.table[i][j], self.table[j][i])
                ):
                    return ValidationResult(
                        False,
                        f"antisymmetry fails at ({self.labels[i]}, {self.labels[j]})",
                        (i, j),
                    )
        for i, j, k in combinations(range(self.dim), 3):
            defect = vadd(
                vadd(
                    self.bracket(self.table[i][j], standard_vector(self.dim, k)),
                    self.bracket(self.table[j][k], standard_vector(self.dim, i)),
                ),
                self.bracket(self.table[k][i], standard_vector(self.dim, j)),
            )
            if not is_zero_vec(defect):
                names = (self.labels[i], self.labels[j], self.labels[k])
                return ValidationResult(
                    False,
                    f"Jacobi identity fails at ({', '.join(names)})",
                    (i, j, k),
                )
        return ValidationResult(True)

    def require_valid(self) -> "LieAlgebra":
        res = self.validate()
        if not res.ok:
            raise ValueError(res.message)
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LieAlgebra):
            return self.table == other.table
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        parts = []
        for i, j, cij in self._nonzero_pairs:
            terms = " + ".join(
                (f"{c}*{self.labels[k]}" if c != 1 else self.labels[k])
                for k, c in enumerate(cij)
                if c != 0
            )
            parts.append(f"[{self.labels[i]},{self.labels[j]}]={terms}")
        body = "; ".join(parts) if parts else "abelian"
        return f"LieAlgebra(dim {self.dim}: {body})"


def standard_vector(n: int, i: int) -> Vector:
    return tuple(
        Fraction(1) if j == i else Fraction(0) for j in range(n)
    )


def validate(g: LieAlgebra) -> ValidationResult:
    return g.validate()


# ---------------------------------------------------------------------------
# ideals, series, structural booleans


def bracket_span(g: LieAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """span{[u, v] : u ∈ S, v ∈ T} as a subspace."""
    vectors = [
        g.bracket(u, v) for u in s.basis for v in t.basis
    ]
    return Subspace(g.dim, vectors)


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    whole = Subspace.whole(g.dim)
    return bracket_span(g, whole, whole)


def derived_series(g: LieAlgebra) -> list[Subspace]:
    series = [Subspace.whole(g.dim)]
    while True:
        nxt = bracket_span(g, series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.is_zero():
            break
    return series


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    whole = Subspace.whole(g.dim)
    series = [whole]
    while True:
        nxt = bracket_span(g, whole, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.is_zero():
            break
    return series


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].is_zero()


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].is_zero()


def is_unimodular(g: LieAlgebra) -> bool:
    return all(m.trace() == 0 for m in g.ad_basis())


def center(g: LieAlgebra) -> Subspace:
    """Kernel of x ↦ ad_x, read off the stacked structure constants."""
    rows = [
        [g.structure_constant(i, j, k) for i in range(g.dim)]
        for j in range(g.dim)
        for k in range(g.dim)
    ]
    return Subspace(g.dim, kernel_basis(Matrix(rows)))


def centralizer(g: LieAlgebra, s: Subspace) -> Subspace:
    rows = []
    for b in s.basis:
        adb = g.ad(b)
        for k in range(g.dim):
            rows.append([adb[k, i] for i in range(g.dim)])
    if not rows:
        return Subspace.whole(g.dim)
    return Subspace(g.dim, kernel_basis(Matrix(rows)))


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    for i in range(g.dim):
        for b in s.basis:
            if not s.contains(g.bracket(standard_vector(g.dim, i), b)):
                return False
    return True


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return all(
        s.contains(g.bracket(u, v))
        for k, u in enumerate(s.basis)
        for v in s.basis[k + 1 :]
    )


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    """Leibniz check D[x,y] = [Dx,y] + [x,Dy] on all basis pairs."""
    if d.rows != g.dim or d.cols != g.dim:
        return False
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = d.apply(g.bracket_basis(i, j))
            rhs = vadd(
                g.bracket(d.column(i), standard_vector(g.dim, j)),
                g.bracket(standard_vector(g.dim, i), d.column(j)),
            )
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# restriction and quotient


def restrict_to_subalgebra(g: LieAlgebra, s: Subspace) -> LieAlgebra:
    """The bracket of g in the echelon basis of a subalgebra S."""
    if not is_subalgebra(g, s):
        raise ValueError("subspace is not closed under the bracket")
    k = s.dim
    table = [[list(zero_vec(k)) for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            w = s.coordinates_of(g.bracket(s.basis[a], s.basis[b]))
            table[a][b] = list(w)
            table[b][a] = [-x for x in w]
    return LieAlgebra(table)


def quotient_by_ideal(
    g: LieAlgebra, ideal: Subspace
) -> tuple[LieAlgebra, Callable[[Sequence[Fraction]], Vector]]:
    """Quotient algebra and the projection onto its coordinates.

    Quotient coordinates are the ideal's free columns; the projection
    eliminates the ideal's pivot coordinates and reads off the rest.
    """
    if not is_ideal(g, ideal):
        raise ValueError("subspace is not an ideal")
    free = ideal.complement_standard_indices()

    def project(v: Sequence[Fraction]) -> Vector:
        w = ideal.reduce(v)
        return tuple(w[f] for f in free)

    m = len(free)
    table = [[list(zero_vec(m)) for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            w = project(
                g.bracket(
                    standard_vector(g.dim, free[a]),
                    standard_vector(g.dim, free[b]),
                )
            )
            table[a][b] = list(w)
            table[b][a] = [-x for x in w]
    return LieAlgebra(table), project


def change_basis(g: LieAlgebra, p: Matrix, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Bracket table in the basis given by the columns of p."""
    if p.rows != g.dim or p.cols != g.dim:
        raise ValueError("basis matrix has wrong shape")
    p_inv = p.inverse()
    n = g.dim
    table = [[list(zero_vec(n)) for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            w = p_inv.apply(g.bracket(p.column(a), p.column(b)))
            table[a][b] = list(w)
            table[b][a] = [-x for x in w]
    return LieAlgebra(table, labels)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    n, m = a.dim, b.dim
    table = [[list(zero_vec(n + m)) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = list(a.table[i][j]) + [Fraction(0)] * m
    for i in range(m):
        for j in range(m):
            table[n + i][n + j] = [Fraction(0)] * n + list(b.table[i][j])
    labels = tuple(a.labels) + tuple(
        lb if lb not in a.labels else f"{lb}'" for lb in b.labels
    )
    return LieAlgebra(table, labels)


# ---------------------------------------------------------------------------
# nilradical via the associative closure of ad(g)


def _echelon_insert(
    ech: dict[int, list[Fraction]], row: list[Fraction]
) -> bool:
    """Reduce row against the echelon dict; insert if independent."""
    for pos in range(len(row)):
        coeff = row[pos]
        if coeff == 0:
            continue
        pivot_row = ech.get(pos)
        if pivot_row is None:
            inv = 1 / coeff
            ech[pos] = [x * inv for x in row]
            return True
        row = [x - coeff * y for x, y in zip(row, pivot_row)]
    return False


def nilradical(g: LieAlgebra) -> Subspace:
    """Nilradical of a solvable algebra (associative-closure method)."""
    if not is_solvable(g):
        raise UnsupportedAlgebraError(
            "nilradical computation requires a solvable algebra"
        )
    n = g.dim
    ads = g.ad_basis()
    if all(m.is_zero() for m in ads):
        return Subspace.whole(n)

    # associative closure of span{ad_x} under matrix multiplication
    ech: dict[int, list[Fraction]] = {}
    basis: list[Matrix] = []
    queue: list[Matrix] = []
    for m in ads:
        flat = [x for row in m.to_lists() for x in row]
        if _echelon_insert(ech, flat):
            basis.append(m)
            queue.append(m)
    while queue:
        new = queue.pop()
        for old in list(basis):
            for prod in (new * old, old * new):
                flat = [x for row in prod.to_lists() for x in row]
                if _echelon_insert(ech, flat):
                    basis.append(prod)
                    queue.append(prod)

    def trace_product(a: Matrix, b: Matrix) -> Fraction:
        return sum(
            (a[i, k] * b[k, i] for i in range(n) for k in range(n)),
            Fraction(0),
        )

    # x is in the nilradical iff tr(ad_x · B) = 0 for every closure element B
    rows = [
        [trace_product(ads[i], b) for i in range(n)] for b in basis
    ]
    return Subspace(n, kernel_basis(Matrix(rows)))


# ---------------------------------------------------------------------------
# structure report


@dataclass(frozen=True)
class StructureReport:
    center: Subspace
    derived_algebra: Subspace
    derived_series: list[Subspace]
    lower_central_series: list[Subspace]
    solvable: bool
    nilpotent: bool
    unimodular: bool
    nilradical: Subspace | None
    heisenberg_profile: tuple[int, int] | None


def _heisenberg_profile_of_nilpotent(g: LieAlgebra) -> tuple[int, int] | None:
    """Match g against ℝ^p × h_{2q+1} by structural counts.

    Needs: derived ideal 1-dimensional and central, and the bracket pairing
    (x, y) ↦ coefficient of the derived generator in [x, y] nondegenerate on
    a complement of the center.
    """
    der = derived_subalgebra(g)
    if der.dim != 1:
        return None
    zeta = der.basis[0]
    cen = center(g)
    if not cen.contains(zeta):
        return None
    p = cen.dim - 1
    two_q = g.dim - cen.dim
    if two_q <= 0 or two_q % 2 == 1:
        return None
    q = two_q // 2
    comp_idx = cen.complement_standard_indices()
    if len(comp_idx) != two_q:
        return None
    entries = [
        [_derived_coefficient(g, der, a, b) for b in comp_idx]
        for a in comp_idx
    ]
    if any(x is None for row in entries for x in row):
        return None
    return (p, q) if Matrix(entries).det() != 0 else None


def _derived_coefficient(
    g: LieAlgebra, der: Subspace, a: int, b: int
) -> Fraction | None:
    w = g.bracket(standard_vector(g.dim, a), standard_vector(g.dim, b))
    if not der.contains(w):
        return None
    return der.coordinates_of(w)[0]


def analyze(g: LieAlgebra) -> StructureReport:
    """Full structural summary; nilradical only when solvable."""
    solvable = is_solvable(g)
    nilpotent = is_nilpotent(g)
    nil = nilradical(g) if solvable else None
    profile = None
    if nil is not None and nil.dim > 0:
        sub = restrict_to_subalgebra(g, nil)
        profile = _heisenberg_profile_of_nilpotent(sub)
    return StructureReport(
        center=center(g),
        derived_algebra=derived_subalgebra(g),
        derived_series=derived_series(g),
        lower_central_series=lower_central_series(g),
        solvable=solvable,
        nilpotent=nilpotent,
        unimodular=is_unimodular(g),
        nilradical=nil,
        heisenberg_profile=profile,
    )


# ---------------------------------------------------------------------------
# extensions


def central_extension(h: LieAlgebra, beta: _forms.KForm) -> LieAlgebra:
    """Append a central ξ with [x, y] = old bracket + β(x, y)·ξ.

    Requires dβ = 0; that is exactly the Jacobi identity of the result.
    """
    if beta.degree != 2 or beta.dim != h.dim:
        raise ValueError("need a 2-form on the algebra")
    if not _forms.ce_differential(h, beta).is_zero():
        raise ValueError("the 2-form is not closed")
    n = h.dim
    brackets: dict[tuple[int, int], list[Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = list(h.bracket_basis(i, j)) + [beta.value((i, j))]
            brackets[(i, j)] = coeffs
    labels = tuple(h.labels) + ("xi" if "xi" not in h.labels else "xi'",)
    return LieAlgebra.from_brackets(n + 1, brackets, labels)


def semidirect_sum(d: Matrix, h: LieAlgebra, label: str = "A") -> LieAlgebra:
    """ℝ ⋉_D h: one new generator acting by the derivation D (index 0)."""
    if not is_derivation(h, d):
        raise ValueError("matrix is not a derivation (Leibniz check failed)")
    n = h.dim
    brackets: dict[tuple[int, int], list[Fraction]] = {}
    for j in range(n):
        col = d.column(j)
        brackets[(0, j + 1)] = [Fraction(0)] + list(col)
    for i in range(n):
        for j in range(i + 1, n):
            brackets[(i + 1, j + 1)] = [Fraction(0)] + list(h.bracket_basis(i, j))
    labels = (label,) + tuple(h.labels)
    return LieAlgebra.from_brackets(n + 1, brackets, labels)


def double_extension(
    h: LieAlgebra, beta: _forms.KForm, d: Matrix
) -> LieAlgebra:
    """Central extension by β followed by ℝ⋉_D on top.

    D must be a derivation of the centrally extended algebra that kills the
    appended generator (both checked) — every construction built this way
    keeps ξ central.  The result is unimodular exactly when h is unimodular
    and tr D = 0; asserted.
    """
    ext = central_extension(h, beta)
    if d.rows != ext.dim or d.cols != ext.dim:
        raise ValueError(
            "derivation must act on the central extension "
            f"(need {ext.dim}×{ext.dim}, got {d.rows}×{d.cols})"
        )
    if not is_zero_vec(d.column(ext.dim - 1)):
        raise ValueError(
            "derivation must annihilate the appended central generator"
        )
    result = semidirect_sum(d, ext)
    xi = standard_vector(result.dim, result.dim - 1)
    assert center(result).contains(xi), "appended generator must stay central"
    assert is_unimodular(result) == (
        is_unimodular(h) and d.trace() == 0
    ), "unimodularity must match the trace criterion"
    return result


# ---------------------------------------------------------------------------
# stock algebras


def abelian(n: int, labels: Sequence[str] | None = None) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, {}, labels)


def heisenberg(q: int) -> LieAlgebra:
    """h_{2q+1}: basis (x₁, y₁, …, x_q, y_q, z) with [x_i, y_i] = z."""
    if q < 1:
        raise ValueError("need at least one generating pair")
    dim = 2 * q + 1
    labels = []
    for i in range(1, q + 1):
        labels += [f"x{i}", f"y{i}"]
    labels.append("z")
    brackets = {
        (2 * i, 2 * i + 1): [0] * (dim - 1) + [1] for i in range(q)
    }
    return LieAlgebra.from_brackets(dim, brackets, labels)


def affine_line() -> LieAlgebra:
    """aff(ℝ): [h, e] = e."""
    return LieAlgebra.from_brackets(2, {(0, 1): [0, 1]}, ("h", "e"))


def rotation_block(a: RatLike) -> Matrix:
    """The 2×2 block sending e ↦ a·f, f ↦ −a·e."""
    a = rat(a)
    return Matrix([[0, -a], [a, 0]])


def oscillator(block_speeds: Sequence[RatLike]) -> LieAlgebra:
    """ℝ ⋉_D h_{2n+1} with D rotating the i-th pair at speed a_i, D(z) = 0.

    Basis order: (A, x₁, y₁, …, xₙ, yₙ, z).
    """
    n = len(block_speeds)
    if n < 1:
        raise ValueError("need at least one block")
    h = heisenberg(n)
    cells: list[list[Fraction]] = [
        [Fraction(0)] * h.dim for _ in range(h.dim)
    ]
    for i, a in enumerate(block_speeds):
        b = rotation_block(a)
        cells[2 * i][2 * i] = b[0, 0]
        cells[2 * i][2 * i + 1] = b[0, 1]
        cells[2 * i + 1][2 * i] = b[1, 0]
        cells[2 * i + 1][2 * i + 1] = b[1, 1]
    d = Matrix(cells)
    return semidirect_sum(d, h)

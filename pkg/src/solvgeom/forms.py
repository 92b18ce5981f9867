"""Alternating forms on a Lie algebra and the Chevalley–Eilenberg differential.

A k-form stores coefficients only on strictly increasing index tuples; values
on arbitrary tuples are reconstructed by permutation sign.  The differential
is the trivial-representation one — only bracket terms appear:

    dα(x₀,…,x_k) = Σ_{a<b} (−1)^{a+b} α([x_a,x_b], x₀,…,x̂_a,…,x̂_b,…,x_k)

so for a 1-form dθ(x,y) = −θ([x,y]) and for a 2-form
dω(x,y,z) = −ω([x,y],z) − ω([y,z],x) − ω([z,x],y).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .matrices import Matrix, Vector
from .rationals import RatLike, rat

if TYPE_CHECKING:  # pragma: no cover
    from .liealgebras import LieAlgebra

IndexTuple = tuple[int, ...]


def _sort_with_sign(indices: Sequence[int]) -> tuple[IndexTuple, int]:
    """Sort an index tuple, tracking permutation parity; repeated index → sign 0."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


class KForm:
    """Alternating k-form on an n-dimensional space, exact coefficients."""

    __slots__ = ("dim", "degree", "entries")

    dim: int
    degree: int
    entries: dict[IndexTuple, Fraction]

    def __init__(
        self,
        dim: int,
        degree: int,
        entries: Mapping[Sequence[int], RatLike] | None = None,
    ) -> None:
        if degree < 0 or degree > dim:
            raise ValueError(f"degree {degree} out of range for dim {dim}")
        table: dict[IndexTuple, Fraction] = {}
        for raw_idx, raw_val in (entries or {}).items():
            idx, sign = _sort_with_sign(tuple(raw_idx))
            if len(idx) != degree:
                raise ValueError(f"index tuple {raw_idx} has wrong length")
            if any(i < 0 or i >= dim for i in idx):
                raise ValueError(f"index out of range in {raw_idx}")
            if sign == 0:
                continue
            val = sign * rat(raw_val)
            if val != 0:
                table[idx] = table.get(idx, Fraction(0)) + val
                if table[idx] == 0:
                    del table[idx]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "entries", table)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("KForm is immutable")

    # -- access ------------------------------------------------------------

    def value(self, indices: Sequence[int]) -> Fraction:
        idx, sign = _sort_with_sign(tuple(indices))
        if sign == 0:
            return Fraction(0)
        return sign * self.entries.get(idx, Fraction(0))

    def __call__(self, *vectors: Sequence[Fraction]) -> Fraction:
        if len(vectors) != self.degree:
            raise ValueError(
                f"{self.degree}-form applied to {len(vectors)} vectors"
            )
        if self.degree == 0:
            return self.entries.get((), Fraction(0))
        total = Fraction(0)
        for idx, coeff in self.entries.items():
            minor = Matrix(
                [[vectors[b][idx[a]] for b in range(self.degree)]
                 for a in range(self.degree)]
            )
            total += coeff * minor.det()
        return total

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if isinstance(other, KForm):
            return (
                self.dim == other.dim
                and self.degree == other.degree
                and self.entries == other.entries
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.dim, self.degree, tuple(sorted(self.entries.items()))))

    def __repr__(self) -> str:
        if not self.entries:
            return f"KForm({self.dim}, {self.degree}, 0)"
        parts = [
            f"{v}*e{'∧e'.join(str(i) for i in k)}"
            for k, v in sorted(self.entries.items())
        ]
        return f"KForm({self.dim}, {self.degree}, {' + '.join(parts)})"

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "KForm") -> "KForm":
        self._check_compatible(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, Fraction(0)) + v
        return KForm(self.dim, self.degree, out)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-1) * other

    def __mul__(self, scalar: RatLike) -> "KForm":
        c = rat(scalar)
        return KForm(
            self.dim, self.degree, {k: c * v for k, v in self.entries.items()}
        )

    __rmul__ = __mul__

    def __neg__(self) -> "KForm":
        return (-1) * self

    def _check_compatible(self, other: "KForm") -> None:
        if self.dim != other.dim or self.degree != other.degree:
            raise ValueError("form dimension/degree mismatch")


def covector(dim: int, i: int) -> KForm:
    """The basis 1-form dual to basis vector i."""
    return KForm(dim, 1, {(i,): 1})


def one_form_from_values(values: Sequence[RatLike]) -> KForm:
    return KForm(len(values), 1, {(i,): v for i, v in enumerate(values)})


def two_form_from_matrix(m: Matrix) -> KForm:
    """2-form with ω(e_i, e_j) = m[i][j]; m must be antisymmetric."""
    if m.rows != m.cols:
        raise ValueError("need a square matrix")
    if not (m + m.transpose()).is_zero():
        raise ValueError("matrix is not antisymmetric")
    return KForm(
        m.rows,
        2,
        {
            (i, j): m[i, j]
            for i in range(m.rows)
            for j in range(i + 1, m.rows)
            if m[i, j] != 0
        },
    )


def wedge(alpha: KForm, beta: KForm) -> KForm:
    """Shuffle-convention wedge: no factorial normalizations, so
    (θ∧ω)(x,y,z) = θ(x)ω(y,z) − θ(y)ω(x,z) + θ(z)ω(x,y)."""
    if alpha.dim != beta.dim:
        raise ValueError("forms live on different spaces")
    p, q = alpha.degree, beta.degree
    if p + q > alpha.dim:
        return KForm(alpha.dim, min(p + q, alpha.dim), {})
    out: dict[IndexTuple, Fraction] = {}
    for ia, va in alpha.entries.items():
        set_a = set(ia)
        for ib, vb in beta.entries.items():
            if set_a & set(ib):
                continue
            merged, sign = _sort_with_sign(ia + ib)
            if sign == 0:
                continue
            out[merged] = out.get(merged, Fraction(0)) + sign * va * vb
    return KForm(alpha.dim, p + q, out)


def ce_differential(g: "LieAlgebra", alpha: KForm) -> KForm:
    """Chevalley–Eilenberg differential for the trivial representation."""
    if alpha.dim != g.dim:
        raise ValueError("form does not match algebra dimension")
    k = alpha.degree
    if k + 1 > g.dim:
        # top-degree forms are closed for free; mirror the wedge overflow
        return KForm(g.dim, g.dim, {})
    out: dict[IndexTuple, Fraction] = {}
    for tup in combinations(range(g.dim), k + 1):
        total = Fraction(0)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                rest = tuple(
                    tup[t] for t in range(k + 1) if t != a and t != b
                )
                bracket = g.bracket_basis(tup[a], tup[b])
                if all(x == 0 for x in bracket):
                    continue
                sign = -1 if (a + b) % 2 else 1
                for m, coeff in enumerate(bracket):
                    if coeff != 0:
                        total += sign * coeff * alpha.value((m,) + rest)
        if total != 0:
            out[tup] = total
    return KForm(g.dim, k + 1, out)


def form_is_closed(g: "LieAlgebra", alpha: KForm) -> bool:
    return ce_differential(g, alpha).is_zero()

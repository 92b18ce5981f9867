"""Univariate polynomials over the rationals, with exact real-root counting.

The one nontrivial service this module provides is
:func:`all_roots_real_nonpositive`: decide, with no floating point anywhere,
whether every complex root of a rational polynomial is real and ≤ 0.  The
decision runs through a square-free reduction (divide by gcd(p, p')) followed
by Sturm-sequence sign-variation counting on the interval (−∞, 0].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import RatLike, rat


class Polynomial:
    """Dense univariate polynomial, coefficients ascending by degree.

    The zero polynomial has an empty coefficient tuple and degree −1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[RatLike] = ()) -> None:
        cs = [rat(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    # -- basics ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return "Polynomial(" + " + ".join(terms) + ")"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.coefficient(k) + other.coefficient(k) for k in range(n)
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.coefficient(k) - other.coefficient(k) for k in range(n)
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __mul__(self, other: "Polynomial | RatLike") -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = rat(other)
            return Polynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: RatLike) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact rational polynomial division: self = q·divisor + r."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = divisor.degree
        lead = divisor.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lead
            if c == 0:
                continue
            quot[k] = c
            for j, b in enumerate(divisor.coeffs):
                rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def scale_argument(self, c: RatLike) -> "Polynomial":
        """p(x) ↦ p(c·x)."""
        c = rat(c)
        power = Fraction(1)
        out = []
        for a in self.coeffs:
            out.append(a * power)
            power *= c
        return Polynomial(out)

    def reflect_argument(self) -> "Polynomial":
        """p(x) ↦ p(−x)."""
        return self.scale_argument(-1)

    @staticmethod
    def from_roots(roots: Sequence[RatLike]) -> "Polynomial":
        p = Polynomial([1])
        for r in roots:
            p = p * Polynomial([-rat(r), 1])
        return p


X = Polynomial([0, 1])


def polynomial_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm (remainders re-monicized to
    keep coefficient growth down; degrees here never exceed ~12)."""
    a, b = p, q
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.monic() if not r.is_zero() else r
    if a.is_zero():
        return a
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'): same roots, all simple."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return Polynomial([1])
    g = polynomial_gcd(p, p.derivative())
    q, r = p.divmod(g)
    assert r.is_zero()
    return q.monic()


def split_root_at_zero(p: Polynomial) -> tuple[int, Polynomial]:
    """Write p = x^m · q with q(0) ≠ 0; return (m, q)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    m = 0
    while p.coeffs[m] == 0:
        m += 1
    return m, Polynomial(p.coeffs[m:])


def as_polynomial_in_square(p: Polynomial) -> Polynomial | None:
    """If p(x) = r(x²) for some r, return r; otherwise None."""
    if any(c != 0 for c in p.coeffs[1::2]):
        return None
    return Polynomial(p.coeffs[0::2])


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    """Sturm chain p₀ = p, p₁ = p', p_{k+1} = −rem(p_{k−1}, p_k).

    For square-free p, the sign-variation count V(a) − V(b) is the number of
    distinct real roots in (a, b].
    """
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero():
            break
        chain.append(-r)
    return [q for q in chain if not q.is_zero()]


def _sign_variations(signs: Iterable[int]) -> int:
    cleaned = [s for s in signs if s != 0]
    return sum(
        1 for a, b in zip(cleaned, cleaned[1:]) if a * b < 0
    )


def _sign_at(q: Polynomial, x: Fraction) -> int:
    v = q(x)
    return (v > 0) - (v < 0)


def _sign_at_minus_infinity(q: Polynomial) -> int:
    s = (q.leading > 0) - (q.leading < 0)
    return s if q.degree % 2 == 0 else -s


def count_real_roots_nonpositive(p: Polynomial) -> int:
    """Number of *distinct* real roots of p in (−∞, 0], counted exactly."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return 0
    s = squarefree_part(p)
    at_zero = 1 if s(0) == 0 else 0
    if at_zero:
        _, s = split_root_at_zero(s)
        if s.degree == 0:
            return at_zero
    chain = sturm_chain(s)
    v_low = _sign_variations(_sign_at_minus_infinity(q) for q in chain)
    v_zero = _sign_variations(_sign_at(q, Fraction(0)) for q in chain)
    return at_zero + (v_low - v_zero)


def all_roots_real_nonpositive(p: Polynomial) -> bool:
    """True iff every complex root of p is real and ≤ 0.

    Decided exactly: square-free reduction first (so multiplicities cannot
    hide roots from the count), then the square-free part has all roots real
    and ≤ 0 iff its count of distinct real roots in (−∞, 0] equals its
    degree.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no well-defined root set")
    if p.degree == 0:
        return True
    s = squarefree_part(p)
    return count_real_roots_nonpositive(s) == s.degree

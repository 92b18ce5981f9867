"""JSON exchange format for algebras and the tensors riding on them.

One file describes one algebra: ``dim``, optional ``basis`` labels, and a
sparse ``brackets`` list ``[[i, j, [coefficients]], ...]`` with 0-based
indices and every coefficient an exact rational written as a string (bare
integers are also accepted).  Omitted bracket pairs are zero; giving only
[i, j] fills [j, i] by antisymmetry, while giving both leaves them exactly
as written so a verifier can flag the inconsistency instead of papering
over it.

Optional keys carry extra tensors: ``metric`` (Gram rows; absent means the
identity), ``J`` and ``phi`` and ``derivation`` (row-major matrices),
``xi`` (vector), ``eta`` (covector components), ``product`` (an n×n×n
left-multiplication table).  Lattice presentations travel in a second
shape keyed by ``kind: "lattice-presentation"``.

Parsing checks shapes and index ranges only — whether the parsed data
satisfies any algebraic identity is the verifier's job, so a file with a
broken Jacobi identity parses fine and then fails its verdict.  Everything
a serializer emits re-parses to an equal in-memory value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .intmatrices import IntMatrix
from .lattices import LatticePresentation
from .liealgebras import LieAlgebra
from .matrices import Matrix, Vector, vec
from .rationals import format_rational, rat


class FormatError(ValueError):
    """The payload does not match the file contract (shape, type, range)."""


_ALGEBRA_KEYS = (
    "dim",
    "basis",
    "brackets",
    "metric",
    "J",
    "phi",
    "xi",
    "eta",
    "derivation",
    "product",
)


@dataclass(frozen=True)
class AlgebraFile:
    """Parsed contents of an algebra file; absent keys stay ``None``.

    The algebra itself is built unvalidated — run ``algebra.validate()``
    (or a structure verdict that includes it) to decide the axioms.
    """

    algebra: LieAlgebra
    gram: Matrix | None = None
    j: Matrix | None = None
    phi: Matrix | None = None
    xi: Vector | None = None
    eta: Vector | None = None
    derivation: Matrix | None = None
    product: tuple[tuple[Vector, ...], ...] | None = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FormatError(message)


def _parse_scalar(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(
            f"{where}: rationals must be strings like \"3/2\" or integers, "
            f"got {value!r}"
        )
    try:
        return rat(value)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def _parse_vector(value: Any, n: int, where: str) -> Vector:
    _require(isinstance(value, list), f"{where} must be a list")
    _require(len(value) == n, f"{where} must have {n} entries, got {len(value)}")
    return vec(_parse_scalar(x, where) for x in value)


def _parse_matrix(value: Any, rows: int, cols: int, where: str) -> Matrix:
    _require(isinstance(value, list), f"{where} must be a list of rows")
    _require(len(value) == rows, f"{where} must have {rows} rows, got {len(value)}")
    return Matrix([list(_parse_vector(row, cols, where)) for row in value])


def parse_algebra_payload(payload: Any) -> AlgebraFile:
    """Decode one algebra file; raises FormatError on any contract breach."""
    _require(isinstance(payload, Mapping), "top level must be a JSON object")
    unknown = sorted(set(payload) - set(_ALGEBRA_KEYS))
    _require(not unknown, f"unknown keys: {', '.join(unknown)}")
    _require("dim" in payload, "missing required key \"dim\"")
    n = payload["dim"]
    _require(
        isinstance(n, int) and not isinstance(n, bool) and n >= 1,
        "\"dim\" must be a positive integer",
    )

    labels: tuple[str, ...] | None = None
    if "basis" in payload:
        raw = payload["basis"]
        _require(
            isinstance(raw, list) and all(isinstance(s, str) for s in raw),
            "\"basis\" must be a list of strings",
        )
        _require(len(raw) == n, f"\"basis\" must name {n} vectors")
        labels = tuple(raw)

    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    filled: set[tuple[int, int]] = set()
    for entry in payload.get("brackets", []):
        _require(
            isinstance(entry, list) and len(entry) == 3,
            "each bracket entry must be [i, j, [coefficients]]",
        )
        i, j, coeffs = entry
        for idx in (i, j):
            _require(
                isinstance(idx, int) and not isinstance(idx, bool) and 0 <= idx < n,
                f"bracket index {idx!r} outside 0..{n - 1}",
            )
        _require((i, j) not in filled, f"bracket pair ({i}, {j}) given twice")
        filled.add((i, j))
        table[i][j] = list(_parse_vector(coeffs, n, f"bracket ({i}, {j})"))
    for i, j in list(filled):
        if (j, i) not in filled:
            table[j][i] = [-x for x in table[i][j]]

    algebra = LieAlgebra(table, labels)

    def matrix_key(key: str) -> Matrix | None:
        if key not in payload:
            return None
        return _parse_matrix(payload[key], n, n, f'"{key}"')

    xi = _parse_vector(payload["xi"], n, '"xi"') if "xi" in payload else None
    eta = _parse_vector(payload["eta"], n, '"eta"') if "eta" in payload else None

    product: tuple[tuple[Vector, ...], ...] | None = None
    if "product" in payload:
        raw = payload["product"]
        _require(
            isinstance(raw, list) and len(raw) == n,
            f'"product" must be an {n}×{n} table of vectors',
        )
        rows = []
        for i, row in enumerate(raw):
            _require(
                isinstance(row, list) and len(row) == n,
                f'"product" row {i} must have {n} entries',
            )
            rows.append(
                tuple(
                    _parse_vector(cell, n, f'"product" entry ({i}, {j})')
                    for j, cell in enumerate(row)
                )
            )
        product = tuple(rows)

    return AlgebraFile(
        algebra=algebra,
        gram=matrix_key("metric"),
        j=matrix_key("J"),
        phi=matrix_key("phi"),
        xi=xi,
        eta=eta,
        derivation=matrix_key("derivation"),
        product=product,
    )


def _vector_strings(v: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in v]


def _matrix_rows(m: Matrix) -> list[list[str]]:
    return [
        [format_rational(m[i, j]) for j in range(m.cols)] for i in range(m.rows)
    ]


def algebra_payload(
    algebra: LieAlgebra,
    *,
    metric: Matrix | None = None,
    j: Matrix | None = None,
    phi: Matrix | None = None,
    xi: Sequence[Fraction] | None = None,
    eta: Sequence[Fraction] | None = None,
    derivation: Matrix | None = None,
    product: Sequence[Sequence[Sequence[Fraction]]] | None = None,
) -> dict[str, Any]:
    """Encode an algebra (plus optional tensors) in canonical key order.

    Brackets are emitted sparsely, upper pairs only, so the payload is the
    canonical form of the table: parsing it back reconstructs the lower
    half by antisymmetry and yields an equal LieAlgebra.
    """
    n = algebra.dim
    brackets = [
        [i, j, _vector_strings(algebra.table[i][j])]
        for i in range(n)
        for j in range(i + 1, n)
        if any(x != 0 for x in algebra.table[i][j])
    ]
    payload: dict[str, Any] = {
        "dim": n,
        "basis": list(algebra.labels),
        "brackets": brackets,
    }
    if metric is not None:
        payload["metric"] = _matrix_rows(metric)
    if j is not None:
        payload["J"] = _matrix_rows(j)
    if phi is not None:
        payload["phi"] = _matrix_rows(phi)
    if xi is not None:
        payload["xi"] = _vector_strings(xi)
    if eta is not None:
        payload["eta"] = _vector_strings(eta)
    if derivation is not None:
        payload["derivation"] = _matrix_rows(derivation)
    if product is not None:
        payload["product"] = [
            [_vector_strings(cell) for cell in row] for row in product
        ]
    return payload


# ---------------------------------------------------------------------------
# lattice presentations

_PRESENTATION_KEYS = (
    "kind",
    "base",
    "tower",
    "center",
    "pairing",
    "actions",
    "torsion",
)

PRESENTATION_KIND = "lattice-presentation"


def _parse_int_rows(value: Any, rows: int, cols: int, where: str) -> list[list[int]]:
    _require(
        isinstance(value, list) and len(value) == rows,
        f"{where} must have {rows} rows",
    )
    out = []
    for row in value:
        _require(
            isinstance(row, list)
            and len(row) == cols
            and all(isinstance(x, int) and not isinstance(x, bool) for x in row),
            f"{where} rows must be lists of {cols} integers",
        )
        out.append(list(row))
    return out


def parse_presentation_payload(payload: Any) -> LatticePresentation:
    """Decode a lattice presentation file into a validated presentation."""
    _require(isinstance(payload, Mapping), "top level must be a JSON object")
    _require(
        payload.get("kind") == PRESENTATION_KIND,
        f'presentation files must set "kind": "{PRESENTATION_KIND}"',
    )
    unknown = sorted(set(payload) - set(_PRESENTATION_KEYS))
    _require(not unknown, f"unknown keys: {', '.join(unknown)}")
    for key in ("base", "tower", "center", "pairing", "actions", "torsion"):
        _require(key in payload, f'missing required key "{key}"')
    base = payload["base"]
    tower = payload["tower"]
    for name, val in (("base", base), ("tower", tower)):
        _require(
            isinstance(val, list) and all(isinstance(s, str) for s in val),
            f'"{name}" must be a list of generator names',
        )
    n = len(base)
    center = payload["center"]
    _require(
        isinstance(center, int) and not isinstance(center, bool) and 0 <= center < n,
        '"center" must index a base generator',
    )
    pairing = _parse_int_rows(payload["pairing"], n, n, '"pairing"')
    raw_actions = payload["actions"]
    _require(
        isinstance(raw_actions, list) and len(raw_actions) == len(tower),
        '"actions" must hold one matrix per tower generator',
    )
    actions = tuple(
        IntMatrix(_parse_int_rows(m, n, n, f'"actions"[{i}]'))
        for i, m in enumerate(raw_actions)
    )
    raw_torsion = payload["torsion"]
    _require(isinstance(raw_torsion, list), '"torsion" must be a list of rows')
    torsion = tuple(
        tuple(_parse_int_rows([raw], 1, n, '"torsion"')[0]) for raw in raw_torsion
    )
    try:
        return LatticePresentation(
            base_labels=tuple(base),
            tower_labels=tuple(tower),
            center=center,
            pairing=IntMatrix(pairing),
            tower=actions,
            torsion=torsion,
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def presentation_payload(lp: LatticePresentation) -> dict[str, Any]:
    """Encode a lattice presentation in canonical key order."""
    return {
        "kind": PRESENTATION_KIND,
        "base": list(lp.base_labels),
        "tower": list(lp.tower_labels),
        "center": lp.center,
        "pairing": [list(row) for row in lp.pairing.data],
        "actions": [[list(row) for row in m.data] for m in lp.tower],
        "torsion": [list(row) for row in lp.torsion],
    }

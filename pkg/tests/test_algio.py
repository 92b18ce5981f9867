"""File contract: exact serialization, strict parsing, antisymmetry fill."""

from __future__ import annotations

from fractions import Fraction

import pytest

from solvgeom.algio import (
    FormatError,
    algebra_payload,
    parse_algebra_payload,
    parse_presentation_payload,
    presentation_payload,
)
from solvgeom.lattices import lattice_presentation_tower, oscillator_algebra
from solvgeom.liealgebras import LieAlgebra, heisenberg
from solvgeom.matrices import Matrix


def test_round_trip_with_metric_and_j():
    h = oscillator_algebra((1, 2))
    payload = algebra_payload(h.algebra, metric=h.metric.gram, j=h.j.matrix)
    back = parse_algebra_payload(payload)
    assert back.algebra == h.algebra
    assert back.algebra.labels == h.algebra.labels
    assert back.gram == h.metric.gram
    assert back.j == h.j.matrix
    assert back.phi is None and back.product is None


def test_round_trip_vector_and_product_keys():
    g = heisenberg(1)
    n = g.dim
    xi = tuple(Fraction(i, 3) for i in range(n))
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    table[0][1][2] = Fraction(1, 2)
    table[1][0][2] = Fraction(-1, 2)
    payload = algebra_payload(g, xi=xi, eta=xi, product=table)
    back = parse_algebra_payload(payload)
    assert back.xi == xi and back.eta == xi
    assert back.product[0][1][2] == Fraction(1, 2)
    assert back.product[2][2][2] == 0


def test_half_bracket_fills_antisymmetric_part():
    f = parse_algebra_payload({"dim": 3, "brackets": [[0, 1, ["0", "0", "1"]]]})
    assert f.algebra.bracket_basis(1, 0) == (0, 0, -1)
    assert f.algebra.validate().ok


def test_explicit_inconsistent_pair_is_kept_for_the_verifier():
    f = parse_algebra_payload(
        {
            "dim": 3,
            "brackets": [[0, 1, ["0", "0", "1"]], [1, 0, ["0", "0", "1"]]],
        }
    )
    assert not f.algebra.validate().ok


def test_bare_integers_are_accepted():
    f = parse_algebra_payload({"dim": 2, "brackets": [[0, 1, [1, 0]]]})
    assert f.algebra.bracket_basis(0, 1) == (1, 0)


@pytest.mark.parametrize(
    "payload, message",
    [
        ({}, "dim"),
        ({"dim": 0}, "positive integer"),
        ({"dim": True}, "positive integer"),
        ({"dim": 2, "basis": ["x"]}, "must name 2"),
        ({"dim": 2, "bracketz": []}, "unknown keys: bracketz"),
        ({"dim": 2, "brackets": [[0, 1]]}, r"\[i, j, \[coefficients\]\]"),
        ({"dim": 2, "brackets": [[0, 5, ["0", "0"]]]}, "outside 0..1"),
        ({"dim": 2, "brackets": [[0, 1, ["0"]]]}, "must have 2 entries"),
        (
            {"dim": 2, "brackets": [[0, 1, ["0", "0"]], [0, 1, ["0", "0"]]]},
            "given twice",
        ),
        ({"dim": 2, "metric": [["1", "0"]]}, "must have 2 rows"),
        ({"dim": 2, "xi": ["1", "1/0"]}, "zero denominator"),
        ({"dim": 2, "xi": [0.5, 1]}, "must be strings"),
        ({"dim": 2, "product": [[["1", "0"]]]}, "table of vectors"),
        ([], "JSON object"),
    ],
)
def test_parse_rejections(payload, message):
    with pytest.raises(FormatError, match=message):
        parse_algebra_payload(payload)


def test_payload_key_order_is_canonical():
    h = oscillator_algebra((1,))
    payload = algebra_payload(h.algebra, metric=h.metric.gram, j=h.j.matrix)
    assert list(payload) == ["dim", "basis", "brackets", "metric", "J"]
    # sparse upper pairs only, sorted
    pairs = [(i, j) for i, j, _ in payload["brackets"]]
    assert pairs == sorted(pairs) and all(i < j for i, j in pairs)


def test_serializer_emits_rational_strings():
    g = LieAlgebra.from_brackets(2, {(0, 1): [Fraction(1, 2), 0]})
    payload = algebra_payload(g)
    assert payload["brackets"] == [[0, 1, ["1/2", "0"]]]


# ---------------------------------------------------------------------------
# lattice presentations


def tower():
    return lattice_presentation_tower(1, 1, [1], [1, 1], 2, 4, 2)


def test_presentation_round_trip():
    lp = tower()
    back = parse_presentation_payload(presentation_payload(lp))
    assert back == lp


def test_presentation_requires_kind():
    payload = presentation_payload(tower())
    payload.pop("kind")
    with pytest.raises(FormatError, match="lattice-presentation"):
        parse_presentation_payload(payload)


def test_presentation_shape_errors():
    payload = presentation_payload(tower())
    payload["actions"] = payload["actions"][:1]
    with pytest.raises(FormatError, match="one matrix per tower generator"):
        parse_presentation_payload(payload)
    bad = presentation_payload(tower())
    bad["pairing"][0][1] += 1  # breaks antisymmetry, caught by the presentation
    with pytest.raises(FormatError, match="antisymmetric"):
        parse_presentation_payload(bad)


def test_presentation_payload_is_plain_json():
    import json

    text = json.dumps(presentation_payload(tower()))
    assert parse_presentation_payload(json.loads(text)) == tower()

from __future__ import annotations

from fractions import Fraction

import pytest

from cleanmat.rings import build_ring
from cleanmat.serialize import (
    element_from_json,
    element_to_json,
    matrix_from_json,
    matrix_to_json,
    poly_from_json,
    poly_to_json,
)


def test_element_roundtrip_zmod(zmod):
    R = zmod(12)
    for v in range(12):
        a = R.from_int(v)
        assert element_from_json(R, element_to_json(a)) == a
    assert element_to_json(R.from_int(10)) == [2, 1]
    assert R.to_int(element_from_json(R, 10)) == 10


def test_element_parse_zloc(zloc):
    Z2 = zloc(2)
    a = element_from_json(Z2, "3/5")
    assert a.parts[0] == Fraction(3, 5)
    assert element_to_json(a) == ["3/5"]
    with pytest.raises(ValueError):
        element_from_json(Z2, "1/2")  # denominator not coprime to 2


def test_element_parse_product_forms(zloc2_squared):
    R = zloc2_squared
    per_stalk = element_from_json(R, ["3/5", 2])
    assert per_stalk.parts == (Fraction(3, 5), Fraction(2))
    nested = element_from_json(
        build_ring(
            {
                "type": "product",
                "factors": [{"type": "zmod", "n": 6}, {"type": "zloc", "p": 2}],
            }
        ),
        [5, "1/3"],
    )
    assert len(nested.parts) == 3  # two zmod stalks plus the zloc stalk


def test_element_parse_table_index(f2xf2_ring):
    R = f2xf2_ring
    for idx in range(4):
        a = element_from_json(R, idx)
        # restriction to each stalk is e_i * (element idx)
        assert element_from_json(R, element_to_json(a)) == a
    with pytest.raises(ValueError):
        element_from_json(R, 9)


def test_poly_and_matrix_roundtrip(zmod):
    R = zmod(8)
    h = poly_from_json(R, [2, 3, 1])
    assert poly_from_json(R, poly_to_json(h)) == h
    with pytest.raises(ValueError):
        poly_from_json(R, [1, 2])  # not monic
    from cleanmat.matrices import companion

    A = companion(h)
    assert matrix_from_json(R, matrix_to_json(A)) == A


def test_element_parse_errors(zmod):
    R = zmod(6)
    with pytest.raises(ValueError):
        element_from_json(R, [1, 2, 3])  # matches neither stalks nor factors
    with pytest.raises(ValueError):
        element_from_json(R, True)

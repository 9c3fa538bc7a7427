from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qgt.errors import ValidationError
from qgt.fields import GF, Q, parse_field
from qgt.linalg import Echelon, complement_units, det_int, det_mod_p, is_nonsingular, kernel, rank


@pytest.mark.parametrize("text,expected", [("Q", Q), ("GF:5", GF(5)), ("gf(7)", GF(7)), ({"field": "GF", "p": 3}, GF(3))])
def test_parse_field(text, expected):
    assert parse_field(text) == expected


@pytest.mark.parametrize("bad", ["GF:4", "R", {"field": "GF"}])
def test_parse_field_rejects(bad):
    with pytest.raises(ValidationError):
        parse_field(bad)


def test_scalars():
    F = GF(5)
    assert F.parse("-1") == 4
    assert F.parse("1/2") == 3
    assert F.div(1, 3) == 2
    assert Q.parse("-2/6") == Fraction(-1, 3)
    with pytest.raises(ValidationError):
        F.parse("1/5")
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_echelon_and_kernel():
    F = GF(7)
    rows = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]  # third = first + second
    assert rank(F, rows) == 2
    ker = kernel(F, rows)
    assert len(ker) == 1
    (combo,) = ker
    total = {}
    for k, c in combo.items():
        for j, x in rows[k].items():
            total[j] = F.norm(total.get(j, 0) + c * x)
    assert not any(total.values())
    E = Echelon(F)
    for r in rows[:2]:
        E.add(r)
    assert E.contains(rows[2])
    assert complement_units(F, rows[:2], 3) == [0]
    assert complement_units(F, [{0: 1}, {1: 1}], 3) == [2]


def test_determinants():
    M = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    assert det_int(M) == 4
    assert det_mod_p(M, 5) == 4
    assert det_int([[4, 4], [4, 4]]) == 0
    assert not is_nonsingular(GF(2), M)
    assert is_nonsingular(Q, [[Fraction(1, 2), 0], [0, 3]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_mod_p_matches_integer_det(M):
    assert det_mod_p(M, 7) == det_int(M) % 7
    assert is_nonsingular(Q, M) == (det_int(M) != 0)


def test_det_mod_large_prime():
    p = 2**61 - 1
    M = [[p - 1, 3], [5, p - 2]]
    assert det_mod_p(M, p) == det_int(M) % p

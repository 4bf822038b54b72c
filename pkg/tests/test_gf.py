from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlrc.errors import BadSubfieldOrder, NonDivisorN, NonPrimeP, ReducibleModulus, UnsupportedOrder
from qlrc.gf import (
    FieldSpec,
    default_modulus,
    field_create,
    frobenius_q,
    is_irreducible,
    prime_power,
    primitive_element,
    root_of_unity,
    smallest_primitive_modulus,
)

SMALL_ORDERS = [q for q in range(2, 257) if prime_power(q) is not None]


def _field(q: int) -> FieldSpec:
    p, m = prime_power(q)
    return field_create(p, m)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    F = _field(q)
    ops = F.ops
    x = np.arange(q, dtype=np.int64)
    A, B = np.meshgrid(x, x, indexing="ij")
    add, mul = ops.add(A, B), ops.mul(A, B)
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (ops.add(x, 0) == x).all() and (ops.mul(x, 1) == x).all()
    assert (ops.add(x, ops.neg(x)) == 0).all()
    assert (ops.mul(x[1:], ops.inv(x[1:])) == 1).all()
    # every row of the tables is a permutation: no zero divisors, unique sums
    assert all(len(set(row)) == q for row in add.tolist())
    assert all(len(set(row)) == q - 1 for row in mul[1:, 1:].tolist())
    for a in range(q):
        # associativity and distributivity with a fixed, all b and c
        assert (ops.add(add[a][:, None], x[None, :]) == ops.add(a, add)).all()
        assert (ops.mul(mul[a][:, None], x[None, :]) == ops.mul(a, mul)).all()
        assert (ops.mul(a, add) == ops.add(mul[a][:, None], mul[a][None, :])).all()


@pytest.mark.parametrize("q", [q for q in SMALL_ORDERS if int(round(q**0.5)) ** 2 == q])
def test_frobenius_is_an_involution_fixing_the_subfield(q):
    F = _field(q)
    s = F.sub_order
    x = np.arange(q, dtype=np.int64)
    once = F.ops.power(x, s)
    assert (F.ops.power(once, s) == x).all()
    fixed = set(x[once == x].tolist())
    assert len(fixed) == s and 0 in fixed and 1 in fixed


def test_prime_field_encoding_is_the_residue():
    F = field_create(11)
    assert repr(F) == "GF(11)" and F.order == 11
    assert F.ops.s_mul(7, 8) == 56 % 11
    assert F.ops.s_add(7, 8) == 4


def test_quadratic_fields_used_by_the_examples():
    assert field_create(11, 2).order == 121
    assert field_create(3, 4).order == 81
    assert field_create(3, 4).sub_order == 9


def test_primitive_elements():
    assert primitive_element(field_create(11)).enc == 2
    assert primitive_element(field_create(2)).enc == 1
    F = field_create(11, 2)
    g = primitive_element(F)
    assert g.order() == 120
    # smallest encoding with full order
    assert all(F.element(e).order() != 120 for e in range(1, g.enc))


def test_modulus_table_choice_for_gf121():
    F = field_create(11, 2)
    assert F.modulus == (7, 1, 1)
    assert F.ops.generator == 11  # the class of x


def test_root_of_unity():
    F = field_create(11, 2)
    w = root_of_unity(F, 10, 1)
    assert (w**10).enc == 1 and (w**5).enc != 1
    assert root_of_unity(F, 1, 1).enc == 1
    z = root_of_unity(field_create(3, 4), 8, 1)
    assert z.order() == 8
    for n in (2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 40, 60, 120):
        for i in (1, 2, 3):
            assert root_of_unity(F, n, i).order() == n
    with pytest.raises(NonDivisorN):
        root_of_unity(F, 7)


def test_frobenius_q():
    F = field_create(11, 2)
    g = primitive_element(F)
    assert frobenius_q(g, 11) == g**11
    assert (frobenius_q(g, 11) * g) == g**12
    assert frobenius_q(F.element(0), 11).enc == 0
    for e in range(11):
        assert frobenius_q(F.element(e), 11).enc == e
    with pytest.raises(BadSubfieldOrder):
        frobenius_q(g, 10)


def test_errors():
    with pytest.raises(NonPrimeP):
        field_create(9, 1)
    with pytest.raises(ReducibleModulus):
        field_create(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2
    with pytest.raises(UnsupportedOrder):
        field_create(2, 17)


def test_explicit_modulus_accepted():
    F = field_create(2, 2, [1, 1, 1])
    assert F.order == 4 and F == field_create(2, 2)


def test_field_spec_json_round_trip():
    F = field_create(3, 4)
    assert FieldSpec.from_json(json.loads(json.dumps(F.to_json()))) == F


def test_default_modulus_table_matches_search():
    for p, m in [(2, 2), (2, 8), (3, 2), (3, 4), (5, 2), (11, 2), (13, 2)]:
        f = default_modulus(p, m)
        assert f == smallest_primitive_modulus(p, m)
        assert is_irreducible(f, p)


def test_alternate_table_via_environment(tmp_path, monkeypatch):
    from qlrc import gf

    table = tmp_path / "moduli.json"
    # x^2 + 1 is irreducible over GF(11) since -1 is a non-residue
    table.write_text(json.dumps({"moduli": {"11,2": [1, 0, 1]}}))
    monkeypatch.setenv(gf.TABLE_ENV, str(table))
    gf._load_table.cache_clear()
    try:
        assert default_modulus(11, 2) == (1, 0, 1)
        F = field_create(11, 2)
        assert F.modulus == (1, 0, 1)
        assert F.ops.s_mul(11, 11) == 10  # x * x = -1
    finally:
        monkeypatch.delenv(gf.TABLE_ENV)
        gf._load_table.cache_clear()
    assert default_modulus(11, 2) == (7, 1, 1)


elements_121 = st.integers(min_value=0, max_value=120)


@settings(max_examples=200, deadline=None)
@given(elements_121, elements_121, elements_121)
def test_element_operators_agree_with_arithmetic(a, b, c):
    F = field_create(11, 2)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) * z == x * z + y * z
    assert x - x == F.element(0)
    if b:
        assert (x / y) * y == x
    assert x**11 == frobenius_q(x, 11)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 16), (3, 10), (251, 2), (2, 9)]), st.data())
def test_large_field_inverse_and_power(pm, data):
    F = field_create(*pm)
    a = data.draw(st.integers(min_value=1, max_value=F.order - 1))
    e = data.draw(st.integers(min_value=0, max_value=3 * F.order))
    ops = F.ops
    assert ops.s_mul(a, ops.s_inv(a)) == 1
    assert ops.s_pow(a, e) == ops.s_pow(a, e % (F.order - 1))

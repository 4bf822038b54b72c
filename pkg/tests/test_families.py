from __future__ import annotations

import json
from pathlib import Path

import pytest

from qlrc.code import LinearCode, is_dual_containing
from qlrc.errors import InvalidParams
from qlrc.families import (
    Family1Params,
    Family2Params,
    Family3Params,
    FamilyInstance,
    build_family,
    build_family1,
    expected_parameters,
    make_params,
    valid_tuples,
    validate_params,
)
from qlrc.linalg import Matrix, matmul, rank
from qlrc.locality import block_criterion_failures, singleton_like_bound

REFERENCE_G = Path(__file__).parent / "data" / "reference_family1_generator.txt"


def _summary(inst: FamilyInstance):
    C = inst.classical
    return (C.n, C.k, inst.distance, inst.locality.r, inst.locality.delta, inst.quantum.label)


@pytest.fixture(scope="module")
def golden_f1():
    return build_family(Family1Params(11, 2, 2, 2))


@pytest.mark.parametrize(
    "params, expected",
    [
        (Family1Params(7, 1, 1, 1), (6, 4, 3, 5, 2, "[[6,2,3]]_7")),
        (Family2Params(9, 2, 8, 1), (24, 19, 4, 14, 3, "[[24,14,4]]_9")),
        (Family2Params(11, 2, 10, 1), (30, 25, 4, 18, 3, "[[30,20,4]]_11")),
        (Family2Params(7, 1, 6, 1), (18, 15, 3, 11, 2, "[[18,12,3]]_7")),
        (Family3Params(9, 1, 8, 1), (24, 20, 4, 15, 2, "[[24,16,4]]_9")),
    ],
)
def test_small_instances(params, expected):
    inst = build_family(params)
    assert _summary(inst) == expected
    exp = expected_parameters(params)
    assert (exp["n"], exp["k"], exp["d"], exp["r"], exp["delta"]) == expected[:5]
    assert inst.verdict.optimal
    assert not block_criterion_failures(inst.structured)


def test_golden_family_one(golden_f1):
    inst = golden_f1
    assert _summary(inst) == (20, 14, 5, 8, 3, "[[20,8,5]]_11")
    C = inst.classical
    assert C.spec.order == 121 and C.H.shape == (6, 20)
    assert is_dual_containing(C, "hermitian")
    assert inst.distance == singleton_like_bound(20, 14, 8, 3)
    assert inst.verdict.identity_lhs == inst.verdict.identity_rhs
    assert inst.groups == (tuple(range(10)), tuple(range(10, 20)))


@pytest.mark.slow
def test_golden_family_three():
    inst = build_family(Family3Params(11, 2, 10, 1))
    assert _summary(inst) == (30, 24, 5, 18, 3, "[[30,18,5]]_11")
    assert inst.classical.H.shape == (6, 30)


@pytest.mark.slow
def test_family_three_over_gf169():
    inst = build_family(Family3Params(13, 2, 12, 1))
    assert _summary(inst) == (36, 30, 5, 22, 3, "[[36,24,5]]_13")


def test_validation_messages():
    assert validate_params(2, (9, 2, 8, 1)) == []
    assert validate_params(3, (9, 1, 8, 1)) == []
    bad = validate_params(1, (5, 2, 2, 1))
    assert any("u+v exceeds ⌊(q−1)/2⌋−1" in v for v in bad)
    assert any("s exceeds ⌊v/2⌋−3" in v for v in validate_params(3, (11, 3, 10, 1)))
    many = validate_params(2, (10, 1, 6, 1))
    assert len(many) == 2  # every violated hypothesis is named
    assert validate_params(1, {"q": 11, "u": 1, "v": 2, "t": 1})  # v <= u fails
    with pytest.raises(InvalidParams):
        make_params(1, (5, 2, 2, 1))


def test_valid_tuples_are_accepted_and_bounded():
    tuples = valid_tuples(24)
    assert Family2Params(9, 2, 8, 1) in tuples and Family3Params(9, 1, 8, 1) in tuples
    for p in tuples:
        assert expected_parameters(p)["n"] <= 24


def test_smallest_family_three_field_is_nine():
    assert not any(isinstance(p, Family3Params) and p.q < 9 for p in valid_tuples(40))
    assert validate_params(3, (8, 1, 7, 1))


def test_json_round_trip(golden_f1):
    obj = json.loads(json.dumps(golden_f1.to_json()))
    back = FamilyInstance.from_json(obj)
    assert back.to_json() == golden_f1.to_json()
    assert back.distance == 5


def test_provenance_is_recorded(golden_f1):
    prov = golden_f1.provenance
    assert prov["generator"] == 11 and len(prov["omega"]) == 2
    f3 = build_family(Family3Params(9, 1, 8, 1))
    assert {"omega", "zeta", "lambda", "mu"} <= set(f3.provenance)


def test_reference_family_one_generator_matches_equal_roots():
    rows = [list(map(int, line.split())) for line in REFERENCE_G.read_text().splitlines() if line.strip()]
    inst = build_family1(Family1Params(11, 2, 2, 2), omegas=[2, 2])
    G = Matrix(inst.classical.spec, rows)
    assert G.shape == (14, 20) and rank(G) == 14
    assert matmul(G, inst.classical.H.T).is_zero()
    assert LinearCode.from_generator(G).k == inst.classical.k


def test_omegas_must_be_primitive():
    with pytest.raises(InvalidParams):
        build_family1(Family1Params(11, 2, 2, 2), omegas=[1, 2])
    with pytest.raises(InvalidParams):
        build_family1(Family1Params(11, 2, 2, 2), omegas=[2])

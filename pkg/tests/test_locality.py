from __future__ import annotations

from dataclasses import replace

import pytest

from qlrc.code import LinearCode
from qlrc.errors import DistanceTooSmall, NotMinimalDecomposition, NotOptimal, TooLarge, UncoveredCoordinate
from qlrc.gf import field_create
from qlrc.linalg import Matrix, same_row_space
from qlrc.locality import (
    Decomposition,
    LocalityCertificate,
    LocalityParams,
    StructuredParityCheck,
    block_criterion_failures,
    certify_lrc,
    certify_optimal_from_decomposition,
    decompose,
    extract_structured_parity,
    find_local_protection,
    is_optimal_lrc,
    local_protection_supports,
    mutual_rigidity_check,
    rigidity_check,
    singleton_like_bound,
    verify_decomposition,
    verify_repair_group,
)

GF2 = field_create(2)
G642 = [[1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 1], [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 1]]
G532 = [[1, 0, 1, 0, 0], [0, 1, 1, 0, 1], [0, 0, 0, 1, 1]]


@pytest.fixture
def c642():
    return LinearCode.from_generator(Matrix(GF2, G642))


@pytest.fixture
def c532():
    return LinearCode.from_generator(Matrix(GF2, G532))


def _mds(n: int, k: int, q: int = 11) -> LinearCode:
    F = field_create(q)
    return LinearCode.from_generator(Matrix(F, [[pow(x, j, q) for x in range(1, n + 1)] for j in range(k)]))


def test_singleton_like_bound_examples():
    assert singleton_like_bound(20, 14, 8, 3) == 5
    assert singleton_like_bound(5, 3, 2, 2) == 2
    assert singleton_like_bound(9, 4, 4, 2) == 6


def test_locality_params_validation():
    from qlrc.errors import InvalidParams

    with pytest.raises(InvalidParams):
        LocalityParams(0, 2)
    with pytest.raises(InvalidParams):
        LocalityParams(2, 1)


def test_verify_repair_group(c532):
    p = LocalityParams(2, 2)
    grp = verify_repair_group(c532, 0, [0, 1, 2], p)
    assert (grp.dimension, grp.distance) == (2, 2)
    assert verify_repair_group(c532, 3, [1, 3, 4], p).support == (1, 3, 4)
    with pytest.raises(TooLarge):
        verify_repair_group(c532, 0, [0, 1, 2, 3], p)
    ident = LinearCode.from_generator(Matrix.identity(GF2, 3))
    with pytest.raises(DistanceTooSmall):
        verify_repair_group(ident, 0, [0], LocalityParams(1, 2))


def test_find_local_protection(c642):
    p = LocalityParams(3, 2)
    assert find_local_protection(c642, 0, p).support == (0, 1, 2)
    assert find_local_protection(c642, 4, p).support == (1, 3, 4, 5)


def test_mds_code_is_its_own_repair_group():
    C = _mds(6, 3)
    grp = find_local_protection(C, 2, LocalityParams(3, 4))
    assert grp.support == tuple(range(6))
    cert = certify_lrc(C, LocalityParams(3, 4))
    assert len(cert.groups) == 1


def test_certify_lrc_searched_and_supplied(c532):
    p = LocalityParams(2, 2)
    cert = certify_lrc(c532, p)
    assert [g.support for g in cert.groups] == [(0, 1, 2), (1, 3, 4)]
    assert is_optimal_lrc(c532, p, cert)
    cert2 = certify_lrc(c532, p, [[0, 1, 2], [1, 3, 4]])
    assert cert2.cover == cert.cover
    with pytest.raises(UncoveredCoordinate):
        certify_lrc(c532, p, [[0, 1, 2]])
    assert LocalityCertificate.from_json(cert.to_json()) == cert


def test_identity_has_no_locality():
    ident = LinearCode.from_generator(Matrix.identity(GF2, 3))
    with pytest.raises(UncoveredCoordinate):
        certify_lrc(ident, LocalityParams(1, 2))


def test_pair_code_saturates_the_redundancy_bound():
    C = LinearCode.from_generator(Matrix(GF2, [[1, 1, 0, 0], [0, 0, 1, 1]]))
    p = LocalityParams(1, 2)
    cert = certify_lrc(C, p)
    assert is_optimal_lrc(C, p, cert)
    assert C.n - C.k == 2 == -(-C.k // p.r) * (p.delta - 1)


def test_decomposition_case_one(c642):
    p = LocalityParams(3, 2)
    D = decompose(c642, certify_lrc(c642, p))
    assert (D.case, D.groups, D.terminal, D.residual) == ("I", ((0, 1, 2),), (3,), (4, 5))
    check = verify_decomposition(c642, D, p)
    assert check and check.new_sizes == [3] and check.rank_gains == [2]
    assert Decomposition.from_json(D.to_json()) == D
    assert "Case I" in D.summary()


def test_decomposition_case_two(c532):
    p = LocalityParams(2, 2)
    D = decompose(c532, certify_lrc(c532, p))
    assert (D.case, D.groups, D.terminal, D.residual) == ("II", ((0, 1, 2),), (), (3, 4))
    assert verify_decomposition(c532, D, p)
    assert (c532.k - 1) % p.r == 0


def test_tampered_decomposition_is_rejected(c642):
    p = LocalityParams(3, 2)
    D = decompose(c642, certify_lrc(c642, p))
    bad = replace(D, residual=(4,))
    check = verify_decomposition(c642, bad, p)
    assert not check
    assert any("|U|" in v for v in check.violations)


def test_converse_from_decomposition(c642, c532):
    for C, p in ((c642, LocalityParams(3, 2)), (c532, LocalityParams(2, 2))):
        D = decompose(C, certify_lrc(C, p))
        assert certify_optimal_from_decomposition(C, D, p)


def test_decompose_rejects_non_optimal(c532):
    p = LocalityParams(3, 2)
    with pytest.raises(NotOptimal):
        decompose(c532, certify_lrc(c532, p))


def test_rigidity_on_small_examples(c642, c532):
    assert rigidity_check(c642, LocalityParams(3, 2))
    assert rigidity_check(c532, LocalityParams(2, 2))


def test_rigidity_counterexample_when_one_group_suffices():
    # an MDS [6,3,4] code is an optimal (5,2)-LRC whose whole support is a
    # local protection code of distance 4, not 2
    C = _mds(6, 3)
    report = rigidity_check(C, LocalityParams(5, 2))
    assert not report
    assert ((0, 1, 2, 3, 4, 5), 3) in report.counterexamples


def test_local_protection_supports_are_flat_complements(c642):
    cands = local_protection_supports(c642, LocalityParams(3, 2))
    sups = {c.support for c in cands}
    assert (0, 1, 2) in sups and (1, 3, 4, 5) in sups
    for c in cands:
        verify_repair_group(c642, c.support[0], c.support, LocalityParams(3, 2))


def test_mutual_rigidity(c642):
    p = LocalityParams(3, 2)
    assert mutual_rigidity_check(c642, [[0, 1, 2]], p)


def test_structured_parity_disjoint_and_chained():
    from qlrc.families import Family1Params, Family2Params, build_family

    f1 = build_family(Family1Params(7, 1, 1, 2))
    S = f1.structured
    assert S.layout == "disjoint" and S.l == 1
    assert same_row_space(S.matrix(), f1.classical.H)
    assert StructuredParityCheck.from_json(S.to_json()) == S
    f2 = build_family(Family2Params(7, 1, 6, 1))
    S2 = f2.structured
    assert S2.layout == "chained"
    assert S2.shared(0) == tuple(range(6, 12))
    assert S2.band_split(0) == (tuple(range(6)), tuple(range(6, 12)))
    assert S2.band_split(1) == (tuple(range(6, 12)), tuple(range(12, 18)))
    assert not block_criterion_failures(S2)


def test_single_group_structured_form():
    C = _mds(6, 3, q=7)
    S = extract_structured_parity(C, [tuple(range(6))], LocalityParams(5, 2))
    assert len(S.bands) == 1 and S.bands[0].rows == 1 and S.l == 2  # l = d - delta


def test_structured_form_rejects_non_minimal_groups(c642):
    with pytest.raises(NotMinimalDecomposition):
        extract_structured_parity(c642, [(0, 1, 2)], LocalityParams(3, 2))

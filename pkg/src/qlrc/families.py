"""Three infinite families of Hermitian dual-containing optimal LRCs over GF(q^2).

Each builder assembles the parity-check matrix, then certifies everything it
claims (locality, exact distance, optimality, the banded parity-check form,
block self-orthogonality and the quantum verdict) before returning.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import ceil
from typing import Union

from .code import DEFAULT_BUDGET, DistanceBudget, LinearCode, min_distance
from .errors import (
    CertificationFailed,
    InvalidParams,
    MalformedInput,
    NoValidLambdaMu,
    RankDeficientInput,
)
from .gf import MAX_ORDER, FieldSpec, field_create, prime_power, root_of_unity
from .linalg import Matrix, block_diagonal, stack_horizontal, stack_vertical
from .locality import (
    LocalityCertificate,
    LocalityParams,
    StructuredParityCheck,
    block_criterion_failures,
    certify_lrc,
    extract_structured_parity,
    is_optimal_lrc,
    singleton_like_bound,
)
from .quantum import QuantumLrcVerdict, QuantumParams, induce_with_verdict

__all__ = [
    "Family1Params",
    "Family2Params",
    "Family3Params",
    "FamilyInstance",
    "build_family",
    "build_family1",
    "build_family2",
    "build_family3",
    "expected_parameters",
    "make_params",
    "valid_tuples",
    "validate_params",
]


@dataclass(frozen=True)
class Family1Params:
    q: int
    u: int
    v: int
    t: int


@dataclass(frozen=True)
class Family2Params:
    q: int
    s: int
    v: int
    t: int


@dataclass(frozen=True)
class Family3Params:
    q: int
    s: int
    v: int
    t: int


FamilyParams = Union[Family1Params, Family2Params, Family3Params]
PARAM_CLASSES = {1: Family1Params, 2: Family2Params, 3: Family3Params}
PARAM_NAMES = {1: ("q", "u", "v", "t"), 2: ("q", "s", "v", "t"), 3: ("q", "s", "v", "t")}


def family_of(p: FamilyParams) -> int:
    for fam, cls in PARAM_CLASSES.items():
        if isinstance(p, cls):
            return fam
    raise TypeError(f"not a family parameter set: {p!r}")


def validate_params(family: int, raw: tuple[int, ...] | dict) -> list[str]:
    """Every violated hypothesis of the family's construction (empty if valid).

    `raw` is (q, u, v, t) for family 1 and (q, s, v, t) for families 2 and 3,
    or a dict with those names."""
    if family not in PARAM_CLASSES:
        return [f"unknown family {family}; expected 1, 2 or 3"]
    names = PARAM_NAMES[family]
    if isinstance(raw, dict):
        missing = [n for n in names if n not in raw]
        if missing:
            return [f"missing parameter {n}" for n in missing]
        values = {n: raw[n] for n in names}
    else:
        if len(raw) != 4:
            return [f"family {family} takes 4 parameters {names}, got {len(raw)}"]
        values = dict(zip(names, raw))
    bad = []
    for n, val in values.items():
        if not isinstance(val, int) or isinstance(val, bool):
            bad.append(f"{n} = {val!r} is not an integer")
    if bad:
        return bad
    for n, val in values.items():
        if val < 1:
            bad.append(f"{n} = {val} must be a positive integer")
    q = values["q"]
    if q >= 2 and prime_power(q) is None:
        bad.append(f"q = {q} is not a prime power")
    elif q * q > MAX_ORDER:
        bad.append(f"q^2 = {q * q} exceeds the supported field order {MAX_ORDER}")
    v, t = values["v"], values["t"]
    if family == 1:
        u = values["u"]
        if q < 5:
            bad.append(f"q = {q} < 5")
        if v > u:
            bad.append(f"v = {v} exceeds u = {u}")
        cap = (q - 1) // 2 - 1
        if u + v > cap:
            bad.append(f"u+v exceeds ⌊(q−1)/2⌋−1 ({u + v} > {cap})")
        return bad
    s = values["s"]
    q_min, v_min, s_gap, vt_gap = (7, 6, 2, 3) if family == 2 else (9, 8, 3, 4)
    if q < q_min:
        bad.append(f"q = {q} < {q_min}")
    if v >= 1 and (q - 1) % v:
        bad.append(f"v = {v} does not divide q−1 = {q - 1}")
    if v < v_min:
        bad.append(f"v = {v} < {v_min}")
    if s > v // 2 - s_gap:
        bad.append(f"s exceeds ⌊v/2⌋−{s_gap} ({s} > {v // 2 - s_gap})")
    if v * t > q + v - s - vt_gap:
        bad.append(f"vt exceeds q+v−s−{vt_gap} ({v * t} > {q + v - s - vt_gap})")
    return bad


def make_params(family: int, raw: tuple[int, ...] | dict) -> FamilyParams:
    bad = validate_params(family, raw)
    if bad:
        raise InvalidParams(bad)
    if isinstance(raw, dict):
        return PARAM_CLASSES[family](**{n: raw[n] for n in PARAM_NAMES[family]})
    return PARAM_CLASSES[family](*raw)


def expected_parameters(p: FamilyParams) -> dict:
    """Closed-form parameters the construction claims."""
    fam = family_of(p)
    if fam == 1:
        n = p.t * (p.q - 1)
        k = n - p.t * p.u - p.v
        return {"n": n, "k": k, "d": p.u + p.v + 1, "r": p.q - 1 - p.u, "delta": p.u + 1,
                "quantum_k": n - 2 * p.t * p.u - 2 * p.v}
    n = p.t * (2 * p.q + p.v - 2)
    extra = 1 if fam == 2 else 2
    return {"n": n, "k": n - 2 * p.s * p.t - extra, "d": p.s + 1 + extra, "r": p.q + p.v - p.s - 1,
            "delta": p.s + 1, "quantum_k": n - 4 * p.s * p.t - 2 * extra}


def valid_tuples(max_length: int) -> list[FamilyParams]:
    """All valid parameter sets of the three families with code length <= max_length."""
    out: list[FamilyParams] = []
    for q in range(2, max_length + 2):
        if prime_power(q) is None or q * q > MAX_ORDER:
            continue
        for t in range(1, max_length // max(1, q - 1) + 1):
            for u in range(1, q):
                for v in range(1, u + 1):
                    if not validate_params(1, (q, u, v, t)) and t * (q - 1) <= max_length:
                        out.append(Family1Params(q, u, v, t))
        for fam in (2, 3):
            for v in range(1, q):
                for s in range(1, v):
                    for t in range(1, max_length + 1):
                        if t * (2 * q + v - 2) > max_length:
                            break
                        if not validate_params(fam, (q, s, v, t)):
                            out.append(PARAM_CLASSES[fam](q, s, v, t))
    return out


# ---------------------------------------------------------------------------
# instances


@dataclass
class FamilyInstance:
    family: int
    params: FamilyParams
    classical: LinearCode
    locality: LocalityParams
    groups: tuple[tuple[int, ...], ...]
    cert: LocalityCertificate
    structured: StructuredParityCheck
    quantum: QuantumParams
    verdict: QuantumLrcVerdict
    provenance: dict = field(default_factory=dict)

    @property
    def distance(self) -> int:
        cached = self.classical.cached_distance()
        assert cached is not None
        return cached.d

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": asdict(self.params),
            "classical": self.classical.to_json(),
            "locality": self.locality.to_json(),
            "groups": [list(g) for g in self.groups],
            "certificate": self.cert.to_json(),
            "structured": self.structured.to_json(),
            "quantum": self.quantum.to_json(),
            "verdict": self.verdict.to_json(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> FamilyInstance:
        """Reload a stored instance without re-running the certification."""
        from .code import DistanceResult

        try:
            fam = int(obj["family"])
            params = make_params(fam, {k: int(v) for k, v in obj["params"].items()})
            code = LinearCode.from_json(obj["classical"])
            if "d" in obj["classical"]:
                code._store_distance(DistanceResult(int(obj["classical"]["d"]), "stored", ()))
            loc = obj["locality"]
            inst = cls(
                fam,
                params,
                code,
                LocalityParams(int(loc["r"]), int(loc["delta"])),
                tuple(tuple(int(x) for x in g) for g in obj["groups"]),
                LocalityCertificate.from_json(obj["certificate"]),
                StructuredParityCheck.from_json(obj["structured"]),
                QuantumParams.from_json(obj["quantum"]),
                QuantumLrcVerdict.from_json(obj["verdict"]),
                dict(obj.get("provenance", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad family instance: {exc}") from exc
        return inst


def _field_for(q: int) -> FieldSpec:
    pm = prime_power(q)
    assert pm is not None
    return field_create(pm[0], 2 * pm[1])


def _powers_row(spec: FieldSpec, xs: list[int], e: int) -> list[int]:
    return [spec.ops.s_pow(x, e) for x in xs]


def _unit_subgroup(spec: FieldSpec, omega: int, q: int) -> set[int]:
    """{omega^j : 1 <= j <= q-1}, i.e. GF(q)^* inside GF(q^2)."""
    return {spec.ops.s_pow(omega, j) for j in range(1, q)}


def _first_outside(spec: FieldSpec, excluded: set[int]) -> int:
    for x in range(1, spec.order):
        if x not in excluded:
            return x
    raise NoValidLambdaMu("every unit lies in the excluded set")


def _lambda_mu(spec: FieldSpec, excluded: set[int]) -> tuple[int, int]:
    ops = spec.ops
    for lam in range(1, spec.order):
        if lam in excluded:
            continue
        inv = ops.s_inv(lam)
        for mu in range(1, spec.order):
            if mu in excluded:
                continue
            if ops.s_mul(mu, inv) not in excluded:
                return lam, mu
    raise NoValidLambdaMu("no pair (lambda, mu) avoids the excluded set")


def build_family1(
    p: Family1Params,
    budget: DistanceBudget | None = None,
    omegas: list[int] | None = None,
) -> FamilyInstance:
    """Family 1; `omegas` optionally fixes the primitive (q-1)-th roots (encodings) per block."""
    make_params(1, asdict(p))
    F = _field_for(p.q)
    width = p.q - 1
    if omegas is None:
        omegas = [root_of_unity(F, width, i).enc for i in range(1, p.t + 1)]
    else:
        omegas = [int(w) for w in omegas]
        if len(omegas) != p.t or any(not 0 < w < F.order or F.element(w).order() != width for w in omegas):
            raise InvalidParams([f"omegas must be {p.t} primitive {width}-th roots of unity"])
    bands, extra = [], []
    for w in omegas:
        points = [F.ops.s_pow(w, l) for l in range(width)]
        bands.append(Matrix(F, [_powers_row(F, points, j) for j in range(1, p.u + 1)]))
        extra.append(Matrix(F, [_powers_row(F, points, p.u + j) for j in range(1, p.v + 1)]))
    H = stack_vertical([block_diagonal(bands, F), stack_horizontal(extra, F)], F)
    groups = tuple(tuple(range(i * width, (i + 1) * width)) for i in range(p.t))
    provenance = {"generator": F.ops.generator, "omega": omegas}
    return _certify(1, p, F, H, groups, provenance, budget)


def _family23_blocks(p, F: FieldSpec, fam: int):
    q, s, v, t = p.q, p.s, p.v, p.t
    width = q - 1
    zeta = root_of_unity(F, v, 1).enc
    ys = [F.ops.s_pow(zeta, l) for l in range(v)]
    omegas = [root_of_unity(F, width, i).enc for i in range(1, t + 1)]
    lambdas, mus = [], []
    blocks, extra = [], []
    for w in omegas:
        excluded = _unit_subgroup(F, w, q)
        if fam == 2:
            lam, mu = _first_outside(F, excluded), None
        else:
            lam, mu = _lambda_mu(F, excluded)
        lambdas.append(lam)
        powers = [F.ops.s_pow(w, j) for j in range(width)]
        xs = [F.ops.s_mul(lam, x) for x in powers]
        third = xs if fam == 2 else [F.ops.s_mul(mu, x) for x in powers]
        if mu is not None:
            mus.append(mu)
        if set(xs) & set(ys):
            raise CertificationFailed("x and y evaluation points collide")
        if fam == 3 and (set(xs) & set(third) or set(ys) & set(third)):
            raise CertificationFailed("z evaluation points collide with x or y")
        zeros = [0] * width
        rows = []
        for a in range(1, s + 1):
            rows.append(_powers_row(F, xs, a) + _powers_row(F, ys, a) + zeros)
        for a in range(1, s + 1):
            rows.append(zeros + _powers_row(F, ys, a) + _powers_row(F, third, a))
        blocks.append(Matrix(F, rows))
        points = xs + ys + third
        extra.append(Matrix(F, [_powers_row(F, points, s + j) for j in range(1, (1 if fam == 2 else 2) + 1)]))
    provenance = {"generator": F.ops.generator, "omega": omegas, "zeta": zeta, "lambda": lambdas}
    if fam == 3:
        provenance["mu"] = mus
    return blocks, extra, provenance


def _build_family23(fam: int, p, budget) -> FamilyInstance:
    make_params(fam, asdict(p))
    F = _field_for(p.q)
    blocks, extra, provenance = _family23_blocks(p, F, fam)
    H = stack_vertical([block_diagonal(blocks, F), stack_horizontal(extra, F)], F)
    block_len = 2 * p.q + p.v - 2
    left = p.q - 1 + p.v
    groups = []
    for i in range(p.t):
        base = i * block_len
        groups.append(tuple(range(base, base + left)))
        groups.append(tuple(range(base + p.q - 1, base + block_len)))
    return _certify(fam, p, F, H, tuple(groups), provenance, budget)


def build_family2(p: Family2Params, budget: DistanceBudget | None = None) -> FamilyInstance:
    return _build_family23(2, p, budget)


def build_family3(p: Family3Params, budget: DistanceBudget | None = None) -> FamilyInstance:
    return _build_family23(3, p, budget)


def build_family(p: FamilyParams, budget: DistanceBudget | None = None) -> FamilyInstance:
    return {1: build_family1, 2: build_family2, 3: build_family3}[family_of(p)](p, budget)


def _certify(fam, p, F, H: Matrix, groups, provenance, budget) -> FamilyInstance:
    budget = budget or DEFAULT_BUDGET
    exp = expected_parameters(p)
    rows_expected = {1: p.t * getattr(p, "u", 0) + p.v, 2: 2 * getattr(p, "s", 0) * p.t + 1,
                     3: 2 * getattr(p, "s", 0) * p.t + 2}[fam]
    if H.shape != (rows_expected, exp["n"]):
        raise CertificationFailed(f"H has shape {H.shape}, expected {(rows_expected, exp['n'])}")
    try:
        C = LinearCode.from_parity(H)
    except RankDeficientInput as exc:
        raise CertificationFailed(f"parity-check rows are dependent: {exc}") from exc
    if C.k != exp["k"]:
        raise CertificationFailed(f"k = {C.k}, expected {exp['k']}")
    loc = LocalityParams(exp["r"], exp["delta"])
    cert = certify_lrc(C, loc, groups, budget)
    d = min_distance(C, budget)
    if d != exp["d"]:
        raise CertificationFailed(f"d = {d}, expected {exp['d']}")
    if d != singleton_like_bound(C.n, C.k, loc.r, loc.delta) or not is_optimal_lrc(C, loc, cert, budget):
        raise CertificationFailed("code does not meet the Singleton-like bound")
    if len(groups) != ceil(C.k / loc.r):
        raise CertificationFailed("group count differs from ceil(k/r)")
    structured = extract_structured_parity(C, groups, loc, budget)
    failures = block_criterion_failures(structured, "hermitian")
    if failures:
        raise CertificationFailed("block self-orthogonality fails: " + "; ".join(failures))
    quantum, verdict = induce_with_verdict(C, loc, "hermitian", budget, cert)
    if (quantum.n, quantum.k, quantum.d, quantum.q) != (exp["n"], exp["quantum_k"], exp["d"], p.q):
        raise CertificationFailed(f"quantum parameters {quantum.label} differ from the closed form")
    return FamilyInstance(fam, p, C, loc, groups, cert, structured, quantum, verdict, provenance)

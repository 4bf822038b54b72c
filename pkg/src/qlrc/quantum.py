"""Quantum codes induced from classical codes and the optimality verdict for
quantum (r, delta)-LRCs."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

import numpy as np

from .code import (
    DEFAULT_BUDGET,
    DistanceBudget,
    LinearCode,
    all_subsets_independent,
    distance_is_cheap,
    dual_euclidean,
    inner_products,
    same_code,
    is_dual_containing,
    iter_codeword_chunks,
    min_distance,
)
from .errors import (
    BudgetExceeded,
    DistanceTooSmall,
    InvariantViolation,
    MalformedInput,
    NotDualContaining,
    NotOptimal,
    PreconditionViolated,
    SpecMismatch,
    TooLarge,
    UncoveredCoordinate,
    Unsupported,
)
from .locality import LocalityCertificate, LocalityParams, certify_lrc, is_optimal_lrc

__all__ = [
    "QuantumLrcVerdict",
    "QuantumParams",
    "css_params",
    "hermitian_params",
    "induce_optimal_quantum",
    "induce_with_verdict",
    "quantum_singleton_identity",
    "verify_optimal_css_pair",
    "verify_optimal_quantum_lrc",
]


@dataclass(frozen=True)
class QuantumParams:
    n: int
    k: int
    d: int
    q: int
    construction: str  # "css" or "hermitian"
    # False when d is only the classical lower bound on the quantum distance
    d_exact: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise InvariantViolation(f"quantum dimension {self.k} outside 0..{self.n}")
        if self.k > 0 and 2 * self.d > self.n - self.k + 2:
            raise InvariantViolation(f"[[{self.n},{self.k},{self.d}]] violates the quantum Singleton bound")

    @property
    def label(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]_{self.q}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "construction": self.construction,
            "d_exact": self.d_exact,
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuantumParams:
        try:
            return cls(
                int(obj["n"]), int(obj["k"]), int(obj["d"]), int(obj["q"]),
                str(obj["construction"]), bool(obj.get("d_exact", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad quantum parameters: {exc}") from exc


def _min_weight_outside(C: LinearCode, sub: LinearCode, budget: DistanceBudget) -> int | None:
    """Smallest weight of a codeword of C outside the subcode `sub` (None if C = sub)."""
    if C.spec.order**C.k > budget.max_codewords:
        raise BudgetExceeded(f"coset enumeration needs {C.spec.order}^{C.k} codewords")
    best = None
    for words in iter_codeword_chunks(C.G):
        # membership in sub: orthogonal to every row of sub's parity-check matrix
        inside = ~C.spec.ops.dot_rows(words, sub.H.data).any(axis=1)
        wts = np.count_nonzero(words[~inside], axis=1)
        if wts.size:
            w = int(wts.min())
            best = w if best is None else min(best, w)
    return best


def css_params(C1: LinearCode, C2: LinearCode, budget: DistanceBudget | None = None) -> QuantumParams:
    """Parameters of the CSS code from C2^perp inside C1."""
    budget = budget or DEFAULT_BUDGET
    if C1.spec != C2.spec:
        raise SpecMismatch("CSS codes must share a field")
    if C1.n != C2.n:
        raise PreconditionViolated("CSS codes must have the same length")
    if inner_products(C1.H, C2.H).any():
        raise NotDualContaining("C2^perp is not contained in C1")
    n = C1.n
    k = C1.k + C2.k - n
    if k == 0:
        d = min(min_distance(C1, budget), min_distance(C2, budget))
    else:
        c2_dual = dual_euclidean(C2)
        c1_dual = dual_euclidean(C1)
        candidates = [
            w
            for w in (_min_weight_outside(C1, c2_dual, budget), _min_weight_outside(C2, c1_dual, budget))
            if w is not None
        ]
        d = min(candidates)
    return QuantumParams(n, k, d, C1.spec.order, "css", d_exact=k > 0)


def hermitian_params(C: LinearCode, budget: DistanceBudget | None = None) -> QuantumParams:
    """[[n, 2k - n, >= d]]_q from a Hermitian dual-containing [n, k, d]_{q^2} code."""
    q = C.spec.sub_order
    if not is_dual_containing(C, "hermitian"):
        raise NotDualContaining("the code is not Hermitian dual-containing")
    return QuantumParams(C.n, 2 * C.k - C.n, min_distance(C, budget), q, "hermitian", d_exact=False)


def quantum_singleton_identity(n: int, k: int, d: int, r: int, delta: int) -> tuple[int, int]:
    """Both sides of k + 2d + 2(ceil((n+k)/(2r)) - 1)(delta - 1) = n + 2."""
    lhs = k + 2 * d + 2 * (ceil((n + k) / (2 * r)) - 1) * (delta - 1)
    return lhs, n + 2


@dataclass
class QuantumLrcVerdict:
    optimal: bool
    n: int
    k: int
    d: int
    q: int
    construction: str
    identity_lhs: int
    identity_rhs: int
    delta: int
    # exact d(C^perp); None when the dual is zero or too costly to compute
    dual_distance: int | None
    # delta <= d(C^perp), decided by independence of every delta - 1 columns of G
    dual_clause: bool
    dual_containing: bool
    locality: bool
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.optimal

    def to_json(self) -> dict:
        return {
            "optimal": self.optimal,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "construction": self.construction,
            "identity": {"lhs": self.identity_lhs, "rhs": self.identity_rhs},
            "delta_vs_dual": [self.delta, self.dual_distance],
            "dual_clause": self.dual_clause,
            "dual_containing": self.dual_containing,
            "locality": self.locality,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuantumLrcVerdict:
        try:
            return cls(
                bool(obj["optimal"]), int(obj["n"]), int(obj["k"]), int(obj["d"]), int(obj["q"]),
                str(obj["construction"]), int(obj["identity"]["lhs"]), int(obj["identity"]["rhs"]),
                int(obj["delta_vs_dual"][0]),
                None if obj["delta_vs_dual"][1] is None else int(obj["delta_vs_dual"][1]),
                bool(obj["dual_clause"]),
                bool(obj["dual_containing"]), bool(obj["locality"]), list(obj.get("notes", [])),
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise MalformedInput(f"bad verdict: {exc}") from exc


def _construction(C: LinearCode, form: str) -> tuple[str, int]:
    if form == "hermitian":
        return "hermitian", C.spec.sub_order
    if form == "euclidean":
        return "css", C.spec.order
    raise ValueError(f"unknown form {form!r}")


def verify_optimal_quantum_lrc(
    C: LinearCode,
    params: LocalityParams,
    form: str = "hermitian",
    budget: DistanceBudget | None = None,
    cert: LocalityCertificate | None = None,
) -> QuantumLrcVerdict:
    """Check every clause for C to induce an optimal quantum (r, delta)-LRC:
    dual containment, (r, delta) locality, delta <= d(C^perp) and the
    Singleton-like identity for the induced [[n, 2k - n, d]] code."""
    budget = budget or DEFAULT_BUDGET
    construction, q = _construction(C, form)
    notes = []
    n = C.n
    kq = 2 * C.k - n
    contains = is_dual_containing(C, form)
    if not contains:
        notes.append(f"not {form} dual-containing")
    if kq < 0:
        notes.append("2k - n is negative")
    locality = True
    if cert is None:
        try:
            cert = certify_lrc(C, params, budget=budget)
        except (UncoveredCoordinate, TooLarge, DistanceTooSmall) as exc:
            locality = False
            notes.append(f"no (r, delta) locality: {exc}")
    elif cert.params != params or len(cert.cover) != n:
        locality = False
        notes.append("certificate does not match the code and parameters")
    d = min_distance(C, budget)
    dual_d = None
    dual_clause = True
    if C.H.rows:
        dual_code = dual_euclidean(C)
        if distance_is_cheap(dual_code, budget):
            dual_d = min_distance(dual_code, budget)
            dual_clause = params.delta <= dual_d
        else:
            # d(C^perp) >= delta iff every delta - 1 columns of G are independent
            dual_clause = all_subsets_independent(C.G, params.delta - 1, budget)
            notes.append("dual distance not computed exactly (over budget); clause decided by column independence")
        if not dual_clause:
            shown = f" {dual_d}" if dual_d is not None else ""
            notes.append(f"delta = {params.delta} exceeds the dual distance{shown}")
    lhs, rhs = quantum_singleton_identity(n, kq, d, params.r, params.delta)
    if lhs != rhs:
        notes.append(f"identity fails: {lhs} != {rhs}")
    optimal = (
        contains
        and kq >= 0
        and locality
        and dual_clause
        and lhs == rhs
    )
    return QuantumLrcVerdict(
        optimal, n, kq, d, q, construction, lhs, rhs, params.delta, dual_d, dual_clause, contains, locality, notes
    )


def induce_with_verdict(
    C: LinearCode,
    params: LocalityParams,
    form: str = "hermitian",
    budget: DistanceBudget | None = None,
    cert: LocalityCertificate | None = None,
) -> tuple[QuantumParams, QuantumLrcVerdict]:
    """Quantum parameters induced by a dual-containing optimal LRC, with the
    verdict that certifies them."""
    budget = budget or DEFAULT_BUDGET
    construction, q = _construction(C, form)
    if not is_dual_containing(C, form):
        raise NotDualContaining(f"the code is not {form} dual-containing")
    if cert is None:
        cert = certify_lrc(C, params, budget=budget)
    if not is_optimal_lrc(C, params, cert, budget):
        raise NotOptimal("the code is not an optimal (r, delta)-LRC")
    t = ceil(C.k / params.r)
    if C.n - C.k < t * (params.delta - 1):
        raise InvariantViolation("n - k < ceil(k/r)(delta - 1) for a dual-containing optimal LRC")
    verdict = verify_optimal_quantum_lrc(C, params, form, budget, cert)
    if not verdict.optimal:
        raise InvariantViolation("optimal dual-containing LRC failed the quantum verdict: " + "; ".join(verdict.notes))
    return QuantumParams(C.n, verdict.k, verdict.d, q, construction, d_exact=True), verdict


def induce_optimal_quantum(
    C: LinearCode,
    params: LocalityParams,
    form: str = "hermitian",
    budget: DistanceBudget | None = None,
    cert: LocalityCertificate | None = None,
) -> QuantumParams:
    return induce_with_verdict(C, params, form, budget, cert)[0]


def verify_optimal_css_pair(
    C1: LinearCode,
    C2: LinearCode,
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> QuantumLrcVerdict:
    """Verdict for a CSS pair; only the single-code case C1 = C2 is defined."""
    if not same_code(C1, C2):
        raise Unsupported("quantum (r, delta) optimality is only defined when C1 = C2")
    return verify_optimal_quantum_lrc(C1, params, "euclidean", budget)

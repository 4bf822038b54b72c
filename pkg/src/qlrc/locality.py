"""Locality of linear codes.

Coordinates are 0-based everywhere.  A *local protection support* for
coordinate i is a set S containing i with |S| <= r + delta - 1 whose
restriction C|_S has minimum distance at least delta.

Every such S is the complement of a flat F of the column matroid of H:
the dual codewords supported inside S are exactly those of the form x H with
x orthogonal to the columns in F.  Enumerating flats of small rank therefore
enumerates every candidate support, and the leftover rows of the elimination
are a parity-check matrix of C|_S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, Sequence

import numpy as np

from .code import (
    DEFAULT_BUDGET,
    DistanceBudget,
    LinearCode,
    inner_products,
    is_mds,
    iter_codeword_chunks,
    min_distance,
    puncture,
)
from .errors import (
    AssemblyFailed,
    DistanceTooSmall,
    IndexOutOfRange,
    InvalidParams,
    InvariantViolation,
    MalformedInput,
    NoneFound,
    NotMinimalDecomposition,
    NotOptimal,
    PreconditionViolated,
    TooLarge,
    UncoveredCoordinate,
)
from .gf import FieldSpec
from .linalg import Matrix, nullspace, rank, row_basis, rref, same_row_space, select_columns, stack_vertical
from .search import SubsetCounter, iter_flats, smallest_dependent_set

__all__ = [
    "Decomposition",
    "DecompositionCheck",
    "LocalityCertificate",
    "LocalityParams",
    "RepairGroup",
    "RigidityReport",
    "StructuredParityCheck",
    "block_criterion_failures",
    "block_self_orthogonality_criterion",
    "certify_lrc",
    "certify_optimal_from_decomposition",
    "decompose",
    "extract_structured_parity",
    "find_local_protection",
    "is_optimal_lrc",
    "local_protection_supports",
    "minimal_decomposition_violations",
    "mutual_rigidity_check",
    "rigidity_check",
    "singleton_like_bound",
    "verify_decomposition",
    "verify_repair_group",
]


@dataclass(frozen=True)
class LocalityParams:
    r: int
    delta: int

    def __post_init__(self) -> None:
        bad = []
        if self.r < 1:
            bad.append(f"r = {self.r} must be at least 1")
        if self.delta < 2:
            bad.append(f"delta = {self.delta} must be at least 2")
        if bad:
            raise InvalidParams(bad)

    @property
    def max_support(self) -> int:
        return self.r + self.delta - 1

    def to_json(self) -> dict:
        return {"r": self.r, "delta": self.delta}


def singleton_like_bound(n: int, k: int, r: int, delta: int) -> int:
    """Largest possible minimum distance of an [n, k] code with (r, delta) locality."""
    return n - k + 1 - (ceil(k / r) - 1) * (delta - 1)


def _support(S: Iterable[int], n: int) -> tuple[int, ...]:
    out = tuple(sorted({int(i) for i in S}))
    for i in out:
        if not 0 <= i < n:
            raise IndexOutOfRange(f"coordinate {i} outside 0..{n - 1}")
    return out


def _rank_of(C: LinearCode, coords: Iterable[int]) -> int:
    cols = sorted(set(coords))
    if not cols:
        return 0
    return rank(select_columns(C.G, cols))


# ---------------------------------------------------------------------------
# repair groups and certificates


@dataclass(frozen=True)
class RepairGroup:
    support: tuple[int, ...]
    dimension: int
    distance: int

    def to_json(self) -> dict:
        return {"support": list(self.support), "dimension": self.dimension, "distance": self.distance}


def verify_repair_group(
    C: LinearCode,
    i: int,
    S: Sequence[int],
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> RepairGroup:
    support = _support(S, C.n)
    if int(i) not in support:
        raise PreconditionViolated(f"coordinate {i} is not in the support {list(support)}")
    if len(support) > params.max_support:
        raise TooLarge(f"|S| = {len(support)} exceeds r + delta - 1 = {params.max_support}")
    local = puncture(C, support)
    if local.k == 0:
        raise DistanceTooSmall(f"C restricted to {list(support)} is the zero code")
    d = min_distance(local, budget)
    if d < params.delta:
        raise DistanceTooSmall(f"C restricted to {list(support)} has distance {d} < {params.delta}")
    return RepairGroup(support, local.k, d)


@dataclass(frozen=True)
class Candidate:
    """A local protection support with the redundancy of its restriction."""

    support: tuple[int, ...]
    redundancy: int


def local_protection_supports(
    C: LinearCode, params: LocalityParams, budget: DistanceBudget | None = None
) -> list[Candidate]:
    """Every local protection support of C, found through the flats of M(H)."""
    budget = budget or DEFAULT_BUDGET
    n, m = C.n, C.H.rows
    max_rank = m - (params.delta - 1)
    if max_rank < 0:
        return []
    counter = SubsetCounter(budget.max_subsets)
    out = []
    for flat in iter_flats(C.H.data, C.spec, max_rank, counter):
        S = np.flatnonzero(~flat.closure)
        size = S.size
        if size == 0 or size > params.max_support:
            continue
        e = m - flat.rank
        if e >= size:
            # the restriction is the zero code
            continue
        if params.delta > 2:
            local_checks = flat.residual[:, S]
            if smallest_dependent_set(local_checks, C.spec, counter, limit=params.delta - 1):
                continue
        out.append(Candidate(tuple(int(x) for x in S), e))
    return out


def _best_containing(cands: Sequence[Candidate], coords: Iterable[int]) -> Candidate | None:
    need = set(coords)
    best = None
    for c in cands:
        if need.issubset(c.support):
            key = (len(c.support), c.support)
            if best is None or key < (len(best.support), best.support):
                best = c
    return best


def find_local_protection(
    C: LinearCode,
    i: int,
    params: LocalityParams,
    budget: DistanceBudget | None = None,
    candidates: Sequence[Candidate] | None = None,
) -> RepairGroup:
    """Smallest local protection support containing i (ties: lexicographic)."""
    if not 0 <= i < C.n:
        raise IndexOutOfRange(f"coordinate {i} outside 0..{C.n - 1}")
    if candidates is None:
        candidates = local_protection_supports(C, params, budget)
    best = _best_containing(candidates, [i])
    if best is None:
        raise NoneFound(f"no local protection support contains coordinate {i}")
    return verify_repair_group(C, i, best.support, params, budget)


@dataclass(frozen=True)
class LocalityCertificate:
    params: LocalityParams
    groups: tuple[RepairGroup, ...]
    cover: tuple[int, ...]  # cover[i] = index of the group repairing coordinate i

    def group_for(self, i: int) -> RepairGroup:
        return self.groups[self.cover[i]]

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "groups": [g.to_json() for g in self.groups],
            "cover": {str(i): g for i, g in enumerate(self.cover)},
        }

    @classmethod
    def from_json(cls, obj: dict) -> LocalityCertificate:
        try:
            params = LocalityParams(int(obj["params"]["r"]), int(obj["params"]["delta"]))
            groups = tuple(
                RepairGroup(tuple(g["support"]), int(g["dimension"]), int(g["distance"]))
                for g in obj["groups"]
            )
            cover_map = {int(k): int(v) for k, v in obj["cover"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad certificate: {exc}") from exc
        cover = tuple(cover_map[i] for i in range(len(cover_map)))
        return cls(params, groups, cover)


def certify_lrc(
    C: LinearCode,
    params: LocalityParams,
    groups: Sequence[Sequence[int]] | None = None,
    budget: DistanceBudget | None = None,
) -> LocalityCertificate:
    """Certificate of (r, delta) locality.

    User-supplied groups are verified and must cover every coordinate; without
    groups each uncovered coordinate gets its smallest local protection support.
    """
    n = C.n
    chosen: list[RepairGroup] = []
    cover: list[int | None] = [None] * n
    if groups is not None:
        for g in groups:
            support = _support(g, n)
            if not support:
                raise PreconditionViolated("empty repair group")
            chosen.append(verify_repair_group(C, support[0], support, params, budget))
        for idx, grp in enumerate(chosen):
            for i in grp.support:
                if cover[i] is None:
                    cover[i] = idx
        for i in range(n):
            if cover[i] is None:
                raise UncoveredCoordinate(i, "not in any supplied group")
    else:
        cands = local_protection_supports(C, params, budget)
        for i in range(n):
            if cover[i] is not None:
                continue
            best = _best_containing(cands, [i])
            if best is None:
                raise UncoveredCoordinate(i)
            grp = verify_repair_group(C, i, best.support, params, budget)
            chosen.append(grp)
            for j in grp.support:
                if cover[j] is None:
                    cover[j] = len(chosen) - 1
    return LocalityCertificate(params, tuple(chosen), tuple(int(c) for c in cover))  # type: ignore[arg-type]


def is_optimal_lrc(
    C: LinearCode,
    params: LocalityParams,
    cert: LocalityCertificate,
    budget: DistanceBudget | None = None,
) -> bool:
    if cert.params != params:
        raise PreconditionViolated(f"certificate is for {cert.params}, not {params}")
    if len(cert.cover) != C.n:
        raise PreconditionViolated("certificate does not match the code length")
    return min_distance(C, budget) == singleton_like_bound(C.n, C.k, params.r, params.delta)


# ---------------------------------------------------------------------------
# decomposition of an optimal code


@dataclass(frozen=True)
class Decomposition:
    """Case I / Case II split of the coordinates of an optimal code."""

    case: str  # "I" or "II"
    groups: tuple[tuple[int, ...], ...]
    terminal: tuple[int, ...]
    residual: tuple[int, ...]
    # the local protection support the terminal coordinates were drawn from
    terminal_support: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "case": self.case,
            "groups": [list(g) for g in self.groups],
            "terminal": list(self.terminal),
            "residual": list(self.residual),
        }
        if self.terminal_support is not None:
            out["terminal_support"] = list(self.terminal_support)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Decomposition:
        try:
            ts = obj.get("terminal_support")
            return cls(
                str(obj["case"]),
                tuple(tuple(int(x) for x in g) for g in obj["groups"]),
                tuple(int(x) for x in obj.get("terminal", [])),
                tuple(int(x) for x in obj["residual"]),
                None if ts is None else tuple(int(x) for x in ts),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad decomposition: {exc}") from exc

    def summary(self) -> str:
        def fmt(xs):
            return "{" + ",".join(str(x) for x in xs) + "}"

        lines = [f"Case {self.case}"]
        for idx, g in enumerate(self.groups, 1):
            lines.append(f"  C{idx} = {fmt(g)}")
        if self.case == "I":
            lines.append(f"  terminal = ({','.join(str(x) for x in self.terminal)})")
        lines.append(f"  U = {fmt(self.residual)}")
        return "\n".join(lines)


def decompose(
    C: LinearCode,
    cert: LocalityCertificate,
    budget: DistanceBudget | None = None,
) -> Decomposition:
    """Split the coordinates of an optimal code into repair groups, terminal
    coordinates and a residual set whose size equals the minimum distance.

    Repeatedly takes the smallest coordinate not yet covered and adjoins the
    certificate's group for it while the union stays rank deficient by at least
    two; the first group that would reach full rank contributes only enough
    coordinates (smallest first) to reach rank k - 1.
    """
    params = cert.params
    if not is_optimal_lrc(C, params, cert, budget):
        raise NotOptimal(
            f"d = {min_distance(C, budget)} is below the bound "
            f"{singleton_like_bound(C.n, C.k, params.r, params.delta)}"
        )
    k, n = C.k, C.n
    covered: set[int] = set()
    groups: list[tuple[int, ...]] = []
    terminal: list[int] = []
    terminal_support = None
    case = "II"
    current = 0
    while current <= k - 2:
        i = min(j for j in range(n) if j not in covered)
        T = cert.group_for(i).support
        joined = _rank_of(C, covered | set(T))
        if joined < k:
            covered |= set(T)
            groups.append(T)
            current = joined
            continue
        case = "I"
        terminal_support = T
        for j in T:
            if j in covered:
                continue
            bigger = _rank_of(C, covered | set(terminal) | {j})
            if bigger > current:
                terminal.append(j)
                current = bigger
                if current == k - 1:
                    break
        break
    used = covered | set(terminal)
    residual = tuple(j for j in range(n) if j not in used)
    D = Decomposition(case, tuple(groups), tuple(terminal), residual, terminal_support)
    check = verify_decomposition(C, D, params, budget)
    if not check:
        raise InvariantViolation("decomposition failed its own checks: " + "; ".join(check.violations))
    return D


@dataclass
class DecompositionCheck:
    ok: bool
    violations: list[str] = field(default_factory=list)
    new_sizes: list[int] = field(default_factory=list)  # s_i
    rank_gains: list[int] = field(default_factory=list)  # r_i

    def __bool__(self) -> bool:
        return self.ok


def verify_decomposition(
    C: LinearCode,
    D: Decomposition,
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> DecompositionCheck:
    """Re-derive every structural property of a decomposition from scratch."""
    bad: list[str] = []
    n, k = C.n, C.k
    t = ceil(k / params.r)
    if D.case not in ("I", "II"):
        return DecompositionCheck(False, [f"unknown case {D.case!r}"])
    all_coords = [x for g in D.groups for x in g] + list(D.terminal) + list(D.residual)
    if any(not 0 <= x < n for x in all_coords):
        return DecompositionCheck(False, ["coordinate out of range"])

    if len(D.groups) != t - 1:
        bad.append(f"{len(D.groups)} groups, expected ceil(k/r) - 1 = {t - 1}")
    union: set[int] = set()
    sizes, gains = [], []
    prev_rank = 0
    for idx, g in enumerate(D.groups, 1):
        try:
            grp = verify_repair_group(C, g[0], g, params, budget)
        except (TooLarge, DistanceTooSmall, PreconditionViolated, IndexOutOfRange) as exc:
            bad.append(f"C{idx}: not a local protection support ({exc})")
            continue
        if grp.distance != params.delta or grp.dimension != len(g) - params.delta + 1:
            bad.append(
                f"C{idx}: restriction is [{len(g)}, {grp.dimension}, {grp.distance}], "
                f"expected MDS with distance {params.delta}"
            )
        s_i = len(set(g) - union)
        union |= set(g)
        r_now = _rank_of(C, union)
        r_i = r_now - prev_rank
        prev_rank = r_now
        sizes.append(s_i)
        gains.append(r_i)
        if r_i < 1:
            bad.append(f"C{idx}: rank gain {r_i} < 1")
        if r_i != s_i - (params.delta - 1):
            bad.append(f"C{idx}: rank gain {r_i} != new coordinates {s_i} - (delta - 1)")

    terminal = set(D.terminal)
    residual = set(D.residual)
    if len(terminal) != len(D.terminal) or len(residual) != len(D.residual):
        bad.append("repeated coordinates in terminal or residual")
    if terminal & union:
        bad.append("terminal coordinates overlap the groups")
    if residual & (union | terminal):
        bad.append("residual set is not disjoint from groups and terminal")
    if union | terminal | residual != set(range(n)):
        bad.append("groups, terminal and residual do not cover every coordinate")

    if D.case == "I":
        with_terminal = _rank_of(C, union | terminal)
        if with_terminal != prev_rank + len(terminal) or with_terminal != k - 1:
            bad.append(
                f"terminal rank: rank with terminal = {with_terminal}, "
                f"rank of groups + |terminal| = {prev_rank + len(terminal)}, k - 1 = {k - 1}"
            )
        if terminal:
            if not _terminal_in_local_support(C, D, params, budget):
                bad.append("terminal coordinates lie in no local protection support")
    else:
        if D.terminal:
            bad.append("Case II has no terminal coordinates")
        if prev_rank != k - 1:
            bad.append(f"groups have rank {prev_rank}, expected k - 1 = {k - 1}")

    d = min_distance(C, budget)
    if len(D.residual) != d:
        bad.append(f"|U| = {len(D.residual)} differs from d = {d}")
    return DecompositionCheck(not bad, bad, sizes, gains)


def _terminal_in_local_support(C, D: Decomposition, params, budget) -> bool:
    if D.terminal_support is not None and set(D.terminal) <= set(D.terminal_support):
        try:
            T = D.terminal_support
            verify_repair_group(C, T[0], T, params, budget)
            return True
        except (TooLarge, DistanceTooSmall, PreconditionViolated, IndexOutOfRange):
            pass
    cands = local_protection_supports(C, params, budget)
    return _best_containing(cands, D.terminal) is not None


def certify_optimal_from_decomposition(
    C: LinearCode,
    D: Decomposition,
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> bool:
    """Optimality from a valid decomposition plus locality of the coordinates
    outside the groups."""
    if not verify_decomposition(C, D, params, budget):
        return False
    outside = set(D.terminal) | set(D.residual)
    cands = None
    for i in sorted(outside):
        if cands is None:
            cands = local_protection_supports(C, params, budget)
        if _best_containing(cands, [i]) is None:
            return False
    return min_distance(C, budget) == singleton_like_bound(C.n, C.k, params.r, params.delta)


# ---------------------------------------------------------------------------
# rigidity


@dataclass
class RigidityReport:
    ok: bool
    supports_checked: int
    # (support, redundancy) of local protection codes that are not MDS with distance delta
    counterexamples: list[tuple[tuple[int, ...], int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def rigidity_check(
    C: LinearCode,
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> RigidityReport:
    """Check that every local protection code of an optimal LRC is MDS with
    distance exactly delta.

    A restriction with distance >= delta and redundancy e has distance at
    most e + 1, so it is [|S|, |S| - delta + 1, delta] exactly when e = delta - 1.
    """
    cands = local_protection_supports(C, params, budget)
    covered = set().union(*(c.support for c in cands)) if cands else set()
    if covered != set(range(C.n)):
        raise PreconditionViolated("the code does not have the requested locality")
    if min_distance(C, budget) != singleton_like_bound(C.n, C.k, params.r, params.delta):
        raise PreconditionViolated("the code is not an optimal LRC for these parameters")
    bad = [(c.support, c.redundancy) for c in cands if c.redundancy != params.delta - 1]
    return RigidityReport(not bad, len(cands), bad)


def mutual_rigidity_check(
    C: LinearCode,
    groups: Sequence[Sequence[int]],
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> bool:
    """Rank of each growing union rises by the new coordinates minus (delta - 1)."""
    supports = [_support(g, C.n) for g in groups]
    for S in supports:
        if not S:
            raise PreconditionViolated("empty group")
        try:
            verify_repair_group(C, S[0], S, params, budget)
        except (TooLarge, DistanceTooSmall) as exc:
            raise PreconditionViolated(f"group {list(S)} is not a local protection support: {exc}")
    union: set[int] = set()
    ranks, sizes = [], []
    for S in supports:
        union |= set(S)
        ranks.append(_rank_of(C, union))
        sizes.append(len(union))
    if ranks and ranks[-1] >= C.k:
        raise PreconditionViolated(f"union of the groups has rank {ranks[-1]} = k")
    for i in range(1, len(supports)):
        if ranks[i] - ranks[i - 1] < 1:
            raise PreconditionViolated(f"group {i + 1} adds no rank")
    return all(
        ranks[i] - ranks[i - 1] == sizes[i] - sizes[i - 1] - (params.delta - 1)
        for i in range(1, len(supports))
    )


# ---------------------------------------------------------------------------
# structured parity-check matrices


def minimal_decomposition_violations(
    C: LinearCode,
    groups: Sequence[Sequence[int]],
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> list[str]:
    """Reasons the ordered groups fail to be a minimal decomposition (empty if valid):
    ceil(k/r) local protection supports covering every coordinate, and only
    neighbours may intersect.

    With two or more groups each restriction must also be MDS with distance
    exactly delta.  A single group is the whole code, whose distance may
    exceed delta, so that clause is not imposed there."""
    bad = []
    t = ceil(C.k / params.r)
    supports = [_support(g, C.n) for g in groups]
    if len(supports) != t:
        bad.append(f"{len(supports)} groups, expected ceil(k/r) = {t}")
    covered = set().union(*map(set, supports)) if supports else set()
    if covered != set(range(C.n)):
        bad.append("groups do not cover every coordinate")
    for i in range(len(supports)):
        for j in range(i + 2, len(supports)):
            if set(supports[i]) & set(supports[j]):
                bad.append(f"groups {i + 1} and {j + 1} are not neighbours but intersect")
    for i, S in enumerate(supports, 1):
        try:
            grp = verify_repair_group(C, S[0], S, params, budget)
        except (TooLarge, DistanceTooSmall, IndexOutOfRange) as exc:
            bad.append(f"group {i}: {exc}")
            continue
        if len(supports) > 1 and (grp.distance != params.delta or grp.dimension != len(S) - params.delta + 1):
            bad.append(f"group {i}: restriction [{len(S)}, {grp.dimension}, {grp.distance}] is not MDS with distance delta")
    return bad


@dataclass(frozen=True)
class StructuredParityCheck:
    """Parity-check matrix split into one band of delta - 1 rows per repair group
    (supported inside the group) and l extra rows.

    All matrices use the original coordinate order; `column_order` lists the
    coordinates so that groups appear left to right with shared coordinates
    between neighbours.
    """

    spec: FieldSpec
    params: LocalityParams
    groups: tuple[tuple[int, ...], ...]
    bands: tuple[Matrix, ...]
    extra: Matrix
    column_order: tuple[int, ...]

    @property
    def layout(self) -> str:
        for a, b in zip(self.groups, self.groups[1:]):
            if set(a) & set(b):
                return "chained"
        return "disjoint"

    @property
    def l(self) -> int:  # noqa: E743 - conventional name for the extra row count
        return self.extra.rows

    def matrix(self) -> Matrix:
        return stack_vertical(list(self.bands) + [self.extra], self.spec)

    def permuted(self) -> Matrix:
        return select_columns_any(self.matrix(), self.column_order)

    def shared(self, j: int) -> tuple[int, ...]:
        """Coordinates shared by groups j and j + 1 (0-based group indices)."""
        return tuple(sorted(set(self.groups[j]) & set(self.groups[j + 1])))

    def band_split(self, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Column sets of the two pieces of band i: the part shared with the
        previous group (or, when there is none, the group's own coordinates) and
        the rest."""
        g = set(self.groups[i])
        left = g & set(self.groups[i - 1]) if i > 0 else set()
        right = g & set(self.groups[i + 1]) if i + 1 < len(self.groups) else set()
        if left:
            first = left
        else:
            first = g - right
        second = g - first
        order = {c: pos for pos, c in enumerate(self.column_order)}
        return (
            tuple(sorted(first, key=order.__getitem__)),
            tuple(sorted(second, key=order.__getitem__)),
        )

    def a_block(self, i: int, part: int) -> Matrix:
        cols = self.band_split(i)[part]
        return select_columns_any(self.bands[i], cols)

    def column_atoms(self) -> list[tuple[int, ...]]:
        """Maximal runs of column_order covered by the same set of groups."""
        membership = []
        for c in self.column_order:
            membership.append(frozenset(i for i, g in enumerate(self.groups) if c in g))
        atoms: list[list[int]] = []
        prev = None
        for c, mem in zip(self.column_order, membership):
            if mem != prev:
                atoms.append([])
                prev = mem
            atoms[-1].append(c)
        return [tuple(a) for a in atoms]

    def b_blocks(self) -> list[Matrix]:
        if self.layout == "disjoint":
            return [select_columns_any(self.extra, g) for g in self.groups]
        return [select_columns_any(self.extra, a) for a in self.column_atoms()]

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "params": self.params.to_json(),
            "layout": self.layout,
            "groups": [list(g) for g in self.groups],
            "column_order": list(self.column_order),
            "bands": [{"rows": b.rows, "cols": b.cols, "data": b.data.reshape(-1).tolist()} for b in self.bands],
            "extra": {"rows": self.extra.rows, "cols": self.extra.cols, "data": self.extra.data.reshape(-1).tolist()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> StructuredParityCheck:
        try:
            spec = FieldSpec.from_json(obj["field"])
            params = LocalityParams(int(obj["params"]["r"]), int(obj["params"]["delta"]))
            groups = tuple(tuple(int(x) for x in g) for g in obj["groups"])
            bands = tuple(Matrix.from_json(b, spec) for b in obj["bands"])
            extra = Matrix.from_json(obj["extra"], spec)
            order = tuple(int(x) for x in obj["column_order"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad structured parity-check: {exc}") from exc
        return cls(spec, params, groups, bands, extra, order)


def select_columns_any(M: Matrix, cols: Sequence[int]) -> Matrix:
    """Columns in the given order (not necessarily increasing)."""
    idx = [int(c) for c in cols]
    return Matrix(M.spec, M.data[:, idx], cols=len(idx))


def _column_order(groups: Sequence[Sequence[int]]) -> tuple[int, ...]:
    order: list[int] = []
    seen: set[int] = set()
    for i, g in enumerate(groups):
        nxt = set(groups[i + 1]) if i + 1 < len(groups) else set()
        own = [c for c in g if c not in seen and c not in nxt]
        shared = [c for c in g if c not in seen and c in nxt]
        order += own + shared
        seen |= set(g)
    return tuple(order)


def _shortened_dual_rows(C: LinearCode, S: Sequence[int]) -> Matrix:
    """Basis of the dual codewords supported inside S (as length-n rows)."""
    outside = [j for j in range(C.n) if j not in set(S)]
    if not outside:
        return row_basis(C.H)
    X = nullspace(select_columns(C.H, outside).T)
    if X.rows == 0:
        return Matrix.zeros(C.spec, 0, C.n)
    rows = C.spec.ops.dot_rows(X.data, C.H.data.T)
    return row_basis(Matrix(C.spec, rows, cols=C.n))


def _recognise_bands(C: LinearCode, groups, params) -> tuple[list[Matrix], Matrix] | None:
    """Reuse the rows of C.H when they already have the banded shape."""
    H = C.H.data
    sets = [set(g) for g in groups]
    owner: list[int | None] = []
    for row in H:
        supp = set(np.flatnonzero(row).tolist())
        owner.append(next((i for i, s in enumerate(sets) if supp <= s), None))
    bands = [[r for r, o in enumerate(owner) if o == i] for i in range(len(groups))]
    extra = [r for r, o in enumerate(owner) if o is None]
    if any(len(b) != params.delta - 1 for b in bands):
        return None
    band_mats = [Matrix(C.spec, H[b], cols=C.n) for b in bands]
    if bands and rank(stack_vertical(band_mats, C.spec)) != len(groups) * (params.delta - 1):
        return None
    return band_mats, Matrix(C.spec, H[extra], cols=C.n)


def _single_group_bands(C: LinearCode, params: LocalityParams, budget) -> tuple[list[Matrix], Matrix] | None:
    """Split the dual code for a lone group into an MDS band of delta - 1 rows
    and the rest.

    The leading rows of C.H and of its reduced form are tried first; failing
    that, dual codewords of weight >= n - delta + 2 are added greedily while
    the span stays MDS (only when the dual code fits the codeword budget).
    """
    budget = budget or DEFAULT_BUDGET
    e = params.delta - 1
    spec = C.spec

    def is_band(rows: np.ndarray) -> bool:
        band = Matrix(spec, rows, cols=C.n)
        return rank(band) == rows.shape[0] and is_mds(LinearCode.from_generator(band), budget)

    def split(band_rows: np.ndarray) -> tuple[list[Matrix], Matrix]:
        band = Matrix(spec, band_rows, cols=C.n)
        extra, current = [], band
        for row in C.H.data:
            trial = stack_vertical([current, Matrix(spec, row[None, :], cols=C.n)], spec)
            if rank(trial) > current.rows:
                current = trial
                extra.append(row)
        return [band], Matrix(spec, np.array(extra, dtype=np.int64).reshape(-1, C.n), cols=C.n)

    for M in (C.H, rref(C.H)[0]):
        if is_band(M.data[:e]):
            return split(M.data[:e])
    if spec.order**C.H.rows > budget.max_codewords:
        return None
    chosen = np.zeros((0, C.n), dtype=np.int64)
    for words in iter_codeword_chunks(C.H):
        for w in words[np.count_nonzero(words, axis=1) >= C.n - e + 1]:
            trial = np.vstack([chosen, w[None, :]])
            if is_band(trial):
                chosen = trial
                if chosen.shape[0] == e:
                    return split(chosen)
    return None


def extract_structured_parity(
    C: LinearCode,
    groups: Sequence[Sequence[int]],
    params: LocalityParams,
    budget: DistanceBudget | None = None,
) -> StructuredParityCheck:
    """Banded parity-check matrix of an optimal LRC from a minimal decomposition.

    If C.H already consists of delta - 1 rows inside each group plus extra rows,
    those rows are kept verbatim; otherwise each band is a basis of the dual
    codewords supported in its group and the extra rows complete a basis of
    the dual code.
    """
    bad = minimal_decomposition_violations(C, groups, params, budget)
    if bad:
        raise NotMinimalDecomposition("; ".join(bad))
    bound = singleton_like_bound(C.n, C.k, params.r, params.delta)
    d = min_distance(C, budget)
    if d != bound:
        raise NotOptimal(f"d = {d} but the bound is {bound}")
    supports = [_support(g, C.n) for g in groups]
    spec = C.spec
    found = _single_group_bands(C, params, budget) if len(supports) == 1 else _recognise_bands(C, supports, params)
    if found is not None:
        bands, extra = found
    else:
        bands = []
        for S in supports:
            B = _shortened_dual_rows(C, S)
            if B.rows != params.delta - 1:
                raise AssemblyFailed(f"group {list(S)} carries {B.rows} dual rows, expected delta - 1")
            bands.append(B)
        stacked = stack_vertical(bands, spec)
        basis_rank = rank(stacked)
        if basis_rank != stacked.rows:
            raise AssemblyFailed("band rows are linearly dependent")
        extra_rows = []
        current = stacked
        for row in C.H.data:
            trial = stack_vertical([current, Matrix(spec, row[None, :], cols=C.n)], spec)
            if rank(trial) > current.rows:
                current = trial
                extra_rows.append(row)
        extra = Matrix(spec, np.array(extra_rows, dtype=np.int64).reshape(-1, C.n), cols=C.n)
    result = StructuredParityCheck(spec, params, tuple(supports), tuple(bands), extra, _column_order(supports))
    full = result.matrix()
    if full.rows != C.H.rows or not same_row_space(full, C.H):
        raise AssemblyFailed("banded matrix does not span the dual code")
    for i, S in enumerate(supports):
        local = select_columns(result.bands[i], S)
        if rank(local) != params.delta - 1:
            raise AssemblyFailed(f"band {i + 1} has rank {rank(local)}")
        if not is_mds(LinearCode.from_generator(local), budget):
            raise AssemblyFailed(f"band {i + 1} does not generate an MDS code")
    if d != params.delta + result.l:
        raise AssemblyFailed(f"d = {d} but delta + l = {params.delta + result.l}")
    return result


def block_criterion_failures(S: StructuredParityCheck, form: str = "hermitian") -> list[str]:
    """Blocks that are not self-orthogonal.

    For each group i the rows of band i together with the extra rows, both
    restricted to the group, must be self-orthogonal; for neighbouring groups
    the two bands restricted to their shared coordinates must be too.
    """
    bad = []
    for i, g in enumerate(S.groups):
        block = stack_vertical(
            [select_columns_any(S.bands[i], g), select_columns_any(S.extra, g)], S.spec
        )
        if inner_products(block, block, form).any():
            bad.append(f"group {i + 1}: band and extra rows not self-orthogonal")
    for j in range(len(S.groups) - 1):
        shared = S.shared(j)
        if not shared:
            continue
        block = stack_vertical(
            [select_columns_any(S.bands[j], shared), select_columns_any(S.bands[j + 1], shared)], S.spec
        )
        if inner_products(block, block, form).any():
            bad.append(f"groups {j + 1},{j + 2}: shared columns not self-orthogonal")
    return bad


def block_self_orthogonality_criterion(S: StructuredParityCheck, form: str = "hermitian") -> bool:
    return not block_criterion_failures(S, form)

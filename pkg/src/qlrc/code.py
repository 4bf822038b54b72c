"""Linear codes: construction, duals, puncturing and exact minimum distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    MalformedInput,
    NotQuadraticField,
    PreconditionViolated,
    RankDeficientInput,
)
from .gf import FieldSpec
from .linalg import Matrix, frobenius, nullspace, rank, row_basis, select_columns
from .search import SubsetCounter, column_sum_estimate, max_hyperplane, smallest_dependent_set

__all__ = [
    "DistanceBudget",
    "DistanceResult",
    "Form",
    "LinearCode",
    "distance_is_cheap",
    "distance_result",
    "dual",
    "dual_euclidean",
    "dual_hermitian",
    "inner_products",
    "is_dual_containing",
    "is_mds",
    "is_self_orthogonal",
    "iter_codeword_chunks",
    "min_distance",
    "puncture",
    "same_code",
]

Form = Literal["euclidean", "hermitian"]
FORMS = ("euclidean", "hermitian")


@dataclass(frozen=True)
class DistanceBudget:
    """Caps on exhaustive work: codewords enumerated and column subsets examined."""

    max_codewords: int = 10**7
    max_subsets: int = 10**6


DEFAULT_BUDGET = DistanceBudget()


@dataclass(frozen=True)
class DistanceResult:
    d: int
    method: str
    # support of a minimum-weight codeword, or a minimal dependent column set of H
    witness: tuple[int, ...]


class LinearCode:
    """An [n, k] code over a finite field with both generator and parity-check
    matrices of full row rank."""

    __slots__ = ("spec", "n", "G", "H", "_distance")

    def __init__(self, G: Matrix, H: Matrix):
        if G.spec != H.spec or G.cols != H.cols:
            raise DimensionMismatch("generator and parity-check matrices disagree")
        self.spec: FieldSpec = G.spec
        self.n: int = G.cols
        self.G = G
        self.H = H
        self._distance: DistanceResult | None = None

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def redundancy(self) -> int:
        return self.H.rows

    @classmethod
    def from_generator(cls, G: Matrix) -> LinearCode:
        if rank(G) != G.rows:
            raise RankDeficientInput(f"generator matrix has rank {rank(G)} < {G.rows} rows")
        return cls(G, nullspace(G))

    @classmethod
    def from_parity(cls, H: Matrix) -> LinearCode:
        if rank(H) != H.rows:
            raise RankDeficientInput(f"parity-check matrix has rank {rank(H)} < {H.rows} rows")
        return cls(nullspace(H), H)

    @classmethod
    def from_spanning(cls, M: Matrix) -> LinearCode:
        """Code spanned by the rows of M, which may be dependent."""
        return cls.from_generator(row_basis(M))

    def cached_distance(self) -> DistanceResult | None:
        return self._distance

    def _store_distance(self, result: DistanceResult) -> None:
        if self._distance is None:
            self._distance = result
        elif self._distance.d != result.d:
            raise AssertionError(f"distance cache holds {self._distance.d}, new value {result.d}")

    def contains(self, word: Sequence[int]) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(1, -1)
        if w.shape[1] != self.n:
            raise DimensionMismatch(f"word of length {w.shape[1]} for a code of length {self.n}")
        return not self.spec.ops.dot_rows(w, self.H.data).any()

    def __repr__(self) -> str:
        d = f", {self._distance.d}" if self._distance else ""
        return f"LinearCode[{self.n}, {self.k}{d}] over {self.spec!r}"

    # -- serialisation
    def to_json(self, include_distance: bool = True) -> dict:
        out: dict = {
            "field": self.spec.to_json(),
            "n": self.n,
            "k": self.k,
            "G": {"rows": self.G.rows, "cols": self.G.cols, "data": self.G.data.reshape(-1).tolist()},
            "H": {"rows": self.H.rows, "cols": self.H.cols, "data": self.H.data.reshape(-1).tolist()},
        }
        if include_distance and self._distance is not None:
            out["d"] = self._distance.d
        return out

    @classmethod
    def from_json(cls, obj: dict) -> LinearCode:
        if not isinstance(obj, dict) or "field" not in obj:
            raise MalformedInput("code object needs a 'field' entry")
        spec = FieldSpec.from_json(obj["field"])
        G = Matrix.from_json(obj["G"], spec) if obj.get("G") is not None else None
        H = Matrix.from_json(obj["H"], spec) if obj.get("H") is not None else None
        if G is None and H is None:
            raise MalformedInput("code object needs G or H")
        code = cls.from_generator(G) if G is not None else cls.from_parity(H)
        if G is not None and H is not None:
            if H.cols != code.n or rank(H) != H.rows or H.rows != code.n - code.k:
                raise MalformedInput("G and H do not describe the same code")
            if code.spec.ops.dot_rows(G.data, H.data).any():
                raise MalformedInput("G and H are not orthogonal")
            code = cls(code.G, H)
        if "n" in obj and int(obj["n"]) != code.n:
            raise MalformedInput(f"declared n = {obj['n']} but matrices have {code.n} columns")
        if "k" in obj and int(obj["k"]) != code.k:
            raise MalformedInput(f"declared k = {obj['k']} but the code has dimension {code.k}")
        return code


# ---------------------------------------------------------------------------
# duals and inner products


def _conj_exponent(spec: FieldSpec, form: str) -> int:
    if form == "euclidean":
        return 1
    if form == "hermitian":
        if not spec.is_quadratic:
            raise NotQuadraticField(f"{spec!r} has no Hermitian form (order is not a square)")
        return spec.sub_order
    raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")


def inner_products(A: Matrix, B: Matrix, form: str = "euclidean") -> np.ndarray:
    """All products <a_i, b_j> = sum_l a_il * b_jl^e, e = 1 or q."""
    e = _conj_exponent(A.spec, form)
    conj = B.data if e == 1 else A.spec.ops.power(B.data, e)
    return A.spec.ops.dot_rows(A.data, conj)


def dual_euclidean(C: LinearCode) -> LinearCode:
    return LinearCode(C.H, C.G)


def dual_hermitian(C: LinearCode) -> LinearCode:
    q = _conj_exponent(C.spec, "hermitian")
    return LinearCode(frobenius(C.H, q), frobenius(C.G, q))


def dual(C: LinearCode, form: str = "euclidean") -> LinearCode:
    return dual_hermitian(C) if form == "hermitian" else dual_euclidean(C)


def is_self_orthogonal(C: LinearCode, form: str = "euclidean") -> bool:
    return not inner_products(C.G, C.G, form).any()


def is_dual_containing(C: LinearCode, form: str = "euclidean") -> bool:
    """C^perp is a subcode of C: every pair of parity-check rows is orthogonal."""
    return not inner_products(C.H, C.H, form).any()


def same_code(A: LinearCode, B: LinearCode) -> bool:
    return A.spec == B.spec and A.n == B.n and row_basis(A.G) == row_basis(B.G)


def puncture(C: LinearCode, S: Sequence[int]) -> LinearCode:
    """Restriction C|_S to the coordinates in S (strictly increasing)."""
    G_S = select_columns(C.G, S)
    if G_S.cols == C.n:
        return C  # keeps any cached distance
    return LinearCode.from_generator(row_basis(G_S))


# ---------------------------------------------------------------------------
# minimum distance


def iter_codeword_chunks(G: Matrix, chunk: int = 1 << 15) -> Iterator[np.ndarray]:
    """Nonzero codewords of the row space of G in chunks, one per line.

    Only messages whose leading nonzero coefficient is 1 are produced; scalar
    multiples share weight and subspace membership.
    """
    spec = G.spec
    ops = spec.ops
    q = spec.order
    k, n = G.shape
    rows = G.data
    for lead in range(k):
        tail = rows[lead + 1 :]
        free = k - lead - 1
        total = q**free
        for lo in range(0, total, chunk):
            idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
            words = np.broadcast_to(rows[lead], (idx.size, n)).copy()
            for j in range(free):
                coeff = (idx // q**j) % q
                if spec.m == 1:
                    words = (words + coeff[:, None] * tail[j][None, :]) % spec.p
                else:
                    words = ops.add(words, ops.outer(coeff, tail[j]))
            yield words


def _by_enumeration(C: LinearCode) -> DistanceResult:
    best = C.n + 1
    witness: tuple[int, ...] = ()
    for words in iter_codeword_chunks(C.G):
        wts = np.count_nonzero(words, axis=1)
        i = int(np.argmin(wts))
        if wts[i] < best:
            best = int(wts[i])
            witness = tuple(int(x) for x in np.flatnonzero(words[i]))
            if best == 1:
                break
    return DistanceResult(best, "enumerate", witness)


def _by_columns(C: LinearCode, budget: DistanceBudget) -> DistanceResult:
    counter = SubsetCounter(budget.max_subsets)
    found = smallest_dependent_set(C.H.data, C.spec, counter)
    assert found is not None, "a code of positive dimension has dependent check columns"
    return DistanceResult(len(found), "columns", found)


def _by_hyperplanes(C: LinearCode, budget: DistanceBudget) -> DistanceResult:
    counter = SubsetCounter(budget.max_subsets)
    inside, row = max_hyperplane(C.G.data, C.spec, counter)
    return DistanceResult(C.n - inside, "hyperplanes", tuple(int(x) for x in np.flatnonzero(row)))


def _subset_costs(C: LinearCode) -> tuple[int, int]:
    # flats of rank < k when every k - 1 columns are independent, and
    # check-column subsets up to the Singleton bound
    n, k = C.n, C.k
    return column_sum_estimate(n, 0, k - 1), column_sum_estimate(n, 1, n - k + 1)


def choose_method(C: LinearCode, budget: DistanceBudget) -> str:
    if C.spec.order**C.k <= budget.max_codewords:
        return "enumerate"
    hyper_cost, column_cost = _subset_costs(C)
    if hyper_cost <= budget.max_subsets and hyper_cost <= column_cost:
        return "hyperplanes"
    return "columns"


def distance_is_cheap(C: LinearCode, budget: DistanceBudget | None = None) -> bool:
    """Whether the worst-case cost of an exact distance fits inside the budget."""
    budget = budget or DEFAULT_BUDGET
    if C.k < 1:
        return False
    if C.cached_distance() is not None or C.spec.order**C.k <= budget.max_codewords:
        return True
    return min(_subset_costs(C)) <= budget.max_subsets


def distance_result(
    C: LinearCode, budget: DistanceBudget | None = None, method: str = "auto"
) -> DistanceResult:
    """Exact minimum distance with the method used and a witness.

    Methods: "enumerate" (all codewords), "columns" (smallest dependent set of
    parity-check columns), "hyperplanes" (largest set of generator columns in
    one hyperplane) or "auto".  Raises BudgetExceeded instead of guessing.
    """
    if C.k < 1:
        raise PreconditionViolated("minimum distance of the zero code is undefined")
    budget = budget or DEFAULT_BUDGET
    cached = C.cached_distance()
    if cached is not None and method in ("auto", cached.method):
        return cached
    if method == "auto":
        method = choose_method(C, budget)
    if method == "enumerate":
        if C.spec.order**C.k > budget.max_codewords:
            raise BudgetExceeded(
                f"enumeration needs {C.spec.order}^{C.k} codewords, cap is {budget.max_codewords}"
            )
        result = _by_enumeration(C)
    elif method == "columns":
        result = _by_columns(C, budget)
    elif method == "hyperplanes":
        result = _by_hyperplanes(C, budget)
    else:
        raise ValueError(f"unknown distance method {method!r}")
    C._store_distance(result)
    return result


def min_distance(C: LinearCode, budget: DistanceBudget | None = None, method: str = "auto") -> int:
    return distance_result(C, budget, method).d


def is_mds(C: LinearCode, budget: DistanceBudget | None = None) -> bool:
    if C.k == 0:
        return True
    return min_distance(C, budget) == C.n - C.k + 1


def all_subsets_independent(M: Matrix, size: int, budget: DistanceBudget | None = None) -> bool:
    """True when every `size` columns of M are linearly independent."""
    budget = budget or DEFAULT_BUDGET
    if size <= 0:
        return True
    counter = SubsetCounter(budget.max_subsets)
    return smallest_dependent_set(M.data, M.spec, counter, limit=size) is None

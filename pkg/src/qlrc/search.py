"""Exhaustive searches over column subsets of a matrix.

All routines walk independent column sets depth-first while keeping a
*residual*: the rows left over after eliminating the chosen columns.  A
column lies in the span of the chosen set exactly when its residual column is
zero, so closure and dependency tests are single vectorised checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded
from .gf import FieldSpec


class SubsetCounter:
    """Running tally of column subsets examined, capped by a limit."""

    def __init__(self, limit: int | None):
        self.limit = limit
        self.count = 0

    def charge(self, amount: int, what: str = "column subsets") -> None:
        self.count += amount
        if self.limit is not None and self.count > self.limit:
            raise BudgetExceeded(f"{what}: more than {self.limit} subsets needed")


def eliminate(residual: np.ndarray, col: int, spec: FieldSpec) -> np.ndarray:
    """Pivot on column `col` (which must be nonzero) and drop the pivot row."""
    ops = spec.ops
    column = residual[:, col]
    nz = column != 0
    piv = int(nz.argmax())
    keep = np.ones(column.size, dtype=bool)
    keep[piv] = False
    rest = residual[keep]
    hit = nz[keep]
    if hit.any():
        scale = ops.mul(column[keep][hit], ops.inv(column[piv]))
        rest[hit] = ops.sub(rest[hit], ops.outer(scale, residual[piv]))
    return rest


def first_parallel_pair(residual: np.ndarray, start: int, spec: FieldSpec) -> tuple[int, int] | None:
    """Lexicographically first pair j < j' (both >= start) of nonzero columns
    that are scalar multiples of each other."""
    sub = residual[:, start:]
    if sub.shape[1] < 2 or sub.shape[0] == 0:
        return None
    nz = sub != 0
    alive = nz.any(axis=0)
    lead = sub[nz.argmax(axis=0), np.arange(sub.shape[1])]
    lead[~alive] = 1
    normal = spec.ops.mul(sub, spec.ops.inv(lead)[None, :])
    cols = np.flatnonzero(alive)
    if cols.size < 2:
        return None
    keys = normal[:, cols]
    # sort columns by content, ties by position; equal neighbours are parallel pairs
    order = np.lexsort(np.vstack([cols, keys[::-1]]))
    ranked = keys[:, order]
    same = (ranked[:, 1:] == ranked[:, :-1]).all(axis=0)
    if not same.any():
        return None
    starts = np.flatnonzero(same & np.concatenate(([True], ~same[:-1])))
    best = starts[np.argmin(cols[order[starts]])]
    return start + int(cols[order[best]]), start + int(cols[order[best + 1]])


def zero_columns(residual: np.ndarray) -> np.ndarray:
    if residual.shape[0] == 0:
        return np.ones(residual.shape[1], dtype=bool)
    return ~residual.any(axis=0)


def smallest_dependent_set(
    arr: np.ndarray,
    spec: FieldSpec,
    counter: SubsetCounter,
    limit: int | None = None,
) -> tuple[int, ...] | None:
    """Lexicographically first among the smallest linearly dependent column sets.

    Sizes are tried in increasing order up to `limit`; returns None if every
    set of at most `limit` columns is independent.
    """
    arr = np.asarray(arr, dtype=np.int64)
    n_rows, n = arr.shape
    top = n if limit is None else min(limit, n)
    zero = np.flatnonzero(zero_columns(arr))
    if top >= 1 and zero.size:
        counter.charge(int(zero[0]) + 1)
        return (int(zero[0]),)
    counter.charge(n)
    for w in range(2, min(top, n_rows + 1) + 1):
        found = _dependent_of_size(arr, spec, counter, w)
        if found is not None:
            return found
    return None


def _dependent_of_size(arr, spec, counter, w) -> tuple[int, ...] | None:
    n = arr.shape[1]

    def walk(residual, prefix: list[int], last: int):
        depth = len(prefix)
        if depth == w - 1:
            start = last + 1
            if start >= n:
                return None
            counter.charge(n - start)
            hits = np.flatnonzero(zero_columns(residual[:, start:]))
            if hits.size:
                return tuple(prefix) + (start + int(hits[0]),)
            return None
        if depth == w - 2 and not zero_columns(residual[:, last + 1 :]).any():
            # two more columns are dependent on the prefix iff their residuals are parallel
            left = n - last - 1
            counter.charge(left * (left - 1) // 2)
            pair = first_parallel_pair(residual, last + 1, spec)
            return None if pair is None else tuple(prefix) + pair
        for j in range(last + 1, n - w + depth + 1):
            if not residual[:, j].any():
                continue
            found = walk(eliminate(residual, j, spec), prefix + [j], j)
            if found is not None:
                return found
        return None

    return walk(arr, [], -1)


@dataclass
class Flat:
    """A closed column set, the canonical basis generating it, and its residual."""

    basis: tuple[int, ...]
    closure: np.ndarray
    residual: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.basis)


def iter_flats(
    arr: np.ndarray,
    spec: FieldSpec,
    max_rank: int,
    counter: SubsetCounter,
) -> Iterator[Flat]:
    """Every flat of the column matroid with rank <= max_rank, each once.

    A flat is produced from its greedy basis (smallest index first), which
    makes the generation canonical without a visited set.
    """
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[1]

    def walk(residual, basis: tuple[int, ...], closure: np.ndarray):
        yield Flat(basis, closure, residual)
        if len(basis) >= max_rank:
            return
        last = basis[-1] if basis else -1
        for j in range(last + 1, n):
            if closure[j]:
                continue
            counter.charge(1, "flat search")
            res = eliminate(residual, j, spec)
            new = zero_columns(res)
            fresh = np.flatnonzero(new & ~closure)
            if int(fresh[0]) != j:
                continue
            yield from walk(res, basis + (j,), new)

    yield from walk(arr, (), zero_columns(arr))


def max_hyperplane(
    arr: np.ndarray, spec: FieldSpec, counter: SubsetCounter
) -> tuple[int, np.ndarray]:
    """Largest number of columns inside one hyperplane of the column space.

    `arr` must have full row rank k >= 1.  Returns the count together with a
    nonzero vector of the row space vanishing on those columns.
    """
    arr = np.asarray(arr, dtype=np.int64)
    k = arr.shape[0]
    best = -1
    best_row = None
    for flat in iter_flats(arr, spec, k - 1, counter):
        if flat.rank != k - 1:
            continue
        size = int(flat.closure.sum())
        if size > best:
            best = size
            best_row = flat.residual[0].copy()
    assert best_row is not None
    return best, best_row


def column_sum_estimate(n: int, lo: int, hi: int) -> int:
    return sum(comb(n, w) for w in range(max(lo, 0), min(hi, n) + 1))

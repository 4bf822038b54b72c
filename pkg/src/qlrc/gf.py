"""Finite fields GF(p^m) for p^m <= 2^16.

Elements are plain integers in their canonical encoding: the element
c_0 + c_1 x + ... + c_{m-1} x^{m-1} of GF(p)[x]/(f) is stored as
sum(c_i * p**i).  All bulk arithmetic goes through :class:`Arith`, a set of
numpy-vectorised table lookups that is built once per field and cached.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubfieldOrder,
    MalformedInput,
    NonDivisorN,
    NonPrimeP,
    ReducibleModulus,
    UnsupportedOrder,
)

__all__ = [
    "MAX_ORDER",
    "Arith",
    "FieldElement",
    "FieldSpec",
    "arith",
    "factorize",
    "field_create",
    "frobenius_q",
    "is_prime",
    "prime_power",
    "primitive_element",
    "root_of_unity",
]

MAX_ORDER = 1 << 16
TABLE_ENV = "LRC_FIELD_TABLE"
_ADD_TABLE_LIMIT = 2048


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q == p**m, or None when q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    (p, m), = fac.items()
    return p, m


# ---------------------------------------------------------------------------
# polynomials over GF(p), ascending coefficient lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    r = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(r) - 1 >= df:
        c = r[-1] * inv_lead % p
        shift = len(r) - 1 - df
        for i, fc in enumerate(f):
            r[shift + i] = (r[shift + i] - c * fc) % p
        _trim(r)
    return r


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_rem(prod, f, p)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_rem(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, f, p)
    return result


def _monic_polys(degree: int, p: int) -> Iterable[list[int]]:
    for low in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(low % p)
            low //= p
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..m//2 divides the modulus."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p == 0:
        return False
    if m == 1:
        return True
    if modulus[0] % p == 0:
        return False
    for deg in range(1, m // 2 + 1):
        for g in _monic_polys(deg, p):
            if not _poly_rem(modulus, g, p):
                return False
    return True


def _enc_to_poly(enc: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(enc % p)
        enc //= p
    return _trim(out)


def _poly_to_enc(coeffs: Sequence[int], p: int) -> int:
    enc = 0
    for c in reversed(coeffs):
        enc = enc * p + c
    return enc


def _has_full_order(g: Sequence[int], modulus: Sequence[int], p: int) -> bool:
    n = p ** (len(modulus) - 1) - 1
    if _poly_powmod(g, n, modulus, p) != [1]:
        return False
    return all(_poly_powmod(g, n // r, modulus, p) != [1] for r in factorize(n))


def smallest_primitive_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic degree-m polynomial (by encoding of its lower coefficients)
    that is irreducible and has x as a generator of the multiplicative group."""
    for coeffs in _monic_polys(m, p):
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p) and _has_full_order([0, 1], coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no primitive polynomial for p={p}, m={m}")


# ---------------------------------------------------------------------------
# modulus table


@lru_cache(maxsize=None)
def _load_table(path: str | None) -> dict[tuple[int, int], tuple[int, ...]]:
    if path is None:
        text = resources.files("qlrc.data").joinpath("moduli.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    raw = json.loads(text)
    table = {}
    for key, coeffs in raw["moduli"].items():
        p, m = (int(s) for s in key.split(","))
        table[(p, m)] = tuple(int(c) for c in coeffs)
    return table


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    table = _load_table(os.environ.get(TABLE_ENV) or None)
    try:
        return table[(p, m)]
    except KeyError:
        raise UnsupportedOrder(f"no modulus for GF({p}^{m}) in the field table") from None


@lru_cache(maxsize=None)
def _validate(p: int, m: int, modulus: tuple[int, ...]) -> None:
    if not is_prime(p):
        raise NonPrimeP(f"p = {p} is not prime")
    if m < 1 or p**m > MAX_ORDER:
        raise UnsupportedOrder(f"order {p}^{m} is outside 2..{MAX_ORDER}")
    if len(modulus) != m + 1 or modulus[-1] != 1:
        raise ReducibleModulus(f"modulus must be monic of degree {m}")
    if any(not 0 <= c < p for c in modulus):
        raise ReducibleModulus("modulus coefficients must lie in 0..p-1")
    if not is_irreducible(modulus, p):
        raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) presented as GF(p)[x]/(modulus); modulus is ascending and monic."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        _validate(self.p, self.m, self.modulus)

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def is_quadratic(self) -> bool:
        return self.m % 2 == 0

    @property
    def sub_order(self) -> int:
        """q for a field of order q^2."""
        if not self.is_quadratic:
            raise BadSubfieldOrder(f"GF({self.order}) is not a quadratic extension")
        return self.p ** (self.m // 2)

    @property
    def ops(self) -> Arith:
        return arith(self)

    def element(self, enc: int) -> FieldElement:
        return FieldElement(self, enc)

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        try:
            p, m = int(obj["p"]), int(obj["m"])
            modulus = obj.get("modulus")
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad field description: {obj!r}") from exc
        return field_create(p, m, modulus)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


def field_create(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeP(f"p = {p} is not prime")
    if m < 1 or p**m > MAX_ORDER:
        raise UnsupportedOrder(f"order {p}^{m} is outside 2..{MAX_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, m)
    return FieldSpec(p, m, tuple(modulus))


# ---------------------------------------------------------------------------
# vectorised arithmetic


class Arith:
    """Table-driven arithmetic on arrays of encoded elements."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, m = spec.p, spec.m
        self.p, self.m, self.order = p, m, spec.order
        self.n_units = spec.order - 1
        self.generator = self._find_generator()
        exp = self._power_table(self.generator)
        self.exp = np.concatenate([exp, exp]).astype(np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(self.n_units, dtype=np.int64)
        self.log = log
        self.exp_list: list[int] = exp.tolist()
        self.log_list: list[int] = log.tolist()
        self.pw = p ** np.arange(m, dtype=np.int64)
        self.digits = (np.arange(self.order, dtype=np.int64)[:, None] // self.pw) % p
        self.neg_table = ((-self.digits) % p) @ self.pw
        inv = np.zeros(self.order, dtype=np.int64)
        inv[1:] = self.exp[(self.n_units - log[1:]) % self.n_units]
        self.inv_table = inv
        self._add_table = None
        if m > 1 and p != 2 and self.order <= _ADD_TABLE_LIMIT:
            d = self.digits
            self._add_table = (((d[:, None, :] + d[None, :, :]) % p) @ self.pw).astype(np.int64)

    # -- construction helpers
    def _mul_poly(self, a: int, b: int) -> int:
        s = self.spec
        return _poly_to_enc(
            _poly_mulmod(_enc_to_poly(a, s.p, s.m), _enc_to_poly(b, s.p, s.m), s.modulus, s.p), s.p
        )

    def _find_generator(self) -> int:
        s = self.spec
        if self.order == 2:
            return 1
        for cand in range(2, self.order):
            if _has_full_order(_enc_to_poly(cand, s.p, s.m), s.modulus, s.p):
                return cand
        raise AssertionError("multiplicative group has no generator")

    def _power_table(self, g: int) -> np.ndarray:
        s = self.spec
        p, m, n = s.p, s.m, self.n_units
        out = [1] * n
        if m == 1:
            acc = 1
            for i in range(1, n):
                acc = acc * g % p
                out[i] = acc
            return np.array(out, dtype=np.int64)
        if g == p:
            # multiplication by x: shift digits and fold the top one back in
            red = [(-c) % p for c in s.modulus[:-1]]
            digits = [1] + [0] * (m - 1)
            pw = [p**i for i in range(m)]
            for i in range(1, n):
                top = digits[-1]
                digits = [0] + digits[:-1]
                if top:
                    digits = [(d + top * r) % p for d, r in zip(digits, red)]
                out[i] = sum(d * w for d, w in zip(digits, pw))
            return np.array(out, dtype=np.int64)
        acc = 1
        for i in range(1, n):
            acc = self._mul_poly(acc, g)
            out[i] = acc
        return np.array(out, dtype=np.int64)

    # -- vector ops (inputs are int64 arrays or python ints)
    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.pw

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a)) % self.p
        if self.p == 2:
            return np.asarray(a)
        return self.neg_table[a]

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a) - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        return self.inv_table[a]

    def power(self, a, e: int):
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        r = self.exp[(self.log[a] * e) % self.n_units]
        return np.where(a == 0, 0, r)

    def outer(self, col, row):
        """Elementwise product col[i] * row[j]."""
        return self.mul(np.asarray(col)[:, None], np.asarray(row)[None, :])

    def dot_rows(self, a, b):
        """Matrix product a @ b.T over the field (a: r x n, b: s x n)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            out = np.zeros((a.shape[0], b.shape[0]), dtype=np.int64)
            # chunk to keep partial sums far from int64 overflow
            step = max(1, (1 << 62) // max(1, (self.p - 1) ** 2) // 2)
            for lo in range(0, a.shape[1], step):
                out = (out + a[:, lo : lo + step] @ b[:, lo : lo + step].T) % self.p
            return out
        out = np.zeros((a.shape[0], b.shape[0]), dtype=np.int64)
        for j in range(a.shape[1]):
            out = self.add(out, self.outer(a[:, j], b[:, j]))
        return out

    # -- scalar conveniences
    def s_add(self, a: int, b: int) -> int:
        return int(self.add(np.int64(a), np.int64(b)))

    def s_sub(self, a: int, b: int) -> int:
        return int(self.sub(np.int64(a), np.int64(b)))

    def s_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_list[(self.log_list[a] + self.log_list[b]) % self.n_units]

    def s_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp_list[(-self.log_list[a]) % self.n_units]

    def s_pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self.exp_list[(self.log_list[a] * e) % self.n_units]


@lru_cache(maxsize=None)
def arith(spec: FieldSpec) -> Arith:
    return Arith(spec)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    enc: int

    def __post_init__(self) -> None:
        if not 0 <= self.enc < self.spec.order:
            raise ValueError(f"encoding {self.enc} outside GF({self.spec.order})")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other.enc
        if isinstance(other, int) and 0 <= other < self.spec.order:
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.ops.s_add(self.enc, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.ops.s_sub(self.enc, b))

    def __neg__(self):
        return FieldElement(self.spec, int(self.spec.ops.neg(np.int64(self.enc))))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.ops.s_mul(self.enc, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        ops = self.spec.ops
        return FieldElement(self.spec, ops.s_mul(self.enc, ops.s_inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.ops.s_pow(self.enc, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.ops.s_inv(self.enc))

    def is_zero(self) -> bool:
        return self.enc == 0

    def order(self) -> int:
        """Multiplicative order."""
        if self.enc == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.spec.order - 1
        log = self.spec.ops.log_list[self.enc]
        from math import gcd

        return n // gcd(n, log)

    def __int__(self) -> int:
        return self.enc

    def __repr__(self) -> str:
        return f"{self.spec!r}({self.enc})"


def primitive_element(spec: FieldSpec) -> FieldElement:
    """Generator of the multiplicative group with the smallest encoding."""
    return FieldElement(spec, spec.ops.generator)


def _nth_coprime(n: int, index: int) -> int:
    from math import gcd

    count = 0
    e = 0
    while count < index:
        e += 1
        if gcd(e, n) == 1:
            count += 1
    return e


def root_of_unity(spec: FieldSpec, n: int, index: int = 1) -> FieldElement:
    """Primitive n-th root of unity g^((order-1)/n * e), e the index-th integer
    coprime to n (index counts from 1)."""
    units = spec.order - 1
    if n < 1 or units % n:
        raise NonDivisorN(f"n = {n} does not divide {units}")
    if index < 1:
        raise ValueError("index counts from 1")
    e = _nth_coprime(n, index)
    g = spec.ops.generator
    return FieldElement(spec, spec.ops.s_pow(g, (units // n) * e))


def frobenius_q(x: FieldElement, q: int) -> FieldElement:
    """x -> x^q for a field of order q^2."""
    if q * q != x.spec.order:
        raise BadSubfieldOrder(f"q^2 = {q * q} but the field has order {x.spec.order}")
    return x**q

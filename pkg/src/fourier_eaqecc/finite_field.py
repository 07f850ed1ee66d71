"""Exact arithmetic in GF(p) and GF(p^m).

Elements are canonical integers in ``[0, q)``: the coefficient vector
``(c_0, ..., c_{m-1})`` of a residue modulo an irreducible polynomial,
read as a base-``p`` number ``sum(c_i * p**i)``.  All :class:`FieldSpec`
arithmetic methods accept Python ints or numpy integer arrays and
broadcast like numpy.  :class:`FieldElement` is the scalar wrapper used at
API boundaries (roots of unity, evaluation points).

Polynomials over GF(p) are coefficient lists, lowest degree first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    CharacteristicDividesN,
    DivideByZero,
    FieldMismatch,
    FieldTooLarge,
    NoSuchRoot,
    SearchExhausted,
)

MAX_ORDER = 2**20
DEFAULT_SEARCH_BOUND = 2**20
TABLE_ORDER = 2**11


# -- integer helpers --------------------------------------------------------


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
    """Trial-division factorization ``{prime: exponent}`` of ``n >= 1``."""
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
    """Return ``(p, m)`` with ``q == p**m``, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    ((p, m),) = fac.items()
    return p, m


# -- polynomials over GF(p) -------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise DivideByZero("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        quot[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _trim(a)
    return _trim(quot), a


def poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return poly_divmod(prod, f, p)[1]


def poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv_lead = pow(a[-1], -1, p)
        a = [x * inv_lead % p for x in a]
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test: ``f`` divides ``x^(p^m) - x`` and shares no factor
    with ``x^(p^(m/l)) - x`` for each prime ``l | m``."""
    f = _trim([x % p for x in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def frobenius(k: int) -> list[int]:
        # x^(p^k) mod f by iterated p-th powers
        r = x
        for _ in range(k):
            r = poly_powmod(r, p, f, p)
        return r

    top = frobenius(m)
    diff = _trim([(top[i] if i < len(top) else 0) - (1 if i == 1 else 0) for i in range(max(len(top), 2))])
    if poly_divmod(diff, f, p)[1]:
        return False
    for ell in factorize(m):
        r = frobenius(m // ell)
        diff = _trim([(r[i] if i < len(r) else 0) - (1 if i == 1 else 0) for i in range(max(len(r), 2))])
        if len(poly_gcd(f, diff, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def _find_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    # lexicographic with c_0 as the most significant key
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return tuple(cand)
    raise SearchExhausted(f"no irreducible polynomial of degree {m} over GF({p})")


def find_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible polynomial of degree ``m``.

    Coefficient lists are compared lowest degree first, so ``x^2 + x + 1``
    is returned for ``(2, 2)`` and ``x`` for any ``m == 1``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be >= 1")
    return list(_find_irreducible(p, m))


# -- fields -----------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^m), realised modulo ``modulus``."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] = field(default=(), compare=True)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**self.m > MAX_ORDER:
            raise FieldTooLarge(f"GF({self.p}^{self.m}) exceeds the supported order 2^20")
        if not self.modulus:
            object.__setattr__(self, "modulus", _find_irreducible(self.p, self.m))
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            object.__setattr__(self, "modulus", mod)
            if self.m == 1:
                if len(mod) != 2 or mod[1] != 1:
                    raise ValueError("modulus for a prime field must be monic of degree 1")
            elif len(mod) != self.m + 1 or mod[-1] != 1 or not is_irreducible(list(mod), self.p):
                raise ValueError(f"modulus {list(mod)} is not monic irreducible of degree {self.m}")

    @classmethod
    def of_order(cls, q: int) -> FieldSpec:
        pm = prime_power(q)
        if pm is None:
            raise ValueError(f"{q} is not a prime power")
        return cls(*pm)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    __str__ = __repr__

    # serialization

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        mod = tuple(obj.get("modulus") or ())
        if int(obj.get("m", 1)) == 1:
            mod = ()
        return cls(int(obj["p"]), int(obj.get("m", 1)), mod)

    # element helpers

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, int(value) % self.q if self.m == 1 else int(value))

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def digits(self, a) -> np.ndarray:
        """Coefficient vectors of ``a``, shape ``a.shape + (m,)``."""
        a = np.asarray(a, dtype=np.int64)
        pw = self.p ** np.arange(self.m, dtype=np.int64)
        return (a[..., None] // pw) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        pw = self.p ** np.arange(self.m, dtype=np.int64)
        return (d * pw).sum(axis=-1)

    # scalar arithmetic independent of the log tables

    def _mul_scalar(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        da = [int(x) for x in self.digits(a)]
        db = [int(x) for x in self.digits(b)]
        r = poly_mulmod(da, db, list(self.modulus), self.p)
        return int(sum(c * self.p**i for i, c in enumerate(r)))

    def _pow_scalar(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self._inv_scalar(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_scalar(result, base)
            base = self._mul_scalar(base, base)
            e >>= 1
        return result

    def _inv_scalar(self, a: int) -> int:
        if a % self.q == 0:
            raise DivideByZero(f"inverse of zero in {self}")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._pow_scalar(a, self.q - 2)

    def poly_mul(self, a, b) -> np.ndarray:
        """Vectorized multiplication by polynomial convolution and reduction."""
        da, db = np.broadcast_arrays(self.digits(a), self.digits(b))
        m, p = self.m, self.p
        prod = np.zeros(da.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            prod[..., i : i + m] += da[..., i : i + 1] * db
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        for top in range(2 * m - 2, m - 1, -1):
            coef = prod[..., top : top + 1]
            prod[..., top - m : top + 1] = (prod[..., top - m : top + 1] - coef * mod) % p
        return self.from_digits(prod[..., :m])

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        g = primitive_element(self).value
        exp = np.zeros(q - 1, dtype=np.int64)
        block = min(q - 1, 1024)
        exp[0] = 1
        for i in range(1, block):
            exp[i] = self._mul_scalar(int(exp[i - 1]), g)
        step = self._mul_scalar(int(exp[block - 1]), g)
        pos = block
        while pos < q - 1:
            n = min(block, q - 1 - pos)
            if self.m == 1:
                exp[pos : pos + n] = exp[:n] * step % self.p
            else:
                exp[pos : pos + n] = self.poly_mul(exp[:n], step)
            pos += n
            step = self._mul_scalar(int(exp[pos - 1]), g)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        exp.setflags(write=False)
        log.setflags(write=False)
        return exp, log

    @cached_property
    def _op_tables(self) -> tuple[np.ndarray, np.ndarray] | None:
        # full add/mul tables for small extension fields
        if self.m == 1 or self.q > TABLE_ORDER:
            return None
        el = self.elements()
        add = self.from_digits(self.digits(el)[:, None, :] + self.digits(el)[None, :, :]).astype(np.int16)
        exp, log = self._tables
        mul = exp[(log[:, None] + log[None, :]) % (self.q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        add.setflags(write=False)
        mul = mul.astype(np.int16)
        mul.setflags(write=False)
        return add, mul

    # vectorized arithmetic

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        tabs = self._op_tables
        if tabs is not None:
            return tabs[0][a, b].astype(np.int64)
        return self.from_digits(self.digits(a) + self.digits(b))

    @cached_property
    def _neg_table(self) -> np.ndarray:
        t = self.from_digits(-self.digits(self.elements()))
        t.setflags(write=False)
        return t

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg_table[a]

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        if self._op_tables is not None:
            return self.add(a, self._neg_table[b])
        return self.from_digits(self.digits(a) - self.digits(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        tabs = self._op_tables
        if tabs is not None:
            return tabs[1][a, b].astype(np.int64)
        exp, log = self._tables
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivideByZero(f"inverse of zero in {self}")
        exp, log = self._tables
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            a, e = self.inv(a), -e
        exp, log = self._tables
        out = exp[(log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def scalar(self, k: int) -> int:
        """Image of the integer ``k`` in the prime subfield."""
        return int(k) % self.p


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} is not a canonical element of {self.spec}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.spec.scalar(int(other))
        return NotImplemented

    def _wrap(self, v) -> FieldElement:
        return FieldElement(self.spec, int(v))

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec._mul_scalar(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.spec._mul_scalar(self.value, self.spec._inv_scalar(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.spec._mul_scalar(b, self.spec._inv_scalar(self.value)))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.spec._pow_scalar(self.value, int(e)))

    def inv(self) -> FieldElement:
        return self._wrap(self.spec._inv_scalar(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} in {self.spec}"


def arith(op: str, a: FieldElement, b: FieldElement | int | None = None) -> FieldElement:
    """Apply a named field operation: add, sub, mul, div, neg, inv or pow."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    ops = {
        "add": FieldElement.__add__,
        "sub": FieldElement.__sub__,
        "mul": FieldElement.__mul__,
        "div": FieldElement.__truediv__,
    }
    if op not in ops:
        raise ValueError(f"unknown field operation {op!r}")
    return ops[op](a, b)


# -- multiplicative structure ---------------------------------------------


def element_order(x: FieldElement) -> int:
    """Multiplicative order of a nonzero element."""
    if x.value == 0:
        raise DivideByZero("zero has no multiplicative order")
    spec = x.spec
    e = spec.q - 1
    for ell in factorize(e):
        while e % ell == 0 and spec._pow_scalar(x.value, e // ell) == 1:
            e //= ell
    return e


@lru_cache(maxsize=None)
def _primitive_value(spec: FieldSpec) -> int:
    order = spec.q - 1
    if order == 1:
        return 1
    cofactors = [order // ell for ell in factorize(order)]
    for g in range(1, spec.q):
        if all(spec._pow_scalar(g, c) != 1 for c in cofactors):
            return g
    raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover


def primitive_element(spec: FieldSpec) -> FieldElement:
    """The generator of GF(q)* with the smallest canonical value."""
    return FieldElement(spec, _primitive_value(spec))


def primitive_nth_root(spec: FieldSpec, n: int) -> FieldElement:
    if n < 1 or (spec.q - 1) % n:
        raise NoSuchRoot(f"{spec} has no primitive {n}-th root of unity ({n} does not divide {spec.q - 1})")
    g = primitive_element(spec)
    return g ** ((spec.q - 1) // n)


# -- field searches ---------------------------------------------------------


def find_prime_field(n: int, bound: int = DEFAULT_SEARCH_BOUND) -> int:
    """Smallest prime ``p`` with ``p = 1 (mod n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = n + 1
    while p <= bound:
        if is_prime(p):
            return p
        p += n
    raise SearchExhausted(f"no prime = 1 mod {n} below {bound}")


def find_extension_field(p: int, n: int) -> int:
    """Smallest ``m`` with ``n | p^m - 1``: the multiplicative order of p mod n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if math.gcd(p, n) != 1:
        raise CharacteristicDividesN(f"characteristic {p} divides {n}")
    if n == 1:
        return 1
    m, acc = 1, p % n
    while acc != 1:
        acc = acc * p % n
        m += 1
    return m


def find_smallest_field(n: int, bound: int = DEFAULT_SEARCH_BOUND) -> FieldSpec:
    """Field of least order ``q`` (prime or prime power) with ``n | q - 1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = n + 1
    while q <= bound:
        pm = prime_power(q)
        if pm is not None:
            return FieldSpec(*pm)
        q += n
    raise SearchExhausted(f"no field with {n} | q-1 below {bound}")

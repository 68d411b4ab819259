"""Exact arithmetic in GF(p^e) on integer ranks.

An element is stored as its rank: the base-p digits of the rank are the
coefficients of the residue polynomial, constant term first.  Rank 0 is the
additive identity and rank 1 the multiplicative identity.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from jumped_wenger.errors import (
    DegreeMismatchError,
    EvenCharacteristicError,
    FieldDivisionByZero,
    NotPrimeError,
    PreconditionViolatedError,
    ReducibleModulusError,
)

logger = logging.getLogger(__name__)

MAX_ORDER = 1 << 16
TABLE_LIMIT = 1024  # numpy operation tables are only built up to this order

_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:/\s*\[([0-9,\s]*)\])?\s*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of n in ascending order."""
    factors: List[int] = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        factors.append(n)
    return factors


def prime_power(q: int) -> Tuple[int, int]:
    """Split q into (p, e) with q = p^e, or raise NotPrimeError."""
    factors = prime_factors(q) if q > 1 else []
    if len(factors) != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    p = factors[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def _digits(n: int, base: int, width: int) -> List[int]:
    out = []
    for _ in range(width):
        out.append(n % base)
        n //= base
    return out


def _undigits(digits: Sequence[int], base: int) -> int:
    n = 0
    for d in reversed(digits):
        n = n * base + d
    return n


def _poly_mod(a: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo a monic modulus over GF(p), length deg(modulus)."""
    rem = [c % p for c in a]
    deg = len(modulus) - 1
    for k in range(len(rem) - 1, deg - 1, -1):
        coef = rem[k]
        if coef:
            for t in range(deg + 1):
                rem[k - deg + t] = (rem[k - deg + t] - coef * modulus[t]) % p
    rem = rem[:deg]
    return rem + [0] * (deg - len(rem))


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for x, ca in enumerate(a):
        if ca:
            for y, cb in enumerate(b):
                out[x + y] = (out[x + y] + ca * cb) % p
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            divisor = _digits(low, p, d) + [1]
            if not any(_poly_mod(modulus, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> Tuple[int, ...]:
    """Smallest monic irreducible of degree e, ordered by the rank of its lower coefficients."""
    for low in range(p**e):
        candidate = _digits(low, p, e) + [1]
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise ReducibleModulusError(f"no irreducible polynomial of degree {e} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) with an explicit monic irreducible modulus (constant term first)."""

    p: int
    e: int
    modulus: Tuple[int, ...]
    q: int = field(init=False)
    _exp: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _log: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _generator: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise NotPrimeError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise DegreeMismatchError(f"extension degree must be positive, got {self.e}")
        modulus = tuple(int(c) for c in self.modulus)
        if len(modulus) != self.e + 1 or modulus[-1] != 1:
            raise DegreeMismatchError(
                f"modulus {list(modulus)} is not monic of degree {self.e}"
            )
        if any(c < 0 or c >= self.p for c in modulus):
            raise DegreeMismatchError(f"modulus coefficients must lie in [0, {self.p})")
        if not is_irreducible(modulus, self.p):
            raise ReducibleModulusError(f"modulus {list(modulus)} is reducible over GF({self.p})")
        q = self.p**self.e
        if q > MAX_ORDER:
            raise PreconditionViolatedError(f"field order {q} exceeds {MAX_ORDER}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "q", q)
        exp, log, generator = self._build_tables()
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "_generator", generator)

    # -- table construction -------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mul(_digits(a, self.p, self.e), _digits(b, self.p, self.e), self.p)
        return _undigits(_poly_mod(prod, self.modulus, self.p), self.p)

    def _raw_pow(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return result

    def _build_tables(self) -> Tuple[Tuple[int, ...], Tuple[int, ...], int]:
        order = self.q - 1
        divisors = prime_factors(order) if order > 1 else []
        generator = next(
            g
            for g in range(1, self.q)
            if all(self._raw_pow(g, order // r) != 1 for r in divisors)
        )
        exp = [1] * order
        for k in range(1, order):
            exp[k] = self._raw_mul(exp[k - 1], generator)
        log = [-1] * self.q
        for k, value in enumerate(exp):
            log[value] = k
        return tuple(exp), tuple(log), generator

    # -- scalar arithmetic ---------------------------------------------------

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        result = 0
        place = 1
        for _ in range(self.e):
            result += ((a % self.p + sign * (b % self.p)) % self.p) * place
            a //= self.p
            b //= self.p
            place *= self.p
        return result

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, 1)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._digitwise(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, -1)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        """Square-and-multiply; pow(a, 0) is 1 for every a."""
        if k < 0:
            raise PreconditionViolatedError("negative exponents are not supported")
        result = 1
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero("zero has no multiplicative inverse")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def describe(self) -> str:
        if self.e == 1:
            return str(self.p)
        return f"{self.p}^{self.e}/[{','.join(str(c) for c in self.modulus)}]"

    def __str__(self) -> str:
        return f"GF({self.describe()})"

    # -- vectorised tables ---------------------------------------------------

    def _require_tables(self) -> None:
        if self.q > TABLE_LIMIT:
            raise PreconditionViolatedError(
                f"operation tables are limited to q <= {TABLE_LIMIT}, got {self.q}"
            )

    @cached_property
    def digit_array(self) -> np.ndarray:
        """(q, e) array of base-p digits of every rank."""
        ranks = np.arange(self.q, dtype=np.int64)
        powers = self.p ** np.arange(self.e, dtype=np.int64)
        return (ranks[:, None] // powers[None, :]) % self.p

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        digits = self.digit_array
        powers = self.p ** np.arange(self.e, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % self.p
        return summed @ powers

    @cached_property
    def neg_table(self) -> np.ndarray:
        digits = self.digit_array
        powers = self.p ** np.arange(self.e, dtype=np.int64)
        return ((-digits) % self.p) @ powers

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        log = np.asarray(self._log, dtype=np.int64)
        exp = np.asarray(self._exp, dtype=np.int64)
        idx = (log[:, None] + log[None, :]) % max(self.q - 1, 1)
        table = exp[idx]
        table[0, :] = 0
        table[:, 0] = 0
        return table

    def power_column(self, exponent: int) -> np.ndarray:
        """x^exponent for every rank x, with 0^0 = 1."""
        return np.asarray([self.pow(x, exponent) for x in range(self.q)], dtype=np.int64)


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int, modulus: Tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p=p, e=e, modulus=modulus)


def make_field(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Build GF(p^e); without a modulus the smallest monic irreducible is used."""
    if not is_prime(p):
        raise NotPrimeError(f"characteristic {p} is not prime")
    if e < 1:
        raise DegreeMismatchError(f"extension degree must be positive, got {e}")
    if p**e > MAX_ORDER:
        raise PreconditionViolatedError(f"field order {p}^{e} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = smallest_irreducible(p, e)
    return _cached_field(p, e, tuple(int(c) for c in modulus))


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return make_field(p, e)


def parse_field(text: str) -> FieldSpec:
    """Parse "7", "9", "3^2" or "3^2/[1,0,1]" into a field."""
    match = _FIELD_RE.match(str(text))
    if not match:
        raise NotPrimeError(f"cannot parse field description {text!r}")
    base, exponent, coeffs = match.groups()
    if exponent is None:
        p, e = prime_power(int(base))
    else:
        p, e = int(base), int(exponent)
    modulus = None
    if coeffs is not None:
        modulus = [int(c) for c in coeffs.split(",") if c.strip()]
    return make_field(p, e, modulus)


def describe(field_spec: FieldSpec) -> str:
    return field_spec.describe()


def enumerate_field(field_spec: FieldSpec) -> List[int]:
    return list(field_spec.elements())


def multiplicative_order(field_spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise FieldDivisionByZero("zero has no multiplicative order")
    order = field_spec.q - 1
    for r in prime_factors(order) if order > 1 else []:
        while order % r == 0 and field_spec.pow(a, order // r) == 1:
            order //= r
    return order


def primitive_element(field_spec: FieldSpec) -> int:
    """Smallest-rank generator of the multiplicative group."""
    for g in range(1, field_spec.q):
        if multiplicative_order(field_spec, g) == field_spec.q - 1:
            return g
    raise AssertionError("multiplicative group has no generator")  # pragma: no cover


def quadratic_character(field_spec: FieldSpec, a: int) -> int:
    if field_spec.p == 2:
        raise EvenCharacteristicError("the quadratic character needs odd q")
    if a == 0:
        return 0
    return 1 if field_spec.pow(a, (field_spec.q - 1) // 2) == 1 else -1


def v_function(field_spec: FieldSpec, b: int) -> int:
    return field_spec.q - 1 if b == 0 else -1


def absolute_trace(field_spec: FieldSpec, a: int) -> int:
    total = 0
    term = a
    for _ in range(field_spec.e):
        total = field_spec.add(total, term)
        term = field_spec.pow(term, field_spec.p)
    return total


def count_diagonal_quadratic(field_spec: FieldSpec, a1: int, a2: int, b: int) -> int:
    """Number of (x1, x2) with a1*x1^2 + a2*x2^2 = b, by enumeration."""
    if field_spec.p == 2:
        raise EvenCharacteristicError("diagonal quadratic counts need odd q")
    if a1 == 0 or a2 == 0:
        raise PreconditionViolatedError("coefficients must be nonzero")
    left = [field_spec.mul(a1, field_spec.mul(x, x)) for x in field_spec.elements()]
    right = [field_spec.mul(a2, field_spec.mul(x, x)) for x in field_spec.elements()]
    return sum(1 for u in left for w in right if field_spec.add(u, w) == b)


def diagonal_quadratic_formula(field_spec: FieldSpec, a1: int, a2: int, b: int) -> int:
    minus_prod = field_spec.neg(field_spec.mul(a1, a2))
    return field_spec.q + v_function(field_spec, b) * quadratic_character(field_spec, minus_prod)


def count_conic_x(field_spec: FieldSpec) -> int:
    """Solutions of x1^2 + x2^2 + x1*x2 + x1 + x2 + 1 = 0."""
    f = field_spec
    count = 0
    for x1 in f.elements():
        part = f.add(f.add(f.mul(x1, x1), x1), 1)
        for x2 in f.elements():
            value = f.add(part, f.add(f.mul(x2, x2), f.add(f.mul(x1, x2), x2)))
            if value == 0:
                count += 1
    return count


def conic_closed_form(field_spec: FieldSpec) -> Optional[int]:
    """Closed-form conic count, or None where no closed form is available."""
    f = field_spec
    if f.p == 3:
        return f.q
    if f.p == 2:
        return 1 if f.e % 2 == 1 else None
    minus_eight = f.neg(f.from_int(8))
    minus_three = f.neg(f.from_int(3))
    return f.q + v_function(f, minus_eight) * quadratic_character(f, minus_three)


__all__ = [
    "FieldSpec",
    "make_field",
    "field_of_order",
    "parse_field",
    "describe",
    "enumerate_field",
    "primitive_element",
    "multiplicative_order",
    "quadratic_character",
    "v_function",
    "absolute_trace",
    "count_diagonal_quadratic",
    "diagonal_quadratic_formula",
    "count_conic_x",
    "conic_closed_form",
    "is_prime",
    "prime_power",
    "is_irreducible",
    "smallest_irreducible",
]

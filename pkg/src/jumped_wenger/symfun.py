"""Elementary symmetric polynomials and jumped Vandermonde matrices.

``sigma(field, k, xs)`` follows the convention sigma_0 = 1, sigma_{-1} = 0 and
sigma_k = 0 outside [0, len(xs)].  The paired form is
``sigma_{a,b} = sigma_a * sigma_{b+1} - sigma_b * sigma_{a+1}``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Callable, List, Optional, Sequence, Tuple

from jumped_wenger.errors import (
    InternalInconsistencyError,
    NonSquareProfileError,
    PreconditionViolatedError,
    SearchExhaustedError,
)
from jumped_wenger.gf import FieldSpec, is_prime, make_field
from jumped_wenger.linalg import FieldMatrix, determinant

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 16  # exhaustive fallback only runs for q up to this order


@dataclass(frozen=True)
class ExponentProfile:
    """Row exponents {0, ..., l+1} minus {i, j} of the matrix M_{l,i,j}."""

    l: int
    i: int
    j: int
    row_exponents: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.l < 1:
            raise PreconditionViolatedError(f"row budget must be positive, got {self.l}")
        if not 0 <= self.i < self.j <= self.l + 1:
            raise PreconditionViolatedError(
                f"need 0 <= i < j <= l+1, got l={self.l}, i={self.i}, j={self.j}"
            )
        exponents = tuple(e for e in range(self.l + 2) if e not in (self.i, self.j))
        object.__setattr__(self, "row_exponents", exponents)


def _sigma_all(field: FieldSpec, xs: Sequence[int]) -> List[int]:
    """[sigma_0, ..., sigma_n] by the one-variable-at-a-time recursion."""
    values = [1] + [0] * len(xs)
    for count, x in enumerate(xs, start=1):
        for k in range(count, 0, -1):
            values[k] = field.add(values[k], field.mul(x, values[k - 1]))
    return values


def sigma(field: FieldSpec, k: int, xs: Sequence[int]) -> int:
    if k < 0 or k > len(xs):
        return 0
    if k == 0:
        return 1
    return _sigma_all(field, xs)[k]


def sigma_subset_sum(field: FieldSpec, k: int, xs: Sequence[int]) -> int:
    """sigma_k as the plain sum over k-subsets."""
    if k < 0 or k > len(xs):
        return 0
    total = 0
    for subset in itertools.combinations(xs, k):
        total = field.add(total, reduce(field.mul, subset, 1))
    return total


def sigma_pair(field: FieldSpec, i: int, j: int, xs: Sequence[int]) -> int:
    def s(k: int) -> int:
        return sigma(field, k, xs)

    return field.sub(field.mul(s(i), s(j + 1)), field.mul(s(j), s(i + 1)))


def build_m(field: FieldSpec, profile: ExponentProfile, xs: Sequence[int]) -> FieldMatrix:
    """Entry (r, c) is xs[c] ** row_exponents[r]."""
    rows = [[field.pow(x, e) for x in xs] for e in profile.row_exponents]
    return FieldMatrix(field, len(rows), len(xs), tuple(v for row in rows for v in row))


def difference_product(field: FieldSpec, xs: Sequence[int]) -> int:
    """Product of (x_l - x_k) over k < l."""
    product = 1
    for k, l in itertools.combinations(range(len(xs)), 2):
        product = field.mul(product, field.sub(xs[l], xs[k]))
    return product


def _signed(field: FieldSpec, value: int, sign: int) -> int:
    return value if sign > 0 else field.neg(value)


def _reference_prime(n: int) -> int:
    p = max(n + 2, 3)
    while not is_prime(p):
        p += 1
    return p


@lru_cache(maxsize=None)
def determinant_sign(n: int, i: int, j: int) -> int:
    """Calibrated sign eps with det M_{n,i,j} = eps * (-1)^(i+j-1) * sigma_{n-i,n-j} * prod(x_l - x_k)."""
    profile = ExponentProfile(n, i, j)
    ref = make_field(_reference_prime(n))
    xs = search_sigma_pair_nonzero(ref, n, i, j)
    direct = determinant(build_m(ref, profile, xs))
    base = _signed(
        ref,
        ref.mul(sigma_pair(ref, n - i, n - j, xs), difference_product(ref, xs)),
        (-1) ** (i + j - 1),
    )
    if direct == base:
        eps = 1
    elif direct == ref.neg(base):
        eps = -1
    else:
        raise InternalInconsistencyError(
            f"determinant of M_{{{n},{i},{j}}} does not match the closed form up to sign"
        )
    logger.debug("Calibrated determinant sign for (n=%d, i=%d, j=%d): %+d", n, i, j, eps)
    return eps


def jumped_vandermonde_det(
    field: FieldSpec, profile: ExponentProfile, xs: Sequence[int]
) -> Tuple[int, int]:
    """Closed-form determinant of a square profile and the calibrated sign used."""
    n = profile.l
    if len(xs) != n:
        raise NonSquareProfileError(f"profile with l={n} needs {n} values, got {len(xs)}")
    eps = determinant_sign(n, profile.i, profile.j)
    value = field.mul(
        sigma_pair(field, n - profile.i, n - profile.j, xs), difference_product(field, xs)
    )
    return _signed(field, value, eps * (-1) ** (profile.i + profile.j - 1)), eps


# -- constructive searches ---------------------------------------------------


def _greedy(
    field: FieldSpec,
    n: int,
    step_ok: Callable[[List[int]], bool],
    fixed_first: Optional[int],
) -> Optional[List[int]]:
    prefix: List[int] = []
    for r in range(1, n + 1):
        if r == 1 and fixed_first is not None:
            candidates = [fixed_first]
        else:
            candidates = [x for x in field.elements() if x not in prefix]
        chosen = next((x for x in candidates if step_ok(prefix + [x])), None)
        if chosen is None:
            return None
        prefix.append(chosen)
    return prefix


def _exhaustive(
    field: FieldSpec,
    n: int,
    final_ok: Callable[[List[int]], bool],
    fixed_first: Optional[int],
) -> Optional[List[int]]:
    if field.q > EXHAUSTIVE_LIMIT:
        return None
    if fixed_first is None:
        pool = list(field.elements())
        for combo in itertools.combinations(pool, n):
            if final_ok(list(combo)):
                return list(combo)
        return None
    pool = [x for x in field.elements() if x != fixed_first]
    for combo in itertools.combinations(pool, n - 1):
        candidate = [fixed_first, *combo]
        if final_ok(candidate):
            return candidate
    return None


def _run_search(
    field: FieldSpec,
    n: int,
    step_ok: Callable[[List[int]], bool],
    final_ok: Callable[[List[int]], bool],
    fixed_first: Optional[int],
    label: str,
) -> List[int]:
    if n < 1:
        raise PreconditionViolatedError(f"tuple length must be positive, got {n}")
    if n > field.q:
        raise SearchExhaustedError(f"{label}: GF({field.q}) has fewer than {n} elements")
    if fixed_first is not None and not 0 <= fixed_first < field.q:
        raise PreconditionViolatedError(f"fixed first value {fixed_first} is not a field rank")
    found = _greedy(field, n, step_ok, fixed_first)
    if found is None or not final_ok(found):
        logger.debug("%s: greedy extension dead-ended, trying exhaustive search", label)
        found = _exhaustive(field, n, final_ok, fixed_first)
    if found is None:
        raise SearchExhaustedError(f"{label}: no distinct tuple found over GF({field.q})")
    return found


def search_sigma_nonzero(field: FieldSpec, n: int, k: int) -> List[int]:
    """Distinct x_1..x_n with sigma_k != 0, extending one element at a time."""

    def step_ok(prefix: List[int]) -> bool:
        target = k - (n - len(prefix))
        return target < 1 or sigma(field, target, prefix) != 0

    def final_ok(xs: List[int]) -> bool:
        return sigma(field, k, xs) != 0

    if not 0 <= k <= n:
        raise SearchExhaustedError(f"sigma_{k} of {n} values vanishes identically")
    return _run_search(field, n, step_ok, final_ok, None, f"sigma_{k}")


def search_sigma_pair_nonzero(
    field: FieldSpec, n: int, i: int, j: int, fixed_first: Optional[int] = None
) -> List[int]:
    """Distinct x_1..x_n with sigma_{n-i,n-j} != 0, optionally pinning x_1."""
    if not 0 <= i < j <= n + 1:
        raise PreconditionViolatedError(f"need 0 <= i < j <= n+1, got n={n}, i={i}, j={j}")

    def step_ok(prefix: List[int]) -> bool:
        r = len(prefix)
        if r >= j - 1:
            return sigma_pair(field, r - i, r - j, prefix) != 0
        if r >= i:
            return sigma(field, r - i, prefix) != 0
        return True

    def final_ok(xs: List[int]) -> bool:
        return sigma_pair(field, n - i, n - j, xs) != 0

    return _run_search(
        field, n, step_ok, final_ok, fixed_first, f"sigma_{{{n - i},{n - j}}}"
    )


__all__ = [
    "ExponentProfile",
    "sigma",
    "sigma_subset_sum",
    "sigma_pair",
    "build_m",
    "difference_product",
    "determinant_sign",
    "jumped_vandermonde_det",
    "search_sigma_nonzero",
    "search_sigma_pair_nonzero",
]

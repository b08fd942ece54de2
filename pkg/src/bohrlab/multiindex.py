"""Exact combinatorics of monomial index sets.

A degree-m monomial in n variables is encoded two ways: as an exponent
vector alpha in N_0^n with sum m, or as a nondecreasing tuple
j = (j_1 <= ... <= j_m) with entries in {1, ..., n} listing which variable
each factor uses.  The two encodings are in bijection; the number of
distinct orderings of j is m!/alpha!.  Everything here is exact integer
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence


@dataclass(frozen=True)
class MultiIndex:
    """Exponent vector alpha with its degree m = sum(alpha)."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        if any((not isinstance(a, int)) or a < 0 for a in self.alpha):
            raise ValueError(f"alpha entries must be nonnegative integers: {self.alpha}")

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    @property
    def n(self) -> int:
        return len(self.alpha)

    def factorial(self) -> int:
        """alpha! = prod_i alpha_i!"""
        out = 1
        for a in self.alpha:
            out *= math.factorial(a)
        return out

    def to_j(self) -> tuple[int, ...]:
        return alpha_to_j(self.alpha)


def enumerate_J(m: int, n: int) -> list[tuple[int, ...]]:
    """All nondecreasing tuples (j_1 <= ... <= j_m), entries in {1..n}.

    Lexicographic order; the count is binomial(n+m-1, m).  The degree-zero
    set is {()}.
    """
    if n < 1:
        raise ValueError(f"dimension n must be >= 1, got {n}")
    if m < 0:
        raise ValueError(f"degree m must be >= 0, got {m}")
    return list(combinations_with_replacement(range(1, n + 1), m))


def enumerate_alpha(m: int, n: int) -> list[tuple[int, ...]]:
    """All exponent vectors of degree m in n variables, in the order
    induced by enumerate_J."""
    return [j_to_alpha(j, n) for j in enumerate_J(m, n)]


def _check_sorted(j: Sequence[int]) -> None:
    if any(j[i] > j[i + 1] for i in range(len(j) - 1)):
        raise ValueError(f"index tuple must be nondecreasing: {tuple(j)}")
    if any((not isinstance(k, int)) or k < 1 for k in j):
        raise ValueError(f"index entries must be integers >= 1: {tuple(j)}")


def multiplicity(j: Sequence[int]) -> int:
    """Number of distinct orderings of j, i.e. m!/alpha!."""
    _check_sorted(j)
    m = len(j)
    out = math.factorial(m)
    run = 1
    for i in range(1, m):
        if j[i] == j[i - 1]:
            run += 1
        else:
            out //= math.factorial(run)
            run = 1
    out //= math.factorial(run) if m else 1
    return out


def alpha_to_j(alpha: Sequence[int]) -> tuple[int, ...]:
    """j = (1 repeated alpha_1 times, ..., n repeated alpha_n times)."""
    if any((not isinstance(a, int)) or a < 0 for a in alpha):
        raise ValueError(f"alpha entries must be nonnegative integers: {tuple(alpha)}")
    out: list[int] = []
    for i, a in enumerate(alpha):
        out.extend([i + 1] * a)
    return tuple(out)


def j_to_alpha(j: Sequence[int], n: int) -> tuple[int, ...]:
    """Inverse of alpha_to_j for tuples with entries in {1..n}."""
    _check_sorted(j)
    if any(k > n for k in j):
        raise ValueError(f"index entries must be <= n={n}: {tuple(j)}")
    alpha = [0] * n
    for k in j:
        alpha[k - 1] += 1
    return tuple(alpha)


def reduced_star(J: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
    """The set of length-(m-1) prefixes of a subset of nondecreasing tuples.

    For J a subset of degree-m tuples this is exactly the set of j of
    degree m-1 admitting an extension (j, k) in J (any such extension has
    k >= last(j), so prefix extraction needs no re-sorting).
    """
    out: set[tuple[int, ...]] = set()
    for j in J:
        _check_sorted(j)
        if len(j) == 0:
            raise ValueError("reduced_star is undefined for degree-0 tuples")
        out.add(tuple(j[:-1]))
    return out


def count_Jm1(m: int, n: int, overflow_threshold: int = 100_000) -> tuple[int, float]:
    """Exact cardinality of the degree-(m-1) index set and its envelope.

    Returns (exact, envelope) where exact = (n+m-2)!/((n-1)!(m-1)!) and
    envelope = e^m (1+n/m)^(m-1).  Exact integer arithmetic up to
    m+n <= overflow_threshold; beyond that an OverflowError is raised
    rather than silently losing precision.  The float envelope is also
    checked for overflow.
    """
    if m < 1:
        raise ValueError(f"degree m must be >= 1, got {m}")
    if n < 1:
        raise ValueError(f"dimension n must be >= 1, got {n}")
    if m + n > overflow_threshold:
        raise OverflowError(
            f"m+n={m + n} exceeds the exact-arithmetic threshold {overflow_threshold}"
        )
    exact = math.comb(n + m - 2, m - 1)
    try:
        envelope = math.exp(m) * (1.0 + n / m) ** (m - 1)
    except OverflowError as err:
        raise OverflowError(f"envelope overflows float range for m={m}, n={n}") from err
    if math.isinf(envelope):
        raise OverflowError(f"envelope overflows float range for m={m}, n={n}")
    if exact > envelope:
        raise AssertionError(
            f"exact count {exact} exceeds envelope {envelope} for m={m}, n={n}"
        )
    return exact, envelope

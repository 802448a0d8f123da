"""Exact hitting probabilities for adjacent and antipodal target pairs."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .chain import USequence, antipodal_profile
from .cube import MAX_DIMENSION, Vertex, hamming_distance, prefix_weight

__all__ = [
    "adjacent_hitting_probability",
    "adjacent_hitting_probability_general",
    "antipodal_hitting_probability",
    "u_sequence",
    "USequence",
]


def _check_dimension(n: int) -> None:
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must satisfy 1 <= n <= {MAX_DIMENSION}, got {n}")


def _check_vertex(n: int, x: Vertex) -> None:
    if x.n != n:
        raise ValueError(f"dimension mismatch: vertex {x} has n={x.n}, expected {n}")


def _offset(n: int, k: int) -> Fraction:
    # sum_{i=k+1}^{n} C(n,i) / ((2^{n+1} - 2) C(n-1,k))
    tail = sum(comb(n, i) for i in range(k + 1, n + 1))
    return Fraction(tail, (2 ** (n + 1) - 2) * comb(n - 1, k))


def adjacent_hitting_probability(n: int, x: Vertex) -> Fraction:
    """Probability of reaching ``b = 0...01`` before ``a = 0...00`` from ``x``.

    Equal to ``1/2 -+ S`` on the ``x_n = 0`` / ``x_n = 1`` halves, where
    ``S`` depends only on the prefix weight of ``x``.
    """
    _check_dimension(n)
    _check_vertex(n, x)
    s = _offset(n, prefix_weight(x))
    return Fraction(1, 2) + s if x[n] else Fraction(1, 2) - s


def canonical_position(a: Vertex, b: Vertex, x: Vertex) -> Vertex:
    """Map ``x`` by the cube automorphism sending ``a -> 0...0`` and ``b -> 0...01``.

    The map XORs with ``a`` and then swaps the coordinate where ``a`` and
    ``b`` differ with coordinate ``n``.
    """
    if not a.n == b.n == x.n:
        raise ValueError(f"dimension mismatch: a, b, x have n = {a.n}, {b.n}, {x.n}")
    if a == b:
        raise ValueError("targets a and b must be distinct")
    if hamming_distance(a, b) != 1:
        raise ValueError(f"targets {a} and {b} are not adjacent")
    n = a.n
    j = (a.bits ^ b.bits).bit_length()  # 1-based index of the differing coordinate
    y = (x ^ a).bits
    if j != n:
        bj = (y >> (j - 1)) & 1
        bn = (y >> (n - 1)) & 1
        if bj != bn:
            y ^= (1 << (j - 1)) | (1 << (n - 1))
    return Vertex(n, y)


def adjacent_hitting_probability_general(a: Vertex, b: Vertex, x: Vertex) -> Fraction:
    """Probability of reaching ``b`` before ``a`` for any adjacent pair."""
    y = canonical_position(a, b, x)
    return adjacent_hitting_probability(y.n, y)


def antipodal_hitting_probability(n: int, x: Vertex) -> Fraction:
    """Probability of reaching ``1...1`` before ``0...0`` from ``x``.

    Depends on ``x`` only through its Hamming weight and is read off the
    solved antipodal level chain.
    """
    _check_dimension(n)
    _check_vertex(n, x)
    return _antipodal_levels(n)[x.weight]


@lru_cache(maxsize=None)
def _antipodal_levels(n: int) -> tuple[Fraction, ...]:
    return antipodal_profile(n).w


def u_sequence(n: int) -> USequence:
    """Closed-form ``u_0..u_{n-1}``; ``w_k = 1/2 - u_k``."""
    _check_dimension(n)
    return USequence(n, tuple(_offset(n, k) for k in range(n)))

"""Full-graph Dirichlet solver: the brute-force oracle.

Solves ``n p(x) = sum_{y ~ x} p(y)`` on every vertex other than the two
targets, with ``p(a) = 0`` and ``p(b) = 1``. This is simultaneously the
hitting probability of ``b`` before ``a`` and the voltage in the unit
resistor network with a 1 V battery across ``a``/``b``.

The exact solver eliminates in natural vertex order without pivot search
(the matrix is diagonally dominant). Small systems are eliminated directly
over the rationals. Larger ones are eliminated modulo several word-sized
primes, lifted by rational reconstruction, and accepted only once the
candidate satisfies every equation exactly, which by uniqueness certifies it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Mapping, Union

import numpy as np

from .cube import Vertex, all_vertices, neighbors

log = logging.getLogger(__name__)

EXACT_MAX_DIMENSION = 12
FLOAT_MAX_DIMENSION = 20
# systems up to this many unknowns go straight through Fraction elimination
FRACTION_MAX_UNKNOWNS = 30

Number = Union[Fraction, float]


class ConvergenceError(RuntimeError):
    """Iterative solver ran out of sweeps before meeting its tolerance."""


@dataclass(frozen=True)
class HittingProblem:
    a: Vertex
    b: Vertex

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise ValueError(f"dimension mismatch: a has n={self.a.n}, b has n={self.b.n}")
        if self.a == self.b:
            raise ValueError("targets a and b must be distinct")

    @property
    def n(self) -> int:
        return self.a.n

    @classmethod
    def adjacent(cls, n: int) -> "HittingProblem":
        return cls(Vertex.zeros(n), Vertex(n, 1 << (n - 1)))

    @classmethod
    def antipodal(cls, n: int) -> "HittingProblem":
        return cls(Vertex.zeros(n), Vertex.ones(n))

    def reversed(self) -> "HittingProblem":
        return HittingProblem(self.b, self.a)


@dataclass(frozen=True)
class HarmonicSolution:
    problem: HittingProblem
    values: Mapping[Vertex, Number]
    method: str
    sweeps: int | None = None
    residual: float | None = field(default=None, compare=False)

    def __getitem__(self, x: Vertex) -> Number:
        return self.values[x]

    def rows(self) -> list[tuple[Vertex, Number]]:
        return sorted(self.values.items())


def _check_problem(problem: HittingProblem, cap: int) -> None:
    if problem.n > cap:
        raise ValueError(f"dimension {problem.n} exceeds solver cap n <= {cap}")


def _interior(problem: HittingProblem) -> list[int]:
    a, b = problem.a.bits, problem.b.bits
    return [v for v in range(1 << problem.n) if v != a and v != b]


def boundary_value(problem: HittingProblem, x: Vertex) -> Fraction | None:
    if x == problem.a:
        return Fraction(0)
    if x == problem.b:
        return Fraction(1)
    return None


# ---------------------------------------------------------------------------
# exact route


def _build_rows(problem: HittingProblem) -> tuple[list[int], list[dict[int, int]], list[int]]:
    """Integer system over interior unknowns, one sparse row per vertex."""
    n = problem.n
    interior = _interior(problem)
    index = {v: i for i, v in enumerate(interior)}
    a, b = problem.a.bits, problem.b.bits
    rows, rhs = [], []
    for v in interior:
        row = {index[v]: n}
        r = 0
        for i in range(n):
            y = v ^ (1 << i)
            if y == b:
                r += 1
            elif y != a:
                row[index[y]] = -1
        rows.append(row)
        rhs.append(r)
    return interior, rows, rhs


def _solve_fraction(rows: list[dict[int, int]], rhs: list[int]) -> list[Fraction]:
    """Sparse Gaussian elimination over Q in natural order."""
    m = len(rows)
    A = [{j: Fraction(c) for j, c in row.items()} for row in rows]
    r = [Fraction(c) for c in rhs]
    for i in range(m):
        piv = A[i].get(i)
        if not piv:
            raise ArithmeticError(f"zero pivot at unknown {i}")
        for k in range(i + 1, m):
            f = A[k].get(i)
            if not f:
                continue
            f = f / piv
            rowk = A[k]
            for j, c in A[i].items():
                if j < i:
                    continue
                val = rowk.get(j, 0) - f * c
                if val:
                    rowk[j] = val
                else:
                    rowk.pop(j, None)
            r[k] -= f * r[i]
    x = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        s = r[i] - sum(c * x[j] for j, c in A[i].items() if j > i)
        x[i] = s / A[i][i]
    return x


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def _primes_below(start: int):
    p = start
    while True:
        p -= 1
        if _is_prime(p):
            yield p


_PRIME_LIMIT = 1 << 21
_PANEL = 64


def _solve_mod(dense: np.ndarray, rhs: np.ndarray, p: int, band: int) -> list[int]:
    """Banded LU modulo prime ``p`` without pivot search.

    Entries are kept as float64 integers in ``[0, p)``. With ``p < 2**21`` a
    product is below ``2**42`` and a panel-sized sum of products stays below
    ``2**53``, so the trailing updates can go through BLAS matmul exactly.
    """
    A = np.mod(dense.astype(np.float64), p)
    r = np.mod(np.asarray(rhs, dtype=np.float64), p)
    m = A.shape[0]
    for s in range(0, m, _PANEL):
        e = min(s + _PANEL, m)
        hi = min(m, e + band)
        for j in range(s, e):
            piv = int(A[j, j])
            if piv == 0:
                raise ZeroDivisionError(f"pivot vanishes modulo {p}")
            inv = pow(piv, -1, p)
            jhi = min(m, j + band + 1)
            # multipliers of column j, then update the rest of the panel
            A[j + 1:jhi, j] = np.mod(A[j + 1:jhi, j] * inv, p)
            if j + 1 < e:
                blk = A[j + 1:jhi, j + 1:e]
                blk -= np.mod(np.outer(A[j + 1:jhi, j], A[j, j + 1:e]), p)
                np.mod(blk, p, out=blk)
        if e >= hi:
            continue
        # U12 = L11^{-1} A12
        for j in range(s, e - 1):
            blk = A[j + 1:e, e:hi]
            blk -= np.mod(np.outer(A[j + 1:e, j], A[j, e:hi]), p)
            np.mod(blk, p, out=blk)
        # trailing update A22 -= L21 @ U12
        trail = A[e:hi, e:hi]
        trail -= np.mod(A[e:hi, s:e] @ A[s:e, e:hi], p)
        np.mod(trail, p, out=trail)
    for j in range(m):
        jhi = min(m, j + band + 1)
        r[j + 1:jhi] = np.mod(r[j + 1:jhi] - np.mod(A[j + 1:jhi, j] * r[j], p), p)
    x = np.zeros(m)
    for j in range(m - 1, -1, -1):
        x[j] = int(r[j]) * pow(int(A[j, j]), -1, p) % p
        lo = max(0, j - band)
        r[lo:j] = np.mod(r[lo:j] - np.mod(A[lo:j, j] * x[j], p), p)
    return [int(v) for v in x]


def _rational_reconstruct(r: int, m: int) -> Fraction | None:
    """Find a/b = r (mod m) with |a|, b <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, r % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _certify(rows: list[dict[int, int]], rhs: list[int], x: list[Fraction]) -> bool:
    d = lcm(*(v.denominator for v in x)) if x else 1
    xi = [v.numerator * (d // v.denominator) for v in x]
    for row, r in zip(rows, rhs):
        if sum(c * xi[j] for j, c in row.items()) != r * d:
            return False
    return True


def _solve_multimodular(rows: list[dict[int, int]], rhs: list[int], n: int) -> list[Fraction]:
    m = len(rows)
    dense = np.zeros((m, m), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, c in row.items():
            dense[i, j] = c
    band = max(abs(i - j) for i, row in enumerate(rows) for j in row)
    rvec = np.asarray(rhs, dtype=np.int64)
    modulus = 1
    residues = [0] * m
    for p in _primes_below(_PRIME_LIMIT):
        try:
            xp = _solve_mod(dense, rvec, p, band)
        except ZeroDivisionError:
            log.debug("skipping prime %d: vanishing pivot", p)
            continue
        # Chinese remaindering of the accumulated residues with the new prime
        inv = pow(modulus, -1, p)
        for i in range(m):
            t = (int(xp[i]) - residues[i]) * inv % p
            residues[i] += modulus * t
        modulus *= p
        cand = []
        for i in range(m):
            q = _rational_reconstruct(residues[i], modulus)
            if q is None:
                break
            cand.append(q)
        else:
            if _certify(rows, rhs, cand):
                log.debug("certified exact solution with modulus of %d bits", modulus.bit_length())
                return cand
    raise AssertionError("unreachable")


def solve_exact(problem: HittingProblem) -> HarmonicSolution:
    """Exact rational hitting probabilities on every vertex (``n <= 12``)."""
    _check_problem(problem, EXACT_MAX_DIMENSION)
    interior, rows, rhs = _build_rows(problem)
    if len(rows) <= FRACTION_MAX_UNKNOWNS:
        x = _solve_fraction(rows, rhs)
        method = "exact"
    else:
        x = _solve_multimodular(rows, rhs, problem.n)
        method = "exact"
    values: dict[Vertex, Number] = {problem.a: Fraction(0), problem.b: Fraction(1)}
    for v, val in zip(interior, x):
        values[Vertex(problem.n, v)] = val
    return HarmonicSolution(problem, dict(sorted(values.items())), method)


def solve_exact_fraction(problem: HittingProblem) -> HarmonicSolution:
    """Same as :func:`solve_exact` but always through plain Fraction elimination."""
    _check_problem(problem, EXACT_MAX_DIMENSION)
    interior, rows, rhs = _build_rows(problem)
    x = _solve_fraction(rows, rhs)
    values: dict[Vertex, Number] = {problem.a: Fraction(0), problem.b: Fraction(1)}
    for v, val in zip(interior, x):
        values[Vertex(problem.n, v)] = val
    return HarmonicSolution(problem, dict(sorted(values.items())), "exact")


def hitting_value(problem: HittingProblem, x: Vertex) -> Fraction:
    """Exact value at one vertex; targets short-circuit without a solve."""
    if x.n != problem.n:
        raise ValueError(f"dimension mismatch: vertex {x} has n={x.n}, expected {problem.n}")
    bv = boundary_value(problem, x)
    if bv is not None:
        return bv
    return solve_exact(problem)[x]


# ---------------------------------------------------------------------------
# float route


def solve_float(problem: HittingProblem, tolerance: float = 1e-12, max_sweeps: int = 1_000_000) -> HarmonicSolution:
    """Gauss-Seidel sweeps in numeric vertex order until the max residual <= tolerance."""
    _check_problem(problem, FLOAT_MAX_DIMENSION)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = problem.n
    size = 1 << n
    a, b = problem.a.bits, problem.b.bits
    p = [0.0] * size
    p[b] = 1.0
    interior = _interior(problem)
    nbrs = [[v ^ (1 << i) for i in range(n)] for v in range(size)]
    inv_n = 1.0 / n
    sweeps = 0
    residual = float("inf")
    while sweeps < max_sweeps:
        sweeps += 1
        for v in interior:
            s = 0.0
            for y in nbrs[v]:
                s += p[y]
            p[v] = s * inv_n
        residual = 0.0
        for v in interior:
            s = 0.0
            for y in nbrs[v]:
                s += p[y]
            d = abs(p[v] - s * inv_n)
            if d > residual:
                residual = d
        if residual <= tolerance:
            values = {Vertex(n, v): p[v] for v in range(size)}
            return HarmonicSolution(problem, values, "float", sweeps, residual)
    raise ConvergenceError(
        f"Gauss-Seidel did not reach tolerance {tolerance:g} within {max_sweeps} sweeps "
        f"(max residual {residual:.3g})"
    )


# ---------------------------------------------------------------------------


def effective_resistance(problem: HittingProblem) -> Fraction:
    """Resistance between ``a`` and ``b`` with a unit resistor on every edge.

    With ``v(a) = 0`` and ``v(b) = 1`` the current leaving ``b`` is
    ``sum_{y ~ b} (1 - v(y))`` and ``R = 1 / current``.
    """
    sol = solve_exact(problem)
    current = sum(1 - sol[y] for y in neighbors(problem.b))
    return 1 / Fraction(current)


def max_harmonic_residual(sol: HarmonicSolution) -> Number:
    """Largest ``|p(x) - mean_{y~x} p(y)|`` over non-target vertices."""
    worst: Number = 0
    n = sol.problem.n
    for x in all_vertices(n):
        if x == sol.problem.a or x == sol.problem.b:
            continue
        d = abs(sol[x] - sum(sol[y] for y in neighbors(x)) / n)
        worst = max(worst, d)
    return worst

"""Lumped level chains for the hypercube walk.

By symmetry the hitting probability is constant on level sets of the cube,
so the 2^n-vertex Dirichlet problem collapses to a tridiagonal system with
one unknown per level. Two chains are provided:

``adjacent``
    targets ``a = 0...00`` and ``b = 0...01``. Level ``k`` holds vertices with
    ``x_n = 0`` and prefix weight ``k``; the ``x_n = 1`` mirror level carries
    ``1 - w_k``.
``antipodal``
    targets ``a = 0...0`` and ``b = 1...1``. Level ``k`` is the Hamming
    weight.

The chain is solved directly by exact elimination. The substitution
machinery (``u``-sequence, backward recurrence, ``z``-sequence and the
induction identity) lives here as separate routes used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Literal, Sequence

ChainKind = Literal["adjacent", "antipodal"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ChainRow:
    """One level equation ``lower*w[k-1] + diag*w[k] + upper*w[k+1] = rhs``."""

    lower: Fraction
    diag: Fraction
    upper: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class ChainSystem:
    n: int
    kind: ChainKind
    rows: tuple[ChainRow, ...]

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LevelProfile:
    """Exact per-level values of a solved chain.

    For the adjacent kind ``w`` covers levels ``0..n-1`` (the ``x_n = 0``
    side); for the antipodal kind it covers levels ``0..n``.
    """

    n: int
    kind: ChainKind
    w: tuple[Fraction, ...]

    @property
    def companion(self) -> tuple[Fraction, ...]:
        """Values on the mirror levels (``x_n = 1``) of the adjacent chain."""
        if self.kind != "adjacent":
            raise ValueError("companion levels only exist for the adjacent chain")
        return tuple(1 - v for v in self.w)


@dataclass(frozen=True)
class USequence:
    """``u_k = 1/2 - w_k`` for ``k = 0..n-1``; ``u_n = 0`` is implicit."""

    n: int
    u: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.u)

    def __len__(self):
        return len(self.u)

    def __getitem__(self, k):
        return self.u[k]


def _check_dimension(n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")


def build_adjacent_chain(n: int) -> ChainSystem:
    """Kirchhoff balance on the levels of the adjacent-target problem.

    Row 0 pins ``w_0 = 0``. For ``k >= 1`` a vertex on level ``k`` has ``k``
    edges down, ``n-1-k`` edges up and one edge to its mirror, whose value is
    ``1 - w_k``; this gives ``(n+1) w_k = k w_{k-1} + (n-k-1) w_{k+1} + 1``,
    and at ``k = n-1`` the up-coefficient vanishes.
    """
    _check_dimension(n)
    rows = [ChainRow(Fraction(0), Fraction(1), Fraction(0), Fraction(0))]
    for k in range(1, n):
        rows.append(ChainRow(Fraction(-k), Fraction(n + 1), Fraction(-(n - k - 1)), Fraction(1)))
    return ChainSystem(n, "adjacent", tuple(rows))


def build_antipodal_chain(n: int) -> ChainSystem:
    """Level chain for targets ``0...0`` and ``1...1``.

    ``p_0 = 0``, ``p_n = 1`` and ``n p_k = k p_{k-1} + (n-k) p_{k+1}`` inside.
    """
    _check_dimension(n)
    rows = [ChainRow(Fraction(0), Fraction(1), Fraction(0), Fraction(0))]
    for k in range(1, n):
        rows.append(ChainRow(Fraction(-k), Fraction(n), Fraction(-(n - k)), Fraction(0)))
    rows.append(ChainRow(Fraction(0), Fraction(1), Fraction(0), Fraction(1)))
    return ChainSystem(n, "antipodal", tuple(rows))


def solve_chain(sys: ChainSystem) -> LevelProfile:
    """Exact forward elimination and back substitution on a tridiagonal chain."""
    rows = sys.rows
    m = len(rows)
    if m == 0:
        raise ValueError("empty chain system")
    if rows[0].lower != 0 or rows[-1].upper != 0:
        raise ValueError("chain system couples beyond its end levels")
    # modified upper coefficients and right-hand sides after elimination
    cp: list[Fraction] = []
    dp: list[Fraction] = []
    for k, row in enumerate(rows):
        if k == 0:
            pivot = row.diag
            rhs = row.rhs
        else:
            pivot = row.diag - row.lower * cp[k - 1]
            rhs = row.rhs - row.lower * dp[k - 1]
        if pivot == 0:
            raise ArithmeticError(f"singular chain system at level {k}")
        cp.append(row.upper / pivot)
        dp.append(rhs / pivot)
    w = [Fraction(0)] * m
    w[-1] = dp[-1]
    for k in range(m - 2, -1, -1):
        w[k] = dp[k] - cp[k] * w[k + 1]
    return LevelProfile(sys.n, sys.kind, tuple(w))


def adjacent_profile(n: int) -> LevelProfile:
    return solve_chain(build_adjacent_chain(n))


def antipodal_profile(n: int) -> LevelProfile:
    return solve_chain(build_antipodal_chain(n))


def u_transform(profile: LevelProfile) -> USequence:
    if profile.kind != "adjacent":
        raise ValueError(f"u-transform needs an adjacent-kind profile, got {profile.kind!r}")
    return USequence(profile.n, tuple(HALF - w for w in profile.w))


def backward_recurrence(n: int, c: Fraction) -> USequence:
    """Run ``u_{k-1} = ((n+1) u_k - (n-k-1) u_{k+1}) / k`` down from ``u_{n-1} = c``.

    ``u_n`` is taken as 0; its coefficient is zero anyway. The result is
    only a proper u-sequence when ``c = 1/(2^{n+1} - 2)``.
    """
    _check_dimension(n)
    c = Fraction(c)
    u = [Fraction(0)] * (n + 1)
    u[n - 1] = c
    for k in range(n - 1, 0, -1):
        u[k - 1] = ((n + 1) * u[k] - (n - k - 1) * u[k + 1]) / k
    return USequence(n, tuple(u[:n]))


def induction_identity_residuals(u: USequence | Sequence[Fraction]) -> list[Fraction]:
    """``i u_{i-1} - n u_{n-1} - (n-i) u_i`` for ``i = 1..n`` with ``u_n = 0``."""
    vals = list(u)
    n = len(vals)
    ext = vals + [Fraction(0)]
    return [i * ext[i - 1] - n * ext[n - 1] - (n - i) * ext[i] for i in range(1, n + 1)]


def z_sequence(n: int) -> list[Fraction]:
    """``z_0..z_{n-2}`` from ``z_{n-j-1} = c j! sum_{l=0}^{j} C(n, j-l)``.

    Here ``c = 1/(2^{n+1} - 2)`` and ``z_i = (i+1)(i+2)...(n-1) u_i``.
    """
    if n < 2:
        raise ValueError(f"z-sequence needs n >= 2, got {n}")
    c = Fraction(1, 2 ** (n + 1) - 2)
    z = [Fraction(0)] * (n - 1)
    for j in range(1, n):
        z[n - j - 1] = c * factorial(j) * sum(comb(n, j - l) for l in range(j + 1))
    return z


def z_to_u(n: int, z: Sequence[Fraction]) -> list[Fraction]:
    """Undo the z-substitution: ``u_i = z_i / ((i+1)...(n-1))``."""
    out = []
    for i, zi in enumerate(z):
        prod = 1
        for m in range(i + 1, n):
            prod *= m
        out.append(Fraction(zi) / prod)
    return out

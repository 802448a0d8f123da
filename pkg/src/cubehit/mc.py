"""Monte Carlo walkers and the time-N occupation distribution.

Random streams are counter-based. Trials are grouped into fixed blocks of
``STREAM_BLOCK`` consecutive indices; block ``t // STREAM_BLOCK`` owns a
Philox generator keyed by ``SeedSequence(seed, spawn_key=(block,))`` and
trial ``t`` always reads column ``t % STREAM_BLOCK`` of that block's draws.
Every block draws full-width chunks regardless of how many of its trials are
still running, so the walk of trial ``t`` is a function of ``(seed, t)``
alone: results do not depend on the total trial count, on block order, or on
which blocks run in parallel.

Two occupation variants are exposed:

``simple``
    the walk itself, moving to each neighbour with probability 1/n.
``as-printed``
    the lazy walk that holds with probability 1/(n+1) and moves to each
    neighbour with probability 1/(n+1); its spectrum is ``1 - 2j/(n+1)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Literal

import numpy as np

from .cube import Vertex
from .network import HittingProblem

Variant = Literal["as-printed", "simple"]
VARIANTS: tuple[str, ...] = ("as-printed", "simple")

STREAM_BLOCK = 1024
STEP_CHUNK = 64
MATRIX_MAX_DIMENSION = 30
MATRIX_MAX_TIME = 10_000


class StepCapExceeded(RuntimeError):
    """A walk ran past its runaway guard without being absorbed."""


@dataclass(frozen=True)
class MCEstimate:
    trials: int
    hits_b: int
    p_hat: float
    std_err: float
    seed: int
    max_steps_hit: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class OccupationDistribution:
    """Per-vertex probability of sitting at a weight-``k`` vertex after ``N`` steps.

    ``probs[k]`` refers to one specific vertex of weight ``k``; multiply by
    ``C(n, k)`` for the level mass.
    """

    n: int
    N: int
    variant: str
    probs: tuple
    source: str
    trials: int | None = None
    seed: int | None = None

    @property
    def level_mass(self) -> tuple:
        return tuple(comb(self.n, k) * p for k, p in enumerate(self.probs))

    def total_mass(self):
        return sum(self.level_mass)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")


def _block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def step_cap(n: int) -> int:
    return (1 << n) * 10**6


# ---------------------------------------------------------------------------
# hitting


def _hitting_block(problem: HittingProblem, x: Vertex, seed: int, block: int, size: int):
    n = problem.n
    a = np.uint64(problem.a.bits)
    b = np.uint64(problem.b.bits)
    gen = _block_generator(seed, block)
    pos = np.full(STREAM_BLOCK, x.bits, dtype=np.uint64)
    done = np.zeros(STREAM_BLOCK, dtype=bool)
    done[size:] = True  # unused columns are still drawn, never recorded
    hit_b = np.zeros(STREAM_BLOCK, dtype=bool)
    steps = np.zeros(STREAM_BLOCK, dtype=np.int64)
    cap = step_cap(n)
    taken = 0
    one = np.uint64(1)
    while not done.all():
        if taken >= cap:
            raise StepCapExceeded(
                f"walk from {x} not absorbed after {cap} steps (block {block}, seed {seed})"
            )
        draws = gen.integers(0, n, size=(STEP_CHUNK, STREAM_BLOCK), dtype=np.uint64)
        path = np.bitwise_xor.accumulate(one << draws, axis=0) ^ pos
        absorbed = (path == a) | (path == b)
        live = ~done
        first = np.argmax(absorbed, axis=0)
        newly = live & absorbed.any(axis=0)
        cols = np.nonzero(newly)[0]
        hit_b[cols] = path[first[cols], cols] == b
        steps[cols] = taken + first[cols] + 1
        done |= newly
        pos = np.where(done, pos, path[-1])
        taken += STEP_CHUNK
    return int(hit_b[:size].sum()), int(steps[:size].max(initial=0))


def simulate_hitting(problem: HittingProblem, x: Vertex, trials: int, seed: int) -> MCEstimate:
    """Estimate the probability of reaching ``b`` before ``a`` from ``x``."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if x.n != problem.n:
        raise ValueError(f"dimension mismatch: vertex {x} has n={x.n}, expected {problem.n}")
    if x == problem.a or x == problem.b:
        hits = trials if x == problem.b else 0
        max_steps = 0
    else:
        hits = 0
        max_steps = 0
        for block, start in enumerate(range(0, trials, STREAM_BLOCK)):
            size = min(STREAM_BLOCK, trials - start)
            h, m = _hitting_block(problem, x, seed, block, size)
            hits += h
            max_steps = max(max_steps, m)
    p_hat = hits / trials
    return MCEstimate(trials, hits, p_hat, sqrt(p_hat * (1 - p_hat) / trials), seed, max_steps)


# ---------------------------------------------------------------------------
# occupation


def krawtchouk(n: int, k: int, j: int) -> int:
    """``sum_i (-1)^i C(k,i) C(n-k, j-i)``."""
    return sum((-1) ** i * comb(k, i) * comb(n - k, j - i) for i in range(min(k, j) + 1))


def _eigenvalue(n: int, j: int, variant: str) -> Fraction:
    denom = n + 1 if variant == "as-printed" else n
    return 1 - Fraction(2 * j, denom)


def occupation_formula(n: int, N: int, k: int, variant: Variant = "as-printed", exact: bool = False):
    """Spectral formula for the chance of being at a given weight-``k`` vertex at time ``N``.

    ``2^-n sum_{j=0}^{n} lambda_j^N K_j(k)`` with ``lambda_j = 1 - 2j/(n+1)``
    for ``as-printed`` and ``1 - 2j/n`` for ``simple``. The Krawtchouk sum is
    always exact; with ``exact=True`` the powers are too and a Fraction is
    returned.
    """
    _check_variant(variant)
    if not 0 <= k <= n:
        raise ValueError(f"level k must satisfy 0 <= k <= n, got k={k}, n={n}")
    if N < 0:
        raise ValueError(f"time N must be >= 0, got {N}")
    if exact:
        total = sum(_eigenvalue(n, j, variant) ** N * krawtchouk(n, k, j) for j in range(n + 1))
        return total / 2**n
    total = 0.0
    for j in range(n + 1):
        total += float(_eigenvalue(n, j, variant)) ** N * krawtchouk(n, k, j)
    return total / 2**n


def occupation_formula_distribution(n: int, N: int, variant: Variant = "as-printed", exact: bool = False) -> OccupationDistribution:
    probs = tuple(occupation_formula(n, N, k, variant, exact) for k in range(n + 1))
    return OccupationDistribution(n, N, variant, probs, "formula")


def occupation_matrix_power(n: int, N: int, variant: Variant = "as-printed") -> OccupationDistribution:
    """Exact level distribution by stepping the lumped (n+1)-level chain ``N`` times.

    Works with integer walk counts over the common denominator ``n^N``
    (simple) or ``(n+1)^N`` (as-printed), so no rational reduction happens
    inside the loop.
    """
    _check_variant(variant)
    if not 1 <= n <= MATRIX_MAX_DIMENSION:
        raise ValueError(f"matrix-power oracle needs 1 <= n <= {MATRIX_MAX_DIMENSION}, got {n}")
    if not 0 <= N <= MATRIX_MAX_TIME:
        raise ValueError(f"matrix-power oracle needs 0 <= N <= {MATRIX_MAX_TIME}, got {N}")
    lazy = variant == "as-printed"
    counts = [1] + [0] * n
    for _ in range(N):
        nxt = [0] * (n + 1)
        for k, c in enumerate(counts):
            if not c:
                continue
            if lazy:
                nxt[k] += c
            if k > 0:
                nxt[k - 1] += c * k
            if k < n:
                nxt[k + 1] += c * (n - k)
        counts = nxt
    denom = (n + 1 if lazy else n) ** N
    probs = tuple(Fraction(c, denom * comb(n, k)) for k, c in enumerate(counts))
    return OccupationDistribution(n, N, variant, probs, "matrix")


def _popcount(v: np.ndarray) -> np.ndarray:
    return np.bitwise_count(v).astype(np.int64)


def empirical_occupation(n: int, N: int, variant: Variant, trials: int, seed: int) -> OccupationDistribution:
    """Histogram of final Hamming weights over ``trials`` walks of exactly ``N`` steps."""
    _check_variant(variant)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if N < 0:
        raise ValueError(f"time N must be >= 0, got {N}")
    lazy = variant == "as-printed"
    hist = np.zeros(n + 1, dtype=np.int64)
    one = np.uint64(1)
    for block, start in enumerate(range(0, trials, STREAM_BLOCK)):
        size = min(STREAM_BLOCK, trials - start)
        gen = _block_generator(seed, block)
        pos = np.zeros(STREAM_BLOCK, dtype=np.uint64)
        for t0 in range(0, N, STEP_CHUNK):
            rows = min(STEP_CHUNK, N - t0)
            draws = gen.integers(0, n + 1 if lazy else n, size=(rows, STREAM_BLOCK), dtype=np.uint64)
            # draw == n is the lazy hold
            masks = np.where(draws < n, one << np.minimum(draws, np.uint64(n - 1)), np.uint64(0))
            pos ^= np.bitwise_xor.reduce(masks, axis=0)
        hist += np.bincount(_popcount(pos[:size]), minlength=n + 1)
    probs = tuple(float(hist[k]) / trials / comb(n, k) for k in range(n + 1))
    return OccupationDistribution(n, N, variant, probs, "empirical", trials, seed)

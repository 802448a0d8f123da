"""Vertices of the n-dimensional hypercube {0,1}^n.

Coordinate ``x_i`` (1-based) is stored in bit ``i - 1`` of an integer word.
The textual form puts ``x_1`` leftmost, so ``"0001"`` is the vertex with only
``x_4`` set, i.e. the word ``0b1000``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_DIMENSION = 64


@dataclass(frozen=True, order=True)
class Vertex:
    """A point of {0,1}^n.

    Equality and hashing cover both ``n`` and the coordinates, so vertices of
    different dimension never compare equal. Ordering is by ``(n, bits)``,
    which within one dimension is the numeric order of the bit word.
    """

    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must satisfy 1 <= n <= {MAX_DIMENSION}, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit word {self.bits} does not fit in {self.n} coordinates")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Vertex":
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError(f"coordinate x_{i + 1} must be 0 or 1, got {c!r}")
            bits |= c << i
        return cls(len(coords), bits)

    @classmethod
    def zeros(cls, n: int) -> "Vertex":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "Vertex":
        return cls(n, (1 << n) - 1)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def __getitem__(self, i: int) -> int:
        """Coordinate ``x_i`` with 1-based ``i``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate index {i} outside 1..{self.n}")
        return (self.bits >> (i - 1)) & 1

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def flip(self, i: int) -> "Vertex":
        """Return the vertex with coordinate ``x_i`` (1-based) flipped."""
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate index {i} outside 1..{self.n}")
        return Vertex(self.n, self.bits ^ (1 << (i - 1)))

    def complement(self) -> "Vertex":
        return Vertex(self.n, self.bits ^ ((1 << self.n) - 1))

    def __xor__(self, other: "Vertex") -> "Vertex":
        _check_same_dimension(self, other)
        return Vertex(self.n, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Vertex('{self}')"


def _check_same_dimension(x: Vertex, y: Vertex) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} != {y.n}")


def parse_vertex(s: str, n: int) -> Vertex:
    """Parse an ``n``-character bit string (``x_1`` leftmost) into a Vertex."""
    if len(s) != n:
        raise ValueError(f"length mismatch: {s!r} has {len(s)} characters, expected {n}")
    bad = [ch for ch in s if ch not in "01"]
    if bad:
        raise ValueError(f"non-binary character {bad[0]!r} in {s!r}")
    return Vertex.from_coords([int(ch) for ch in s])


def hamming_distance(x: Vertex, y: Vertex) -> int:
    _check_same_dimension(x, y)
    return bin(x.bits ^ y.bits).count("1")


def neighbors(x: Vertex) -> list[Vertex]:
    """All n neighbours of ``x``, ordered by flipped coordinate 1..n."""
    return [Vertex(x.n, x.bits ^ (1 << i)) for i in range(x.n)]


def prefix_weight(x: Vertex) -> int:
    """``x_1 + ... + x_{n-1}``; zero when n = 1."""
    return bin(x.bits & ((1 << (x.n - 1)) - 1)).count("1")


def all_vertices(n: int) -> Iterator[Vertex]:
    """Every vertex of the n-cube in numeric order."""
    for bits in range(1 << n):
        yield Vertex(n, bits)

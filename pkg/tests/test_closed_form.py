import itertools
from fractions import Fraction

import pytest

from cubehit.closed_form import (
    adjacent_hitting_probability,
    adjacent_hitting_probability_general,
    antipodal_hitting_probability,
    canonical_position,
    u_sequence,
)
from cubehit.cube import Vertex, all_vertices, hamming_distance, parse_vertex

ADJACENT_CASES = [
    (2, "10", Fraction(1, 3)),
    (3, "110", Fraction(3, 7)),
    (3, "101", Fraction(9, 14)),
    (4, "1110", Fraction(7, 15)),
]


@pytest.mark.parametrize("n, x, expected", ADJACENT_CASES)
def test_adjacent_examples(n, x, expected, sympy_oracle):
    v = parse_vertex(x, n)
    oracle = sympy_oracle(n, 0, 1 << (n - 1))
    assert oracle[v.bits] == expected
    assert adjacent_hitting_probability(n, v) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 7, 30, 64])
def test_adjacent_boundary(n):
    assert adjacent_hitting_probability(n, Vertex.zeros(n)) == 0
    assert adjacent_hitting_probability(n, Vertex(n, 1 << (n - 1))) == 1


def test_adjacent_errors():
    with pytest.raises(ValueError, match="dimension mismatch"):
        adjacent_hitting_probability(3, Vertex(4, 0))
    with pytest.raises(ValueError, match="dimension"):
        adjacent_hitting_probability(65, Vertex(3, 0))


def test_result_in_lowest_terms():
    p = adjacent_hitting_probability(3, parse_vertex("101", 3))
    assert (p.numerator, p.denominator) == (9, 14)


def test_general_examples(sympy_oracle):
    a, b, x = (parse_vertex(s, 2) for s in ("11", "10", "01"))
    oracle = sympy_oracle(2, a.bits, b.bits)
    assert oracle[x.bits] == Fraction(1, 3)
    assert adjacent_hitting_probability_general(a, b, x) == Fraction(1, 3)
    assert adjacent_hitting_probability_general(a, b, a) == 0
    assert adjacent_hitting_probability_general(a, b, b) == 1


def test_general_errors():
    a = parse_vertex("000", 3)
    with pytest.raises(ValueError, match="distinct"):
        adjacent_hitting_probability_general(a, a, a)
    with pytest.raises(ValueError, match="not adjacent"):
        adjacent_hitting_probability_general(a, parse_vertex("011", 3), a)
    with pytest.raises(ValueError, match="dimension"):
        adjacent_hitting_probability_general(a, parse_vertex("001", 3), Vertex(2, 0))


def test_canonical_position_maps_targets():
    a, b = parse_vertex("1011", 4), parse_vertex("1111", 4)
    assert canonical_position(a, b, a) == Vertex.zeros(4)
    assert str(canonical_position(a, b, b)) == "0001"


@pytest.mark.parametrize("n", [3, 4])
def test_general_matches_oracle_every_adjacent_pair(n, sympy_oracle):
    for a in all_vertices(n):
        for i in range(1, n + 1):
            b = a.flip(i)
            oracle = sympy_oracle(n, a.bits, b.bits)
            for x in all_vertices(n):
                assert adjacent_hitting_probability_general(a, b, x) == oracle[x.bits]


@pytest.mark.parametrize("n", range(1, 6))
def test_general_invariant_under_coordinate_permutation(n):
    def permute(v, perm):
        return Vertex.from_coords([v.coords[perm[i]] for i in range(n)])

    pairs = [(a, a.flip(i)) for a in all_vertices(n) for i in range(1, n + 1)]
    xs = list(all_vertices(n))
    for perm in itertools.permutations(range(n)):
        for a, b in pairs:
            pa, pb = permute(a, perm), permute(b, perm)
            for x in xs:
                assert adjacent_hitting_probability_general(pa, pb, permute(x, perm)) == \
                    adjacent_hitting_probability_general(a, b, x)


@pytest.mark.parametrize("n", range(1, 13))
def test_mirror_symmetry_vertices(n):
    for x in all_vertices(n):
        assert adjacent_hitting_probability(n, x.flip(n)) == 1 - adjacent_hitting_probability(n, x)


@pytest.mark.parametrize("n", range(1, 21))
def test_half_bound(n):
    for k in range(n):
        x0 = Vertex(n, (1 << k) - 1)
        x1 = x0.flip(n)
        assert adjacent_hitting_probability(n, x0) <= Fraction(1, 2) <= adjacent_hitting_probability(n, x1)


def test_antipodal_examples(sympy_oracle):
    oracle = sympy_oracle(3, 0, 7)
    for s, expected in [("100", Fraction(2, 5)), ("110", Fraction(3, 5))]:
        x = parse_vertex(s, 3)
        assert oracle[x.bits] == expected
        assert antipodal_hitting_probability(3, x) == expected
    assert antipodal_hitting_probability(3, parse_vertex("110", 3)) == \
        1 - antipodal_hitting_probability(3, parse_vertex("001", 3))
    for n in (1, 5, 64):
        assert antipodal_hitting_probability(n, Vertex.zeros(n)) == 0
        assert antipodal_hitting_probability(n, Vertex.ones(n)) == 1


@pytest.mark.parametrize("n", range(1, 13))
def test_antipodal_complement(n):
    for x in all_vertices(n):
        assert antipodal_hitting_probability(n, x) + antipodal_hitting_probability(n, x.complement()) == 1


def test_antipodal_depends_on_weight_only():
    n = 6
    by_weight = {}
    for x in all_vertices(n):
        by_weight.setdefault(x.weight, set()).add(antipodal_hitting_probability(n, x))
    assert all(len(s) == 1 for s in by_weight.values())


def test_u_sequence_examples():
    assert u_sequence(3).u == (Fraction(1, 2), Fraction(1, 7), Fraction(1, 14))
    for n in range(1, 65):
        u = u_sequence(n)
        assert u[0] == Fraction(1, 2)
        assert u[n - 1] == Fraction(1, 2 ** (n + 1) - 2)


@pytest.mark.parametrize("n", range(1, 31))
def test_u_positive_and_decreasing(n):
    u = u_sequence(n).u
    assert all(v >= 0 for v in u)
    assert all(u[k] > u[k + 1] for k in range(n - 1))


def test_adjacent_matches_u_sequence():
    n = 9
    u = u_sequence(n)
    for x in all_vertices(n):
        k = bin(x.bits & ((1 << (n - 1)) - 1)).count("1")
        expected = Fraction(1, 2) + u[k] if x[n] else Fraction(1, 2) - u[k]
        assert adjacent_hitting_probability(n, x) == expected


def test_figure_vertex_distance():
    a, b, x = (parse_vertex(s, 4) for s in ("0000", "0001", "1110"))
    assert hamming_distance(a, x) == 3 and hamming_distance(b, x) == 4

from fractions import Fraction
from math import factorial

import pytest

from cubehit.chain import (
    ChainRow,
    ChainSystem,
    LevelProfile,
    adjacent_profile,
    antipodal_profile,
    backward_recurrence,
    build_adjacent_chain,
    build_antipodal_chain,
    induction_identity_residuals,
    solve_chain,
    u_transform,
    z_sequence,
    z_to_u,
)
from cubehit.closed_form import u_sequence
from cubehit.cube import Vertex, all_vertices, neighbors, prefix_weight

F = Fraction


def _c(n):
    return F(1, 2 ** (n + 1) - 2)


def test_adjacent_chain_rows():
    assert build_adjacent_chain(1).rows == (ChainRow(0, 1, 0, 0),)
    rows = build_adjacent_chain(2).rows
    assert rows[1] == ChainRow(-1, 3, 0, 1)  # 3 w_1 = w_0 + 1
    assert build_adjacent_chain(4).rows[1] == ChainRow(-1, 5, -2, 1)  # 5 w_1 = w_0 + 2 w_2 + 1
    top = build_adjacent_chain(6).rows[-1]
    assert (top.lower, top.diag, top.upper, top.rhs) == (-5, 7, 0, 1)


def test_antipodal_chain_rows():
    assert build_antipodal_chain(1).rows == (ChainRow(0, 1, 0, 0), ChainRow(0, 1, 0, 1))
    assert build_antipodal_chain(3).rows[1] == ChainRow(-1, 3, -2, 0)  # 3 p_1 = p_0 + 2 p_2


def test_chain_rejects_bad_dimension():
    with pytest.raises(ValueError):
        build_adjacent_chain(0)
    with pytest.raises(ValueError):
        build_antipodal_chain(0)


def test_solve_chain_examples():
    assert adjacent_profile(2).w == (0, F(1, 3))
    assert adjacent_profile(3).w == (0, F(5, 14), F(3, 7))
    assert antipodal_profile(3).w == (0, F(2, 5), F(3, 5), 1)
    assert adjacent_profile(1).w == (0,)


def test_solve_chain_singular():
    sys = ChainSystem(2, "adjacent", (ChainRow(0, 1, 0, 0), ChainRow(0, 0, 0, 1)))
    with pytest.raises(ArithmeticError, match="singular"):
        solve_chain(sys)


def test_u_transform():
    assert u_transform(adjacent_profile(3)).u == (F(1, 2), F(1, 7), F(1, 14))
    with pytest.raises(ValueError, match="adjacent"):
        u_transform(antipodal_profile(3))


def test_companion_levels():
    p = adjacent_profile(3)
    assert p.companion == (1, F(9, 14), F(4, 7))
    with pytest.raises(ValueError):
        antipodal_profile(3).companion


def test_backward_recurrence_examples():
    assert backward_recurrence(3, F(1, 14)).u == (F(1, 2), F(1, 7), F(1, 14))
    for n in range(3, 12):
        c = F(1, 1000 + n)
        u = backward_recurrence(n, c)
        assert u[n - 2] == F(n + 1, n - 1) * c
        if n >= 4:
            assert u[n - 3] == F(n * n + n + 2, (n - 1) * (n - 2)) * c


@pytest.mark.parametrize("n", range(5, 31))
def test_fourth_back_step_display(n):
    # the printed u_{n-4} coefficient (n^3+5n+6)/((n-1)(n-2)(n-3)) agrees with the recurrence
    u = backward_recurrence(n, F(1))
    assert u[n - 4] == F(n**3 + 5 * n + 6, (n - 1) * (n - 2) * (n - 3))


def test_induction_residual_examples():
    assert induction_identity_residuals(u_sequence(3)) == [0, 0, 0]
    assert induction_identity_residuals(u_sequence(10)) == [0] * 10
    # a perturbed sequence must be caught
    u = list(u_sequence(6))
    u[2] += F(1, 10**6)
    assert any(induction_identity_residuals(u))


@pytest.mark.parametrize("n", range(1, 31))
def test_three_routes_agree(n):
    closed = u_sequence(n).u
    chained = u_transform(adjacent_profile(n)).u
    backward = backward_recurrence(n, _c(n)).u
    assert closed == chained == backward
    assert backward[0] == F(1, 2)
    for u in (closed, chained, backward):
        assert all(r == 0 for r in induction_identity_residuals(u))


def test_z_sequence_examples():
    assert z_sequence(3) == [1, F(2, 7)]
    for n in range(2, 31):
        z = z_sequence(n)
        assert z[0] == F(factorial(n - 1), 2)
        assert z[n - 2] == (n + 1) * _c(n)
        assert z_to_u(n, z) == list(u_sequence(n).u[: n - 1])
    with pytest.raises(ValueError):
        z_sequence(1)


@pytest.mark.parametrize("n", range(1, 31))
def test_profile_invariants(n):
    w = adjacent_profile(n).w
    assert w[0] == 0 and all(0 <= v <= F(1, 2) for v in w)
    p = antipodal_profile(n).w
    assert p[0] == 0 and p[n] == 1
    assert all(p[k] < p[k + 1] for k in range(n))
    assert all(p[k] + p[n - k] == 1 for k in range(n + 1))


@pytest.mark.parametrize("n", range(1, 11))
def test_lumped_solutions_are_harmonic_on_the_cube(n):
    adj = adjacent_profile(n)
    anti = antipodal_profile(n).w

    def adj_value(x):
        k = prefix_weight(x)
        return adj.companion[k] if x[n] else adj.w[k]

    b_adj = Vertex(n, 1 << (n - 1))
    for x in all_vertices(n):
        if x not in (Vertex.zeros(n), b_adj):
            assert n * adj_value(x) == sum(adj_value(y) for y in neighbors(x))
        if x not in (Vertex.zeros(n), Vertex.ones(n)):
            assert n * anti[x.weight] == sum(anti[y.weight] for y in neighbors(x))


def test_level_profile_is_value_object():
    assert LevelProfile(2, "adjacent", (0, F(1, 3))) == adjacent_profile(2)

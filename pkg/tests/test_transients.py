import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from troptransient.bounds import wielandt
from troptransient.core import TropMatrix
from troptransient.errors import HorizonError
from troptransient.generate import random_irreducible
from troptransient.schemes import SchemeChoice, b_nachtigall, weak_expansion
from troptransient.transients import TransientEngine, measure_T, measure_T1, measure_T2

N = "-inf"

# cycle 0 -> 1 -> 2 -> 0 plus the arc 2 -> 1, all weights zero
WIELANDT3 = TropMatrix.of([[N, 0, N], [N, N, 0], [0, 0, N]])


def test_two_cycle_and_scalar():
    r = measure_T(TropMatrix.of([[N, 1], [-1, N]]))
    assert (r.value, r.sigma) == (0, 2)
    r = measure_T(TropMatrix.of([[5]]))
    assert (r.value, r.sigma) == (0, 1)


def test_wielandt_three():
    assert measure_T(WIELANDT3).value == 5 == wielandt(3)
    assert O.transient(O.grid(WIELANDT3)) == (5, 1)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_wielandt_family_attains_bound(d):
    grid = [[N] * d for _ in range(d)]
    for i in range(d - 1):
        grid[i][i + 1] = 0
    grid[d - 1][0] = 0
    grid[d - 1][1] = 0
    assert measure_T(TropMatrix.of(grid)).value == wielandt(d)


def test_single_critical_node_example():
    a = TropMatrix.of([[0, -1], [0, -1]])
    exp = b_nachtigall(a)
    assert measure_T1(a, exp).value == 1
    assert measure_T2(a, exp).value == 1
    assert measure_T(a).value == 1


def test_empty_b_gives_zero_t2():
    a = TropMatrix.of([[N, 0, N], [N, N, 0], [0, N, N]])
    exp = b_nachtigall(a)
    assert measure_T2(a, exp).value == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 10**6))
def test_transients_match_brute_force(d, gamma, seed):
    a = random_irreducible(d, seed=seed, gamma=min(gamma, d), denominators=(1, 2))
    g = O.grid(a)
    eng = TransientEngine(a)
    t_a = eng.T().value
    assert t_a == O.transient(g)[0]
    for scheme in SchemeChoice:
        exp = weak_expansion(a, scheme, eng.prof)
        t1, t2 = eng.T1(exp).value, eng.T2(exp).value
        assert (t1, t2) == O.weak_transients(g, O.grid(exp.b))
        assert t_a == max(t1, t2)


def test_horizon_exhaustion():
    with pytest.raises(HorizonError):
        TransientEngine(WIELANDT3, horizon=1).T()


def test_subordinate_check():
    a = TropMatrix.of([[0, -1], [0, -1]])
    bad = weak_expansion(TropMatrix.of([[0, -1], [0, -2]]), SchemeChoice.NACHTIGALL)
    with pytest.raises(ValueError):
        measure_T1(a, bad)

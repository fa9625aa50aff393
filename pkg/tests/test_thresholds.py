import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from troptransient.core import TropMatrix, scalar_mul
from troptransient.errors import DomainError, NoClosedWalkError
from troptransient.generate import random_irreducible
from troptransient.graph import Subgraph, cycle_arcs, profile
from troptransient.thresholds import (
    ThresholdQuery,
    exploration_penalty,
    first_lengths,
    heaviest_first_lengths,
    query_shape,
    tcr_reports,
    walk_existence_threshold,
    walk_reduction_threshold,
)

N = "-inf"


def _loop_counterexample():
    # nodes k=0, i=1, a=2, b=3, c=4
    grid = [[N] * 5 for _ in range(5)]
    grid[0][0] = 0
    for u, v in [(1, 2), (2, 3), (3, 4), (4, 0)]:
        grid[u][v] = -1
    for x in range(1, 5):
        grid[0][x] = -100
        if grid[x][0] == N:
            grid[x][0] = -100
    return TropMatrix.of(grid)


def test_existence_can_be_shorter_than_reduction():
    a = _loop_counterexample()
    q = ThresholdQuery(a, Subgraph.of([0], [(0, 0)]), 1)
    assert profile(a).lam == 0
    assert walk_existence_threshold(q) == 2
    assert walk_reduction_threshold(q) == 5


def test_two_cycle_existence():
    a = TropMatrix.of([[N, 0], [0, N]])
    q = ThresholdQuery(a, Subgraph.of([0, 1], [(0, 1), (1, 0)]), 2)
    assert walk_existence_threshold(q) == 1


def test_zero_weights_make_thresholds_equal():
    for seed in range(15):
        a = random_irreducible(5, seed=seed, weights=(0, 0))
        prof = profile(a)
        q = ThresholdQuery(a, prof.critical, prof.critical_cyclicity)
        assert walk_reduction_threshold(q) == walk_existence_threshold(q)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 10**6))
def test_first_lengths_vs_brute_force(d, sigma, seed):
    a = random_irreducible(d, seed=seed)
    nodes = {0, d - 1}
    q = ThresholdQuery(a, Subgraph.of(nodes, []), sigma)
    ours = first_lengths(q)
    brute = O.first_walk_lengths(O.grid(a), nodes, sigma, 2 * d * sigma + sigma)
    assert ours == brute


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10**6))
def test_reduction_threshold_vs_brute_force(d, seed):
    a = random_irreducible(d, seed=seed)
    prof = profile(a)
    norm = scalar_mul(-prof.lam, a)
    sigma = prof.critical_cyclicity
    q = ThresholdQuery(norm, prof.critical, sigma)
    found = heaviest_first_lengths(q)
    # brute force: walks through critical nodes, by length
    vals = O.walk_values(O.grid(a), 2 * d * sigma + sigma)
    for (i, j, r), t in found.items():
        best = max(vals[L][i][j] for L in range(r, len(vals), sigma) if vals[L][i][j] is not None)
        first = min(L for L in range(r, len(vals), sigma) if vals[L][i][j] == best)
        assert t == first


def test_reduction_needs_nonpositive_lambda():
    a = TropMatrix.of([[1]])
    with pytest.raises(DomainError):
        walk_reduction_threshold(ThresholdQuery(a, Subgraph.of([0], [(0, 0)]), 1))


def test_query_validation():
    a = TropMatrix.of([[N, 0], [0, N]])
    with pytest.raises(DomainError):
        ThresholdQuery(a, Subgraph.of([0], [(0, 0)]), 1)
    with pytest.raises(DomainError):
        ThresholdQuery(a, Subgraph.of([], []), 1)
    with pytest.raises(DomainError):
        ThresholdQuery(a, Subgraph.of([0], []), 0)


def test_exploration_penalty_examples():
    cyc = Subgraph.of([0, 1, 2], cycle_arcs([0, 1, 2]))
    assert exploration_penalty(cyc, 3, 0) == 0
    loop = Subgraph.of([0], [(0, 0)])
    assert exploration_penalty(loop, 1, 0) == 0
    # cycles of lengths 2 and 3 through node 0: only length 1 is missing
    g = Subgraph.of([0, 1, 2, 3], [(0, 1), (1, 0), (0, 2), (2, 3), (3, 0)])
    assert exploration_penalty(g, 1, 0) == 2
    with pytest.raises(DomainError):
        exploration_penalty(cyc, 1, 0)
    with pytest.raises(NoClosedWalkError):
        exploration_penalty(Subgraph.of([0, 1], [(0, 1)]), 1, 0)


def test_shapes_and_reports():
    d = 4
    grid = [[N] * d for _ in range(d)]
    for i in range(d):
        grid[i][(i + 1) % d] = 0
    grid[3][1] = -1
    a = TropMatrix.of(grid)
    ham = ThresholdQuery(a, Subgraph.of(range(4), cycle_arcs([0, 1, 2, 3])), 4)
    shape = query_shape(ham)
    assert shape["cycle_length"] == 4 and shape["strongly_connected"]
    names = {r.name: r for r in tcr_reports(ham)}
    assert names["TcrHAWielandt"].applicable
    assert names["TcrHAWielandt"].value == 13
    t_ex = walk_existence_threshold(ham)
    for r in names.values():
        if r.applicable:
            assert t_ex <= r.value


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(1, 3), st.integers(0, 10**6))
def test_reduction_threshold_below_closed_form_removal_bounds(d, gamma, seed):
    a = random_irreducible(d, seed=seed, gamma=min(gamma, d))
    prof = profile(a)
    norm = scalar_mul(-prof.lam, a)
    crit = prof.critical
    for comp in prof.critical_components:
        sub = crit.restrict(comp)
        sigma = prof.critical_component_cyclicity(comp)
        q = ThresholdQuery(norm, sub, sigma)
        t_wr = walk_reduction_threshold(q)
        for rep in tcr_reports(q):
            if rep.applicable:
                assert t_wr <= rep.value, rep.name

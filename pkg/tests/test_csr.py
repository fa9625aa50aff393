import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from troptransient.core import NEG_INF, TropMatrix, identity, mat_pow, scalar_mul
from troptransient.csr import csr_of, csr_term, csr_term_unreduced, reduced_exponent, scaled_csr_term
from troptransient.errors import IrreducibilityError
from troptransient.generate import random_irreducible
from troptransient.transients import measure_T

N = "-inf"
SWAP = TropMatrix.of([[N, 1], [-1, N]])


def test_two_cycle_triple():
    tr = csr_of(SWAP)
    assert tr.lam == 0 and tr.sigma == 2
    assert tr.M == identity(2)
    assert tr.C == identity(2) and tr.R == identity(2)
    assert tr.S == SWAP
    for t in range(6):
        assert csr_term(tr, t) == mat_pow(SWAP, t)
    assert csr_term(tr, 1) == SWAP


def test_reduced_exponent():
    assert reduced_exponent(0, 3) == 0
    assert [reduced_exponent(t, 3) for t in range(1, 8)] == [1, 2, 3, 1, 2, 3, 1]
    with pytest.raises(ValueError):
        reduced_exponent(-1, 2)


def test_reducible_rejected():
    with pytest.raises(IrreducibilityError):
        csr_of(TropMatrix.of([[0, 0], [N, 0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(1, 2), st.integers(0, 10**6))
def test_csr_equals_walk_oracle(d, gamma, seed):
    a = random_irreducible(d, seed=seed, gamma=min(gamma, d))
    tr = csr_of(a)
    walks = O.csr_by_walks(O.grid(a), tr.sigma)
    for t in range(2 * tr.sigma + 2):
        assert O.grid(csr_term(tr, t)) == walks[t % tr.sigma]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10**6))
def test_csr_is_limit_of_powers(d, seed):
    a = random_irreducible(d, seed=seed, weights=(-3, 3), denominators=(1, 2))
    tr = csr_of(a)
    t_a = measure_T(a).value
    norm = scalar_mul(-tr.lam, a)
    for t in range(3 * tr.sigma + 1):
        assert csr_term_unreduced(tr, t + tr.sigma) == csr_term_unreduced(tr, t)
        k = t_a + t
        assert mat_pow(norm, k) == csr_term(tr, k)
        assert mat_pow(a, k) == scaled_csr_term(tr, k)


def test_masks_follow_critical_nodes():
    a = TropMatrix.of([[0, -1], [0, -1]])
    tr = csr_of(a)
    assert tr.critical_nodes == frozenset({0})
    assert tr.C[0, 1] is NEG_INF and tr.R[1, 0] is NEG_INF
    assert tr.S == TropMatrix.of([[0, N], [N, N]])

"""Seeded random instances: irreducible matrices with prescribed cyclicity, low-rank products."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .core import NEG_INF, TropMatrix, mat_mul
from .factor import Factorization
from .graph import arc_set, component_cyclicity, is_irreducible

MAX_TRIES = 200


def rng_for(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def draw_weight(rng: np.random.Generator, lo, hi, denominators=(1,)) -> Fraction:
    den = int(rng.choice(denominators))
    lo_n = int(np.ceil(Fraction(lo) * den))
    hi_n = int(np.floor(Fraction(hi) * den))
    return Fraction(int(rng.integers(lo_n, hi_n + 1)), den)


def composition(rng: np.random.Generator, total: int, parts: int) -> list:
    """Uniform random split of total into `parts` positive integers."""
    if parts > total:
        raise ValueError(f"cannot split {total} into {parts} positive parts")
    cuts = sorted(rng.choice(np.arange(1, total), size=parts - 1, replace=False).tolist()) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [bounds[k + 1] - bounds[k] for k in range(parts)]


def _cyclicity(m: TropMatrix) -> int:
    return component_cyclicity(tuple(range(m.rows)), arc_set(m))


def _permute(grid: list, perm: list) -> list:
    n = len(perm)
    return [[grid[perm[i]][perm[j]] for j in range(n)] for i in range(n)]


def random_irreducible(
    d: int,
    seed=None,
    gamma: int = 1,
    weights=(-5, 5),
    density: float = 0.5,
    denominators=(1,),
) -> TropMatrix:
    """Irreducible d x d matrix whose digraph has cyclicity exactly gamma."""
    if not 1 <= gamma <= d:
        raise ValueError(f"need 1 <= gamma <= d, got gamma={gamma}, d={d}")
    rng = rng_for(seed)
    lo, hi = weights
    sizes = composition(rng, d, gamma) if gamma > 1 else [d]
    cls = [k for k, s in enumerate(sizes) for _ in range(s)]
    for attempt in range(MAX_TRIES + 1):
        dense = attempt == MAX_TRIES
        grid = [[NEG_INF] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                allowed = gamma == 1 or cls[j] == (cls[i] + 1) % gamma
                if allowed and (dense or rng.random() < density):
                    grid[i][j] = draw_weight(rng, lo, hi, denominators)
        m = TropMatrix(d, d, tuple(tuple(r) for r in grid))
        if is_irreducible(m) and _cyclicity(m) == gamma:
            break
    else:  # pragma: no cover - the dense attempt always succeeds
        raise RuntimeError("generator failed")
    perm = rng.permutation(d).tolist()
    return TropMatrix(d, d, tuple(tuple(r) for r in _permute([list(r) for r in m.entries], perm)))


def generate_with_rank(d: int, r: int, weight_range=(-5, 5), seed=None, gamma: int = 1):
    """Return (A, Factorization) with A = U (x) L built from finite factor blocks."""
    if not 1 <= r <= d:
        raise ValueError(f"need 1 <= r <= d, got r={r}, d={d}")
    if gamma > r:
        raise ValueError(f"cyclicity {gamma} needs rank at least {gamma}")
    rng = rng_for(seed)
    lo, hi = weight_range
    if gamma == 1:
        u_grid = [[draw_weight(rng, lo, hi) for _ in range(r)] for _ in range(d)]
        l_grid = [[draw_weight(rng, lo, hi) for _ in range(d)] for _ in range(r)]
    else:
        n_sizes = composition(rng, d, gamma)
        r_sizes = composition(rng, r, gamma)
        n_cls = [k for k, s in enumerate(n_sizes) for _ in range(s)]
        r_cls = [k for k, s in enumerate(r_sizes) for _ in range(s)]
        u_grid = [
            [draw_weight(rng, lo, hi) if n_cls[i] == r_cls[j] else NEG_INF for j in range(r)]
            for i in range(d)
        ]
        l_grid = [
            [
                draw_weight(rng, lo, hi) if n_cls[k] == (r_cls[j] + 1) % gamma else NEG_INF
                for k in range(d)
            ]
            for j in range(r)
        ]
        perm = rng.permutation(d).tolist()
        u_grid = [u_grid[perm[i]] for i in range(d)]
        l_grid = [[row[perm[k]] for k in range(d)] for row in l_grid]
    u = TropMatrix(d, r, tuple(tuple(x) for x in u_grid))
    l = TropMatrix(r, d, tuple(tuple(x) for x in l_grid))
    a = mat_mul(u, l)
    return a, Factorization(u, l, r)

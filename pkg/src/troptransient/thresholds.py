"""Walk thresholds through a subgraph: existence, weight reduction, exploration penalty.

Walks are tracked on the product graph with states (node, visited-subgraph
flag, length mod sigma).  Shortest and heaviest walks in that product graph
can always be taken elementary, so every threshold here is below the number
of product states, which is what makes the iterations terminate.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernel as K
from .core import NEG_INF, TropMatrix
from .errors import DomainError, HorizonError, NoClosedWalkError
from .graph import (
    Subgraph,
    arc_set,
    component_cyclicity,
    is_irreducible,
    is_nontrivial,
    max_cycle_mean,
    strongly_connected_components,
)


def horizon_multiplier() -> int:
    try:
        return max(1, int(os.environ.get("TROP_HORIZON_MULT", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ThresholdQuery:
    a: TropMatrix
    subgraph: Subgraph
    sigma: int

    def __post_init__(self):
        if self.sigma < 1:
            raise DomainError("sigma must be positive")
        if not self.subgraph.nodes:
            raise DomainError("subgraph must be nonempty")
        arcs = arc_set(self.a)
        missing = [e for e in self.subgraph.arcs if e not in arcs]
        if missing:
            raise DomainError(f"subgraph arcs {sorted(missing)} are not arcs of the matrix graph")
        bad = [v for v in self.subgraph.nodes if not 0 <= v < self.a.rows]
        if bad:
            raise DomainError(f"subgraph nodes {bad} out of range")
        ends = {v for e in self.subgraph.arcs for v in e}
        if not ends <= self.subgraph.nodes:
            raise DomainError("subgraph arcs must join subgraph nodes")


def _state(v: int, flag: int, res: int, sigma: int) -> int:
    return (v * 2 + flag) * sigma + res


def first_lengths(q: ThresholdQuery) -> dict:
    """(i, j, r) -> least length of an i -> j walk through the subgraph with length = r mod sigma."""
    a, sigma, nodes = q.a, q.sigma, q.subgraph.nodes
    n = a.rows
    succ = [[j for j in range(n) if a[i, j] is not NEG_INF] for i in range(n)]
    out = {}
    for i in range(n):
        start = (i, int(i in nodes), 0)
        dist = {start: 0}
        queue = deque([start])
        while queue:
            v, f, r = queue.popleft()
            t = dist[(v, f, r)]
            if f:
                out.setdefault((i, v, r), t)
            for w in succ[v]:
                s = (w, f | (w in nodes), (r + 1) % sigma)
                if s not in dist:
                    dist[s] = t + 1
                    queue.append(s)
    return out


def walk_existence_threshold(q: ThresholdQuery) -> int:
    firsts = first_lengths(q)
    return max(firsts.values(), default=0)


def _product_matrix(q: ThresholdQuery, scale: int) -> np.ndarray:
    a, sigma, nodes = q.a, q.sigma, q.subgraph.nodes
    n = a.rows
    size = 2 * n * sigma
    prod = np.full((size, size), K.NEG, dtype=np.int64)
    for i, j, w in a.arcs():
        val = int(w * scale)
        for f in (0, 1):
            g = f | int(j in nodes)
            for r in range(sigma):
                prod[_state(i, f, r, sigma), _state(j, g, (r + 1) % sigma, sigma)] = val
    return prod


def heaviest_first_lengths(q: ThresholdQuery) -> dict:
    """(i, j, r) -> least length at which an i -> j walk through the subgraph,
    with length = r mod sigma, reaches the supremum weight of all such walks."""
    a, sigma, nodes = q.a, q.sigma, q.subgraph.nodes
    lam = max_cycle_mean(a)
    if lam is not NEG_INF and lam > 0:
        raise DomainError("walk reduction threshold needs lambda(A) <= 0; normalize first")
    n = a.rows
    scale = K.common_scale(a)
    prod = _product_matrix(q, scale)
    best = K.star(prod)
    starts = [_state(i, int(i in nodes), 0, sigma) for i in range(n)]
    targets = {}
    for i in range(n):
        for j in range(n):
            for r in range(sigma):
                p = best[starts[i], _state(j, 1, r, sigma)]
                if p > K.CUT:
                    targets[(i, j, r)] = p
    found = {}
    cur = np.full((n, prod.shape[0]), K.NEG, dtype=np.int64)
    for i in range(n):
        cur[i, starts[i]] = 0
    horizon = horizon_multiplier() * prod.shape[0]
    t = 0
    while len(found) < len(targets):
        if t > horizon:
            raise HorizonError(f"walk reduction threshold not settled within {horizon} steps")
        r = t % sigma
        for i in range(n):
            for j in range(n):
                key = (i, j, r)
                if key in targets and key not in found and cur[i, _state(j, 1, r, sigma)] == targets[key]:
                    found[key] = t
        cur = K.mul(cur, prod)
        t += 1
    return found


def walk_reduction_threshold(q: ThresholdQuery) -> int:
    return max(heaviest_first_lengths(q).values(), default=0)


# ---------------------------------------------------------------------------
# exploration penalty


def exploration_penalty(g: Subgraph, sigma: int, i: int) -> int:
    """Least T such that every multiple of sigma that is >= T is a closed-walk length at i in g."""
    if sigma < 1:
        raise DomainError("sigma must be positive")
    if i not in g.nodes:
        raise NoClosedWalkError(f"node {i} is not in the subgraph")
    comp = next(c for c in strongly_connected_components(g.nodes, g.arcs) if i in c)
    if not is_nontrivial(comp, g.arcs):
        raise NoClosedWalkError(f"no closed walk at node {i}")
    c = component_cyclicity(comp, g.arcs)
    if sigma % c:
        raise DomainError(
            f"cyclicity {c} of the component of {i} does not divide {sigma}; "
            "infinitely many multiples are missing"
        )
    index = {v: k for k, v in enumerate(comp)}
    m = len(comp)
    adj = np.zeros((m, m), dtype=bool)
    for u, v in g.arcs:
        if u in index and v in index:
            adj[index[u], index[v]] = True
    vec = np.zeros(m, dtype=bool)
    vec[index[i]] = True
    seen = {}
    present = []
    t = 0
    while True:
        key = (vec.tobytes(), t % sigma)
        if key in seen:
            start = seen[key]
            break
        seen[key] = t
        present.append(bool(vec[index[i]]))
        vec = (vec.astype(np.int32) @ adj.astype(np.int32)) > 0
        t += 1
    # from `start` on, the pattern of (reach set, t mod sigma) repeats with period t - start
    for s in range(start, t):
        if s % sigma == 0 and not present[s]:
            raise DomainError("closed-walk lengths never saturate the multiples of sigma")
    missing = [s for s in range(0, start, 1) if s % sigma == 0 and not present[s]]
    return missing[-1] + 1 if missing else 0


def exploration_penalty_subgraph(g: Subgraph, sigma: int) -> int:
    return max(exploration_penalty(g, sigma, v) for v in sorted(g.nodes))


# ---------------------------------------------------------------------------
# closed-form checks


def query_shape(q: ThresholdQuery) -> dict:
    """Facts about the subgraph that decide which closed-form bounds apply."""
    sub = q.subgraph
    comps = sub.components()
    strongly = len(comps) == 1 and set(comps[0]) == set(sub.nodes)
    shape = {"d1": len(sub.nodes), "strongly_connected": strongly, "cycle_length": None}
    if strongly:
        shape["cyclicity"] = component_cyclicity(comps[0], sub.arcs)
        if len(sub.arcs) == len(sub.nodes):
            shape["cycle_length"] = len(sub.nodes)
    return shape


def tcr_reports(q: ThresholdQuery) -> list:
    """Closed-form cycle removal bounds whose hypotheses match the query."""
    from .bounds import (
        BoundReport,
        tcr_cycle,
        tcr_hamiltonian,
        tcr_linear,
        tcr_linear_cyclic,
        tcr_long_cycle,
    )

    d = q.a.rows
    shape = query_shape(q)
    sigma = q.sigma
    inp = {"d": d, "sigma": sigma, "d1": shape["d1"]}
    out = [BoundReport("TcRLin", tcr_linear(sigma, d, shape["d1"]), dict(inp))]
    irreducible = is_irreducible(q.a)
    gamma = component_cyclicity(tuple(range(d)), arc_set(q.a)) if irreducible else None
    inp["gamma"] = gamma

    def add(name, ok, reason, value_fn):
        if ok:
            out.append(BoundReport(name, value_fn(), dict(inp)))
        else:
            out.append(BoundReport(name, None, dict(inp), False, reason))

    add(
        "TcRLinGen",
        irreducible and shape["strongly_connected"] and shape.get("cyclicity") == sigma,
        "needs irreducible A, strongly connected subgraph and sigma equal to its cyclicity",
        lambda: tcr_linear_cyclic(sigma, d, gamma),
    )
    length = shape["cycle_length"]
    add(
        "TcRLin-cycle",
        irreducible and length is not None and length == sigma,
        "needs irreducible A and a cycle with sigma equal to its length",
        lambda: tcr_cycle(length, d, gamma),
    )
    add(
        "TcrHAWielandt",
        length is not None and length == d and sigma == d,
        "needs a cycle of length d and sigma = d",
        lambda: tcr_hamiltonian(d),
    )
    add(
        "TcRn",
        irreducible and length is not None and length == gamma * (d // gamma) and sigma == length,
        "needs an elementary cycle of length gamma*floor(d/gamma) with the same sigma",
        lambda: tcr_long_cycle(d, gamma),
    )
    return out

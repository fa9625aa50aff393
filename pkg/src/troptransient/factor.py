"""Tropical factorizations A = U L, the swapped product L U and the bipartite lift."""

from __future__ import annotations

from dataclasses import dataclass

from .core import NEG_INF, TropMatrix, from_blocks, mat_mul, neg_inf_matrix, scalar_mul
from .errors import DimensionError, FactorizationError, StructureError
from .graph import (
    Subgraph,
    component_cyclicity,
    component_girth,
    critical_graph,
    cycles_of,
    is_nontrivial,
    max_cycle_mean,
    strongly_connected_components,
)


@dataclass(frozen=True)
class Factorization:
    U: TropMatrix
    L: TropMatrix
    rank_bound: int

    def __post_init__(self):
        if self.U.cols != self.rank_bound or self.L.rows != self.rank_bound:
            raise DimensionError("factor shapes do not match the rank bound")
        if self.U.rows != self.L.cols:
            raise DimensionError("U rows must equal L columns")

    @classmethod
    def of(cls, u: TropMatrix, l: TropMatrix) -> "Factorization":
        return cls(u, l, u.cols)

    def normalized(self, lam) -> "Factorization":
        """Factorization of (-lam) (x) A, obtained by shifting U."""
        return Factorization(scalar_mul(-lam, self.U), self.L, self.rank_bound)


@dataclass(frozen=True)
class LiftPair:
    a_check: TropMatrix
    f: TropMatrix


def verify_factorization(a: TropMatrix, fac: Factorization) -> bool:
    if fac.U.rows != a.rows or fac.L.cols != a.cols:
        raise DimensionError(f"factors {fac.U.shape}, {fac.L.shape} do not fit {a.shape}")
    return mat_mul(fac.U, fac.L) == a


def lift(a: TropMatrix, fac: Factorization) -> LiftPair:
    if not verify_factorization(a, fac):
        raise FactorizationError("U (x) L does not reproduce A")
    d, r = a.rows, fac.rank_bound
    f = from_blocks([[neg_inf_matrix(d, d), fac.U], [fac.L, neg_inf_matrix(r, r)]])
    return LiftPair(mat_mul(fac.L, fac.U), f)


def _critical_components(m: TropMatrix, lam):
    nodes, arcs = critical_graph(m, lam)
    comps = [c for c in strongly_connected_components(nodes, arcs) if is_nontrivial(c, arcs)]
    return comps, arcs


def related_components(a: TropMatrix, pair: LiftPair) -> list:
    """Pair each critical component of A with its related critical component of L U.

    The critical components of the lift F have nodes 0..d-1 on the A side
    and d..d+r-1 on the other side; each one projects onto exactly one
    component on each side.
    """
    d = a.rows
    lam = max_cycle_mean(a)
    comps_a, _ = _critical_components(a, lam)
    comps_c, _ = _critical_components(pair.a_check, lam)
    comps_f, _ = _critical_components(pair.f, lam / 2)
    index_a = {v: k for k, c in enumerate(comps_a) for v in c}
    index_c = {v: k for k, c in enumerate(comps_c) for v in c}
    pairs = []
    used_a, used_c = set(), set()
    for comp in comps_f:
        left = {index_a.get(v) for v in comp if v < d}
        right = {index_c.get(v - d) for v in comp if v >= d}
        if len(left) != 1 or len(right) != 1 or None in left or None in right:
            raise StructureError("critical component of the lift does not project onto single components")
        ka, kc = left.pop(), right.pop()
        if set(v for v in comp if v < d) != set(comps_a[ka]) or {v - d for v in comp if v >= d} != set(
            comps_c[kc]
        ):
            raise StructureError("lift component does not cover whole components")
        used_a.add(ka)
        used_c.add(kc)
        pairs.append((comps_a[ka], comps_c[kc]))
    if len(used_a) != len(comps_a) or len(used_c) != len(comps_c) or len(pairs) != len(comps_a):
        raise StructureError("critical components are not in bijection")
    return sorted(pairs)


def tight_middles(a: TropMatrix, fac: Factorization, i: int, k: int) -> list:
    """Indices j with u_ij + l_jk = a_ik (the lifts of arc (i, k))."""
    target = a[i, k]
    out = []
    for j in range(fac.rank_bound):
        u, l = fac.U[i, j], fac.L[j, k]
        if u is not NEG_INF and l is not NEG_INF and u + l == target:
            out.append(j)
    return out


def related_subgraph(a: TropMatrix, fac: Factorization, sub: Subgraph) -> Subgraph:
    """Subgraph of the graph of L U related to a strongly connected critical subgraph of A.

    Every closed walk of a critical subgraph has maximal weight, so a
    closed walk on the other side is related exactly when each of its
    steps is a tight middle of the corresponding arc.
    """
    succ = {}
    for i, k in sub.arcs:
        succ.setdefault(i, []).append(k)
    middles = {(i, k): tight_middles(a, fac, i, k) for i, k in sub.arcs}
    nodes = set()
    arcs = set()
    for (i, k), js in middles.items():
        nodes.update(js)
        for k2 in succ.get(k, ()):
            for j in js:
                for j2 in middles[(k, k2)]:
                    arcs.add((j, j2))
    return Subgraph.of(nodes, arcs)


def related_walk(a: TropMatrix, fac: Factorization, cycle) -> list:
    """A closed walk on the swapped side related to the given critical cycle (first tight choice)."""
    k = len(cycle)
    walk = []
    for p in range(k):
        js = tight_middles(a, fac, cycle[p], cycle[(p + 1) % k])
        if not js:
            raise StructureError("critical arc without a tight middle")
        walk.append(js[0])
    return walk


def component_signature(comp, arcs) -> tuple:
    return component_girth(comp, arcs), component_cyclicity(comp, arcs)


def circumference(sub: Subgraph) -> int:
    cyc = cycles_of(sub.nodes, sub.arcs)
    return max((len(c) for c in cyc), default=0)

"""Structure of the weighted digraph attached to a square matrix.

Nodes are ``0..d-1``.  A subgraph is described by a node set and an arc set;
most helpers take ``(nodes, arcs)`` so they work equally on the whole graph,
on the critical graph and on user-supplied subgraphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .core import NEG_INF, TropMatrix, identity, kleene_star, mat_mul, scalar_mul
from .errors import AcyclicError, DimensionError, IrreducibilityError, SizeLimitError

CYCLE_ENUM_LIMIT = 14
PATH_DP_LIMIT = 20


# ---------------------------------------------------------------------------
# plain digraph helpers


def successors(nodes: Iterable[int], arcs: Iterable[tuple]) -> dict:
    """Adjacency lists of the subgraph induced on `nodes`."""
    succ = {v: [] for v in nodes}
    for i, j in arcs:
        if i in succ and j in succ:
            succ[i].append(j)
    for v in succ:
        succ[v].sort()
    return succ


def strongly_connected_components(nodes: Iterable[int], arcs: Iterable[tuple]) -> list:
    """Tarjan's algorithm, iterative.  Components are sorted tuples, ordered by least node."""
    nodes = sorted(nodes)
    succ = successors(nodes, arcs)
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, pos = work[-1]
            nbrs = succ[v]
            if pos < len(nbrs):
                work[-1] = (v, pos + 1)
                w = nbrs[pos]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(tuple(sorted(comp)))
    comps.sort()
    return comps


def is_nontrivial(comp: Sequence[int], arcs: Iterable[tuple]) -> bool:
    """A component is nontrivial when it carries at least one cycle."""
    if len(comp) > 1:
        return True
    v = comp[0]
    return (v, v) in set(arcs)


def restrict_arcs(arcs: Iterable[tuple], nodes: Iterable[int]) -> set:
    ns = set(nodes)
    return {(i, j) for i, j in arcs if i in ns and j in ns}


def bfs_levels(start: int, succ: dict) -> dict:
    level = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in succ.get(v, ()):
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
    return level


def component_cyclicity(comp: Sequence[int], arcs: Iterable[tuple]) -> int:
    """gcd of cycle lengths of a strongly connected (nontrivial) component."""
    inner = restrict_arcs(arcs, comp)
    if not inner:
        raise AcyclicError("component has no cycle")
    succ = successors(comp, inner)
    level = bfs_levels(min(comp), succ)
    g = 0
    for i, j in inner:
        g = gcd(g, level[i] + 1 - level[j])
    return abs(g)


def component_girth(comp: Sequence[int], arcs: Iterable[tuple]) -> int:
    inner = restrict_arcs(arcs, comp)
    if not inner:
        raise AcyclicError("component has no cycle")
    succ = successors(comp, inner)
    pred = {v: [] for v in comp}
    for i, j in inner:
        pred[j].append(i)
    best = None
    for v in comp:
        dist = bfs_levels(v, succ)
        for u in pred[v]:
            if u in dist:
                length = dist[u] + 1
                if best is None or length < best:
                    best = length
    return best


def cycles_of(nodes: Iterable[int], arcs: Iterable[tuple], limit: int = CYCLE_ENUM_LIMIT) -> list:
    """All elementary cycles as node tuples starting at their least node."""
    nodes = sorted(set(nodes))
    if len(nodes) > limit:
        raise SizeLimitError(f"cycle enumeration limited to {limit} nodes, got {len(nodes)}")
    succ = successors(nodes, arcs)
    found = []
    for s in nodes:
        path = [s]
        on_path = {s}
        iters = [iter(succ[s])]
        while iters:
            try:
                w = next(iters[-1])
            except StopIteration:
                iters.pop()
                on_path.discard(path.pop())
                continue
            if w == s:
                found.append(tuple(path))
            elif w > s and w not in on_path:
                path.append(w)
                on_path.add(w)
                iters.append(iter(succ[w]))
    return found


def component_circumference(comp: Sequence[int], arcs: Iterable[tuple]) -> int:
    inner = restrict_arcs(arcs, comp)
    cycles = cycles_of(comp, inner)
    if not cycles:
        raise AcyclicError("component has no cycle")
    return max(len(c) for c in cycles)


def cyclicity(nodes: Iterable[int], arcs: Iterable[tuple]) -> int:
    """lcm of the cyclicities of all nontrivial components."""
    arcs = set(arcs)
    c = None
    for comp in strongly_connected_components(nodes, arcs):
        if is_nontrivial(comp, arcs):
            k = component_cyclicity(comp, arcs)
            c = k if c is None else lcm(c, k)
    if c is None:
        raise AcyclicError("graph has no cycle")
    return c


# ---------------------------------------------------------------------------
# matrix-level analysis


def arc_set(a: TropMatrix) -> set:
    return {(i, j) for i, j, _ in a.arcs()}


def max_cycle_mean(a: TropMatrix):
    """Karp's characterization with every node as a zero-weight start."""
    if not a.is_square:
        raise DimensionError(f"max cycle mean of non-square {a.shape} matrix")
    n = a.rows
    if n == 0:
        return NEG_INF
    arcs = list(a.arcs())
    table = [[Fraction(0)] * n]
    for _ in range(n):
        prev = table[-1]
        cur = [NEG_INF] * n
        for i, j, w in arcs:
            p = prev[i]
            if p is not NEG_INF:
                s = p + w
                if cur[j] is NEG_INF or s > cur[j]:
                    cur[j] = s
        table.append(cur)
    best = NEG_INF
    last = table[n]
    for v in range(n):
        if last[v] is NEG_INF:
            continue
        worst = None
        for k in range(n):
            dk = table[k][v]
            if dk is NEG_INF:
                continue
            q = (last[v] - dk) / (n - k)
            if worst is None or q < worst:
                worst = q
        if worst is not None and (best is NEG_INF or worst > best):
            best = worst
    return best


def is_irreducible(a: TropMatrix) -> bool:
    comps = strongly_connected_components(range(a.rows), arc_set(a))
    return a.rows > 0 and len(comps) == 1 and is_nontrivial(comps[0], arc_set(a))


def require_irreducible(a: TropMatrix) -> None:
    if not a.is_square:
        raise DimensionError(f"non-square {a.shape} matrix")
    if not is_irreducible(a):
        raise IrreducibilityError("matrix is reducible")


def normalized(a: TropMatrix, lam) -> TropMatrix:
    return scalar_mul(-lam, a)


def critical_graph(a: TropMatrix, lam=None) -> tuple:
    """Return (critical node set, critical arc set) of a matrix with finite lambda."""
    if lam is None:
        lam = max_cycle_mean(a)
    if lam is NEG_INF:
        raise AcyclicError("graph has no cycle; critical graph undefined")
    at = normalized(a, lam)
    st = kleene_star(at)
    plus = mat_mul(at, st)
    zero = Fraction(0)
    nodes = {i for i in range(a.rows) if plus[i, i] == zero}
    arcs = set()
    for i, j, w in at.arcs():
        if i in nodes and j in nodes:
            back = st[j, i]
            if back is not NEG_INF and w + back == zero:
                arcs.add((i, j))
    return nodes, arcs


@dataclass(frozen=True)
class Subgraph:
    nodes: frozenset
    arcs: frozenset

    @classmethod
    def of(cls, nodes: Iterable[int], arcs: Iterable[tuple]) -> "Subgraph":
        return cls(frozenset(nodes), frozenset((int(i), int(j)) for i, j in arcs))

    def components(self) -> list:
        return [
            c
            for c in strongly_connected_components(self.nodes, self.arcs)
            if is_nontrivial(c, self.arcs)
        ]

    def restrict(self, nodes: Iterable[int]) -> "Subgraph":
        ns = frozenset(nodes)
        return Subgraph(ns, frozenset(restrict_arcs(self.arcs, ns)))

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass
class DigraphProfile:
    node_count: int
    arcs: dict
    sccs: list
    is_strongly_connected: bool
    cyclicity: int | None
    lam: object
    critical_nodes: frozenset
    critical_arcs: frozenset
    critical_components: list
    critical_cyclicity: int
    max_critical_cyclicity: int
    max_critical_girth: int
    girth: int | None
    _component_girths: dict = field(default_factory=dict, repr=False)

    @cached_property
    def circumference(self) -> int | None:
        arcs = set(self.arcs)
        best = None
        for comp in self.sccs:
            if is_nontrivial(comp, arcs):
                c = component_circumference(comp, arcs)
                best = c if best is None else max(best, c)
        return best

    @property
    def critical(self) -> Subgraph:
        return Subgraph(self.critical_nodes, self.critical_arcs)

    def critical_girth(self, comp) -> int:
        return component_girth(comp, self.critical_arcs)

    def critical_component_cyclicity(self, comp) -> int:
        return component_cyclicity(comp, self.critical_arcs)


def profile(a: TropMatrix) -> DigraphProfile:
    if not a.is_square:
        raise DimensionError(f"profile of non-square {a.shape} matrix")
    n = a.rows
    weights = {(i, j): w for i, j, w in a.arcs()}
    arcs = set(weights)
    sccs = strongly_connected_components(range(n), arcs)
    lam = max_cycle_mean(a)
    if lam is NEG_INF:
        raise AcyclicError("graph has no cycle, so lambda is -inf")
    strongly = len(sccs) == 1 and is_nontrivial(sccs[0], arcs)
    gam = cyclicity(range(n), arcs)
    girths = [component_girth(c, arcs) for c in sccs if is_nontrivial(c, arcs)]
    cn, ca = critical_graph(a, lam)
    ccomps = [c for c in strongly_connected_components(cn, ca) if is_nontrivial(c, ca)]
    ccyc = [component_cyclicity(c, ca) for c in ccomps]
    cgirth = [component_girth(c, ca) for c in ccomps]
    sigma = 1
    for k in ccyc:
        sigma = lcm(sigma, k)
    return DigraphProfile(
        node_count=n,
        arcs=weights,
        sccs=sccs,
        is_strongly_connected=strongly,
        cyclicity=gam,
        lam=lam,
        critical_nodes=frozenset(cn),
        critical_arcs=frozenset(ca),
        critical_components=ccomps,
        critical_cyclicity=sigma,
        max_critical_cyclicity=max(ccyc),
        max_critical_girth=max(cgirth),
        girth=min(girths) if girths else None,
    )


def longest_elementary_path(a: TropMatrix, limit: int = PATH_DP_LIMIT) -> int:
    """Largest number of arcs on a path that repeats no node."""
    if not a.is_square:
        raise DimensionError(f"non-square {a.shape} matrix")
    n = a.rows
    if n > limit:
        raise SizeLimitError(f"path search limited to {limit} nodes, got {n}")
    succ = successors(range(n), [(i, j) for i, j in arc_set(a) if i != j])
    best = 0
    seen = set()
    frontier = [(1 << v, v) for v in range(n)]
    length = 0
    while frontier:
        best = length
        nxt = []
        for mask, v in frontier:
            for w in succ[v]:
                if not mask >> w & 1:
                    state = (mask | 1 << w, w)
                    if state not in seen:
                        seen.add(state)
                        nxt.append(state)
        frontier = nxt
        length += 1
    return best


def enumerate_elementary_cycles(a: TropMatrix, limit: int = CYCLE_ENUM_LIMIT) -> list:
    """Every elementary cycle of the digraph with its exact mean weight."""
    if not a.is_square:
        raise DimensionError(f"non-square {a.shape} matrix")
    out = []
    for cyc in cycles_of(range(a.rows), arc_set(a), limit):
        k = len(cyc)
        total = sum((a[cyc[p], cyc[(p + 1) % k]] for p in range(k)), Fraction(0))
        out.append((cyc, total / k))
    return out


def cycle_arcs(cyc: Sequence[int]) -> list:
    k = len(cyc)
    return [(cyc[p], cyc[(p + 1) % k]) for p in range(k)]


# ---------------------------------------------------------------------------
# cyclic classes


@dataclass(frozen=True)
class CyclicClassDecomposition:
    source: TropMatrix
    classes: tuple
    blocks: tuple

    @property
    def gamma(self) -> int:
        return len(self.classes)

    @property
    def order(self) -> list:
        return [v for c in self.classes for v in c]

    def class_of(self, v: int) -> int:
        for k, c in enumerate(self.classes):
            if v in c:
                return k
        raise KeyError(v)

    def block_power(self, i: int, s: int) -> TropMatrix:
        """A^s_i: rows of class i, columns of class i+s, via the product of s blocks."""
        g = self.gamma
        i %= g
        result = identity(len(self.classes[i]))
        for k in range(s):
            result = mat_mul(result, self.blocks[(i + k) % g])
        return result

    def power_block(self, power: TropMatrix, i: int, s: int) -> TropMatrix:
        """Extract the block of a full matrix power that A^s_i should equal."""
        g = self.gamma
        return power.submatrix(self.classes[i % g], self.classes[(i + s) % g])

    def reassemble(self) -> TropMatrix:
        """Rebuild A from its blocks and undo the class permutation."""
        d = self.source.rows
        grid = [[NEG_INF] * d for _ in range(d)]
        g = self.gamma
        for i in range(g):
            rows = self.classes[i]
            cols = self.classes[(i + 1) % g]
            blk = self.blocks[i]
            for p, u in enumerate(rows):
                for q, v in enumerate(cols):
                    grid[u][v] = blk[p, q]
        return TropMatrix(d, d, tuple(tuple(r) for r in grid))


def cyclic_classes(a: TropMatrix) -> CyclicClassDecomposition:
    require_irreducible(a)
    arcs = arc_set(a)
    n = a.rows
    g = component_cyclicity(tuple(range(n)), arcs)
    level = bfs_levels(0, successors(range(n), arcs))
    classes = tuple(tuple(v for v in range(n) if level[v] % g == k) for k in range(g))
    blocks = tuple(a.submatrix(classes[k], classes[(k + 1) % g]) for k in range(g))
    return CyclicClassDecomposition(a, classes, blocks)


def diagonal_blocks(dec: CyclicClassDecomposition) -> list:
    return [dec.block_power(i, dec.gamma) for i in range(dec.gamma)]

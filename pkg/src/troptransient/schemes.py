"""Subordinate matrices B for the Nachtigall, Hartmann-Arguelles and cycle threshold schemes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import NEG_INF, TropMatrix, kleene_star, mat_mul, scalar_mul
from .errors import StructureError
from .graph import (
    DigraphProfile,
    arc_set,
    critical_graph,
    cycle_arcs,
    enumerate_elementary_cycles,
    is_nontrivial,
    max_cycle_mean,
    profile,
    require_irreducible,
    strongly_connected_components,
)


class SchemeChoice(enum.Enum):
    NACHTIGALL = "N"
    HARTMANN_ARGUELLES = "HA"
    CYCLE_THRESHOLD = "CT"

    @classmethod
    def parse(cls, text: str) -> "SchemeChoice":
        for s in cls:
            if text.strip().upper() in (s.value, s.name):
                return s
        raise ValueError(f"unknown scheme {text!r}")


@dataclass(frozen=True)
class WeakExpansion:
    scheme: SchemeChoice
    removed_nodes: frozenset
    b: TropMatrix
    threshold: object = None


def subordinate(a: TropMatrix, removed) -> TropMatrix:
    """B agrees with A except on rows and columns of removed nodes, which become -inf."""
    removed = set(removed)
    rows = tuple(
        (NEG_INF,) * a.cols
        if i in removed
        else tuple(NEG_INF if j in removed else x for j, x in enumerate(row))
        for i, row in enumerate(a.entries)
    )
    return TropMatrix(a.rows, a.cols, rows)


def b_nachtigall(a: TropMatrix, prof: DigraphProfile | None = None) -> WeakExpansion:
    if prof is None:
        require_irreducible(a)
        prof = profile(a)
    removed = frozenset(prof.critical_nodes)
    return WeakExpansion(SchemeChoice.NACHTIGALL, removed, subordinate(a, removed), None)


# ---------------------------------------------------------------------------
# max-balancing


def diagonal(values) -> TropMatrix:
    n = len(values)
    return TropMatrix(
        n, n, tuple(tuple(values[i] if i == j else NEG_INF for j in range(n)) for i in range(n))
    )


def _balance_potentials(a: TropMatrix) -> list:
    """Potentials d with a_uv - d_u + d_v max-balanced.

    Repeatedly contracts the current node groups, scales so every contracted
    arc is at most the max cycle mean with equality on critical arcs, then
    merges the critical components.  Loops never influence balance.
    """
    n = a.rows
    pot = [Fraction(0)] * n
    weights = {(i, j): w for i, j, w in a.arcs() if i != j}
    groups = [[v] for v in range(n)]
    while len(groups) > 1:
        where = {v: g for g, members in enumerate(groups) for v in members}
        k = len(groups)
        grid = [[NEG_INF] * k for _ in range(k)]
        for (u, v), w in weights.items():
            p, q = where[u], where[v]
            if p != q:
                val = w - pot[u] + pot[v]
                if grid[p][q] is NEG_INF or val > grid[p][q]:
                    grid[p][q] = val
        w_mat = TropMatrix(k, k, tuple(tuple(r) for r in grid))
        lam = max_cycle_mean(w_mat)
        if lam is NEG_INF:
            raise StructureError("contracted graph lost its cycles; input not irreducible?")
        star = kleene_star(scalar_mul(-lam, w_mat))
        shift = []
        for p in range(k):
            finite = [x for x in star.entries[p] if x is not NEG_INF]
            shift.append(max(finite))
        for v in range(n):
            pot[v] += shift[where[v]]
        cn, ca = critical_graph(w_mat, lam)
        merged = [c for c in strongly_connected_components(cn, ca) if is_nontrivial(c, ca)]
        if not merged:
            raise StructureError("no critical component to contract")
        in_merge = {p for c in merged for p in c}
        new_groups = [sum((groups[p] for p in c), []) for c in merged]
        new_groups += [groups[p] for p in range(k) if p not in in_merge]
        groups = sorted(sorted(g) for g in new_groups)
    return pot


def is_max_balanced(v: TropMatrix) -> bool:
    """Every arc is the smallest weight on some cycle through it."""
    n = v.rows
    for i, j, w in v.arcs():
        if i == j:
            continue
        # is there a path j -> i using arcs of weight >= w?
        seen = {j}
        stack = [j]
        while stack:
            u = stack.pop()
            if u == i:
                break
            for x in range(n):
                y = v[u, x]
                if y is not NEG_INF and y >= w and x not in seen:
                    seen.add(x)
                    stack.append(x)
        if i not in seen:
            return False
    return True


def max_balancing(a: TropMatrix) -> tuple:
    """Return (D, V) with V = D^- A D max-balanced."""
    require_irreducible(a)
    pot = _balance_potentials(a)
    d = diagonal(pot)
    d_inv = diagonal([-x for x in pot])
    v = mat_mul(mat_mul(d_inv, a), d)
    if not is_max_balanced(v):
        raise StructureError("max-balancing output failed the per-arc cycle check")
    return d, v


# ---------------------------------------------------------------------------
# threshold schemes


def _contains_whole_critical_component(comp, crit_comps) -> bool:
    s = set(comp)
    return any(set(c) <= s for c in crit_comps)


def _threshold_choice(a, prof, candidates, graph_at):
    """Sweep thresholds downward; return (mu, removed nodes)."""
    crit_comps = prof.critical_components
    chosen = NEG_INF
    nodes, arcs = set(range(a.rows)), arc_set(a)
    for mu in candidates:
        t_nodes, t_arcs = graph_at(mu)
        comps = [
            c for c in strongly_connected_components(t_nodes, t_arcs) if is_nontrivial(c, t_arcs)
        ]
        if any(not _contains_whole_critical_component(c, crit_comps) for c in comps):
            chosen = mu
            nodes, arcs = t_nodes, t_arcs
            break
    crit = prof.critical_nodes
    removed = set()
    for c in strongly_connected_components(nodes, arcs):
        if crit.intersection(c):
            removed.update(c)
    return chosen, frozenset(removed)


def b_hartmann_arguelles(a: TropMatrix, prof: DigraphProfile | None = None) -> WeakExpansion:
    require_irreducible(a)
    if prof is None:
        prof = profile(a)
    _, v = max_balancing(a)
    lam = prof.lam
    candidates = sorted({w for _, _, w in v.arcs() if w <= lam}, reverse=True)

    def graph_at(mu):
        arcs = {(i, j) for i, j, w in v.arcs() if w >= mu}
        nodes = {i for i, _ in arcs} | {j for _, j in arcs}
        return nodes, arcs

    mu, removed = _threshold_choice(a, prof, candidates, graph_at)
    return WeakExpansion(SchemeChoice.HARTMANN_ARGUELLES, removed, subordinate(a, removed), mu)


def b_cycle_threshold(a: TropMatrix, prof: DigraphProfile | None = None) -> WeakExpansion:
    require_irreducible(a)
    if prof is None:
        prof = profile(a)
    cycles = enumerate_elementary_cycles(a)
    lam = prof.lam
    candidates = sorted({m for _, m in cycles if m <= lam}, reverse=True)

    def graph_at(mu):
        arcs = set()
        for cyc, m in cycles:
            if m >= mu:
                arcs.update(cycle_arcs(cyc))
        nodes = {i for i, _ in arcs}
        return nodes, arcs

    mu, removed = _threshold_choice(a, prof, candidates, graph_at)
    return WeakExpansion(SchemeChoice.CYCLE_THRESHOLD, removed, subordinate(a, removed), mu)


def weak_expansion(a: TropMatrix, scheme: SchemeChoice, prof: DigraphProfile | None = None):
    if scheme is SchemeChoice.NACHTIGALL:
        return b_nachtigall(a, prof)
    if scheme is SchemeChoice.HARTMANN_ARGUELLES:
        return b_hartmann_arguelles(a, prof)
    if scheme is SchemeChoice.CYCLE_THRESHOLD:
        return b_cycle_threshold(a, prof)
    raise ValueError(scheme)

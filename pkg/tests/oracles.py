"""Slow, obviously-correct reference computations used to check the package.

Nothing here imports the package's algorithms: matrices are plain lists of
lists with None standing for -inf, and everything is computed by direct
enumeration of walks or powers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def grid(m) -> list:
    """Package matrix -> list of lists with None for -inf, parsed from its text form."""
    return [[None if x == "-inf" else Fraction(x) for x in row] for row in m.tolist()]


def add(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return max(x, y)


def mul_s(x, y):
    if x is None or y is None:
        return None
    return x + y


def mmul(p, q) -> list:
    n, m, k = len(p), len(q[0]), len(q)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            best = None
            for l in range(k):
                best = add(best, mul_s(p[i][l], q[l][j]))
            row.append(best)
        out.append(row)
    return out


def madd(p, q) -> list:
    return [[add(x, y) for x, y in zip(rp, rq)] for rp, rq in zip(p, q)]


def eye(n) -> list:
    return [[Fraction(0) if i == j else None for j in range(n)] for i in range(n)]


def mpow(p, t) -> list:
    out = eye(len(p))
    for _ in range(t):
        out = mmul(out, p)
    return out


def shift(p, c) -> list:
    return [[None if x is None else x + c for x in row] for row in p]


def powers(p, upto) -> list:
    seq = [eye(len(p))]
    for _ in range(upto):
        seq.append(mmul(seq[-1], p))
    return seq


def max_cycle_mean(p):
    """max over k <= d of max_i (P^k)_ii / k, which covers every elementary cycle."""
    n = len(p)
    best = None
    cur = eye(n)
    for k in range(1, n + 1):
        cur = mmul(cur, p)
        for i in range(n):
            if cur[i][i] is not None:
                best = add(best, Fraction(cur[i][i]) / k)
    return best


def critical_arcs(p, lam) -> set:
    """Arcs (i, j) lying on some closed walk of mean weight lam."""
    n = len(p)
    norm = shift(p, -lam)
    back = [eye(n)]
    for _ in range(n - 1):
        back.append(mmul(back[-1], norm))
    out = set()
    for i in range(n):
        for j in range(n):
            if norm[i][j] is None:
                continue
            for k in range(n):
                w = back[k][j][i]
                if w is not None and norm[i][j] + w == 0:
                    out.add((i, j))
                    break
    return out


def critical_nodes(p, lam) -> set:
    return {v for e in critical_arcs(p, lam) for v in e}


def reachable(arcs, start) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for a, b in arcs:
            if a == u and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def components(nodes, arcs) -> list:
    """Strongly connected components by pairwise reachability."""
    reach = {v: reachable(arcs, v) for v in nodes}
    left = set(nodes)
    out = []
    while left:
        v = min(left)
        comp = {u for u in left if u in reach[v] and v in reach[u]}
        out.append(sorted(comp))
        left -= comp
    return out


def closed_walk_gcd(nodes, arcs) -> int:
    """gcd of the lengths of closed walks of length <= 2|nodes| inside the node set."""
    nodes = sorted(nodes)
    idx = {v: k for k, v in enumerate(nodes)}
    n = len(nodes)
    adj = [[False] * n for _ in range(n)]
    for a, b in arcs:
        if a in idx and b in idx:
            adj[idx[a]][idx[b]] = True
    g = 0
    cur = [[i == j for j in range(n)] for i in range(n)]
    for k in range(1, 2 * n + 1):
        cur = [[any(cur[i][l] and adj[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        if any(cur[i][i] for i in range(n)):
            g = gcd(g, k)
    return g


def critical_cyclicity(p) -> int:
    """lcm over critical components of their cyclicities."""
    lam = max_cycle_mean(p)
    arcs = critical_arcs(p, lam)
    nodes = {v for e in arcs for v in e}
    out = 1
    for comp in components(nodes, arcs):
        c = closed_walk_gcd(comp, arcs)
        if c:
            out = out * c // gcd(out, c)
    return out


def walk_values(p, upto) -> list:
    """For L = 0..upto, max weight of length-L walks i -> j through a critical node
    of the normalized matrix (None when there is none)."""
    n = len(p)
    lam = max_cycle_mean(p)
    crit = critical_nodes(p, lam)
    norm = shift(p, -lam)
    # state (j, f): f = 1 once the walk has met a critical node
    cur = [[[None, None] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        cur[i][i][int(i in crit)] = Fraction(0)
    out = []
    for _ in range(upto + 1):
        out.append([[cur[i][j][1] for j in range(n)] for i in range(n)])
        nxt = [[[None, None] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for k in range(n):
                for f in (0, 1):
                    w = cur[i][k][f]
                    if w is None:
                        continue
                    for j in range(n):
                        if norm[k][j] is None:
                            continue
                        g = f | int(j in crit)
                        nxt[i][j][g] = add(nxt[i][j][g], w + norm[k][j])
        cur = nxt
    return out


def csr_by_walks(p, sigma=None) -> dict:
    """residue r -> sup over walks through critical nodes with length = r mod sigma.

    Lengths are scanned up to 2 d sigma + sigma, enough for an optimal walk to
    be elementary in the (node, met-critical, residue) product graph.
    """
    n = len(p)
    sigma = sigma or critical_cyclicity(p)
    vals = walk_values(p, 2 * n * sigma + sigma)
    out = {}
    for r in range(sigma):
        acc = [[None] * n for _ in range(n)]
        for length in range(r, len(vals), sigma):
            acc = madd(acc, vals[length])
        out[r] = acc
    return out


def transient(p) -> tuple:
    """(T, period) of the normalized powers: first repetition of the orbit."""
    lam = max_cycle_mean(p)
    norm = shift(p, -lam)
    seen = {}
    cur = eye(len(p))
    t = 0
    while True:
        key = repr(cur)
        if key in seen:
            return seen[key], t - seen[key]
        seen[key] = t
        cur = mmul(cur, norm)
        t += 1


def weak_transients(p, b, extra=None) -> tuple:
    """(T1, T2) by direct comparison for t up to T + extra."""
    lam = max_cycle_mean(p)
    sigma = critical_cyclicity(p)
    t_a, _ = transient(p)
    end = t_a + (extra if extra is not None else 2 * sigma + 2)
    csr = csr_by_walks(p, sigma)
    np_ = shift(p, -lam)
    nb = shift(b, -lam)
    last1 = last2 = -1
    pa, pb = eye(len(p)), eye(len(p))
    for t in range(end + 1):
        c = csr[t % sigma]
        if pa != madd(c, pb):
            last1 = t
        if any(y is not None and (x is None or x < y) for rc, rb in zip(c, pb) for x, y in zip(rc, rb)):
            last2 = t
        pa, pb = mmul(pa, np_), mmul(pb, nb)
    return last1 + 1, last2 + 1


def is_max_balanced_by_subsets(p) -> bool:
    """For every proper nonempty node subset, max outgoing arc weight equals max incoming."""
    n = len(p)
    for size in range(1, n):
        for sub in combinations(range(n), size):
            s = set(sub)
            out_w = [p[i][j] for i in s for j in range(n) if j not in s and p[i][j] is not None]
            in_w = [p[j][i] for i in s for j in range(n) if j not in s and p[j][i] is not None]
            if max(out_w, default=None) != max(in_w, default=None):
                return False
    return True


def longest_path_arcs(p) -> int:
    """Longest elementary path (by arc count) avoiding loops, by DFS."""
    n = len(p)
    best = 0

    def dfs(u, seen, length):
        nonlocal best
        best = max(best, length)
        for v in range(n):
            if v not in seen and p[u][v] is not None:
                dfs(v, seen | {v}, length + 1)

    for s in range(n):
        dfs(s, {s}, 0)
    return best


def first_walk_lengths(p, nodes, sigma, upto) -> dict:
    """(i, j, r) -> least length <= upto of an i -> j walk through `nodes`, length = r mod sigma."""
    n = len(p)
    out = {}
    for i in range(n):
        # frontier of (v, met) after each length
        cur = {(i, i in nodes)}
        for t in range(upto + 1):
            for v, met in cur:
                if met:
                    out.setdefault((i, v, t % sigma), t)
            cur = {(w, met or w in nodes) for v, met in cur for w in range(n) if p[v][w] is not None}
    return out

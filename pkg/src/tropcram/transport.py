"""Cramer permanents of an ``(n-1) x n`` max-plus matrix via transportation.

The permanents of the ``n`` maximal minors come out of one transportation
problem: rows supply ``n``, columns demand ``n - 1`` and the profit of a cell
is the matrix entry.  With the optimal dual ``(u, v)`` normalized by
``u[0] = 0``, the permanent of the minor without column ``k`` is
``sum(u) + sum(v) - v[k]``.

The primal solver is the transportation form of the network simplex over
exact rationals.  Cells holding ``-inf`` are excluded arcs.  A first phase
finds a feasible flow by max-flow and prunes its support to a spanning
tree, and pivots then follow Bland's rule (smallest eligible cell first, or
largest first when ``order="reversed"``), which cannot cycle.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .assignment import per_rmax
from .errors import PreconditionError, TransportInfeasible
from .linalg import as_rmax, per
from .semirings import BOTTOM
from .solvers import cramer_permanents_jacobi


@dataclass
class TransportSolution:
    flow: tuple
    u: tuple
    v: tuple
    value: object
    pivots: int
    basis: frozenset

    def normalized(self) -> "TransportSolution":
        """Shift the duals so that ``u[0] = 0``."""
        t = self.u[0]
        return TransportSolution(
            self.flow, tuple(x - t for x in self.u), tuple(x + t for x in self.v),
            self.value, self.pivots, self.basis,
        )


def _max_flow(C, supply, demand) -> Optional[list]:
    """Feasible flow on the allowed cells, or None (Edmonds-Karp)."""
    m, n = len(supply), len(demand)
    src, snk = m + n, m + n + 1
    N = m + n + 2
    cap: dict = {}
    adj = [[] for _ in range(N)]

    def arc(a, b, c):
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = c

    total = sum(supply)
    for i in range(m):
        arc(src, i, supply[i])
        for j in range(n):
            if C[i][j] != BOTTOM:
                arc(i, m + j, total)
    for j in range(n):
        arc(m + j, snk, demand[j])
    flow = 0
    while True:
        prev = {src: None}
        q = deque([src])
        while q and snk not in prev:
            a = q.popleft()
            for b in adj[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    q.append(b)
        if snk not in prev:
            break
        path = []
        b = snk
        while prev[b] is not None:
            path.append((prev[b], b))
            b = prev[b]
        push = min(cap[e] for e in path)
        for a, b in path:
            cap[(a, b)] -= push
            cap[(b, a)] += push
        flow += push
    if flow != total:
        return None
    y = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            if C[i][j] != BOTTOM:
                y[i][j] = cap[(m + j, i)]
    return y


def _tree_path(tree_adj, start, goal):
    """Node path in a forest between two nodes, or None."""
    prev = {start: None}
    q = deque([start])
    while q:
        a = q.popleft()
        if a == goal:
            break
        for b in tree_adj[a]:
            if b not in prev:
                prev[b] = a
                q.append(b)
    if goal not in prev:
        return None
    out = [goal]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def _edges_of(path, m):
    """Cells traversed by a node path (rows are 0..m-1, columns m..)."""
    cells = []
    for a, b in zip(path, path[1:]):
        cells.append((a, b - m) if a < m else (b, a - m))
    return cells


def _adjacency(cells, m, n):
    adj = [set() for _ in range(m + n)]
    for i, j in cells:
        adj[i].add(m + j)
        adj[m + j].add(i)
    return adj


def _initial_tree(C, y, m, n) -> tuple:
    """Prune the support of ``y`` to a forest, then extend to a spanning tree.

    When the allowed cells fall into several components, forbidden cells
    with zero flow join them.  A pivot only touches the component of the
    entering cell, so these connectors never carry flow.
    """
    support = {(i, j) for i in range(m) for j in range(n) if y[i][j] > 0}
    while True:
        cyc = _find_cycle(support, m, n)
        if cyc is None:
            break
        minus = cyc[1::2]
        theta = min(y[i][j] for i, j in minus)
        for k, (i, j) in enumerate(cyc):
            y[i][j] += theta if k % 2 == 0 else -theta
        support = {(i, j) for (i, j) in support if y[i][j] > 0}
    parent = list(range(m + n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in support:
        parent[find(i)] = find(m + j)
    tree = set(support)
    for i in range(m):
        for j in range(n):
            if C[i][j] != BOTTOM and (i, j) not in tree and find(i) != find(m + j):
                parent[find(i)] = find(m + j)
                tree.add((i, j))
    connectors = set()
    for i in range(m):
        for j in range(n):
            if find(i) != find(m + j):
                parent[find(i)] = find(m + j)
                connectors.add((i, j))
    return tree | connectors, connectors


def _find_cycle(cells, m, n):
    """A cycle in the bipartite support graph as an alternating cell list."""
    adj = _adjacency(cells, m, n)
    seen: dict = {}
    for root in range(m + n):
        if root in seen or not adj[root]:
            continue
        seen[root] = None
        stack = [root]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b == seen[a]:
                    continue
                if b in seen:
                    # cycle: path root..a plus path root..b
                    pa = [a]
                    while seen[pa[-1]] is not None:
                        pa.append(seen[pa[-1]])
                    pb = [b]
                    while seen[pb[-1]] is not None:
                        pb.append(seen[pb[-1]])
                    common = set(pa) & set(pb)
                    pa = pa[: next(k for k, x in enumerate(pa) if x in common) + 1]
                    pb = pb[: next(k for k, x in enumerate(pb) if x in common)]
                    nodes = pa[::-1] + pb
                    nodes = nodes + [nodes[0]]
                    return _edges_of(nodes, m)
                seen[b] = a
                stack.append(b)
    return None


def solve_transport(C, supply: Optional[Sequence[int]] = None, demand: Optional[Sequence[int]] = None,
                    order: str = "bland") -> TransportSolution:
    """Maximize ``sum c_ij y_ij`` over the transportation polytope.

    Defaults to supplies ``n`` and demands ``n - 1`` for an ``(n-1) x n``
    matrix.  Raises :class:`TransportInfeasible` when no flow avoids the
    ``-inf`` cells.
    """
    C = as_rmax(C)
    rows = C.rows
    m, n = C.shape
    if supply is None:
        supply = [n] * m
    if demand is None:
        demand = [m] * n
    if sum(supply) != sum(demand):
        raise PreconditionError("supplies and demands must balance")
    if order not in ("bland", "reversed"):
        raise PreconditionError(f"unknown pivot order {order!r}")
    y = _max_flow(rows, supply, demand)
    if y is None:
        raise TransportInfeasible("infeasible: some maximal minor is -inf")
    tree, connectors = _initial_tree(rows, y, m, n)
    # connectors get profit 0 so that potentials stay finite
    prices = [[0 if (i, j) in connectors else rows[i][j] for j in range(n)] for i in range(m)]
    cells = [(i, j) for i in range(m) for j in range(n) if rows[i][j] != BOTTOM]
    if order == "reversed":
        cells.reverse()
    rank = {c: k for k, c in enumerate(cells)}
    pivots = 0
    while True:
        u, v = _potentials(prices, tree, m, n)
        entering = next(
            ((i, j) for (i, j) in cells if (i, j) not in tree and rows[i][j] - u[i] - v[j] > 0),
            None,
        )
        if entering is None:
            break
        i, j = entering
        path = _tree_path(_adjacency(tree, m, n), i, m + j)
        path_cells = _edges_of(path, m)
        minus = path_cells[0::2]
        plus = path_cells[1::2]
        theta = min(y[a][b] for a, b in minus)
        leaving = min((c for c in minus if y[c[0]][c[1]] == theta), key=rank.__getitem__)
        y[i][j] += theta
        for a, b in minus:
            y[a][b] -= theta
        for a, b in plus:
            y[a][b] += theta
        tree.remove(leaving)
        tree.add(entering)
        pivots += 1
    value = sum(rows[i][j] * y[i][j] for i in range(m) for j in range(n) if y[i][j])
    return TransportSolution(
        tuple(tuple(r) for r in y), tuple(u), tuple(v), value, pivots, frozenset(tree)
    ).normalized()


def _potentials(rows, tree, m, n):
    """Duals with ``u_i + v_j = c_ij`` on tree cells and ``u[0] = 0``."""
    adj = _adjacency(tree, m, n)
    val: dict = {0: 0}
    q = deque([0])
    while q:
        a = q.popleft()
        for b in adj[a]:
            if b in val:
                continue
            i, j = (a, b - m) if a < m else (b, a - m)
            val[b] = rows[i][j] - val[a]
            q.append(b)
    return [val[i] for i in range(m)], [val[m + j] for j in range(n)]


def cramer_permanents_transport(C, order: str = "bland") -> tuple:
    """Permanents of all maximal minors of an ``(n-1) x n`` matrix."""
    C = as_rmax(C)
    m, n = C.shape
    if m != n - 1:
        raise PreconditionError(f"(n-1) x n matrix required, got {C.shape}")
    sol = solve_transport(C, order=order)
    su, sv = sum(sol.u), sum(sol.v)
    return tuple(su + sv - sol.v[k] for k in range(n))


def cramer_permanents_via_jacobi(C) -> tuple:
    """Same permanents through one assignment and one longest-path solve.

    Pick a column ``k0`` whose deletion leaves a finite permanent; the
    Cramer permanents of the square system with right-hand side column
    ``k0`` are the permanents of the other maximal minors.
    """
    C = as_rmax(C)
    m, n = C.shape
    if m != n - 1:
        raise PreconditionError(f"(n-1) x n matrix required, got {C.shape}")
    for k0 in range(n):
        M = C.delete_col(k0)
        p0 = per_rmax(M)
        if p0 != BOTTOM:
            break
    else:
        return tuple(BOTTOM for _ in range(n))
    z = cramer_permanents_jacobi(M, C.col(k0))
    others = [j for j in range(n) if j != k0]
    out = [BOTTOM] * n
    out[k0] = p0
    for pos, j in enumerate(others):
        out[j] = z[pos]
    return tuple(out)


def cramer_permanents_brute(C) -> tuple:
    C = as_rmax(C)
    return tuple(per(C.delete_col(k)) for k in range(C.ncols))


@dataclass
class CrossCheck:
    brute: tuple
    jacobi: tuple
    transport: Optional[tuple]
    agree: bool
    timings: dict = field(default_factory=dict)
    note: str = ""


def cross_check_permanents(C) -> CrossCheck:
    """Compare the brute-force, Jacobi and transportation routes."""
    C = as_rmax(C)
    t = {}
    s = time.perf_counter()
    brute = cramer_permanents_brute(C)
    t["brute"] = time.perf_counter() - s
    s = time.perf_counter()
    jac = cramer_permanents_via_jacobi(C)
    t["jacobi"] = time.perf_counter() - s
    s = time.perf_counter()
    try:
        tr = cramer_permanents_transport(C)
        note = ""
    except TransportInfeasible as exc:
        tr, note = None, str(exc)
    t["transport"] = time.perf_counter() - s
    if tr is None:
        agree = brute == jac and any(x == BOTTOM for x in brute)
    else:
        agree = brute == jac == tr
    return CrossCheck(brute, jac, tr, agree, t, note)

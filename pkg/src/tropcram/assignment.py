"""Determinants over 𝕋₂ and 𝕊max through the optimal assignment problem.

After Hungarian scaling the optimal permutations of a max-plus matrix are
exactly the perfect matchings of its tight graph.  Once rows are permuted so
that the identity is optimal, an optimal permutation other than the identity
exists iff the tight graph has a circuit through two or more nodes, and an
optimal permutation of odd parity exists iff it has a circuit of even length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .errors import PreconditionError, StructurallySingular
from .extension import SMAX, T2, Ext
from .linalg import Scaling, TropMatrix, as_rmax, det, hungarian_scaling, inverse_perm
from .semirings import BOTTOM, RMAX, Sign, product_sign

CYCLE_NODE_CAP = 20


@dataclass(frozen=True)
class TightGraph:
    """Equality arcs of a Hungarian dual, after the row permutation that
    makes the identity optimal.  Node ``i`` stands for row ``row_of[i]`` and
    column ``i``; loops are included."""

    n: int
    succ: tuple
    row_of: tuple
    scaling: Scaling

    def arcs(self):
        return [(i, j) for i in range(self.n) for j in self.succ[i]]


def tight_graph(C, scaling: Optional[Scaling] = None) -> TightGraph:
    C = as_rmax(C)
    sc = scaling or hungarian_scaling(C)
    row_of = inverse_perm(sc.sigma)
    n = C.nrows
    succ = tuple(
        frozenset(j for j in range(n) if sc.tight(C, row_of[i], j)) for i in range(n)
    )
    return TightGraph(n, succ, row_of, sc)


def strongly_connected_components(n: int, succ) -> list:
    """Component label of every node (iterative Tarjan)."""
    index = [0] * n
    low = [0] * n
    on = [False] * n
    seen = [False] * n
    comp = [-1] * n
    stack: list = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if seen[root]:
            continue
        work = [(root, iter(succ[root]))]
        seen[root] = True
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def simple_cycles(n: int, succ) -> Iterator[list]:
    """Elementary circuits of length at least two (Johnson's algorithm)."""
    if n > CYCLE_NODE_CAP:
        raise PreconditionError(f"cycle enumeration is capped at {CYCLE_NODE_CAP} nodes, got {n}")
    adj = [sorted(w for w in succ[v] if w != v) for v in range(n)]
    s = 0
    while s < n:
        sub = [[w for w in adj[v] if w >= s] if v >= s else [] for v in range(n)]
        comp = strongly_connected_components(n, sub)
        best = None
        for v in range(s, n):
            if any(comp[w] == comp[v] for w in sub[v]):
                best = v
                break
        if best is None:
            return
        s = best
        members = {v for v in range(s, n) if comp[v] == comp[s]}
        blocked: set = set()
        B: dict = {v: set() for v in members}
        path: list = []

        def unblock(v):
            todo = [v]
            while todo:
                x = todo.pop()
                if x in blocked:
                    blocked.discard(x)
                    todo.extend(B[x])
                    B[x].clear()

        def circuit(v):
            found = False
            path.append(v)
            blocked.add(v)
            for w in adj[v]:
                if w not in members:
                    continue
                if w == s:
                    yield list(path)
                    found = True
                elif w not in blocked:
                    if (yield from circuit(w)):
                        found = True
            if found:
                unblock(v)
            else:
                for w in adj[v]:
                    if w in members:
                        B[w].add(v)
            path.pop()
            return found

        yield from circuit(s)
        s += 1


def find_cycle(G: TightGraph, accept: Callable[[list], bool]) -> Optional[list]:
    for cyc in simple_cycles(G.n, G.succ):
        if accept(cyc):
            return cyc
    return None


def has_multiple_optima(G: TightGraph) -> bool:
    comp = strongly_connected_components(G.n, G.succ)
    return any(comp[i] == comp[j] for i in range(G.n) for j in G.succ[i] if i != j)


def has_odd_optimum_pair(G: TightGraph) -> bool:
    """Optimal permutations of both parities exist (an even circuit)."""
    for i in range(G.n):
        for j in G.succ[i]:
            if j != i and i in G.succ[j]:
                return True
    return find_cycle(G, lambda c: len(c) % 2 == 0) is not None


def path_in(G: TightGraph, src: int, dst: int, allowed=None) -> Optional[list]:
    """Breadth-first path ``src -> ... -> dst`` in the tight graph."""
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(G.succ[v]):
                if w in prev or (allowed is not None and w not in allowed):
                    continue
                prev[w] = v
                if w == dst:
                    out = [w]
                    while prev[out[-1]] is not None:
                        out.append(prev[out[-1]])
                    return out[::-1]
                nxt.append(w)
        frontier = nxt
    return None


# ---------------------------------------------------------------------------


def per_rmax(C):
    try:
        return hungarian_scaling(C).per
    except StructurallySingular:
        return BOTTOM


def det_t2(A: TropMatrix):
    """Determinant over 𝕋₂: ``t2`` iff the maximum is attained twice."""
    if A.S is not T2:
        raise PreconditionError("det_t2 expects a 𝕋₂ matrix")
    if A.nrows == 0:
        return T2.one
    M = A.moduli()
    try:
        G = tight_graph(M)
    except StructurallySingular:
        return T2.zero
    value = G.scaling.per
    if any(A[G.row_of[i], i][0] == 2 for i in range(G.n)) or has_multiple_optima(G):
        return Ext(2, value)
    return Ext(1, value)


def det_sign_rmax(A: TropMatrix):
    """Determinant over 𝕊max of a matrix whose entries are positive or zero."""
    if A.S is not SMAX:
        raise PreconditionError("det_sign_rmax expects an 𝕊max matrix")
    if any(x[0] not in (Sign.Z, Sign.P) for r in A.rows for x in r):
        raise PreconditionError("entries must be positive or zero")
    if A.nrows == 0:
        return SMAX.one
    try:
        G = tight_graph(A.moduli())
    except StructurallySingular:
        return SMAX.zero
    value = G.scaling.per
    if has_odd_optimum_pair(G):
        return Ext(Sign.B, value)
    return Ext(Sign.N if product_sign(G.scaling.sigma) else Sign.P, value)


def det_smax(A: TropMatrix):
    """Determinant over 𝕊max.

    Balanced entries on an optimal permutation make the result balanced.
    Otherwise they cannot reach the leading terms and are dropped, and the
    signed matrix ``A⁺ ⊖ A⁻`` is handled through the sign-free block matrix
    ``[[A⁺, A⁻], [I, I]]`` whose determinant is the same.
    """
    if A.S is not SMAX:
        raise PreconditionError("det_smax expects an 𝕊max matrix")
    n = A.nrows
    if n == 0:
        return SMAX.one
    try:
        G = tight_graph(A.moduli())
    except StructurallySingular:
        return SMAX.zero
    value = G.scaling.per
    row_of = G.row_of
    if any(A[row_of[i], i][0] == Sign.B for i in range(n)):
        return Ext(Sign.B, value)
    comp = strongly_connected_components(n, G.succ)
    for i in range(n):
        for j in G.succ[i]:
            if j != i and comp[i] == comp[j] and A[row_of[i], j][0] == Sign.B:
                return Ext(Sign.B, value)
    zero, one = SMAX.zero, SMAX.one
    top = []
    for r in A.rows:
        plus = [Ext(Sign.P, x[1]) if x[0] == Sign.P else zero for x in r]
        minus = [Ext(Sign.P, x[1]) if x[0] == Sign.N else zero for x in r]
        top.append(plus + minus)
    bottom = [[one if j in (i, i + n) else zero for j in range(2 * n)] for i in range(n)]
    return det_sign_rmax(TropMatrix.from_rows(SMAX, top + bottom))


def fast_det(A: TropMatrix):
    """Determinant by the fastest exact method available for the semiring."""
    if A.S is SMAX:
        return det_smax(A)
    if A.S is T2:
        return det_t2(A)
    if A.S is RMAX:
        return per_rmax(A)
    return det(A)

"""Solving linear balances ``A x ∇ b`` for thin ``x``.

The iterative solvers follow a monotone scheme: starting from ``x = 0`` each
sweep replaces a coordinate by a thin element that is above the previous
value and strongly balances the current right-hand side.  On 𝕊max and 𝕋₂ the
iterates stop moving after at most ``n`` sweeps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .assignment import (
    find_cycle,
    path_in,
    per_rmax,
    strongly_connected_components,
    tight_graph,
    fast_det,
)
from .errors import (
    NoMonotoneWitness,
    PreconditionError,
    StructurallySingular,
    TropcramError,
    UnsupportedSemiring,
)
from .extension import iota
from .linalg import (
    TropMatrix,
    butkovic_normal_form,
    frobenius_konig,
    hungarian_scaling,
    inverse_perm,
    mat_vec,
)
from .semirings import BOTTOM, RMAX, Semiring

POLICIES = ("prefer-positive", "prefer-negative", "random")


@dataclass
class SolverConfig:
    """Choices left open by the algorithms.

    ``policy`` picks among thin witnesses during the iteration,
    ``diag_policy`` picks the thin part of a balanced diagonal entry (defaults
    to ``policy``).  ``max_sweeps`` defaults to ``4 n + 4``.
    """

    policy: str = "prefer-positive"
    diag_policy: Optional[str] = None
    seed: Optional[int] = None
    max_sweeps: Optional[int] = None

    def __post_init__(self):
        for p in (self.policy, self.diag_policy):
            if p is not None and p not in POLICIES:
                raise PreconditionError(f"unknown policy {p!r}; choose from {POLICIES}")
        self._rng = random.Random(self.seed)

    def choose(self, candidates: Sequence[Any], diagonal: bool = False) -> Any:
        policy = (self.diag_policy or self.policy) if diagonal else self.policy
        if policy == "prefer-positive":
            return candidates[0]
        if policy == "prefer-negative":
            return candidates[-1]
        return self._rng.choice(list(candidates))


@dataclass
class JacobiDecomposition:
    """``A = D ⊕ N`` with ``D`` thin diagonal of full determinant modulus."""

    diag: tuple
    N: TropMatrix


@dataclass
class IterationResult:
    solution: tuple
    trace: list
    sweeps: int
    row_of: tuple
    decomposition: JacobiDecomposition


@dataclass
class SolveReport:
    status: str
    solution: Optional[tuple] = None
    det: Any = None
    cramer: Optional[tuple] = None
    all_solutions_modulus: Optional[tuple] = None
    iterations: Optional[int] = None
    trace: list = field(default_factory=list)
    notes: list = field(default_factory=list)


STATUSES = (
    "unique",
    "exists_non_unique",
    "balanced_determinant",
    "structurally_singular",
    "no_thin_certificate",
)


def _need_modulus(S: Semiring) -> None:
    if S.modulus is None or S.base is None:
        raise UnsupportedSemiring(f"{S.name} has no modulus; iterative solvers need an extension semiring")
    if not S.has("inverse_transfer"):
        raise UnsupportedSemiring(f"{S.name} does not satisfy the inverse transfer property")


def strong_balance(S: Semiring, x, y) -> bool:
    return x[1] == y[1] and S.balances(x, y)


def balances_vec(S: Semiring, left: Sequence[Any], right: Sequence[Any]) -> bool:
    return all(S.balances(a, b) for a, b in zip(left, right))


# ---------------------------------------------------------------------------
# Normalization and decomposition


def normalize_rows(A: TropMatrix, b: Sequence[Any]):
    """Permute rows so that the identity is an optimal assignment of ``|A|``."""
    try:
        sc = hungarian_scaling(A.moduli())
    except StructurallySingular:
        raise
    row_of = inverse_perm(sc.sigma)
    A2 = TropMatrix(A.S, tuple(A.rows[r] for r in row_of))
    b2 = tuple(b[r] for r in row_of)
    return A2, b2, row_of


def _complement(S: Semiring, d, a):
    """Smallest simple ``c`` with ``d ⊕ c = a`` among a few natural candidates."""
    for c in (S.zero, S.neg(d), a):
        if S.add(d, c) == a:
            return c
    for c in S.thin_parts(a):
        if S.add(d, c) == a:
            return c
    raise TropcramError(f"no complement of {S.fmt(d)} in {S.fmt(a)}")


def jacobi_decompose(A: TropMatrix, config: Optional[SolverConfig] = None) -> JacobiDecomposition:
    """Split a dominant-diagonal matrix as ``D ⊕ N``.

    A thin diagonal entry goes to ``D`` whole.  A non-thin one is split into
    a thin witness (chosen by ``config.diag_policy``) and a complement.
    """
    config = config or SolverConfig()
    S = A.S
    _need_modulus(S)
    n = A.nrows
    if A.ncols != n:
        raise PreconditionError("square matrix required")
    diag_mod = sum(A[i, i][1] for i in range(n)) if n else 0
    if n and (diag_mod == BOTTOM or per_rmax(A.moduli()) != diag_mod):
        raise PreconditionError("matrix is not dominant-diagonal; permute rows first")
    diag = []
    N = [list(r) for r in A.rows]
    for i in range(n):
        a = A[i, i]
        if S.is_thin(a):
            d, c = a, S.zero
        else:
            d = config.choose(S.witnesses(a), diagonal=True)
            c = _complement(S, d, a)
        diag.append(d)
        N[i][i] = c
    return JacobiDecomposition(tuple(diag), TropMatrix.from_rows(S, N))


def next_thin(S: Semiring, prev, target, config: SolverConfig):
    """Thin ``z`` with ``prev ⪯ z ⪯ target`` and ``z ∇| target``."""
    if prev[1] > target[1] or not S.leq(prev, target):
        raise NoMonotoneWitness(
            f"iterate {S.fmt(prev)} is not below the target {S.fmt(target)}"
        )
    if prev != S.zero and prev[1] == target[1]:
        if strong_balance(S, prev, target):
            return prev
        raise NoMonotoneWitness(
            f"{S.fmt(prev)} is below {S.fmt(target)} but does not balance it"
        )
    if S.is_thin(target):
        return target
    cands = [
        w for w in S.witnesses(target)
        if S.is_thin(w) and S.leq(prev, w) and S.leq(w, target) and strong_balance(S, w, target)
    ]
    if not cands:
        raise NoMonotoneWitness(f"no thin element strongly balances {S.fmt(target)}")
    return config.choose(cands)


def _iterate(A, b, config, decomposition, gauss_seidel: bool) -> IterationResult:
    config = config or SolverConfig()
    S = A.S
    _need_modulus(S)
    n = A.nrows
    if A.ncols != n or len(b) != n:
        raise PreconditionError("square system required")
    if decomposition is None:
        A2, b2, row_of = normalize_rows(A, b)
        dec = jacobi_decompose(A2, config)
    else:
        A2, b2, row_of, dec = A, tuple(b), tuple(range(n)), decomposition
    Dinv = [S.inv(d) for d in dec.diag]
    N = dec.N.rows
    add, mul, neg = S.add, S.mul, S.neg
    x = [S.zero] * n
    trace = [tuple(x)]
    cap = config.max_sweeps if config.max_sweeps is not None else 4 * n + 4
    for sweep in range(1, cap + 2):
        new = list(x)
        src = new if gauss_seidel else x
        for i in range(n):
            acc = S.zero
            row = N[i]
            for j in range(n):
                acc = add(acc, mul(row[j], src[j]))
            target = mul(Dinv[i], add(neg(acc), b2[i]))
            new[i] = next_thin(S, x[i], target, config)
        if new == x:
            break
        if sweep > cap:
            raise TropcramError(f"no stationary point after {cap} sweeps")
        x = new
        trace.append(tuple(x))
    sol = tuple(x)
    if not balances_vec(S, mat_vec(A, sol), b):
        raise TropcramError("internal error: stationary point does not solve the system")
    return IterationResult(sol, trace, len(trace) - 1, row_of, dec)


def jacobi_solve(A: TropMatrix, b: Sequence[Any], config: Optional[SolverConfig] = None,
                 decomposition: Optional[JacobiDecomposition] = None) -> IterationResult:
    """Monotone Jacobi iteration ``D x' ∇| ⊖N x ⊕ b`` from ``x = 0``.

    Without an explicit decomposition the rows are first permuted so that
    the identity is an optimal assignment (the lexicographically smallest
    one).  ``sweeps`` counts the sweeps until the iterates stop moving.
    """
    return _iterate(A, b, config, decomposition, gauss_seidel=False)


def gauss_seidel_solve(A: TropMatrix, b: Sequence[Any], config: Optional[SolverConfig] = None,
                       decomposition: Optional[JacobiDecomposition] = None) -> IterationResult:
    """Like :func:`jacobi_solve` but each coordinate uses the values already
    updated in the current sweep."""
    return _iterate(A, b, config, decomposition, gauss_seidel=True)


# ---------------------------------------------------------------------------
# Cramer


def cramer_vector(A: TropMatrix, b: Sequence[Any]) -> tuple:
    """``A^adj b``; entry ``i`` is the determinant with column ``i`` replaced by ``b``."""
    return tuple(fast_det(A.replace_col(i, b)) for i in range(A.ncols))


def cramer_solve(A: TropMatrix, b: Sequence[Any], config: Optional[SolverConfig] = None) -> SolveReport:
    config = config or SolverConfig()
    S = A.S
    if not S.has("strong_elimination"):
        raise UnsupportedSemiring(f"{S.name} does not allow strong balance elimination")
    n = A.nrows
    if A.ncols != n or len(b) != n:
        raise PreconditionError("square system required")
    d = fast_det(A)
    if d == S.zero:
        rep = SolveReport("structurally_singular", det=d)
        if all(x == S.zero for x in b) and S.has("tropical"):
            rep.solution = homogeneous_solve(A, config).solution
        return rep
    xhat = cramer_vector(A, b)
    rep = SolveReport("", det=d, cramer=xhat)
    if S.modulus is not None and d[1] != BOTTOM:
        rep.all_solutions_modulus = tuple(
            BOTTOM if v[1] == BOTTOM else v[1] - d[1] for v in xhat)
    if S.is_invertible(d) and S.is_thin(d):
        if all(S.is_thin(v) for v in xhat):
            dinv = S.inv(d)
            rep.status = "unique"
            rep.solution = tuple(S.mul(dinv, v) for v in xhat)
            if not balances_vec(S, mat_vec(A, rep.solution), b):
                raise TropcramError("internal error: Cramer solution fails to balance")
            return rep
        rep.status = "exists_non_unique"
    else:
        rep.status = "balanced_determinant"
        if not S.is_balanced(d):
            rep.notes.append("determinant is neither thin nor balanced")
    if S.base is not None and S.modulus is not None and d[1] != BOTTOM:
        it = jacobi_solve(A, b, config)
        rep.solution, rep.iterations, rep.trace = it.solution, it.sweeps, it.trace
    return rep


# ---------------------------------------------------------------------------
# Homogeneous systems


def _need_homogeneous(S: Semiring) -> None:
    _need_modulus(S)
    missing = [t for t in ("weak_elimination", "order_witness", "tropical") if not S.has(t)]
    if missing:
        raise UnsupportedSemiring(f"{S.name} lacks {', '.join(missing)} needed for homogeneous systems")


@dataclass
class HatResult:
    hat: tuple
    solution: tuple
    thin: bool


def homogeneous_hat(A: TropMatrix, config: Optional[SolverConfig] = None) -> HatResult:
    """Signed maximal minors of an ``n x (n+1)`` matrix, and a thin solution
    of ``A x ∇ 0`` with the same moduli."""
    S = A.S
    n, m = A.shape
    if m != n + 1:
        raise PreconditionError(f"n x (n+1) matrix required, got {A.shape}")
    hat = tuple(
        S.mul(S.sign_pow(n - k), fast_det(A.delete_col(k))) for k in range(m)
    )
    thin = all(S.is_thin(h) for h in hat)
    nonzero = [k for k in range(m) if hat[k] != S.zero]
    if not nonzero:
        return HatResult(hat, tuple(S.zero for _ in range(m)), thin)
    _need_modulus(S)
    k0 = nonzero[-1]
    M = A.delete_col(k0)
    rhs = tuple(S.neg(v) for v in A.col(k0))
    y = jacobi_solve(M, rhs, config).solution if n else ()
    t = iota(hat[k0][1], S)
    x = list(S.mul(t, v) for v in y)
    x.insert(k0, t)
    return HatResult(hat, tuple(x), thin)


def homogeneous_solve(A: TropMatrix, config: Optional[SolverConfig] = None) -> SolveReport:
    """Thin nonzero ``x`` with ``A x ∇ 0``, which exists iff ``det A`` is balanced.

    The status is ``structurally_singular`` when ``det A = 0``,
    ``balanced_determinant`` for another balanced determinant, and
    ``no_thin_certificate`` when the determinant is not balanced.
    """
    config = config or SolverConfig()
    S = A.S
    _need_homogeneous(S)
    n = A.nrows
    if A.ncols != n or n == 0:
        raise PreconditionError("nonempty square matrix required")
    d = fast_det(A)
    if not S.is_balanced(d):
        return SolveReport("no_thin_certificate", det=d)
    x = _homogeneous(A, config)
    if not (all(S.is_thin(v) for v in x) and any(v != S.zero for v in x)):
        raise TropcramError("internal error: homogeneous solution is not thin and nonzero")
    if not all(S.is_balanced(v) for v in mat_vec(A, x)):
        raise TropcramError("internal error: homogeneous solution fails to balance")
    status = "structurally_singular" if d == S.zero else "balanced_determinant"
    return SolveReport(status, solution=x, det=d)


def _homogeneous(A: TropMatrix, config: SolverConfig) -> tuple:
    S = A.S
    n = A.nrows
    M = A.moduli()
    try:
        nf = butkovic_normal_form(M)
    except StructurallySingular:
        return _singular_case(A, M, config)
    u, v, row_of = nf.scaling.u, nf.scaling.v, nf.row_of
    # rows permuted and scaled so that the moduli are <= 0 with a zero diagonal
    A1 = [
        [S.mul(A[row_of[i], j], iota(-(u[row_of[i]] + v[j]), S)) for j in range(n)]
        for i in range(n)
    ]
    G = tight_graph(nf.B)
    xs = _balanced_entry_case(S, A1, G, config)
    if xs is None:
        xs = _opposite_cycle_case(S, A1, G, config)
    return tuple(S.mul(xs[j], iota(-v[j], S)) for j in range(n))


def _singular_case(A: TropMatrix, M: TropMatrix, config: SolverConfig) -> tuple:
    """``det A = 0``: use an all-zero block to drop to fewer unknowns."""
    S = A.S
    n = A.nrows
    block = frobenius_konig(M)
    other_rows = [r for r in range(n) if r not in block.rows]
    cols = list(block.cols[: len(other_rows) + 1])
    x = [S.zero] * n
    if not other_rows:
        x[cols[0]] = S.one
        return tuple(x)
    y = _rectangular(A.submatrix(other_rows, cols), config)
    for c, val in zip(cols, y):
        x[c] = val
    return tuple(x)


def _rectangular(C: TropMatrix, config: SolverConfig) -> tuple:
    """Thin nonzero solution of an ``m x (m+1)`` system ``C y ∇ 0``."""
    S = C.S
    res = homogeneous_hat(C, config)
    if any(h != S.zero for h in res.hat):
        return res.solution
    # every maximal minor vanishes: drop the first unknown and recurse
    y = _homogeneous(C.delete_col(0), config)
    return (S.zero,) + tuple(y)


def _jacobi_block(S, A1, rows, cols, rhs, config) -> tuple:
    F = TropMatrix.from_rows(S, [[A1[i][j] for j in cols] for i in rows])
    return jacobi_solve(F, rhs, config).solution


def _balanced_entry_case(S, A1, G, config) -> Optional[tuple]:
    """An optimal permutation through a balanced entry: fix that unknown to 1."""
    n = len(A1)
    sigma = None
    pivot = None
    for i in range(n):
        if S.is_balanced(A1[i][i]):
            sigma, pivot = list(range(n)), i
            break
    if sigma is None:
        comp = strongly_connected_components(n, G.succ)
        for i in range(n):
            for j in sorted(G.succ[i]):
                if j != i and comp[i] == comp[j] and S.is_balanced(A1[i][j]):
                    back = path_in(G, j, i)
                    cyc = [i] + back[:-1]
                    sigma = list(range(n))
                    for k, node in enumerate(cyc):
                        sigma[node] = cyc[(k + 1) % len(cyc)]
                    pivot = j
                    break
            if sigma is not None:
                break
    if sigma is None:
        return None
    # row r of A1 moves to position sigma[r]; the balanced entry lands on
    # the diagonal at column ``pivot``
    A2 = [None] * n
    for r in range(n):
        A2[sigma[r]] = A1[r]
    rest = [k for k in range(n) if k != pivot]
    x = [S.zero] * n
    x[pivot] = S.one
    if rest:
        rhs = tuple(S.neg(A2[i][pivot]) for i in rest)
        y = _jacobi_block(S, A2, rest, rest, rhs, config)
        for k, val in zip(rest, y):
            x[k] = val
    return tuple(x)


def _opposite_cycle_case(S, A1, G, config) -> tuple:
    """Two optimal permutations of opposite weight: follow a circuit."""
    n = len(A1)
    A3 = []
    for i in range(n):
        d = S.inv(A1[i][i])
        A3.append([S.mul(d, a) for a in A1[i]])

    def cancels(cyc):
        w = S.prod(A3[cyc[k]][cyc[(k + 1) % len(cyc)]] for k in range(len(cyc)))
        return S.is_balanced(S.add(S.one, S.mul(S.sign_pow(len(cyc) - 1), w)))

    cyc = find_cycle(G, cancels)
    if cyc is None:
        raise TropcramError("internal error: balanced determinant without a cancelling circuit")
    p = len(cyc)
    z = {cyc[-1]: S.one}
    for k in range(p - 2, -1, -1):
        z[cyc[k]] = S.neg(S.mul(A3[cyc[k]][cyc[k + 1]], z[cyc[k + 1]]))
    x = [S.zero] * n
    for k, val in z.items():
        x[k] = val
    rest = [k for k in range(n) if k not in z]
    if rest:
        rhs = tuple(S.neg(S.sum(S.mul(A3[i][k], z[k]) for k in cyc)) for i in rest)
        y = _jacobi_block(S, A3, rest, rest, rhs, config)
        for k, val in zip(rest, y):
            x[k] = val
    return tuple(x)


# ---------------------------------------------------------------------------
# Max-plus Cramer permanents


def cramer_permanents_jacobi(A, b) -> tuple:
    """All permanents of ``A`` with one column replaced by ``b`` (max-plus).

    One assignment problem and one longest-path computation: after scaling
    the rows so that the optimal assignment is the identity with zero
    weights, the adjugate is the Kleene star of the scaled matrix.
    """
    A = A if isinstance(A, TropMatrix) else TropMatrix.from_rows(RMAX, A)
    n = A.nrows
    sc = hungarian_scaling(A)
    row_of = inverse_perm(sc.sigma)
    rows = []
    rhs = []
    for i in range(n):
        r = A.rows[row_of[i]]
        dii = r[i]
        rows.append([BOTTOM if a == BOTTOM else a - dii for a in r])
        rhs.append(BOTTOM if b[row_of[i]] == BOTTOM else b[row_of[i]] - dii)
    x = list(rhs)
    for _ in range(n):
        changed = False
        for i in range(n):
            best = x[i]
            for j, a in enumerate(rows[i]):
                if a != BOTTOM and x[j] != BOTTOM and a + x[j] > best:
                    best = a + x[j]
            if best != x[i]:
                x[i] = best
                changed = True
        if not changed:
            break
    return tuple(BOTTOM if v == BOTTOM else v + sc.per for v in x)

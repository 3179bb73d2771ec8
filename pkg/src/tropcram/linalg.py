"""Matrices over semirings with symmetry, and max-plus matrix tools.

Determinants and adjugates are exact signed permanent expansions.  They are
evaluated by dynamic programming over sets of used columns, which is the
same sum of permutation terms regrouped by distributivity, so it runs in
``O(2^n n)`` instead of ``O(n! n)``.  The brute-force size bound is kept as a
guard for callers that want the generic expansion on large inputs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import (
    BruteForceBoundExceeded,
    DivergentStar,
    PreconditionError,
    StructurallySingular,
)
from .semirings import BOTTOM, RMAX, Semiring

DEFAULT_BRUTE_BOUND = 9


def brute_bound() -> int:
    """Largest size accepted by the generic expansion (env override)."""
    raw = os.environ.get("TROPCRAM_BRUTE_BOUND")
    if raw is None:
        return DEFAULT_BRUTE_BOUND
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"TROPCRAM_BRUTE_BOUND must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class TropMatrix:
    S: Semiring
    rows: tuple

    @classmethod
    def from_rows(cls, S: Semiring, rows: Sequence[Sequence[Any]]) -> "TropMatrix":
        rows = tuple(tuple(r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise PreconditionError("ragged matrix")
        return cls(S, rows)

    @classmethod
    def identity(cls, S: Semiring, n: int) -> "TropMatrix":
        return cls(S, tuple(tuple(S.one if i == j else S.zero for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "TropMatrix":
        return TropMatrix(self.S, tuple(zip(*self.rows))) if self.rows else self

    def delete_col(self, k: int) -> "TropMatrix":
        return TropMatrix(self.S, tuple(r[:k] + r[k + 1:] for r in self.rows))

    def delete_row(self, k: int) -> "TropMatrix":
        return TropMatrix(self.S, self.rows[:k] + self.rows[k + 1:])

    def minor(self, i: int, j: int) -> "TropMatrix":
        """Delete row ``i`` and column ``j``."""
        return self.delete_row(i).delete_col(j)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "TropMatrix":
        return TropMatrix(self.S, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def replace_col(self, k: int, col: Sequence[Any]) -> "TropMatrix":
        return TropMatrix(
            self.S, tuple(r[:k] + (c,) + r[k + 1:] for r, c in zip(self.rows, col))
        )

    def map(self, f, S: Semiring | None = None) -> "TropMatrix":
        return TropMatrix(S or self.S, tuple(tuple(f(x) for x in r) for r in self.rows))

    def moduli(self) -> "TropMatrix":
        """Entrywise modulus, as a max-plus matrix."""
        if self.S.modulus is None:
            raise PreconditionError(f"{self.S.name} has no modulus")
        return self.map(self.S.modulus, RMAX)

    def format(self) -> str:
        return "\n".join(" ".join(self.S.fmt(x) for x in r) for r in self.rows)


def mat_mul(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    if A.ncols != B.nrows:
        raise PreconditionError(f"shape mismatch {A.shape} x {B.shape}")
    S = A.S
    cols = [B.col(j) for j in range(B.ncols)]
    return TropMatrix(
        S,
        tuple(tuple(S.sum(map(S.mul, r, c)) for c in cols) for r in A.rows),
    )


def mat_vec(A: TropMatrix, x: Sequence[Any]) -> tuple:
    if A.ncols != len(x):
        raise PreconditionError(f"shape mismatch {A.shape} x {len(x)}")
    S = A.S
    return tuple(S.sum(map(S.mul, r, x)) for r in A.rows)


def _require_square(A: TropMatrix) -> int:
    if A.nrows != A.ncols:
        raise PreconditionError(f"square matrix required, got {A.shape}")
    return A.nrows


def _check_bound(n: int, bound) -> None:
    limit = brute_bound() if bound is None else bound
    if n > limit:
        raise BruteForceBoundExceeded(
            f"permutation expansion refused for n={n} > {limit}; "
            "raise the bound or set TROPCRAM_BRUTE_BOUND"
        )


def _expand(S: Semiring, rows: Sequence[Sequence[Any]], signed: bool) -> dict:
    """Sum over injective row-to-column assignments, keyed by used columns.

    Choosing column ``c`` after the columns in ``mask`` adds one inversion per
    used column larger than ``c``, which gives the permutation sign.
    """
    zero, add, mul, neg = S.zero, S.add, S.mul, S.neg
    layer = {0: S.one}
    for r in rows:
        nxt: dict = {}
        nz = [(c, a) for c, a in enumerate(r) if a != zero]
        for mask, val in layer.items():
            for c, a in nz:
                bit = 1 << c
                if mask & bit:
                    continue
                term = mul(val, a)
                if term == zero:
                    continue
                if signed and bin(mask >> (c + 1)).count("1") & 1:
                    term = neg(term)
                key = mask | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else add(prev, term)
        layer = nxt
    return layer


def det(A: TropMatrix, bound: int | None = None) -> Any:
    """Signed permanent expansion ``⊕_σ sgn(σ) ⊗_i A[i, σ(i)]``."""
    n = _require_square(A)
    _check_bound(n, bound)
    return _expand(A.S, A.rows, True).get((1 << n) - 1, A.S.zero)


def per(A: TropMatrix, bound: int | None = None) -> Any:
    """Permanent, the same expansion without signs."""
    n = _require_square(A)
    _check_bound(n, bound)
    return _expand(A.S, A.rows, False).get((1 << n) - 1, A.S.zero)


def adjugate(A: TropMatrix, bound: int | None = None, signed: bool = True) -> TropMatrix:
    """``adj[i][j] = (⊖1)^(i+j) det A(j, i)``."""
    n = _require_square(A)
    _check_bound(n, bound)
    S = A.S
    full = (1 << n) - 1
    out = [[S.zero] * n for _ in range(n)]
    for j in range(n):
        layer = _expand(S, A.rows[:j] + A.rows[j + 1:], signed)
        for i in range(n):
            val = layer.get(full ^ (1 << i), S.zero)
            if signed and (i + j) % 2:
                val = S.neg(val)
            out[i][j] = val
    return TropMatrix(S, tuple(tuple(r) for r in out))


# ---------------------------------------------------------------------------
# Max-plus matrices (entries are ints, Fractions or BOTTOM)


def _mp(a, b):
    return BOTTOM if a == BOTTOM or b == BOTTOM else a + b


def as_rmax(A) -> TropMatrix:
    if isinstance(A, TropMatrix):
        if A.S is not RMAX:
            raise PreconditionError(f"max-plus matrix required, got {A.S.name}")
        return A
    return TropMatrix.from_rows(RMAX, A)


def kleene_star(A) -> TropMatrix:
    """``I ⊕ A ⊕ A² ⊕ …`` for a max-plus matrix without positive circuits."""
    A = as_rmax(A)
    n = _require_square(A)
    W = [list(r) for r in A.rows]
    for k in range(n):
        Wk = W[k]
        for i in range(n):
            wik = W[i][k]
            if wik == BOTTOM:
                continue
            Wi = W[i]
            for j in range(n):
                if Wk[j] != BOTTOM and wik + Wk[j] > Wi[j]:
                    Wi[j] = wik + Wk[j]
    for i in range(n):
        if W[i][i] != BOTTOM and W[i][i] > 0:
            raise DivergentStar(f"circuit of positive weight through node {i}", circuit_node=i)
        W[i][i] = 0
    return TropMatrix.from_rows(RMAX, W)


def yoeli_adjugate(A) -> TropMatrix:
    """Adjugate of a unit-diagonal matrix of permanent one, read off the star."""
    A = as_rmax(A)
    n = _require_square(A)
    if any(A[i, i] != 0 for i in range(n)):
        raise PreconditionError("unit diagonal required")
    if n and hungarian_scaling(A).per != 0:
        raise PreconditionError("permanent must be the unit")
    return kleene_star(A)


@dataclass(frozen=True)
class Scaling:
    """Dual certificate of an optimal assignment.

    ``C[i][j] <= u[i] + v[j]`` everywhere, with equality along ``sigma``
    (and along every other optimal permutation); ``per = sum(u) + sum(v)``.
    """

    u: tuple
    v: tuple
    sigma: tuple
    per: Any

    def tight(self, C: TropMatrix, i: int, j: int) -> bool:
        c = C[i, j]
        return c != BOTTOM and c == self.u[i] + self.v[j]


def _hungarian(rows) -> tuple | None:
    """Minimum-cost assignment on costs ``-C`` with shortest augmenting paths."""
    n = len(rows)
    INF = float("inf")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = -1
            row = rows[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                c = row[j - 1]
                if c != BOTTOM:
                    cur = -c - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if delta == INF:
                return None
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return tuple(-x for x in u[1:]), tuple(-x for x in v[1:])


def _perfect_matching(n: int, adj: list, rows: Sequence[int], cols: set) -> bool:
    """Kuhn's algorithm restricted to the given rows and columns."""
    match: dict = {}

    def augment(r, seen):
        for c in adj[r]:
            if c in cols and c not in seen:
                seen.add(c)
                if c not in match or augment(match[c], seen):
                    match[c] = r
                    return True
        return False

    return all(augment(r, set()) for r in rows)


def hungarian_scaling(C) -> Scaling:
    """Optimal assignment with dual variables, exact over the rationals.

    ``sigma`` is the lexicographically smallest optimal permutation.  Raises
    :class:`StructurallySingular` (with a Frobenius-König block) when every
    permutation meets a ``-inf`` entry.
    """
    C = as_rmax(C)
    n = _require_square(C)
    if n == 0:
        return Scaling((), (), (), 0)
    res = _hungarian(C.rows)
    if res is None:
        w = frobenius_konig(C)
        raise StructurallySingular("permanent is -inf", witness=w)
    u, v = res
    tight = [[j for j in range(n) if C[i, j] != BOTTOM and C[i, j] == u[i] + v[j]] for i in range(n)]
    sigma = []
    used: set = set()
    for i in range(n):
        for j in tight[i]:
            if j in used:
                continue
            rest = set(range(n)) - used - {j}
            if _perfect_matching(n, tight, range(i + 1, n), rest):
                sigma.append(j)
                used.add(j)
                break
    return Scaling(u, v, tuple(sigma), sum(u) + sum(v))


def inverse_perm(sigma: Sequence[int]) -> tuple:
    inv = [0] * len(sigma)
    for i, j in enumerate(sigma):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class NormalForm:
    """``B = Σ D C D'`` with ``B`` unit-diagonal and entries at most the unit.

    ``row_of[i]`` is the row of ``C`` placed at position ``i``; ``D`` and
    ``D'`` are the diagonal scalings ``-u`` and ``-v``.
    """

    B: TropMatrix
    row_of: tuple
    scaling: Scaling

    def matrices(self):
        n = len(self.row_of)
        u, v = self.scaling.u, self.scaling.v
        D = TropMatrix.from_rows(RMAX, [[-u[i] if i == j else BOTTOM for j in range(n)] for i in range(n)])
        Dp = TropMatrix.from_rows(RMAX, [[-v[i] if i == j else BOTTOM for j in range(n)] for i in range(n)])
        P = TropMatrix.from_rows(
            RMAX, [[0 if j == self.row_of[i] else BOTTOM for j in range(n)] for i in range(n)]
        )
        return P, D, Dp


def butkovic_normal_form(C) -> NormalForm:
    C = as_rmax(C)
    n = _require_square(C)
    sc = hungarian_scaling(C)
    row_of = inverse_perm(sc.sigma)
    B = [[_mp(C[row_of[i], j], -(sc.u[row_of[i]] + sc.v[j])) for j in range(n)] for i in range(n)]
    return NormalForm(TropMatrix.from_rows(RMAX, B), row_of, sc)


@dataclass(frozen=True)
class ZeroBlock:
    """Rows and columns spanning an all ``-inf`` block with ``p + q > n``."""

    rows: tuple
    cols: tuple


def frobenius_konig(C) -> ZeroBlock:
    """Certificate that the permanent is ``-inf``.

    Computed from a maximum matching through König's theorem, which gives a
    block with ``p + q = 2n - ν >= n + 1`` (``ν`` the matching number);
    surplus columns are then dropped so that ``p + q = n + 1``.
    """
    C = as_rmax(C)
    n = _require_square(C)
    adj = [[j for j in range(n) if C[i, j] != BOTTOM] for i in range(n)]
    match_col: dict = {}

    def augment(r, seen):
        for c in adj[r]:
            if c not in seen:
                seen.add(c)
                if c not in match_col or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        augment(r, set())
    if len(match_col) == n:
        raise PreconditionError("matrix has a finite permanent")
    matched_rows = set(match_col.values())
    zr = {r for r in range(n) if r not in matched_rows}
    zc: set = set()
    frontier = list(zr)
    while frontier:
        r = frontier.pop()
        for c in adj[r]:
            if c not in zc:
                zc.add(c)
                r2 = match_col.get(c)
                if r2 is not None and r2 not in zr:
                    zr.add(r2)
                    frontier.append(r2)
    rows = tuple(sorted(zr))
    cols = tuple(c for c in range(n) if c not in zc)
    return ZeroBlock(rows, cols[: n + 1 - len(rows)])

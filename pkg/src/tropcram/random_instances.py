"""Seeded random instances for tests, experiments and the CLI."""

from __future__ import annotations

import random
from typing import Sequence

from .assignment import fast_det, per_rmax
from .extension import SMAX, Ext
from .linalg import TropMatrix
from .semirings import BOTTOM, RMAX, Semiring, Sign


def rmax_matrix(rng: random.Random, rows: int, cols: int, lo: int = -5, hi: int = 5,
                p_bottom: float = 0.0) -> TropMatrix:
    return TropMatrix.from_rows(
        RMAX,
        [[BOTTOM if rng.random() < p_bottom else rng.randint(lo, hi) for _ in range(cols)]
         for _ in range(rows)],
    )


def ext_element(rng: random.Random, S: Semiring, mags: Sequence[int], p_zero: float, p_nonthin: float):
    if rng.random() < p_zero:
        return S.zero
    coeffs = [c for c in S.base.elements if c != S.base.zero] if S.base.elements else None
    if coeffs is None:
        while True:
            c = S.base.sample(rng)
            if c != S.base.zero:
                break
    else:
        thin = [c for c in coeffs if S.base.is_thin(c)]
        other = [c for c in coeffs if not S.base.is_thin(c)]
        c = rng.choice(other) if other and rng.random() < p_nonthin else rng.choice(thin)
    return Ext(c, rng.choice(mags))


def ext_matrix(rng: random.Random, S: Semiring, rows: int, cols: int,
               mags: Sequence[int] = (-2, -1, 0, 1, 2), p_zero: float = 0.15,
               p_nonthin: float = 0.15) -> TropMatrix:
    return TropMatrix.from_rows(
        S, [[ext_element(rng, S, mags, p_zero, p_nonthin) for _ in range(cols)] for _ in range(rows)]
    )


def ext_vector(rng: random.Random, S: Semiring, n: int, mags=(-2, -1, 0, 1, 2),
               p_zero: float = 0.15, p_nonthin: float = 0.15) -> tuple:
    return tuple(ext_element(rng, S, mags, p_zero, p_nonthin) for _ in range(n))


def dominant_system(rng: random.Random, S: Semiring, n: int, p_nonthin: float = 0.2):
    """Matrix with a finite permanent whose diagonal is an optimal assignment."""
    while True:
        A = ext_matrix(rng, S, n, n, mags=(-2, -1, 0, 1), p_zero=0.2, p_nonthin=p_nonthin)
        rows = [list(r) for r in A.rows]
        for i in range(n):
            if rng.random() < 0.7:
                c = rows[i][i][0] if rows[i][i] != S.zero else S.base.one
                rows[i][i] = Ext(c, rng.choice((1, 2)))
        A = TropMatrix.from_rows(S, rows)
        if per_rmax(A.moduli()) == sum(A[i, i][1] for i in range(n)) != BOTTOM:
            return A, ext_vector(rng, S, n, p_nonthin=p_nonthin)


def _shuffle(rng: random.Random, rows: list) -> TropMatrix:
    n = len(rows)
    rp = list(range(n))
    cp = list(range(n))
    rng.shuffle(rp)
    rng.shuffle(cp)
    return TropMatrix.from_rows(SMAX, [[rows[rp[i]][cp[j]] for j in range(n)] for i in range(n)])


def balanced_det_smax(rng: random.Random, n: int) -> TropMatrix:
    """𝕊max matrix with a balanced determinant, built by one of three plants:
    a balanced entry on the optimal assignment, two optimal assignments of
    opposite weight, or an all-zero block."""
    while True:
        kind = rng.choice((0, 1, 2) if n > 1 else (0, 2))
        rows = [list(r) for r in ext_matrix(rng, SMAX, n, n, mags=(-2, -1, 0), p_zero=0.2, p_nonthin=0.0).rows]
        for i in range(n):
            rows[i][i] = Ext(rng.choice((Sign.P, Sign.N)), rng.choice((1, 2)))
        if kind == 0:
            i = rng.randrange(n)
            rows[i][i] = Ext(Sign.B, rows[i][i][1])
        elif kind == 1:
            i, j = rng.sample(range(n), 2)
            total = rows[i][i][1] + rows[j][j][1]
            m = rng.randint(total - 2, 2)
            s1 = rng.choice((Sign.P, Sign.N))
            s2 = SMAX.base.mul(SMAX.base.mul(rows[i][i][0], rows[j][j][0]), s1)
            rows[i][j] = Ext(s1, m)
            rows[j][i] = Ext(s2, total - m)
        else:
            p = rng.randint(1, n)
            q = n + 1 - p
            rs = rng.sample(range(n), p)
            cs = rng.sample(range(n), q)
            for r in rs:
                for c in cs:
                    rows[r][c] = SMAX.zero
        A = _shuffle(rng, rows)
        if SMAX.is_balanced(fast_det(A)):
            return A


def thin_det_smax(rng: random.Random, n: int) -> TropMatrix:
    while True:
        A = ext_matrix(rng, SMAX, n, n, mags=(-2, -1, 0, 1, 2), p_zero=0.1, p_nonthin=0.1)
        d = fast_det(A)
        if d != SMAX.zero and SMAX.is_thin(d):
            return A


def general_position_smax(rng: random.Random, rows: int, cols: int) -> TropMatrix:
    """Thin 𝕊max matrix all of whose maximal minors are thin and nonzero."""
    from .geometry import general_position

    while True:
        A = ext_matrix(rng, SMAX, rows, cols, mags=tuple(range(-6, 7)), p_zero=0.0, p_nonthin=0.0)
        if general_position(A):
            return A

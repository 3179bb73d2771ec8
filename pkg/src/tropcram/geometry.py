"""Tropical and signed tropical hyperplanes.

A hyperplane with thin parameters ``a`` is the set of thin ``x`` for which
``⊕ a_i x_i`` is balanced.  Over 𝕋₂ this says the maximum of ``a_i + x_i``
is attained at least twice; over 𝕊max it says the maximum over the positive
parameters equals the maximum over the negative ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .assignment import fast_det
from .errors import PreconditionError, UnsupportedSemiring
from .extension import SMAX, Ext
from .linalg import TropMatrix
from .semirings import BOTTOM, Semiring, Sign, format_rational
from .solvers import SolverConfig, homogeneous_hat


@dataclass(frozen=True)
class Hyperplane:
    S: Semiring
    params: tuple

    def __post_init__(self):
        if all(a == self.S.zero for a in self.params):
            raise PreconditionError("hyperplane parameters must not all be zero")
        bad = [i for i, a in enumerate(self.params) if not self.S.is_thin(a)]
        if bad:
            raise PreconditionError(f"hyperplane parameters must be thin, not at {bad}")

    @property
    def dim(self) -> int:
        return len(self.params)

    def evaluate(self, x: Sequence) -> object:
        if len(x) != self.dim:
            raise PreconditionError(f"point has {len(x)} coordinates, hyperplane lives in dimension {self.dim}")
        return self.S.sum(self.S.mul(a, v) for a, v in zip(self.params, x))

    def equation(self) -> str:
        """Readable form of a signed hyperplane over 𝕊max."""
        if self.S is not SMAX:
            return "attained twice: " + " ⊕ ".join(
                f"{self.S.fmt(a)}·x{i + 1}" for i, a in enumerate(self.params))

        def side(sign):
            terms = [
                f"x{i + 1}" if a[1] == 0 else f"{format_rational(a[1])}+x{i + 1}"
                for i, a in enumerate(self.params) if a[0] == sign
            ]
            if not terms:
                return "-inf"
            return terms[0] if len(terms) == 1 else f"max({', '.join(terms)})"

        return f"{side(Sign.P)} = {side(Sign.N)}"


def contains(H: Hyperplane, x: Sequence) -> bool:
    return H.S.is_balanced(H.evaluate(x))


def _as_matrix(V, S: Optional[Semiring]) -> TropMatrix:
    if isinstance(V, TropMatrix):
        return V
    if S is None:
        raise PreconditionError("semiring required for a plain nested list")
    return TropMatrix.from_rows(S, V)


def degenerate_minors(V) -> list:
    """Indices ``k`` whose maximal minor (drop line ``k`` of the long side) is
    balanced, zero or otherwise not thin."""
    V = _as_matrix(V, None)
    S = V.S
    if V.nrows < V.ncols:
        V = V.transpose()
    r, c = V.shape
    if r != c + 1:
        raise PreconditionError(f"n x (n-1) or (n-1) x n matrix required, got {V.shape}")
    out = []
    for k in range(r):
        d = fast_det(V.delete_row(k))
        if d == S.zero or not S.is_thin(d):
            out.append(k)
    return out


def general_position(V) -> bool:
    """All maximal minors of an ``n x (n-1)`` (or ``(n-1) x n``) thin matrix
    are thin and nonzero."""
    V = _as_matrix(V, None)
    S = V.S
    if any(not S.is_thin(x) for r in V.rows for x in r):
        return False
    return not degenerate_minors(V)


def _require_general(M: TropMatrix, what: str) -> None:
    bad = degenerate_minors(M)
    if bad or any(not M.S.is_thin(x) for r in M.rows for x in r):
        raise PreconditionError(
            f"{what} not in general position; degenerate maximal minors at {bad}")


def hyperplane_through(points: Sequence[Sequence], S: Semiring,
                       config: Optional[SolverConfig] = None) -> Hyperplane:
    """The unique hyperplane containing ``n - 1`` points of dimension ``n``.

    Its parameters are the signed maximal minors of the ``(n-1) x n`` matrix
    whose rows are the points.
    """
    if S.base is None or S.modulus is None:
        raise UnsupportedSemiring(f"hyperplanes need an extension semiring such as smax or t2, got {S.name}")
    P = TropMatrix.from_rows(S, [tuple(p) for p in points])
    m, n = P.shape
    if m != n - 1:
        raise PreconditionError(f"need n-1 points in dimension n, got {m} points in dimension {n}")
    _require_general(P, "points")
    hat = homogeneous_hat(P, config).hat
    return Hyperplane(S, hat)


def sign_transform(H: Hyperplane, eps: Sequence[int]) -> Hyperplane:
    """Move the variables with ``eps_i = -1`` to the other side."""
    if H.S is not SMAX:
        raise UnsupportedSemiring("sign transformations are defined for signed hyperplanes over smax")
    if len(eps) != H.dim or any(e not in (1, -1) for e in eps):
        raise PreconditionError("sign pattern must be a ±1 vector of the hyperplane's dimension")
    flip = {1: SMAX.one, -1: SMAX.neg(SMAX.one)}
    return Hyperplane(SMAX, tuple(SMAX.mul(flip[e], a) for e, a in zip(eps, H.params)))


@dataclass(frozen=True)
class Meet:
    eps: tuple
    point: tuple
    solution: tuple


def normalize_point(point: Sequence) -> tuple:
    """Shift a max-plus point so that its first finite coordinate is 0."""
    shift = next((v for v in point if v != BOTTOM), None)
    if shift is None:
        return tuple(point)
    return tuple(v if v == BOTTOM else v - shift for v in point)


def meet_hyperplanes(hyperplanes: Sequence[Hyperplane],
                     config: Optional[SolverConfig] = None) -> Meet:
    """Sign pattern and nonnegative point where ``n - 1`` signed hyperplanes
    of dimension ``n`` meet after sign transformation.

    The pattern is determined up to a global sign; it is normalized so that
    its first entry is +1.
    """
    if not hyperplanes:
        raise PreconditionError("at least one hyperplane required")
    S = hyperplanes[0].S
    if S is not SMAX:
        raise UnsupportedSemiring("meet_hyperplanes works over smax")
    n = hyperplanes[0].dim
    if len(hyperplanes) != n - 1 or any(h.dim != n or h.S is not S for h in hyperplanes):
        raise PreconditionError(f"need n-1 smax hyperplanes of dimension n, got {len(hyperplanes)}")
    M = TropMatrix.from_rows(S, [h.params for h in hyperplanes])
    _require_general(M, "hyperplane parameters")
    x = homogeneous_hat(M, config).hat
    if x[0][0] == Sign.N:
        x = tuple(S.neg(v) for v in x)
    eps = tuple(-1 if v[0] == Sign.N else 1 for v in x)
    return Meet(eps, normalize_point([v[1] for v in x]), x)


def positive_point(mags: Sequence) -> tuple:
    """Embed a max-plus point as a nonnegative 𝕊max vector."""
    return tuple(SMAX.zero if m == BOTTOM else Ext(Sign.P, m) for m in mags)

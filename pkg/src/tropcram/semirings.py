"""Base semirings with symmetry.

Every semiring is described at runtime by a :class:`Semiring` record that
bundles its operations, its symmetry ``neg`` and the predicates for the thin
and balanced parts.  Algorithms elsewhere in the package only talk to these
records, so the same code runs over any of the carriers defined here or over
their extensions by the max-plus semifield (see :mod:`tropcram.extension`).
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Callable, Iterable, Optional, Sequence

BOTTOM = -math.inf
"""Zero of the max-plus semifield.  Finite scalars are ints or Fractions."""


class ParseError(ValueError):
    """Raised when a token does not denote an element of the semiring."""


def parse_rational(text: str):
    """Parse ``3``, ``-1/2`` or ``0.25`` exactly.  ``-inf`` gives BOTTOM."""
    t = text.strip().replace("−", "-")
    if t in ("-inf", "bot", "-oo"):
        return BOTTOM
    try:
        q = Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc
    return normalize_rational(q)


def normalize_rational(q):
    if q == BOTTOM:
        return BOTTOM
    if isinstance(q, float):
        raise TypeError("floating point scalars are not allowed")
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else q


def format_rational(q) -> str:
    if q == BOTTOM:
        return "-inf"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class Semiring:
    """Runtime description of a commutative semiring with symmetry.

    ``witnesses(a)`` lists thin elements ``d`` with ``d <= a`` in the natural
    order and ``d`` balancing ``a``; the first entry is the canonical choice
    and the last one is the "negative" choice used by sign policies.
    ``thin_parts(a)`` returns thin elements whose sum is ``a``.
    """

    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    is_balanced: Callable[[Any], bool]
    is_thin: Callable[[Any], bool]
    is_invertible: Callable[[Any], bool]
    inv: Callable[[Any], Any]
    witnesses: Callable[[Any], list]
    thin_parts: Callable[[Any], list]
    parse: Callable[[str], Any]
    fmt: Callable[[Any], str]
    sample: Callable[[random.Random], Any]
    elements: Optional[tuple] = None
    idempotent: bool = False
    modulus: Optional[Callable[[Any], Any]] = None
    base: Optional["Semiring"] = None
    traits: frozenset = field(default_factory=frozenset)
    leq_fn: Optional[Callable[[Any, Any], bool]] = None

    def __repr__(self) -> str:
        return f"Semiring({self.name})"

    def sum(self, items: Iterable) -> Any:
        return reduce(self.add, items, self.zero)

    def prod(self, items: Iterable) -> Any:
        return reduce(self.mul, items, self.one)

    def sub(self, a, b):
        """``a ⊖ b``."""
        return self.add(a, self.neg(b))

    def sign_pow(self, k: int):
        """``(⊖1)^k``."""
        return self.neg(self.one) if k % 2 else self.one

    def balances(self, a, b) -> bool:
        return self.is_balanced(self.add(a, self.neg(b)))

    def leq(self, a, b) -> bool:
        return natural_preorder(a, b, self)

    def has(self, trait: str) -> bool:
        return trait in self.traits

    def is_zero(self, a) -> bool:
        return a == self.zero


def balance(a, b, S: Semiring) -> bool:
    """``a ∇ b``: the difference ``a ⊖ b`` lies in the balanced part."""
    return S.balances(a, b)


def natural_preorder(a, b, S: Semiring) -> bool:
    """``a ⪯ b`` iff ``b = a ⊕ c`` for some ``c``."""
    if S.leq_fn is not None:
        return S.leq_fn(a, b)
    if S.idempotent:
        return S.add(a, b) == b
    if S.elements is not None:
        return any(S.add(a, c) == b for c in S.elements)
    raise NotImplementedError(f"no natural order available for {S.name}")


# ---------------------------------------------------------------------------
# The symmetrized Boolean semiring {z, p, n, b}


class Sign(enum.IntEnum):
    Z = 0
    P = 1
    N = 2
    B = 3


_Z, _P, _N, _B = Sign.Z, Sign.P, Sign.N, Sign.B

_SIGN_ADD = (
    (_Z, _P, _N, _B),
    (_P, _P, _B, _B),
    (_N, _B, _N, _B),
    (_B, _B, _B, _B),
)
_SIGN_MUL = (
    (_Z, _Z, _Z, _Z),
    (_Z, _P, _N, _B),
    (_Z, _N, _P, _B),
    (_Z, _B, _B, _B),
)
_SIGN_NEG = (_Z, _N, _P, _B)
_SIGN_TOKENS = {"z": _Z, "p": _P, "n": _N, "b": _B}
_SIGN_NAMES = {v: k for k, v in _SIGN_TOKENS.items()}


def _parse_sign(text: str) -> Sign:
    try:
        return _SIGN_TOKENS[text.strip()]
    except KeyError:
        raise ParseError(f"not a sign token: {text!r}") from None


SIGNS = Semiring(
    name="signs",
    zero=_Z,
    one=_P,
    add=lambda a, b: _SIGN_ADD[a][b],
    mul=lambda a, b: _SIGN_MUL[a][b],
    neg=lambda a: _SIGN_NEG[a],
    is_balanced=lambda a: a == _Z or a == _B,
    is_thin=lambda a: a != _B,
    is_invertible=lambda a: a == _P or a == _N,
    inv=lambda a: a,
    witnesses=lambda a: [_P, _N] if a == _B else [a],
    thin_parts=lambda a: [_P, _N] if a == _B else [a],
    parse=_parse_sign,
    fmt=lambda a: _SIGN_NAMES[a],
    sample=lambda rng: rng.choice((_Z, _P, _N, _B)),
    elements=(_Z, _P, _N, _B),
    idempotent=True,
    traits=frozenset({"strong_elimination", "weak_elimination"}),
)


# ---------------------------------------------------------------------------
# {0, 1, 2} with 1 + 1 = 2 absorbing, identity symmetry


def _parse_n2(text: str) -> int:
    t = text.strip()
    if t not in ("0", "1", "2"):
        raise ParseError(f"not an element of {{0,1,2}}: {text!r}")
    return int(t)


N2 = Semiring(
    name="n2",
    zero=0,
    one=1,
    add=lambda a, b: min(a + b, 2),
    mul=lambda a, b: min(a * b, 2),
    neg=lambda a: a,
    is_balanced=lambda a: a != 1,
    is_thin=lambda a: a != 2,
    is_invertible=lambda a: a == 1,
    inv=lambda a: a,
    witnesses=lambda a: [1] if a else [0],
    thin_parts=lambda a: [1] * a,
    parse=_parse_n2,
    fmt=str,
    sample=lambda rng: rng.choice((0, 1, 2)),
    elements=(0, 1, 2),
    idempotent=False,
    leq_fn=lambda a, b: a <= b,
    traits=frozenset({"strong_elimination", "weak_elimination"}),
)


# ---------------------------------------------------------------------------
# The two-element Boolean semiring.  Its symmetry is the identity and every
# element is balanced, so it only serves as a plain semiring.

BOOLEAN = Semiring(
    name="bool",
    zero=0,
    one=1,
    add=lambda a, b: a | b,
    mul=lambda a, b: a & b,
    neg=lambda a: a,
    is_balanced=lambda a: True,
    is_thin=lambda a: a == 0,
    is_invertible=lambda a: a == 1,
    inv=lambda a: a,
    witnesses=lambda a: [a],
    thin_parts=lambda a: [a],
    parse=lambda t: int(t) if t.strip() in ("0", "1") else _bad(t, "{0,1}"),
    fmt=str,
    sample=lambda rng: rng.choice((0, 1)),
    elements=(0, 1),
    idempotent=True,
)


def _bad(text, where):
    raise ParseError(f"not an element of {where}: {text!r}")


# ---------------------------------------------------------------------------
# Max-plus numbers with the identity symmetry


def _rmax_add(a, b):
    return a if a >= b else b


def _rmax_mul(a, b):
    if a == BOTTOM or b == BOTTOM:
        return BOTTOM
    return a + b


RMAX = Semiring(
    name="rmax",
    zero=BOTTOM,
    one=0,
    add=_rmax_add,
    mul=_rmax_mul,
    neg=lambda a: a,
    is_balanced=lambda a: True,
    is_thin=lambda a: a == BOTTOM,
    is_invertible=lambda a: a != BOTTOM,
    inv=lambda a: -a,
    witnesses=lambda a: [a],
    thin_parts=lambda a: [a],
    parse=parse_rational,
    fmt=format_rational,
    sample=lambda rng: rng.choice((BOTTOM, -2, -1, 0, 1, 2, 3)),
    idempotent=True,
    leq_fn=lambda a, b: a <= b,
)


# ---------------------------------------------------------------------------
# Phases: closed convex cones of the complex plane.
#
# Angles are exact rationals measured in units of pi and reduced mod 2.  A
# cone is stored by kind: "triv" ({0}), "ray", "sector" (start angle plus a
# span in (0, 1]; span 1 is a closed half-plane), "line" (angle in [0, 1))
# and "plane".  Sums and products are both the convex hull of a finite set
# of rays, which keeps the arithmetic exact.


def _mod2(q) -> Fraction:
    if not isinstance(q, Fraction):
        q = Fraction(q)
    return q % 2


class Cone:
    """A closed convex cone; immutable, hashable, compared by value."""

    __slots__ = ("kind", "angle", "span", "_key", "_hash")

    def __init__(self, kind: str, angle=Fraction(0), span=Fraction(0)):
        if type(angle) is not Fraction:
            angle = Fraction(angle)
        if type(span) is not Fraction:
            span = Fraction(span)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "angle", angle)
        object.__setattr__(self, "span", span)
        key = (kind, angle.numerator, angle.denominator, span.numerator, span.denominator)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("Cone is immutable")

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Cone({format_cone(self)})"

    def rays(self) -> tuple:
        """Angles of rays generating the cone."""
        k = self.kind
        if k == "triv":
            return ()
        if k == "ray":
            return (self.angle,)
        if k == "sector":
            if self.span == 1:
                return (self.angle, _mod2(self.angle + Fraction(1, 2)), _mod2(self.angle + 1))
            return (self.angle, _mod2(self.angle + self.span))
        if k == "line":
            return (self.angle, _mod2(self.angle + 1))
        return (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2))

    def __str__(self) -> str:
        return format_cone(self)


TRIV = Cone("triv")
PLANE = Cone("plane")


def ray(theta) -> Cone:
    return Cone("ray", _mod2(theta))


def line(theta) -> Cone:
    t = _mod2(theta)
    return Cone("line", t - 1 if t >= 1 else t)


def sector(theta1, theta2) -> Cone:
    """Counter-clockwise sector from ``theta1`` to ``theta2`` (span at most pi)."""
    a = _mod2(theta1)
    s = _mod2(Fraction(theta2) - a)
    if s == 0:
        return ray(a)
    if s > 1:
        raise ValueError("a sector spans at most pi")
    return Cone("sector", a, s)


def cone_hull(angles: Iterable) -> Cone:
    """Smallest closed convex cone containing the given rays."""
    pts = sorted({_mod2(a) for a in angles})
    if not pts:
        return TRIV
    if len(pts) == 1:
        return Cone("ray", pts[0])
    gaps = [(pts[(i + 1) % len(pts)] - pts[i]) % 2 for i in range(len(pts))]
    g = max(gaps)
    i = gaps.index(g)
    start = pts[(i + 1) % len(pts)]
    if g > 1:
        return Cone("sector", start, 2 - g)
    if g == 1:
        if len(pts) == 2:
            return line(pts[0])
        return Cone("sector", start, Fraction(1))
    return PLANE


@lru_cache(maxsize=1 << 16)
def cone_add(a: Cone, b: Cone) -> Cone:
    if a.kind == "triv":
        return b
    if b.kind == "triv":
        return a
    if a.kind == "plane" or b.kind == "plane":
        return PLANE
    return cone_hull(a.rays() + b.rays())


@lru_cache(maxsize=1 << 16)
def cone_mul(a: Cone, b: Cone) -> Cone:
    if a.kind == "triv" or b.kind == "triv":
        return TRIV
    if a.kind == "plane" or b.kind == "plane":
        return PLANE
    if a.kind == "ray" and b.kind == "ray":
        return Cone("ray", _mod2(a.angle + b.angle))
    return cone_hull(x + y for x in a.rays() for y in b.rays())


@lru_cache(maxsize=1 << 16)
def cone_neg(a: Cone) -> Cone:
    if a.kind in ("ray", "sector"):
        return Cone(a.kind, _mod2(a.angle + 1), a.span)
    return a


def _cone_witnesses(a: Cone) -> list:
    if a.kind == "triv":
        return [TRIV]
    if a.kind == "plane":
        return [ray(0), ray(1)]
    if a.kind == "sector":
        # boundary rays do not balance a sector, interior rays do
        return [ray(a.angle + a.span / 2)]
    if a.kind == "line":
        return [ray(a.angle), ray(a.angle + 1)]
    return [a]


def format_cone(a: Cone) -> str:
    if a.kind == "triv":
        return "triv"
    if a.kind == "plane":
        return "plane"
    if a.kind == "ray":
        return f"hl:{format_rational(a.angle)}"
    if a.kind == "line":
        return f"line:{format_rational(a.angle)}"
    return f"sec:{format_rational(a.angle)},{format_rational(_mod2(a.angle + a.span))}"


def parse_cone(text: str) -> Cone:
    t = text.strip()
    if t == "triv":
        return TRIV
    if t == "plane":
        return PLANE
    head, sep, rest = t.partition(":")
    if not sep:
        raise ParseError(f"not a phase token: {text!r}")
    try:
        if head == "hl":
            return ray(Fraction(rest))
        if head == "line":
            return line(Fraction(rest))
        if head == "sec":
            a, b = rest.split(",")
            return sector(Fraction(a), Fraction(b))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad phase token {text!r}: {exc}") from None
    raise ParseError(f"not a phase token: {text!r}")


def _phase_pool() -> tuple:
    angles = sorted({Fraction(k, 4) for k in range(8)} | {Fraction(k, 3) for k in range(6)})
    pool = [TRIV, PLANE]
    pool += [ray(a) for a in angles]
    pool += [line(a) for a in angles if a < 1]
    for a in angles:
        for s in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)):
            pool.append(Cone("sector", a, s))
    return tuple(dict.fromkeys(pool))


PHASE_POOL = _phase_pool()

PHASE = Semiring(
    name="phase",
    zero=TRIV,
    one=ray(0),
    add=cone_add,
    mul=cone_mul,
    neg=cone_neg,
    is_balanced=lambda a: a.kind in ("triv", "line", "plane"),
    is_thin=lambda a: a.kind in ("triv", "ray"),
    is_invertible=lambda a: a.kind == "ray",
    inv=lambda a: ray(-a.angle),
    witnesses=_cone_witnesses,
    thin_parts=lambda a: [ray(t) for t in a.rays()],
    parse=parse_cone,
    fmt=format_cone,
    sample=lambda rng: rng.choice(PHASE_POOL),
    idempotent=True,
    traits=frozenset({"strong_elimination", "weak_elimination"}),
)


# ---------------------------------------------------------------------------
# A finite cyclic group with a zero and an absorbing "top" element 1°.
#
# Encoding: -1 is zero, 0..n-1 are the group elements (k means g^k) and n
# is the top element.  In the idempotent variant two distinct group
# elements sum to top and the symmetry multiplies by the element of order
# two.  In the supertropical variant every sum of two nonzero elements is
# top and the symmetry is the identity.


@lru_cache(maxsize=None)
def group_extension(n: int, supertropical: bool = False) -> Semiring:
    if n < 1:
        raise ValueError("group order must be positive")
    if not supertropical and n % 2:
        raise ValueError("the idempotent variant needs an element of order two")
    top = n
    half = n // 2

    if supertropical:
        def add(a, b):
            if a < 0:
                return b
            if b < 0:
                return a
            return top
        neg = lambda a: a  # noqa: E731
    else:
        def add(a, b):
            if a < 0:
                return b
            if b < 0 or a == b:
                return a
            return top

        def neg(a):
            return (a + half) % n if 0 <= a < n else a

    def mul(a, b):
        if a < 0 or b < 0:
            return -1
        if a == top or b == top:
            return top
        return (a + b) % n

    def witnesses(a):
        if a == top:
            order = [0] + ([] if supertropical else [half])
            return order[:1] + [k for k in range(1, n) if k not in order] + order[1:]
        return [a]

    def thin_parts(a):
        if a != top:
            return [a]
        return [0, 0] if supertropical else [0, half] if n > 1 else [0, 0]

    def fmt(a):
        return "z" if a < 0 else "top" if a == top else f"g{a}"

    def parse(text):
        t = text.strip()
        if t == "z":
            return -1
        if t == "top":
            return top
        if t.startswith("g") and t[1:].isdigit() and int(t[1:]) < n:
            return int(t[1:])
        raise ParseError(f"not an element of the group extension: {text!r}")

    elements = tuple(range(-1, n + 1))
    name = f"super{n}" if supertropical else f"torus{n}"
    # With more than two group elements, g1 ∇ g0 ∇ g3 but not g1 ∇ g3, so
    # only the two-element group allows elimination in the idempotent variant.
    traits = set()
    if supertropical:
        traits.add("weak_elimination")
    elif n == 2:
        traits |= {"weak_elimination", "strong_elimination"}
    return Semiring(
        name=name,
        zero=-1,
        one=0,
        add=add,
        mul=mul,
        neg=neg,
        is_balanced=lambda a: a < 0 or a == top,
        is_thin=lambda a: a != top,
        is_invertible=lambda a: 0 <= a < n,
        inv=lambda a: (-a) % n,
        witnesses=witnesses,
        thin_parts=thin_parts,
        parse=parse,
        fmt=fmt,
        sample=lambda rng: rng.choice(elements),
        elements=elements,
        idempotent=not supertropical,
        traits=frozenset(traits),
    )


def product_sign(perm: Sequence[int]) -> int:
    """Parity of a permutation given as a tuple of images (0 even, 1 odd)."""
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def all_tuples(S: Semiring, k: int):
    """All ``k``-tuples over a finite carrier."""
    return itertools.product(S.elements, repeat=k)

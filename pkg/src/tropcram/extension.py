"""Extension of a base semiring by the max-plus semifield.

An element is a pair ``(coeff, mag)`` of a nonzero base coefficient and a
finite magnitude, or the zero element ``Ext(base.zero, BOTTOM)``.  Sums are
lexicographic: the larger magnitude wins and equal magnitudes add their
coefficients.  Products multiply coefficients and add magnitudes.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Any, NamedTuple

from .semirings import (
    BOTTOM,
    N2,
    PHASE,
    RMAX,
    SIGNS,
    ParseError,
    Semiring,
    Sign,
    format_rational,
    group_extension,
    parse_rational,
)


class Ext(NamedTuple):
    coeff: Any
    mag: Any

    def __repr__(self) -> str:
        return f"Ext({self.coeff!r}, {format_rational(self.mag)})"


# Magnitudes used by the random samplers; small and repeated so that ties,
# cancellations and balanced sums occur often.
SAMPLE_MAGS = (-2, -1, 0, 1, 2)


def extend(base: Semiring, name: str, fmt=None, parse=None, traits=()) -> Semiring:
    """Build the descriptor of ``base`` extended by max-plus magnitudes."""
    bzero, bone = base.zero, base.one
    badd, bmul, bneg = base.add, base.mul, base.neg
    zero = Ext(bzero, BOTTOM)
    one = Ext(bone, 0)

    def add(x, y):
        mx, my = x[1], y[1]
        if mx > my:
            return x
        if my > mx:
            return y
        if mx == BOTTOM:
            return x
        c = badd(x[0], y[0])
        return Ext(c, mx) if c != bzero else zero

    def mul(x, y):
        if x[1] == BOTTOM or y[1] == BOTTOM:
            return zero
        c = bmul(x[0], y[0])
        if c == bzero:
            return zero
        return Ext(c, x[1] + y[1])

    def neg(x):
        if x[1] == BOTTOM:
            return x
        return Ext(bneg(x[0]), x[1])

    def is_balanced(x):
        return base.is_balanced(x[0])

    def is_thin(x):
        return base.is_thin(x[0])

    def is_invertible(x):
        return x[1] != BOTTOM and base.is_invertible(x[0])

    def inv(x):
        return Ext(base.inv(x[0]), -x[1])

    def witnesses(x):
        if x[1] == BOTTOM:
            return [zero]
        return [Ext(d, x[1]) for d in base.witnesses(x[0])]

    def thin_parts(x):
        if x[1] == BOTTOM:
            return []
        return [Ext(d, x[1]) for d in base.thin_parts(x[0])]

    def leq(x, y):
        if x[1] < y[1]:
            return True
        if x[1] > y[1]:
            return False
        if x[1] == BOTTOM:
            return True
        return base.leq(x[0], y[0])

    def sample(rng):
        c = base.sample(rng)
        if c == bzero:
            return zero
        return Ext(c, rng.choice(SAMPLE_MAGS))

    def default_fmt(x):
        if x[1] == BOTTOM:
            return "z"
        return f"{base.fmt(x[0])}@{format_rational(x[1])}"

    def default_parse(text):
        t = text.strip()
        if t == "z":
            return zero
        head, sep, mag = t.rpartition("@")
        if not sep:
            raise ParseError(f"expected <coeff>@<magnitude>, got {text!r}")
        return make(base.parse(head), parse_rational(mag))

    def make(c, m):
        if c == bzero or m == BOTTOM:
            return zero
        return Ext(c, m)

    S = Semiring(
        name=name,
        zero=zero,
        one=one,
        add=add,
        mul=mul,
        neg=neg,
        is_balanced=is_balanced,
        is_thin=is_thin,
        is_invertible=is_invertible,
        inv=inv,
        witnesses=witnesses,
        thin_parts=thin_parts,
        parse=(lambda t: parse(t, make)) if parse else default_parse,
        fmt=(lambda x: fmt(x, base)) if fmt else default_fmt,
        sample=sample,
        idempotent=base.idempotent,
        modulus=lambda x: x[1],
        base=base,
        traits=frozenset(traits) | (base.traits & {"strong_elimination", "weak_elimination"}),
        leq_fn=leq,
    )
    return S


# ---------------------------------------------------------------------------
# Token syntax for the two named extensions: p(3), n(-1/2), b(0), z and
# t1(2), t2(0), z.

_TOKEN = re.compile(r"^\s*([a-z0-9]+)\((.+)\)\s*$")


def _signed_fmt(x, base):
    if x[1] == BOTTOM:
        return "z"
    return f"{base.fmt(x[0])}({format_rational(x[1])})"


def _signed_parse(text, make):
    if text.strip() == "z":
        return make(SIGNS.zero, BOTTOM)
    m = _TOKEN.match(text)
    if not m or m.group(1) not in ("p", "n", "b"):
        raise ParseError(f"expected p(q), n(q), b(q) or z, got {text!r}")
    return make(SIGNS.parse(m.group(1)), parse_rational(m.group(2)))


def _t2_fmt(x, base):
    if x[1] == BOTTOM:
        return "z"
    return f"t{x[0]}({format_rational(x[1])})"


def _t2_parse(text, make):
    if text.strip() == "z":
        return make(0, BOTTOM)
    m = _TOKEN.match(text)
    if not m or m.group(1) not in ("t1", "t2"):
        raise ParseError(f"expected t1(q), t2(q) or z, got {text!r}")
    return make(int(m.group(1)[1]), parse_rational(m.group(2)))


# Traits record which structural properties hold; the axiom checker in
# tropcram.axioms verifies every declared trait (see tests/test_axioms.py).
_TROPICAL_TRAITS = ("order_witness", "order_equal", "inverse_transfer", "tropical")

SMAX = extend(SIGNS, "smax", _signed_fmt, _signed_parse, _TROPICAL_TRAITS)
T2 = extend(N2, "t2", _t2_fmt, _t2_parse, _TROPICAL_TRAITS)
# The phase extension does not satisfy "order_witness": a boundary ray of a
# sector is below the sector but does not balance it.
PHASE_MAX = extend(PHASE, "phase-max", traits=("order_equal", "inverse_transfer"))


@lru_cache(maxsize=None)
def torus_max(n: int) -> Semiring:
    return extend(group_extension(n), f"torus{n}-max", traits=_TROPICAL_TRAITS)


@lru_cache(maxsize=None)
def supertropical_max(n: int) -> Semiring:
    return extend(group_extension(n, supertropical=True), f"super{n}-max", traits=_TROPICAL_TRAITS)


# ---------------------------------------------------------------------------
# Structure maps between the extension, its base and max-plus numbers.


def iota(mag, S: Semiring):
    """Embed a max-plus number as ``(1, mag)``."""
    return S.zero if mag == BOTTOM else Ext(S.base.one, mag)


def gamma(x, S: Semiring):
    """Coefficient of an element (the base zero for zero)."""
    return x[0]


def jmath(a, S: Semiring):
    """Embed a base element as ``(a, 0)``."""
    return S.zero if a == S.base.zero else Ext(a, 0)


def modulus(x):
    return x[1]


def strong_balance(x, y, S: Semiring) -> bool:
    """``x ∇| y``: balanced and of equal modulus."""
    return x[1] == y[1] and S.balances(x, y)


def signed(sign: Sign, mag):
    """Shorthand for elements of the signed extension."""
    return SMAX.zero if sign == Sign.Z or mag == BOTTOM else Ext(sign, mag)


def p(mag):
    return signed(Sign.P, mag)


def n(mag):
    return signed(Sign.N, mag)


def b(mag):
    return signed(Sign.B, mag)


def t1(mag):
    return T2.zero if mag == BOTTOM else Ext(1, mag)


def t2(mag):
    return T2.zero if mag == BOTTOM else Ext(2, mag)


# ---------------------------------------------------------------------------
# Name registry used by the file format and the CLI.

_FIXED = {
    "signs": SIGNS,
    "n2": N2,
    "phase": PHASE,
    "rmax": RMAX,
    "smax": SMAX,
    "t2": T2,
    "phase-max": PHASE_MAX,
}
_FAMILY = re.compile(r"^(torus|super)(\d+)(-max)?$")


def semiring_by_name(name: str) -> Semiring:
    if name in _FIXED:
        return _FIXED[name]
    m = _FAMILY.match(name)
    if m:
        order = int(m.group(2))
        try:
            if m.group(3):
                return torus_max(order) if m.group(1) == "torus" else supertropical_max(order)
            return group_extension(order, supertropical=m.group(1) == "super")
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown semiring {name!r}")


SEMIRING_NAMES = tuple(_FIXED) + ("torus<even n>", "super<n>", "torus<even n>-max", "super<n>-max")

"""Checking the algebraic properties a semiring with symmetry may satisfy.

Finite carriers are checked exhaustively.  Infinite carriers (extensions,
phases) are checked on a finite pool of elements: all tuples of the pool when
that fits in the budget, otherwise a seeded random sample of tuples.  A
report says which of the two happened.

Property names used in reports:

``thin_balance_equal``
    two thin elements that balance are equal
``thin_mul_closed``
    nonzero thin elements are closed under product
``weak_transitivity``
    ``a x ∇ b`` and ``C x ∇ d`` with thin ``a, x`` give ``C b ∇ a d``
    (checked for one row and up to two columns)
``weak_transitivity_scalar``
    ``b ∇ x ∇ d`` with thin ``x`` gives ``b ∇ d``
``weak_transitivity_product``
    ``x ∇ b`` and ``c x ∇ d`` with thin ``x`` give ``c b ∇ d``
``thin_exact``
    the nonzero thin elements are exactly the non-balanced ones
``thin_generated``
    every element is a sum of thin elements
``order_witness``
    thin ``x ⪯ y`` admits a thin ``z`` with ``x ⪯ z ⪯ y`` and ``z ∇| y``
``order_equal``
    thin ``x ⪯ y`` of equal modulus are equal
``order_finite``
    chains of thin elements of one modulus are finite
``inverse_transfer``
    ``d x ∇| y`` iff ``x ∇| d⁻¹ y`` for thin invertible ``d``
``invertible_exact``
    invertible = nonzero thin = non-balanced
``zero_modulus``
    only zero has modulus zero
``balanced_sum_witness``
    a balanced sum has a balanced term, or a balanced pair, of full modulus
``balanced_absorbs_smaller``
    balanced ``x`` and ``|y| <= |x|`` give a balanced ``x ⊕ y``
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .semirings import BOTTOM, Semiring

SEMIRING_LAWS = (
    "add_assoc",
    "add_comm",
    "add_zero",
    "mul_assoc",
    "mul_comm",
    "mul_one",
    "mul_zero",
    "distributive",
    "neg_involution",
    "neg_additive",
    "neg_scalar",
    "thin_meets_balanced_at_zero",
    "invertible_are_thin",
    "balanced_closed",
)
ELIMINATION_PROPERTIES = (
    "thin_balance_equal",
    "thin_mul_closed",
    "weak_transitivity",
    "weak_transitivity_scalar",
    "weak_transitivity_product",
    "thin_exact",
    "thin_generated",
)
ORDER_PROPERTIES = ("order_witness", "order_equal", "order_finite", "inverse_transfer")
TROPICAL_PROPERTIES = (
    "invertible_exact",
    "zero_modulus",
    "balanced_sum_witness",
    "balanced_absorbs_smaller",
)


@dataclass
class PropertyResult:
    passed: bool
    witness: Optional[tuple] = None
    exhaustive: bool = True
    checked: int = 0


@dataclass
class AxiomReport:
    semiring: str
    results: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return all(r.exhaustive for r in self.results.values())

    def holds(self, name: str) -> bool:
        return self.results[name].passed

    @property
    def weak_elimination(self) -> bool:
        return self.holds("thin_mul_closed") and self.holds("weak_transitivity")

    @property
    def strong_elimination(self) -> bool:
        return self.weak_elimination and self.holds("thin_balance_equal")

    @property
    def monotone_construction(self) -> bool:
        return self.holds("order_witness") and self.holds("inverse_transfer")

    @property
    def monotone_convergence(self) -> bool:
        return self.monotone_construction and self.holds("order_finite")

    def failures(self) -> list:
        return [k for k, r in self.results.items() if not r.passed]

    def lines(self) -> list:
        out = []
        for name, r in self.results.items():
            mode = "exhaustive" if r.exhaustive else "sampled"
            status = "holds" if r.passed else "FAILS"
            line = f"{name:28s} {status:6s} ({mode}, {r.checked} cases)"
            if r.witness is not None:
                line += " witness: " + ", ".join(_fmt_any(w) for w in r.witness)
            out.append(line)
        out.append(f"weak elimination: {self.weak_elimination}")
        out.append(f"strong elimination: {self.strong_elimination}")
        return out


def _fmt_any(w):
    return repr(w)


class _Checker:
    def __init__(self, S: Semiring, pool, rng, budget):
        self.S = S
        self.pool = list(pool)
        self.thin = [x for x in self.pool if S.is_thin(x)]
        self.rng = rng
        self.budget = budget
        self._near = {}

    def forall(self, k: int, pred: Callable[..., bool], pool=None) -> PropertyResult:
        """Check ``pred`` on ``k``-tuples of the pool, exhaustively if affordable."""
        pool = self.pool if pool is None else pool
        if not pool:
            return PropertyResult(True, None, True, 0)
        total = len(pool) ** k
        if total <= self.budget:
            tuples, exhaustive = itertools.product(pool, repeat=k), True
        else:
            tuples = (tuple(self.rng.choice(pool) for _ in range(k)) for _ in range(self.budget))
            exhaustive = False
        count = 0
        for t in tuples:
            count += 1
            if not pred(*t):
                return PropertyResult(False, t, exhaustive, count)
        return PropertyResult(True, None, exhaustive, count)

    def balancing(self, x) -> list:
        if x not in self._near:
            self._near[x] = [y for y in self.pool if self.S.balances(x, y)]
        return self._near[x]


def _pool_for(S: Semiring, rng: random.Random, size: int) -> tuple[list, bool]:
    """Elements to quantify over, and whether they exhaust the carrier."""
    if S.elements is not None:
        return list(S.elements), True
    if S.base is not None and S.base.elements is not None:
        mags = (-1, 0, 1, 2)
        pool = [S.zero] + [
            type(S.one)(c, m) for c in S.base.elements if c != S.base.zero for m in mags
        ]
        return pool, False
    if S.base is not None:
        from .semirings import PHASE_POOL

        base_pool = PHASE_POOL if S.base.name == "phase" else [S.base.sample(rng) for _ in range(size)]
        pool = [S.zero] + [type(S.one)(c, m) for c in base_pool if c != S.base.zero for m in (0, 1)]
        return list(dict.fromkeys(pool)), False
    if S.name == "phase":
        from .semirings import PHASE_POOL

        return list(PHASE_POOL), False
    pool = list(dict.fromkeys(S.sample(rng) for _ in range(size)))
    return pool, False


def check_axioms(S: Semiring, seed: int = 0, budget: int = 20000, pool=None) -> AxiomReport:
    """Verify the semiring laws and the structural properties of ``S``."""
    rng = random.Random(seed)
    carrier_exhaustive = True
    if pool is None:
        pool, carrier_exhaustive = _pool_for(S, rng, 60)
    C = _Checker(S, pool, rng, budget)
    rep = AxiomReport(S.name)
    R = rep.results
    add, mul, neg, zero, one = S.add, S.mul, S.neg, S.zero, S.one

    R["add_assoc"] = C.forall(3, lambda a, b, c: add(add(a, b), c) == add(a, add(b, c)))
    R["add_comm"] = C.forall(2, lambda a, b: add(a, b) == add(b, a))
    R["add_zero"] = C.forall(1, lambda a: add(a, zero) == a)
    R["mul_assoc"] = C.forall(3, lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)))
    R["mul_comm"] = C.forall(2, lambda a, b: mul(a, b) == mul(b, a))
    R["mul_one"] = C.forall(1, lambda a: mul(a, one) == a)
    R["mul_zero"] = C.forall(1, lambda a: mul(a, zero) == zero)
    R["distributive"] = C.forall(3, lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)))
    R["neg_involution"] = C.forall(1, lambda a: neg(neg(a)) == a)
    R["neg_additive"] = C.forall(2, lambda a, b: neg(add(a, b)) == add(neg(a), neg(b)))
    R["neg_scalar"] = C.forall(2, lambda a, b: neg(mul(a, b)) == mul(neg(a), b) == mul(neg(one), mul(a, b)))
    R["thin_meets_balanced_at_zero"] = C.forall(
        1, lambda a: not (S.is_thin(a) and S.is_balanced(a)) or a == zero
    )
    R["invertible_are_thin"] = C.forall(1, lambda a: not S.is_invertible(a) or S.is_thin(a))
    R["balanced_closed"] = C.forall(
        1, lambda a: S.is_balanced(add(a, neg(a))) and (not S.is_balanced(a) or neg(a) == a)
    )

    _elimination(C, R)
    if S.modulus is not None:
        _order(C, R)
        _tropical(C, R)

    if not carrier_exhaustive:
        for r in R.values():
            r.exhaustive = False
    return rep


def _elimination(C: _Checker, R: dict) -> None:
    S, thin, rng = C.S, C.thin, C.rng
    bal = S.balances

    R["thin_balance_equal"] = C.forall(2, lambda x, y: not bal(x, y) or x == y, pool=thin)
    nonzero_thin = [x for x in thin if x != S.zero]
    R["thin_mul_closed"] = C.forall(
        2, lambda x, y: S.mul(x, y) != S.zero and S.is_thin(S.mul(x, y)), pool=nonzero_thin
    )

    # b ∇ x ∇ d: enumerate per thin x over the elements balancing x
    count, witness = 0, None
    exhaustive = True
    for x in thin:
        near = C.balancing(x)
        pairs = itertools.product(near, repeat=2)
        if len(near) ** 2 > C.budget // max(1, len(thin)):
            pairs = ((rng.choice(near), rng.choice(near)) for _ in range(C.budget // max(1, len(thin))))
            exhaustive = False
        for bb, d in pairs:
            count += 1
            if not bal(bb, d):
                witness = (x, bb, d)
                break
        if witness:
            break
    R["weak_transitivity_scalar"] = PropertyResult(witness is None, witness, exhaustive, count)

    # x ∇ b and c x ∇ d give c b ∇ d
    def product_case(x, bb, c, d):
        return not (bal(x, bb) and bal(S.mul(c, x), d)) or bal(S.mul(c, bb), d)

    R["weak_transitivity_product"] = _conditional(C, product_case, 4)

    # systems: one row, p in {1, 2} columns
    def system_case(a, xs, bs, cs, d):
        if not all(bal(S.mul(a, x), y) for x, y in zip(xs, bs)):
            return True
        cx = S.sum(S.mul(c, x) for c, x in zip(cs, xs))
        if not bal(cx, d):
            return True
        cb = S.sum(S.mul(c, y) for c, y in zip(cs, bs))
        return bal(cb, S.mul(a, d))

    R["weak_transitivity"] = _systems(C, system_case)

    R["thin_exact"] = C.forall(
        1, lambda a: (S.is_thin(a) and a != S.zero) == (not S.is_balanced(a))
    )
    R["thin_generated"] = C.forall(
        1, lambda a: all(S.is_thin(t) for t in S.thin_parts(a)) and S.sum(S.thin_parts(a)) == a
    )


def _conditional(C: _Checker, pred, k) -> PropertyResult:
    """Like ``forall`` but the first slot ranges over thin elements only and
    the remaining slots are drawn so that the hypotheses are often met."""
    S, rng = C.S, C.rng
    pool, thin = C.pool, C.thin
    total = len(thin) * len(pool) ** (k - 1)
    if total <= C.budget:
        for t in itertools.product(thin, *([pool] * (k - 1))):
            if not pred(*t):
                return PropertyResult(False, t, True, total)
        return PropertyResult(True, None, True, total)
    count = 0
    for _ in range(C.budget):
        x = rng.choice(thin)
        near = C.balancing(x)
        bb = rng.choice(near) if near else rng.choice(pool)
        c = rng.choice(pool)
        cx = S.mul(c, x)
        dn = C.balancing(cx)
        d = rng.choice(dn) if dn and rng.random() < 0.9 else rng.choice(pool)
        count += 1
        if not pred(x, bb, c, d):
            return PropertyResult(False, (x, bb, c, d), False, count)
    return PropertyResult(True, None, False, count)


def _systems(C: _Checker, pred) -> PropertyResult:
    S, rng = C.S, C.rng
    pool, thin = C.pool, C.thin
    count = 0
    small = len(pool) <= 4
    if small:
        for p in (1, 2):
            for a in thin:
                for xs in itertools.product(thin, repeat=p):
                    for bs in itertools.product(pool, repeat=p):
                        for cs in itertools.product(pool, repeat=p):
                            for d in pool:
                                count += 1
                                if not pred(a, xs, bs, cs, d):
                                    return PropertyResult(False, (a, xs, bs, cs, d), True, count)
        return PropertyResult(True, None, True, count)
    for _ in range(C.budget):
        p = rng.choice((1, 2))
        a = rng.choice(thin)
        xs = tuple(rng.choice(thin) for _ in range(p))
        bs = []
        for x in xs:
            near = C.balancing(S.mul(a, x))
            bs.append(rng.choice(near) if near else rng.choice(pool))
        cs = tuple(rng.choice(pool) for _ in range(p))
        cx = S.sum(S.mul(c, x) for c, x in zip(cs, xs))
        dn = C.balancing(cx)
        d = rng.choice(dn) if dn and rng.random() < 0.9 else rng.choice(pool)
        count += 1
        if not pred(a, xs, tuple(bs), cs, d):
            return PropertyResult(False, (a, xs, tuple(bs), cs, d), False, count)
    return PropertyResult(True, None, False, count)


def _order(C: _Checker, R: dict) -> None:
    S = C.S
    mod = S.modulus
    thin = C.thin

    def strong_bal(x, y):
        return mod(x) == mod(y) and S.balances(x, y)

    def witness_exists(x, y):
        if not (S.is_thin(x) and S.leq(x, y)):
            return True
        for z in [x, y] + S.witnesses(y):
            if S.is_thin(z) and S.leq(x, z) and S.leq(z, y) and strong_bal(z, y):
                return True
        return False

    R["order_witness"] = C.forall(2, witness_exists)
    R["order_equal"] = C.forall(
        2, lambda x, y: not (S.leq(x, y) and mod(x) == mod(y)) or x == y, pool=thin
    )
    # Chains of thin elements of one modulus are finite whenever comparable
    # thin elements of equal modulus coincide, or when the base is finite.
    finite_base = S.base is not None and S.base.elements is not None
    oe = R["order_equal"]
    R["order_finite"] = PropertyResult(
        finite_base or oe.passed, None if finite_base or oe.passed else oe.witness, oe.exhaustive, oe.checked
    )

    invertible_thin = [d for d in thin if S.is_invertible(d)]

    def transfer(d, x, y):
        lhs = strong_bal(S.mul(d, x), y)
        rhs = strong_bal(x, S.mul(S.inv(d), y))
        return lhs == rhs

    R["inverse_transfer"] = _forall_first(C, transfer, invertible_thin)


def _forall_first(C: _Checker, pred, first) -> PropertyResult:
    pool = C.pool
    total = len(first) * len(pool) ** 2
    if total <= C.budget:
        for t in itertools.product(first, pool, pool):
            if not pred(*t):
                return PropertyResult(False, t, True, total)
        return PropertyResult(True, None, True, total)
    rng = C.rng
    for i in range(C.budget):
        t = (rng.choice(first), rng.choice(pool), rng.choice(pool))
        if not pred(*t):
            return PropertyResult(False, t, False, i + 1)
    return PropertyResult(True, None, False, C.budget)


def _tropical(C: _Checker, R: dict) -> None:
    S = C.S
    mod = S.modulus

    R["invertible_exact"] = C.forall(
        1,
        lambda a: S.is_invertible(a) == (S.is_thin(a) and a != S.zero) == (not S.is_balanced(a)),
    )
    R["zero_modulus"] = C.forall(1, lambda a: (a == S.zero) == (mod(a) == BOTTOM))

    def sum_witness(*xs):
        x = S.sum(xs)
        if not S.is_balanced(x) or x == S.zero:
            return True
        m = mod(x)
        if any(S.is_balanced(t) and mod(t) == m for t in xs):
            return True
        for i, j in itertools.combinations(range(len(xs)), 2):
            if mod(xs[i]) == mod(xs[j]) == m and S.is_balanced(S.add(xs[i], xs[j])):
                return True
        return False

    r2 = C.forall(2, sum_witness)
    r3 = C.forall(3, sum_witness) if r2.passed else r2
    R["balanced_sum_witness"] = PropertyResult(
        r2.passed and r3.passed, r2.witness or r3.witness, r2.exhaustive and r3.exhaustive, r2.checked + r3.checked
    )
    R["balanced_absorbs_smaller"] = C.forall(
        2, lambda x, y: not (S.is_balanced(x) and mod(y) <= mod(x)) or S.is_balanced(S.add(x, y))
    )


def declared_traits_hold(S: Semiring, report: AxiomReport) -> dict:
    """Compare the traits a descriptor declares with what the checker found."""
    out = {}
    for trait in S.traits:
        if trait == "strong_elimination":
            out[trait] = report.strong_elimination
        elif trait == "weak_elimination":
            out[trait] = report.weak_elimination
        elif trait == "tropical":
            out[trait] = all(report.holds(p) for p in TROPICAL_PROPERTIES)
        else:
            out[trait] = report.holds(trait)
    return out

"""Optimal collaterals for a single enterprise (star network).

The search space is finite: every elimination order over the investors has a
unique minimal collateral vector, and an optimal solution always has the
shape "full collaterals to a set A first, then the remaining players in
non-increasing order of investment with closed-form partial collaterals".
`solve_star` therefore enumerates subsets (O(2^d d)); `brute_force_star`
enumerates all d! orders and serves as the independent oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .model import InvestmentNetwork, as_money

SOLVE_GUARD = 25
BRUTE_FORCE_GUARD = 9


@dataclass(frozen=True)
class StarInstance:
    """A single enterprise: investor amounts, operational cost, interest rate."""

    amounts: tuple
    cost: Fraction
    rate: Fraction

    def __init__(self, amounts, cost, rate):
        object.__setattr__(self, "amounts", tuple(as_money(x) for x in amounts))
        object.__setattr__(self, "cost", as_money(cost))
        object.__setattr__(self, "rate", as_money(rate))
        for x in self.amounts:
            if x <= 0:
                raise ValueError("investment amounts must be positive")
        if self.cost < 0 or self.rate <= 0:
            raise ValueError("cost must be nonnegative and rate positive")

    @property
    def size(self):
        return len(self.amounts)

    def is_profitable(self):
        total = sum(self.amounts, Fraction(0))
        return (1 + self.rate) * (total - self.cost) >= total

    def to_network(self):
        """Embed as an InvestmentNetwork: enterprise vertex 0, investors 1..d."""
        edges = [(0, i + 1, x) for i, x in enumerate(self.amounts)]
        cost = {0: self.cost}
        rate = {0: self.rate}
        return InvestmentNetwork(self.size + 1, edges, cost=cost, rate=rate)


@dataclass(frozen=True)
class StarSolution:
    collaterals: tuple
    total: Fraction
    order: tuple
    full_set: frozenset


def minimal_vector_for_order(star, order):
    """Unique minimal collateral vector making `order` an elimination order.

    Player sigma_i needs collateral covering her worst-case shortfall, with
    only the preceding players (and herself) investing:
    c = x * max(0, min(1, 1 - (1+alpha)[1 - Z / prefix_sum])).
    """
    if sorted(order) != list(range(star.size)):
        raise ValueError("order must be a permutation of the players")
    c = [None] * star.size
    prefix = Fraction(0)
    for idx in order:
        prefix += star.amounts[idx]
        inner = 1 - (1 + star.rate) * (1 - star.cost / prefix)
        c[idx] = star.amounts[idx] * max(Fraction(0), min(Fraction(1), inner))
    return tuple(c)


def sigma_for_set(star, full_set):
    """Order with `full_set` as prefix (input order) followed by the rest in
    non-increasing investment order, ties by input index."""
    full_set = frozenset(full_set)
    prefix = sorted(full_set)
    rest = sorted(
        (i for i in range(star.size) if i not in full_set),
        key=lambda i: (-star.amounts[i], i),
    )
    return tuple(prefix + rest)


def optimal_partial_for_set(star, full_set):
    """Collateral vector with full collaterals on `full_set` and the
    closed-form partial amounts for everyone else, processed in
    non-increasing investment order.

    A partial amount that the formula would push above the investment is
    capped at it (equivalently, the min(1, .) clamp of the per-order minimal
    vector); amounts above the investment are payoff-equivalent.
    """
    full_set = frozenset(full_set)
    c = [None] * star.size
    covered = Fraction(0)
    for i in full_set:
        c[i] = star.amounts[i]
        covered += star.amounts[i]
    prefix = covered
    for i in sigma_for_set(star, full_set):
        if i in full_set:
            continue
        x = star.amounts[i]
        prefix += x
        raw = x * (1 - (1 + star.rate) * (1 - star.cost / prefix))
        c[i] = max(Fraction(0), min(raw, x))
    return tuple(c)


def solve_star(star):
    """Minimum-total viable collateral vector via subset enumeration.

    Among equal totals the lexicographically smallest full-collateral set is
    returned; tests should compare totals only.
    """
    d = star.size
    if d > SOLVE_GUARD:
        raise ValueError("star has %d players; enumeration guard is %d" % (d, SOLVE_GUARD))
    if not star.is_profitable():
        raise ValueError("star instance is not profitable")
    best = None
    for mask in range(1 << d):
        full_set = tuple(i for i in range(d) if mask >> i & 1)
        c = optimal_partial_for_set(star, full_set)
        total = sum(c, Fraction(0))
        key = (total, full_set)
        if best is None or key < best[0]:
            best = (key, c, full_set)
    _, c, full_set = best
    return StarSolution(
        collaterals=c,
        total=sum(c, Fraction(0)),
        order=sigma_for_set(star, full_set),
        full_set=frozenset(full_set),
    )


def brute_force_star(star):
    """Minimum over the per-order minimal vectors of all d! orders.

    Test oracle for `solve_star`; refuses beyond the factorial guard.
    """
    d = star.size
    if d > BRUTE_FORCE_GUARD:
        raise ValueError("brute force guard is %d players" % BRUTE_FORCE_GUARD)
    best = None
    for order in itertools.permutations(range(d)):
        c = minimal_vector_for_order(star, order)
        total = sum(c, Fraction(0))
        key = (total, order)
        if best is None or key < best[0]:
            best = (key, c, order)
    _, c, order = best
    full_set = frozenset(i for i in range(d) if c[i] == star.amounts[i])
    return StarSolution(c, sum(c, Fraction(0)), tuple(order), full_set)

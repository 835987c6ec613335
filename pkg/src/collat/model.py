"""Core model of the networked investment game.

A directed edge (k, i) with weight x_ki is an opportunity of player i to
invest the amount x_ki in the enterprise of vertex k.  Players decide per
edge whether to invest ("cooperate") or decline ("defect").  An enterprise
that fails to raise its operational cost defaults and withdraws all of its
own investments, which can cascade.

All monetary quantities are `fractions.Fraction`.  Comparisons are exact and
ties are load-bearing (capital exactly covering the cost counts as solvent;
a payoff exactly matching the defect payoff resolves to investing), so
nothing in this package uses floats.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

Money = Fraction


def as_money(value):
    """Convert to an exact Fraction, rejecting floats outright."""
    if isinstance(value, float):
        raise TypeError(
            "float amounts are not allowed; pass int, Fraction or a 'p/q' string"
        )
    return Fraction(value)


@dataclass(frozen=True)
class Edge:
    """Investment opportunity: `investor` may put `amount` into `enterprise`."""

    enterprise: int
    investor: int
    amount: Fraction


class Action(enum.Enum):
    COOPERATE = "cooperate"
    DEFECT = "defect"


class InvestmentNetwork:
    """An investment network: vertices, weighted opportunity edges, and
    per-enterprise cost / interest-rate parameters.

    Vertices are integers 0..n-1; `ids` optionally carries external names for
    reporting.  `cost[k]` and `rate[k]` are only meaningful for enterprise
    vertices (non-zero out-degree); they default to 0 elsewhere.
    """

    def __init__(self, n, edges, cost=None, rate=None, ids=None):
        self.n = int(n)
        norm = []
        for e in edges:
            if isinstance(e, Edge):
                norm.append(Edge(e.enterprise, e.investor, as_money(e.amount)))
            else:
                k, i, x = e
                norm.append(Edge(int(k), int(i), as_money(x)))
        self.edges = tuple(norm)
        self.cost = self._per_vertex(cost)
        self.rate = self._per_vertex(rate)
        self.ids = tuple(ids) if ids is not None else tuple(range(self.n))
        self.enterprise_set = frozenset(e.enterprise for e in self.edges)
        self.out_edges = {k: [] for k in range(self.n)}
        self.in_edges = {i: [] for i in range(self.n)}
        for idx, e in enumerate(self.edges):
            self.out_edges[e.enterprise].append(idx)
            self.in_edges[e.investor].append(idx)
        self.edge_index = {(e.enterprise, e.investor): idx for idx, e in enumerate(self.edges)}
        self._cascade_cache = {}

    def _per_vertex(self, values):
        if values is None:
            return tuple(Fraction(0) for _ in range(self.n))
        if isinstance(values, dict):
            return tuple(as_money(values.get(v, 0)) for v in range(self.n))
        out = [as_money(v) for v in values]
        if len(out) != self.n:
            raise ValueError("per-vertex parameter length must equal n")
        return tuple(out)

    def total_opportunities(self, k):
        """X_k: the sum of investment opportunities in enterprise k."""
        return sum((self.edges[e].amount for e in self.out_edges[k]), Fraction(0))

    def all_edges(self):
        return frozenset(range(len(self.edges)))

    def __repr__(self):
        return "InvestmentNetwork(n=%d, edges=%d)" % (self.n, len(self.edges))


@dataclass(frozen=True)
class InvestState:
    """Fixed point of the default cascade: defaulted vertices plus the
    surviving invest edges (cooperate edges whose investor is solvent and
    whose enterprise did not default)."""

    defaulted: frozenset
    invest: frozenset


class CollateralMatrix:
    """Per-edge nonnegative collateral amounts, aligned with a network's
    edge list.  Amounts above the investment are normalized down to it:
    they are payoff-equivalent and normalization keeps minimality tests
    well-defined."""

    def __init__(self, net, amounts):
        self.net = net
        if isinstance(amounts, dict):
            values = [amounts.get(e, 0) for e in range(len(net.edges))]
        else:
            values = list(amounts)
            if len(values) != len(net.edges):
                raise ValueError("collateral vector length must match edge count")
        out = []
        for e, v in enumerate(values):
            c = as_money(v)
            if c < 0:
                raise ValueError("collateral amounts must be nonnegative")
            out.append(min(c, net.edges[e].amount))
        self.amounts = tuple(out)

    @classmethod
    def zeros(cls, net):
        return cls(net, [0] * len(net.edges))

    @classmethod
    def full(cls, net):
        return cls(net, [e.amount for e in net.edges])

    def total(self):
        return sum(self.amounts, Fraction(0))

    def replace(self, edge, amount):
        values = list(self.amounts)
        values[edge] = amount
        return CollateralMatrix(self.net, values)

    def __getitem__(self, edge):
        return self.amounts[edge]

    def __iter__(self):
        return iter(self.amounts)

    def __eq__(self, other):
        return isinstance(other, CollateralMatrix) and self.amounts == other.amounts

    def __repr__(self):
        return "CollateralMatrix(%s)" % (self.amounts,)


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self):
        return not self.violations


def validate_network(net):
    """Check structural invariants and per-enterprise profitability.

    Profitability requires (1 + alpha_k)(X_k - Z_k) >= X_k for every
    enterprise k; unprofitable enterprises should be removed from the input
    rather than modeled.  Returns an itemized report and never raises.
    """
    violations = []
    seen = set()
    for idx, e in enumerate(net.edges):
        if e.amount <= 0:
            violations.append("edge %d (%s -> %s): non-positive edge weight" % (idx, e.enterprise, e.investor))
        if e.enterprise == e.investor:
            violations.append("edge %d: self-edge at vertex %s" % (idx, e.enterprise))
        if not (0 <= e.enterprise < net.n and 0 <= e.investor < net.n):
            violations.append("edge %d: endpoint out of range" % idx)
        key = (e.enterprise, e.investor)
        if key in seen:
            violations.append("duplicate edge (%s, %s)" % key)
        seen.add(key)
    for k in sorted(net.enterprise_set):
        z = net.cost[k]
        a = net.rate[k]
        if z < 0:
            violations.append("enterprise %s: negative cost" % (k,))
        if a <= 0:
            violations.append("enterprise %s: rate must be positive" % (k,))
        x_total = net.total_opportunities(k)
        if (1 + a) * (x_total - z) < x_total:
            violations.append(
                "enterprise %s: unprofitable ((1+%s)(%s-%s) < %s)" % (k, a, x_total, z, x_total)
            )
    return ValidationReport(violations)


def default_determination(net, cooperate):
    """Least fixed point of the default cascade (worst-case, zero recovery).

    Starting from the cooperate edges, repeatedly mark any enterprise whose
    raised capital falls strictly below its cost as defaulted and drop all of
    that firm's own investments.  The result is independent of processing
    order.  Raising exactly Z_k counts as solvent.
    """
    cooperate = frozenset(cooperate)
    cached = net._cascade_cache.get(cooperate)
    if cached is not None:
        return cached
    defaulted = set()
    changed = True
    while changed:
        changed = False
        for k in net.enterprise_set:
            if k in defaulted:
                continue
            inflow = Fraction(0)
            for e in net.out_edges[k]:
                if e in cooperate and net.edges[e].investor not in defaulted:
                    inflow += net.edges[e].amount
            if inflow < net.cost[k]:
                defaulted.add(k)
                changed = True
    invest = frozenset(
        e
        for e in cooperate
        if net.edges[e].investor not in defaulted and net.edges[e].enterprise not in defaulted
    )
    state = InvestState(frozenset(defaulted), invest)
    net._cascade_cache[cooperate] = state
    return state


def enterprise_return(net, invest, edge):
    """Proportional share of the enterprise's net return for one invest edge,
    clamped at zero."""
    if edge not in invest:
        raise ValueError("return is undefined for a non-invest edge")
    e = net.edges[edge]
    k = e.enterprise
    raised = Fraction(0)
    for other in net.out_edges[k]:
        if other in invest:
            raised += net.edges[other].amount
    total_net = (1 + net.rate[k]) * (raised - net.cost[k])
    if total_net <= 0:
        return Fraction(0)
    return total_net * e.amount / raised


def edge_utility(net, c, cooperate, edge):
    """Utility of the player of one edge under a full cooperate profile.

    Defect pays the withheld amount; cooperating while in default pays
    nothing; investing pays min(R + c, x) when the return R does not exceed
    the investment, and R itself when it does.
    """
    cooperate = frozenset(cooperate)
    e = net.edges[edge]
    if edge not in cooperate:
        return e.amount
    state = default_determination(net, cooperate)
    if e.investor in state.defaulted:
        return Fraction(0)
    if e.enterprise in state.defaulted:
        r = Fraction(0)
    else:
        r = enterprise_return(net, state.invest, edge)
    if r > e.amount:
        return r
    return min(r + c[edge], e.amount)


def player_utility(net, c, cooperate, player):
    """Sum of the player's edge utilities over all incoming opportunities."""
    return sum(
        (edge_utility(net, c, cooperate, e) for e in net.in_edges[player]), Fraction(0)
    )


def best_response(net, c, cooperate, edge):
    """Best action on one edge, all other edges held fixed by `cooperate`.

    Ties resolve to investing; a player who would default when cooperating
    earns 0 < x and therefore defects.
    """
    with_edge = frozenset(cooperate) | {edge}
    u_coop = edge_utility(net, c, with_edge, edge)
    if u_coop >= net.edges[edge].amount:
        return Action.COOPERATE
    return Action.DEFECT


def is_nash_equilibrium(net, c, cooperate):
    """True iff every edge's chosen action is its best response."""
    cooperate = frozenset(cooperate)
    for edge in range(len(net.edges)):
        chosen = Action.COOPERATE if edge in cooperate else Action.DEFECT
        if best_response(net, c, cooperate, edge) is not chosen:
            return False
    return True

"""Network-level collateral solvers.

Acyclic networks decompose exactly into independent single-enterprise
problems (the network premium NEC is 1).  Cyclic networks do not; the exact
solver runs a dynamic program over resolved edge-sets, exploiting the fact
that the minimal collateral making an edge eliminable depends only on the
*set* of already-resolved edges, never on their order.  That collapses the
order search from O(|E|!) to O(2^|E| |E|).

For integer inputs with alpha_k > Z_k every positive collateral of an
optimal solution is a full collateral, so `solve_large_alpha` searches 0/full
assignments in increasing total order instead.
"""
from __future__ import annotations

import enum
import heapq
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter

from .analysis import (
    InfeasibilityWitness,
    is_large_alpha,
    is_viable,
    iterated_elimination,
    solvability_check,
)
from .model import CollateralMatrix, InvestmentNetwork, default_determination
from .star import StarInstance, solve_star

log = logging.getLogger(__name__)

EXACT_GUARD = 20


class CyclicInputError(ValueError):
    """The network contains a directed cycle where an acyclic one is required."""


class TooLargeError(ValueError):
    """The instance exceeds a solver's state-space guard; the solvers refuse
    rather than approximate (the problem is NP-hard in general)."""


class Status(enum.Enum):
    SOLVED = "solved"
    INFEASIBLE = "infeasible"


@dataclass
class Solution:
    status: Status
    collaterals: CollateralMatrix | None = None
    total: Fraction | None = None
    order: tuple = ()
    star_totals: dict = field(default_factory=dict)  # actual per-enterprise sums
    star_optima: dict = field(default_factory=dict)  # stand-alone star optima
    nec: Fraction | None = None
    witness: InfeasibilityWitness | None = None
    method: str = ""


def star_decomposition(net):
    """One (enterprise, StarInstance, edge index tuple) per enterprise vertex.

    The same investor vertex may appear in several stars.
    """
    out = []
    for k in sorted(net.enterprise_set):
        edge_ids = tuple(net.out_edges[k])
        star = StarInstance(
            [net.edges[e].amount for e in edge_ids], net.cost[k], net.rate[k]
        )
        out.append((k, star, edge_ids))
    return out


def _topological_vertices(net):
    ts = TopologicalSorter({v: set() for v in range(net.n)})
    for e in net.edges:
        ts.add(e.investor, e.enterprise)
    try:
        return list(ts.static_order())
    except CycleError as exc:
        raise CyclicInputError("network contains a directed cycle") from exc


def is_acyclic(net):
    try:
        _topological_vertices(net)
    except CyclicInputError:
        return False
    return True


def _star_optima(net):
    return {k: solve_star(star).total for k, star, _ in star_decomposition(net)}


def _per_star_sums(net, c):
    return {
        k: sum((c[e] for e in net.out_edges[k]), Fraction(0))
        for k in sorted(net.enterprise_set)
    }


def _finish(net, status, c, order, method, star_optima=None):
    if star_optima is None:
        star_optima = _star_optima(net)
    total = c.total()
    denom = sum(star_optima.values(), Fraction(0))
    nec = Fraction(1) if denom == 0 else total / denom
    return Solution(
        status=status,
        collaterals=c,
        total=total,
        order=tuple(order),
        star_totals=_per_star_sums(net, c),
        star_optima=star_optima,
        nec=nec,
        method=method,
    )


def solve_dag(net):
    """Optimal collaterals for an acyclic network: solve each star of the
    decomposition independently and eliminate enterprises in reverse
    topological order (an enterprise is fully secured before anyone upstream
    relies on it, so cascades never bite)."""
    topo = _topological_vertices(net)
    stars = {k: (star, edge_ids) for k, star, edge_ids in star_decomposition(net)}
    amounts = {}
    order = []
    star_optima = {}
    for k in reversed(topo):
        if k not in net.enterprise_set:
            continue
        star, edge_ids = stars[k]
        sol = solve_star(star)
        star_optima[k] = sol.total
        for pos in sol.order:
            edge = edge_ids[pos]
            amounts[edge] = sol.collaterals[pos]
            order.append(edge)
    c = CollateralMatrix(net, amounts)
    out = _finish(net, Status.SOLVED, c, order, "dag", star_optima)
    assert out.nec == 1
    return out


def minimal_matrix_for_resolved_set(net, resolved, edge):
    """Minimal collateral making `edge` eliminable once `resolved` is secured.

    With cooperate set resolved + {edge} and the cascade applied: None if the
    edge's player defaults (no collateral helps), else max(0, x - R) where R
    is the player's worst-case return.  Depends on the resolved *set* only.
    """
    cooperate = frozenset(resolved) | {edge}
    state = default_determination(net, cooperate)
    e = net.edges[edge]
    if e.investor in state.defaulted:
        return None
    if e.enterprise in state.defaulted:
        r = Fraction(0)
    else:
        raised = Fraction(0)
        for other in net.out_edges[e.enterprise]:
            if other in state.invest:
                raised += net.edges[other].amount
        total_net = (1 + net.rate[e.enterprise]) * (raised - net.cost[e.enterprise])
        r = max(Fraction(0), total_net * e.amount / raised)
    return max(Fraction(0), e.amount - r)


def _scaled_ints(net):
    """Common-denominator integer scaling so cascade solvency checks run on
    plain ints inside the DP hot loop."""
    den = 1
    for e in net.edges:
        den = math.lcm(den, e.amount.denominator)
    for k in net.enterprise_set:
        den = math.lcm(den, net.cost[k].denominator)
    wx = [int(e.amount * den) for e in net.edges]
    zi = {k: int(net.cost[k] * den) for k in net.enterprise_set}
    return den, wx, zi


def solve_exact(net):
    """Exact minimum-total collaterals for any solvable network.

    Subset DP over resolved edge-sets: cost(S + e) relaxes over
    cost(S) + minimal collateral for e given S.  Every viable matrix admits
    an elimination order, so the DP minimum is the global optimum.
    """
    m = len(net.edges)
    if m > EXACT_GUARD:
        raise TooLargeError("exact solver guard is |E| <= %d (got %d)" % (EXACT_GUARD, m))
    check = solvability_check(net)
    if not check.solvable:
        return Solution(Status.INFEASIBLE, witness=check.witness, method="exact")

    den, wx, zi = _scaled_ints(net)
    ents = [e.enterprise for e in net.edges]
    invs = [e.investor for e in net.edges]
    ent_list = sorted(net.enterprise_set)
    ent_edges = {
        k: [(1 << e, invs[e], wx[e]) for e in net.out_edges[k]] for k in ent_list
    }

    cascade_memo = {}

    def cascade(cmask):
        got = cascade_memo.get(cmask)
        if got is not None:
            return got
        defaulted = 0
        changed = True
        while changed:
            changed = False
            for k in ent_list:
                if defaulted >> k & 1:
                    continue
                s = 0
                for ebit, inv, w in ent_edges[k]:
                    if cmask & ebit and not defaulted >> inv & 1:
                        s += w
                if s < zi[k]:
                    defaulted |= 1 << k
                    changed = True
        cascade_memo[cmask] = defaulted
        return defaulted

    size = 1 << m
    cost = [None] * size
    cost[0] = Fraction(0)
    parent = [-1] * size
    zero = Fraction(0)
    for s_mask in range(size):
        base = cost[s_mask]
        if base is None:
            continue
        for e in range(m):
            bit = 1 << e
            if s_mask & bit:
                continue
            cmask = s_mask | bit
            dmask = cascade(cmask)
            if dmask >> invs[e] & 1:
                continue
            k = ents[e]
            if dmask >> k & 1:
                w = net.edges[e].amount
            else:
                raised = 0
                for ebit, inv, wgt in ent_edges[k]:
                    if cmask & ebit and not dmask >> inv & 1:
                        raised += wgt
                net_gain = raised - zi[k]
                if net_gain <= 0:
                    r = zero
                else:
                    r = (1 + net.rate[k]) * Fraction(net_gain * wx[e], raised * den)
                w = net.edges[e].amount - r
                if w < 0:
                    w = zero
            new_cost = base + w
            cur = cost[cmask]
            if cur is None or new_cost < cur:
                cost[cmask] = new_cost
                parent[cmask] = e

    full = size - 1
    assert cost[full] is not None  # guaranteed by the solvability check
    amounts = {}
    order = []
    s_mask = full
    while s_mask:
        e = parent[s_mask]
        prev = s_mask ^ (1 << e)
        amounts[e] = cost[s_mask] - cost[prev]
        order.append(e)
        s_mask = prev
    order.reverse()
    c = CollateralMatrix(net, amounts)
    return _finish(net, Status.SOLVED, c, order, "exact")


def _subsets_by_total(weights):
    """Yield (total, index frozenset) over all subsets in non-decreasing
    total order; indices refer to the input sequence."""
    order = sorted(range(len(weights)), key=lambda i: (weights[i], i))
    heap = [(Fraction(0), 0, ())]
    counter = 1
    while heap:
        total, _, chosen = heapq.heappop(heap)
        yield total, frozenset(order[i] for i in chosen)
        start = chosen[-1] + 1 if chosen else 0
        for j in range(start, len(order)):
            heapq.heappush(
                heap, (total + weights[order[j]], counter, chosen + (j,))
            )
            counter += 1


def solve_large_alpha(net):
    """Optimal collaterals in the integer large-rate regime by best-first
    search over 0/full assignments, cheapest total first; the first viable
    assignment is optimal because every optimal solution is 0/full here."""
    if not is_large_alpha(net):
        raise ValueError("network is not in the large-alpha regime")
    check = solvability_check(net)
    if not check.solvable:
        return Solution(Status.INFEASIBLE, witness=check.witness, method="large-alpha")
    weights = [e.amount for e in net.edges]
    for _, full_edges in _subsets_by_total(weights):
        c = CollateralMatrix(
            net, [weights[e] if e in full_edges else 0 for e in range(len(weights))]
        )
        order, stuck = iterated_elimination(net, c)
        if not stuck:
            return _finish(net, Status.SOLVED, c, order, "large-alpha")
    raise AssertionError("solvable network must accept full collaterals")


def compute_nec(net, sol):
    """Network Excess Collaterals: the solution total over the sum of the
    stand-alone star optima.  1 means cycles cost nothing extra."""
    if sol.status is not Status.SOLVED:
        raise ValueError("NEC is undefined for an infeasible network")
    denom = sum(_star_optima(net).values(), Fraction(0))
    if denom == 0:
        return Fraction(1)
    return sol.total / denom


def _is_single_star(net):
    return len(net.enterprise_set) == 1


def solve(net):
    """Dispatch to the cheapest applicable solver.

    Single enterprise -> star enumeration; acyclic -> per-star composition;
    integer large-rate -> 0/full search; otherwise the exact subset DP
    (subject to its guard).
    """
    check = solvability_check(net)
    if not check.solvable:
        return Solution(Status.INFEASIBLE, witness=check.witness, method="none")
    if _is_single_star(net):
        k = next(iter(net.enterprise_set))
        _, star, edge_ids = star_decomposition(net)[0]
        ssol = solve_star(star)
        amounts = {edge_ids[pos]: ssol.collaterals[pos] for pos in range(star.size)}
        c = CollateralMatrix(net, amounts)
        order = [edge_ids[pos] for pos in ssol.order]
        out = _finish(net, Status.SOLVED, c, order, "star", {k: ssol.total})
    elif is_acyclic(net):
        out = solve_dag(net)
    elif is_large_alpha(net):
        out = solve_large_alpha(net)
    else:
        out = solve_exact(net)
    log.info("solve dispatched to %s solver", out.method)
    return out

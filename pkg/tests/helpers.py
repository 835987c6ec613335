"""Shared independent oracles for the test suite.

These deliberately avoid the solver code paths they are used to check:
equilibria are found by exhaustive enumeration of all pure profiles, and
elimination orders are re-validated position by position from the raw
best-response predicate.
"""
from fractions import Fraction

from collat import Action, best_response, is_nash_equilibrium


def enumerate_nash(net, c):
    """All pure Nash equilibria, as frozensets of cooperate edges, by brute
    force over the 2^|E| profiles."""
    m = len(net.edges)
    assert m <= 12, "exhaustive oracle guard"
    found = []
    for mask in range(1 << m):
        profile = frozenset(e for e in range(m) if mask >> e & 1)
        if is_nash_equilibrium(net, c, profile):
            found.append(profile)
    return found


def unique_all_cooperate(net, c):
    """True iff all-invest is the one and only pure Nash equilibrium."""
    return enumerate_nash(net, c) == [net.all_edges()]


def assert_valid_elimination_order(net, c, order):
    """Each position must weakly prefer investing (solvent, tie to invest)
    with only its predecessors already resolved."""
    assert sorted(order) == sorted(net.all_edges())
    for t, edge in enumerate(order):
        resolved = frozenset(order[:t])
        assert best_response(net, c, resolved, edge) is Action.COOPERATE, (
            "position %d (edge %d) is not eliminable" % (t, edge)
        )


def assert_minimal(net, c, is_viable):
    """Per-coordinate epsilon-reduction must break viability."""
    positives = [a for a in c.amounts if a > 0]
    if not positives:
        return
    eps = min(positives) / 2
    for e, amount in enumerate(c.amounts):
        if amount == 0:
            continue
        reduced = c.replace(e, amount - eps)
        assert not is_viable(net, reduced), "coordinate %d is reducible" % e

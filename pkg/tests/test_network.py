import random
from fractions import Fraction

import pytest

from collat import (
    CollateralMatrix,
    CyclicInputError,
    InvestmentNetwork,
    Status,
    TooLargeError,
    compute_nec,
    gen_cycle_family,
    is_viable,
    minimal_matrix_for_resolved_set,
    random_network,
    solvability_check,
    solve,
    solve_dag,
    solve_exact,
    solve_large_alpha,
    star_decomposition,
    validate_network,
)
from helpers import assert_minimal, assert_valid_elimination_order


@pytest.fixture
def chain_net():
    # s --2--> P --2--> Q <--1-- t : P both runs an enterprise and invests in Q
    return InvestmentNetwork(
        4,
        [(1, 0, 2), (1, 3, 1), (0, 2, 2)],
        cost={0: 1, 1: 2},
        rate={0: 1, 1: 2},
    )


@pytest.fixture
def spiked_cycle_net():
    # P <-> Q cycle, each with a weight-2 spike; fractional-free but not
    # in the large-rate regime (rate == cost)
    return InvestmentNetwork(
        4,
        [(0, 1, 1), (0, 2, 2), (1, 0, 1), (1, 3, 2)],
        cost={0: 2, 1: 2},
        rate={0: 2, 1: 2},
    )


class TestStarDecomposition:
    def test_cycle_family_stars(self):
        net = gen_cycle_family(7)
        stars = star_decomposition(net)
        assert len(stars) == 3
        for k, star, edge_ids in stars:
            assert sorted(star.amounts) == [1, 1, 7]
            assert star.cost == 8 and star.rate == 14
            assert [net.edges[e].enterprise for e in edge_ids] == [k] * 3

    def test_shared_investor_appears_in_both_stars(self, chain_net):
        stars = star_decomposition(chain_net)
        investors = {
            k: {chain_net.edges[e].investor for e in ids} for k, _, ids in stars
        }
        assert 0 in investors[1] and investors[0] == {2}


class TestSolveDag:
    def test_chain_network(self, chain_net):
        sol = solve_dag(chain_net)
        assert sol.status is Status.SOLVED
        assert sol.total == 1
        assert sol.nec == 1
        assert sol.star_optima == {0: 0, 1: 1}
        assert sol.star_totals == {0: 0, 1: 1}
        assert_valid_elimination_order(chain_net, sol.collaterals, list(sol.order))

    def test_rejects_cycles(self, spiked_cycle_net):
        with pytest.raises(CyclicInputError):
            solve_dag(spiked_cycle_net)

    def test_matches_exact_solver_on_random_dags(self):
        rng = random.Random(101)
        done = 0
        while done < 20:
            net = random_network(
                rng.randint(3, 7), 3, acyclic=True, seed=rng.randint(0, 10**6)
            )
            if not 0 < len(net.edges) <= 12:
                continue
            done += 1
            sol = solve_dag(net)
            assert sol.total == solve_exact(net).total
            assert sol.nec == 1
            assert is_viable(net, sol.collaterals)


class TestMinimalMatrixForResolvedSet:
    def test_first_mover_pays_full_shortfall(self):
        net = InvestmentNetwork(3, [(0, 1, 1), (0, 2, 1)], cost={0: 1}, rate={0: 1})
        assert minimal_matrix_for_resolved_set(net, frozenset(), 0) == 1

    def test_second_mover_free(self):
        net = InvestmentNetwork(3, [(0, 1, 1), (0, 2, 1)], cost={0: 1}, rate={0: 1})
        assert minimal_matrix_for_resolved_set(net, frozenset({1}), 0) == 0

    def test_defaulting_investor_is_hopeless(self):
        net = InvestmentNetwork(
            4,
            [(0, 1, 1), (0, 2, 1), (1, 3, 1), (1, 0, 1)],
            cost={0: 2, 1: 2},
            rate={0: 2, 1: 2},
        )
        # P's investment in Q: P is underfunded and defaults regardless
        assert minimal_matrix_for_resolved_set(net, frozenset(), 3) is None

    def test_depends_on_set_not_order(self):
        rng = random.Random(103)
        for trial in range(20):
            net = random_network(rng.randint(3, 6), 3, seed=rng.randint(0, 10**6))
            edges = list(net.all_edges())
            if len(edges) < 2:
                continue
            e = rng.choice(edges)
            rest = [x for x in edges if x != e]
            resolved = frozenset(x for x in rest if rng.random() < 0.5)
            a = minimal_matrix_for_resolved_set(net, resolved, e)
            b = minimal_matrix_for_resolved_set(net, frozenset(sorted(resolved)), e)
            assert a == b


class TestSolveExact:
    def test_cycle_family_totals(self):
        for k in (3, 7):
            net = gen_cycle_family(k)
            sol = solve_exact(net)
            assert sol.status is Status.SOLVED
            assert sol.total == k + 5
            assert sorted(sol.star_totals.values()) == [2, 2, k + 1]
            assert sum(sol.star_optima.values()) == 6
            assert sol.nec == Fraction(k + 5, 6)
            assert is_viable(net, sol.collaterals)
            assert_valid_elimination_order(net, sol.collaterals, list(sol.order))

    def test_spiked_cycle(self, spiked_cycle_net):
        sol = solve_exact(spiked_cycle_net)
        assert sol.status is Status.SOLVED
        assert is_viable(spiked_cycle_net, sol.collaterals)
        assert_minimal(spiked_cycle_net, sol.collaterals, is_viable)

    def test_infeasible_two_cycle(self):
        net = InvestmentNetwork(
            2, [(0, 1, 1), (1, 0, 1)], cost={0: 1, 1: 1}, rate={0: 5, 1: 5}
        )
        sol = solve_exact(net)
        assert sol.status is Status.INFEASIBLE
        assert sol.witness.vertices == {0, 1}
        assert sol.collaterals is None and sol.nec is None

    def test_size_guard(self):
        edges = [(0, i + 1, 1) for i in range(21)]
        net = InvestmentNetwork(22, edges, cost={0: 1}, rate={0: 1})
        with pytest.raises(TooLargeError):
            solve_exact(net)

    def test_outputs_minimal_on_random_networks(self):
        rng = random.Random(107)
        done = 0
        while done < 15:
            net = random_network(rng.randint(3, 6), 3, seed=rng.randint(0, 10**6))
            if not 0 < len(net.edges) <= 10 or not solvability_check(net).solvable:
                continue
            done += 1
            sol = solve_exact(net)
            assert is_viable(net, sol.collaterals)
            assert_minimal(net, sol.collaterals, is_viable)
            assert sol.total == sol.collaterals.total()


class TestSolveLargeAlpha:
    def test_cycle_family_matches_exact(self):
        for k in (3, 7):
            net = gen_cycle_family(k)
            sol = solve_large_alpha(net)
            assert sol.total == k + 5
            assert sol.total == solve_exact(net).total
            for e, amount in enumerate(sol.collaterals.amounts):
                assert amount in (0, net.edges[e].amount)

    def test_rejects_other_regimes(self, spiked_cycle_net):
        with pytest.raises(ValueError):
            solve_large_alpha(spiked_cycle_net)

    def test_matches_exact_on_random_instances(self):
        rng = random.Random(109)
        done = 0
        while done < 10:
            net = random_network(
                rng.randint(3, 6), 3, large_alpha=True, seed=rng.randint(0, 10**6)
            )
            if not 0 < len(net.edges) <= 10 or not solvability_check(net).solvable:
                continue
            done += 1
            assert solve_large_alpha(net).total == solve_exact(net).total


class TestComputeNec:
    def test_cycle_premium(self):
        net = gen_cycle_family(13)
        sol = solve(net)
        assert compute_nec(net, sol) == 3
        assert sol.nec == 3

    def test_undefined_when_infeasible(self):
        net = InvestmentNetwork(
            2, [(0, 1, 1), (1, 0, 1)], cost={0: 1, 1: 1}, rate={0: 5, 1: 5}
        )
        with pytest.raises(ValueError):
            compute_nec(net, solve(net))


class TestDispatcher:
    def test_single_star_route(self):
        net = InvestmentNetwork(
            4, [(0, 1, 3), (0, 2, 2), (0, 3, 1)], cost={0: 3}, rate={0: 1}
        )
        sol = solve(net)
        assert sol.method == "star"
        assert sol.total == Fraction(5, 2)

    def test_dag_route(self, chain_net):
        assert solve(chain_net).method == "dag"

    def test_large_alpha_route(self):
        sol = solve(gen_cycle_family(3))
        assert sol.method == "large-alpha"
        assert sol.total == 8

    def test_exact_route(self, spiked_cycle_net):
        sol = solve(spiked_cycle_net)
        assert sol.method == "exact"
        assert is_viable(spiked_cycle_net, sol.collaterals)

    def test_infeasible_route(self):
        net = InvestmentNetwork(
            2, [(0, 1, 1), (1, 0, 1)], cost={0: 1, 1: 1}, rate={0: 5, 1: 5}
        )
        sol = solve(net)
        assert sol.status is Status.INFEASIBLE
        assert sol.witness is not None

    def test_star_totals_partition_total(self):
        rng = random.Random(113)
        done = 0
        while done < 15:
            net = random_network(rng.randint(3, 7), 3, seed=rng.randint(0, 10**6))
            if not 0 < len(net.edges) <= 12 or not solvability_check(net).solvable:
                continue
            done += 1
            sol = solve(net)
            assert validate_network(net).ok
            assert sum(sol.star_totals.values(), Fraction(0)) == sol.total
            assert sol.nec == compute_nec(net, sol)

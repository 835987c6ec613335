import json
import random
from fractions import Fraction

import pytest

from collat import (
    DocumentError,
    gen_cycle_family,
    gen_fvs_gadget,
    gen_knapsack_star,
    inverse_knapsack_brute,
    load_network,
    parse_document,
    random_network,
    save_network,
    serialize_network,
    solve,
    solve_star,
    validate_network,
)
from collat.instances import NoSolutionError, dumps_document


def minimal_doc():
    return {
        "version": 1,
        "vertices": [
            {"id": "E", "z": "2", "alpha": "3/2"},
            {"id": "p"},
            {"id": "q"},
        ],
        "edges": [
            {"enterprise": "E", "investor": "p", "amount": "3"},
            {"enterprise": "E", "investor": "q", "amount": "5/2"},
        ],
    }


class TestDocumentFormat:
    def test_parse_minimal(self):
        net = parse_document(minimal_doc())
        assert net.n == 3
        assert net.cost[0] == 2 and net.rate[0] == Fraction(3, 2)
        assert net.edges[1].amount == Fraction(5, 2)
        assert net.ids == ("E", "p", "q")

    def test_round_trip(self):
        net = parse_document(minimal_doc())
        again = parse_document(serialize_network(net))
        assert again.edges == net.edges
        assert again.cost == net.cost and again.rate == net.rate
        assert again.ids == net.ids

    def test_file_round_trip(self, tmp_path):
        net = gen_cycle_family(3)
        path = tmp_path / "net.json"
        save_network(net, path, meta={"family": "cycle", "k": 3})
        again = load_network(path)
        assert again.edges == net.edges
        assert again.ids == net.ids

    def test_unknown_field_rejected(self):
        doc = minimal_doc()
        doc["edges"][0]["weight"] = "3"
        with pytest.raises(DocumentError) as err:
            parse_document(doc)
        assert err.value.path == "$.edges[0]"

    def test_missing_amount_rejected(self):
        doc = minimal_doc()
        del doc["edges"][1]["amount"]
        with pytest.raises(DocumentError):
            parse_document(doc)

    def test_float_rejected_with_path(self):
        doc = minimal_doc()
        doc["vertices"][0]["z"] = 1.5
        with pytest.raises(DocumentError) as err:
            parse_document(doc)
        assert err.value.path == "$.vertices[0].z"
        assert "1/2" in str(err.value)

    def test_float_literal_in_json_text_rejected(self, tmp_path):
        path = tmp_path / "net.json"
        text = json.dumps(minimal_doc())
        path.write_text(text.replace('"3"', "3.0"))
        with pytest.raises(DocumentError):
            load_network(path)

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "net.json"
        path.write_text("{not json")
        with pytest.raises(DocumentError):
            load_network(path)

    def test_duplicate_vertex_rejected(self):
        doc = minimal_doc()
        doc["vertices"].append({"id": "E"})
        with pytest.raises(DocumentError) as err:
            parse_document(doc)
        assert err.value.path == "$.vertices[3].id"

    def test_duplicate_edge_rejected(self):
        doc = minimal_doc()
        doc["edges"].append({"enterprise": "E", "investor": "p", "amount": "1"})
        with pytest.raises(DocumentError):
            parse_document(doc)

    def test_unknown_endpoint_rejected(self):
        doc = minimal_doc()
        doc["edges"][0]["investor"] = "ghost"
        with pytest.raises(DocumentError) as err:
            parse_document(doc)
        assert err.value.path == "$.edges[0].investor"

    def test_wrong_version_rejected(self):
        doc = minimal_doc()
        doc["version"] = 2
        with pytest.raises(DocumentError):
            parse_document(doc)

    def test_boolean_is_not_a_rational(self):
        doc = minimal_doc()
        doc["vertices"][0]["z"] = True
        with pytest.raises(DocumentError):
            parse_document(doc)


class TestCycleFamily:
    def test_structure(self):
        net = gen_cycle_family(7)
        assert net.n == 9
        assert net.ids[:3] == ("A", "B", "C")
        assert net.enterprise_set == {0, 1, 2}
        for k in range(3):
            assert net.cost[k] == 8 and net.rate[k] == 14
            weights = sorted(net.edges[e].amount for e in net.out_edges[k])
            assert weights == [1, 1, 7]
        assert validate_network(net).ok

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            gen_cycle_family(2)


class TestFvsGadget:
    def test_three_cycle(self):
        net = gen_fvs_gadget([(0, 1), (1, 2), (2, 0)])
        assert net.n == 9
        assert len(net.edges) == 9
        assert all(net.cost[k] == 3 and net.rate[k] == 4 for k in net.enterprise_set)
        assert validate_network(net).ok
        # one feedback vertex: one star pays k+1 = 3, the others 2
        assert solve(net).total == 7

    def test_dead_branches_stripped(self):
        net = gen_fvs_gadget([(0, 1), (1, 2), (2, 0), (0, 3)])
        # k reflects the input graph's degrees, but vertex 3 is on no cycle
        assert sorted(i for i in net.ids if "_" not in str(i)) == ["0", "1", "2"]
        assert all(net.cost[k] == 4 for k in net.enterprise_set)
        assert solve(net).total == 8

    def test_dag_input_gives_empty_network(self):
        net = gen_fvs_gadget([(0, 1), (1, 2)])
        assert net.n == 0 and not net.edges

    def test_two_disjoint_cycles(self):
        net = gen_fvs_gadget([(0, 1), (1, 0), (2, 3), (3, 2)])
        # two feedback vertices needed: 2 * (k+1) + 2 * 2 with k = 2
        assert solve(net).total == 10
        assert sorted(solve(net).star_totals.values()) == [2, 2, 3, 3]


class TestKnapsack:
    def test_reduction_star_shape(self):
        star = gen_knapsack_star([3, 2, 2], 4)
        assert star.amounts == (3, 2, 2, 4)
        assert star.cost == 8 and star.rate == 16
        assert star.is_profitable()

    def test_precondition(self):
        with pytest.raises(ValueError):
            gen_knapsack_star([3, 2], 3)

    def test_brute_force_examples(self):
        assert inverse_knapsack_brute([3, 2, 2], 4) in ({0, 1}, {0, 2})
        assert sum([3, 2, 2][i] for i in inverse_knapsack_brute([3, 2, 2], 4)) == 5
        assert inverse_knapsack_brute([5, 1], 0) == {1}

    def test_brute_force_no_solution(self):
        with pytest.raises(NoSolutionError):
            inverse_knapsack_brute([1, 1], 2)

    def test_star_optimum_matches_knapsack(self):
        xs, t = [3, 2, 2], 4
        sol = solve_star(gen_knapsack_star(xs, t))
        full_sum = sum(sol.collaterals[i] for i in sol.full_set)
        best = inverse_knapsack_brute(xs, t)
        assert full_sum == sum(xs[i] for i in best) == 5
        assert sol.total == 5


class TestRandomNetwork:
    def test_deterministic_documents(self):
        a = random_network(8, 3, seed=42)
        b = random_network(8, 3, seed=42)
        assert dumps_document(serialize_network(a)) == dumps_document(serialize_network(b))
        c = random_network(8, 3, seed=43)
        assert dumps_document(serialize_network(a)) != dumps_document(serialize_network(c))

    def test_always_profitable(self):
        rng = random.Random(5)
        for trial in range(40):
            net = random_network(
                rng.randint(2, 9),
                rng.randint(1, 4),
                acyclic=rng.random() < 0.5,
                seed=rng.randint(0, 10**9),
            )
            assert validate_network(net).ok

    def test_acyclic_flag(self):
        from collat.network import is_acyclic

        for seed in range(15):
            assert is_acyclic(random_network(7, 3, acyclic=True, seed=seed))

    def test_large_alpha_flag(self):
        from collat import is_large_alpha

        for seed in range(15):
            net = random_network(6, 3, large_alpha=True, seed=seed)
            if net.edges:
                assert is_large_alpha(net)
                assert validate_network(net).ok

"""Instance generators and the JSON network document format.

Documents carry rationals as "p/q" (or integer) strings; float literals are
rejected so exactness can never be silently lost.  Generators embed their
parameters in the document metadata so reports are self-describing.
"""
from __future__ import annotations

import json
import random
from fractions import Fraction

from .model import InvestmentNetwork
from .star import StarInstance

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """A malformed network document; `path` points at the offending field."""

    def __init__(self, message, path="$"):
        super().__init__("%s: %s" % (path, message))
        self.path = path


def format_rational(value):
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_rational(value, path="$"):
    if isinstance(value, bool):
        raise DocumentError("expected a rational, got a boolean", path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DocumentError(
            "float literals are not allowed; write an exact rational such as '1/2'", path
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DocumentError("cannot parse rational %r" % value, path) from None
    raise DocumentError("expected a rational string or integer", path)


def _check_keys(obj, allowed, required, path):
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", path)
    for key in obj:
        if key not in allowed:
            raise DocumentError("unknown field %r" % key, path)
    for key in required:
        if key not in obj:
            raise DocumentError("missing field %r" % key, path)


def parse_document(doc):
    """Parse a network document (dict) into an InvestmentNetwork."""
    _check_keys(doc, {"version", "vertices", "edges", "meta"}, {"version", "vertices", "edges"}, "$")
    if doc["version"] != SCHEMA_VERSION:
        raise DocumentError("unsupported version %r" % (doc["version"],), "$.version")
    if not isinstance(doc["vertices"], list):
        raise DocumentError("expected a list", "$.vertices")
    ids = []
    cost = []
    rate = []
    index = {}
    for pos, rec in enumerate(doc["vertices"]):
        path = "$.vertices[%d]" % pos
        _check_keys(rec, {"id", "z", "alpha"}, {"id"}, path)
        vid = rec["id"]
        if not isinstance(vid, (str, int)) or isinstance(vid, bool):
            raise DocumentError("vertex id must be a string or integer", path + ".id")
        if vid in index:
            raise DocumentError("duplicate vertex id %r" % (vid,), path + ".id")
        index[vid] = pos
        ids.append(vid)
        cost.append(parse_rational(rec.get("z", 0), path + ".z"))
        rate.append(parse_rational(rec.get("alpha", 0), path + ".alpha"))
    if not isinstance(doc["edges"], list):
        raise DocumentError("expected a list", "$.edges")
    edges = []
    seen = set()
    for pos, rec in enumerate(doc["edges"]):
        path = "$.edges[%d]" % pos
        _check_keys(rec, {"enterprise", "investor", "amount"}, {"enterprise", "investor", "amount"}, path)
        try:
            k = index[rec["enterprise"]]
        except (KeyError, TypeError):
            raise DocumentError("unknown enterprise id %r" % (rec["enterprise"],), path + ".enterprise") from None
        try:
            i = index[rec["investor"]]
        except (KeyError, TypeError):
            raise DocumentError("unknown investor id %r" % (rec["investor"],), path + ".investor") from None
        if (k, i) in seen:
            raise DocumentError("duplicate edge (%r, %r)" % (rec["enterprise"], rec["investor"]), path)
        seen.add((k, i))
        edges.append((k, i, parse_rational(rec["amount"], path + ".amount")))
    return InvestmentNetwork(len(ids), edges, cost=cost, rate=rate, ids=ids)


def serialize_network(net, meta=None):
    """Serialize to a document dict; round-trips losslessly through
    `parse_document` up to key ordering."""
    doc = {
        "version": SCHEMA_VERSION,
        "vertices": [
            {
                "id": net.ids[v],
                "z": format_rational(net.cost[v]),
                "alpha": format_rational(net.rate[v]),
            }
            for v in range(net.n)
        ],
        "edges": [
            {
                "enterprise": net.ids[e.enterprise],
                "investor": net.ids[e.investor],
                "amount": format_rational(e.amount),
            }
            for e in net.edges
        ],
    }
    if meta is not None:
        doc["meta"] = meta
    return doc


def dumps_document(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_network(path):
    with open(path) as handle:
        try:
            doc = json.load(handle, parse_float=_reject_float)
        except json.JSONDecodeError as exc:
            raise DocumentError("invalid JSON: %s" % exc, "$") from None
    return parse_document(doc)


def _reject_float(text):
    raise DocumentError(
        "float literal %r is not allowed; write an exact rational such as '1/2'" % text
    )


def save_network(net, path, meta=None):
    with open(path, "w") as handle:
        handle.write(dumps_document(serialize_network(net, meta)))


# ---------------------------------------------------------------------------
# generators


def gen_cycle_family(k):
    """The 9-vertex cycle family: three enterprises A, B, C in a directed
    cycle of unit investments, each with two external investors of weights 1
    and k, Z = k+1 and alpha = 2k.  The network optimum is k+5 against a
    star-decomposition sum of 6, so the premium (k+5)/6 grows without bound.
    """
    if k < 3:
        raise ValueError("cycle family requires k >= 3")
    ids = ["A", "B", "C", "a1", "a2", "b1", "b2", "c1", "c2"]
    a_vertex, b_vertex, c_vertex = 0, 1, 2
    edges = [
        (a_vertex, b_vertex, 1),
        (b_vertex, c_vertex, 1),
        (c_vertex, a_vertex, 1),
        (a_vertex, 3, 1),
        (a_vertex, 4, k),
        (b_vertex, 5, 1),
        (b_vertex, 6, k),
        (c_vertex, 7, 1),
        (c_vertex, 8, k),
    ]
    cost = {v: k + 1 for v in (a_vertex, b_vertex, c_vertex)}
    rate = {v: 2 * k for v in (a_vertex, b_vertex, c_vertex)}
    return InvestmentNetwork(9, edges, cost=cost, rate=rate, ids=ids)


def gen_fvs_gadget(graph_edges):
    """Investment network whose optimal collaterals encode a minimum
    feedback vertex set of the input directed graph.

    Vertices with zero out-degree are stripped iteratively (they are on no
    cycle); surviving edges get unit weight; every surviving vertex gets two
    spike investors of weights 1 and k, with k = 1 + the input graph's
    maximum out-degree, Z = k+1 and alpha = 2k.  A DAG input yields the
    empty network.
    """
    graph_edges = [(str(u), str(v)) for u, v in graph_edges]
    out_deg = {}
    vertices = set()
    for u, v in graph_edges:
        vertices.update((u, v))
        out_deg[u] = out_deg.get(u, 0) + 1
    k = 1 + max(out_deg.values(), default=0)
    surviving = set(vertices)
    edges = list(graph_edges)
    while True:
        dead = {v for v in surviving if not any(u == v for u, _ in edges)}
        if not dead:
            break
        surviving -= dead
        edges = [(u, v) for u, v in edges if u not in dead and v not in dead]
    ids = sorted(surviving)
    index = {v: i for i, v in enumerate(ids)}
    net_edges = [(index[u], index[v], 1) for u, v in edges]
    cost = {}
    rate = {}
    n = len(ids)
    for v in list(ids):
        for weight, suffix in ((1, "s1"), (k, "sk")):
            ids.append("%s_%s" % (v, suffix))
            net_edges.append((index[v], n, weight))
            n += 1
        cost[index[v]] = k + 1
        rate[index[v]] = 2 * k
    return InvestmentNetwork(n, net_edges, cost=cost, rate=rate, ids=ids)


def gen_knapsack_star(xs, t):
    """Reduction star for the inverse knapsack instance (xs, t): the items
    plus one extra player of size max(xs)+1, Z = max(xs)+1+t, alpha = 2Z."""
    xs = [int(x) for x in xs]
    t = int(t)
    if not xs:
        raise ValueError("need at least one item")
    if t > sum(xs) - max(xs):
        raise ValueError("requires t <= sum(xs) - max(xs)")
    x_max = max(xs) + 1
    z = x_max + t
    return StarInstance(xs + [x_max], z, 2 * z)


class NoSolutionError(ValueError):
    pass


def inverse_knapsack_brute(xs, t):
    """Minimum-sum index set with sum strictly above t, by exhaustive
    enumeration; testing oracle only."""
    xs = list(xs)
    if len(xs) > 20:
        raise ValueError("brute-force guard is 20 items")
    if sum(xs) <= t:
        raise NoSolutionError("total %s does not exceed threshold %s" % (sum(xs), t))
    best = None
    for mask in range(1 << len(xs)):
        subset = tuple(i for i in range(len(xs)) if mask >> i & 1)
        total = sum(xs[i] for i in subset)
        if total > t:
            key = (total, subset)
            if best is None or key < best:
                best = key
    return frozenset(best[1])


def random_network(n, max_out_degree, acyclic=False, weight_range=(1, 9), seed=0,
                   large_alpha=False):
    """Seeded, reproducible random network.

    Weights are integers from `weight_range`; costs are sampled strictly
    below each enterprise's inflow and rates are pushed high enough that
    every enterprise is profitable.  With `acyclic` the edges follow a
    random topological order.  With `large_alpha` rates are integers above
    the cost, landing in the 0/full regime.
    """
    rng = random.Random(seed)
    lo, hi = weight_range
    order = list(range(n))
    rng.shuffle(order)
    position = {v: pos for pos, v in enumerate(order)}
    edges = []
    used = set()
    for k in range(n):
        candidates = [v for v in range(n) if v != k]
        if acyclic:
            candidates = [v for v in candidates if position[v] > position[k]]
        rng.shuffle(candidates)
        for i in candidates[: rng.randint(0, max_out_degree)]:
            if (k, i) not in used:
                used.add((k, i))
                edges.append((k, i, rng.randint(lo, hi)))
    cost = {}
    rate = {}
    for k in {e[0] for e in edges}:
        x_total = sum(x for kk, _, x in edges if kk == k)
        z = rng.randint(0, x_total - 1)
        if large_alpha:
            # smallest integer rate meeting profitability, then above the cost
            alpha_min = -(-z // (x_total - z))
            alpha = max(z + 1, alpha_min, 1) + rng.randint(0, 3)
        else:
            alpha = Fraction(z, x_total - z) + Fraction(rng.randint(1, 8), rng.randint(1, 4))
        cost[k] = z
        rate[k] = alpha
    return InvestmentNetwork(n, edges, cost=cost, rate=rate)

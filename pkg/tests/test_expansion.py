"""Expansion certification, unique neighbors, flows, and ownership partitions."""

import itertools
import random
from fractions import Fraction

import pytest

import qbp
from qbp.errors import BudgetExceededError, InternalInvariantError, PreconditionError
from qbp.expansion import (
    ExpansionCertificate,
    FlowNetwork,
    certify_expansion,
    check_unique_expander_bound,
    edge_count_bounds,
    max_flow_integer,
    tree_partition,
    unique_neighbors,
    verify_tree_partition,
)
from qbp.graphs import build_bipartite, neighbors, regularity
from qbp.instances import bipartite_cycle, doubled_complete_incidence, random_biregular, star_graph


def k33():
    return build_bipartite(3, 3, [(a, b) for a in range(3) for b in range(3)])


def brute_force_violation(graph, side, c, epsilon):
    """Independent recheck: first violating subset in lexicographic order."""
    import math
    n = graph.v0_size if side == "0to1" else graph.v1_size
    adj = graph.adj0 if side == "0to1" else graph.adj1
    prof = regularity(graph)
    w = prof.w0 if side == "0to1" else prof.w1
    limit = max(0, math.ceil(Fraction(c) * n) - 1)
    for size in range(1, limit + 1):
        for subset in itertools.combinations(range(n), size):
            seen = set()
            for x in subset:
                seen.update(adj[x])
            if len(seen) < (1 - Fraction(epsilon)) * w * size:
                return subset
    return None


class TestCertify:
    def test_singletons_always_pass(self):
        # With c small enough that only singletons are eligible, any biregular
        # graph passes: a singleton expands to exactly its degree.
        g = k33()
        cert = certify_expansion(g, "0to1", Fraction(2, 3), Fraction(0))
        assert cert.verdict == "pass"
        assert cert.max_eligible_size == 1

    def test_k33_pairs_fail_with_first_witness(self):
        # Pairs see all 3 opposite vertices but need (1-eps)*3*2; the first
        # 2-subset in lexicographic order is the recorded witness.
        cert = certify_expansion(k33(), "0to1", Fraction(9, 10), Fraction(1, 10))
        assert cert.verdict == "fail"
        assert cert.witness == (0, 1)

    def test_cycle_vacuous_small_c(self):
        # c|V0| = 1 leaves no eligible subsets under the strict bound.
        cert = certify_expansion(bipartite_cycle(3), "0to1", Fraction(1, 3), Fraction(0))
        assert cert.verdict == "pass"
        assert cert.subsets_checked == 0

    def test_cycle_singletons(self):
        cert = certify_expansion(bipartite_cycle(3), "0to1", Fraction(2, 3), Fraction(0))
        assert cert.verdict == "pass"
        assert cert.subsets_checked == 3

    def test_budget_refusal(self):
        g = random_biregular(20, 20, 3, random.Random(0))
        with pytest.raises(BudgetExceededError):
            certify_expansion(g, "0to1", Fraction(1, 2), Fraction(1, 4), budget=100)

    def test_sampled_mode_labelled(self):
        g = random_biregular(20, 20, 3, random.Random(0))
        cert = certify_expansion(g, "0to1", Fraction(1, 4), Fraction(1, 3),
                                 mode="sampled", trials=20, seed=5)
        assert cert.mode == "sampled"
        assert not cert.authoritative
        assert "evidence" in cert.note

    def test_exhaustive_agrees_with_brute_force(self):
        rng = random.Random(101)
        shapes = [(8, 8, 2), (9, 6, 2), (10, 10, 3), (12, 8, 2), (14, 14, 3),
                  (6, 9, 3), (12, 12, 2)]
        for i in range(20):
            v0, v1, w0 = shapes[i % len(shapes)]
            g = random_biregular(v0, v1, w0, rng)
            c = Fraction(rng.randrange(2, 5), v0)
            eps = Fraction(rng.randrange(0, 3), 6)
            cert = certify_expansion(g, "0to1", c, eps)
            witness = brute_force_violation(g, "0to1", c, eps)
            if cert.verdict == "pass":
                assert witness is None
            else:
                assert witness == cert.witness

    def test_fail_witness_rechecks(self):
        cert = certify_expansion(k33(), "0to1", Fraction(9, 10), Fraction(1, 10))
        seen = neighbors(k33(), 0, cert.witness)
        assert len(seen) < (1 - cert.epsilon) * cert.w_src * len(cert.witness)

    def test_json_roundtrip(self):
        cert = certify_expansion(k33(), "0to1", Fraction(9, 10), Fraction(1, 10))
        assert ExpansionCertificate.from_json(cert.to_json()) == cert


class TestUniqueNeighbors:
    def test_singleton_all_unique(self):
        g = k33()
        assert unique_neighbors(g, 0, [1]) == neighbors(g, 0, [1])

    def test_k22_both_vertices_nothing_unique(self):
        g = build_bipartite(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        assert unique_neighbors(g, 0, [0, 1]) == frozenset()

    def test_cycle_shared_neighbor_excluded(self):
        # Vertices 0 and 1 of the 6-cycle share V1 vertex 1.
        g = bipartite_cycle(3)
        uniq = unique_neighbors(g, 0, [0, 1])
        assert uniq == frozenset({0, 2})

    def test_unique_bound_singleton_margin(self):
        cert = certify_expansion(k33(), "0to1", Fraction(2, 3), Fraction(1, 10))
        check = check_unique_expander_bound(k33(), cert, [2])
        assert check.ok
        assert check.margin == 2 * Fraction(1, 10) * 3

    def test_unique_bound_cycle_exhaustive(self):
        g = bipartite_cycle(3)
        cert = certify_expansion(g, "0to1", Fraction(2, 3), Fraction(0))
        assert cert.verdict == "pass"
        for x in range(3):
            check = check_unique_expander_bound(g, cert, [x])
            assert check.ok and check.unique_count >= 2

    def test_unique_bound_on_certified_random_graphs(self):
        # Monte Carlo over eligible subsets of certified instances.
        rng = random.Random(55)
        done = 0
        while done < 3:
            g = random_biregular(12, 12, 3, rng)
            cert = certify_expansion(g, "0to1", Fraction(1, 4), Fraction(1, 3))
            if cert.verdict != "pass":
                continue
            done += 1
            for _ in range(100):
                size = rng.randrange(1, cert.max_eligible_size + 1)
                subset = rng.sample(range(12), size)
                assert check_unique_expander_bound(g, cert, subset).ok

    def test_oversized_subset_rejected(self):
        cert = certify_expansion(k33(), "0to1", Fraction(2, 3), Fraction(0))
        with pytest.raises(PreconditionError):
            check_unique_expander_bound(k33(), cert, [0, 1])


class TestEdgeCountBounds:
    def test_empty_v0(self):
        res = edge_count_bounds(k33(), [], [0, 1], Fraction(0))
        assert res.bound1_ok and res.bound2_ok and res.edge_count == 0

    def test_v1_equals_neighborhood(self):
        # With v1 = N(v0) the first bound is the expansion inequality itself.
        g = bipartite_cycle(4)
        v0 = [0, 2]
        v1 = neighbors(g, 0, v0)
        res = edge_count_bounds(g, v0, v1, Fraction(1, 4))
        assert res.bound1_ok

    def test_monte_carlo_on_certified_instance(self):
        rng = random.Random(77)
        done = 0
        while done < 2:
            g = random_biregular(12, 9, 3, rng)        # (3,4)-biregular
            cert = certify_expansion(g, "0to1", Fraction(1, 4), Fraction(1, 3))
            if cert.verdict != "pass":
                continue
            done += 1
            for _ in range(100):
                v0 = rng.sample(range(12), rng.randrange(1, cert.max_eligible_size + 1))
                v1 = rng.sample(range(9), rng.randrange(0, 9))
                res = edge_count_bounds(g, v0, v1, Fraction(1, 3))
                assert res.bound1_ok and res.bound2_ok


def brute_force_min_cut(network):
    """Minimum cut by enumerating every source-side subset."""
    inner = [v for v in network.nodes if v not in (network.source, network.sink)]
    best = None
    for bits in range(1 << len(inner)):
        s_side = {network.source}
        for i, v in enumerate(inner):
            if bits >> i & 1:
                s_side.add(v)
        cap = sum(c for u, v, c in network.arcs if u in s_side and v not in s_side)
        best = cap if best is None else min(best, cap)
    return best


class TestMaxFlow:
    def test_single_arc(self):
        net = FlowNetwork(("s", "t"), (("s", "t", 5),), "s", "t")
        assert max_flow_integer(net).value == 5

    def test_star_with_capped_source(self):
        # One owner with three candidate targets but source capacity 2.
        nodes = ("s", "a", "x", "y", "z", "t")
        arcs = (("s", "a", 2), ("a", "x", 1), ("a", "y", 1), ("a", "z", 1),
                ("x", "t", 1), ("y", "t", 1), ("z", "t", 1))
        res = max_flow_integer(FlowNetwork(nodes, arcs, "s", "t"))
        assert res.value == 2
        assert res.cut_capacity == 2

    def test_flow_is_integral_and_conserved(self):
        rng = random.Random(3)
        net = _random_network(10, rng)
        res = max_flow_integer(net)
        outflow = {}
        inflow = {}
        for (u, v), f in res.flow.items():
            assert isinstance(f, int) and f >= 0
            outflow[u] = outflow.get(u, 0) + f
            inflow[v] = inflow.get(v, 0) + f
        for node in net.nodes:
            if node in (net.source, net.sink):
                continue
            assert outflow.get(node, 0) == inflow.get(node, 0)

    def test_against_brute_force_cuts(self):
        rng = random.Random(19)
        for trial in range(30):
            n_inner = rng.randrange(2, 9)
            net = _random_network(n_inner, rng)
            res = max_flow_integer(net)
            assert res.value == brute_force_min_cut(net)

    def test_larger_network_against_brute_force(self):
        rng = random.Random(23)
        net = _random_network(14, rng)       # 16 nodes total
        assert max_flow_integer(net).value == brute_force_min_cut(net)


def _random_network(n_inner, rng):
    nodes = ["s", "t"] + [f"v{i}" for i in range(n_inner)]
    arcs = []
    for i in range(n_inner):
        if rng.random() < 0.7:
            arcs.append(("s", f"v{i}", rng.randrange(0, 5)))
        if rng.random() < 0.7:
            arcs.append((f"v{i}", "t", rng.randrange(0, 5)))
    for i in range(n_inner):
        for j in range(n_inner):
            if i != j and rng.random() < 0.35:
                arcs.append((f"v{i}", f"v{j}", rng.randrange(1, 4)))
    return FlowNetwork(tuple(nodes), tuple(arcs), "s", "t")


class TestTreePartition:
    def test_empty_target(self):
        g = bipartite_cycle(3)
        part = tree_partition(g, [], Fraction(0), 2)
        assert all(not owned for owned in part.assignment.values())

    def test_single_vertex_forced(self):
        # A target with a single neighbor is owned by it and leaves nothing over.
        g, _ = star_graph(4, 2)
        part = tree_partition(g, [5], Fraction(0), 2)
        owners = [x0 for x0, own in part.assignment.items() if own]
        assert owners == [2]
        assert part.assignment[2] == frozenset({5})
        assert all(v == 0 for v in part.leftover.values())

    def test_single_vertex_shared_needs_slack(self):
        # On the cycle each V1 vertex has two neighbors; the non-owner keeps
        # a leftover of 1, legal once epsilon * w0 >= 1.
        g = bipartite_cycle(3)
        part = tree_partition(g, [1], Fraction(1, 2), 2)
        audit = verify_tree_partition(g, [1], Fraction(1, 2), 2, part)
        assert audit.all_ok
        assert sorted(part.leftover.values()) == [0, 0, 1]

    def test_zero_epsilon_forces_zero_leftovers(self):
        g, _ = star_graph(6, 3)
        rng = random.Random(1)
        for _ in range(20):
            v1 = rng.sample(range(18), rng.randrange(0, 6))
            part = tree_partition(g, v1, Fraction(0), 3)
            audit = verify_tree_partition(g, v1, Fraction(0), 3, part)
            assert audit.all_ok
            assert audit.majorization_skipped

    def test_three_regular_example(self):
        # (3,3)-regular random graphs, |v1| = 3, epsilon*w0 = 1: all leftovers
        # stay <= 1 whenever the ownership flow saturates.
        rng = random.Random(42)
        ran = 0
        while ran < 25:
            g = random_biregular(15, 15, 3, rng)
            v1 = rng.sample(range(15), 3)
            try:
                part = tree_partition(g, v1, Fraction(1, 3), 3)
            except InternalInvariantError:
                continue          # hypothesis fails on this draw; resample
            ran += 1
            audit = verify_tree_partition(g, v1, Fraction(1, 3), 3, part)
            assert audit.all_ok
            assert max(part.leftover.values()) <= 1

    def test_doubled_incidence_partition(self):
        g, _ = doubled_complete_incidence(13)
        rng = random.Random(8)
        for _ in range(30):
            v1 = rng.sample(range(g.v1_size), 1)
            part = tree_partition(g, v1, Fraction(1, 14), 14)
            audit = verify_tree_partition(g, v1, Fraction(1, 14), 14, part)
            assert audit.all_ok

    def test_unsatisfiable_hypothesis_raises(self):
        # Two owners forced to share one target with zero allowed leftover.
        g = build_bipartite(2, 1, [(0, 0), (1, 0)])
        with pytest.raises(InternalInvariantError):
            tree_partition(g, [0], Fraction(0), 1)

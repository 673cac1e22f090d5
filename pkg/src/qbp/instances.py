"""Reusable graph, action, and complex families.

The families here are the workhorses for experiments and tests:

* bipartite cycles (products of two of them are the toric codes),
* star forests and perfect matchings with translation symmetry, which are
  exact lossless expanders (every subset expands by the full degree) and so
  support the decoder's guarantees with epsilon = 0,
* incidence graphs of complete graphs with one doubled distance class, the
  smallest biregular family certifiable at a nonzero epsilon with the pair
  bound epsilon * w0 = 1 (girth 6 except for the doubled class),
* seeded random graphs, biregular or with a prescribed free action.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .errors import ValidationError
from .expansion import ExpansionCertificate, certify_expansion
from .graphs import (
    BipartiteGraph,
    CayleyGraph,
    GraphAction,
    build_bipartite,
    cayley_bipartite,
    invert_gens,
)
from .groups import FiniteGroup, GroupAction, cyclic_group
from .product import BalancedProductComplex, balanced_product, hypergraph_product


def bipartite_cycle(length: int) -> BipartiteGraph:
    """The (2,2)-regular cycle on length+length vertices: edges (i,i), (i,i+1)."""
    if length < 2:
        raise ValidationError("cycle needs length >= 2")
    edges = [(i, i) for i in range(length)] + [(i, (i + 1) % length) for i in range(length)]
    return build_bipartite(length, length, edges)


def toric_complex(length: int) -> BalancedProductComplex:
    """Hypergraph product of two bipartite cycles: the [[2L^2, 2, L]] code."""
    cyc = bipartite_cycle(length)
    return hypergraph_product(cyc, cyc)


def star_graph(m: int, degree: int) -> tuple[BipartiteGraph, GraphAction]:
    """m disjoint stars with translation symmetry: centers Z_m, leaves Z_m x [degree].

    Every center subset expands by exactly `degree`, so the graph is a
    (c=1, epsilon=0)-lossless expander from centers to leaves.
    """
    if m < 1 or degree < 1:
        raise ValidationError("star family needs m >= 1 and degree >= 1")
    group = cyclic_group(m)
    edges = [(i, i * degree + j) for i in range(m) for j in range(degree)]
    graph = build_bipartite(m, m * degree, edges)
    v0 = GroupAction.from_table(group, [[(i + g) % m for i in range(m)] for g in range(m)])
    v1 = GroupAction.from_table(
        group,
        [[((i + g) % m) * degree + j for i in range(m) for j in range(degree)]
         for g in range(m)],
    )
    return graph, GraphAction(group, v0, v1)


def matching_cayley(group: FiniteGroup, gen: int) -> CayleyGraph:
    """A perfect matching as a right Cayley graph on one generator."""
    return cayley_bipartite(group, [gen], "right")


def left_right_cayley(group: FiniteGroup, gens_a: Iterable[int], gens_b: Iterable[int]) -> BalancedProductComplex:
    """Balanced product of two right Cayley graphs over the same group.

    The first factor uses the inverted generator list, so the vertical edge
    classes read (g, a g) while the horizontal classes read (g, g b); all
    four vertex classes have |G| elements and faces read (g, ag, gb, agb).
    """
    x = cayley_bipartite(group, invert_gens(group, gens_a), "right")
    y = cayley_bipartite(group, list(gens_b), "right")
    return balanced_product(
        x.graph, x.action, y.graph, y.action,
        provenance=f"left-right Cayley over {group.label or 'G'}",
    )


def star_product(m: int, down: int, right: int) -> BalancedProductComplex:
    """Balanced product of two star families over Z_m."""
    gx, ax = star_graph(m, down)
    gy, ay = star_graph(m, right)
    return balanced_product(gx, ax, gy, ay, provenance=f"star product m={m}")


def star_certificate(m: int, degree: int) -> ExpansionCertificate:
    """Exhaustive (c=1, epsilon=0) certificate for a star family, center side."""
    graph, _ = star_graph(m, degree)
    cert = certify_expansion(graph, "0to1", Fraction(1), Fraction(0))
    if cert.verdict != "pass":
        raise ValidationError("star family failed its own certificate")
    return cert


def matching_certificate(group: FiniteGroup, gen: int, side: str = "0to1") -> ExpansionCertificate:
    """Exhaustive (c=1, epsilon=0) certificate for a matching, either side."""
    graph = matching_cayley(group, gen).graph
    cert = certify_expansion(graph, side, Fraction(1), Fraction(0))
    if cert.verdict != "pass":
        raise ValidationError("matching failed its own certificate")
    return cert


def doubled_complete_incidence(m: int) -> tuple[BipartiteGraph, GraphAction]:
    """Incidence graph of the complete graph on Z_m with distance class 1 doubled.

    Vertices are Z_m; the other side lists one vertex per edge instance
    {i, i+s} (s = 1..(m-1)/2, the s = 1 class twice).  The result is
    (m+1, 2)-biregular with a free translation action; m must be odd so the
    translation acts freely on edge instances.  Pairs {i, i+1} share two
    instances and every other pair shares one, so the graph certifies at
    (c, epsilon) = (3/m, 1/(m+1)) from the vertex side, with
    epsilon * w0 = 1.
    """
    if m < 5 or m % 2 == 0:
        raise ValidationError("doubled complete incidence needs odd m >= 5")
    group = cyclic_group(m)
    half = (m - 1) // 2
    instances: list[tuple[int, int, int]] = []
    for s in range(1, half + 1):
        tags = (0, 1) if s == 1 else (0,)
        for tag in tags:
            for i in range(m):
                instances.append((s, tag, i))
    index = {inst: k for k, inst in enumerate(instances)}
    edges = []
    for (s, tag, i), k in index.items():
        edges.append((i, k))
        edges.append(((i + s) % m, k))
    graph = build_bipartite(m, len(instances), edges)
    v0 = GroupAction.from_table(group, [[(i + g) % m for i in range(m)] for g in range(m)])
    v1 = GroupAction.from_table(
        group,
        [[index[(s, tag, (i + g) % m)] for (s, tag, i) in instances] for g in range(m)],
    )
    return graph, GraphAction(group, v0, v1)


def doubled_incidence_certificate(m: int) -> ExpansionCertificate:
    """Exhaustive (3/m, 1/(m+1)) certificate for the doubled incidence family."""
    graph, _ = doubled_complete_incidence(m)
    cert = certify_expansion(graph, "0to1", Fraction(3, m), Fraction(1, m + 1))
    if cert.verdict != "pass":
        raise ValidationError(f"doubled incidence m={m} failed its certificate: {cert}")
    return cert


def incidence_star_product(m: int, right: int) -> BalancedProductComplex:
    """Balanced product of the doubled incidence family with a star family."""
    gx, ax = doubled_complete_incidence(m)
    gy, ay = star_graph(m, right)
    return balanced_product(gx, ax, gy, ay,
                            provenance=f"doubled-incidence x star, m={m}")


def star_incidence_product(m: int, down: int) -> BalancedProductComplex:
    """Balanced product of a star family with the doubled incidence family."""
    gx, ax = star_graph(m, down)
    gy, ay = doubled_complete_incidence(m)
    return balanced_product(gx, ax, gy, ay,
                            provenance=f"star x doubled-incidence, m={m}")


# -- seeded random families ----------------------------------------------------


def random_bipartite(v0: int, v1: int, n_edges: int, rng: random.Random) -> BipartiteGraph:
    """A uniform simple bipartite graph with exactly n_edges edges."""
    if n_edges > v0 * v1:
        raise ValidationError(f"cannot place {n_edges} edges in a {v0}x{v1} grid")
    cells = [(a, b) for a in range(v0) for b in range(v1)]
    return build_bipartite(v0, v1, rng.sample(cells, n_edges))


def random_biregular(v0: int, v1: int, w0: int, rng: random.Random, attempts: int = 200) -> BipartiteGraph:
    """A random (w0, w1)-biregular simple graph; w1 = w0*v0/v1 must be integral.

    Built as a union of w0 random perfect assignments of V0-stubs to V1,
    resampled on duplicate edges.
    """
    if (w0 * v0) % v1 != 0:
        raise ValidationError(f"w0*v0 = {w0 * v0} not divisible by v1 = {v1}")
    w1 = w0 * v0 // v1
    if w0 > v1 or w1 > v0:
        raise ValidationError("degrees exceed opposite side size; no simple graph exists")
    for _ in range(attempts):
        stubs = [x1 for x1 in range(v1) for _ in range(w1)]
        rng.shuffle(stubs)
        left = [x0 for x0 in range(v0) for _ in range(w0)]
        edges = set()
        ok = True
        for x0, x1 in zip(left, stubs):
            if (x0, x1) in edges:
                ok = False
                break
            edges.add((x0, x1))
        if ok:
            return build_bipartite(v0, v1, edges)
    raise ValidationError(
        f"could not sample a simple ({w0},{w1})-biregular graph on {v0}+{v1} "
        f"vertices in {attempts} attempts"
    )


def random_free_action_graph(
    group: FiniteGroup,
    blocks0: int,
    blocks1: int,
    orbit_edges: int,
    rng: random.Random,
) -> tuple[BipartiteGraph, GraphAction]:
    """A random bipartite graph with a free action: vertex sets are
    blocks x |G| with translation inside each block, edges a union of
    randomly seeded diagonal orbits."""
    n = group.order
    v0, v1 = blocks0 * n, blocks1 * n

    def act_table(blocks: int) -> GroupAction:
        table = [
            [b * n + group.op(g, h) for b in range(blocks) for h in group.elements()]
            for g in group.elements()
        ]
        return GroupAction.from_table(group, table)

    # An orbit is determined by (block0, block1, relative element); sample
    # distinct triples so the orbit union is duplicate-free.
    triples = [(b0, b1, d) for b0 in range(blocks0) for b1 in range(blocks1)
               for d in group.elements()]
    if orbit_edges > len(triples):
        raise ValidationError(f"at most {len(triples)} edge orbits exist")
    chosen = rng.sample(triples, orbit_edges)
    edges = set()
    for b0, b1, d in chosen:
        for g in group.elements():
            edges.add((b0 * n + g, b1 * n + group.op(g, d)))
    graph = build_bipartite(v0, v1, edges)
    return graph, GraphAction(group, act_table(blocks0), act_table(blocks1))

"""Hypergraph and balanced products of bipartite graphs.

The product of two bipartite graphs has four vertex classes (a 2x2 grid),
four edge classes connecting grid neighbors, and a set of square faces.  When
both factors carry a free action of the same group, quotienting the product
by the diagonal action yields the balanced product; freeness makes square
completion unique, which in turn makes the two composite maps
V00 -> {V10, V01} -> V11 cancel over GF(2).  That cancellation is the chain
condition verified here, and it is exactly the CSS commuting condition of the
codes extracted downstream.

Construction is single-threaded; the resulting complex is immutable and
shareable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .errors import PreconditionError, ValidationError
from .gf2 import F2Matrix, mat_mul
from .graphs import BipartiteGraph, GraphAction, regularity, verify_edge_invariance
from .groups import FiniteGroup, GroupAction, trivial_action, trivial_group, verify_free_action
from .expansion import ExpansionCertificate

EDGE_CLASSES = ("v00_v10", "v01_v11", "v00_v01", "v10_v11")
SUBGRAPHS = ("v00_v10", "v01_v11", "v00_v01", "v10_v11")


@dataclass(frozen=True)
class DegreeProfile:
    """The four degrees of a product of biregular factors.

    down/up are the first factor's V0-side/V1-side degrees (the vertical
    moves of the grid), right/left the second factor's (horizontal moves).
    """

    down: int
    up: int
    right: int
    left: int


@dataclass(frozen=True)
class BalancedProductComplex:
    """Vertex classes, edge classes, faces, and boundary maps of a product.

    Vertex classes are index ranges; reps_* map indices back to the
    lexicographically-smallest (x, y) pair of the orbit.  Qubit coordinates
    are the V10 block followed by the V01 block.
    """

    reps_v00: tuple[tuple[int, int], ...]
    reps_v10: tuple[tuple[int, int], ...]
    reps_v01: tuple[tuple[int, int], ...]
    reps_v11: tuple[tuple[int, int], ...]
    edges_v00_v10: frozenset[tuple[int, int]]
    edges_v01_v11: frozenset[tuple[int, int]]
    edges_v00_v01: frozenset[tuple[int, int]]
    edges_v10_v11: frozenset[tuple[int, int]]
    faces: frozenset[tuple[int, int, int, int]]
    degrees: Optional[DegreeProfile]
    group_order: int
    factor_x: Optional[BipartiteGraph] = None
    factor_y: Optional[BipartiteGraph] = None
    action_x: Optional[GraphAction] = None
    action_y: Optional[GraphAction] = None
    provenance: str = ""

    # -- sizes -------------------------------------------------------------

    @property
    def v00_size(self) -> int:
        return len(self.reps_v00)

    @property
    def v10_size(self) -> int:
        return len(self.reps_v10)

    @property
    def v01_size(self) -> int:
        return len(self.reps_v01)

    @property
    def v11_size(self) -> int:
        return len(self.reps_v11)

    @property
    def n_qubits(self) -> int:
        return self.v10_size + self.v01_size

    # -- boundary maps -------------------------------------------------------

    @cached_property
    def boundary_2(self) -> F2Matrix:
        """F2^{V00} -> F2^{V10} (+) F2^{V01}; rows are qubits, columns V00."""
        ents = [(z10, z00) for z00, z10 in self.edges_v00_v10]
        ents += [(self.v10_size + z01, z00) for z00, z01 in self.edges_v00_v01]
        return F2Matrix.from_entries(self.n_qubits, self.v00_size, ents)

    @cached_property
    def boundary_1(self) -> F2Matrix:
        """F2^{V10} (+) F2^{V01} -> F2^{V11}; rows are V11, columns qubits."""
        ents = [(z11, z10) for z10, z11 in self.edges_v10_v11]
        ents += [(z11, self.v10_size + z01) for z01, z11 in self.edges_v01_v11]
        return F2Matrix.from_entries(self.v11_size, self.n_qubits, ents)

    # -- 1-d subgraphs --------------------------------------------------------

    def subgraph(self, which: str) -> BipartiteGraph:
        """One of the four one-dimensional subgraphs, as a bipartite graph."""
        if which == "v00_v10":
            return BipartiteGraph(self.v00_size, self.v10_size, self.edges_v00_v10)
        if which == "v01_v11":
            return BipartiteGraph(self.v01_size, self.v11_size, self.edges_v01_v11)
        if which == "v00_v01":
            return BipartiteGraph(self.v00_size, self.v01_size, self.edges_v00_v01)
        if which == "v10_v11":
            return BipartiteGraph(self.v10_size, self.v11_size, self.edges_v10_v11)
        raise ValidationError(f"unknown subgraph {which!r}; expected one of {SUBGRAPHS}")

    # -- square completion ----------------------------------------------------

    @cached_property
    def completion_tables(self) -> "SquareCompletionTables":
        to_v11: dict = {}
        to_v01: dict = {}
        to_v10: dict = {}
        to_v00: dict = {}
        for z00, z10, z01, z11 in self.faces:
            for table, key, val in (
                (to_v11, (z00, z10, z01), z11),
                (to_v01, (z00, z10, z11), z01),
                (to_v10, (z11, z01, z00), z10),
                (to_v00, (z01, z11, z10), z00),
            ):
                if table.get(key, val) != val:
                    raise ValidationError(
                        f"square completion is not unique at {key}; "
                        "the underlying action cannot be free"
                    )
                table[key] = val
        return SquareCompletionTables(to_v00, to_v10, to_v01, to_v11)

    def transposed(self) -> "BalancedProductComplex":
        """The dual complex: V00 and V11 swap roles, as do V10 and V01."""
        return BalancedProductComplex(
            reps_v00=self.reps_v11,
            reps_v10=self.reps_v01,
            reps_v01=self.reps_v10,
            reps_v11=self.reps_v00,
            edges_v00_v10=_rev(self.edges_v01_v11),
            edges_v01_v11=_rev(self.edges_v00_v10),
            edges_v00_v01=_rev(self.edges_v10_v11),
            edges_v10_v11=_rev(self.edges_v00_v01),
            faces=frozenset((f[3], f[2], f[1], f[0]) for f in self.faces),
            degrees=DegreeProfile(self.degrees.up, self.degrees.down,
                                  self.degrees.left, self.degrees.right)
            if self.degrees else None,
            group_order=self.group_order,
            provenance=f"transpose of [{self.provenance}]",
        )


def _rev(edges: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    return frozenset((b, a) for a, b in edges)


@dataclass(frozen=True)
class SquareCompletionTables:
    """The four completion mappings; each is total on adjacent triples and
    single-valued (uniqueness relies on freeness of the quotient action)."""

    to_v00: dict[tuple[int, int, int], int]
    to_v10: dict[tuple[int, int, int], int]
    to_v01: dict[tuple[int, int, int], int]
    to_v11: dict[tuple[int, int, int], int]


def complete_square(
    cpx: BalancedProductComplex,
    *,
    z00: Optional[int] = None,
    z10: Optional[int] = None,
    z01: Optional[int] = None,
    z11: Optional[int] = None,
) -> int:
    """Complete a square from three pairwise-adjacent cells.

    Exactly one corner must be omitted; that corner is returned.  A triple
    that does not bound a face is a precondition error.
    """
    known = {"z00": z00, "z10": z10, "z01": z01, "z11": z11}
    missing = [k for k, v in known.items() if v is None]
    if len(missing) != 1:
        raise PreconditionError(f"exactly one corner must be omitted, got missing={missing}")
    tables = cpx.completion_tables
    which = missing[0]
    if which == "z11":
        key, table = (z00, z10, z01), tables.to_v11
    elif which == "z01":
        key, table = (z00, z10, z11), tables.to_v01
    elif which == "z10":
        key, table = (z11, z01, z00), tables.to_v10
    else:
        key, table = (z01, z11, z10), tables.to_v00
    if key not in table:
        raise PreconditionError(f"cells {key} are not pairwise adjacent around {which}")
    return table[key]


# -- construction -----------------------------------------------------------


def hypergraph_product(x: BipartiteGraph, y: BipartiteGraph) -> BalancedProductComplex:
    """Cartesian product of two bipartite graphs (trivial-group quotient)."""
    g = trivial_group()
    ax = GraphAction(g, trivial_action(g, x.v0_size), trivial_action(g, x.v1_size))
    ay = GraphAction(g, trivial_action(g, y.v0_size), trivial_action(g, y.v1_size))
    return balanced_product(x, ax, y, ay, provenance="hypergraph product")


def balanced_product(
    x: BipartiteGraph,
    action_x: GraphAction,
    y: BipartiteGraph,
    action_y: GraphAction,
    provenance: str = "balanced product",
) -> BalancedProductComplex:
    """Quotient of the product of two G-graphs by the diagonal G-action.

    Both actions must be over the same group, free on all four vertex sets,
    and must map edges to edges; violations are rejected with the witness.
    Orbit representatives are the lexicographically smallest pairs, so vertex
    indexing is reproducible across runs.
    """
    group = action_x.group
    if not group.same_table(action_y.group):
        raise ValidationError("factor actions are over different groups")
    for name, act in (("x.v0", action_x.v0), ("x.v1", action_x.v1),
                      ("y.v0", action_y.v0), ("y.v1", action_y.v1)):
        fixed = verify_free_action(act)
        if fixed is not None:
            raise ValidationError(
                f"action on {name} is not free: fixed point (g, x) = {fixed}"
            )
    for name, graph, act in (("x", x, action_x), ("y", y, action_y)):
        violation = verify_edge_invariance(graph, act)
        if violation is not None:
            raise ValidationError(f"action on factor {name} is not edge-invariant at {violation}")
    if action_x.v0.set_size != x.v0_size or action_x.v1.set_size != x.v1_size:
        raise ValidationError("action on x has wrong set sizes")
    if action_y.v0.set_size != y.v0_size or action_y.v1.set_size != y.v1_size:
        raise ValidationError("action on y has wrong set sizes")

    reps00, cls00 = _orbit_classes(x.v0_size, y.v0_size, action_x.v0, action_y.v0, group)
    reps10, cls10 = _orbit_classes(x.v1_size, y.v0_size, action_x.v1, action_y.v0, group)
    reps01, cls01 = _orbit_classes(x.v0_size, y.v1_size, action_x.v0, action_y.v1, group)
    reps11, cls11 = _orbit_classes(x.v1_size, y.v1_size, action_x.v1, action_y.v1, group)

    ex = sorted(x.edges)
    ey = sorted(y.edges)
    n = group.order

    e_v00_v10 = {(cls00[(x0, y0)], cls10[(x1, y0)]) for x0, x1 in ex for y0 in range(y.v0_size)}
    e_v01_v11 = {(cls01[(x0, y1)], cls11[(x1, y1)]) for x0, x1 in ex for y1 in range(y.v1_size)}
    e_v00_v01 = {(cls00[(x0, y0)], cls01[(x0, y1)]) for y0, y1 in ey for x0 in range(x.v0_size)}
    e_v10_v11 = {(cls10[(x1, y0)], cls11[(x1, y1)]) for y0, y1 in ey for x1 in range(x.v1_size)}
    for name, edges, expected in (
        ("v00_v10", e_v00_v10, len(ex) * y.v0_size // n),
        ("v01_v11", e_v01_v11, len(ex) * y.v1_size // n),
        ("v00_v01", e_v00_v01, len(ey) * x.v0_size // n),
        ("v10_v11", e_v10_v11, len(ey) * x.v1_size // n),
    ):
        if len(edges) != expected:
            raise ValidationError(
                f"edge class {name} collapsed to {len(edges)} classes, expected "
                f"{expected}: distinct product edges fell onto one class pair "
                "(multi-edge); the quotient does not define a simple graph"
            )

    faces = {
        (cls00[(x0, y0)], cls10[(x1, y0)], cls01[(x0, y1)], cls11[(x1, y1)])
        for x0, x1 in ex
        for y0, y1 in ey
    }
    if len(faces) != len(ex) * len(ey) // n:
        raise ValidationError(
            f"face count {len(faces)} != |E_x||E_y|/|G| = {len(ex) * len(ey) // n}"
        )

    rx = regularity(x)
    ry = regularity(y)
    degrees = None
    if rx.is_regular and ry.is_regular:
        degrees = DegreeProfile(down=rx.w0, up=rx.w1, right=ry.w0, left=ry.w1)

    cpx = BalancedProductComplex(
        reps_v00=reps00,
        reps_v10=reps10,
        reps_v01=reps01,
        reps_v11=reps11,
        edges_v00_v10=frozenset(e_v00_v10),
        edges_v01_v11=frozenset(e_v01_v11),
        edges_v00_v01=frozenset(e_v00_v01),
        edges_v10_v11=frozenset(e_v10_v11),
        faces=frozenset(faces),
        degrees=degrees,
        group_order=n,
        factor_x=x,
        factor_y=y,
        action_x=action_x,
        action_y=action_y,
        provenance=provenance,
    )
    check = verify_chain_condition(cpx)
    if not check.ok:
        raise ValidationError(
            f"constructed complex violates the chain condition at V00 column "
            f"{check.witness_column}"
        )
    return cpx


def _orbit_classes(
    nx: int, ny: int, ax: GroupAction, ay: GroupAction, group: FiniteGroup
) -> tuple[tuple[tuple[int, int], ...], dict[tuple[int, int], int]]:
    rep: dict[tuple[int, int], tuple[int, int]] = {}
    for x0 in range(nx):
        for y0 in range(ny):
            p = (x0, y0)
            if p in rep:
                continue
            orbit = {(ax.table[g][x0], ay.table[g][y0]) for g in group.elements()}
            if len(orbit) != group.order:
                raise ValidationError(
                    f"orbit of {p} has size {len(orbit)} != |G| = {group.order}; "
                    "diagonal action is not free"
                )
            r = min(orbit)
            for q in orbit:
                rep[q] = r
    reps = tuple(sorted(set(rep.values())))
    index = {r: i for i, r in enumerate(reps)}
    return reps, {p: index[r] for p, r in rep.items()}


@dataclass(frozen=True)
class ChainCheck:
    ok: bool
    witness_column: Optional[int] = None


def verify_chain_condition(cpx: BalancedProductComplex) -> ChainCheck:
    """Check that the two composite maps V00 -> V11 cancel over GF(2).

    On failure reports the first V00 basis column whose image is nonzero.
    """
    product = mat_mul(cpx.boundary_1, cpx.boundary_2)
    if product.is_zero():
        return ChainCheck(True)
    witness = min(c for _, c in product.entries)
    return ChainCheck(False, witness)


# -- copies decomposition ----------------------------------------------------


@dataclass(frozen=True)
class SubgraphCopy:
    """One connected component of a 1-d subgraph, tagged with its isomorphism
    onto the corresponding factor graph (complex index -> factor index)."""

    which: str
    v0_map: dict[int, int]
    v1_map: dict[int, int]


def copies_decomposition(cpx: BalancedProductComplex, which: str) -> list[SubgraphCopy]:
    """Decompose a 1-d subgraph into disjoint copies of the factor graph.

    The v00_v10 and v01_v11 subgraphs decompose into copies of the first
    factor, one per orbit of the second factor's corresponding side; the
    v00_v01 and v10_v11 subgraphs into copies of the second factor, one per
    orbit of the first factor's side.  Requires the complex to carry its
    factors and actions.
    """
    if cpx.factor_x is None or cpx.action_x is None:
        raise PreconditionError("complex does not carry factor graphs and actions")
    x, y = cpx.factor_x, cpx.factor_y
    ax, ay = cpx.action_x, cpx.action_y
    group = ax.group
    cls = _class_lookup(cpx)

    def orbit_reps(action: GroupAction, size: int) -> list[int]:
        seen: set[int] = set()
        reps = []
        for v in range(size):
            if v in seen:
                continue
            reps.append(v)
            seen.update(action.table[g][v] for g in group.elements())
        return reps

    copies: list[SubgraphCopy] = []
    if which in ("v00_v10", "v01_v11"):
        beta = 0 if which == "v00_v10" else 1
        y_act = ay.v0 if beta == 0 else ay.v1
        y_size = y.v0_size if beta == 0 else y.v1_size
        lookup0 = cls["v00"] if beta == 0 else cls["v01"]
        lookup1 = cls["v10"] if beta == 0 else cls["v11"]
        for y_rep in orbit_reps(y_act, y_size):
            v0_map = {lookup0[(xv, y_rep)]: xv for xv in range(x.v0_size)}
            v1_map = {lookup1[(xv, y_rep)]: xv for xv in range(x.v1_size)}
            copies.append(SubgraphCopy(which, v0_map, v1_map))
    elif which in ("v00_v01", "v10_v11"):
        alpha = 0 if which == "v00_v01" else 1
        x_act = ax.v0 if alpha == 0 else ax.v1
        x_size = x.v0_size if alpha == 0 else x.v1_size
        lookup0 = cls["v00"] if alpha == 0 else cls["v10"]
        lookup1 = cls["v01"] if alpha == 0 else cls["v11"]
        for x_rep in orbit_reps(x_act, x_size):
            v0_map = {lookup0[(x_rep, yv)]: yv for yv in range(y.v0_size)}
            v1_map = {lookup1[(x_rep, yv)]: yv for yv in range(y.v1_size)}
            copies.append(SubgraphCopy(which, v0_map, v1_map))
    else:
        raise ValidationError(f"unknown subgraph {which!r}; expected one of {SUBGRAPHS}")
    return copies


def _class_lookup(cpx: BalancedProductComplex) -> dict[str, dict[tuple[int, int], int]]:
    ax, ay = cpx.action_x, cpx.action_y
    group = ax.group
    out: dict[str, dict[tuple[int, int], int]] = {}
    for name, reps, act_a, act_b in (
        ("v00", cpx.reps_v00, ax.v0, ay.v0),
        ("v10", cpx.reps_v10, ax.v1, ay.v0),
        ("v01", cpx.reps_v01, ax.v0, ay.v1),
        ("v11", cpx.reps_v11, ax.v1, ay.v1),
    ):
        lookup: dict[tuple[int, int], int] = {}
        for i, (rx, ry) in enumerate(reps):
            for g in group.elements():
                lookup[(act_a.table[g][rx], act_b.table[g][ry])] = i
        out[name] = lookup
    return out


# -- certificate inheritance ---------------------------------------------------


def inherit_certificates(
    cpx: BalancedProductComplex,
    cert_x: ExpansionCertificate,
    cert_y: ExpansionCertificate,
) -> dict[str, ExpansionCertificate]:
    """Transport factor expansion certificates to the four 1-d subgraphs.

    A subgraph made of k disjoint copies of a factor inherits the factor's
    expansion with the small-set fraction rescaled by 1/k (epsilon unchanged):
    any small subset splits across copies and each piece expands on its own.
    Certificates must be for the 0-to-1 direction of each factor; the factor
    mode travels with the derived certificate, so sampled evidence never
    silently upgrades to proof.
    """
    if cert_x is None or cert_y is None:
        raise ValidationError("both factor certificates are required")
    if cert_x.side != "0to1" or cert_y.side != "0to1":
        raise ValidationError("inheritance needs 0to1 certificates for both factors")
    if cpx.degrees is None:
        raise PreconditionError("inheritance needs biregular factors")
    d = cpx.degrees
    out: dict[str, ExpansionCertificate] = {}
    spec = (
        ("v00_v10", cert_x, cpx.v00_size, cpx.v10_size, d.down),
        ("v01_v11", cert_x, cpx.v01_size, cpx.v11_size, d.down),
        ("v00_v01", cert_y, cpx.v00_size, cpx.v01_size, d.right),
        ("v10_v11", cert_y, cpx.v10_size, cpx.v11_size, d.right),
    )
    for which, cert, src_size, dst_size, w_src in spec:
        scaled = cert.c * Fraction(cert.v_src_size, src_size)
        out[which] = ExpansionCertificate(
            side="0to1",
            v_src_size=src_size,
            v_dst_size=dst_size,
            w_src=w_src,
            c=scaled,
            epsilon=cert.epsilon,
            mode=cert.mode,
            verdict=cert.verdict,
            trials=cert.trials,
            seed=cert.seed,
            budget=cert.budget,
            subsets_checked=cert.subsets_checked,
            note=f"inherited onto {which} from a factor certificate "
                 f"(mode={cert.mode})",
        )
    return out


# -- interchange ---------------------------------------------------------------


def complex_to_json(cpx: BalancedProductComplex) -> dict:
    d = cpx.degrees
    return {
        "v00": cpx.v00_size,
        "v10": cpx.v10_size,
        "v01": cpx.v01_size,
        "v11": cpx.v11_size,
        "reps_v00": [list(p) for p in cpx.reps_v00],
        "reps_v10": [list(p) for p in cpx.reps_v10],
        "reps_v01": [list(p) for p in cpx.reps_v01],
        "reps_v11": [list(p) for p in cpx.reps_v11],
        "edges_v00_v10": sorted([a, b] for a, b in cpx.edges_v00_v10),
        "edges_v01_v11": sorted([a, b] for a, b in cpx.edges_v01_v11),
        "edges_v00_v01": sorted([a, b] for a, b in cpx.edges_v00_v01),
        "edges_v10_v11": sorted([a, b] for a, b in cpx.edges_v10_v11),
        "faces": sorted(list(f) for f in cpx.faces),
        "degrees": {"down": d.down, "up": d.up, "right": d.right, "left": d.left}
        if d else None,
        "group_order": cpx.group_order,
        "provenance": cpx.provenance,
    }


def complex_from_json(obj: dict) -> BalancedProductComplex:
    try:
        deg = obj.get("degrees")
        cpx = BalancedProductComplex(
            reps_v00=tuple((int(a), int(b)) for a, b in obj["reps_v00"]),
            reps_v10=tuple((int(a), int(b)) for a, b in obj["reps_v10"]),
            reps_v01=tuple((int(a), int(b)) for a, b in obj["reps_v01"]),
            reps_v11=tuple((int(a), int(b)) for a, b in obj["reps_v11"]),
            edges_v00_v10=frozenset((int(a), int(b)) for a, b in obj["edges_v00_v10"]),
            edges_v01_v11=frozenset((int(a), int(b)) for a, b in obj["edges_v01_v11"]),
            edges_v00_v01=frozenset((int(a), int(b)) for a, b in obj["edges_v00_v01"]),
            edges_v10_v11=frozenset((int(a), int(b)) for a, b in obj["edges_v10_v11"]),
            faces=frozenset(tuple(int(v) for v in f) for f in obj["faces"]),
            degrees=DegreeProfile(int(deg["down"]), int(deg["up"]),
                                  int(deg["right"]), int(deg["left"])) if deg else None,
            group_order=int(obj.get("group_order", 1)),
            provenance=str(obj.get("provenance", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed complex JSON: {exc}") from exc
    check = verify_chain_condition(cpx)
    if not check.ok:
        raise ValidationError(
            f"complex JSON violates the chain condition at V00 column {check.witness_column}"
        )
    return cpx

"""Directed triangulated surfaces as combinatorial data, and the passage
between surfaces and triangulation quivers.

The cell complex of a surface is glued from its triangles.  A triangle with
sides ``(x0, x1, x2)`` in orientation order has corners ``0, 1, 2`` and side
``k`` runs from corner ``k`` to corner ``k+1``.  Two slots carrying the same
edge are identified so that both triangle orientations run along the edge in
the same direction; a self-folded triangle ``(a a b)`` is glued the same way
along its folded edge.  Surface vertices are the resulting corner classes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ValidationError
from .quiver import ArrowPermutation, TriangulationQuiver, border, validate_quiver, validate_triangulation


@dataclass(frozen=True)
class Triangle:
    """Sides in orientation order; ``folded`` marks a self-folded ``(a a b)``."""

    sides: tuple[str, str, str]
    folded: bool = False


@dataclass(frozen=True)
class DirectedTriangulatedSurface:
    edges: tuple[str, ...]
    triangles: tuple[Triangle, ...]
    boundary: frozenset

    def to_json(self) -> dict:
        tris = []
        for t in self.triangles:
            if t.folded:
                tris.append({"kind": "self_folded", "folded": t.sides[0], "other": t.sides[2]})
            else:
                tris.append({"kind": "ordinary", "edges": list(t.sides), "orient": "abc"})
        return {"edges": list(self.edges), "triangles": tris, "boundary": sorted(self.boundary)}


@dataclass(frozen=True)
class CellComplexReport:
    euler_characteristic: int
    orientable: bool
    boundary_components: int
    face_count: int
    edge_count: int
    vertex_count: int

    def to_json(self) -> dict:
        return {
            "euler_characteristic": self.euler_characteristic,
            "orientable": self.orientable,
            "boundary_components": self.boundary_components,
            "face_count": self.face_count,
            "edge_count": self.edge_count,
            "vertex_count": self.vertex_count,
        }


def validate_surface(raw: dict) -> DirectedTriangulatedSurface:
    edges = tuple(str(e) for e in raw.get("edges", []))
    if len(set(edges)) != len(edges):
        raise ValidationError("duplicate edge identifiers")
    if len(edges) < 3:
        raise ValidationError("a triangulation needs at least three pairwise different edges")
    eset = set(edges)
    tris = []
    for rec in raw.get("triangles", []):
        kind = rec.get("kind", "ordinary")
        if kind == "ordinary":
            sides = [str(x) for x in rec.get("edges", [])]
            if len(sides) != 3 or len(set(sides)) != 3:
                raise ValidationError(f"ordinary triangle needs three distinct edges: {rec!r}")
            orient = rec.get("orient", "abc")
            if orient == "cba":
                sides = sides[::-1]
            elif orient != "abc":
                raise ValidationError(f"orientation must be 'abc' or 'cba', got {orient!r}")
            tris.append(Triangle(tuple(sides)))
        elif kind == "self_folded":
            a, b = str(rec.get("folded")), str(rec.get("other"))
            if a == b:
                raise ValidationError(f"self-folded triangle needs two different edges: {rec!r}")
            tris.append(Triangle((a, a, b), folded=True))
        else:
            raise ValidationError(f"unknown triangle kind {kind!r}")
    for t in tris:
        for x in t.sides:
            if x not in eset:
                raise ValidationError(f"triangle uses unknown edge {x!r}")
    bnd = frozenset(str(x) for x in raw.get("boundary", []))
    if not bnd <= eset:
        raise ValidationError(f"boundary edges {sorted(bnd - eset)} are not edges")
    uses = Counter(x for t in tris for x in t.sides)
    for x in edges:
        want = 1 if x in bnd else 2
        if uses[x] != want:
            raise ValidationError(
                f"edge {x!r} occupies {uses[x]} triangle slots, expected {want}"
            )
    for t in tris:
        if t.folded and t.sides[0] in bnd:
            raise ValidationError(f"self-folded edge {t.sides[0]!r} cannot lie on the boundary")
    return DirectedTriangulatedSurface(edges, tuple(tris), bnd)


def quiver_of_surface(s: DirectedTriangulatedSurface) -> TriangulationQuiver:
    """Vertices are the edges; each triangle gives an f-orbit, each boundary edge an f-fixed loop."""
    arrows, cycles = [], []
    for k, t in enumerate(s.triangles):
        cyc = []
        for j in range(3):
            a, b = t.sides[j], t.sides[(j + 1) % 3]
            aid = f"t{k}:{a}>{b}"
            arrows.append((aid, a, b))
            cyc.append(aid)
        cycles.append(cyc)
    for x in sorted(s.boundary):
        aid = f"b:{x}"
        arrows.append((aid, x, x))
        cycles.append([aid])
    q = validate_quiver(s.edges, arrows)
    return validate_triangulation(q, ArrowPermutation.from_cycles(cycles, q.arrow_ids))


def triangles_of_quiver(tq: TriangulationQuiver) -> tuple[list[Triangle], list[str]]:
    """One triangle per f-orbit of length 3 (self-folded when a vertex repeats)."""
    tris, bnd = [], []
    for cyc in tq.f_orbits:
        if len(cyc) == 3:
            sides = tuple(tq.s(a) for a in cyc)
            folded = len(set(sides)) == 2
            if folded:
                # rotate to (a a b): the loop of the orbit starts the cycle
                k = next(i for i, a in enumerate(cyc) if tq.s(a) == tq.t(a))
                sides = tuple(tq.s(cyc[(k + j) % 3]) for j in range(3))
            tris.append(Triangle(sides, folded))
        else:
            bnd.append(tq.s(cyc[0]))
    return tris, bnd


def _cell_complex(triangles, boundary_edges) -> CellComplexReport:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    slots = {}
    for ti, t in enumerate(triangles):
        for k in range(3):
            find((ti, k))
            slots.setdefault(t.sides[k], []).append((ti, k))
    # orientation sign constraints: parallel gluing reverses relative orientation
    constraints = []
    for x, occ in slots.items():
        if len(occ) == 2:
            (t1, k1), (t2, k2) = occ
            union((t1, k1), (t2, k2))
            union((t1, (k1 + 1) % 3), (t2, (k2 + 1) % 3))
            constraints.append((t1, t2))
    sign = {}
    orientable = True
    adj = {ti: [] for ti in range(len(triangles))}
    for t1, t2 in constraints:
        adj[t1].append(t2)
        adj[t2].append(t1)
    for start in adj:
        if start in sign:
            continue
        sign[start] = 1
        queue = [start]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in sign:
                    sign[w] = -sign[u]
                    queue.append(w)
                elif sign[w] == sign[u]:
                    orientable = False
    V = len({find(c) for c in list(parent)})
    E = len(slots)
    F = len(triangles)
    # boundary circles: components of the graph of free sides on corner classes
    bparent = {}

    def bfind(x):
        bparent.setdefault(x, x)
        while bparent[x] != x:
            bparent[x] = bparent[bparent[x]]
            x = bparent[x]
        return x

    bedges = [x for x, occ in slots.items() if len(occ) == 1 and x in boundary_edges]
    for x in bedges:
        (ti, k), = slots[x]
        a, b = bfind(find((ti, k))), bfind(find((ti, (k + 1) % 3)))
        if a != b:
            bparent[a] = b
    components = len({bfind(find(slots[x][0])) for x in bedges})
    return CellComplexReport(V - E + F, orientable, components, F, E, V)


def cell_complex(s: DirectedTriangulatedSurface) -> CellComplexReport:
    """Invariants of the surface's own glued complex."""
    return _cell_complex(s.triangles, s.boundary)


def surface_of_quiver(tq: TriangulationQuiver) -> CellComplexReport:
    """Glue a surface realizing ``tq`` and report its invariants.

    Raises if the boundary found disagrees with the f-fixed loops.
    """
    tris, bnd = triangles_of_quiver(tq)
    rep = _cell_complex(tris, set(bnd))
    if (rep.boundary_components > 0) != bool(border(tq).vertices):
        raise AssertionError("boundary/border mismatch in reconstructed surface")
    return rep


def surface_of_quiver_data(tq: TriangulationQuiver) -> DirectedTriangulatedSurface:
    tris, bnd = triangles_of_quiver(tq)
    return DirectedTriangulatedSurface(tuple(tq.vertices), tuple(tris), frozenset(bnd))

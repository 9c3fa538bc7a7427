"""Named triangulation quivers and surfaces used throughout the library.

Arrow names follow Greek letters spelled out in ASCII.
"""

from __future__ import annotations

import random

from .quiver import ArrowPermutation, TriangulationQuiver, validate_quiver, validate_triangulation


def _tq(vertices, arrows, f_cycles) -> TriangulationQuiver:
    q = validate_quiver(vertices, arrows)
    return validate_triangulation(q, ArrowPermutation.from_cycles(f_cycles, q.arrow_ids))


def markov_quiver() -> TriangulationQuiver:
    """Double arrows 1 => 2 => 3 => 1 with f-orbits (alpha gamma delta)(sigma beta rho)."""
    return _tq(
        ["1", "2", "3"],
        [
            ("alpha", "1", "2"), ("sigma", "1", "2"),
            ("beta", "2", "3"), ("gamma", "2", "3"),
            ("delta", "3", "1"), ("rho", "3", "1"),
        ],
        [["alpha", "gamma", "delta"], ["sigma", "beta", "rho"]],
    )


def triangle_disk_quiver() -> TriangulationQuiver:
    """A single triangle whose three edges form the boundary of a disk."""
    return _tq(
        ["1", "2", "3"],
        [
            ("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "3", "1"),
            ("epsilon", "1", "1"), ("eta", "2", "2"), ("mu", "3", "3"),
        ],
        [["alpha", "beta", "gamma"], ["epsilon"], ["eta"], ["mu"]],
    )


def torus_projective_quiver() -> TriangulationQuiver:
    """Triangulation of the torus # projective plane with orientations (124)(145)(526)(336)."""
    return _tq(
        ["1", "2", "3", "4", "5", "6"],
        [
            ("alpha", "3", "3"), ("beta", "3", "6"), ("gamma", "6", "3"),
            ("nu", "1", "2"), ("xi", "2", "4"), ("delta", "4", "1"),
            ("sigma", "1", "4"), ("eta", "4", "5"), ("omega", "5", "1"),
            ("mu", "2", "6"), ("theta", "5", "2"), ("rho", "6", "5"),
        ],
        [["alpha", "beta", "gamma"], ["rho", "theta", "mu"],
         ["omega", "sigma", "eta"], ["nu", "xi", "delta"]],
    )


TETRA_ARROWS = [
    ("alpha", "3", "1"), ("beta", "4", "2"), ("gamma", "4", "1"), ("delta", "1", "5"),
    ("epsilon", "2", "5"), ("eta", "5", "4"), ("mu", "6", "3"), ("nu", "1", "6"),
    ("omega", "6", "4"), ("rho", "2", "6"), ("sigma", "3", "2"), ("xi", "5", "3"),
]
TETRA_F = [["gamma", "delta", "eta"], ["beta", "rho", "omega"],
           ["epsilon", "xi", "sigma"], ["nu", "mu", "alpha"]]


def tetrahedral_quiver() -> TriangulationQuiver:
    """Quiver of the tetrahedron with triangles (1 5 4), (2 5 3), (2 6 4), (1 6 3)."""
    return _tq([str(i) for i in range(1, 7)], TETRA_ARROWS, TETRA_F)


# --- surfaces ---------------------------------------------------------------

def sphere_surface_json() -> dict:
    return {
        "edges": ["1", "2", "3"],
        "triangles": [
            {"kind": "ordinary", "edges": ["1", "2", "3"], "orient": "abc"},
            {"kind": "ordinary", "edges": ["1", "2", "3"], "orient": "abc"},
        ],
        "boundary": [],
    }


def triangle_disk_surface_json() -> dict:
    return {
        "edges": ["1", "2", "3"],
        "triangles": [{"kind": "ordinary", "edges": ["1", "2", "3"], "orient": "abc"}],
        "boundary": ["1", "2", "3"],
    }


def tetrahedron_surface_json() -> dict:
    tris = [("1", "5", "4"), ("2", "5", "3"), ("2", "6", "4"), ("1", "6", "3")]
    return {
        "edges": [str(i) for i in range(1, 7)],
        "triangles": [{"kind": "ordinary", "edges": list(t), "orient": "abc"} for t in tris],
        "boundary": [],
    }


def torus_projective_surface_json() -> dict:
    return {
        "edges": [str(i) for i in range(1, 7)],
        "triangles": [
            {"kind": "ordinary", "edges": ["1", "2", "4"], "orient": "abc"},
            {"kind": "ordinary", "edges": ["1", "4", "5"], "orient": "abc"},
            {"kind": "ordinary", "edges": ["5", "2", "6"], "orient": "abc"},
            {"kind": "self_folded", "folded": "3", "other": "6"},
        ],
        "boundary": [],
    }


def random_surface_json(rng: random.Random, max_triangles: int = 6) -> dict:
    """A random connected directed triangulated surface, as surface JSON.

    Triangle slots are paired at random; unpaired slots become boundary edges.
    Some triangles are self-folded.  Draws are retried until every ordinary
    triangle has three distinct edges, the dual graph is connected and there
    are at least three edges.
    """
    while True:
        nt = rng.randint(1, max_triangles)
        folded = [rng.random() < 0.2 for _ in range(nt)]
        slots = []  # (triangle, position); self-folded triangles expose one free slot
        for t in range(nt):
            slots.extend((t, k) for k in ((2,) if folded[t] else (0, 1, 2)))
        rng.shuffle(slots)
        n_boundary = rng.randint(0, len(slots)) if rng.random() < 0.5 else len(slots) % 2
        if (len(slots) - n_boundary) % 2:
            n_boundary += 1
        labels = {}
        name = 0
        for t in range(nt):
            if folded[t]:
                labels[(t, 0)] = labels[(t, 1)] = f"e{name}"
                name += 1
        paired = slots[n_boundary:]
        boundary = []
        for s in slots[:n_boundary]:
            labels[s] = f"e{name}"
            boundary.append(f"e{name}")
            name += 1
        adj = {t: set() for t in range(nt)}
        for k in range(0, len(paired), 2):
            a, b = paired[k], paired[k + 1]
            labels[a] = labels[b] = f"e{name}"
            name += 1
            adj[a[0]].add(b[0])
            adj[b[0]].add(a[0])
        if name < 3:
            continue
        bad = any(
            not folded[t] and len({labels[(t, k)] for k in range(3)}) < 3 for t in range(nt)
        )
        if bad:
            continue
        seen, stack = {0}, [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != nt:
            continue
        tris = []
        for t in range(nt):
            if folded[t]:
                tris.append({"kind": "self_folded", "folded": labels[(t, 0)], "other": labels[(t, 2)]})
            else:
                tris.append({
                    "kind": "ordinary",
                    "edges": [labels[(t, k)] for k in range(3)],
                    "orient": rng.choice(["abc", "cba"]),
                })
        return {"edges": [f"e{i}" for i in range(name)], "triangles": tris, "boundary": boundary}

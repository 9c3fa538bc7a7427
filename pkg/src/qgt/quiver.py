"""Quivers, 2-regularity, the arrow involutions and triangulation quivers.

A triangulation quiver is a 2-regular quiver with a permutation ``f`` of the
arrows such that ``s(f(a)) == t(a)`` and ``f**3 == id``.  The derived
permutation ``g`` sends ``a`` to the other arrow starting where ``f(a)``
starts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from .errors import ValidationError


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str

    @property
    def is_loop(self) -> bool:
        return self.src == self.tgt


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def arrow(self, a: str) -> Arrow:
        try:
            return self.arrow_map[a]
        except KeyError:
            raise ValidationError(f"unknown arrow {a!r}") from None

    def s(self, a: str) -> str:
        return self.arrow(a).src

    def t(self, a: str) -> str:
        return self.arrow(a).tgt

    @cached_property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(sorted(a.id for a in self.arrows))

    def out_arrows(self, v: str) -> list[str]:
        return sorted(a.id for a in self.arrows if a.src == v)

    def in_arrows(self, v: str) -> list[str]:
        return sorted(a.id for a in self.arrows if a.tgt == v)

    @cached_property
    def is_two_regular(self) -> bool:
        if not self.vertices:
            return False
        outs = Counter(a.src for a in self.arrows)
        ins = Counter(a.tgt for a in self.arrows)
        return all(outs[v] == 2 and ins[v] == 2 for v in self.vertices)

    @cached_property
    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.src].add(a.tgt)
            adj[a.tgt].add(a.src)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def to_json(self, f: "ArrowPermutation | None" = None) -> dict:
        out = {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in self.arrows],
        }
        if f is not None:
            out["f"] = [list(c) for c in f.cycles]
        return out


def validate_quiver(vertices, arrows) -> Quiver:
    """Build a :class:`Quiver` from raw vertex ids and arrow records.

    ``arrows`` may hold dicts with ``id/src/tgt`` keys or ``(id, src, tgt)``
    triples.  Identifiers are normalised to strings.
    """
    verts = tuple(str(v) for v in vertices)
    dup = [v for v, k in Counter(verts).items() if k > 1]
    if dup:
        raise ValidationError(f"duplicate vertex identifiers: {sorted(dup)}")
    vset = set(verts)
    parsed = []
    for rec in arrows:
        if isinstance(rec, dict):
            try:
                aid, src, tgt = rec["id"], rec["src"], rec["tgt"]
            except KeyError as exc:
                raise ValidationError(f"arrow record {rec!r} lacks {exc}") from None
        else:
            aid, src, tgt = rec
        aid, src, tgt = str(aid), str(src), str(tgt)
        for end in (src, tgt):
            if end not in vset:
                raise ValidationError(f"arrow {aid!r} references unknown vertex {end!r}")
        parsed.append(Arrow(aid, src, tgt))
    dup = [a for a, k in Counter(a.id for a in parsed).items() if k > 1]
    if dup:
        raise ValidationError(f"duplicate arrow identifiers: {sorted(dup)}")
    return Quiver(verts, tuple(parsed))


def _require_two_regular(q: Quiver):
    if not q.is_two_regular:
        raise ValidationError("quiver is not 2-regular")


def bar(q: Quiver, a: str) -> str:
    """The other arrow with the same source as ``a``."""
    _require_two_regular(q)
    src = q.s(a)
    (other,) = [b.id for b in q.arrows if b.src == src and b.id != a]
    return other


def star(q: Quiver, a: str) -> str:
    """The other arrow with the same target as ``a``."""
    _require_two_regular(q)
    tgt = q.t(a)
    (other,) = [b.id for b in q.arrows if b.tgt == tgt and b.id != a]
    return other


@dataclass(frozen=True)
class ArrowPermutation:
    """A bijection on arrow ids, kept both as a map and as disjoint cycles."""

    mapping: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, d: dict[str, str]) -> "ArrowPermutation":
        if sorted(d) != sorted(d.values()):
            raise ValidationError("f is not a bijection on the arrow set")
        return cls(tuple(sorted(d.items())))

    @classmethod
    def from_cycles(cls, cycles, arrow_ids=None) -> "ArrowPermutation":
        d = {}
        for cyc in cycles:
            cyc = [str(x) for x in cyc]
            for k, a in enumerate(cyc):
                if a in d:
                    raise ValidationError(f"arrow {a!r} occurs in two cycles of f")
                d[a] = cyc[(k + 1) % len(cyc)]
        if arrow_ids is not None:
            missing = set(arrow_ids) - set(d)
            extra = set(d) - set(arrow_ids)
            if extra:
                raise ValidationError(f"f mentions unknown arrows {sorted(extra)}")
            if missing:
                raise ValidationError(f"f is not defined on arrows {sorted(missing)}")
        return cls.from_dict(d)

    @cached_property
    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def __call__(self, a: str) -> str:
        return self.as_dict[a]

    @cached_property
    def cycles(self) -> tuple[tuple[str, ...], ...]:
        """Cycles, each rotated to start at its least id, sorted by that id."""
        d = self.as_dict
        seen, out = set(), []
        for a in sorted(d):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = d[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = d[b]
            out.append(tuple(cyc))
        return tuple(out)

    def power(self, a: str, k: int) -> str:
        d = self.as_dict
        for _ in range(k):
            a = d[a]
        return a

    def inverse(self, a: str) -> str:
        for x, y in self.mapping:
            if y == a:
                return x
        raise KeyError(a)

    def orbit_partition(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.cycles)


@dataclass(frozen=True)
class TriangulationQuiver:
    quiver: Quiver
    f: ArrowPermutation
    g: ArrowPermutation = field(compare=False)

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrow_ids

    def s(self, a):
        return self.quiver.s(a)

    def t(self, a):
        return self.quiver.t(a)

    def bar(self, a):
        return self._bar[a]

    def star(self, a):
        return self._star[a]

    @cached_property
    def _bar(self):
        return {a: bar(self.quiver, a) for a in self.quiver.arrow_ids}

    @cached_property
    def _star(self):
        return {a: star(self.quiver, a) for a in self.quiver.arrow_ids}

    @cached_property
    def g_orbits(self) -> tuple[tuple[str, ...], ...]:
        return self.g.cycles

    @cached_property
    def orbit_rep(self) -> dict[str, str]:
        """Arrow -> canonical representative (least id) of its g-orbit."""
        return {a: cyc[0] for cyc in self.g_orbits for a in cyc}

    def n(self, a: str) -> int:
        """Length of the g-orbit of ``a``."""
        rep = self.orbit_rep[a]
        return next(len(c) for c in self.g_orbits if c[0] == rep)

    @cached_property
    def f_orbits(self):
        return self.f.cycles

    def to_json(self) -> dict:
        return self.quiver.to_json(self.f)


def derive_g(q: Quiver, f: ArrowPermutation) -> ArrowPermutation:
    return ArrowPermutation.from_dict({a: bar(q, f(a)) for a in q.arrow_ids})


def validate_triangulation(q: Quiver, f: ArrowPermutation) -> TriangulationQuiver:
    """Check conditions (a) 2-regular, (b) s(f(a)) = t(a), (c) f^3 = id."""
    if len(q.vertices) < 3:
        raise ValidationError("triangulation quivers need at least three vertices")
    if not q.is_two_regular:
        raise ValidationError("condition (a) fails: quiver is not 2-regular")
    if not q.is_connected:
        raise ValidationError("triangulation quiver must be connected")
    if sorted(f.as_dict) != list(q.arrow_ids):
        raise ValidationError("f is not a bijection on the arrow set")
    for a in q.arrow_ids:
        if q.s(f(a)) != q.t(a):
            raise ValidationError(
                f"condition (b) fails: s(f({a})) = {q.s(f(a))} but t({a}) = {q.t(a)}"
            )
    for a in q.arrow_ids:
        if f.power(a, 3) != a:
            raise ValidationError(f"condition (c) fails: f^3({a}) != {a}")
    g = derive_g(q, f)
    tq = TriangulationQuiver(q, f, g)
    # g^{n-1}(a) == f^2(bar a), i.e. g^{-1}(a) is the arrow into s(a) outside a's f-orbit
    for a in q.arrow_ids:
        n = tq.n(a)
        if g.power(a, n - 1) != f.power(bar(q, a), 2):
            raise ValidationError(f"internal: g^(n-1)({a}) != f^2(bar {a})")
    return tq


def triangulation_from_json(data: dict) -> TriangulationQuiver:
    q = validate_quiver(data.get("vertices", []), data.get("arrows", []))
    if "f" not in data:
        raise ValidationError("quiver file has no 'f' cycles")
    f = ArrowPermutation.from_cycles(data["f"], q.arrow_ids)
    for cyc in data["f"]:
        if len(cyc) == 1 and not q.arrow(str(cyc[0])).is_loop:
            raise ValidationError(f"singleton f-cycle {cyc[0]!r} is not a loop")
    return validate_triangulation(q, f)


@dataclass(frozen=True)
class Border:
    vertices: frozenset
    loops: dict = field(hash=False)


def border(tq: TriangulationQuiver) -> Border:
    """Vertices carrying a loop fixed by f, with those loops."""
    loops = {}
    for a in tq.arrows:
        if tq.quiver.arrow(a).is_loop and tq.f(a) == a:
            v = tq.s(a)
            if v in loops:
                raise ValidationError(f"two border loops at vertex {v!r}")
            loops[v] = a
    return Border(frozenset(loops), loops)


def relabel(tq: TriangulationQuiver, vmap: dict, amap: dict) -> TriangulationQuiver:
    q = tq.quiver
    arrows = [(amap[a.id], vmap[a.src], vmap[a.tgt]) for a in q.arrows]
    nq = validate_quiver([vmap[v] for v in q.vertices], arrows)
    f = ArrowPermutation.from_dict({amap[a]: amap[b] for a, b in tq.f.mapping})
    return validate_triangulation(nq, f)


def find_isomorphisms(tq1: TriangulationQuiver, tq2: TriangulationQuiver):
    """Yield every arrow bijection commuting with f and bar that also respects vertices.

    Both structures are connected, so the image of one arrow fixes the rest;
    at most |Q_1| candidate seeds are tried.
    """
    A1, A2 = tq1.arrows, tq2.arrows
    if len(A1) != len(A2) or len(tq1.vertices) != len(tq2.vertices):
        return
    seed = A1[0]
    for target in A2:
        phi = {seed: target}
        stack = [seed]
        ok = True
        while stack and ok:
            a = stack.pop()
            b = phi[a]
            for step1, step2 in ((tq1.f, tq2.f), (tq1.bar, tq2.bar)):
                a2, b2 = step1(a), step2(b)
                if a2 in phi:
                    if phi[a2] != b2:
                        ok = False
                        break
                else:
                    phi[a2] = b2
                    stack.append(a2)
        if not ok or len(phi) != len(A1) or len(set(phi.values())) != len(A2):
            continue
        vmap = {}
        for a, b in phi.items():
            for x, y in ((tq1.s(a), tq2.s(b)), (tq1.t(a), tq2.t(b))):
                if vmap.setdefault(x, y) != y:
                    ok = False
        if ok and len(set(vmap.values())) == len(vmap):
            yield phi


def find_isomorphism(tq1: TriangulationQuiver, tq2: TriangulationQuiver) -> dict | None:
    """First arrow bijection commuting with f and bar, or None."""
    return next(find_isomorphisms(tq1, tq2), None)


class Special(str, Enum):
    MARKOV = "Markov"
    TETRAHEDRAL = "Tetrahedral"
    TRIANGLE_DISK = "TriangleDisk"
    OTHER = "Other"


def recognize_special(tq: TriangulationQuiver) -> Special:
    from . import families

    for kind, ref in (
        (Special.MARKOV, families.markov_quiver()),
        (Special.TETRAHEDRAL, families.tetrahedral_quiver()),
        (Special.TRIANGLE_DISK, families.triangle_disk_quiver()),
    ):
        if find_isomorphism(tq, ref) is not None:
            return kind
    return Special.OTHER


_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan",
            "gold", "gray", "navy", "olive"]


def export_dot(q: Quiver, f: ArrowPermutation | None = None, name: str = "Q") -> str:
    """DOT text; when ``f`` is given each f-orbit gets its own edge colour."""
    colour = {}
    if f is not None:
        for k, cyc in enumerate(f.cycles):
            for a in cyc:
                colour[a] = _PALETTE[k % len(_PALETTE)]
    lines = [f'digraph "{name}" {{']
    for v in q.vertices:
        lines.append(f'  "{v}";')
    for a in sorted(q.arrows, key=lambda a: a.id):
        attrs = f'label="{a.id}"'
        if a.id in colour:
            attrs += f', color="{colour[a.id]}"'
        lines.append(f'  "{a.src}" -> "{a.tgt}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"

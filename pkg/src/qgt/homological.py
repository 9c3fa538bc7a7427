"""Right modules, projective covers, syzygies and periods of simple modules.

A module is a representation: basis vectors tagged by vertex and, for each
arrow a, a sparse matrix sending m (at s(a)) to m*a (at t(a)).  Vectors act
from the left as rows, so m*a is the image of the basis row under a.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import FiniteDimAlgebra
from .errors import ValidationError
from .linalg import Echelon, complement_units, vec_add


@dataclass(frozen=True)
class Module:
    algebra: FiniteDimAlgebra
    vertex_of: tuple  # vertex of each basis vector
    act: dict  # arrow -> tuple of sparse images, one per basis vector

    @property
    def dim(self) -> int:
        return len(self.vertex_of)

    def dim_vector(self) -> dict:
        out = {v: 0 for v in self.algebra.quiver.vertices}
        for v in self.vertex_of:
            out[v] += 1
        return out

    def dim_tuple(self) -> tuple:
        d = self.dim_vector()
        return tuple(d[v] for v in self.algebra.quiver.vertices)

    def apply(self, x: dict, a: str) -> dict:
        F = self.algebra.field
        out: dict = {}
        rows = self.act[a]
        for k, c in x.items():
            for j, d in rows[k].items():
                y = F.norm(out.get(j, 0) + c * d)
                if y:
                    out[j] = y
                else:
                    out.pop(j, None)
        return out

    def apply_word(self, x: dict, word) -> dict:
        for a in word:
            if not x:
                break
            x = self.apply(x, a)
        return x

    def check(self):
        """Raise unless dimensions match and every relation acts as zero."""
        q = self.algebra.quiver
        for a in q.arrow_ids:
            rows = self.act[a]
            if len(rows) != self.dim:
                raise ValidationError(f"arrow {a} matrix has {len(rows)} rows, module has dimension {self.dim}")
            for k, img in enumerate(rows):
                if img and self.vertex_of[k] != q.s(a):
                    raise ValidationError(f"arrow {a} acts on a vector at vertex {self.vertex_of[k]}")
                for j in img:
                    if self.vertex_of[j] != q.t(a):
                        raise ValidationError(f"arrow {a} maps outside vertex {q.t(a)}")
        F = self.algebra.field
        for rel in self.algebra.presentation.relations:
            for k, v in enumerate(self.vertex_of):
                if v != rel.source:
                    continue
                tot: dict = {}
                for w, c in rel.terms:
                    tot = vec_add(F, tot, self.apply_word({k: F.one}, w), c)
                if tot:
                    raise ValidationError(f"relation {rel.format(F)} does not act as zero")

    def to_json(self) -> dict:
        F = self.algebra.field
        return {
            "vertices": list(self.vertex_of),
            "arrows": {a: [{str(j): F.format(c) for j, c in sorted(r.items())} for r in rows]
                       for a, rows in self.act.items()},
        }


def make_module(A: FiniteDimAlgebra, vertex_of, act, check: bool = True) -> Module:
    full = {a: tuple(act.get(a, [{}] * len(vertex_of))) for a in A.quiver.arrow_ids}
    M = Module(A, tuple(vertex_of), full)
    if check:
        M.check()
    return M


def simple_module(A: FiniteDimAlgebra, i: str) -> Module:
    if i not in A.quiver.vertices:
        raise ValidationError(f"unknown vertex {i!r}")
    return Module(A, (i,), {a: ({},) for a in A.quiver.arrow_ids})


def projective_module(A: FiniteDimAlgebra, i: str) -> Module:
    """P_i = e_i A on the normal-form basis of e_i A."""
    if i not in A.quiver.vertices:
        raise ValidationError(f"unknown vertex {i!r}")
    idx = A.block(i)
    pos = {k: n for n, k in enumerate(idx)}
    act = {}
    for a in A.quiver.arrow_ids:
        rows = []
        for k in idx:
            img = A.rmul[a][k]
            rows.append({pos[j]: c for j, c in img.items()})
        act[a] = tuple(rows)
    return Module(A, tuple(A.basis[k].target for k in idx), act)


def radical_image(M: Module) -> list[dict]:
    """Spanning vectors of M*J."""
    out = []
    for a, rows in M.act.items():
        out.extend(r for r in rows if r)
    return out


def top(M: Module) -> dict:
    """Dimension vector of M / MJ."""
    F = M.algebra.field
    out = {v: 0 for v in M.algebra.quiver.vertices}
    for k in complement_units(F, radical_image(M), M.dim):
        out[M.vertex_of[k]] += 1
    return out


@dataclass
class Cover:
    summands: list  # vertex of each indecomposable projective summand, in order
    generators: list  # image in M of each summand's top, as sparse vectors
    images: list  # per basis vector of P: its image in M
    projective: Module


def projective_cover(M: Module, rng: random.Random | None = None) -> Cover:
    """Minimal projective cover.

    The top of M is lifted to the lexicographically first unit vectors
    completing M*J; with ``rng`` each lift is perturbed by a random element of
    M*J at the same vertex (any lift gives a minimal cover).
    """
    A = M.algebra
    F = A.field
    rad = radical_image(M)
    tops = complement_units(F, rad, M.dim)
    gens = []
    if rng is not None:
        E = Echelon(F)
        for v in rad:
            E.add(v)
        radb = E.basis()
    for k in tops:
        g = {k: F.one}
        if rng is not None:
            v = M.vertex_of[k]
            for r in radb:
                if all(M.vertex_of[j] == v for j in r):
                    g = vec_add(F, g, r, F.random_element(rng))
        gens.append(g)
    summands = [M.vertex_of[k] for k in tops]
    vertex_of, images = [], []
    act = {a: [] for a in A.quiver.arrow_ids}
    offset = 0
    for v, g in zip(summands, gens):
        idx = A.block(v)
        pos = {k: offset + n for n, k in enumerate(idx)}
        for k in idx:
            b = A.basis[k]
            if b.word:
                parent = A.index(b.word[:-1]) if len(b.word) > 1 else A.idempotent(v)
                img = M.apply(images[pos[parent]], b.word[-1])
            else:
                img = dict(g)
            images.append(img)
            vertex_of.append(b.target)
            for a in A.quiver.arrow_ids:
                act[a].append({pos[j]: c for j, c in A.rmul[a][k].items()})
        offset += len(idx)
    P = Module(A, tuple(vertex_of), {a: tuple(r) for a, r in act.items()})
    return Cover(summands, gens, images, P)


def syzygy(M: Module, rng: random.Random | None = None) -> tuple[Module, Cover]:
    """Kernel of the minimal projective cover, with the cover used."""
    A = M.algebra
    F = A.field
    cov = projective_cover(M, rng)
    P = cov.projective
    basis = []  # kernel vectors in P coordinates, grouped by vertex
    kvertex = []
    echelons = {}
    for v in A.quiver.vertices:
        idx = [k for k, w in enumerate(P.vertex_of) if w == v]
        if not idx:
            continue
        E = Echelon(F, track=True)
        for k in idx:
            E.add(cov.images[k])
        kb = Echelon(F)
        for combo in E.kernel:
            kb.add({idx[j]: c for j, c in combo.items()})
        vecs = kb.basis()
        # coordinates of images are taken against this kernel basis
        tr = Echelon(F, track=True)
        for vec in vecs:
            tr.add(vec)
        echelons[v] = (tr, len(basis))
        basis.extend(vecs)
        kvertex.extend([v] * len(vecs))
    act = {}
    for a in A.quiver.arrow_ids:
        rows = []
        t = A.quiver.t(a)
        for k, vec in enumerate(basis):
            if kvertex[k] != A.quiver.s(a):
                rows.append({})
                continue
            img = P.apply(vec, a)
            if not img:
                rows.append({})
                continue
            tr, off = echelons[t]
            coords = tr.coordinates(img)
            if coords is None:
                raise AssertionError("kernel is not a submodule")
            rows.append({off + j: c for j, c in coords.items()})
        act[a] = tuple(rows)
    return Module(A, tuple(kvertex), act), cov


@dataclass
class ResolutionStep:
    k: int
    dim_vector: tuple
    cover: tuple  # multiplicity of each P_v in the cover of this syzygy

    def to_json(self, vertices) -> dict:
        return {"k": self.k, "dim_vector": dict(zip(vertices, self.dim_vector)),
                "cover": dict(zip(vertices, self.cover))}


@dataclass
class ResolutionTrace:
    vertex: str
    vertices: tuple
    steps: list
    period: int | None

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "period": self.period,
                "steps": [s.to_json(self.vertices) for s in self.steps]}


def resolution(A: FiniteDimAlgebra, i: str, bound: int = 8, rng: random.Random | None = None,
               stop_at_period: bool = False) -> ResolutionTrace:
    """Minimal resolution of S_i: Omega^k(S_i) for k = 0..bound."""
    if bound < 1:
        raise ValidationError("bound must be >= 1")
    vs = tuple(A.quiver.vertices)
    target = tuple(1 if v == i else 0 for v in vs)
    M = simple_module(A, i)
    steps = []
    period = None
    for k in range(bound + 1):
        dv = M.dim_tuple()
        if k > 0 and period is None and dv == target:
            period = k
        if k == bound or (stop_at_period and period is not None) or M.dim == 0:
            steps.append(ResolutionStep(k, dv, tuple(0 for _ in vs)))
            break
        N, cov = syzygy(M, rng)
        mult = tuple(sum(1 for s in cov.summands if s == v) for v in vs)
        if cov.projective.dim != M.dim + N.dim:
            raise AssertionError("dimension bookkeeping failed along the resolution")
        steps.append(ResolutionStep(k, dv, mult))
        M = N
    return ResolutionTrace(i, vs, steps, period)


def period_of_simple(A: FiniteDimAlgebra, i: str, bound: int = 8) -> int | None:
    """Least k <= bound with Omega^k(S_i) = S_i, tested by dimension vector."""
    return resolution(A, i, bound, stop_at_period=True).period


def tube_rank(period: int | None) -> int | None:
    """Omega^2-period of a simple with Omega-period ``period``."""
    if period is None:
        return None
    return period // 2 if period % 2 == 0 else period

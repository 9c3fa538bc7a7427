"""Minimal-relation census, triangulation search, weight fitting and the
aggregate report for algebras of generalized quaternion type.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import (
    FiniteDimAlgebra,
    cartan_matrix,
    left_layer_dims,
    radical_layer_subspace,
    symmetric_form,
)
from .errors import ValidationError
from .homological import period_of_simple, tube_rank
from .linalg import Echelon
from .presentations import WeightData, _g_walk
from .quiver import (
    ArrowPermutation,
    TriangulationQuiver,
    border,
    find_isomorphisms,
    validate_triangulation,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


# -- census -------------------------------------------------------------------

@dataclass
class VertexCensus:
    vertex: str
    arrows: tuple  # the two arrows starting at the vertex
    paths: tuple  # the four length-2 paths from the vertex
    layer_dim: int  # dim e_i J^2 / e_i J^3
    zero_paths: tuple  # type Z
    c_relations: tuple  # ((p, 1), (q, c)) meaning p + c q in J^3
    kernel_dim: int
    classification: str  # CC, CZ, ZZ or other
    targets: tuple  # end vertices of the minimal relations
    targets_ok: bool
    double_arrow: bool
    loop: bool
    images: dict = dc_field(default_factory=dict, repr=False)

    @property
    def independent_relations(self) -> int:
        return len(self.zero_paths) + len(self.c_relations)

    def to_json(self, F) -> dict:
        return {
            "vertex": self.vertex,
            "arrows": list(self.arrows),
            "layer_dim": self.layer_dim,
            "classification": self.classification,
            "type_Z": ["*".join(p) for p in self.zero_paths],
            "type_C": [
                [[ "*".join(p), F.format(c)] for p, c in rel] for rel in self.c_relations
            ],
            "kernel_dim": self.kernel_dim,
            "targets": list(self.targets),
            "targets_ok": self.targets_ok,
            "double_arrow": self.double_arrow,
            "loop": self.loop,
        }


@dataclass
class RelationTypeReport:
    vertices: dict  # vertex -> VertexCensus

    def summary(self) -> dict:
        return {v: c.classification for v, c in self.vertices.items()}

    def is_path_zero(self, p) -> bool:
        return tuple(p) in self.vertices[_src(self, p)].zero_paths

    def is_c_pair(self, p, q) -> bool:
        vc = self.vertices[_src(self, p)]
        for rel in vc.c_relations:
            if {rel[0][0], rel[1][0]} == {tuple(p), tuple(q)}:
                return True
        return False


def _src(rep, p):
    for v, vc in rep.vertices.items():
        if tuple(p) in vc.paths:
            return v
    raise KeyError(p)


def _proportional(F, u: dict, v: dict):
    """lam with u = lam * v, or None."""
    if set(u) != set(v) or not u:
        return None
    k = min(u)
    lam = F.div(u[k], v[k])
    for j in u:
        if F.norm(u[j] - lam * v[j]):
            return None
    return lam


def relation_census(A: FiniteDimAlgebra) -> RelationTypeReport:
    q = A.quiver
    if not q.is_two_regular:
        raise ValidationError("relation census needs a 2-regular quiver")
    F = A.field
    out = {}
    for i in q.vertices:
        arrows = tuple(q.out_arrows(i))
        paths = tuple((a, b) for a in arrows for b in q.out_arrows(q.t(a)))
        J3 = radical_layer_subspace(A, i, 3)
        images = {p: J3.reduce(A.path_vector(p)) for p in paths}
        zero = tuple(p for p in paths if not images[p])
        E = Echelon(F)
        for p in paths:
            E.add(images[p])
        rank = len(E)
        crels = []
        nonzero = [p for p in paths if images[p]]
        for p, r in combinations(nonzero, 2):
            lam = _proportional(F, images[p], images[r])
            if lam is not None:
                crels.append(((p, F.one), (r, F.norm(-lam))))
        kdim = len(paths) - rank
        # elementary relations explain the kernel when they are independent and span it
        vecs = [{paths.index(p): F.one} for p in zero]
        vecs += [{paths.index(a[0]): a[1], paths.index(b[0]): b[1]} for a, b in crels]
        K = Echelon(F)
        explained = all(K.add(v) for v in vecs) and len(K) == kdim
        ntypes = (len(crels), len(zero))
        if explained and kdim == 2 and sum(ntypes) == 2:
            cls = {(2, 0): "CC", (1, 1): "CZ", (0, 2): "ZZ"}[ntypes]
        else:
            cls = "other"
        targets = tuple(sorted([q.t(p[1]) for p in zero] + [q.t(a[0][1]) for a, _ in crels]))
        expected = tuple(sorted(q.s(a) for a in q.in_arrows(i)))
        d = A.layers[i] + [0, 0, 0, 0]
        layer = d[2] - d[3]
        out[i] = VertexCensus(
            vertex=i,
            arrows=arrows,
            paths=paths,
            layer_dim=layer,
            zero_paths=zero,
            c_relations=tuple(crels),
            kernel_dim=kdim,
            classification=cls,
            targets=targets,
            targets_ok=targets == expected,
            double_arrow=q.t(arrows[0]) == q.t(arrows[1]),
            loop=any(q.t(a) == i for a in arrows),
            images=images,
        )
    return RelationTypeReport(out)


@dataclass
class JJCheck:
    passed: bool
    right: dict  # vertex -> dim e_i J^2 / e_i J^3
    left: dict  # vertex -> dim J^2 e_i / J^3 e_i
    offenders: list


def jj_dims_check(A: FiniteDimAlgebra) -> JJCheck:
    right, left, bad = {}, {}, []

    def layer(d, k):
        return (d[k] if k < len(d) else 0) - (d[k + 1] if k + 1 < len(d) else 0)

    for i in A.quiver.vertices:
        right[i] = layer(A.layers[i], 2)
        left[i] = layer(left_layer_dims(A, i), 2)
        if right[i] != 2 or left[i] != 2:
            bad.append(i)
    return JJCheck(not bad, right, left, bad)


def _in_arrows_assignments(q, i, x, y):
    """Pairs (delta, delta*) of the arrows ending at i with s(delta)=x, s(delta*)=y."""
    ins = q.in_arrows(i)
    out = []
    for d, ds in ((ins[0], ins[1]), (ins[1], ins[0])):
        if q.s(d) == x and q.s(ds) == y:
            out.append((d, ds))
    return out


def is_markov_quiver(q) -> bool:
    """Three vertices joined cyclically by double arrows."""
    if len(q.vertices) != 3 or len(q.arrows) != 6:
        return False
    nxt = {}
    for v in q.vertices:
        ts = {q.t(a) for a in q.out_arrows(v)}
        if len(ts) != 1 or v in ts or len(q.out_arrows(v)) != 2:
            return False
        nxt[v] = ts.pop()
    return len(set(nxt.values())) == 3


def propagation_check(A: FiniteDimAlgebra, census: RelationTypeReport | None = None) -> list[str]:
    """Inconsistencies with the propagation rules for type C and Z relations.

    Vertices are checked in the three situations CC, CZ and ZZ.  When the two
    arrows ending at a vertex share a source, either naming is accepted.  The
    rules assume Q is not the Markov quiver; on it the list is empty.
    """
    q = A.quiver
    census = census or relation_census(A)
    if is_markov_quiver(q):
        return []
    problems = []
    Z = census.is_path_zero
    C = census.is_c_pair
    for i, vc in census.vertices.items():
        cls = vc.classification
        if cls == "other":
            problems.append(f"vertex {i}: relations do not split into two of type C/Z")
            continue
        ok = False
        if cls == "CC":
            r1, r2 = vc.c_relations
            for first, second in ((r1, r2), (r2, r1)):
                alpha = first[0][0][0]
                p1 = [p for p, _ in first]
                p2 = [p for p, _ in second]
                ab = next((p for p in p1 if p[0] == alpha), None)
                ag1 = next((p for p in p1 if p[0] != alpha), None)
                ab1 = next((p for p in p2 if p[0] == alpha), None)
                ag = next((p for p in p2 if p[0] != alpha), None)
                if None in (ab, ag1, ab1, ag):
                    continue
                beta, gamma1, beta1, gamma = ab[1], ag1[1], ab1[1], ag[1]
                x, y = q.t(beta), q.t(beta1)
                for d, ds in _in_arrows_assignments(q, i, x, y):
                    if C((beta, d), (beta1, ds)) and C((gamma1, d), (gamma, ds)):
                        ok = True
        elif cls == "CZ":
            (zp,) = vc.zero_paths
            abar, gamma1 = zp
            (rel,) = vc.c_relations
            ps = [p for p, _ in rel]
            ab1 = next((p for p in ps if p[0] != abar), None)
            ag = next((p for p in ps if p[0] == abar), None)
            if ab1 is not None and ag is not None:
                beta1, gamma = ab1[1], ag[1]
                x, y = q.t(gamma1), q.t(gamma)
                for d, ds in _in_arrows_assignments(q, i, x, y):
                    if C((gamma1, d), (gamma, ds)) and Z((beta1, ds)):
                        ok = True
        else:  # ZZ
            z1, z2 = vc.zero_paths
            for (a, beta1), (ab, gamma1) in ((z1, z2), (z2, z1)):
                if a == ab:
                    continue
                x, y = q.t(gamma1), q.t(beta1)
                for d, ds in _in_arrows_assignments(q, i, x, y):
                    if Z((beta1, ds)) and Z((gamma1, d)):
                        ok = True
        if not ok:
            problems.append(f"vertex {i}: {cls} pattern does not propagate to the arrows ending at {i}")
    return problems


# -- triangulation search -----------------------------------------------------

def _candidates(A: FiniteDimAlgebra, census: RelationTypeReport) -> dict:
    cand = {a: set() for a in A.quiver.arrow_ids}
    for vc in census.vertices.values():
        for p in vc.zero_paths:
            cand[p[0]].add(p[1])
        for rel in vc.c_relations:
            for p, _ in rel:
                cand[p[0]].add(p[1])
    return {a: sorted(s) for a, s in cand.items()}


def _search(A: FiniteDimAlgebra, cand: dict, limit: int | None):
    q = A.quiver
    arrows = list(q.arrow_ids)
    f: dict = {}
    used: set = set()
    sols = []

    def rec():
        if limit is not None and len(sols) >= limit:
            return
        free = next((a for a in arrows if a not in f), None)
        if free is None:
            sols.append(ArrowPermutation.from_dict(dict(f)))
            return
        a = free
        for b in cand[a]:
            if b in used:
                continue
            if b == a:
                if q.s(a) == q.t(a):
                    f[a] = a
                    used.add(a)
                    rec()
                    del f[a]
                    used.discard(a)
                continue
            if b in f:
                continue
            for c in cand[b]:
                if c in (a, b) or c in used or c in f or a not in cand[c]:
                    continue
                if q.t(c) != q.s(a):
                    continue
                f.update({a: b, b: c, c: a})
                used.update((a, b, c))
                rec()
                for x in (a, b, c):
                    del f[x]
                    used.discard(x)

    rec()
    return sols


def find_triangulation(A: FiniteDimAlgebra, census: RelationTypeReport | None = None) -> ArrowPermutation | None:
    """A permutation f with (Q, f) a triangulation quiver and every a f(a) in a minimal relation.

    When several exist, one under which A is recognized (as a weighted or
    deformed algebra, then as a tetrahedral algebra) is preferred; ties are
    broken by canonical arrow order.
    """
    ranked = rank_triangulations(A, census)
    return ranked[0][0] if ranked else None


def rank_triangulations(A: FiniteDimAlgebra, census: RelationTypeReport | None = None,
                        limit: int = 256) -> list:
    """All solutions (up to ``limit``) as (f, recognized family or None), best first."""
    census = census or relation_census(A)
    sols = _search(A, _candidates(A, census), limit=limit)
    if len(sols) <= 1:
        return [(f, None) for f in sols]
    ranked = []
    for pos, f in enumerate(sols):
        try:
            tq = validate_triangulation(A.quiver, f)
        except ValidationError:
            continue
        if fit_weights(A, tq) is not None:
            ranked.append((0, pos, f, "weighted"))
        elif fit_tetrahedral(A, tq) is not None:
            ranked.append((1, pos, f, "tetrahedral"))
        else:
            ranked.append((2, pos, f, None))
    ranked.sort(key=lambda r: r[:2])
    return [(f, fam) for _, _, f, fam in ranked]


def find_all_triangulations(A: FiniteDimAlgebra, census: RelationTypeReport | None = None) -> list:
    if len(A.quiver.arrow_ids) > 16:
        raise ValidationError("enumerating all triangulations is limited to 16 arrows")
    census = census or relation_census(A)
    return _search(A, _candidates(A, census), limit=None)


# -- weight fitting -----------------------------------------------------------

@dataclass
class WeightFit:
    m: dict
    c: dict
    b: dict

    def as_weights(self) -> WeightData:
        return WeightData(dict(self.m), dict(self.c), dict(self.b))

    def to_json(self, F) -> dict:
        return {"m": dict(self.m), "c": {k: F.format(v) for k, v in self.c.items()},
                "b": {k: F.format(v) for k, v in self.b.items()}}


def _longest_g_walk(A: FiniteDimAlgebra, tq: TriangulationQuiver, a: str) -> int:
    k = 0
    while k <= A.nilpotency:
        if not A.path_vector(_g_walk(tq, a, k + 1)):
            return k
        k += 1
    return k


def fit_weights(A: FiniteDimAlgebra, tq: TriangulationQuiver, explain: list | None = None) -> WeightFit | None:
    """Read (m, c, b) off the normal forms of A, or None when A is not in that form."""
    F = A.field
    notes = explain if explain is not None else []
    if tuple(A.quiver.arrow_ids) != tuple(tq.arrows):
        notes.append("quiver mismatch")
        return None
    m = {}
    for orbit in tq.g_orbits:
        rep = tq.orbit_rep[orbit[0]]
        n = len(orbit)
        lens = {_longest_g_walk(A, tq, a) for a in orbit}
        if len(lens) != 1:
            notes.append(f"g-orbit of {rep}: socle degrees differ {sorted(lens)}")
            return None
        (L,) = lens
        if L % n or L // n < 1 or L < 3:
            notes.append(f"g-orbit of {rep}: socle degree {L} is not a multiple m*{n} with m*n >= 3")
            return None
        m[rep] = L // n
    bd = border(tq)
    loops = set(bd.loops.values())
    c: dict = {}
    b = {v: F.zero for v in sorted(bd.vertices)}
    for a in tq.arrows:
        ab = tq.bar(a)
        rep = tq.orbit_rep[ab]
        u = A.path_vector((a, tq.f(a)))
        v = A.path_vector(_g_walk(tq, ab, m[rep] * tq.n(ab) - 1))
        E = Echelon(F, track=True)
        if not E.add(v):
            notes.append(f"A_{ab} vanishes")
            return None
        if a in loops:
            if not E.add(A.path_vector(_g_walk(tq, ab, m[rep] * tq.n(ab)))):
                notes.append(f"B_{ab} is a multiple of A_{ab}")
                return None
        coords = E.coordinates(u)
        if coords is None:
            notes.append(f"{a}*{tq.f(a)} is not in the span of the expected monomials")
            return None
        cval = F.norm(coords.get(0, 0))
        if not cval:
            notes.append(f"parameter for the orbit of {ab} would be zero")
            return None
        if rep in c and c[rep] != cval:
            notes.append(f"inconsistent parameter on the g-orbit of {ab}")
            return None
        c[rep] = cval
        if a in loops:
            b[tq.s(a)] = F.norm(coords.get(1, 0))
    for beta in tq.arrows:
        fb = tq.f(beta)
        if A.path_vector((beta, fb, tq.g(fb))):
            notes.append(f"zero relation fails at {beta}")
            return None
    expected = sum(m[tq.orbit_rep[o[0]]] * len(o) ** 2 for o in tq.g_orbits)
    if A.dimension != expected:
        notes.append(f"dimension {A.dimension} differs from {expected}")
        return None
    return WeightFit(m, c, b)


@dataclass
class TetrahedralFit:
    m: int
    lam: object
    labels: dict  # tetrahedral label -> arrow of A


def fit_tetrahedral(A: FiniteDimAlgebra, tq: TriangulationQuiver, explain: list | None = None) -> TetrahedralFit | None:
    """Recognize A as Lambda(m, lam) along some identification of tq with the tetrahedral quiver."""
    from .families import tetrahedral_quiver
    from .presentations import _TETRA_COMM

    F = A.field
    notes = explain if explain is not None else []
    ref = tetrahedral_quiver()
    if A.dimension % 36:
        notes.append("dimension is not a multiple of 36")
        return None
    m = A.dimension // 36
    for phi in find_isomorphisms(ref, tq):
        def vec(terms):
            return A.expr_vector([(tuple(phi[a] for a in w), c) for w, c in terms])

        lhs, rhs, cyc = _TETRA_COMM[0]
        u = vec([(lhs, 1), (rhs, -1)])
        v = vec([(cyc * (m - 1) + rhs, 1)])
        E = Echelon(F, track=True)
        if not E.add(v):
            continue
        coords = E.coordinates(u)
        if coords is None:
            continue
        lam = F.norm(coords.get(0, 0))
        ok = True
        for lhs, rhs, cyc in _TETRA_COMM:
            terms = [(lhs, 1), (rhs, -1)]
            if cyc is not None:
                terms.append((cyc * (m - 1) + rhs, -lam))
            if vec(terms):
                ok = False
                break
        if ok:
            for th in ref.arrows:
                f1 = ref.f(th)
                word = (th, f1, ref.f(f1)) * (m - 1) + (th, f1, ref.g(f1))
                if vec([(word, 1)]):
                    ok = False
                    break
        if ok:
            return TetrahedralFit(m, lam, dict(phi))
    notes.append("no identification with the tetrahedral relations")
    return None


# -- aggregate report ---------------------------------------------------------

def gqt_report(A: FiniteDimAlgebra, seed: int = 0, bound: int = 8, trials: int = 32) -> dict:
    F = A.field
    q = A.quiver
    two_reg = q.is_two_regular
    conn = q.is_connected
    sym = symmetric_form(A, trials=trials, seed=seed)
    periods = {i: period_of_simple(A, i, bound) for i in q.vertices}
    cart = cartan_matrix(A)
    report = {
        "schema_version": SCHEMA_VERSION,
        **F.header(),
        "dimension": A.dimension,
        "two_regular": two_reg,
        "connected": conn,
        "symmetric_witness": sym.found,
        "symmetric": sym.to_json(),
        "simple_periods": periods,
        "tube_ranks": {i: tube_rank(p) for i, p in periods.items()},
        "cartan_det": cart.determinant,
        "cartan": cart.to_json(),
    }
    tq = None
    if two_reg:
        census = relation_census(A)
        jj = jj_dims_check(A)
        ranked = rank_triangulations(A, census)
        f = ranked[0][0] if ranked else None
        report["triangulation_solutions"] = len(ranked)
        report["census"] = {
            "classification": census.summary(),
            "vertices": [vc.to_json(F) for vc in census.vertices.values()],
            "jj_dims_pass": jj.passed,
            "jj_offenders": jj.offenders,
            "propagation_inconsistencies": propagation_check(A, census),
        }
        if f is not None:
            try:
                tq = validate_triangulation(q, f)
            except ValidationError:
                tq = None
        report["triangulation"] = [list(c) for c in f.cycles] if f is not None else None
    else:
        report["census"] = None
        report["triangulation"] = None
        report["triangulation_solutions"] = 0
    family = "unknown"
    fit = None
    if tq is not None:
        fit = fit_weights(A, tq)
        if fit is not None:
            family = "deformed" if any(F.norm(x) for x in fit.b.values()) else "weighted"
        # the tetrahedral family is the more specific label when both apply
        tfit = fit_tetrahedral(A, tq) if len(tq.arrows) == 12 else None
        if tfit is not None:
            family = "tetrahedral"
            report["tetrahedral"] = {"m": tfit.m, "lambda": F.format(tfit.lam),
                                     "singular": not F.norm(tfit.lam)}
    report["family"] = family
    report["weights"] = fit.to_json(F) if fit is not None else None
    problems = []
    if not two_reg:
        problems.append("quiver not 2-regular")
    if not conn:
        problems.append("quiver not connected")
    if not sym.found:
        problems.append("no symmetric form found")
    bad = [i for i, p in periods.items() if p != 4]
    if bad:
        problems.append(f"simple modules at {bad} not of period 4 within bound {bound}")
    report["verdict"] = ("consistent with generalized quaternion type" if not problems
                         else "violates: " + "; ".join(problems))
    # no finite certificate is computed; recognized families carry the known result as a flag
    if family == "unknown":
        report["tameness"] = "not certified"
    else:
        report["tameness"] = f"tame (known for {family} algebras; not computed)"
    return report

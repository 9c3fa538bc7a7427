"""Finite-dimensional bound quiver algebras K Q / I over exact fields.

The basis consists of the normal words of a Groebner basis of I together
with the stationary paths.  Elements are sparse vectors over basis indices.
Right multiplication by each arrow is precomputed, which is all that right
modules, radical layers and products need.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field

from .errors import CapExceeded, ValidationError
from .fields import Field
from .groebner import RewriteSystem, groebner_basis
from .linalg import Echelon, det_int, is_nonsingular, kernel, vec_add
from .presentations import Presentation
from .quiver import Quiver

log = logging.getLogger(__name__)

MAX_BASIS = 200_000


@dataclass(frozen=True)
class BasisElement:
    source: str
    target: str
    word: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __str__(self):
        return "*".join(self.word) if self.word else f"e_{self.source}"


@dataclass
class FiniteDimAlgebra:
    presentation: Presentation
    field: Field
    basis: list[BasisElement]
    rmul: dict  # arrow id -> list of sparse vectors, image of each basis element
    rules: RewriteSystem = dc_field(repr=False)
    nilpotency: int = 0
    layers: dict = dc_field(default_factory=dict)  # vertex -> [dim e_iJ^k for k >= 0]
    block_layers: dict = dc_field(default_factory=dict)  # (i, j) -> [dim e_iJ^ke_j]
    spans: dict = dc_field(default_factory=dict, repr=False)

    @property
    def quiver(self) -> Quiver:
        return self.presentation.quiver

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, word) -> int:
        return self._index[tuple(word)]

    def idempotent(self, v: str) -> int:
        return self._stationary[v]

    def __post_init__(self):
        self._index = {b.word: k for k, b in enumerate(self.basis) if b.word}
        self._stationary = {b.source: k for k, b in enumerate(self.basis) if not b.word}
        self._aidx = {a: k for k, a in enumerate(self.quiver.arrow_ids)}

    # -- products -----------------------------------------------------------
    def right_arrow(self, x: dict, a: str) -> dict:
        F = self.field
        out: dict = {}
        R = self.rmul[a]
        for k, c in x.items():
            for j, d in R[k].items():
                y = F.norm(out.get(j, 0) + c * d)
                if y:
                    out[j] = y
                else:
                    out.pop(j, None)
        return out

    def times_word(self, x: dict, source: str, word) -> dict:
        """x * (path ``word`` from ``source``); ``word`` may be empty."""
        x = {k: c for k, c in x.items() if self.basis[k].target == source}
        for a in word:
            if not x:
                break
            x = self.right_arrow(x, a)
        return x

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for j, c in y.items():
            b = self.basis[j]
            out = vec_add(self.field, out, self.times_word(x, b.source, b.word), c)
        return out

    def unit(self, k: int) -> dict:
        return {k: self.field.one}

    def path_vector(self, word, source: str | None = None) -> dict:
        """Normal form of a path, as a vector."""
        word = tuple(word)
        if not word:
            return self.unit(self._stationary[source])
        s = self.quiver.s(word[0])
        return self.times_word(self.unit(self._stationary[s]), s, word)

    def expr_vector(self, terms) -> dict:
        out: dict = {}
        for word, c in terms:
            out = vec_add(self.field, out, self.path_vector(word), c)
        return out

    def format(self, x: dict) -> str:
        if not x:
            return "0"
        return " + ".join(f"{self.field.format(c)}*{self.basis[k]}" for k, c in sorted(x.items()))

    def block(self, i: str, j: str | None = None) -> list[int]:
        """Basis indices of e_i A (or e_i A e_j)."""
        return [k for k, b in enumerate(self.basis)
                if b.source == i and (j is None or b.target == j)]

    def to_json(self) -> dict:
        return {
            **self.field.header(),
            "dimension": self.dimension,
            "nilpotency": self.nilpotency,
            "radical_layers": radical_series(self),
            "cartan": cartan_matrix(self).to_json(),
            "basis": [str(b) for b in self.basis],
        }


def _compile(q: Quiver, pres: Presentation):
    aidx = {a: k for k, a in enumerate(q.arrow_ids)}
    polys = []
    for r in pres.relations:
        polys.append({tuple(aidx[a] for a in w): c for w, c in r.terms})
    return aidx, polys


def build_algebra(pres: Presentation, F: Field | None = None, max_len: int = 64) -> FiniteDimAlgebra:
    """Quotient of the path algebra by the ideal of ``pres.relations``.

    Raises :class:`CapExceeded` if the quotient has a normal word or an
    overlap longer than ``max_len`` (typically: not finite-dimensional).
    """
    F = F or pres.field
    if F != pres.field:
        pres = Presentation(pres.quiver, pres.relations, F, pres.meta)
    q = pres.quiver
    for r in pres.relations:
        if any(len(w) < 2 for w, _ in r.terms):
            raise ValidationError("relation has a path of length < 2")
    aidx, polys = _compile(q, pres)
    names = q.arrow_ids
    rs = groebner_basis(F, polys, cap=max_len)
    # enumerate normal words level by level; prefixes of normal words are normal
    basis = [BasisElement(v, v, ()) for v in q.vertices]
    level = [((), v, v) for v in q.vertices]
    length = 0
    while level:
        length += 1
        nxt = []
        for w, s, t in level:
            for a in q.out_arrows(t):
                nw = w + (aidx[a],)
                if rs.has_suffix_lead(nw):
                    continue
                nxt.append((nw, s if w else t, q.t(a)))
        if nxt and length > max_len:
            raise CapExceeded(f"normal words longer than the cap {max_len}: quotient is not finite-dimensional within the cap")
        if len(basis) + len(nxt) > MAX_BASIS:
            raise CapExceeded(f"more than {MAX_BASIS} normal words: quotient is not finite-dimensional within the cap")
        nxt.sort(key=lambda e: e[0])
        basis.extend(BasisElement(s, t, tuple(names[i] for i in w)) for w, s, t in nxt)
        level = nxt
    index = {tuple(aidx[a] for a in b.word): k for k, b in enumerate(basis) if b.word}
    rmul = {}
    for a in names:
        ai = aidx[a]
        rows = []
        for b in basis:
            if b.target != q.s(a):
                rows.append({})
                continue
            w = tuple(aidx[x] for x in b.word) + (ai,)
            if w in index:
                rows.append({index[w]: F.one})
            else:
                nf = rs.reduce({w: F.one})
                rows.append({index[u]: c for u, c in nf.items()})
        rmul[a] = rows
    A = FiniteDimAlgebra(pres, F, basis, rmul, rs)
    _radical_layers(A)
    return A


def _radical_layers(A: FiniteDimAlgebra):
    """Dimensions of e_i J^k e_j.

    W_l[j] spans the images of paths of length l from i to j; then
    e_i J^k e_j is the sum of the W_l[j] over l >= k.
    """
    F = A.field
    q = A.quiver
    nil = 0
    for i in q.vertices:
        W = {i: [A.unit(A.idempotent(i))]}
        spans = []
        while W:
            spans.append(W)
            if len(spans) > A.dimension + 2:
                raise CapExceeded(f"radical of e_{i}A is not nilpotent; the ideal is not admissible")
            nxt: dict = {}
            for t, vs in W.items():
                for a in q.out_arrows(t):
                    for v in vs:
                        img = A.right_arrow(v, a)
                        if img:
                            nxt.setdefault(q.t(a), []).append(img)
            W = {}
            for t, vs in nxt.items():
                E = Echelon(F)
                for v in vs:
                    E.add(v)
                W[t] = E.basis()
        nil = max(nil, len(spans))
        A.spans[i] = spans
        total = [0] * (len(spans) + 1)
        for j in q.vertices:
            dims = []
            for k in range(len(spans) + 1):
                E = Echelon(F)
                for W in spans[k:]:
                    for v in W.get(j, ()):
                        E.add(v)
                dims.append(len(E))
            A.block_layers[(i, j)] = dims
            total = [x + y for x, y in zip(total, dims)]
        A.layers[i] = total
    A.nilpotency = nil
    if sum(A.layers[i][0] for i in q.vertices) != A.dimension:
        raise AssertionError("layer bookkeeping mismatch")


def radical_layer_subspace(A: FiniteDimAlgebra, i: str, k: int, j: str | None = None) -> Echelon:
    """Echelon basis of e_i J^k (or e_i J^k e_j)."""
    E = Echelon(A.field)
    for W in A.spans[i][k:]:
        for t, vs in W.items():
            if j is None or t == j:
                for v in vs:
                    E.add(v)
    return E


def left_layer_dims(A: FiniteDimAlgebra, j: str) -> list[int]:
    """dim J^k e_j for k = 0, 1, ..."""
    n = max(len(A.block_layers[(i, j)]) for i in A.quiver.vertices)
    out = [0] * n
    for i in A.quiver.vertices:
        d = A.block_layers[(i, j)]
        for k in range(n):
            out[k] += d[k] if k < len(d) else 0
    return out


def radical_series(A: FiniteDimAlgebra) -> list[int]:
    """dim J^k / J^{k+1} for k = 0 .. nilpotency-1 (k = 0 is the top)."""
    out = []
    for k in range(A.nilpotency):
        tot = 0
        for i in A.quiver.vertices:
            d = A.layers[i] + [0, 0]
            if k < len(d) - 1:
                tot += d[k] - d[k + 1]
        out.append(tot)
    return out


def vertex_radical_series(A: FiniteDimAlgebra, i: str) -> list[int]:
    d = A.layers[i]
    return [d[k] - d[k + 1] for k in range(len(d) - 1)]


def _annihilated(A: FiniteDimAlgebra, idx: list[int], words) -> list[dict]:
    """Basis of {x in span(idx) : x*w = 0 for every w}."""
    images = []
    for k in idx:
        img = {}
        off = 0
        for w in words:
            src = A.quiver.s(w[0])
            y = A.times_word(A.unit(k), src, w)
            for j, c in y.items():
                img[off * A.dimension + j] = c
            off += 1
        images.append(img)
    ker = kernel(A.field, images)
    return [{idx[j]: c for j, c in v.items()} for v in ker]


def socle(A: FiniteDimAlgebra, i: str) -> list[dict]:
    """Basis of soc(e_i A)."""
    return _annihilated(A, A.block(i), [(a,) for a in A.quiver.arrow_ids])


def socle_series(A: FiniteDimAlgebra) -> dict:
    """Per vertex: dims of soc(e_iA) and soc_2(e_iA)."""
    q = A.quiver
    two = [(a, b) for a in q.arrow_ids for b in q.out_arrows(q.t(a))]
    out = {}
    for i in q.vertices:
        s1 = len(socle(A, i))
        s2 = len(_annihilated(A, A.block(i), two)) if two else len(A.block(i))
        out[i] = {"soc": s1, "soc2": s2}
    return out


@dataclass(frozen=True)
class CartanData:
    vertices: tuple
    matrix: tuple
    determinant: int

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "matrix": [list(r) for r in self.matrix],
                "determinant": self.determinant}


def cartan_matrix(A: FiniteDimAlgebra) -> CartanData:
    vs = A.quiver.vertices
    pos = {v: k for k, v in enumerate(vs)}
    C = [[0] * len(vs) for _ in vs]
    for b in A.basis:
        C[pos[b.source]][pos[b.target]] += 1
    return CartanData(tuple(vs), tuple(tuple(r) for r in C), det_int(C))


def per_vertex_dims(A: FiniteDimAlgebra) -> dict:
    return {i: len(A.block(i)) for i in A.quiver.vertices}


# -- symmetric forms ----------------------------------------------------------

@dataclass
class SymmetricFormResult:
    found: bool
    trials: int
    codimension: int  # dim A / [A, A]
    witness: dict | None = None  # basis index -> value of the form
    proved_not_symmetric: bool = False
    reason: str = ""

    def to_json(self, A: FiniteDimAlgebra | None = None) -> dict:
        out = {"found": self.found, "trials": self.trials, "commutator_codimension": self.codimension,
               "proved_not_symmetric": self.proved_not_symmetric, "reason": self.reason}
        if self.witness is not None and A is not None:
            out["witness"] = {str(A.basis[k]): A.field.format(v) for k, v in sorted(self.witness.items())}
        return out


def commutator_space(A: FiniteDimAlgebra) -> Echelon:
    """[A, A], spanned by [x, b] for x an arrow or idempotent and b a basis element."""
    F = A.field
    E = Echelon(F)
    q = A.quiver
    for k, b in enumerate(A.basis):
        if b.source != b.target:
            E.add(A.unit(k))
    for a in q.arrow_ids:
        xa = A.path_vector((a,))
        for k, b in enumerate(A.basis):
            right = A.right_arrow(A.unit(k), a)  # b * a
            left = A.times_word(xa, b.source, b.word) if b.source == q.t(a) else {}
            d = vec_add(F, left, right, -1)
            if d:
                E.add(d)
    return E


def symmetric_form(A: FiniteDimAlgebra, trials: int = 32, seed: int = 0) -> SymmetricFormResult:
    """Search for a symmetric linear form whose bilinear form (x, y) -> phi(xy) is non-degenerate."""
    F = A.field
    n = A.dimension
    C = commutator_space(A)
    free = [k for k in range(n) if k not in C.rows]
    codim = len(free)
    # phi(v) = sum lam_k * (v mod C)_k over free coordinates
    resid = [C.reduce(A.unit(k)) for k in range(n)]
    for i in A.quiver.vertices:
        for x in socle(A, i):
            if not C.reduce(x):
                return SymmetricFormResult(
                    False, 0, codim, proved_not_symmetric=True,
                    reason=f"every symmetric form vanishes on soc(e_{i}A)",
                )
    if codim == 0:
        return SymmetricFormResult(False, 0, 0, proved_not_symmetric=True, reason="A = [A, A]")
    # products b_i * b_j via a prefix walk over the basis
    prods = []
    for i in range(n):
        row = {}
        for j, b in enumerate(A.basis):
            if b.word:
                parent = A.basis[j].word[:-1]
                pv = row[A.index(parent)] if parent else row[A.idempotent(b.source)]
                row[j] = A.right_arrow(pv, b.word[-1]) if pv else {}
            else:
                row[j] = {k: c for k, c in A.unit(i).items() if A.basis[k].target == b.source}
        prods.append([row[j] for j in range(n)])

    def attempt(lam: dict) -> dict | None:
        vals = {}
        for k in range(n):
            s = 0
            for j, c in resid[k].items():
                if j in lam:
                    s += c * lam[j]
            s = F.norm(s)
            if s:
                vals[k] = s
        G = [[F.norm(sum(c * vals.get(l, 0) for l, c in prods[i][j].items())) for j in range(n)]
             for i in range(n)]
        return vals if is_nonsingular(F, G) else None

    rng = random.Random(seed)
    sweep = [{k: F.one} for k in free] + [{k: F.one for k in free}]
    count = 0
    for lam in sweep:
        count += 1
        vals = attempt(lam)
        if vals is not None:
            return SymmetricFormResult(True, count, codim, vals)
    for _ in range(trials):
        count += 1
        lam = {k: F.random_element(rng) for k in free}
        vals = attempt(lam)
        if vals is not None:
            return SymmetricFormResult(True, count, codim, vals)
    return SymmetricFormResult(False, count, codim, reason=f"none found in {count} trials")


def check_associativity(A: FiniteDimAlgebra, samples: int = 1000, seed: int = 0) -> int:
    """Number of failing random basis triples (xy)z != x(yz)."""
    rng = random.Random(seed)
    n = A.dimension
    bad = 0
    for _ in range(samples):
        x, y, z = (A.unit(rng.randrange(n)) for _ in range(3))
        if A.multiply(A.multiply(x, y), z) != A.multiply(x, A.multiply(y, z)):
            bad += 1
    return bad


def g_cycle_basis(A: FiniteDimAlgebra, tq) -> list[tuple[str, ...]] | None:
    """A basis of A made of stationary paths and initial segments of g-cycles.

    Returns the paths (as arrow tuples, stationary ones as ``()``) if the
    proper initial subpaths of every B_a, plus the B_a themselves (one per
    vertex), are linearly independent and span A; otherwise None.
    """
    from .presentations import _g_walk

    F = A.field
    paths = []
    seen = set()
    E = Echelon(F)
    for i in A.quiver.vertices:
        E.add(A.unit(A.idempotent(i)))
        paths.append(())
    for a in A.quiver.arrow_ids:
        k = 1
        while True:
            w = _g_walk(tq, a, k)
            v = A.path_vector(w)
            if not v:
                break
            if w not in seen:
                seen.add(w)
                if E.add(v):
                    paths.append(w)
            k += 1
            if k > A.nilpotency + 1:
                break
    if len(E) != A.dimension:
        return None
    return paths

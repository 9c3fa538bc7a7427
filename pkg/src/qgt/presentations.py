"""Path-algebra elements and the relation generators of each algebra family.

Paths are tuples of arrow ids.  A :class:`PathExpr` is a linear combination of
parallel paths with nonzero scalars from a :class:`~qgt.fields.Field`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .errors import ValidationError
from .fields import Field, Q, parse_field
from .quiver import Quiver, TriangulationQuiver, border, validate_quiver


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


def make_path(q: Quiver, arrows) -> Path:
    arrows = tuple(arrows)
    if not arrows:
        raise ValidationError("empty path needs an explicit vertex")
    for a, b in zip(arrows, arrows[1:]):
        if q.t(a) != q.s(b):
            raise ValidationError(f"arrows {a} and {b} do not compose in path {'*'.join(arrows)}")
    return Path(q.s(arrows[0]), q.t(arrows[-1]), arrows)


@dataclass(frozen=True)
class PathExpr:
    """Linear combination of parallel paths, as sorted ``(arrows, coeff)`` pairs."""

    source: str
    target: str
    terms: tuple[tuple[tuple[str, ...], object], ...]

    @classmethod
    def build(cls, q: Quiver, F: Field, pairs) -> "PathExpr":
        acc: dict[tuple[str, ...], object] = {}
        ends = set()
        for coeff, arrows in pairs:
            p = make_path(q, arrows)
            ends.add((p.source, p.target))
            acc[p.arrows] = F.norm(acc.get(p.arrows, 0) + F.norm(coeff))
        if len(ends) > 1:
            raise ValidationError(f"relation mixes non-parallel paths: {sorted(ends)}")
        (src, tgt), = ends
        # canonical ordering: shortest path first reads like "ab - c*A"
        terms = tuple(sorted(((w, c) for w, c in acc.items() if c), key=lambda t: (len(t[0]), t[0])))
        return cls(src, tgt, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def min_length(self) -> int:
        return min(len(w) for w, _ in self.terms)

    def format(self, F: Field) -> str:
        out = []
        for k, (w, c) in enumerate(self.terms):
            c = F.norm(c)
            neg = False
            if F.p is None and c < 0:
                neg, c = True, -c
            path = "*".join(w)
            body = path if c == 1 else f"{F.format(c)}*{path}"
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out) if out else "0"


@dataclass(frozen=True)
class WeightData:
    """Weight m and parameter c per g-orbit representative; border scalars b per vertex."""

    m: dict
    c: dict
    b: dict = dc_field(default_factory=dict)


def make_weights(tq: TriangulationQuiver, F: Field, m=1, c=1, b=None) -> WeightData:
    """Weights from scalars (applied to every orbit) or dicts keyed by any arrow of an orbit."""
    reps = sorted({tq.orbit_rep[a] for a in tq.arrows})

    def per_orbit(value, name):
        if isinstance(value, dict):
            out = {}
            for k, v in value.items():
                if k not in tq.orbit_rep:
                    raise ValidationError(f"{name} key {k!r} is not an arrow")
                out[tq.orbit_rep[k]] = v
            missing = [r for r in reps if r not in out]
            if missing:
                raise ValidationError(f"{name} undefined on g-orbits of {missing}")
            return out
        return {r: value for r in reps}

    mm = {r: int(v) for r, v in per_orbit(m, "m").items()}
    cc = {r: F.parse(v) for r, v in per_orbit(c, "c").items()}
    bb = {}
    if b is not None:
        bvs = border(tq).vertices
        if isinstance(b, dict):
            bb = {str(k): F.parse(v) for k, v in b.items()}
        else:
            bb = {v: F.parse(b) for v in sorted(bvs)}
        bad = set(bb) - set(bvs)
        if bad:
            raise ValidationError(f"border function keys {sorted(bad)} are not border vertices")
    w = WeightData(mm, cc, bb)
    check_weights(tq, w, F)
    return w


def check_weights(tq: TriangulationQuiver, w: WeightData, F: Field):
    for a in tq.arrows:
        r = tq.orbit_rep[a]
        if r not in w.m or r not in w.c:
            raise ValidationError(f"weights undefined on the g-orbit of {a}")
        if w.m[r] < 1:
            raise ValidationError(f"weight of orbit {r} must be positive")
        if w.m[r] * tq.n(a) < 3:
            raise ValidationError(
                f"m*n = {w.m[r] * tq.n(a)} < 3 on the g-orbit of {a} (need m_a n_a >= 3)"
            )
        if F.is_zero(w.c[r]):
            raise ValidationError(f"parameter of orbit {r} must be nonzero")


def _g_walk(tq: TriangulationQuiver, a: str, length: int) -> tuple[str, ...]:
    out = []
    for _ in range(length):
        out.append(a)
        a = tq.g(a)
    return tuple(out)


def a_path(tq: TriangulationQuiver, w: WeightData, a: str) -> Path:
    """The g-path from ``a`` of length m_a n_a - 1."""
    r = tq.orbit_rep[a]
    length = w.m[r] * tq.n(a) - 1
    if length < 2:
        raise ValidationError(f"m*n < 3 on the g-orbit of {a}")
    return make_path(tq.quiver, _g_walk(tq, a, length))


def b_path(tq: TriangulationQuiver, w: WeightData, a: str) -> Path:
    """The full m_a-fold g-cycle from ``a``."""
    r = tq.orbit_rep[a]
    return make_path(tq.quiver, _g_walk(tq, a, w.m[r] * tq.n(a)))


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[PathExpr, ...]
    field: Field = Q
    meta: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def dsl(self) -> str:
        lines = [f"# field: {self.field}"]
        lines += [r.format(self.field) for r in self.relations]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        out = dict(self.field.header())
        qj = self.quiver.to_json(self.meta.get("tq").f if self.meta.get("tq") else None)
        out["quiver"] = qj
        out["relations"] = [r.format(self.field) for r in self.relations]
        fam = {k: v for k, v in self.meta.items() if k != "tq"}
        if fam:
            out["meta"] = _jsonable(fam, self.field)
        return out


def _jsonable(obj, F):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, F) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, F) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int) and not isinstance(obj, bool):
        return obj
    return F.format(obj)


def _meta_weights(w: WeightData, F: Field) -> dict:
    return {"m": dict(w.m), "c": {k: F.format(v) for k, v in w.c.items()},
            "b": {k: F.format(v) for k, v in w.b.items()}}


def weighted_relations(tq: TriangulationQuiver, w: WeightData, F: Field = Q) -> Presentation:
    """Generators a f(a) - c_{bar a} A_{bar a} and b f(b) g(f(b)), arrows in id order."""
    if any(not F.is_zero(x) for x in w.b.values()):
        raise ValidationError("weighted_relations takes no border function; use deformed_relations")
    check_weights(tq, w, F)
    q = tq.quiver
    rels = []
    for a in tq.arrows:
        ab = tq.bar(a)
        rels.append(PathExpr.build(q, F, [
            (1, (a, tq.f(a))),
            (-w.c[tq.orbit_rep[ab]], a_path(tq, w, ab).arrows),
        ]))
    for b in tq.arrows:
        fb = tq.f(b)
        rels.append(PathExpr.build(q, F, [(1, (b, fb, tq.g(fb)))]))
    meta = {"family": "weighted", "tq": tq, "weights": _meta_weights(w, F)}
    return Presentation(q, tuple(rels), F, meta)


def deformed_relations(tq: TriangulationQuiver, w: WeightData, F: Field = Q) -> Presentation:
    """Socle-deformed generators: border loops get the extra term b_{s(a)} B_{bar a}."""
    bd = border(tq)
    if not bd.vertices:
        raise ValidationError("socle deformation needs a nonempty border")
    bad = set(w.b) - set(bd.vertices)
    if bad:
        raise ValidationError(f"border function keys {sorted(bad)} are not border vertices")
    check_weights(tq, w, F)
    q = tq.quiver
    loops = set(bd.loops.values())
    rels = []
    for a in tq.arrows:
        ab = tq.bar(a)
        pairs = [(1, (a, tq.f(a))), (-w.c[tq.orbit_rep[ab]], a_path(tq, w, ab).arrows)]
        if a in loops:
            bval = w.b.get(tq.s(a), 0)
            pairs.append((-bval, b_path(tq, w, ab).arrows))
        rels.append(PathExpr.build(q, F, pairs))
    for b in tq.arrows:
        fb = tq.f(b)
        rels.append(PathExpr.build(q, F, [(1, (b, fb, tq.g(fb)))]))
    meta = {"family": "deformed", "tq": tq, "weights": _meta_weights(w, F)}
    return Presentation(q, tuple(rels), F, meta)


# --- tetrahedral algebras ------------------------------------------------

_TETRA_COMM = [
    # (lhs, rhs, lambda-correction f-cycle or None)
    (("gamma", "delta"), ("beta", "epsilon"), ("beta", "rho", "omega")),
    (("delta", "eta"), ("nu", "omega"), None),
    (("eta", "gamma"), ("xi", "alpha"), None),
    (("nu", "mu"), ("delta", "xi"), None),
    (("rho", "omega"), ("epsilon", "eta"), ("epsilon", "xi", "sigma")),
    (("omega", "beta"), ("mu", "sigma"), None),
    (("beta", "rho"), ("gamma", "nu"), None),
    (("mu", "alpha"), ("omega", "gamma"), None),
    (("xi", "sigma"), ("eta", "beta"), ("eta", "gamma", "delta")),
    (("sigma", "epsilon"), ("alpha", "delta"), None),
    (("epsilon", "xi"), ("rho", "mu"), None),
    (("alpha", "nu"), ("sigma", "rho"), None),
]


def tetrahedral_presentation(m: int, lam, F: Field = Q) -> Presentation:
    """The algebra of degree ``m`` with parameter ``lam`` on the tetrahedral quiver."""
    from .families import tetrahedral_quiver

    if int(m) < 1:
        raise ValidationError("tetrahedral degree m must be >= 1")
    m = int(m)
    lam = F.parse(lam)
    tq = tetrahedral_quiver()
    q = tq.quiver
    rels = []
    for lhs, rhs, cyc in _TETRA_COMM:
        pairs = [(1, lhs), (-1, rhs)]
        if cyc is not None:
            pairs.append((-lam, cyc * (m - 1) + rhs))
        rels.append(PathExpr.build(q, F, pairs))
    for th in tq.arrows:
        f1 = tq.f(th)
        f2 = tq.f(f1)
        word = (th, f1, f2) * (m - 1) + (th, f1, tq.g(f1))
        rels.append(PathExpr.build(q, F, [(1, word)]))
    meta = {"family": "tetrahedral", "tq": tq, "m": m, "lambda": F.format(lam)}
    return Presentation(q, tuple(rels), F, meta)


# --- relation DSL ----------------------------------------------------------

_NUM = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _parse_relation(q: Quiver, F: Field, line: str, lineno: int) -> PathExpr:
    # split into signed terms; arrow ids must not contain + - * # or whitespace
    pieces = []
    sign, buf, start = 1, "", 0
    for col, ch in enumerate(line):
        if ch in "+-" and buf.strip() and not buf.rstrip().endswith("*"):
            pieces.append((sign, buf, start))
            sign, buf, start = (1 if ch == "+" else -1), "", col + 1
        elif ch in "+-" and not buf.strip():
            sign = sign * (1 if ch == "+" else -1)
            start = col + 1
        else:
            buf += ch
    if not buf.strip():
        raise ValidationError(f"line {lineno}, col {len(line) + 1}: dangling operator")
    pieces.append((sign, buf, start))
    pairs = []
    for sgn, text, col in pieces:
        tokens = [t for t in re.split(r"[\s*]+", text.strip()) if t]
        coeff = F.one
        if tokens and _NUM.match(tokens[0]):
            coeff = F.parse(tokens[0])
            tokens = tokens[1:]
        if not tokens:
            raise ValidationError(f"line {lineno}, col {col + 1}: term has no path")
        for tok in tokens:
            if tok not in q.arrow_map:
                raise ValidationError(f"line {lineno}, col {col + 1}: unknown arrow {tok!r}")
        if len(tokens) < 2:
            raise ValidationError(
                f"line {lineno}, col {col + 1}: path {'*'.join(tokens)} has length < 2"
            )
        try:
            make_path(q, tokens)
        except ValidationError as exc:
            raise ValidationError(f"line {lineno}, col {col + 1}: {exc}") from None
        pairs.append((sgn * coeff, tuple(tokens)))
    try:
        return PathExpr.build(q, F, pairs)
    except ValidationError as exc:
        raise ValidationError(f"line {lineno}: {exc}") from None


def parse_relations(q: Quiver, text: str, F: Field = Q) -> list[PathExpr]:
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        r = _parse_relation(q, F, line, lineno)
        if not r.is_zero:
            rels.append(r)
    return rels


def parse_presentation(text: str, quiver: Quiver, F: Field = Q) -> Presentation:
    """Parse one relation per line over ``quiver``.

    A ``# field: GF(5)`` style header comment overrides ``F``.
    """
    for raw in text.splitlines():
        m = re.match(r"^\s*#\s*field\s*:\s*(\S+)", raw)
        if m:
            F = parse_field(m.group(1))
            break
    return Presentation(quiver, tuple(parse_relations(quiver, text, F)), F, {})


def presentation_from_json(data: dict) -> Presentation:
    from .quiver import triangulation_from_json

    F = parse_field(data)
    qdata = data["quiver"]
    meta = dict(data.get("meta", {}))
    if "f" in qdata:
        tq = triangulation_from_json(qdata)
        q = tq.quiver
        meta["tq"] = tq
    else:
        q = validate_quiver(qdata.get("vertices", []), qdata.get("arrows", []))
    rels = data.get("relations", [])
    if isinstance(rels, list):
        rels = "\n".join(rels)
    return Presentation(q, tuple(parse_relations(q, rels, F)), F, meta)

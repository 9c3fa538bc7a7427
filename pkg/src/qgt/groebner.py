"""Noncommutative Groebner bases in a path algebra.

Words are tuples of arrow indices.  The monomial order is degree-lexicographic:
longer words are larger, equal lengths compare lexicographically by index.
A basis is kept interreduced on leading words, so only overlap ambiguities
need resolving.  Every element of an ideal inside the arrow ideal squared
keeps all its words of length >= 2.
"""

from __future__ import annotations

import heapq
import itertools
import logging

from .errors import CapExceeded
from .fields import Field

log = logging.getLogger(__name__)

Word = tuple
Poly = dict  # word -> nonzero scalar


def _key(w: Word):
    return (len(w), w)


def leading(p: Poly) -> Word:
    return max(p, key=_key)


class RewriteSystem:
    """Rules ``lead -> rhs`` with rhs a polynomial of smaller words."""

    def __init__(self, F: Field):
        self.F = F
        self.rules: dict[Word, Poly] = {}
        self._lengths: list[int] = []

    def _refresh(self):
        self._lengths = sorted({len(w) for w in self.rules})

    @property
    def lengths(self):
        return self._lengths

    def find(self, w: Word):
        """First (start, length) of a leading word inside ``w``, or None."""
        for start in range(len(w)):
            for ln in self._lengths:
                if start + ln > len(w):
                    break
                if w[start:start + ln] in self.rules:
                    return start, ln
        return None

    def has_suffix_lead(self, w: Word) -> bool:
        for ln in self._lengths:
            if ln > len(w):
                break
            if w[-ln:] in self.rules:
                return True
        return False

    def reduce(self, p: Poly) -> Poly:
        F = self.F
        work = {w: c for w, c in p.items() if F.norm(c)}
        heap = [(-len(w), tuple(-x for x in w), w) for w in work]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None or not F.norm(c):
                continue
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            s, ln = hit
            pre, post = w[:s], w[s + ln:]
            for u, d in self.rules[w[s:s + ln]].items():
                nw = pre + u + post
                x = F.norm(work.get(nw, 0) + c * d)
                if nw not in work:
                    heapq.heappush(heap, (-len(nw), tuple(-y for y in nw), nw))
                if x:
                    work[nw] = x
                else:
                    work[nw] = 0
        return out


def _mul_word(p: Poly, left: Word = (), right: Word = ()) -> Poly:
    return {left + w + right: c for w, c in p.items()}


def _add(F: Field, p: Poly, q: Poly, c=1) -> Poly:
    out = dict(p)
    for w, a in q.items():
        x = F.norm(out.get(w, 0) + c * a)
        if x:
            out[w] = x
        else:
            out.pop(w, None)
    return out


def groebner_basis(F: Field, polys, cap: int = 64) -> RewriteSystem:
    """Complete ``polys`` to a reduced rewrite system.

    Ambiguities are resolved in order of word length; one longer than ``cap``
    raises :class:`CapExceeded`.
    """
    rs = RewriteSystem(F)
    counter = itertools.count()
    queue = []
    for p in polys:
        p = {tuple(w): F.norm(c) for w, c in p.items() if F.norm(c)}
        if p:
            heapq.heappush(queue, (max(len(w) for w in p), next(counter), p))
    processed = 0
    while queue:
        deg, _, p = heapq.heappop(queue)
        if deg > cap:
            raise CapExceeded(f"overlap of length {deg} exceeds the cap {cap}")
        p = rs.reduce(p)
        processed += 1
        if not p:
            continue
        lead = leading(p)
        inv = F.inv(p[lead])
        rhs = {w: F.norm(-c * inv) for w, c in p.items() if w != lead}
        # interreduce: rules whose lead contains the new lead go back to the queue
        for old in [w for w in rs.rules if _contains(w, lead)]:
            old_rhs = rs.rules.pop(old)
            heapq.heappush(queue, (len(old), next(counter), _add(F, {old: F.one}, old_rhs, -1)))
        rs.rules[lead] = rhs
        rs._refresh()
        for other in list(rs.rules):
            for a, b in ((lead, other), (other, lead)):
                for k in range(1, min(len(a), len(b))):
                    if a == b and k == len(a):
                        continue
                    if a[-k:] == b[:k]:
                        u, v = a[:-k], b[k:]
                        # a.v = u.b ; S = -rhs_a.v + u.rhs_b
                        s = _add(F, _mul_word(rs.rules[b], left=u), _mul_word(rs.rules[a], right=v), -1)
                        if s:
                            heapq.heappush(queue, (len(a) + len(v), next(counter), s))
    # final interreduction of right-hand sides
    for w in list(rs.rules):
        rs.rules[w] = rs.reduce(rs.rules[w])
    log.debug("groebner basis: %d rules after %d reductions", len(rs.rules), processed)
    return rs


def _contains(w: Word, sub: Word) -> bool:
    n = len(sub)
    return any(w[i:i + n] == sub for i in range(len(w) - n + 1))

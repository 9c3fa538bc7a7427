"""Exact sparse linear algebra over a :class:`~qgt.fields.Field`.

Vectors are ``dict[int, scalar]`` with no stored zeros.  :class:`Echelon`
maintains a row-echelon basis of a growing subspace and can record how each
basis row was obtained from the inserted vectors, which gives kernels and
coordinates without a separate pass.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import lcm

import numpy as np

from .fields import Field

Vec = dict


def vec_add(F: Field, u: Vec, v: Vec, c=1) -> Vec:
    """u + c*v."""
    out = dict(u)
    for k, a in v.items():
        x = F.norm(out.get(k, 0) + c * a)
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def vec_scale(F: Field, v: Vec, c) -> Vec:
    c = F.norm(c)
    if not c:
        return {}
    return {k: F.norm(a * c) for k, a in v.items()}


class Echelon:
    """Incremental echelon basis; pivot of a row is its smallest index.

    With ``track=True`` every row carries the combination of inserted vectors
    (numbered in insertion order) that produced it.
    """

    def __init__(self, F: Field, track: bool = False):
        self.F = F
        self.track = track
        self.rows: dict[int, Vec] = {}
        self.combos: dict[int, Vec] = {}
        self.kernel: list[Vec] = []
        self._count = 0

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v: Vec, combo: Vec | None):
        F = self.F
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in self.rows:
                continue
            for j, a in self.rows[k].items():
                x = F.norm(v.get(j, 0) - c * a)
                if x:
                    if j not in v:
                        heapq.heappush(heap, j)
                    v[j] = x
                else:
                    v.pop(j, None)
            if combo is not None:
                for j, a in self.combos[k].items():
                    x = F.norm(combo.get(j, 0) - c * a)
                    if x:
                        combo[j] = x
                    else:
                        combo.pop(j, None)
        return v, combo

    def reduce(self, v: Vec) -> Vec:
        return self._reduce(v, None)[0]

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec) -> bool:
        """Insert ``v``; returns True when it enlarged the span."""
        idx = self._count
        self._count += 1
        combo = {idx: self.F.one} if self.track else None
        r, combo = self._reduce(v, combo)
        if not r:
            if self.track:
                self.kernel.append(combo)
            return False
        p = min(r)
        inv = self.F.inv(r[p])
        self.rows[p] = vec_scale(self.F, r, inv)
        if self.track:
            self.combos[p] = vec_scale(self.F, combo, inv)
        return True

    def coordinates(self, v: Vec) -> Vec | None:
        """Coefficients over inserted vectors summing to ``v``, or None."""
        if not self.track:
            raise ValueError("coordinates need a tracking Echelon")
        r, combo = self._reduce(v, {})
        if r:
            return None
        return {k: self.F.norm(-a) for k, a in combo.items() if self.F.norm(-a)}

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def rank(F: Field, vectors) -> int:
    E = Echelon(F)
    for v in vectors:
        E.add(v)
    return len(E)


def kernel(F: Field, images) -> list[Vec]:
    """Basis of {x : sum_i x_i images[i] = 0}, as vectors over input indices."""
    E = Echelon(F, track=True)
    for v in images:
        E.add(v)
    return E.kernel


def span_basis(F: Field, vectors) -> list[Vec]:
    E = Echelon(F)
    for v in vectors:
        E.add(v)
    return E.basis()


def complement_units(F: Field, subspace: list[Vec], dim: int) -> list[int]:
    """Greedy lexicographically-first unit vectors completing a basis of ``subspace``."""
    E = Echelon(F)
    for v in subspace:
        E.add(v)
    chosen = []
    for k in range(dim):
        if len(E) == dim:
            break
        if E.add({k: F.one}):
            chosen.append(k)
    return chosen


def det_int(M: list[list[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det_mod_p(M, p: int) -> int:
    """Determinant modulo a prime; vectorised elimination when ``p < 2**31``."""
    if p >= 2**31:  # int64 products would overflow
        return det_int([[int(x) % p for x in row] for row in M]) % p
    A = np.array(M, dtype=np.int64) % p
    n = A.shape[0]
    det = 1
    for k in range(n):
        nz = np.nonzero(A[k:, k])[0]
        if nz.size == 0:
            return 0
        r = k + int(nz[0])
        if r != k:
            A[[k, r]] = A[[r, k]]
            det = -det
        piv = int(A[k, k])
        det = (det * piv) % p
        inv = pow(piv, -1, p)
        A[k, k:] = (A[k, k:] * inv) % p
        col = A[k + 1 :, k].copy()
        if col.any():
            A[k + 1 :, k:] = (A[k + 1 :, k:] - np.outer(col, A[k, k:]) % p) % p
    return det % p


_BIG_PRIME = 2147483629


def is_nonsingular(F: Field, M: list[list]) -> bool:
    """Exact nonsingularity test; over Q a nonzero residue is a certificate.

    Over Q the matrix is scaled to integers and reduced modulo a large prime;
    a zero residue is re-checked exactly with Bareiss.
    """
    n = len(M)
    if n == 0:
        return True
    if F.p is not None:
        return det_mod_p([[F.norm(x) for x in row] for row in M], F.p) != 0
    den = 1
    for row in M:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in row] for row in M]
    if det_mod_p([[x % _BIG_PRIME for x in row] for row in ints], _BIG_PRIME):
        return True
    return det_int(ints) != 0

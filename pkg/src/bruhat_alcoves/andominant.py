"""Dominant-chamber Bruhat machinery for affine type A of any rank.

The Bruhat order between dominant elements is detected by dominance of the
alcove-vertex images: ``x <= y`` iff ``x(-w_i) <= y(-w_i)`` in dominance
order for every vertex class i.  A ``DominantContext`` caches integer
vertex data for a ball, so the criterion, parallelotope membership,
dominant-interval reconstruction, wall index sets and translation
isomorphisms all run on plain integer comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coxeter import Ball


class DominantError(Exception):
    pass


# -- dominance order (public, with the independent polytope cross-check) --------


def dominance_leq(spec, lam: Sequence[Fraction], mu: Sequence[Fraction]) -> bool:
    """lam <= mu in dominance order: mu - lam has nonnegative root coordinates.

    Both arguments must be dominant.  The cone test is asserted equivalent
    to membership of lam in the weight polytope of mu, via majorization in
    the symmetric-group model.
    """
    n = spec.rank
    for v in (lam, mu):
        for i in range(n):
            if sum(spec.cartan[i][j] * v[j] for j in range(n)) < 0:
                raise DominantError("dominance order compares dominant points only")
    cone = all(mu[j] - lam[j] >= 0 for j in range(n))
    major = _majorizes(_to_sym_model(n, mu), _to_sym_model(n, lam))
    if cone != major:
        raise DominantError("cone test disagrees with weight-polytope membership")
    return cone


def _to_sym_model(n: int, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Realize sum-zero coordinates in R^{n+1} with alpha_i = e_i - e_{i+1}."""
    out = []
    prev = 0
    for i in range(n):
        out.append(v[i] - prev)
        prev = v[i]
    out.append(-prev)
    return tuple(out)


def _majorizes(big, small) -> bool:
    a = sorted(big, reverse=True)
    b = sorted(small, reverse=True)
    ta = tb = 0
    for k in range(len(a) - 1):
        ta += a[k]
        tb += b[k]
        if tb > ta:
            return False
    return sum(a) == sum(b)


# -- cached integer context -------------------------------------------------------


class DominantContext:
    """Integer vertex data for the dominant-chamber criteria over a ball."""

    def __init__(self, ball: Ball):
        if ball.spec.family != "A":
            raise DominantError("dominant-chamber machinery is implemented for type A")
        self.ball = ball
        spec = ball.spec
        n = spec.rank
        self.rank = n
        self.pairing_rows = [tuple(spec.cartan[i][j] for j in range(n)) for i in range(n)]
        self.vertices: List[Tuple[Tuple[int, ...], ...]] = [
            spec.alcove_vertices(e) for e in ball.elts
        ]
        self.dominant_flags = [
            all(
                spec.simple_pairing(k, ball.cens[i], spec.cen_scale) > 0
                for k in range(n)
            )
            for i in range(ball.size)
        ]
        self.dominant = [i for i in range(ball.size) if self.dominant_flags[i]]
        self._interval_cache: Dict[Tuple[int, int], Tuple[int, ...]] = {}

    # vertex images of element i, scaled integers
    def vertex_pairing_zero(self, z: int, wall: int) -> bool:
        row = self.pairing_rows[wall]
        for v in self.vertices[z]:
            if sum(row[j] * v[j] for j in range(self.rank)) == 0:
                return True
        return False

    def leq_dominant(self, a: int, b: int) -> bool:
        """Vertexwise dominance criterion; a, b must be dominant."""
        if not (self.dominant_flags[a] and self.dominant_flags[b]):
            raise DominantError("criterion applies to dominant elements")
        va, vb = self.vertices[a], self.vertices[b]
        n = self.rank
        for k in range(n + 1):
            pa, pb = va[k], vb[k]
            for j in range(n):
                if pb[j] < pa[j]:
                    return False
        return True

    def par_member(self, x: int, y: int, z: int, i: int) -> bool:
        """z(-w_i) in Par^i_{x,y} intersected with the closed chamber."""
        n = self.rank
        vx, vy, vz = self.vertices[x][i], self.vertices[y][i], self.vertices[z][i]
        if any(vz[j] < vx[j] or vy[j] < vz[j] for j in range(n)):
            return False
        row_ok = all(
            sum(self.pairing_rows[k][j] * vz[j] for j in range(n)) >= 0
            for k in range(n)
        )
        return row_ok

    def dominant_interval(self, x: int, y: int) -> Tuple[int, ...]:
        """[x, y] intersected with the dominant elements, via the criterion."""
        key = (x, y)
        cached = self._interval_cache.get(key)
        if cached is not None:
            return cached
        lx, ly = self.ball.lengths[x], self.ball.lengths[y]
        out = []
        for z in self.dominant:
            if not (lx <= self.ball.lengths[z] <= ly):
                continue
            if all(self.par_member(x, y, z, i) for i in range(self.rank + 1)):
                out.append(z)
        result = tuple(out)
        self._interval_cache[key] = result
        return result

    def wall_index_set(self, x: int, y: int) -> Tuple[int, ...]:
        """Wall indices touched by some dominant alcove of [x, y]."""
        touched = set()
        for z in self.dominant_interval(x, y):
            for i in range(self.rank):
                if i + 1 in touched:
                    continue
                if self.vertex_pairing_zero(z, i):
                    touched.add(i + 1)
        return tuple(sorted(touched))

    def admissible(self, x: int, y: int, lam: Sequence[int]) -> bool:
        walls = set(self.wall_index_set(x, y))
        for i in range(self.rank):
            p = sum(self.pairing_rows[i][j] * lam[j] for j in range(self.rank))
            if p < 0 or (p > 0 and (i + 1) in walls):
                return False
        return True

    def length_shift(self, lam: Sequence[int]) -> int:
        """Length increase of a dominant element under translation by lam."""
        total = 0
        for root in self.ball.spec.pos_roots:
            total += sum(
                root[i] * self.pairing_rows[i][j] * lam[j]
                for i in range(self.rank)
                for j in range(self.rank)
            )
        return total

    def translate_index(self, z: int, lam: Sequence[int]) -> int:
        e = self.ball.elts[z]
        n = self.rank
        moved = e[: n * n] + tuple(e[n * n + k] + lam[k] for k in range(n))
        return self.ball.index_of(moved)

    def translate_iso(self, x: int, y: int, lam: Sequence[int]) -> "TranslateReport":
        """Verify z -> z + lam as a poset isomorphism of dominant intervals."""
        if not self.admissible(x, y, lam):
            raise DominantError("inadmissible translation weight %r" % (lam,))
        src = self.dominant_interval(x, y)
        x2, y2 = self.translate_index(x, lam), self.translate_index(y, lam)
        tgt = self.dominant_interval(x2, y2)
        image = [self.translate_index(z, lam) for z in src]
        bij = sorted(image) == sorted(tgt)
        iso = False
        if bij:
            iso = True
            pos = {z: k for k, z in enumerate(src)}
            for a in src:
                for b in src:
                    if self.ball.lengths[a] >= self.ball.lengths[b]:
                        continue
                    if self.leq_dominant(a, b) != self.leq_dominant(
                        image[pos[a]], image[pos[b]]
                    ):
                        iso = False
                        break
                if not iso:
                    break
        return TranslateReport(True, bij, iso, list(src), list(tgt))


@dataclass
class TranslateReport:
    admissible: bool
    is_bijection: bool
    is_poset_iso: bool
    source: List[int]
    target: List[int]


# -- thin functional wrappers ------------------------------------------------------


def vertex_images(ball: Ball, i: int):
    spec = ball.spec
    scaled = spec.alcove_vertices(ball.elts[i])
    return tuple(tuple(Fraction(c, spec.vertex_scale) for c in v) for v in scaled)


def is_dominant_element(ball: Ball, i: int) -> bool:
    spec = ball.spec
    return all(
        spec.simple_pairing(k, ball.cens[i], spec.cen_scale) > 0
        for k in range(spec.rank)
    )


def bruhat_leq_dominant(ball: Ball, a: int, b: int) -> bool:
    return DominantContext(ball).leq_dominant(a, b)


def dominant_interval(ball: Ball, x: int, y: int) -> List[int]:
    return list(DominantContext(ball).dominant_interval(x, y))

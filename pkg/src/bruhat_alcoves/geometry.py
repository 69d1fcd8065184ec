"""Exact planar geometry over the scaled A2 weight lattice.

A point ``Pt(u, v)`` stands for ``(u/6) w1 + (v/6) w2`` where ``w1, w2``
are the fundamental weights of the root system A2.  The factor 1/6 makes
alcove centers, alcove vertices and edge midpoints all integral, so every
geometric predicate in this package reduces to integer (or ``Fraction``)
arithmetic.  No floating point is used anywhere.

Euclidean data in scaled coordinates (Gram matrix of the weight basis is
``[[2/3, 1/3], [1/3, 2/3]]``):

* ``(alpha1, p) = u/6``, ``(alpha2, p) = v/6``, ``(rho, p) = (u+v)/6``
* ``dist(a, b)^2 = (du^2 + du*dv + dv^2) / 12`` in the normalization where
  an alcove has height 3/2 and vertex-to-center distance 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


class GeometryError(Exception):
    pass


class Pt(tuple):
    """Immutable point in scaled weight coordinates."""

    __slots__ = ()

    def __new__(cls, u, v):
        return tuple.__new__(cls, (u, v))

    @property
    def u(self):
        return self[0]

    @property
    def v(self):
        return self[1]

    def __add__(self, other):
        return Pt(self[0] + other[0], self[1] + other[1])

    def __sub__(self, other):
        return Pt(self[0] - other[0], self[1] - other[1])

    def __neg__(self):
        return Pt(-self[0], -self[1])

    def scale(self, c):
        return Pt(c * self[0], c * self[1])

    def swap(self):
        """The flip exchanging the two weight coordinates (sigma)."""
        return Pt(self[1], self[0])

    def cross(self, other):
        return self[0] * other[1] - self[1] * other[0]

    def is_lattice(self):
        return isinstance(self[0], int) and isinstance(self[1], int)

    def __repr__(self):
        return "Pt(%s, %s)" % (self[0], self[1])


ORIGIN = Pt(0, 0)

# Scaled coordinates of the basic vectors of the A2 root system.
ALPHA1 = Pt(12, -6)
ALPHA2 = Pt(-6, 12)
RHO = Pt(6, 6)
W1 = Pt(6, 0)
W2 = Pt(0, 6)

_ROOTS = {"alpha1": ALPHA1, "alpha2": ALPHA2, "rho": RHO}


def pairing(root: str, p: Pt) -> Fraction:
    """Exact value of (root, p) for root in {alpha1, alpha2, rho}."""
    if root == "alpha1":
        return Fraction(p[0], 6)
    if root == "alpha2":
        return Fraction(p[1], 6)
    if root == "rho":
        return Fraction(p[0] + p[1], 6)
    raise GeometryError("unknown root %r" % (root,))


def pair6_alpha1(p: Pt):
    """6*(alpha1, p); integer for lattice points."""
    return p[0]


def pair6_alpha2(p: Pt):
    return p[1]


def pair6_rho(p: Pt):
    return p[0] + p[1]


def pair18_w1(p: Pt):
    """18*(w1, p)."""
    return 2 * p[0] + p[1]


def pair18_w2(p: Pt):
    return p[0] + 2 * p[1]


def pair6_zeta(p: Pt):
    """6*(alpha1 - alpha2, p); normal of the rho direction."""
    return p[0] - p[1]


def dist_sq(a: Pt, b: Pt) -> Fraction:
    """Squared normalized distance; rational, exact."""
    du, dv = a[0] - b[0], a[1] - b[1]
    return Fraction(du * du + du * dv + dv * dv, 12)


def rot60(p: Pt, center: Pt = ORIGIN) -> Pt:
    """Rotation by +60 degrees about a point; integer on scaled lattice."""
    du, dv = p[0] - center[0], p[1] - center[1]
    return Pt(center[0] - dv, center[1] + du + dv)


def rot120(p: Pt, center: Pt = ORIGIN) -> Pt:
    du, dv = p[0] - center[0], p[1] - center[1]
    return Pt(center[0] - du - dv, center[1] + du)


def rot240(p: Pt, center: Pt = ORIGIN) -> Pt:
    du, dv = p[0] - center[0], p[1] - center[1]
    return Pt(center[0] + dv, center[1] - du - dv)


def _solve2(d1: Pt, d2: Pt, target: Pt):
    """Solve a*d1 + b*d2 = target exactly; None if singular."""
    det = d1.cross(d2)
    if det == 0:
        return None
    a = Fraction(target.cross(d2), det)
    b = Fraction(d1.cross(target), det)
    return a, b


def cone_member(p: Pt, apex: Pt, d1: Pt, d2: Pt, strict: bool = False) -> bool:
    """Is p in apex + cone(d1, d2)?  Exact; degenerate rays allowed."""
    diff = p - apex
    sol = _solve2(d1, d2, diff)
    if sol is None:
        # d1, d2 parallel: membership in the ray(s) they span.
        for d in (d1, d2):
            if d == ORIGIN:
                continue
            if diff.cross(d) == 0:
                t = Fraction(diff[0], d[0]) if d[0] else Fraction(diff[1], d[1])
                if t > 0 or (t == 0 and not strict):
                    return True
        return diff == ORIGIN and not strict
    a, b = sol
    if strict:
        return a > 0 and b > 0
    return a >= 0 and b >= 0


class Polygon(tuple):
    """Convex polygon as a CCW vertex tuple; may be a segment, point or empty."""

    __slots__ = ()

    def __new__(cls, vertices: Iterable[Pt] = ()):
        return tuple.__new__(cls, tuple(vertices))

    @property
    def vertices(self) -> Tuple[Pt, ...]:
        return tuple(self)

    def is_empty(self) -> bool:
        return len(self) == 0

    def is_degenerate(self) -> bool:
        return len(self) < 3

    def translate(self, vec: Pt) -> "Polygon":
        return Polygon(p + vec for p in self)

    def apply(self, fn) -> "Polygon":
        return hull(fn(p) for p in self)

    def __repr__(self):
        return "Polygon(%s)" % (list(self),)


def _on_segment(a: Pt, b: Pt, p: Pt) -> bool:
    if (p - a).cross(b - a) != 0:
        return False
    dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
    if dot < 0:
        return False
    len2 = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    return dot <= len2


def hull(points: Iterable[Pt]) -> Polygon:
    """Convex hull (Andrew's monotone chain), minimal CCW vertex list."""
    pts = sorted(set(points))
    if not pts:
        return Polygon()
    if len(pts) == 1:
        return Polygon(pts)

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and (Pt(*out[-1]) - Pt(*out[-2])).cross(Pt(*p) - Pt(*out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2:
        # all points collinear: keep the two extremes
        return Polygon([Pt(*pts[0]), Pt(*pts[-1])])
    return Polygon(Pt(*p) for p in verts)


def member(poly: Polygon, p: Pt, strict: bool = False) -> bool:
    """Exact membership test; strict means interior."""
    n = len(poly)
    if n == 0:
        return False
    if n == 1:
        return not strict and p == poly[0]
    if n == 2:
        return not strict and _on_segment(poly[0], poly[1], p)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        c = (b - a).cross(p - a)
        if c < 0 or (strict and c == 0):
            return False
    return True


def clip_halfplane(poly: Polygon, a, b, c) -> Polygon:
    """Intersect with the closed half-plane a*u + b*v >= c."""

    def val(p):
        return a * p[0] + b * p[1] - c

    n = len(poly)
    if n == 0:
        return poly
    if n == 1:
        return poly if val(poly[0]) >= 0 else Polygon()
    if n == 2:
        p0, p1 = poly
        v0, v1 = val(p0), val(p1)
        if v0 >= 0 and v1 >= 0:
            return poly
        if v0 < 0 and v1 < 0:
            return Polygon()
        t = Fraction(v0, v0 - v1)
        cut = Pt(p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))
        kept = p0 if v0 >= 0 else p1
        return hull([kept, cut])
    out = []
    for i in range(n):
        p0, p1 = poly[i], poly[(i + 1) % n]
        v0, v1 = val(p0), val(p1)
        if v0 >= 0:
            out.append(p0)
        if (v0 < 0 < v1) or (v1 < 0 < v0):
            t = Fraction(v0, v0 - v1)
            out.append(Pt(p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])))
    return hull(out)


def _normalize_cycle(verts: Sequence[Pt]) -> Tuple[Pt, ...]:
    """Vertex cycle rotated to start at the lexicographic minimum."""
    if not verts:
        return ()
    i = min(range(len(verts)), key=lambda k: verts[k])
    return tuple(verts[i:]) + tuple(verts[:i])


def _canonical_cycle(verts: Sequence[Pt]) -> Tuple[Pt, ...]:
    # degenerate polygons have no orientation; sort them instead
    if len(verts) < 3:
        return tuple(sorted(verts))
    return _normalize_cycle(hull(verts).vertices)


def _is_weight(p: Pt) -> bool:
    return p[0] % 6 == 0 and p[1] % 6 == 0


def congruent_mod_flip(P: Polygon, Q: Polygon) -> Optional[Tuple[str, Pt]]:
    """Find (g, mu) with g in {id, sigma}, mu a weight, g(P) + mu = Q.

    The only congruences arising between interval polygons of isomorphic
    intervals are translations by lattice weights and the coordinate flip
    composed with such translations; a congruence through a non-lattice
    translation relates polygons of genuinely different intervals, so it
    does not count.  Returns None when no admissible pair exists.
    """
    if len(P) != len(Q):
        return None
    if len(P) == 0:
        return "id", ORIGIN
    qq = _canonical_cycle(list(Q))
    for g, image in (("id", list(P)), ("sigma", [p.swap() for p in P])):
        pp = _canonical_cycle(image)
        if len(pp) != len(qq):
            continue
        mu = qq[0] - pp[0]
        if _is_weight(mu) and all(pp[k] + mu == qq[k] for k in range(len(pp))):
            return g, mu
    return None

"""Closed Kazhdan-Lusztig formulas for dominant pairs in A2~.

Two closed families (upper endpoint of theta or theta-s type) plus the
two-crown formula for intervals of length four.  Everything is validated
against the recursive computation in ``coxeter`` by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import a2
from .geometry import member
from .poly import ONE, QPoly, geometric


class KlError(Exception):
    pass


@dataclass
class KlResult:
    poly: QPoly
    provenance: str  # closed-theta | closed-theta-s | crown | oracle


def _max_rho_drop(x: a2.A2Elt, m: int, n: int) -> Optional[int]:
    """max j >= 0 with x <= theta(m-j, n-j), or None when no j works."""
    best = None
    j = 0
    while m - j >= 0 and n - j >= 0:
        if a2.leq_geom(x, a2.theta(m - j, n - j)):
            best = j
        j += 1
    return best


def kl_closed_theta(x: a2.A2Elt, y: a2.A2Elt) -> QPoly:
    """P_{x, theta(m,n)} = 1 + q + ... + q^k for dominant x <= y."""
    nf = y.normal_form
    if not (nf.kind == "theta" and y.is_dominant()):
        raise KlError("upper endpoint must be a dominant theta element")
    if not (x.is_dominant() or x.is_identity()) or not a2.leq_geom(x, y):
        raise KlError("lower endpoint must be dominant and below y")
    m, n = nf.params
    k = _max_rho_drop(x, m, n)
    if k is None:
        raise KlError("no rho-drop found although x <= y")
    return geometric(k)


def kl_closed_theta_s(x: a2.A2Elt, y: a2.A2Elt) -> QPoly:
    """P_{x, theta_s(m,n)} = -1 + sum q^i (i<=t) + sum q^i (i<=r)."""
    nf = y.normal_form
    if not (nf.kind == "theta_s" and y.is_dominant()):
        raise KlError("upper endpoint must be a dominant theta-s element")
    if not (x.is_dominant() or x.is_identity()) or not a2.leq_geom(x, y):
        raise KlError("lower endpoint must be dominant and below y")
    m, n = nf.params
    # t counts the chain of rho-drops below the coatom theta(m-1, n); the
    # count is offset by one relative to the theta case (j = 0 contributes 1)
    t = _max_rho_drop(x, m - 1, n) if m >= 1 else None
    r = _max_rho_drop(x, m, n - 1) if n >= 1 else None
    t = 0 if t is None else t + 1
    r = 0 if r is None else r + 1
    return geometric(t) + geometric(r) - ONE


def crown_count(x: a2.A2Elt, y: a2.A2Elt) -> int:
    """Number of two-crown subintervals: dihedral [a,b] of length 3.

    Counted geometrically: a two-crown is detected by its pair of atoms.
    """
    elements = a2.interval_geom(x, y)
    in_interval = set(elements)
    count = 0
    for za in elements:
        uppers = [u for u in a2.covers_closed(za).upper if u in in_interval]
        for zb in elements:
            if zb.length - za.length != 3:
                continue
            poly = a2.c_polygon(zb)
            atoms = sum(1 for u in uppers if member(poly, u.cen))
            if atoms == 2 and a2.leq_geom(za, zb):
                count += 1
    return count


def kl_crown(x: a2.A2Elt, y: a2.A2Elt) -> QPoly:
    """P for a length-4 interval from its coatom count and two-crown count.

    ``1 + (c + B2/2 - 4) q`` where c is the number of coatoms of [x, y].
    """
    if y.length - x.length != 4:
        raise KlError("the crown formula needs an interval of length 4")
    if not a2.leq_geom(x, y):
        raise KlError("empty interval")
    coatoms = sum(1 for c in a2.covers_closed(y).lower if a2.geq_geom(x, c))
    b2 = crown_count(x, y)
    if b2 % 2:
        raise KlError("odd two-crown count; formula hypothesis violated")
    coeff = coatoms + b2 // 2 - 4
    if coeff < 0:
        raise KlError("negative crown coefficient; formula hypothesis violated")
    return QPoly((1, coeff))


def kl_dominant(x: a2.A2Elt, y: a2.A2Elt, ball=None) -> KlResult:
    """Route a dominant pair to a closed formula, else the oracle recursion."""
    if y.is_dominant() and (x.is_dominant() or x.is_identity()) and a2.leq_geom(x, y):
        kind = y.normal_form.kind
        if kind == "theta":
            return KlResult(kl_closed_theta(x, y), "closed-theta")
        if kind == "theta_s":
            return KlResult(kl_closed_theta_s(x, y), "closed-theta-s")
    if ball is None:
        raise KlError("pair outside the closed families and no oracle given")
    i = ball.index_of(_to_ball_elt(ball, x))
    j = ball.index_of(_to_ball_elt(ball, y))
    return KlResult(ball.kl(i, j), "oracle")


def _to_ball_elt(ball, z: a2.A2Elt):
    return ball.spec.from_word(z.word())

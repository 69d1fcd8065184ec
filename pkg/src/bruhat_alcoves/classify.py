"""Poset isomorphism machinery and the classification / conjecture sweeps.

A ``PosetData`` is a graded bounded poset given by ranks and cover lists.
Canonical certificates come from iterated degree refinement with
individualization backtracking, so certificate equality is equivalent to
poset isomorphism (verified against explicit bijection search in the test
suite).  On top of this sit the thick-interval census, the lower-interval
classification, the coweight-translation conjecture sweep, the dihedral
subposet comparison, and interval stabilization under repeated dominant
translations.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import a2, translations
from .coxeter import Ball, IntervalPoset
from .geometry import Polygon, Pt, congruent_mod_flip, member


class ClassifyError(Exception):
    pass


# -- generic graded posets -----------------------------------------------------


@dataclass(frozen=True)
class PosetData:
    ranks: Tuple[int, ...]
    up: Tuple[Tuple[int, ...], ...]  # cover lists by index

    @property
    def size(self) -> int:
        return len(self.ranks)

    def down_lists(self) -> Tuple[Tuple[int, ...], ...]:
        down: List[List[int]] = [[] for _ in range(self.size)]
        for i, ups in enumerate(self.up):
            for j in ups:
                down[j].append(i)
        return tuple(tuple(sorted(d)) for d in down)

    def lc_sequence(self) -> Tuple[int, ...]:
        top = max(self.ranks) if self.ranks else 0
        out = [0] * (top + 1)
        for r in self.ranks:
            out[r] += 1
        return tuple(out)

    @staticmethod
    def from_a2_interval(elements: Sequence[a2.A2Elt]) -> "PosetData":
        """Cover structure from lengths and the geometric order test."""
        n = len(elements)
        polys = [a2.c_polygon(z) for z in elements]
        base = min(z.length for z in elements) if elements else 0
        ranks = tuple(z.length - base for z in elements)
        up: List[List[int]] = [[] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if ranks[j] == ranks[i] + 1 and member(polys[j], elements[i].cen):
                    up[i].append(j)
        return PosetData(ranks, tuple(tuple(sorted(u)) for u in up))

    @staticmethod
    def from_oracle_interval(ip: IntervalPoset) -> "PosetData":
        return PosetData(tuple(ip.ranks), tuple(ip.up))


def _refine(p: PosetData, colors: List[int]) -> List[int]:
    down = p.down_lists()
    while True:
        sig = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in p.up[i])),
                tuple(sorted(colors[j] for j in down[i])),
            )
            for i in range(p.size)
        ]
        order = sorted(set(sig))
        lut = {s: k for k, s in enumerate(order)}
        new = [lut[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def _certificate(p: PosetData, colors: List[int]):
    colors = _refine(p, colors)
    classes: Dict[int, List[int]] = {}
    for i, c in enumerate(colors):
        classes.setdefault(c, []).append(i)
    target = None
    for c in sorted(classes):
        if len(classes[c]) > 1:
            target = classes[c]
            break
    if target is None:
        order = sorted(range(p.size), key=lambda i: colors[i])
        pos = {i: k for k, i in enumerate(order)}
        edges = tuple(sorted((pos[i], pos[j]) for i in range(p.size) for j in p.up[i]))
        ranks = tuple(p.ranks[i] for i in order)
        return (p.size, ranks, edges), order
    best = None
    best_order = None
    fresh = max(colors) + 1
    for i in target:
        branched = list(colors)
        branched[i] = fresh
        cert, order = _certificate(p, branched)
        if best is None or cert < best:
            best, best_order = cert, order
    return best, best_order


def canonical_form(p: PosetData):
    """Canonical certificate; equal certificates iff isomorphic posets."""
    cert, _ = _certificate(p, list(p.ranks))
    return cert


def canonical_order(p: PosetData) -> List[int]:
    _, order = _certificate(p, list(p.ranks))
    return order


def poset_isomorphic(p: PosetData, q: PosetData) -> Optional[List[int]]:
    """An explicit isomorphism (mapping of p-indices to q-indices) or None."""
    if p.size != q.size or p.lc_sequence() != q.lc_sequence():
        return None
    cp, op = _certificate(p, list(p.ranks))
    cq, oq = _certificate(q, list(q.ranks))
    if cp != cq:
        return None
    pos_q = {k: i for k, i in enumerate(oq)}
    inv_p = {i: k for k, i in enumerate(op)}
    mapping = [pos_q[inv_p[i]] for i in range(p.size)]
    # verify cover preservation in both directions
    q_edges = {(i, j) for i in range(q.size) for j in q.up[i]}
    for i in range(p.size):
        for j in p.up[i]:
            if (mapping[i], mapping[j]) not in q_edges:
                raise ClassifyError("canonical certificates matched a non-isomorphism")
    if len(q_edges) != sum(len(u) for u in p.up):
        raise ClassifyError("cover counts differ despite equal certificates")
    return mapping


# -- sweep reports ----------------------------------------------------------------


@dataclass
class SweepReport:
    group: str
    bounds: Dict[str, int]
    pairs_tested: int
    counterexamples: List[dict] = field(default_factory=list)
    runtime: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": "sweep-report.v1",
                "group": self.group,
                "bounds": self.bounds,
                "pairs_tested": self.pairs_tested,
                "counterexamples": self.counterexamples,
                "runtime_seconds": round(self.runtime, 3),
                "notes": self.notes,
            },
            indent=2,
            sort_keys=True,
        )

    def csv_rows(self) -> List[List[str]]:
        rows = [["group", "pairs_tested", "counterexamples", "runtime_seconds"]]
        rows.append([self.group, str(self.pairs_tested), str(len(self.counterexamples)), "%.3f" % self.runtime])
        return rows


# -- thick census (both directions of the main classification theorem) -----------


def _word_str(z: a2.A2Elt) -> str:
    return "".join(str(i) for i in z.word())


def enumerate_thick_intervals(max_len_x: int, max_diff: int):
    """All thick dominant intervals within the given bounds."""
    doms = [
        z
        for l in range(3, max_len_x + 1)
        for z in a2.enumerate_length(l)
        if z.is_dominant()
    ]
    out = []
    for x in doms:
        for d in range(1, max_diff + 1):
            for y in a2.enumerate_length(x.length + d):
                if not y.is_dominant() or not a2.leq_geom(x, y):
                    continue
                if a2.is_thick(x, y):
                    out.append((x, y))
    return out


def thick_census(max_len_x: int, max_diff: int) -> SweepReport:
    """Both directions: poset iso iff interval polygons congruent mod flip,
    with an explicit comparability witness for every isomorphic pair."""
    t0 = time.time()
    intervals = enumerate_thick_intervals(max_len_x, max_diff)
    data = []
    for x, y in intervals:
        elements = a2.interval_geom(x, y)
        poset = PosetData.from_a2_interval(elements)
        cert = canonical_form(poset)
        data.append((x, y, elements, poset, cert, a2.pgn(x, y, "e")))
    report = SweepReport(
        group="A2~ thick census",
        bounds={"max_len_x": max_len_x, "max_diff": max_diff},
        pairs_tested=0,
    )
    report.notes.append("%d thick intervals" % len(intervals))
    sigma = a2.AUTO_BY_NAME["s"]
    for i in range(len(data)):
        xi, yi, elts_i, pi, ci, pgn_i = data[i]
        for j in range(i + 1, len(data)):
            xj, yj, elts_j, pj, cj, pgn_j = data[j]
            report.pairs_tested += 1
            iso = ci == cj
            cong = congruent_mod_flip(pgn_i, pgn_j) is not None
            if iso != cong:
                report.counterexamples.append(
                    {
                        "pair": [_word_str(xi), _word_str(yi), _word_str(xj), _word_str(yj)],
                        "iso": iso,
                        "congruent": cong,
                    }
                )
                continue
            if iso:
                witness = translations.comparable(xi, yi, xj, yj)
                if witness is None:
                    witness = translations.comparable(
                        xi, yi, xj.apply_auto(sigma), yj.apply_auto(sigma)
                    )
                if witness is None:
                    report.counterexamples.append(
                        {
                            "pair": [_word_str(xi), _word_str(yi), _word_str(xj), _word_str(yj)],
                            "iso": True,
                            "congruent": True,
                            "witness": None,
                        }
                    )
    report.runtime = time.time() - t0
    return report


def corner_transport_check(
    x: a2.A2Elt,
    y: a2.A2Elt,
    x2: a2.A2Elt,
    y2: a2.A2Elt,
    elements: Sequence[a2.A2Elt],
    elements2: Sequence[a2.A2Elt],
    mapping: Sequence[int],
) -> bool:
    """A verified isomorphism must transport corner alcoves and x + rho."""
    cd1 = a2.corner_data(x, y)
    cd2 = a2.corner_data(x2, y2)
    pos = {z: k for k, z in enumerate(elements)}

    def image(z):
        return elements2[mapping[pos[z]]]

    src = {cd1.z_x[1], cd1.z_x[2]}
    dst = {cd2.z_x[1], cd2.z_x[2]}
    if {image(z) for z in src} != dst:
        return False
    src_y = {cd1.z_y[1], cd1.z_y[2]}
    dst_y = {cd2.z_y[1], cd2.z_y[2]}
    if {image(z) for z in src_y} != dst_y:
        return False
    return image(x.translate(1, 1)) == x2.translate(1, 1)


# -- lower interval classification ---------------------------------------------


def generic_orbit(z: a2.A2Elt) -> List[a2.A2Elt]:
    """Orbit under the twelve generic automorphisms (diagram autos + inverse)."""
    out = set()
    for auto in a2.AUTOS:
        g = z.apply_auto(auto)
        out.add(g)
        out.add(g.inverse())
    return sorted(out, key=lambda w: w.cen)


def lower_classification(u: a2.A2Elt, v: a2.A2Elt) -> bool:
    """[id,u] iso [id,v] iff same generic orbit; both sides computed, compared."""
    pu = PosetData.from_a2_interval(a2.interval_geom(a2.identity(), u))
    pv = PosetData.from_a2_interval(a2.interval_geom(a2.identity(), v))
    iso = canonical_form(pu) == canonical_form(pv)
    orbit = v in generic_orbit(u)
    if iso != orbit:
        raise ClassifyError(
            "lower classification mismatch at %s, %s: iso=%s orbit=%s"
            % (_word_str(u), _word_str(v), iso, orbit)
        )
    return iso


# -- coweight translation conjecture ----------------------------------------------


def _dominant_indices(ball: Ball) -> List[int]:
    spec = ball.spec
    out = []
    for i in range(ball.size):
        cen = ball.cens[i]
        if all(spec.simple_pairing(k, cen, spec.cen_scale) > 0 for k in range(spec.rank)):
            out.append(i)
    return out


def _generic_images(ball: Ball, i: int) -> List[int]:
    out = set()
    for perm in ball.spec.diagram_automorphisms():
        j = ball.apply_diagram_auto(perm, i)
        out.add(j)
        out.add(ball.inverse_index(j))
    return sorted(out)


def conjecture_e_sweep(
    family: str, rank: int, max_len_x: int, max_diff: int, ball: Optional[Ball] = None
) -> SweepReport:
    """Isomorphic full dominant intervals should differ by a coweight
    translation composed with a generic automorphism, endpoint by endpoint."""
    t0 = time.time()
    if ball is None:
        ball = Ball(ball_spec_for(family, rank), max_len_x + max_diff)
    doms = [i for i in _dominant_indices(ball) if ball.lengths[i] <= max_len_x]
    intervals = []
    for a in doms:
        for b in _dominant_indices(ball):
            d = ball.lengths[b] - ball.lengths[a]
            if d < 1 or d > max_diff:
                continue
            if not ball.leq(a, b) or not ball.is_full_interval(a, b):
                continue
            cert = canonical_form(PosetData.from_oracle_interval(ball.interval(a, b)))
            intervals.append((a, b, cert))
    by_cert: Dict[tuple, List[Tuple[int, int]]] = {}
    for a, b, cert in intervals:
        by_cert.setdefault(cert, []).append((a, b))
    report = SweepReport(
        group="%s%d conjecture-E" % (family, rank),
        bounds={"max_len_x": max_len_x, "max_diff": max_diff},
        pairs_tested=0,
    )
    report.notes.append("%d full dominant intervals" % len(intervals))
    gens = ball.spec.diagram_automorphisms()
    for cert, pairs in by_cert.items():
        for s in range(len(pairs)):
            for t in range(s + 1, len(pairs)):
                (a, b), (a2i, b2) = pairs[s], pairs[t]
                report.pairs_tested += 1
                hyp = False
                witness = False
                for perm in gens:
                    for use_inv in (False, True):
                        ga = ball.apply_diagram_auto(perm, a2i)
                        gb = ball.apply_diagram_auto(perm, b2)
                        if use_inv:
                            ga, gb = ball.inverse_index(ga), ball.inverse_index(gb)
                        lam_x = ball.alcove_translation(ga, a)
                        if lam_x is not None:
                            hyp = True
                            lam_y = ball.alcove_translation(gb, b)
                            if lam_y == lam_x:
                                witness = True
                                break
                    if witness:
                        break
                if hyp and not witness:
                    report.counterexamples.append(
                        {
                            "pair": [
                                list(ball.words[a]),
                                list(ball.words[b]),
                                list(ball.words[a2i]),
                                list(ball.words[b2]),
                            ]
                        }
                    )
    report.runtime = time.time() - t0
    return report


def ball_spec_for(family: str, rank: int):
    from .coxeter import GroupSpec

    return GroupSpec(family, rank)


# -- dihedral subposet comparison -------------------------------------------------


@dataclass
class DihedralComparison:
    full_iso: bool
    dihedral_iso: bool
    complement_not_contained: bool
    cardinalities_equal: bool

    @property
    def fix_conditions(self) -> Tuple[bool, bool, bool]:
        return (self.dihedral_iso, self.complement_not_contained, self.cardinalities_equal)


def _dihedral_subposet(x: a2.A2Elt, y: a2.A2Elt, elements: Sequence[a2.A2Elt]) -> PosetData:
    """Induced subposet D_x union D_y inside [x, y]."""
    atom_set = a2.covers_closed(x).upper
    coatom_set = a2.covers_closed(y).lower
    polys = {z: a2.c_polygon(z) for z in elements}
    chosen = []
    for z in elements:
        dx = z.length - x.length
        dy = y.length - z.length
        in_dx = dx <= 1 or sum(1 for u in atom_set if member(polys[z], u.cen)) == 2
        in_dy = dy <= 1 or sum(1 for c in coatom_set if member(polys[c], z.cen)) == 2
        if in_dx or in_dy:
            chosen.append(z)
    n = len(chosen)
    base = x.length
    ranks = tuple(z.length - base for z in chosen)
    up: List[List[int]] = [[] for _ in range(n)]
    # induced order, then covers inside the subposet
    leq = [
        [member(polys[chosen[j]], chosen[i].cen) for j in range(n)] for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if any(leq[i][k] and leq[k][j] for k in range(n) if k not in (i, j)):
                continue
            up[i].append(j)
    return PosetData(ranks, tuple(tuple(sorted(u)) for u in up))


def insight_f_check(
    x: a2.A2Elt, y: a2.A2Elt, x2: a2.A2Elt, y2: a2.A2Elt, ball: Ball
) -> DihedralComparison:
    """Compare full-interval isomorphism against dihedral-subposet isomorphism.

    Reports the observation and its three candidate side conditions; nothing
    is asserted, the equivalence is known not to be exact.
    """
    els1 = a2.interval_geom(x, y)
    els2 = a2.interval_geom(x2, y2)
    p1 = PosetData.from_a2_interval(els1)
    p2 = PosetData.from_a2_interval(els2)
    full_iso = canonical_form(p1) == canonical_form(p2)
    d1 = _dihedral_subposet(x, y, els1)
    d2 = _dihedral_subposet(x2, y2, els2)
    dihedral_iso = canonical_form(d1) == canonical_form(d2)
    # literal reading of the complement condition over the enumerated ball
    def to_ball(z):
        return ball.index_of(ball.spec.from_word(z.word()))

    xi, yi = to_ball(x), to_ball(y)
    not_contained = False
    for k in range(ball.size):
        if not ball.leq(xi, k) and not ball.leq(k, yi):
            not_contained = True
            break
    return DihedralComparison(
        full_iso=full_iso,
        dihedral_iso=dihedral_iso,
        complement_not_contained=not_contained,
        cardinalities_equal=len(els1) == len(els2),
    )


# -- stabilization ------------------------------------------------------------------


def stabilization_find_n0(
    x: a2.A2Elt, y: a2.A2Elt, lam: Tuple[int, int], n_max: int = 12, window: int = 3
) -> Optional[int]:
    """Least N0 <= n_max from which [x+N lam, y+N lam] is constant up to iso."""
    if lam == (0, 0):
        return 0
    for n0 in range(n_max + 1):
        xs = x.translate(n0 * lam[0], n0 * lam[1])
        ys = y.translate(n0 * lam[0], n0 * lam[1])
        stable = True
        for k in range(window):
            xk = x.translate((n0 + k) * lam[0], (n0 + k) * lam[1])
            yk = y.translate((n0 + k) * lam[0], (n0 + k) * lam[1])
            if not translations.pgn_translation_law(xk, yk, lam):
                stable = False
                break
        if not stable:
            continue
        ok = True
        for k in range(1, window + 1):
            shift = (k * lam[0], k * lam[1])
            if not translations.translate_interval(xs, ys, shift).is_poset_iso:
                ok = False
                break
        if ok:
            return n0
    return None

import itertools
import random

import pytest

from bruhat_alcoves import a2, classify, translations as tr
from bruhat_alcoves.coxeter import Ball, GroupSpec


def brute_isomorphism(p: classify.PosetData, q: classify.PosetData):
    """Backtracking bijection search by rank layers; reference implementation."""
    if p.size != q.size or p.lc_sequence() != q.lc_sequence():
        return None
    layers_p = {}
    layers_q = {}
    for i, r in enumerate(p.ranks):
        layers_p.setdefault(r, []).append(i)
    for i, r in enumerate(q.ranks):
        layers_q.setdefault(r, []).append(i)
    p_down = p.down_lists()
    q_edges = {(i, j) for i in range(q.size) for j in q.up[i]}

    mapping = {}

    def extend(rank):
        if rank not in layers_p:
            return True
        src = layers_p[rank]
        for perm in itertools.permutations(layers_q[rank]):
            ok = True
            for s, t in zip(src, perm):
                for d in p_down[s]:
                    if (mapping[d], t) not in q_edges:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for s, t in zip(src, perm):
                    mapping[s] = t
                if extend(rank + 1):
                    return True
                for s in src:
                    del mapping[s]
        return False

    return dict(mapping) if extend(0) else None


def _interval_poset(x, y):
    return classify.PosetData.from_a2_interval(a2.interval_geom(x, y))


def test_canonical_form_soundness_small_corpus():
    corpus = []
    for u in [a2.theta(0, 0), a2.theta_s(0, 0), a2.wall_elt(4), a2.wall_elt(5),
              a2.s0_theta_s(0, 0), a2.theta(1, 0), a2.theta_s(0, 1), a2.wall_elt(6),
              a2.theta(1, 1), a2.wall_elt(7)]:
        corpus.append(_interval_poset(a2.identity(), u))
    corpus.append(_interval_poset(a2.theta(0, 0), a2.theta(2, 2)))
    corpus.append(_interval_poset(a2.theta_s(1, 0), a2.theta_s(3, 1)))
    for p in corpus:
        assert p.size <= 200
    for p, q in itertools.combinations(corpus, 2):
        cert_equal = classify.canonical_form(p) == classify.canonical_form(q)
        assert cert_equal == (brute_isomorphism(p, q) is not None)
    for p in corpus:
        assert classify.canonical_form(p) == classify.canonical_form(p)


def test_poset_isomorphic_returns_verified_bijection():
    p = _interval_poset(a2.theta_s(1, 0), a2.theta_s(3, 1))
    q = _interval_poset(a2.theta_s(6, 1), a2.theta_s(8, 2))
    mapping = classify.poset_isomorphic(p, q)
    assert mapping is not None
    assert p.lc_sequence() == q.lc_sequence()
    # self-isomorphism is the identity certificate
    assert classify.poset_isomorphic(p, p) is not None
    r = _interval_poset(a2.theta(0, 0), a2.theta(4, 4))
    assert classify.poset_isomorphic(p, r) is None


def test_sigma_images_are_isomorphic():
    sigma = a2.AUTO_BY_NAME["s"]
    x, y = a2.theta(1, 0), a2.theta(3, 2)
    p = _interval_poset(x, y)
    q = _interval_poset(x.apply_auto(sigma), y.apply_auto(sigma))
    assert classify.poset_isomorphic(p, q) is not None


def test_exceptional_pairs_not_isomorphic_but_same_invariants():
    pairs = [
        (a2.s0_theta_s(0, 0), a2.wall_elt(5)),
        (a2.theta_s(0, 1), a2.wall_elt(6)),
        (a2.theta_s(1, 0), a2.wall_elt(6)),
        (a2.theta(1, 1), a2.wall_elt(7)),
    ]
    for u, v in pairs:
        assert u.length == v.length
        assert a2.lower_cardinality(u) == a2.lower_cardinality(v)
        pu = _interval_poset(a2.identity(), u)
        pv = _interval_poset(a2.identity(), v)
        assert classify.canonical_form(pu) != classify.canonical_form(pv)


def test_lower_classification_sweep():
    for l in range(1, 9):
        layer = a2.enumerate_length(l)
        for i in range(len(layer)):
            for j in range(i, len(layer)):
                classify.lower_classification(layer[i], layer[j])  # raises on mismatch


def test_generic_orbit():
    orbit = classify.generic_orbit(a2.theta_s(1, 0))
    assert a2.theta_s(0, 1) in orbit
    assert len(orbit) <= 12
    assert a2.wall_elt(6) not in orbit


def test_thick_census_no_counterexamples():
    report = classify.thick_census(10, 8)
    assert report.ok
    assert report.pairs_tested >= 15
    doc = report.to_json()
    assert "sweep-report.v1" in doc


def test_corner_transport():
    x, y = a2.theta(1, 1), a2.theta(3, 3)
    lam = (1, 2)
    x2, y2 = x.translate(*lam), y.translate(*lam)
    e1 = a2.interval_geom(x, y)
    e2 = a2.interval_geom(x2, y2)
    p1 = classify.PosetData.from_a2_interval(e1)
    p2 = classify.PosetData.from_a2_interval(e2)
    mapping = classify.poset_isomorphic(p1, p2)
    assert mapping is not None
    assert classify.corner_transport_check(x, y, x2, y2, e1, e2, mapping)


def test_lc_and_dihedral_invariance_under_iso():
    x, y = a2.theta(1, 1), a2.theta(3, 3)
    x2, y2 = x.translate(2, 0), y.translate(2, 0)
    e1 = a2.interval_geom(x, y)
    e2 = a2.interval_geom(x2, y2)
    p1 = classify.PosetData.from_a2_interval(e1)
    p2 = classify.PosetData.from_a2_interval(e2)
    mapping = classify.poset_isomorphic(p1, p2)
    assert mapping is not None
    assert p1.lc_sequence() == p2.lc_sequence()
    atoms1 = set(a2.covers_closed(x).upper)
    atoms2 = set(a2.covers_closed(x2).upper)
    for k, z in enumerate(e1):
        dihedral_1 = z.length - x.length <= 1 or (
            sum(1 for u in atoms1 if a2.leq_geom(u, z)) == 2
        )
        w = e2[mapping[k]]
        dihedral_2 = w.length - x2.length <= 1 or (
            sum(1 for u in atoms2 if a2.leq_geom(u, w)) == 2
        )
        assert dihedral_1 == dihedral_2


def test_conjecture_e_small_sweeps():
    rep = classify.conjecture_e_sweep("A", 2, 10, 5)
    assert rep.ok and rep.pairs_tested > 100
    rep = classify.conjecture_e_sweep("B", 2, 8, 5)
    assert rep.ok


def test_conjecture_e_translation_pairs_trivially_witnessed():
    ball = Ball(GroupSpec("A", 2), 14)
    from conftest import A2Bridge

    bridge = A2Bridge(ball)
    x, y = a2.theta(0, 0), a2.theta(1, 1)
    x2, y2 = x.translate(1, 1), y.translate(1, 1)
    lam_x = ball.alcove_translation(bridge.idx(x), bridge.idx(x2))
    lam_y = ball.alcove_translation(bridge.idx(y), bridge.idx(y2))
    assert lam_x == lam_y is not None


def test_insight_f_reports(ball12):
    x, y = a2.theta(1, 1), a2.theta(2, 2)
    same = classify.insight_f_check(x, y, x, y, ball12)
    assert same.full_iso and same.dihedral_iso and same.cardinalities_equal
    x2, y2 = x.translate(1, 1), y.translate(1, 1)
    shifted = classify.insight_f_check(x, y, x2, y2, ball12)
    assert shifted.full_iso and shifted.dihedral_iso
    assert shifted.fix_conditions[0] and shifted.fix_conditions[2]
    other = classify.insight_f_check(x, y, a2.theta(0, 0), a2.theta(2, 2), ball12)
    assert not other.full_iso


def test_stabilization():
    assert classify.stabilization_find_n0(a2.theta_s(1, 0), a2.theta_s(3, 1), (1, 1)) == 0
    n0 = classify.stabilization_find_n0(a2.theta(0, 0), a2.theta(4, 4), (1, 0))
    assert n0 is not None and n0 > 0
    assert classify.stabilization_find_n0(a2.theta(0, 0), a2.theta(2, 2), (0, 0)) == 0

import pytest

from bruhat_alcoves import a2, kl
from bruhat_alcoves.poly import ONE, QPoly, geometric, one_plus_cq


def test_qpoly_basics():
    p = QPoly((1, 2, 0))
    assert tuple(p) == (1, 2)
    assert p.degree == 1
    assert str(p) == "1+2q"
    assert str(QPoly(())) == "0"
    assert (geometric(2) - ONE).coeff(2) == 1
    assert one_plus_cq(3).shift(1) == QPoly((0, 1, 3))
    assert QPoly((1, 1)) + QPoly((0, 1)) == QPoly((1, 2))


def test_closed_theta_anchors():
    assert kl.kl_closed_theta(a2.theta(2, 1), a2.theta(2, 1)) == ONE
    assert kl.kl_closed_theta(a2.identity(), a2.theta(1, 1)) == geometric(1)
    assert kl.kl_closed_theta(a2.theta(0, 0), a2.theta(2, 2)) == geometric(2)
    with pytest.raises(kl.KlError):
        kl.kl_closed_theta(a2.theta(2, 2), a2.theta(0, 0))
    with pytest.raises(kl.KlError):
        kl.kl_closed_theta(a2.identity(), a2.theta_s(1, 1))


def test_closed_theta_s_anchors():
    assert kl.kl_closed_theta_s(a2.theta_s(1, 1), a2.theta_s(1, 1)) == ONE
    assert kl.kl_closed_theta_s(a2.theta_s(1, 1), a2.theta_s(2, 2)) == one_plus_cq(2)


def test_routing_provenance(ball12):
    res = kl.kl_dominant(a2.theta(1, 1), a2.theta(2, 2))
    assert res.provenance == "closed-theta"
    res = kl.kl_dominant(a2.theta_s(1, 1), a2.theta_s(2, 2))
    assert res.provenance == "closed-theta-s"
    # an upper endpoint outside the closed families goes to the oracle
    y = a2.s0_theta(2, 2).apply_auto(a2.AUTO_BY_NAME["d"])
    res = kl.kl_dominant(a2.theta(1, 1), y, ball=ball12)
    assert res.provenance == "oracle"
    assert res.poly == one_plus_cq(1)


def test_closed_vs_oracle_sweep(bridge12, ball12):
    doms = [a2.identity()] + bridge12.dominants(max_len=11)
    for y in doms:
        if y.is_identity() or y.length > 11:
            continue
        for x in doms:
            if not a2.leq_geom(x, y):
                continue
            closed = kl.kl_dominant(x, y).poly
            oracle = ball12.kl(bridge12.idx(x), bridge12.idx(y))
            assert closed == oracle, (x, y)


def test_crown_anchor_and_sweep(bridge12, ball12):
    assert kl.crown_count(a2.theta_s(1, 1), a2.theta_s(2, 2)) == 2
    doms = bridge12.dominants(max_len=12)
    checked = 0
    for x in doms:
        for y in doms:
            if y.length - x.length != 4 or not a2.leq_geom(x, y):
                continue
            checked += 1
            assert kl.kl_crown(x, y) == ball12.kl(bridge12.idx(x), bridge12.idx(y))
    assert checked >= 40
    with pytest.raises(kl.KlError):
        kl.kl_crown(a2.theta(0, 0), a2.theta(2, 2))


def test_translation_invariance_of_kl():
    from bruhat_alcoves import translations as tr

    instances = [
        (a2.theta_s(1, 0), a2.theta_s(3, 1), (2, 1)),
        (a2.theta(1, 1), a2.theta(3, 3), (1, 1)),
        (a2.theta(0, 0), a2.theta(2, 2), (2, 2)),
    ]
    for x, y, lam in instances:
        if not tr.translate_interval(x, y, lam).is_poset_iso:
            continue
        p1 = kl.kl_dominant(x, y).poly
        p2 = kl.kl_dominant(x.translate(*lam), y.translate(*lam)).poly
        assert p1 == p2

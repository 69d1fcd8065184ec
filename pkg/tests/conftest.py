import pytest

from bruhat_alcoves import a2
from bruhat_alcoves.coxeter import Ball, GroupSpec
from bruhat_alcoves.geometry import Pt


def weight_cen(ball, i):
    """Scaled weight coordinates of a rank-2 type-A ball element's center."""
    A, B = ball.cens[i]
    return Pt(2 * (2 * A - B), 2 * (-A + 2 * B))


class A2Bridge:
    """Dictionary between the generic oracle ball and the A2 alcove model."""

    def __init__(self, ball):
        self.ball = ball
        self.elts = [a2.A2Elt.from_center(weight_cen(ball, i)) for i in range(ball.size)]
        self.index = {e: i for i, e in enumerate(self.elts)}

    def idx(self, z: a2.A2Elt) -> int:
        return self.index[z]

    def dominants(self, max_len=None):
        out = [e for e in self.elts if e.is_dominant()]
        if max_len is not None:
            out = [e for e in out if e.length <= max_len]
        return out


@pytest.fixture(scope="session")
def ball12():
    return Ball(GroupSpec("A", 2), 12)


@pytest.fixture(scope="session")
def ball14():
    return Ball(GroupSpec("A", 2), 14)


@pytest.fixture(scope="session")
def bridge12(ball12):
    return A2Bridge(ball12)


@pytest.fixture(scope="session")
def bridge14(ball14):
    return A2Bridge(ball14)

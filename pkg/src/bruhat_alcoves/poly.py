"""Polynomials in q with integer coefficients (Kazhdan-Lusztig polynomials)."""

from __future__ import annotations


class QPoly(tuple):
    """Coefficient vector (c0, c1, ...) without trailing zeros."""

    __slots__ = ()

    def __new__(cls, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple.__new__(cls, coeffs)

    @property
    def degree(self) -> int:
        return len(self) - 1  # -1 for the zero polynomial

    def coeff(self, k: int) -> int:
        return self[k] if 0 <= k < len(self) else 0

    def __add__(self, other):
        n = max(len(self), len(other))
        return QPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other):
        n = max(len(self), len(other))
        return QPoly(self.coeff(k) - other.coeff(k) for k in range(n))

    def shift(self, k: int) -> "QPoly":
        """Multiply by q**k."""
        if not self:
            return self
        return QPoly((0,) * k + tuple(self))

    def scale(self, c: int) -> "QPoly":
        return QPoly(c * a for a in self)

    def __str__(self):
        if not self:
            return "0"
        terms = []
        for k, c in enumerate(self):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                q = "q" if k == 1 else "q^%d" % k
                terms.append(q if c == 1 else "%d%s" % (c, q))
        return "+".join(terms)


ZERO = QPoly()
ONE = QPoly((1,))


def one_plus_cq(c: int) -> QPoly:
    return QPoly((1, c))


def geometric(k: int) -> QPoly:
    """1 + q + ... + q**k."""
    return QPoly((1,) * (k + 1))

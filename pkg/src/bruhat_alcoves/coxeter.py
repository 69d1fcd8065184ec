"""Ground-truth engine for affine Weyl groups of types A, B/C (rank 2) and G2.

Elements are affine maps v -> M v + t on the coroot lattice, stored as flat
integer tuples, so equality and hashing are exact and O(1).  A ``Ball``
holds every element of length <= L (BFS over reduced words), the Bruhat
cover DAG (via affine reflections), reachability bitsets, and the classical
Kazhdan-Lusztig recursion.  Everything here is brute force on purpose: the
closed formulas elsewhere in the package are tested against this module.

Conventions follow the alcove picture with fundamental alcove
``A+ = {v : -1 < (alpha, v) < 0 for all positive roots alpha}``; the affine
generator is the reflection in ``(theta, v) = -1`` for the highest root
theta.
"""

from __future__ import annotations

import os
import pickle
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poly import ONE, QPoly, ZERO

Elt = Tuple[int, ...]  # n*n matrix entries row-major, then n translation entries


class CoxeterError(Exception):
    pass


class CapacityError(CoxeterError):
    """A requested computation does not fit in the built ball."""


class OutOfBallError(CoxeterError):
    pass


class EmptyIntervalError(CoxeterError):
    pass


def _cartan_data(family: str, rank: int):
    """Return (cartan, marks, comarks) for the supported affine families.

    ``cartan[i][j]`` is the root pairing (alpha_i, alpha_j^vee); marks are
    the coefficients of the highest root, comarks those of its coroot.
    """
    if family == "A":
        if rank < 2:
            raise CoxeterError("type A needs rank >= 2 for an affine ball")
        cartan = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            cartan[i][i] = 2
            if i + 1 < rank:
                cartan[i][i + 1] = -1
                cartan[i + 1][i] = -1
        return cartan, (1,) * rank, (1,) * rank
    if family in ("B", "C"):
        if rank != 2:
            raise CoxeterError("only rank 2 is supported for type %s" % family)
        # alpha1 long, alpha2 short; highest root alpha1 + 2*alpha2
        cartan = [[2, -2], [-1, 2]]
        return cartan, (1, 2), (1, 1)
    if family == "G":
        if rank != 2:
            raise CoxeterError("type G has rank 2")
        # alpha1 short, alpha2 long; highest root 3*alpha1 + 2*alpha2
        cartan = [[2, -1], [-3, 2]]
        return cartan, (3, 2), (1, 2)
    raise CoxeterError("unsupported family %r" % (family,))


def _mat_inverse_fractions(m):
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class GroupSpec:
    """An affine Weyl group with its exact reflection representation."""

    def __init__(self, family: str, rank: int):
        self.family = family
        self.rank = n = rank
        cartan, marks, comarks = _cartan_data(family, rank)
        self.cartan = cartan
        self.marks = marks
        self.comarks = comarks

        self.num_gens = n + 1
        self.gens: List[Elt] = []
        # finite generators s_1..s_n (indices 1..n); affine s_0 last computed here
        lin = []
        for i in range(n):
            m = [[int(k == j) for j in range(n)] for k in range(n)]
            for j in range(n):
                m[i][j] -= cartan[i][j]
            lin.append(m)
        # s_0: v -> v - ((theta, v) + 1) * theta^vee
        theta_row = [sum(marks[i] * cartan[i][j] for i in range(n)) for j in range(n)]
        m0 = [[int(k == j) for j in range(n)] for k in range(n)]
        for k in range(n):
            for j in range(n):
                m0[k][j] -= comarks[k] * theta_row[j]
        t0 = [-c for c in comarks]
        self._theta_row = tuple(theta_row)

        def flat(m, t):
            return tuple(x for row in m for x in row) + tuple(t)

        self.gens = [flat(m0, t0)] + [flat(m, [0] * n) for m in lin]
        self.identity: Elt = flat([[int(i == j) for j in range(n)] for i in range(n)], [0] * n)

        # positive roots, as coordinate vectors in the simple-root basis
        self.pos_roots = self._positive_roots()

        # exact base alcove data: vertices {0, -w_i^vee / m_i} and barycenter
        inv = _mat_inverse_fractions(cartan)
        fw = [[inv[k][i] for k in range(n)] for i in range(n)]  # fw[i] = w_i^vee coords
        verts = [[Fraction(0)] * n] + [
            [-fw[i][k] / marks[i] for k in range(n)] for i in range(n)
        ]
        cen = [sum(v[k] for v in verts) / (n + 1) for k in range(n)]
        from math import lcm

        self.vertex_scale = lcm(*[f.denominator for v in verts for f in v], 1)
        self.cen_scale = lcm(*[f.denominator for f in cen], 1)
        self.base_vertices = tuple(
            tuple(int(f * self.vertex_scale) for f in v) for v in verts
        )
        self.base_cen = tuple(int(f * self.cen_scale) for f in cen)
        self.fundamental_coweights = tuple(tuple(row) for row in fw)

        self._check_relations()

    # -- elements as flat affine maps ------------------------------------

    def mul(self, e1: Elt, e2: Elt) -> Elt:
        n = self.rank
        out = [0] * (n * n + n)
        for i in range(n):
            base = i * n
            for j in range(n):
                s = 0
                for k in range(n):
                    s += e1[base + k] * e2[k * n + j]
                out[base + j] = s
            s = e1[n * n + i]
            for k in range(n):
                s += e1[base + k] * e2[n * n + k]
            out[n * n + i] = s
        return tuple(out)

    def inverse(self, e: Elt) -> Elt:
        n = self.rank
        m = [[Fraction(e[i * n + j]) for j in range(n)] for i in range(n)]
        inv = _mat_inverse_fractions(m)
        t = [-sum(inv[i][k] * e[n * n + k] for k in range(n)) for i in range(n)]
        out = [int(inv[i][j]) for i in range(n) for j in range(n)] + [int(x) for x in t]
        return tuple(out)

    def apply_scaled(self, e: Elt, point: Sequence[int], scale: int) -> Tuple[int, ...]:
        """Apply the affine map to a point stored as scale*(true coords)."""
        n = self.rank
        return tuple(
            sum(e[i * n + k] * point[k] for k in range(n)) + scale * e[n * n + i]
            for i in range(n)
        )

    def cen(self, e: Elt) -> Tuple[int, ...]:
        """Alcove barycenter, scaled by ``cen_scale``."""
        return self.apply_scaled(e, self.base_cen, self.cen_scale)

    def alcove_vertices(self, e: Elt) -> Tuple[Tuple[int, ...], ...]:
        """Vertices of the alcove of e, scaled by ``vertex_scale``."""
        return tuple(
            self.apply_scaled(e, v, self.vertex_scale) for v in self.base_vertices
        )

    def root_pairing_rows(self):
        """Rows w such that (alpha, v) = w . v for each positive root alpha."""
        n = self.rank
        rows = []
        for a in self.pos_roots:
            rows.append(tuple(sum(a[i] * self.cartan[i][j] for i in range(n)) for j in range(n)))
        return rows

    def simple_pairing(self, i: int, point, scale: int) -> Fraction:
        """(alpha_i, point/scale) for a scaled integer point."""
        n = self.rank
        return Fraction(sum(self.cartan[i][j] * point[j] for j in range(n)), scale)

    def theta_pairing(self, point, scale: int) -> Fraction:
        return Fraction(sum(self._theta_row[j] * point[j] for j in range(self.rank)), scale)

    def left_descents(self, e: Elt) -> List[int]:
        cen = self.cen(e)
        out = []
        if self.theta_pairing(cen, self.cen_scale) < -1:
            out.append(0)
        for i in range(self.rank):
            if self.simple_pairing(i, cen, self.cen_scale) > 0:
                out.append(i + 1)
        return out

    def right_descents(self, e: Elt) -> List[int]:
        return self.left_descents(self.inverse(e))

    def from_word(self, word: Iterable[int]) -> Elt:
        e = self.identity
        for i in word:
            e = self.mul(e, self.gens[i])
        return e

    def length_of(self, e: Elt) -> int:
        """Word length computed by stripping left descents (no ball needed)."""
        count = 0
        while e != self.identity:
            i = self.left_descents(e)[0]
            e = self.mul(self.gens[i], e)
            count += 1
        return count

    def canonical_word(self, e: Elt) -> Tuple[int, ...]:
        """Reduced word from repeatedly removing the smallest left descent."""
        word = []
        while e != self.identity:
            i = self.left_descents(e)[0]
            word.append(i)
            e = self.mul(self.gens[i], e)
        return tuple(word)

    # -- structural sanity -----------------------------------------------

    def _gen_order(self, i: int, j: int, cap: int = 12) -> int:
        p = self.mul(self.gens[i], self.gens[j])
        acc = p
        for order in range(1, cap + 1):
            if acc == self.identity:
                return order
            acc = self.mul(acc, p)
        return 0  # no finite order found below the cap (treated as infinity)

    def coxeter_matrix(self):
        g = self.num_gens
        return [[1 if i == j else self._gen_order(i, j) for j in range(g)] for i in range(g)]

    def _check_relations(self):
        for i, s in enumerate(self.gens):
            if self.mul(s, s) != self.identity:
                raise CoxeterError("generator %d is not an involution" % i)
        cox = self.coxeter_matrix()
        for i in range(self.num_gens):
            for j in range(i + 1, self.num_gens):
                m = cox[i][j]
                if m == 2:
                    a = self.mul(self.gens[i], self.gens[j])
                    b = self.mul(self.gens[j], self.gens[i])
                    if a != b:
                        raise CoxeterError("commuting relation fails at (%d,%d)" % (i, j))
        self._coxeter_matrix = cox

    def diagram_automorphisms(self) -> List[Tuple[int, ...]]:
        """All permutations of the affine diagram preserving the Coxeter matrix."""
        from itertools import permutations

        cox = self._coxeter_matrix
        g = self.num_gens
        out = []
        for perm in permutations(range(g)):
            if all(cox[perm[i]][perm[j]] == cox[i][j] for i in range(g) for j in range(g)):
                out.append(perm)
        return out

    def _positive_roots(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = set(simple)
        frontier = set(simple)
        while frontier:
            nxt = set()
            for a in frontier:
                for i in range(n):
                    # s_i(alpha) = alpha - <alpha, alpha_i^vee> alpha_i
                    coeff = sum(a[j] * self.cartan[j][i] for j in range(n))
                    b = list(a)
                    b[i] -= coeff
                    b = tuple(b)
                    if b not in roots:
                        roots.add(b)
                        nxt.add(b)
            frontier = nxt
        return sorted(r for r in roots if all(c >= 0 for c in r) and any(c > 0 for c in r))

    def coroot_coords(self, root) -> Tuple[int, ...]:
        """Coordinates of alpha^vee in the coroot basis, for a positive root."""
        n = self.rank
        # (alpha, alpha) from the symmetrized Cartan matrix: d_j = |alpha_j|^2/2
        # recovered from cartan[i][j] = (alpha_i, alpha_j)/d_j with d normalized
        # so that min d = 1.
        d = self._symmetrizer()
        norm2 = Fraction(0)
        for i in range(n):
            for j in range(n):
                norm2 += root[i] * root[j] * self.cartan[i][j] * d[j]
        coords = [Fraction(2 * root[i] * d[i], 1) / norm2 for i in range(n)]
        if any(c.denominator != 1 for c in coords):
            raise CoxeterError("non-integral coroot for %r" % (root,))
        return tuple(int(c) for c in coords)

    def _symmetrizer(self):
        n = self.rank
        d = [Fraction(1)] * n
        # solve cartan[i][j] d[j] == cartan[j][i] d[i] by propagation
        for _ in range(n):
            for i in range(n):
                for j in range(n):
                    if self.cartan[i][j] != 0 and i != j:
                        d[i] = d[j] * self.cartan[i][j] / self.cartan[j][i]
        lo = min(d)
        return [x / lo for x in d]

    def reflection(self, root, k: int) -> Elt:
        """The affine reflection fixing {(alpha, v) = k}."""
        n = self.rank
        w = [sum(root[i] * self.cartan[i][j] for i in range(n)) for j in range(n)]
        cov = self.coroot_coords(root)
        m = [[int(a == b) - cov[a] * w[b] for b in range(n)] for a in range(n)]
        t = [k * c for c in cov]
        return tuple(x for row in m for x in row) + tuple(t)

    def __repr__(self):
        return "GroupSpec(%r, %d)" % (self.family, self.rank)


@dataclass
class IntervalPoset:
    """A finite Bruhat interval as a graded poset on ball indices."""

    ball: "Ball"
    elements: Tuple[int, ...]  # ball indices, sorted by (length, word)
    ranks: Tuple[int, ...]
    up: Tuple[Tuple[int, ...], ...]  # cover lists, positions into `elements`
    down: Tuple[Tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.elements)

    def lc_sequence(self) -> Tuple[int, ...]:
        top_rank = max(self.ranks) if self.ranks else 0
        counts = [0] * (top_rank + 1)
        for r in self.ranks:
            counts[r] += 1
        return tuple(counts)

    def atoms(self) -> Tuple[int, ...]:
        return self.up[self.bottom]

    def coatoms(self) -> Tuple[int, ...]:
        return self.down[self.top]

    def leq(self, i: int, j: int) -> bool:
        return self.ball.leq(self.elements[i], self.elements[j])


class Ball:
    """All elements of length <= L, with covers, order and KL machinery."""

    FORMAT_VERSION = 1

    def __init__(self, spec: GroupSpec, length_bound: int, max_elements: int = 2_000_000):
        self.spec = spec
        self.length_bound = length_bound
        self.elts: List[Elt] = [spec.identity]
        self.index: Dict[Elt, int] = {spec.identity: 0}
        self.lengths: List[int] = [0]
        self.words: List[Tuple[int, ...]] = [()]
        frontier = [spec.identity]
        for depth in range(1, length_bound + 1):
            nxt = []
            for e in frontier:
                w = self.words[self.index[e]]
                for i in range(spec.num_gens):
                    ne = spec.mul(e, spec.gens[i])
                    if ne not in self.index:
                        self.index[ne] = len(self.elts)
                        self.elts.append(ne)
                        self.lengths.append(depth)
                        self.words.append(w + (i,))
                        nxt.append(ne)
                        if len(self.elts) > max_elements:
                            raise CapacityError(
                                "ball of radius %d exceeds %d elements"
                                % (length_bound, max_elements)
                            )
            frontier = nxt
        self.cens: List[Tuple[int, ...]] = [spec.cen(e) for e in self.elts]
        self.size = len(self.elts)
        self._covers_down: Optional[List[Tuple[int, ...]]] = None
        self._covers_up: Optional[List[Tuple[int, ...]]] = None
        self._up_reach: Optional[List[int]] = None
        self._down_reach: Optional[List[int]] = None
        self._kl_cache: Dict[Tuple[int, int], QPoly] = {}
        self._by_length: Dict[int, List[int]] = {}
        for i, l in enumerate(self.lengths):
            self._by_length.setdefault(l, []).append(i)

    # -- lookup ------------------------------------------------------------

    def index_of(self, e: Elt) -> int:
        try:
            return self.index[e]
        except KeyError:
            raise OutOfBallError("element outside ball of radius %d" % self.length_bound)

    def of_length(self, l: int) -> List[int]:
        return list(self._by_length.get(l, ()))

    def length(self, i: int) -> int:
        return self.lengths[i]

    def word(self, i: int) -> Tuple[int, ...]:
        return self.words[i]

    # -- covers and order ----------------------------------------------------

    def _compute_covers(self):
        spec = self.spec
        n = spec.rank
        refls: List[Elt] = []
        for root in spec.pos_roots:
            w = [sum(root[i] * spec.cartan[i][j] for i in range(n)) for j in range(n)]
            m = 0
            for cen in self.cens:
                val = abs(sum(w[j] * cen[j] for j in range(n)))
                if val > m:
                    m = val
            bound = m // spec.cen_scale + 2
            for k in range(-bound, bound + 1):
                refls.append(spec.reflection(root, k))
        down: List[List[int]] = [[] for _ in range(self.size)]
        up: List[List[int]] = [[] for _ in range(self.size)]
        for zi, z in enumerate(self.elts):
            lz = self.lengths[zi]
            if lz == 0:
                continue
            for r in refls:
                u = spec.mul(r, z)
                ui = self.index.get(u)
                if ui is not None and self.lengths[ui] == lz - 1:
                    down[zi].append(ui)
                    up[ui].append(zi)
        self._covers_down = [tuple(sorted(set(x))) for x in down]
        self._covers_up = [tuple(sorted(set(x))) for x in up]

    def lower_covers(self, i: int) -> Tuple[int, ...]:
        if self._covers_down is None:
            self._compute_covers()
        return self._covers_down[i]

    def upper_covers(self, i: int) -> Tuple[int, ...]:
        """Covers above i; complete only when length(i) < length_bound."""
        if self.lengths[i] >= self.length_bound:
            raise CapacityError(
                "upper covers at the ball boundary (length %d of %d) are incomplete"
                % (self.lengths[i], self.length_bound)
            )
        if self._covers_up is None:
            self._compute_covers()
        return self._covers_up[i]

    def _compute_reach(self):
        if self._covers_up is None:
            self._compute_covers()
        up = [1 << i for i in range(self.size)]
        order = sorted(range(self.size), key=lambda i: -self.lengths[i])
        for i in order:
            acc = up[i]
            for j in self._covers_up[i]:
                acc |= up[j]
            up[i] = acc
        down = [1 << i for i in range(self.size)]
        for i in sorted(range(self.size), key=lambda i: self.lengths[i]):
            acc = down[i]
            for j in self._covers_down[i]:
                acc |= down[j]
            down[i] = acc
        self._up_reach = up
        self._down_reach = down

    def leq(self, i: int, j: int) -> bool:
        """Bruhat order via reachability in the cover DAG."""
        if self._up_reach is None:
            self._compute_reach()
        return bool(self._up_reach[i] >> j & 1)

    def upper_set_bits(self, i: int) -> int:
        if self._up_reach is None:
            self._compute_reach()
        return self._up_reach[i]

    def lower_set_bits(self, i: int) -> int:
        if self._up_reach is None:
            self._compute_reach()
        return self._down_reach[i]

    def interval_bits(self, a: int, b: int) -> int:
        return self.upper_set_bits(a) & self.lower_set_bits(b)

    @staticmethod
    def _iter_bits(bits: int):
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def interval(self, a: int, b: int) -> IntervalPoset:
        if not self.leq(a, b):
            raise EmptyIntervalError("lower endpoint is not below upper endpoint")
        bits = self.interval_bits(a, b)
        idxs = sorted(self._iter_bits(bits), key=lambda i: (self.lengths[i], self.words[i]))
        pos = {i: p for p, i in enumerate(idxs)}
        base = self.lengths[a]
        ranks = tuple(self.lengths[i] - base for i in idxs)
        up: List[Tuple[int, ...]] = []
        down: List[Tuple[int, ...]] = []
        for i in idxs:
            up.append(tuple(sorted(pos[j] for j in self.lower_upper_in(i, bits, True))))
            down.append(tuple(sorted(pos[j] for j in self.lower_upper_in(i, bits, False))))
        return IntervalPoset(
            ball=self,
            elements=tuple(idxs),
            ranks=ranks,
            up=tuple(up),
            down=tuple(down),
            bottom=pos[a],
            top=pos[b],
        )

    def lower_upper_in(self, i: int, bits: int, upward: bool):
        if self._covers_up is None:
            self._compute_covers()
        src = self._covers_up[i] if upward else self._covers_down[i]
        return [j for j in src if bits >> j & 1]

    # -- independent order test (lifting property recursion) ---------------

    def leq_lifting(self, a: Elt, b: Elt, _memo=None) -> bool:
        """Subword-free Bruhat test by the lifting property; ball-independent."""
        spec = self.spec
        if _memo is None:
            _memo = {}
        key = (a, b)
        if key in _memo:
            return _memo[key]
        if a == b:
            return True
        la, lb = spec.length_of(a), spec.length_of(b)
        result = self._leq_lifting_rec(a, la, b, lb, _memo)
        return result

    def _leq_lifting_rec(self, a, la, b, lb, memo):
        if a == b:
            return True
        if la >= lb:
            return False
        key = (a, b)
        if key in memo:
            return memo[key]
        spec = self.spec
        s = spec.left_descents(b)[0]
        sb = spec.mul(spec.gens[s], b)
        sa = spec.mul(spec.gens[s], a)
        if spec.left_descents(a).count(s):
            res = self._leq_lifting_rec(sa, la - 1, sb, lb - 1, memo)
        else:
            res = self._leq_lifting_rec(a, la, sb, lb - 1, memo)
        memo[key] = res
        return res

    def leq_subword(self, a: Elt, b_word: Sequence[int]) -> bool:
        """Greedy subword test against a fixed reduced word of b."""
        spec = self.spec
        v = a
        lv = spec.length_of(a)
        for s in reversed(tuple(b_word)):
            vs = spec.mul(v, spec.gens[s])
            lvs = spec.length_of(vs)
            if lvs < lv:
                v, lv = vs, lvs
        return v == spec.identity

    # -- interval-level helpers ---------------------------------------------

    def is_full_interval(self, a: int, b: int) -> bool:
        if not self.leq(a, b):
            return False
        bits = self.interval_bits(a, b)
        for u in self.upper_covers(a):
            if not (bits >> u & 1):
                return False
        for c in self.lower_covers(b):
            if not (bits >> c & 1):
                return False
        return True

    def is_dihedral(self, a: int, b: int) -> bool:
        """True iff [a,b] is an interval of a dihedral group (two atoms)."""
        if not self.leq(a, b):
            raise EmptyIntervalError("not a valid interval")
        if self.lengths[b] - self.lengths[a] <= 1:
            return True
        bits = self.interval_bits(a, b)
        atoms = sum(1 for u in self.upper_covers(a) if bits >> u & 1)
        return atoms == 2

    def dihedral_upper_set(self, b: int, min_codim: int = 2) -> List[int]:
        """All z <= b with [z,b] dihedral and length difference >= min_codim."""
        out = []
        lb = self.lengths[b]
        bits = self.lower_set_bits(b)
        for z in self._iter_bits(bits):
            if lb - self.lengths[z] >= min_codim and self.is_dihedral(z, b):
                out.append(z)
        return out

    def dihedral_lower_set(self, a: int, min_codim: int = 2) -> List[int]:
        """All z >= a in the ball with [a,z] dihedral and length diff >= min_codim.

        Complete only up to the ball boundary; callers must bound lengths.
        """
        out = []
        la = self.lengths[a]
        bits = self.upper_set_bits(a)
        for z in self._iter_bits(bits):
            if self.lengths[z] - la >= min_codim and self.is_dihedral(a, z):
                out.append(z)
        return out

    def crown_count(self, a: int, b: int) -> int:
        """Number of dihedral length-3 subintervals of [a, b]."""
        bits = self.interval_bits(a, b)
        idxs = list(self._iter_bits(bits))
        count = 0
        for u in idxs:
            for v in idxs:
                if self.lengths[v] - self.lengths[u] == 3 and self.leq(u, v):
                    if self.is_dihedral(u, v):
                        count += 1
        return count

    # -- Kazhdan-Lusztig ------------------------------------------------------

    def kl(self, a: int, b: int) -> QPoly:
        """Kazhdan-Lusztig polynomial P_{a,b} by the classical recursion."""
        if self.lengths[b] > self.length_bound:
            raise CapacityError("upper endpoint outside ball")
        return self._kl(a, b)

    def _kl(self, a: int, b: int) -> QPoly:
        if not self.leq(a, b):
            return ZERO
        diff = self.lengths[b] - self.lengths[a]
        if diff <= 2:
            return ONE
        key = (a, b)
        cached = self._kl_cache.get(key)
        if cached is not None:
            return cached
        spec = self.spec
        s = spec.left_descents(self.elts[b])[0]
        v = self.index_of(spec.mul(spec.gens[s], self.elts[b]))
        sa_elt = spec.mul(spec.gens[s], self.elts[a])
        sa = self.index_of(sa_elt)
        sa_down = self.lengths[sa] < self.lengths[a]
        c = 1 if sa_down else 0
        res = self._kl(sa, v).shift(1 - c) + self._kl(a, v).shift(c)
        lb = self.lengths[b]
        for z in self._iter_bits(self.interval_bits(a, v)):
            sz = self.index_of(spec.mul(spec.gens[s], self.elts[z]))
            if self.lengths[sz] < self.lengths[z]:
                m = self.mu(z, v)
                if m:
                    res = res - self._kl(a, z).scale(m).shift((lb - self.lengths[z]) // 2)
        if res.coeff(0) != 1:
            raise CoxeterError("KL recursion produced non-monic constant term")
        if res.degree * 2 >= diff:
            raise CoxeterError("KL recursion exceeded the degree bound")
        self._kl_cache[key] = res
        return res

    def mu(self, a: int, b: int) -> int:
        diff = self.lengths[b] - self.lengths[a]
        if diff <= 0 or diff % 2 == 0:
            return 0
        return self._kl(a, b).coeff((diff - 1) // 2)

    # -- sanity sweeps ---------------------------------------------------------

    def be_monotonicity_check(self, y: int) -> bool:
        """Bjorner-Ekedahl: f_i <= f_j for 0 <= i < j <= l(y)-i on [id, y]."""
        lc = self.interval(0, y).lc_sequence()
        l = len(lc) - 1
        for i in range(l + 1):
            for j in range(i + 1, l - i + 1):
                if lc[i] > lc[j]:
                    return False
        return True

    def random_pair_order_agreement(self, n_pairs: int, seed: int = 0) -> bool:
        """Cover-DAG order vs the subword test on random pairs."""
        rng = random.Random(seed)
        memo: Dict[Tuple[Elt, Elt], bool] = {}
        for _ in range(n_pairs):
            i = rng.randrange(self.size)
            j = rng.randrange(self.size)
            dag = self.leq(i, j)
            sub = self.leq_subword(self.elts[i], self.words[j])
            if dag != sub:
                return False
            lift = self.leq_lifting(self.elts[i], self.elts[j], memo)
            if dag != lift:
                return False
        return True

    # -- translations and diagram automorphisms -------------------------------

    def apply_diagram_auto(self, perm: Sequence[int], i: int) -> int:
        word = tuple(perm[s] for s in self.words[i])
        return self.index_of(self.spec.from_word(word))

    def inverse_index(self, i: int) -> int:
        return self.index_of(self.spec.inverse(self.elts[i]))

    def generic_automorphism_images(self, i: int) -> List[int]:
        """Orbit of i under diagram automorphisms and inversion."""
        out = set()
        for perm in self.spec.diagram_automorphisms():
            j = self.apply_diagram_auto(perm, i)
            out.add(j)
            out.add(self.inverse_index(j))
        return sorted(out)

    def alcove_translation(self, a: int, b: int):
        """Coweight lambda with A_a + lambda = A_b, or None.

        Returns the translation as a Fraction vector in coroot coordinates
        only when it lies in the coweight lattice and the alcoves match as
        vertex sets.
        """
        spec = self.spec
        ca, cb = self.cens[a], self.cens[b]
        lam = [Fraction(cb[k] - ca[k], spec.cen_scale) for k in range(spec.rank)]
        for i in range(spec.rank):
            val = sum(spec.cartan[i][j] * lam[j] for j in range(spec.rank))
            if Fraction(val).denominator != 1:
                return None
        va = sorted(spec.alcove_vertices(self.elts[a]))
        vb = sorted(spec.alcove_vertices(self.elts[b]))
        shift = [lam[k] * spec.vertex_scale for k in range(spec.rank)]
        if any(f.denominator != 1 for f in shift):
            return None
        shifted = sorted(tuple(p[k] + int(shift[k]) for k in range(spec.rank)) for p in va)
        if shifted != vb:
            return None
        return tuple(lam)


# -- persistence ---------------------------------------------------------------

_MAGIC = b"BALLCACHE"


def save_ball(ball: Ball, path: str) -> None:
    payload = {
        "version": Ball.FORMAT_VERSION,
        "family": ball.spec.family,
        "rank": ball.spec.rank,
        "length_bound": ball.length_bound,
        "elts": ball.elts,
        "lengths": ball.lengths,
        "words": ball.words,
    }
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        pickle.dump(payload, fh, protocol=4)


def load_ball(path: str) -> Ball:
    with open(path, "rb") as fh:
        magic = fh.read(len(_MAGIC))
        if magic != _MAGIC:
            raise CoxeterError("not a ball cache file: %s" % path)
        payload = pickle.load(fh)
    if payload.get("version") != Ball.FORMAT_VERSION:
        raise CoxeterError("unsupported ball cache version")
    spec = GroupSpec(payload["family"], payload["rank"])
    ball = Ball.__new__(Ball)
    ball.spec = spec
    ball.length_bound = payload["length_bound"]
    ball.elts = payload["elts"]
    ball.index = {e: i for i, e in enumerate(ball.elts)}
    ball.lengths = payload["lengths"]
    ball.words = payload["words"]
    ball.cens = [spec.cen(e) for e in ball.elts]
    ball.size = len(ball.elts)
    ball._covers_down = None
    ball._covers_up = None
    ball._up_reach = None
    ball._down_reach = None
    ball._kl_cache = {}
    ball._by_length = {}
    for i, l in enumerate(ball.lengths):
        ball._by_length.setdefault(l, []).append(i)
    return ball


def cache_path(spec: GroupSpec, length_bound: int, cache_dir: Optional[str] = None) -> str:
    cache_dir = cache_dir or os.environ.get("BRUHAT_CACHE_DIR", ".")
    return os.path.join(cache_dir, "ball_%s%d_L%d.bin" % (spec.family, spec.rank, length_bound))


def build_ball(family: str, rank: int, length_bound: int, **kw) -> Ball:
    return Ball(GroupSpec(family, rank), length_bound, **kw)

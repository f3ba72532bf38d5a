"""Slow reference evaluation of the derivation-type identities.

Uses only element arithmetic (``RingElement`` and bimodule actions through
the construction rules) and generator-image evaluation of maps, never the
cached tables or the compiled kernels. It exists to confirm verdicts: a
reported witness must really violate the identity, and a pass must survive
full re-evaluation.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .finring import Bimodule, FinRing, RingElement
from .graded import GradedRing
from .maps import AdditiveMap, BiadditiveMap

KINDS = (
    "derivation",
    "jordan-derivation",
    "superderivation-deg0",
    "superderivation-deg1",
    "jordan-superderivation-deg0",
    "jordan-superderivation-deg1",
    "jordan-biderivation",
    "jordan-super-biderivation",
)


def _degrees(G: GradedRing, x: RingElement) -> list[int]:
    """Degrees ``x`` may be given as a homogeneous element (zero has both)."""
    if x.is_zero():
        return [0, 1]
    d = G.degree_of(x)
    return [] if d is None else [d]


def _superprod(x: RingElement, a: int, y: RingElement, b: int) -> RingElement:
    return x * y - y * x if a and b else x * y + y * x


class Reference:
    """Reference evaluator for one map class on one ring (plus module or grading)."""

    def __init__(self, kind: str, ring: FinRing, module: Bimodule | None = None, graded: GradedRing | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown identity kind {kind!r}")
        if "super" in kind and graded is None:
            raise ValueError(f"{kind} needs a grading")
        self.kind, self.ring, self.module, self.graded = kind, ring, module, graded
        self.elements = list(ring)

    # -- evaluation helpers

    def _d(self, d: AdditiveMap, x: RingElement):
        img = d.image(x.coords)
        return self.module.carrier.element(img) if self.module else self.ring.element(img)

    def _B(self, B: BiadditiveMap, x: RingElement, y: RingElement) -> RingElement:
        return self.ring.element(B.image(x.coords, y.coords))

    def _mod_jordan(self, r: RingElement, m):
        M = self.module
        return M.act_left(r, m) + M.act_right(m, r)

    # -- identities at a point

    def holds_at(self, obj, witness: tuple) -> bool:
        pts = [self.ring.element(c) for c in witness]
        k = self.kind
        if k in ("derivation", "jordan-derivation"):
            x, y = pts
            d = lambda z: self._d(obj, z)  # noqa: E731
            if self.module is None:
                if k == "derivation":
                    return d(x * y) == d(x) * y + x * d(y)
                return d(x * y + y * x) == (d(x) * y + y * d(x)) + (x * d(y) + d(y) * x)
            M = self.module
            if k == "derivation":
                return d(x * y) == M.act_right(d(x), y) + M.act_left(x, d(y))
            return d(x * y + y * x) == self._mod_jordan(y, d(x)) + self._mod_jordan(x, d(y))
        if k.startswith("superderivation") or k.startswith("jordan-superderivation"):
            deg = int(k[-1])
            x, y = pts
            G = self.graded
            for a in _degrees(G, x):
                for b in _degrees(G, y):
                    sign = -1 if (deg * a) % 2 else 1
                    dx, dy = self._d(obj, x), self._d(obj, y)
                    if k.startswith("jordan"):
                        lhs = self._d(obj, _superprod(x, a, y, b))
                        rhs = _superprod(dx, (a + deg) % 2, y, b) + sign * _superprod(x, a, dy, (b + deg) % 2)
                    else:
                        lhs = self._d(obj, x * y)
                        rhs = dx * y + sign * (x * dy)
                    if lhs != rhs:
                        return False
            return True
        if k == "jordan-biderivation":
            x, y, z = pts
            J = lambda u, v: u * v + v * u  # noqa: E731
            B = lambda u, v: self._B(obj, u, v)  # noqa: E731
            return B(J(x, y), z) == J(B(x, z), y) + J(x, B(y, z)) and B(x, J(y, z)) == J(B(x, y), z) + J(y, B(x, z))
        # jordan-super-biderivation
        x, y, z = pts
        G = self.graded
        B = lambda u, v: self._B(obj, u, v)  # noqa: E731
        for a in _degrees(G, x):
            for b in _degrees(G, y):
                for c in _degrees(G, z):
                    s1 = -1 if (a * b) % 2 else 1
                    left = B(x, _superprod(y, b, z, c))
                    right = _superprod(B(x, y), (a + b) % 2, z, c) + s1 * _superprod(y, b, B(x, z), (a + c) % 2)
                    if left != right:
                        return False
                    s2 = -1 if (b * c) % 2 else 1
                    left = B(_superprod(x, a, y, b), z)
                    right = _superprod(x, a, B(y, z), (b + c) % 2) + s2 * _superprod(B(x, z), (a + c) % 2, y, b)
                    if left != right:
                        return False
        return True

    # -- whole-domain sweep

    def _domain(self) -> Iterator[tuple]:
        arity = 3 if "biderivation" in self.kind else 2
        pool = self.elements
        if "super" in self.kind:
            pool = [x for x in pool if _degrees(self.graded, x)]
        for combo in product(pool, repeat=arity):
            yield tuple(x.coords for x in combo)

    def first_failure(self, obj) -> tuple | None:
        for w in self._domain():
            if not self.holds_at(obj, w):
                return w
        return None

    def graded_ok(self, obj) -> bool:
        """Degree-shift (or graded block) condition, checked on homogeneous elements."""
        if "super" not in self.kind:
            return True
        G = self.graded
        homog = [x for x in self.elements if not x.is_zero() and G.degree_of(x) is not None]
        if "biderivation" in self.kind:
            for x, y in product(homog, repeat=2):
                v = self._B(obj, x, y)
                if not v.is_zero() and G.degree_of(v) != (G.degree_of(x) + G.degree_of(y)) % 2:
                    return False
            return True
        deg = int(self.kind[-1])
        for x in homog:
            v = self._d(obj, x)
            if not v.is_zero() and G.degree_of(v) != (G.degree_of(x) + deg) % 2:
                return False
        return True

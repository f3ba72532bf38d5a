"""Z2-gradings by coordinate masks, products on homogeneous elements, and sigma."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .abelian import GroupHom
from .finring import (
    FinRing,
    RingElement,
    RingMap,
    RingMismatch,
    TriangularRing,
    TrivialExtension,
    UpperTriangularRing,
)
from .verdict import AxiomViolation, Verdict


class GradingError(ValueError):
    pass


class GradedRing:
    """A ring whose carrier splits as even coordinates (+) odd coordinates.

    ``odd_mask[k]`` marks carrier factor ``k`` as odd. The grading must be
    multiplicative (``A_i A_j`` inside ``A_{i+j}``) with the identity even;
    ``validate`` checks this exhaustively.
    """

    def __init__(self, ring: FinRing, odd_mask, validate: bool = False):
        self.ring = ring
        self.odd_mask = np.asarray(odd_mask, dtype=bool).reshape(ring.carrier.rank)
        if validate:
            verdict = self.validate()
            if not verdict:
                raise AxiomViolation(verdict)

    def __repr__(self) -> str:
        return f"GradedRing({self.ring.name}, |A0|={len(self.even)}, |A1|={len(self.odd)})"

    @cached_property
    def even(self) -> np.ndarray:
        """Indices of even elements (odd coordinates all zero)."""
        c = self.ring.carrier.coords_table()
        return np.flatnonzero(~c[:, self.odd_mask].any(axis=1))

    @cached_property
    def odd(self) -> np.ndarray:
        c = self.ring.carrier.coords_table()
        return np.flatnonzero(~c[:, ~self.odd_mask].any(axis=1))

    def part(self, degree: int) -> np.ndarray:
        return self.odd if degree % 2 else self.even

    @cached_property
    def degree_table(self) -> np.ndarray:
        """Per element: 0 even, 1 odd, 2 for zero (both), -1 inhomogeneous."""
        n = self.ring.order
        out = np.full(n, -1, dtype=np.int64)
        out[self.even] = 0
        out[self.odd] = 1
        out[np.intersect1d(self.even, self.odd)] = 2
        return out

    def degree_of(self, x: RingElement) -> int | None:
        """0 or 1 for homogeneous nonzero ``x``; 0 for zero; ``None`` if inhomogeneous."""
        coords = np.asarray(x.coords)
        odd_part = coords[self.odd_mask].any()
        even_part = coords[~self.odd_mask].any()
        if odd_part and even_part:
            return None
        return 1 if odd_part else 0

    def homogeneous(self, x: RingElement, degree: int) -> "HomogeneousElement":
        return HomogeneousElement(self, x, degree)

    def super_table(self, a: int, b: int) -> np.ndarray:
        """Table of the superproduct for operands of degrees ``a`` and ``b``."""
        if (a % 2) and (b % 2):
            return self.ring.commutator_table
        return self.ring.jordan_table

    def validate(self) -> Verdict:
        ring = self.ring
        c = ring.carrier.coords_table()
        if np.asarray(ring.one_coords)[self.odd_mask].any():
            return Verdict.failed("1 in A0", (ring.one_coords,))
        mul = ring.mul_table
        for a in (0, 1):
            for b in (0, 1):
                target = self.part(a + b)
                prods = mul[np.ix_(self.part(a), self.part(b))]
                bad = np.argwhere(~np.isin(prods, target))
                if len(bad):
                    i, j = bad[0]
                    return Verdict.failed(f"A{a}A{b} in A{(a + b) % 2}", (c[self.part(a)[i]], c[self.part(b)[j]]))
        return Verdict.passed("grading", f"|A0|={len(self.even)}, |A1|={len(self.odd)}")

    def sigma(self) -> RingMap:
        return sigma(self)


@dataclass(frozen=True)
class HomogeneousElement:
    graded: GradedRing
    elem: RingElement
    degree: int

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise GradingError("degree must be 0 or 1")
        if self.elem.ring != self.graded.ring:
            raise RingMismatch("element is not in the graded ring")
        coords = np.asarray(self.elem.coords)
        wrong = coords[~self.graded.odd_mask] if self.degree else coords[self.graded.odd_mask]
        if wrong.any():
            raise GradingError(f"{self.elem!r} is not homogeneous of degree {self.degree}")


def grade_trivial_extension(T: TrivialExtension) -> GradedRing:
    """``A0 = {(r, 0)}``, ``A1 = {(0, m)}``."""
    return GradedRing(T.ring, ~T.ring_mask)


def grade_triangular(T: TriangularRing) -> GradedRing:
    """Diagonal even, corner odd (the grading carried over from ``T(R x S, M)``)."""
    return GradedRing(T.ring, T.corner_mask)


def grade_upper_triangular(T: UpperTriangularRing) -> GradedRing:
    """First-row off-diagonal entries odd, matching ``T_n(R) = [[R, R^(n-1)], [0, T_{n-1}(R)]]``."""
    return GradedRing(T.ring, T.first_row_mask)


def grade(ring: FinRing, odd_mask=None) -> GradedRing:
    """Canonical grading of a constructed ring; explicit masks are validated."""
    if odd_mask is not None:
        return GradedRing(ring, odd_mask, validate=True)
    c = ring.construction
    if isinstance(c, TrivialExtension):
        return grade_trivial_extension(c)
    if isinstance(c, TriangularRing):
        return grade_triangular(c)
    if isinstance(c, UpperTriangularRing) and c.n >= 2:
        return grade_upper_triangular(c)
    return GradedRing(ring, np.zeros(ring.carrier.rank, dtype=bool))


def jordan_product(x: RingElement, y: RingElement) -> RingElement:
    return x * y + y * x


def commutator(x: RingElement, y: RingElement) -> RingElement:
    return x * y - y * x


def superproduct(x: HomogeneousElement, y: HomogeneousElement) -> RingElement:
    """``xy + (-1)^{|x||y|} yx``; defined only on homogeneous elements."""
    if not isinstance(x, HomogeneousElement) or not isinstance(y, HomogeneousElement):
        raise GradingError("the superproduct is only defined for homogeneous elements")
    if x.graded.ring != y.graded.ring:
        raise RingMismatch("operands live in different rings")
    if x.degree and y.degree:
        return commutator(x.elem, y.elem)
    return jordan_product(x.elem, y.elem)


def sigma(G: GradedRing) -> RingMap:
    """``a0 + a1 -> a0 - a1``."""
    k = G.ring.carrier.rank
    images = [[0] * k for _ in range(k)]
    for i in range(k):
        images[i][i] = -1 if G.odd_mask[i] else 1
    return RingMap(G.ring, G.ring, GroupHom(G.ring.carrier, G.ring.carrier, tuple(map(tuple, images))))

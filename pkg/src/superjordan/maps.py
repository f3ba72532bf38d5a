"""Additive and biadditive maps on ring carriers, stored by generator images."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from typing import Sequence

import numpy as np

from .abelian import (
    TABLE_DTYPE,
    AbelianGroup,
    BoundExceeded,
    GroupHom,
    GroupMismatch,
    LIMITS,
    OrderConstraintError,
    decode_images,
    encode_images,
)
from .finring import RingElement
from .graded import GradedRing, GradingError


def _carrier(obj) -> AbelianGroup:
    return obj if isinstance(obj, AbelianGroup) else obj.carrier


@dataclass(frozen=True)
class AdditiveMap:
    hom: GroupHom

    @property
    def src(self) -> AbelianGroup:
        return self.hom.src

    @property
    def dst(self) -> AbelianGroup:
        return self.hom.dst

    @property
    def images(self) -> tuple[tuple[int, ...], ...]:
        return self.hom.images

    @property
    def table(self) -> np.ndarray:
        return self.hom.table

    def image(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.hom(self.src.element(coords)).coords

    def __call__(self, x: RingElement) -> tuple[int, ...]:
        return self.image(x.coords)

    def __add__(self, other: "AdditiveMap") -> "AdditiveMap":
        return AdditiveMap(self.hom + other.hom)

    def __neg__(self) -> "AdditiveMap":
        return AdditiveMap(-self.hom)

    def compose(self, inner: "AdditiveMap | GroupHom") -> "AdditiveMap":
        inner_hom = inner.hom if isinstance(inner, AdditiveMap) else inner
        return AdditiveMap(self.hom.compose(inner_hom))

    def then(self, outer: "AdditiveMap | GroupHom") -> "AdditiveMap":
        outer_hom = outer.hom if isinstance(outer, AdditiveMap) else outer
        return AdditiveMap(outer_hom.compose(self.hom))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.images)


def map_from_generator_images(src, dst, images) -> AdditiveMap:
    """Additive map sending source generator ``i`` to ``images[i]``.

    Raises ``OrderConstraintError`` when an image is not killed by the order
    of its generator (such a map would not be well defined).
    """
    return AdditiveMap(GroupHom(_carrier(src), _carrier(dst), tuple(tuple(row) for row in images)))


def zero_map(src, dst) -> AdditiveMap:
    return AdditiveMap(GroupHom.zero(_carrier(src), _carrier(dst)))


def identity_map(src) -> AdditiveMap:
    return AdditiveMap(GroupHom.identity(_carrier(src)))


@dataclass(frozen=True)
class GradedMap:
    """An additive endomorphism of a graded ring shifting degrees by ``degree``."""

    map: AdditiveMap
    degree: int
    graded: GradedRing

    @property
    def table(self) -> np.ndarray:
        return self.map.table

    @property
    def images(self):
        return self.map.images

    def image(self, coords) -> tuple[int, ...]:
        return self.map.image(coords)


def block_violation(table: np.ndarray, degree: int, G: GradedRing) -> int | None:
    """Index of the first homogeneous element sent outside ``A_{j+degree}``, or ``None``."""
    for j in (0, 1):
        part = G.part(j)
        bad = np.flatnonzero(~np.isin(table[part], G.part(j + degree)))
        if len(bad):
            return int(part[bad[0]])
    return None


def graded_map(d: AdditiveMap, degree: int, G: GradedRing) -> GradedMap:
    """Type ``d`` as a degree-``degree`` map; raises ``GradingError`` with a witness otherwise."""
    if degree not in (0, 1):
        raise GradingError("degree must be 0 or 1")
    if d.src != G.ring.carrier or d.dst != G.ring.carrier:
        raise GroupMismatch("map is not an endomorphism of the graded ring's carrier")
    bad = block_violation(d.table, degree, G)
    if bad is not None:
        w = G.ring.carrier.element_at(bad).coords
        err = GradingError(f"map does not shift degrees by {degree}: {w} lands outside the expected part")
        err.witness = w
        raise err
    return GradedMap(d, degree, G)


def split_by_degree(d: AdditiveMap, G: GradedRing) -> tuple[GradedMap, GradedMap]:
    """``d = d0 + d1`` with ``d0`` degree-preserving and ``d1`` degree-swapping."""
    mat = d.hom.matrix
    parts = []
    for degree in (0, 1):
        masked = np.where(graded_hom_mask(G, degree), mat, 0)
        parts.append(GradedMap(AdditiveMap(GroupHom(d.src, d.dst, tuple(map(tuple, masked.tolist())))), degree, G))
    return parts[0], parts[1]


# ------------------------------------------------------------------ biadditive maps


def _biadditive_radix(left: AbelianGroup, right: AbelianGroup, dst: AbelianGroup, mask=None):
    shape = (left.rank, right.rank, dst.rank)
    if mask is None:
        mask = np.ones(shape, dtype=bool)
    mask = np.asarray(mask, dtype=bool).reshape(shape)
    radix = np.ones(shape, dtype=np.int64)
    step = np.zeros(shape, dtype=np.int64)
    for i, n in enumerate(left.factors):
        for j, m in enumerate(right.factors):
            for k, p in enumerate(dst.factors):
                if mask[i, j, k]:
                    g = gcd(n, m, p)
                    radix[i, j, k], step[i, j, k] = g, p // g
    return radix.ravel(), step.ravel()


@dataclass(frozen=True)
class BiadditiveMap:
    """``B(a, b) = sum_ij a_i b_j images[i][j]`` for generator images ``images[i][j]``."""

    left: AbelianGroup
    right: AbelianGroup
    dst: AbelianGroup
    images: tuple

    def __post_init__(self):
        arr = np.asarray(self.images, dtype=np.int64).reshape(self.left.rank, self.right.rank, self.dst.rank)
        arr = arr % self.dst.moduli if self.dst.rank else arr
        for i, n in enumerate(self.left.factors):
            for j, m in enumerate(self.right.factors):
                for k, p in enumerate(self.dst.factors):
                    if (gcd(n, m) * int(arr[i, j, k])) % p:
                        raise OrderConstraintError(
                            f"image of generator pair ({i},{j}) has coefficient {int(arr[i, j, k])} in Z{p}, "
                            f"not killed by gcd({n},{m})"
                        )
        object.__setattr__(self, "images", tuple(tuple(tuple(int(v) for v in cell) for cell in row) for row in arr))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64).reshape(self.left.rank, self.right.rank, self.dst.rank)

    @cached_property
    def table(self) -> np.ndarray:
        return biadditive_tables(self.left, self.right, self.dst, self.array[None])[0]

    def image(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        v = np.einsum("i,j,ijk->k", np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), self.array)
        return self.dst.element(v).coords

    def __call__(self, x: RingElement, y: RingElement) -> tuple[int, ...]:
        return self.image(x.coords, y.coords)

    def with_image(self, i: int, j: int, value: Sequence[int]) -> "BiadditiveMap":
        arr = self.array.copy()
        arr[i, j] = value
        return BiadditiveMap(self.left, self.right, self.dst, arr.tolist())

    def is_zero(self) -> bool:
        return not self.array.any()


def biadditive_tables(left: AbelianGroup, right: AbelianGroup, dst: AbelianGroup, arrays: np.ndarray) -> np.ndarray:
    """Index tables ``(n, |left|, |right|)`` for a stack of image arrays ``(n, kl, kr, kd)``."""
    a = left.coords_table()
    b = right.coords_table()
    vals = np.einsum("xi,yj,nijk->nxyk", a, b, arrays)
    if dst.rank:
        vals = vals % dst.moduli
    return (vals @ dst.strides).astype(TABLE_DTYPE)


def biadditive_from_images(left, right, dst, images) -> BiadditiveMap:
    return BiadditiveMap(_carrier(left), _carrier(right), _carrier(dst), images)


def zero_biadditive(left, right, dst) -> BiadditiveMap:
    l, r, d = _carrier(left), _carrier(right), _carrier(dst)
    return BiadditiveMap(l, r, d, np.zeros((l.rank, r.rank, d.rank), dtype=np.int64).tolist())


def graded_block_violation(B: BiadditiveMap, G: GradedRing) -> tuple[int, int] | None:
    """First homogeneous pair with ``B(A_i, A_j)`` outside ``A_{i+j}``."""
    t = B.table
    for i in (0, 1):
        for j in (0, 1):
            xs, ys = G.part(i), G.part(j)
            bad = np.argwhere(~np.isin(t[np.ix_(xs, ys)], G.part(i + j)))
            if len(bad):
                return int(xs[bad[0][0]]), int(ys[bad[0][1]])
    return None


class BiadditiveSpace:
    """Biadditive maps whose image array vanishes outside ``mask``; indexed like ``HomSpace``."""

    def __init__(self, left: AbelianGroup, right: AbelianGroup, dst: AbelianGroup, mask=None):
        self.left, self.right, self.dst = left, right, dst
        self.radix, self.step = _biadditive_radix(left, right, dst, mask)
        self.count = int(prod(int(r) for r in self.radix))

    def check_bound(self, bound: int | None = None) -> None:
        bound = LIMITS.candidates if bound is None else bound
        if self.count > bound:
            raise BoundExceeded(f"{self.count} biadditive candidates exceed bound {bound}")

    def arrays(self, start: int, stop: int) -> np.ndarray:
        flat = decode_images(start, stop, self.radix, self.step)
        return flat.reshape(len(flat), self.left.rank, self.right.rank, self.dst.rank)

    def tables(self, start: int, stop: int) -> np.ndarray:
        return biadditive_tables(self.left, self.right, self.dst, self.arrays(start, stop))

    def index_of(self, images) -> int:
        return encode_images(images, self.radix, self.step)

    def map(self, index: int) -> BiadditiveMap:
        return BiadditiveMap(self.left, self.right, self.dst, self.arrays(index, index + 1)[0].tolist())


def graded_biadditive_space(G: GradedRing) -> BiadditiveSpace:
    """Graded block constraint applied at generation: generator pair (i, j) maps into part |i|+|j|."""
    odd = G.odd_mask
    mask = (odd[:, None, None] ^ odd[None, :, None]) == odd[None, None, :]
    g = G.ring.carrier
    return BiadditiveSpace(g, g, g, mask)


def graded_hom_mask(G: GradedRing, degree: int) -> np.ndarray:
    """Generator-image mask for maps shifting degree by ``degree``."""
    odd = G.odd_mask
    return (odd[:, None] ^ bool(degree % 2)) == odd[None, :]


# ------------------------------------------------------------------ inner derivations


def inner_derivation(a: RingElement) -> AdditiveMap:
    """``x -> [x, a] = xa - ax``."""
    ring = a.ring
    rows = []
    for g in ring.carrier.generators():
        x = RingElement(ring, g.coords)
        rows.append((x * a - a * x).coords)
    return AdditiveMap(GroupHom(ring.carrier, ring.carrier, tuple(rows)))

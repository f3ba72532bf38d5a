"""Finite abelian groups in cyclic-factor form and their homomorphisms.

A group is ``Z_{n_1} x ... x Z_{n_k}`` kept exactly in the factor order it
was built with. Elements are indexed in mixed radix with the first factor
most significant, so index order is the lexicographic order of coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Iterator, Sequence

import numpy as np

from . import kernels

TABLE_DTYPE = np.int32

DEFAULT_ELEMENT_BOUND = 4096
DEFAULT_CANDIDATE_BOUND = 1 << 20


@dataclass
class Limits:
    """Process-wide size gates for exhaustive work (CLI ``--bound`` overrides ``candidates``)."""

    elements: int = DEFAULT_ELEMENT_BOUND
    candidates: int = DEFAULT_CANDIDATE_BOUND


LIMITS = Limits()


class BoundExceeded(ValueError):
    """An instance is too large for exhaustive treatment."""


class GroupMismatch(ValueError):
    pass


class OrderConstraintError(ValueError):
    """Generator images violate ``n_i * image == 0``."""


@dataclass(frozen=True, eq=True)
class AbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if any(n < 1 for n in factors):
            raise ValueError(f"cyclic factors must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        if not self.factors:
            return "AbelianGroup(trivial)"
        return "AbelianGroup(" + " x ".join(f"Z{n}" for n in self.factors) + ")"

    @cached_property
    def strides(self) -> np.ndarray:
        out = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            out[i] = out[i + 1] * self.factors[i + 1]
        return out

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    def coords_table(self, bound: int | None = None) -> np.ndarray:
        """All elements as an ``(order, rank)`` coordinate array in index order."""
        bound = LIMITS.elements if bound is None else bound
        if self.order > bound:
            raise BoundExceeded(f"{self!r} has {self.order} elements, bound is {bound}")
        return self._coords

    @cached_property
    def _coords(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        if self.rank == 0:
            return np.zeros((self.order, 0), dtype=np.int64)
        return (idx[:, None] // self.strides[None, :]) % self.moduli[None, :]

    def reduce(self, coords) -> np.ndarray:
        arr = np.asarray(coords, dtype=np.int64)
        if self.rank == 0:
            return arr
        return np.mod(arr, self.moduli)

    def index_of(self, coords) -> np.ndarray | int:
        arr = self.reduce(coords)
        out = arr @ self.strides if self.rank else np.zeros(arr.shape[:-1], dtype=np.int64)
        return int(out) if np.ndim(out) == 0 else out

    def element(self, coords: Sequence[int]) -> "GroupElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise GroupMismatch(f"{self!r} expects {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, tuple(int(c) % n for c, n in zip(coords, self.factors)))

    def element_at(self, index: int) -> "GroupElement":
        return GroupElement(self, tuple(int(c) for c in self._coords[index]))

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        return [self.element([1 if j == i else 0 for j in range(self.rank)]) for i in range(self.rank)]

    def __iter__(self) -> Iterator["GroupElement"]:
        for coords in itertools.product(*(range(n) for n in self.factors)):
            yield GroupElement(self, coords)

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coords_table()
        n = self.order
        out = np.empty((n, n), dtype=TABLE_DTYPE)
        for i in range(n):
            out[i] = self.index_of(c[i][None, :] + c)
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.asarray(self.index_of(-self.coords_table()), dtype=TABLE_DTYPE).reshape(self.order)


def group_direct_sum(g1: AbelianGroup, g2: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(g1.factors + g2.factors)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple[int, ...]

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatch("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, tuple((a + b) % n for a, b, n in zip(self.coords, other.coords, self.group.factors)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple((-a) % n for a, n in zip(self.coords, self.group.factors)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple((k * a) % n for a, n in zip(self.coords, self.group.factors)))

    @property
    def index(self) -> int:
        return int(sum(c * int(s) for c, s in zip(self.coords, self.group.strides)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return f"{self.coords}"


def _allowed_step(n_src: int, n_dst: int) -> tuple[int, int]:
    """(number of admissible images, spacing) for a generator of order ``n_src`` into ``Z_{n_dst}``."""
    g = gcd(n_src, n_dst)
    return g, n_dst // g


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by generator images.

    ``images[i][j]`` is the coefficient of destination factor ``j`` in the
    image of source generator ``i``.
    """

    src: AbelianGroup
    dst: AbelianGroup
    images: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.images:
            rows = [tuple(int(v) for v in row) for row in self.images]
        else:
            rows = [(0,) * self.dst.rank for _ in range(self.src.rank)]
        if len(rows) != self.src.rank or any(len(r) != self.dst.rank for r in rows):
            raise GroupMismatch(f"image matrix must be {self.src.rank} x {self.dst.rank}")
        reduced = tuple(tuple(v % m for v, m in zip(row, self.dst.factors)) for row in rows)
        for i, row in enumerate(reduced):
            for j, v in enumerate(row):
                if (self.src.factors[i] * v) % self.dst.factors[j]:
                    raise OrderConstraintError(
                        f"generator {i} has order {self.src.factors[i]} but its image coefficient "
                        f"{v} in Z{self.dst.factors[j]} does not vanish"
                    )
        object.__setattr__(self, "images", reduced)

    @classmethod
    def zero(cls, src: AbelianGroup, dst: AbelianGroup) -> "GroupHom":
        return cls(src, dst, tuple((0,) * dst.rank for _ in range(src.rank)))

    @classmethod
    def identity(cls, g: AbelianGroup) -> "GroupHom":
        return cls(g, g, tuple(tuple(int(i == j) for j in range(g.rank)) for i in range(g.rank)))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64).reshape(self.src.rank, self.dst.rank)

    def apply_coords(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        return self.dst.reduce(coords @ self.matrix)

    def __call__(self, x: GroupElement) -> GroupElement:
        return hom_apply(self, x)

    @cached_property
    def table(self) -> np.ndarray:
        img = self.apply_coords(self.src.coords_table())
        return np.asarray(self.dst.index_of(img), dtype=TABLE_DTYPE).reshape(self.src.order)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``."""
        if inner.dst != self.src:
            raise GroupMismatch("cannot compose: inner destination differs from outer source")
        return GroupHom(inner.src, self.dst, tuple(map(tuple, inner.matrix @ self.matrix)))

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if (other.src, other.dst) != (self.src, self.dst):
            raise GroupMismatch("cannot add homs with different source/destination")
        return GroupHom(self.src, self.dst, tuple(map(tuple, self.matrix + other.matrix)))

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.src, self.dst, tuple(map(tuple, -self.matrix)))


def hom_apply(h: GroupHom, x: GroupElement) -> GroupElement:
    if x.group != h.src:
        raise GroupMismatch(f"{x!r} is not in the source group {h.src!r}")
    out = [0] * h.dst.rank
    for i, xi in enumerate(x.coords):
        for j, v in enumerate(h.images[i]):
            out[j] += xi * v
    return h.dst.element(out)


def decode_images(start: int, stop: int, radix: np.ndarray, step: np.ndarray) -> np.ndarray:
    """Mixed-radix decode of candidate indices into flat image arrays (first entry most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.zeros((len(idx), len(radix)), dtype=np.int64)
    rem = idx.copy()
    for p in range(len(radix) - 1, -1, -1):
        digits[:, p] = rem % radix[p]
        rem //= radix[p]
    return digits * step


def encode_images(images, radix: np.ndarray, step: np.ndarray) -> int:
    flat = np.asarray(images, dtype=np.int64).ravel()
    out = 0
    for p, r in enumerate(radix):
        d = 0 if step[p] == 0 else int(flat[p]) // int(step[p])
        out = out * int(r) + d
    return out


class HomSpace:
    """All homomorphisms ``src -> dst`` whose image matrix vanishes outside ``mask``.

    Candidates are numbered ``0 .. count-1`` in lexicographic order of the
    row-major image matrix; contiguous index ranges are the unit of parallel
    work.
    """

    def __init__(self, src: AbelianGroup, dst: AbelianGroup, mask: np.ndarray | None = None):
        self.src, self.dst = src, dst
        if mask is None:
            mask = np.ones((src.rank, dst.rank), dtype=bool)
        self.mask = np.asarray(mask, dtype=bool).reshape(src.rank, dst.rank)
        radix = np.ones((src.rank, dst.rank), dtype=np.int64)
        step = np.zeros((src.rank, dst.rank), dtype=np.int64)
        for i, n in enumerate(src.factors):
            for j, m in enumerate(dst.factors):
                if self.mask[i, j]:
                    radix[i, j], step[i, j] = _allowed_step(n, m)
        self.radix = radix.ravel()
        self.step = step.ravel()
        self.count = int(prod(int(r) for r in self.radix))

    def check_bound(self, bound: int | None = None) -> None:
        bound = LIMITS.candidates if bound is None else bound
        if self.count > bound:
            raise BoundExceeded(f"{self.count} candidate maps {self.src!r} -> {self.dst!r} exceed bound {bound}")

    def matrices(self, start: int, stop: int) -> np.ndarray:
        """Image matrices for candidate indices ``[start, stop)``, shape ``(n, k_src, k_dst)``."""
        return decode_images(start, stop, self.radix, self.step).reshape(max(0, stop - start), self.src.rank, self.dst.rank)

    def index_of(self, images) -> int:
        return encode_images(images, self.radix, self.step)

    def hom(self, index: int) -> GroupHom:
        return GroupHom(self.src, self.dst, tuple(map(tuple, self.matrices(index, index + 1)[0])))

    def __iter__(self) -> Iterator[GroupHom]:
        for i in range(self.count):
            yield self.hom(i)

    @cached_property
    def _steps(self) -> tuple[np.ndarray, np.ndarray]:
        """Per source element: the element one step down its last nonzero coordinate, and that coordinate."""
        coords = self.src.coords_table()
        if self.src.rank == 0:
            return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
        nonzero = coords != 0
        gen = np.where(nonzero.any(axis=1), coords.shape[1] - 1 - np.argmax(nonzero[:, ::-1], axis=1), 0)
        prev = np.arange(len(coords)) - self.src.strides[gen] * nonzero.any(axis=1)
        return prev.astype(np.int64), gen.astype(np.int64)

    def tables(self, start: int, stop: int) -> np.ndarray:
        """Element-index tables for a block of candidates, shape ``(n, |src|)``."""
        prev, gen = self._steps
        return kernels.hom_tables(
            self.matrices(start, stop), self.src.coords_table(), prev, gen, self.dst.moduli, self.dst.strides
        ).astype(TABLE_DTYPE, copy=False)


def hom_count(src: AbelianGroup, dst: AbelianGroup) -> int:
    return prod(gcd(n, m) for n in src.factors for m in dst.factors)


def enumerate_homs(
    src: AbelianGroup,
    dst: AbelianGroup,
    start: int = 0,
    stop: int | None = None,
    bound: int | None = None,
) -> Iterator[GroupHom]:
    """Yield every homomorphism ``src -> dst`` once, in lexicographic image order.

    ``start``/``stop`` select an index range so that independent workers can
    split the stream without coordination.
    """
    space = HomSpace(src, dst)
    space.check_bound(bound)
    stop = space.count if stop is None else min(stop, space.count)
    for i in range(start, stop):
        yield space.hom(i)

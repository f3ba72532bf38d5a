"""Exhaustive enumeration of derivation-type maps on small rings.

Candidates are generator-image arrays indexed in lexicographic order (see
``HomSpace``). The index range is cut into batches; each batch is turned
into a stack of tables and filtered by the compiled identity kernels.
Batches may run on a thread pool (the kernels release the GIL), and results
are merged in index order, so output never depends on ``workers``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Generic, TypeVar

import numpy as np

from .abelian import HomSpace
from .axioms import (
    derivation_blocks,
    is_jordan_derivation,
    jordan_biderivation_blocks,
    super_biderivation_blocks,
    superderivation_blocks,
)
from .finring import FinRing, TrivialExtension
from .graded import GradedRing, grade_trivial_extension
from .maps import (
    AdditiveMap,
    BiadditiveMap,
    BiadditiveSpace,
    GradedMap,
    graded_biadditive_space,
    graded_hom_mask,
)
from .structure import (
    assemble_trivial_ext_map,
    jordan_module_hom_verdict,
    module_compat_verdict,
    module_symmetry_verdict,
)

log = logging.getLogger(__name__)

BATCH = 2048
T = TypeVar("T")


@dataclass
class Enumeration(Generic[T]):
    """Surviving maps in candidate-index order, plus the size of the search."""

    candidates: int
    indices: list[int] = field(default_factory=list)
    maps: list[T] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)


def _ranges(count: int, batch: int = BATCH) -> list[tuple[int, int]]:
    return [(s, min(s + batch, count)) for s in range(0, count, batch)]


def sample_indices(count: int, n: int, seed: int) -> np.ndarray:
    """``min(n, count)`` distinct candidate indices, sorted; reproducible from ``seed``."""
    if count >= 2**63:
        raise ValueError(f"{count} candidates are too many to sample by index")
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(count, size=min(n, count), replace=False)).astype(np.int64)


def _filter(
    count: int,
    tables_of: Callable[[int, int], np.ndarray],
    keep: Callable[[np.ndarray], np.ndarray],
    workers: int,
    indices: np.ndarray | None = None,
) -> list[int]:
    """Indices in ``[0, count)`` (or in ``indices``) whose tables pass ``keep``."""

    def run(rng):
        start, stop = rng
        if indices is None:
            alive = keep(tables_of(start, stop))
            return (np.flatnonzero(alive) + start).tolist()
        chunk = indices[start:stop]
        alive = keep(np.concatenate([tables_of(int(i), int(i) + 1) for i in chunk]))
        return chunk[alive].tolist()

    ranges = _ranges(count if indices is None else len(indices))
    if workers <= 1 or len(ranges) == 1:
        parts = map(run, ranges)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, ranges))  # map keeps submission order
    return [i for part in parts for i in part]


def _block_filter(blocks):
    def keep(Ds):
        alive = np.ones(len(Ds), dtype=np.bool_)
        for blk in blocks:
            blk.survivors(Ds, alive)
        return alive

    return keep


def _slice_filter(slice_blocks):
    def keep(tables):
        n = len(tables)
        alive = np.ones(n, dtype=np.bool_)
        for sb in slice_blocks:
            live = np.flatnonzero(alive)
            if not len(live):
                break
            nz = len(sb.zs)
            stack = tables[live][:, sb.zs, :] if sb.fix_first else tables[live][:, :, sb.zs].transpose(0, 2, 1)
            stack = np.ascontiguousarray(stack.reshape(len(live) * nz, -1))
            rep = np.ones(len(stack), dtype=np.bool_)
            sb.block.survivors(stack, rep)
            alive[live] = rep.reshape(len(live), nz).all(axis=1)
        return alive

    return keep


def _pick(space, bound, sample, seed):
    if sample is None:
        space.check_bound(bound)
        return None
    return sample_indices(space.count, sample, seed)


def _hom_enumeration(space: HomSpace, blocks, workers: int, bound: int | None, sample=None, seed=0) -> Enumeration[AdditiveMap]:
    picked = _pick(space, bound, sample, seed)
    idx = _filter(space.count, space.tables, _block_filter(blocks), workers, picked)
    return Enumeration(space.count, idx, [AdditiveMap(space.hom(i)) for i in idx])


def enumerate_derivations(
    R: FinRing, M=None, *, jordan: bool = False, workers: int = 1, bound: int | None = None, sample: int | None = None, seed: int = 0
) -> Enumeration[AdditiveMap]:
    """All (Jordan) derivations ``R -> R`` or ``R -> M``.

    With ``sample``, only that many random candidates are tested (no bound
    check); the result is then a partial, exploratory listing.
    """
    dst = R.carrier if M is None else M.carrier
    return _hom_enumeration(HomSpace(R.carrier, dst), derivation_blocks(R, M, jordan), workers, bound, sample, seed)


def enumerate_jordan_derivations(R: FinRing, M=None, **kw) -> Enumeration[AdditiveMap]:
    return enumerate_derivations(R, M, jordan=True, **kw)


def _graded_enumeration(G: GradedRing, degree: int, jordan: bool, workers: int, bound: int | None, sample, seed) -> Enumeration[GradedMap]:
    space = HomSpace(G.ring.carrier, G.ring.carrier, graded_hom_mask(G, degree))
    found = _hom_enumeration(space, superderivation_blocks(G, degree, jordan), workers, bound, sample, seed)
    return Enumeration(found.candidates, found.indices, [GradedMap(d, degree, G) for d in found.maps])


def enumerate_jordan_superderivations(
    G: GradedRing, degree: int, *, workers: int = 1, bound: int | None = None, sample: int | None = None, seed: int = 0
) -> Enumeration[GradedMap]:
    """All Jordan superderivations of the given degree.

    The grading constraint is applied at generation time: a generator of
    degree ``j`` may only map into the part of degree ``j + degree``.
    """
    return _graded_enumeration(G, degree, True, workers, bound, sample, seed)


def enumerate_superderivations(
    G: GradedRing, degree: int, *, workers: int = 1, bound: int | None = None, sample: int | None = None, seed: int = 0
) -> Enumeration[GradedMap]:
    return _graded_enumeration(G, degree, False, workers, bound, sample, seed)


def _biadditive_enumeration(space: BiadditiveSpace, slice_blocks, workers, bound, sample=None, seed=0) -> Enumeration[BiadditiveMap]:
    picked = _pick(space, bound, sample, seed)
    idx = _filter(space.count, space.tables, _slice_filter(slice_blocks), workers, picked)
    return Enumeration(space.count, idx, [space.map(i) for i in idx])


def enumerate_jordan_super_biderivations(
    G: GradedRing, *, workers: int = 1, bound: int | None = None, sample: int | None = None, seed: int = 0
) -> Enumeration[BiadditiveMap]:
    """All Jordan super-biderivations; the graded block constraint is built into the candidate space."""
    return _biadditive_enumeration(graded_biadditive_space(G), super_biderivation_blocks(G), workers, bound, sample, seed)


def enumerate_jordan_biderivations(
    R: FinRing, *, workers: int = 1, bound: int | None = None, sample: int | None = None, seed: int = 0
) -> Enumeration[BiadditiveMap]:
    g = R.carrier
    return _biadditive_enumeration(BiadditiveSpace(g, g, g), jordan_biderivation_blocks(R), workers, bound, sample, seed)


# ------------------------------------------------------------------ component route


def _homs(src, dst, bound):
    space = HomSpace(src, dst)
    space.check_bound(bound)
    return [AdditiveMap(h) for h in space]


def component_tuple_superderivations(T: TrivialExtension, degree: int, *, bound: int | None = None) -> list[GradedMap]:
    """Jordan superderivations of ``T(R, M)`` built from their component maps.

    Degree 0: ``(r, m) -> (δ(r), g(m))`` with ``δ`` a Jordan derivation of ``R``
    and ``g(r∘m) = r∘g(m) + δ(r)∘m``. Degree 1: ``(r, m) -> (f(m), γ(r))`` with
    ``γ`` a Jordan derivation into ``M`` and ``f`` a symmetric Jordan
    ``R``-homomorphism. Independent of the superderivation kernels; used to
    cross-check ``enumerate_jordan_superderivations``. Sorted by generator images.
    """
    R, M = T.base, T.module
    G = grade_trivial_extension(T)
    out: list[AdditiveMap] = []
    if degree == 0:
        deltas = [d for d in _homs(R.carrier, R.carrier, bound) if is_jordan_derivation(d, R)]
        gs = _homs(M.carrier, M.carrier, bound)
        for delta in deltas:
            out += [assemble_trivial_ext_map(T, rr=delta, mm=g) for g in gs if module_compat_verdict(T, g, delta)]
    elif degree == 1:
        gammas = [c for c in _homs(R.carrier, M.carrier, bound) if is_jordan_derivation(c, R, M)]
        fs = [f for f in _homs(M.carrier, R.carrier, bound) if jordan_module_hom_verdict(T, f) and module_symmetry_verdict(T, f)]
        out = [assemble_trivial_ext_map(T, rm=c, mr=f) for c in gammas for f in fs]
    else:
        raise ValueError("degree must be 0 or 1")
    out.sort(key=lambda d: d.images)
    return [GradedMap(d, degree, G) for d in out]


def image_set(maps) -> set:
    return {m.images for m in maps}

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjordan.abelian import AbelianGroup, HomSpace
from superjordan import enumerate_jordan_super_biderivations, enumerate_jordan_superderivations, grade, kernels

pytestmark = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


@st.composite
def leibniz_instances(draw):
    n = draw(st.integers(1, 6))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    tab = lambda: rng.integers(0, n, size=(n, n)).astype(np.int32)  # noqa: E731
    maps = draw(st.integers(1, 5))
    Ds = rng.integers(0, n, size=(maps, n)).astype(np.int32)
    xs = np.sort(rng.choice(n, size=draw(st.integers(1, n)), replace=False)).astype(np.int64)
    ys = np.sort(rng.choice(n, size=draw(st.integers(1, n)), replace=False)).astype(np.int64)
    neg = rng.integers(0, n, size=n).astype(np.int32)
    # a planted always-true case keeps survivors non-trivial
    if draw(st.booleans()):
        Ds[0] = 0
        P, Q1, Q2, add = np.zeros((n, n), np.int32), tab(), tab(), np.zeros((n, n), np.int32)
    else:
        P, Q1, Q2, add = tab(), tab(), tab(), tab()
    flags = (draw(st.booleans()), draw(st.booleans()))
    return Ds, xs, ys, P, Q1, Q2, add, neg, *flags


@given(leibniz_instances())
def test_first_failure_backends_agree(inst):
    assert kernels._nb_first_failure(*inst) == kernels._np_first_failure(*inst)


@given(leibniz_instances())
def test_survivors_backends_agree(inst):
    Ds, rest = inst[0], inst[1:]
    a = np.ones(len(Ds), dtype=np.bool_)
    b = a.copy()
    kernels._nb_survivors(Ds, a, *rest)
    kernels._np_survivors(Ds, b, *rest)
    assert np.array_equal(a, b)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_assoc_backends_agree(n0, n1, n2, seed):
    rng = np.random.default_rng(seed)
    m = max(n0, n1, n2)
    B = rng.integers(0, m, size=(n0, n1)).astype(np.int32)
    A = rng.integers(0, m, size=(m, n2)).astype(np.int32)
    D = rng.integers(0, m, size=(n1, n2)).astype(np.int32)
    C = rng.integers(0, m, size=(n0, m)).astype(np.int32)
    if seed % 2:
        A[:] = 0
        C[:] = 0
    assert kernels._nb_assoc_first_failure(A, B, C, D, n0, n1, n2) == kernels._np_assoc_first_failure(A, B, C, D, n0, n1, n2)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_distrib_backends_agree(n0, n1, seed):
    rng = np.random.default_rng(seed)
    Mul = rng.integers(0, n1, size=(n0, n1)).astype(np.int32)
    if seed % 2:
        Mul[:] = 0
    addY = rng.integers(0, n1, size=(n1, n1)).astype(np.int32)
    addO = np.zeros((n1, n1), np.int32) if seed % 2 else rng.integers(0, n1, size=(n1, n1)).astype(np.int32)
    assert kernels._nb_distrib_first_failure(Mul, addY, addO, n0, n1) == kernels._np_distrib_first_failure(Mul, addY, addO, n0, n1)


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.delenv(kernels.ENV_FLAG, raising=False)
    assert kernels.use_numba()
    monkeypatch.setenv(kernels.ENV_FLAG, "1")
    assert not kernels.use_numba()


def test_enumeration_identical_under_both_backends(monkeypatch, te_z3):
    G = grade(te_z3.ring)

    def run():
        return (
            [e.indices for e in (enumerate_jordan_superderivations(G, d) for d in (0, 1))],
            enumerate_jordan_super_biderivations(G).indices,
        )

    monkeypatch.delenv(kernels.ENV_FLAG, raising=False)
    fast = run()
    monkeypatch.setenv(kernels.ENV_FLAG, "1")
    assert run() == fast


def test_unflatten():
    assert kernels.unflatten(23, 2, 3, 4) == (1, 2, 3)


group_factors = st.lists(st.integers(1, 5), min_size=0, max_size=3)


@given(group_factors, group_factors, st.integers(0, 2**32 - 1))
def test_hom_tables_backends_agree(src_f, dst_f, seed):
    src, dst = AbelianGroup(tuple(src_f)), AbelianGroup(tuple(dst_f))
    space = HomSpace(src, dst)
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(space.count, size=min(space.count, 20), replace=False))
    mats = np.concatenate([space.matrices(int(i), int(i) + 1) for i in idx])
    prev, gen = space._steps
    coords = src.coords_table()
    direct = np.stack([space.hom(int(i)).table for i in idx])
    if dst.rank and src.order > 1:
        assert np.array_equal(kernels._nb_hom_tables(mats, prev, gen, dst.moduli, dst.strides), direct)
        assert np.array_equal(kernels._np_hom_tables(mats, coords, dst.moduli, dst.strides), direct)
    assert np.array_equal(space.tables(int(idx[0]), int(idx[0]) + 1)[0], direct[0])

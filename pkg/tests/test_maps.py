import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjordan import (
    AdditiveMap,
    GradingError,
    TrivialExtension,
    biadditive_from_images,
    grade,
    graded_map,
    inner_derivation,
    is_jordan_superderivation,
    map_from_generator_images,
    split_by_degree,
    zn_bimodule,
    zn_ring,
)
from superjordan.abelian import HomSpace, OrderConstraintError
from superjordan.finring import upper_triangular_tn


def test_ill_defined_map_rejected():
    with pytest.raises(OrderConstraintError):
        map_from_generator_images(zn_ring(2), zn_ring(4), [[1]])


def test_graded_map_accepts_and_rejects(te_z2):
    G = grade(te_z2.ring)
    swap = map_from_generator_images(te_z2.ring, te_z2.ring, [[0, 1], [1, 0]])
    with pytest.raises(GradingError) as info:
        graded_map(swap, 0, G)
    assert info.value.witness == (1, 0)
    assert graded_map(swap, 1, G).degree == 1
    ident = map_from_generator_images(te_z2.ring, te_z2.ring, [[1, 0], [0, 1]])
    assert graded_map(ident, 0, G).degree == 0


def test_biadditive_jordan_product_on_z3():
    R = zn_ring(3)
    B = biadditive_from_images(R, R, R, [[[2]]])  # B(x, y) = x∘y = 2xy
    assert B(R.element((1,)), R.element((1,))) == (2,)
    assert B(R.element((2,)), R.element((1,))) == (1,)


def test_inner_derivation_on_t2():
    T = upper_triangular_tn(zn_ring(2), 2)
    d = inner_derivation(T.unit(1, 2))
    assert d(T.unit(1, 1)) == T.unit(1, 2).coords
    assert d(T.unit(2, 2)) == T.unit(1, 2).coords
    assert d(T.unit(1, 2)) == T.ring.zero.coords


def test_split_by_degree(te_z3):
    G = grade(te_z3.ring)
    d = map_from_generator_images(te_z3.ring, te_z3.ring, [[1, 2], [1, 1]])
    d0, d1 = split_by_degree(d, G)
    assert d0.images == ((1, 0), (0, 1))
    assert d1.images == ((0, 2), (1, 0))
    assert (d0.map + d1.map).images == d.images


def test_inner_e12_is_odd_jordan_superderivation_on_t2():
    T = upper_triangular_tn(zn_ring(2), 2)
    G = grade(T.ring)
    d1 = graded_map(inner_derivation(T.unit(1, 2)), 1, G)
    assert is_jordan_superderivation(d1).ok


@given(st.sampled_from([(2, 2), (3, 3), (4, 2)]), st.data())
def test_graded_map_iff_block_condition(nm, data):
    R = zn_ring(nm[0])
    T = TrivialExtension(R, zn_bimodule(nm[1], R, R))
    G = grade(T.ring)
    space = HomSpace(T.ring.carrier, T.ring.carrier)
    d = space.hom(data.draw(st.integers(0, space.count - 1)))
    dm = AdditiveMap(d)
    for degree in (0, 1):
        expected = all(
            int(d.table[x]) in set(G.part(a + degree).tolist())
            for a in (0, 1)
            for x in G.part(a)
        )
        try:
            graded_map(dm, degree, G)
            accepted = True
        except GradingError:
            accepted = False
        assert accepted == expected

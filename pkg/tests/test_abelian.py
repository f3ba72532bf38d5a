from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjordan.abelian import (
    AbelianGroup,
    BoundExceeded,
    GroupHom,
    HomSpace,
    OrderConstraintError,
    enumerate_homs,
    group_direct_sum,
    hom_apply,
    hom_count,
)

small_groups = st.lists(st.integers(1, 6), min_size=0, max_size=3).map(lambda fs: AbelianGroup(tuple(fs)))


def test_hom_counts_small_cases():
    z2, z3 = AbelianGroup((2,)), AbelianGroup((3,))
    assert hom_count(z2, z2) == 2
    assert hom_count(z2, z3) == 1
    assert hom_count(AbelianGroup((2, 2)), AbelianGroup((2, 2))) == 16
    assert len(list(enumerate_homs(z2, z3))) == 1


def test_direct_sum_order():
    g = group_direct_sum(AbelianGroup((2,)), AbelianGroup((3, 4)))
    assert g.factors == (2, 3, 4)
    assert g.order == 24


def test_hom_apply_z2_to_z4():
    z2, z4 = AbelianGroup((2,)), AbelianGroup((4,))
    h = GroupHom(z2, z4, ((2,),))
    assert hom_apply(h, z2.element((1,))).coords == (2,)


def test_ill_defined_images_rejected():
    with pytest.raises(OrderConstraintError):
        GroupHom(AbelianGroup((2,)), AbelianGroup((4,)), ((1,),))


def test_element_arithmetic_wraps():
    g = AbelianGroup((3, 4))
    x = g.element((2, 3))
    assert (x + x).coords == (1, 2)
    assert (-x).coords == (1, 1)
    assert (x - x).is_zero()
    assert g.element_at(x.index).coords == x.coords


def test_bound_gate():
    g = AbelianGroup((2, 2, 2))
    with pytest.raises(BoundExceeded):
        list(enumerate_homs(g, g, bound=10))


@given(small_groups, small_groups)
def test_count_matches_gcd_product(src, dst):
    expected = prod(gcd(n, m) for n in src.factors for m in dst.factors)
    assert hom_count(src, dst) == expected
    assert HomSpace(src, dst).count == expected


@given(small_groups, small_groups)
def test_enumeration_is_distinct_and_ordered(src, dst):
    if hom_count(src, dst) > 400:
        return
    homs = list(enumerate_homs(src, dst))
    images = [h.images for h in homs]
    assert len(set(images)) == len(images) == hom_count(src, dst)
    assert images == sorted(images)
    assert images == [h.images for h in enumerate_homs(src, dst)]


@given(small_groups, small_groups, st.data())
def test_homs_are_additive(src, dst, data):
    space = HomSpace(src, dst)
    h = space.hom(data.draw(st.integers(0, space.count - 1)))
    t = h.table
    add_s, add_d = src.add_table, dst.add_table
    assert np.array_equal(t[add_s], add_d[t[:, None], t[None, :]])


@given(small_groups, small_groups, st.data())
def test_index_round_trip(src, dst, data):
    space = HomSpace(src, dst)
    i = data.draw(st.integers(0, space.count - 1))
    assert space.index_of(space.hom(i).images) == i

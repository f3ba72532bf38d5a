import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superjordan import (
    AdditiveMap,
    TrivialExtension,
    biadditive_from_images,
    find_inner,
    grade,
    graded_map,
    inner_derivation,
    is_derivation,
    is_jordan_biderivation,
    is_jordan_derivation,
    is_jordan_super_biderivation,
    is_jordan_superderivation,
    is_superderivation,
    map_from_generator_images,
    super_biderivation_slices_verdict,
    zn_bimodule,
    zn_ring,
)
from superjordan.abelian import HomSpace
from superjordan.finring import upper_triangular_tn
from superjordan.maps import graded_biadditive_space, graded_hom_mask
from superjordan.reference import Reference


def test_identity_is_not_a_derivation_of_z3():
    R = zn_ring(3)
    v = is_derivation(map_from_generator_images(R, R, [[1]]), R)
    assert not v.ok
    assert v.witness == ((1,), (1,))
    assert not is_jordan_derivation(map_from_generator_images(R, R, [[1]]), R).ok


def test_zero_map_passes_everything(te_z3):
    R = te_z3.ring
    G = grade(R)
    zero = map_from_generator_images(R, R, [[0, 0], [0, 0]])
    assert is_derivation(zero, R).ok
    for degree in (0, 1):
        assert is_superderivation(graded_map(zero, degree, G)).ok
        assert is_jordan_superderivation(graded_map(zero, degree, G)).ok


def test_inner_derivation_of_t2():
    T = upper_triangular_tn(zn_ring(2), 2)
    d = inner_derivation(T.unit(1, 2))
    assert is_derivation(d, T.ring).ok
    assert find_inner(d, T.ring) is not None


def test_non_inner_map_has_no_inner_element(te_z3):
    R = te_z3.ring
    d = map_from_generator_images(R, R, [[0, 1], [0, 0]])
    assert find_inner(d, R) is None


def test_derivation_into_module():
    R = zn_ring(4)
    M = zn_bimodule(2, R, R)
    # Z4 -> Z2, 1 -> 1: d(1) = d(1*1) = 2 d(1) = 0 fails
    v = is_derivation(map_from_generator_images(R, M.carrier, [[1]]), R, M)
    assert not v.ok
    assert is_jordan_derivation(map_from_generator_images(R, M.carrier, [[0]]), R, M).ok


def test_jordan_product_is_not_a_jordan_biderivation_on_z3():
    R = zn_ring(3)
    B = biadditive_from_images(R, R, R, [[[2]]])
    assert not is_jordan_biderivation(B, R).ok


def _all_graded(G, degree):
    space = HomSpace(G.ring.carrier, G.ring.carrier, graded_hom_mask(G, degree))
    return [graded_map(AdditiveMap(h), degree, G) for h in space]


@pytest.mark.parametrize("fixture", ["te_z2", "te_z3", "te_z4_z2", "tri_z2"])
def test_derivation_implies_jordan_derivation(fixture, request):
    R = request.getfixturevalue(fixture).ring
    space = HomSpace(R.carrier, R.carrier)
    for h in space:
        d = AdditiveMap(h)
        if is_derivation(d, R):
            assert is_jordan_derivation(d, R).ok


@pytest.mark.parametrize("fixture", ["te_z2", "te_z3"])
def test_superderivation_implies_jordan_superderivation(fixture, request):
    G = grade(request.getfixturevalue(fixture).ring)
    for degree in (0, 1):
        for d in _all_graded(G, degree):
            if is_superderivation(d):
                assert is_jordan_superderivation(d).ok


@pytest.mark.parametrize("fixture", ["te_z2", "te_z3"])
def test_slice_verdict_agrees_with_direct_verdict(fixture, request):
    G = grade(request.getfixturevalue(fixture).ring)
    space = graded_biadditive_space(G)
    for i in range(space.count):
        B = space.map(i)
        assert is_jordan_super_biderivation(B, G).ok == super_biderivation_slices_verdict(B, G).ok


@given(st.sampled_from(["te_z2", "te_z3", "te_z4_z2"]), st.integers(0, 1), st.data())
def test_witnesses_are_genuine(fixture, degree, data):
    n, m = {"te_z2": (2, 2), "te_z3": (3, 3), "te_z4_z2": (4, 2)}[fixture]
    R = zn_ring(n)
    T = TrivialExtension(R, zn_bimodule(m, R, R))
    G = grade(T.ring)
    space = HomSpace(T.ring.carrier, T.ring.carrier, graded_hom_mask(G, degree))
    d = graded_map(AdditiveMap(space.hom(data.draw(st.integers(0, space.count - 1)))), degree, G)
    ref = Reference(f"jordan-superderivation-deg{degree}", T.ring, graded=G)
    v = is_jordan_superderivation(d)
    if v.ok:
        assert ref.first_failure(d.map) is None
    else:
        assert not ref.holds_at(d.map, v.witness)


def test_biderivation_witness_is_genuine(te_z3):
    G = grade(te_z3.ring)
    space = graded_biadditive_space(G)
    ref = Reference("jordan-super-biderivation", te_z3.ring, graded=G)
    for i in range(0, space.count, 7):
        B = space.map(i)
        v = is_jordan_super_biderivation(B, G)
        if v.ok:
            assert ref.first_failure(B) is None
        else:
            assert not ref.holds_at(B, v.witness)


def test_checker_reports_first_failure_deterministically(te_z3):
    R = te_z3.ring
    d = map_from_generator_images(R, R, [[1, 0], [0, 1]])
    assert is_derivation(d, R) == is_derivation(d, R)
    assert np.array_equal(d.table, map_from_generator_images(R, R, [[1, 0], [0, 1]]).table)

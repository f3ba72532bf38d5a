import numpy as np
import pytest

from superjordan import (
    AdditiveMap,
    BoundExceeded,
    component_tuple_superderivations,
    enumerate_derivations,
    enumerate_jordan_biderivations,
    enumerate_jordan_derivations,
    enumerate_jordan_super_biderivations,
    enumerate_jordan_superderivations,
    enumerate_superderivations,
    find_inner,
    grade,
    zn_ring,
)
from superjordan.abelian import HomSpace
from superjordan.enumeration import image_set, sample_indices
from superjordan.finring import upper_triangular_tn
from superjordan.maps import graded_hom_mask
from superjordan.reference import Reference

TE_FIXTURES = ["te_z2", "te_z3", "te_z4_z2"]


def _zero_images(G):
    k = G.ring.carrier.rank
    return tuple((0,) * k for _ in range(k))


def test_candidate_count_t_z2(te_z2):
    G = grade(te_z2.ring)
    found = enumerate_jordan_superderivations(G, 0)
    assert found.candidates == 4
    assert len(found) == 4


@pytest.mark.parametrize("fixture", TE_FIXTURES + ["tri_z2", "tri_z3"])
@pytest.mark.parametrize("degree", [0, 1])
def test_zero_map_present_and_negation_closed(fixture, degree, request):
    G = grade(request.getfixturevalue(fixture).ring)
    found = enumerate_jordan_superderivations(G, degree)
    images = image_set(found)
    assert _zero_images(G) in images
    for d in found:
        assert (-d.map).images in images


@pytest.mark.parametrize("fixture", TE_FIXTURES)
@pytest.mark.parametrize("degree", [0, 1])
def test_brute_force_equals_component_tuples(fixture, degree, request):
    T = request.getfixturevalue(fixture)
    brute = enumerate_jordan_superderivations(grade(T.ring), degree)
    built = component_tuple_superderivations(T, degree)
    assert image_set(brute) == image_set(built)
    assert len(built) == len(brute)


@pytest.mark.parametrize("fixture", ["te_z3", "tri_z2"])
@pytest.mark.parametrize("degree", [0, 1])
def test_survivors_match_reference_filter(fixture, degree, request):
    G = grade(request.getfixturevalue(fixture).ring)
    space = HomSpace(G.ring.carrier, G.ring.carrier, graded_hom_mask(G, degree))
    ref = Reference(f"jordan-superderivation-deg{degree}", G.ring, graded=G)
    expected = [i for i in range(space.count) if ref.first_failure(AdditiveMap(space.hom(i))) is None]
    assert enumerate_jordan_superderivations(G, degree).indices == expected


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_prime_cyclic_ring_has_only_zero_derivation(n):
    found = enumerate_derivations(zn_ring(n))
    assert [d.images for d in found] == [((0,),)]


def test_t2_z2_derivations_are_inner_and_inside_jordan():
    T = upper_triangular_tn(zn_ring(2), 2)
    ders = enumerate_derivations(T.ring)
    jders = enumerate_jordan_derivations(T.ring)
    assert ders.candidates == 512
    assert len(ders) == 4
    assert image_set(ders) <= image_set(jders)
    assert all(find_inner(d, T.ring) is not None for d in ders)
    ref = Reference("derivation", T.ring)
    space = HomSpace(T.ring.carrier, T.ring.carrier)
    assert [i for i in range(space.count) if ref.first_failure(AdditiveMap(space.hom(i))) is None] == ders.indices


@pytest.mark.parametrize(
    "fixture,expected",
    [("te_z2", (4, 4)), ("te_z3", (3, 3)), ("te_z4_z2", (4, 4)), ("tri_z2", (8, 2)), ("tri_z3", (3, 3))],
)
def test_frozen_superderivation_counts(fixture, expected, request):
    G = grade(request.getfixturevalue(fixture).ring)
    assert tuple(len(enumerate_jordan_superderivations(G, d)) for d in (0, 1)) == expected


@pytest.mark.parametrize("fixture", TE_FIXTURES + ["tri_z2", "tri_z3"])
def test_superderivations_inside_jordan_superderivations(fixture, request):
    G = grade(request.getfixturevalue(fixture).ring)
    for degree in (0, 1):
        assert image_set(enumerate_superderivations(G, degree)) <= image_set(enumerate_jordan_superderivations(G, degree))


def test_frozen_super_biderivation_counts(te_z2, te_z3):
    assert len(enumerate_jordan_super_biderivations(grade(te_z2.ring))) == 16
    found = enumerate_jordan_super_biderivations(grade(te_z3.ring))
    assert len(found) == 3
    assert found.candidates == 81
    images = image_set(found)
    for B in found:
        assert tuple(tuple(tuple((-v) % 3 for v in cell) for cell in row) for row in B.images) in images


def test_jordan_biderivations_of_z3():
    found = enumerate_jordan_biderivations(zn_ring(3))
    assert [B.images for B in found] == [(((0,),),)]


@pytest.mark.parametrize("workers", [2, 8])
def test_worker_count_does_not_change_output(workers, tri_z3, te_z3):
    G = grade(tri_z3.ring)
    for degree in (0, 1):
        a = enumerate_jordan_superderivations(G, degree, workers=1)
        b = enumerate_jordan_superderivations(G, degree, workers=workers)
        assert a.indices == b.indices and a.candidates == b.candidates
    Gt = grade(te_z3.ring)
    assert enumerate_jordan_super_biderivations(Gt, workers=1).indices == enumerate_jordan_super_biderivations(Gt, workers=workers).indices


def test_bound_exceeded(tri_z3):
    with pytest.raises(BoundExceeded):
        enumerate_jordan_superderivations(grade(tri_z3.ring), 0, bound=100)


def test_sampling_is_reproducible_and_sound(tri_z3):
    G = grade(tri_z3.ring)
    a = enumerate_jordan_superderivations(G, 0, sample=50, seed=7)
    b = enumerate_jordan_superderivations(G, 0, sample=50, seed=7)
    assert a.indices == b.indices
    full = set(enumerate_jordan_superderivations(G, 0).indices)
    picked = set(sample_indices(a.candidates, 50, 7).tolist())
    assert set(a.indices) == full & picked


def test_sample_indices_distinct_sorted():
    idx = sample_indices(1000, 100, 3)
    assert len(np.unique(idx)) == 100
    assert np.all(np.diff(idx) > 0)
    assert len(sample_indices(5, 100, 3)) == 5

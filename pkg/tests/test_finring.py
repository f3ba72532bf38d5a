import numpy as np
import pytest

from superjordan import (
    TriangularRing,
    TrivialExtension,
    grade,
    is_faithful,
    is_two_torsion,
    is_two_torsion_free,
    product_ring,
    regular_bimodule,
    first_row_split_iso,
    triangular_to_trivial_iso,
    verify_ring_isomorphism,
    zero_bimodule,
    zn_bimodule,
    zn_ring,
)
from superjordan.abelian import AbelianGroup, GroupMismatch
from superjordan.finring import product_bimodule, table_ring, upper_triangular_tn


def test_cyclic_multiplication():
    z3, z4 = zn_ring(3), zn_ring(4)
    assert (z3.element((2,)) * z3.element((2,))).coords == (1,)
    assert (z4.element((2,)) * z4.element((2,))).coords == (0,)


def test_zero_ring():
    z1 = zn_ring(1)
    assert z1.order == 1
    assert z1.one == z1.zero


def test_product_ring():
    P = product_ring(zn_ring(2), zn_ring(3))
    x = P.element((1, 2))
    assert (x * x).coords == (1, 1)


def test_trivial_extension_products(te_z2, te_z3):
    x = te_z2.pair((1,), (1,))
    assert (x * x).coords == (1, 0)
    assert (te_z3.pair((2,), (1,)) * te_z3.pair((1,), (2,))).coords == (2, 2)


def test_module_must_match_base():
    with pytest.raises(GroupMismatch):
        zn_bimodule(4, zn_ring(2), zn_ring(2))


def test_product_bimodule_actions(tri_z3):
    M = product_bimodule(tri_z3.M)
    R = M.left_ring
    m = M.carrier.element((1,))
    r = R.element((2, 1))
    # (r, s) acts on the left through r and on the right through s
    assert M.act_left(r, m).coords == (2,)
    assert M.act_right(m, r).coords == (1,)


def test_triangular_to_trivial_iso(tri_z2):
    TE, fwd, inv = triangular_to_trivial_iso(tri_z2)
    assert fwd(tri_z2.matrix((1,), (0,), (1,))).coords == (1, 1, 0)
    assert verify_ring_isomorphism(fwd, inv).ok
    assert TE.ring.order == 8


def test_upper_triangular_units_and_orders():
    Tn, T, fwd, inv = first_row_split_iso(zn_ring(2), 2)
    assert Tn.ring.order == 8
    assert upper_triangular_tn(zn_ring(2), 3).ring.order == 64
    e11, e12, e22 = Tn.unit(1, 1), Tn.unit(1, 2), Tn.unit(2, 2)
    assert (e11 * e12) == e12
    assert (e12 * e22) == e12
    assert (e12 * e11).is_zero()
    assert verify_ring_isomorphism(fwd, inv).ok
    _, fwd_te, _ = triangular_to_trivial_iso(T)
    assert fwd_te(fwd(e12)).coords == (0, 0, 1)


def test_first_row_split_iso_t3():
    _, _, fwd, inv = first_row_split_iso(zn_ring(2), 3)
    assert verify_ring_isomorphism(fwd, inv).ok


def test_torsion_flags():
    assert is_two_torsion_free(AbelianGroup((3,)))
    assert not is_two_torsion_free(AbelianGroup((2,)))
    assert not is_two_torsion_free(AbelianGroup((6,)))
    assert is_two_torsion(AbelianGroup((2, 2)))
    assert not is_two_torsion(AbelianGroup((4,)))


def test_faithfulness():
    z3, z4 = zn_ring(3), zn_ring(4)
    assert is_faithful(regular_bimodule(z3)) == (True, True)
    assert is_faithful(zn_bimodule(2, z4, z4)) == (False, False)
    assert is_faithful(zero_bimodule(z3, z3)) == (False, False)


@pytest.mark.parametrize(
    "ring",
    [
        zn_ring(6),
        product_ring(zn_ring(2), zn_ring(2)),
        TrivialExtension(zn_ring(4), zn_bimodule(2, zn_ring(4), zn_ring(4))).ring,
        TriangularRing(zn_ring(3), zn_bimodule(3, zn_ring(3), zn_ring(3)), zn_ring(3)).ring,
        upper_triangular_tn(zn_ring(3), 2).ring,
    ],
    ids=lambda r: r.name,
)
def test_constructed_rings_validate(ring):
    assert ring.validate().ok


def test_table_ring_rejects_non_associative():
    # Z2 x Z2 with e1*e1 = e2 and everything else zero except the identity rules
    with pytest.raises(Exception):
        table_ring([2, 2], [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [1, 1])


@pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (4, 2), (4, 4)])
def test_trivial_extension_grading_is_multiplicative(n, m):
    R = zn_ring(n)
    T = TrivialExtension(R, zn_bimodule(m, R, R))
    G = grade(T.ring)
    assert G.validate().ok
    assert len(G.even) == n and len(G.odd) == m
    # (0, m)(0, m') = 0
    odd_products = T.ring.mul_table[np.ix_(G.odd, G.odd)]
    assert (odd_products == 0).all()

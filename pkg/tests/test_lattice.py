import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pairmix.finite import FiniteGroup
from pairmix.lattice import FGAbelianSpec, Lattice, LinearIso, hermite_normal_form, xgcd

small = st.integers(-6, 6)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd_bezout(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0 and a * x + b * y == g
    if a or b:
        assert a % g == 0 and b % g == 0


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_transform_and_kernel(rows):
    H, U, pivots = hermite_normal_form(rows, 3)
    for i in range(len(rows)):
        assert [sum(U[i][k] * rows[k][j] for k in range(len(rows))) for j in range(3)] == H[i]
    for i in range(len(pivots), len(rows)):
        assert not any(H[i])
    for i, c in enumerate(pivots):
        assert H[i][c] > 0
        assert all(H[i][j] == 0 for j in range(c))
        for k in range(i):
            assert 0 <= H[k][c] < H[i][c]


def _brute_members(lat: Lattice, box: int):
    return {v for v in itertools.product(range(-box, box + 1), repeat=lat.dim) if lat.contains(v)}


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=1, max_size=3),
       st.lists(st.lists(small, min_size=2, max_size=2), min_size=1, max_size=3))
def test_intersection_matches_brute_force(g1, g2):
    A, B = Lattice.from_generators(g1, 2), Lattice.from_generators(g2, 2)
    C = A.intersect(B)
    box = 12
    pts = itertools.product(range(-box, box + 1), repeat=2)
    for v in pts:
        assert C.contains(v) == (A.contains(v) and B.contains(v))


def test_intersection_and_isomorphism_in_rank_one():
    assert Lattice.from_generators([[3]], 1).intersect(Lattice.from_generators([[2]], 1)).basis == ((6,),)
    phi = LinearIso([[3]], [[2]], 1)
    assert phi((9,)) == (6,)
    assert phi.inverse((4,)) == (6,)
    assert phi.preimage(Lattice.from_generators([[6]], 1)).basis == ((9,),)


def test_lattice_canonical_basis():
    assert Lattice.from_generators([[4, 6], [2, 2]], 2) == Lattice.from_generators([[2, 2], [0, 2]], 2)
    assert Lattice.from_generators([[4, 6], [2, 2]], 2).index() == 4
    assert Lattice.from_generators([[1, 1]], 2).index() is None


@given(st.lists(small, min_size=2, max_size=2))
def test_reduce_splits_vector(v):
    L = Lattice.from_generators([[3, 1], [0, 5]], 2)
    rep, coeffs = L.reduce(v)
    back = [rep[j] + sum(c * b[j] for c, b in zip(coeffs, L.basis)) for j in range(2)]
    assert back == list(v)
    assert rep == L.reduce(tuple(a + 3 * b + 5 * c for a, b, c in zip(v, (3, 1), (0, 1))))[0]


def test_linear_iso_rejects_bad_data():
    with pytest.raises(ValueError):
        LinearIso([[2]], [[3], [6]], 1)


def test_fg_abelian_arithmetic():
    A = FGAbelianSpec(1, (2, 4))
    assert A.normalize((3, 5, -1)) == (3, 1, 3)
    assert A.add((1, 1, 3), (2, 1, 2)) == (3, 0, 1)
    assert A.order((0, 1, 2)) == 2
    assert A.order((0, 0, 1)) == 4
    assert A.order((1, 0, 0)) is None
    assert A.is_infinite() and not FGAbelianSpec(0, (3,)).is_infinite()


def test_finite_group_tables():
    C4 = FiniteGroup.cyclic(4, "s")
    assert C4.labels == ["1", "s", "s^2", "s^3"]
    assert C4.order(1) == 4 and C4.order(2) == 2
    assert C4.power(1, -1) == 3 and C4.inv(3) == 1
    with pytest.raises(ValueError):
        FiniteGroup(["1", "x"], [[0, 1], [1, 1]])

import itertools
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from latile import lattice as lat
from latile.errors import DomainError

small = st.integers(-10, 10)
vec3 = st.tuples(small, small, small)


def last_column(t):
    return tuple(row[-1] for row in t)


# is_primitive

@pytest.mark.parametrize("v, expected", [((6, 10, 15), True), ((2, 4, 6), False), ((0, 0, 1), True)])
def test_is_primitive(v, expected):
    assert lat.is_primitive(v) is expected


def test_is_primitive_rejects_zero():
    with pytest.raises(DomainError):
        lat.is_primitive((0, 0, 0))


def test_canonical_direction_sign_and_content():
    assert lat.canonical_direction((0, -4, 2)) == (0, 2, -1)
    assert lat.canonical_direction((3, 0, 0)) == (1, 0, 0)


# complete_to_basis

def test_complete_to_basis_unit_vector_is_identity():
    assert lat.complete_to_basis((0, 0, 1)) == lat.identity(3)


@pytest.mark.parametrize("a", [(2, 3), (6, 10, 15), (1, 1, 1), (-3, 5, 7)])
def test_complete_to_basis_contract(a):
    t = lat.complete_to_basis(a)
    assert last_column(t) == a
    assert abs(lat.det(t)) == 1


def test_complete_to_basis_rejects_imprimitive():
    with pytest.raises(DomainError):
        lat.complete_to_basis((2, 4, 6))


@given(vec3)
def test_complete_to_basis_property(a):
    assume(any(a) and math.gcd(*a) == 1)
    t = lat.complete_to_basis(a)
    assert last_column(t) == a and abs(lat.det(t)) == 1


# flatten_subgroup

def _flattens(lattice, t):
    k = lattice.rank
    return lat.is_unimodular(t) and all(not any(lat.mat_vec(t, b)[k:]) for b in lattice.basis)


def test_flatten_already_flat():
    lattice = lat.Sublattice.span([(2, 0, 0), (0, 3, 0)])
    assert lat.flatten_subgroup(lattice) == lat.identity(3)


@pytest.mark.parametrize("gens", [[(0, 0, 5)], [(1, 1, 1), (0, 2, 0)], [(3, 1, 4), (1, 5, 9)]])
def test_flatten_contract(gens):
    lattice = lat.Sublattice.span(gens)
    assert _flattens(lattice, lat.flatten_subgroup(lattice))


@given(st.lists(vec3, min_size=1, max_size=2))
def test_flatten_property(gens):
    lattice = lat.Sublattice.span(gens, 3)
    assume(lattice.rank > 0)
    t = lat.flatten_subgroup(lattice)
    assert _flattens(lattice, t)


# Smith normal form

def _check_snf(m):
    u, d, v = lat.smith_normal_form(m)
    assert lat.mat_mul(lat.mat_mul(u, m), v) == d
    assert lat.is_unimodular(u) and lat.is_unimodular(v)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return diag


def test_snf_identity():
    u, d, v = lat.smith_normal_form(lat.identity(3))
    assert (u, d, v) == (lat.identity(3), lat.identity(3), lat.identity(3))


def test_snf_examples():
    assert _check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert _check_snf([[1, 0], [0, 0]]) == [1, 0]


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_snf_property(rows):
    _check_snf(rows)


# reduction modulo a lattice

def test_reduce_examples():
    assert lat.reduce_mod_lattice((5, 0, 0), lat.Sublattice.diagonal(2, 1, 1)) == (1, 0, 0)
    assert lat.reduce_mod_lattice((0, 0, 0), lat.Sublattice.diagonal(3, 4, 5)) == (0, 0, 0)
    lattice = lat.Sublattice.span([(2, 0, 0), (1, 3, 0), (0, 0, 2)])
    r = lat.reduce_mod_lattice((3, 4, 5), lattice)
    assert lattice.contains(lat.vsub((3, 4, 5), r))
    assert lat.reduce_mod_lattice(r, lattice) == r


full_lattices = st.lists(vec3, min_size=3, max_size=3).map(lambda g: lat.Sublattice.span(g, 3)).filter(
    lambda s: s.is_full_rank)


@given(full_lattices, vec3, st.tuples(small, small, small))
def test_reduce_invariant_under_lattice_shift(lattice, v, coeffs):
    w = (0, 0, 0)
    for c, b in zip(coeffs, lattice.basis):
        w = lat.vadd(w, lat.vscale(c, b))
    assert lattice.contains(w)
    assert lat.reduce_mod_lattice(lat.vadd(v, w), lattice) == lat.reduce_mod_lattice(v, lattice)


def test_reduce_rejects_low_rank():
    with pytest.raises(DomainError):
        lat.reduce_mod_lattice((1, 0, 0), lat.Sublattice.span([(1, 0, 0)]))


# sublattices

def test_hnf_is_canonical():
    a = lat.Sublattice.span([(2, 0, 0), (0, 2, 0), (0, 0, 1)])
    b = lat.Sublattice.span([(2, 2, 0), (0, 2, 0), (0, 4, 1)])
    assert a == b
    assert a.index == 4


def test_coset_representatives_count_and_distinct():
    lattice = lat.Sublattice.span([(2, 0, 0), (1, 3, 0), (0, 0, 2)])
    reps = lattice.coset_representatives()
    assert len(reps) == lattice.index == 12
    assert len({lat.reduce_mod_lattice(r, lattice) for r in reps}) == 12


def test_coordinates_round_trip():
    lattice = lat.Sublattice.span([(1, 1, 0), (0, 2, 1)])
    coords = lattice.coordinates((3, 7, 2))
    assert coords is not None
    rebuilt = (0, 0, 0)
    for c, b in zip(coords, lattice.basis):
        rebuilt = lat.vadd(rebuilt, lat.vscale(c, b))
    assert rebuilt == (3, 7, 2)
    assert lattice.coordinates((1, 0, 0)) is None


def test_enumerate_hnf_counts():
    # number of index-n sublattices of Z^3 is sum over d1 d2 d3 = n of d2 d3^2
    for n in (1, 2, 3, 4, 6):
        expected = sum(b * c * c for a, b, c in itertools.product(range(1, n + 1), repeat=3)
                       if a * b * c == n)
        found = lat.enumerate_hnf(3, n)
        assert len(found) == expected
        assert len(set(found)) == expected
        assert all(s.index == n for s in found)


def test_kernel_basis():
    basis = lat.kernel_basis([[1, 1, 0], [0, 0, 1]])
    assert len(basis) == 1 and lat.parallel(basis[0], (1, -1, 0))


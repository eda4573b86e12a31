import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latile import lattice as lat
from latile.cluster import (Cluster, all_fibers_divisible, line_fibers, normal_fibers,
                            prism_decompose, prism_from_divisibility)
from latile.errors import DomainError

import oracles

SQUARE = Cluster([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
STACK = Cluster([(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 0, 1)])

points3 = st.sets(st.tuples(*[st.integers(-3, 3)] * 3), min_size=1, max_size=9).map(Cluster)
directions = st.tuples(*[st.integers(-2, 2)] * 3).filter(any)


def test_cluster_rejects_bad_input():
    with pytest.raises(DomainError):
        Cluster([])
    with pytest.raises(DomainError):
        Cluster([(0, 0), (0, 0)])
    with pytest.raises(DomainError):
        Cluster([(0, 0), (1, 0, 0)])


def test_cluster_normalized():
    c, w = Cluster([(3, 1, 2), (4, 1, 2)]).normalized()
    assert c.points == ((0, 0, 0), (1, 0, 0)) and w == (3, 1, 2)


@pytest.mark.parametrize("g, sizes", [((1, 0, 0), [2, 2]), ((1, 1, 0), [1, 1, 2]),
                                      ((0, 0, 1), [1, 1, 1, 1])])
def test_line_fibers(g, sizes):
    assert sorted(line_fibers(SQUARE, g).sizes) == sizes


@pytest.mark.parametrize("v, sizes", [((0, 0, 1), [4]), ((1, 0, 0), [2, 2]), ((1, 1, 0), [1, 2, 1])])
def test_normal_fibers(v, sizes):
    assert normal_fibers(SQUARE, v).sizes == sizes


def test_all_fibers_divisible_examples():
    assert all_fibers_divisible(line_fibers(SQUARE, (1, 0, 0)), 2)
    assert not all_fibers_divisible(line_fibers(SQUARE, (1, 1, 0)), 2)
    assert not all_fibers_divisible(normal_fibers(SQUARE, (1, 1, 0)), 2)


@given(points3, directions)
def test_fibers_partition_the_cluster(cluster, g):
    for part in (line_fibers(cluster, g), normal_fibers(cluster, g)):
        assert sum(part.sizes) == len(cluster)
        assert sorted(p for f in part.fibers for p in f) == list(cluster.points)


@given(points3, directions)
def test_line_fibers_match_direct_grouping(cluster, g):
    for p in (2, 3):
        expected = oracles.line_counts_divisible(cluster.points, g, p)
        assert all_fibers_divisible(line_fibers(cluster, g), p) == expected


def test_prism_decompose_stack():
    prism = prism_decompose(STACK)
    assert prism is not None and prism.is_valid_for(STACK)
    assert prism.axis == (0, 0, 1)
    assert prism.base == lat.Sublattice.span([(1, 0, 0), (0, 1, 0)])
    assert prism.foundation == ((0, 0, 0), (1, 0, 0))
    assert prism.offsets == (0, 1)
    assert prism.reconstruct() == STACK.pointset


def test_prism_decompose_stack_layers():
    prism = prism_decompose(STACK)
    # two layers of the same two-point foundation
    layers = prism.layers()
    assert len(layers) == 2 and all(len(layer) == 2 for layer in layers)
    assert lat.rank(list(prism.base.basis) + [prism.axis]) == 3


def test_prism_decompose_none():
    assert prism_decompose(Cluster([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)])) is None


def test_prism_decompose_singleton():
    prism = prism_decompose(Cluster([(0, 0, 0)]))
    assert prism is not None and prism.offsets == (0,)
    assert prism.foundation == ((0, 0, 0),)


@given(points3)
def test_prism_decompose_reconstructs(cluster):
    prism = prism_decompose(cluster)
    if prism is not None:
        assert prism.reconstruct() == cluster.pointset
        assert prism.is_valid_for(cluster)


def test_prism_from_divisibility_stack():
    prism = prism_from_divisibility(STACK, 2, (0, 0, 1), (0, 0, 1))
    assert len(prism.foundation) == 2 and prism.offsets == (0, 1)
    assert prism.is_valid_for(STACK)


def test_prism_from_divisibility_planar():
    prism = prism_from_divisibility(SQUARE, 2, (0, 1, 0), (0, 1, 0))
    assert prism.foundation == ((0, 0, 0), (1, 0, 0))
    assert prism.offsets == (0, 1)
    assert prism.is_valid_for(SQUARE)


def test_prism_from_divisibility_hypothesis_fails():
    with pytest.raises(DomainError):
        prism_from_divisibility(SQUARE, 2, (0, 0, 1), (0, 0, 1))


def test_prism_from_divisibility_p3():
    tri = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    cluster = Cluster([(x, y, z) for x, y, _ in tri for z in (0, 2, 5)])
    prism = prism_from_divisibility(cluster, 3, (0, 0, 1), (0, 0, 1))
    assert len(prism.foundation) == 3 and len(prism.offsets) == 3
    assert prism.is_valid_for(cluster)


def test_prism_from_divisibility_all_valid_inputs_in_box():
    # every p = 2 cluster in a small box with some valid (g, v) gives a valid witness
    checked = 0
    dirs = [g for g in itertools.product(range(-1, 2), repeat=3) if any(g)]
    for pts in itertools.combinations(list(itertools.product(range(2), repeat=3)), 4):
        cluster = Cluster(pts)
        for g in dirs:
            if not all_fibers_divisible(line_fibers(cluster, g), 2):
                continue
            for v in dirs:
                if lat.dot(g, v) and all_fibers_divisible(normal_fibers(cluster, v), 2):
                    prism = prism_from_divisibility(cluster, 2, g, v)
                    assert prism.is_valid_for(cluster)
                    assert len(prism.foundation) == 2 and len(prism.offsets) == 2
                    checked += 1
    assert checked > 0

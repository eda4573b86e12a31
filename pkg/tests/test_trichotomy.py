import itertools
import random
from fractions import Fraction as Fr

import pytest

from latile import lattice as lat
from latile.cluster import Cluster
from latile.errors import DomainError
from latile.spectral import DeltaSet
from latile.tiler import verify_tiling
from latile.trichotomy import (CASE1, CASE2_1, CASE2_2, CASE3, NOTE_CASE2_2, NOTE_CASE3,
                               check_embedded, classify, support_set)

import oracles

SQUARE = Cluster([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
STACK = Cluster([(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 0, 1)])
SKEW = Cluster([(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 2, 0)])

STRENGTH = {CASE1: 3, CASE2_1: 2, CASE2_2: 1, CASE3: 0}


def test_square_is_case1_with_tiling():
    result = classify(SQUARE, 2, 32)
    assert result.case == CASE1
    assert {(2, 0, 0), (0, 2, 0)} <= set(result.divisible_dirs)
    assert result.tiling.period.index == 4 and verify_tiling(SQUARE, result.tiling)


def test_stack_is_case1():
    result = classify(STACK, 2, 32)
    assert result.case == CASE1
    assert {(2, 0, 0), (0, 0, 2)} <= set(result.divisible_dirs)
    assert check_embedded(result)


def test_skew_is_case3():
    result = classify(SKEW, 2, 32)
    assert result.case == CASE3 and result.divisible_dirs == ()
    assert result.tiling is None and result.witness.note == NOTE_CASE3


def test_size_precondition():
    with pytest.raises(DomainError):
        classify(SQUARE, 3, 32)
    with pytest.raises(DomainError):
        classify(SQUARE, 4, 32)
    eight = Cluster(itertools.product(range(2), repeat=3))
    with pytest.raises(DomainError):
        classify(eight, 2, 32)


def test_experimental_admits_prime_powers():
    eight = Cluster(itertools.product(range(2), repeat=3))
    result = classify(eight, 2, 32, experimental=True)
    assert result.case == CASE1
    # constructive steps only run at size p^2
    assert result.tiling is None


def test_fixture_cases(trichotomy_cases):
    for case in trichotomy_cases:
        result = classify(Cluster(case["points"]), case["prime"], 40)
        assert result.case == case["case"], case["name"]
        assert check_embedded(result), case["name"]
        if result.case == CASE2_2:
            assert result.witness.note == NOTE_CASE2_2


def test_support_set_is_translation_invariant():
    w = (3, -2, 7)
    assert support_set(SKEW) == support_set(SKEW.translate(w))


def _signature(result):
    return result.case, result.divisible_dirs, result.delta


def test_translation_invariance(trichotomy_cases):
    rng = random.Random(11)
    for case in trichotomy_cases:
        cluster = Cluster(case["points"])
        base = classify(cluster, case["prime"], 40)
        for _ in range(2):
            w = tuple(rng.randint(-5, 5) for _ in range(3))
            moved = classify(cluster.translate(w), case["prime"], 40)
            assert _signature(moved) == _signature(base), case["name"]
            assert check_embedded(moved)


def _random_unimodular(rng):
    m = lat.identity(3)
    for _ in range(4):
        i, j = rng.sample(range(3), 2)
        e = [list(r) for r in lat.identity(3)]
        e[i][j] = rng.choice([-1, 1])
        m = lat.mat_mul(e, m)
    if rng.random() < 0.5:
        m = [m[1], m[0], m[2]]
    return m


def test_gl3_equivariance(trichotomy_cases):
    rng = random.Random(5)
    for case in trichotomy_cases:
        cluster = Cluster(case["points"])
        base = classify(cluster, case["prime"], 40)
        u = _random_unimodular(rng)
        assert lat.is_unimodular(u)
        moved = classify(cluster.transform(u), case["prime"], 40)
        assert moved.case == base.case, case["name"]
        assert len(moved.divisible_dirs) == len(base.divisible_dirs)
        assert check_embedded(moved)


# curated clusters whose smallest support set is known in closed form: the
# mask of {0, a} + {0, b} factors, and so does a triangle times a 3-point column

def _sumset(*parts):
    return Cluster({tuple(map(sum, zip(*choice))) for choice in itertools.product(*parts)})


def _pair(a):
    return [(0, 0, 0), a]


def _triple(a):
    return [(0, 0, 0), a, tuple(2 * x for x in a)]


CURATED = [
    (_sumset(_pair((1, 0, 0)), _pair((0, 1, 0))), 2, [(2, 0, 0), (0, 2, 0)]),
    (_sumset(_pair((1, 0, 0)), _pair((0, 0, 1))), 2, [(2, 0, 0), (0, 0, 2)]),
    (_sumset(_pair((1, 1, 0)), _pair((0, 0, 1))), 2, [(2, 2, 0), (0, 0, 2)]),
    (_sumset(_pair((1, 0, 0)), _pair((1, 2, 0))), 2, [(2, 0, 0), (2, 4, 0)]),
    (_sumset(_pair((2, 0, 0)), _pair((0, 1, 0))), 2, [(4, 0, 0), (0, 2, 0)]),
    (_sumset(_pair((1, 0, 1)), _pair((0, 1, 0))), 2, [(2, 0, 2), (0, 2, 0)]),
    (_sumset(_triple((1, 0, 0)), _triple((0, 1, 0))), 3, [(3, 0, 0), (0, 3, 0)]),
    # triangle {0, e1, e2} vanishes only where x + y is an integer
    (_sumset([(0, 0, 0), (1, 0, 0), (0, 1, 0)], _triple((0, 0, 1))), 3, [(1, 1, 0), (0, 0, 3)]),
    (_sumset([(0, 0, 0), (1, 0, 0), (0, 1, 0)], _triple((1, 1, 2))), 3, [(1, 1, 0), (3, 3, 6)]),
]


@pytest.mark.parametrize("cluster, p, minimal", CURATED)
def test_minimal_delta_covers_zero_set(cluster, p, minimal):
    grid = oracles.fractions_with_denominator_at_most(6)
    for rho in itertools.product(grid, repeat=3):
        if oracles.z_membership_float(cluster.points, rho, len(cluster)):
            assert any(oracles.in_kernel(rho, h) for h in minimal)


@pytest.mark.parametrize("cluster, p, minimal", CURATED)
def test_delta_superset_never_weakens_verdict(cluster, p, minimal):
    with_superset = classify(cluster, p, 40)
    with_minimal = classify(cluster, p, 40, delta=DeltaSet(tuple(minimal)))
    assert STRENGTH[with_superset.case] >= STRENGTH[with_minimal.case]
    assert check_embedded(with_superset) and check_embedded(with_minimal)


def test_case21_line_avoids_scaled_kernel(trichotomy_cases):
    for case in trichotomy_cases:
        if case["case"] != CASE2_1:
            continue
        result = classify(Cluster(case["points"]), case["prime"], 40)
        w = result.witness
        rho, v = w.line
        ng0 = tuple(w.scaling * x for x in w.g0)
        pts = [tuple(Fr(a) for a in rho.shift(Fr(k, 7), v).coords) for k in range(7)]
        assert not all(oracles.in_kernel(x, ng0) for x in pts)
        base = result.cluster.points[0]
        normalized = [oracles.sub(q, base) for q in result.cluster.points]
        for x in pts:
            assert oracles.z_membership_float(normalized, x, len(normalized))

"""Case analysis for clusters of size p^2 in Z^3.

The number of support directions along which every line meets the cluster
in a multiple of ``p`` points decides the case.  With two such directions,
or one together with a suitable line in the zero set, the cluster is a
prism and a fully periodic tiling is searched for.  The remaining cases
only come with the line data that certifies them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

from . import lattice as lat
from .cluster import (Cluster, PrismDecomposition, all_fibers_divisible, line_fibers,
                      prism_from_divisibility)
from .errors import DomainError
from .lattice import IntVec
from .spectral import (DeltaSet, LinesDivisible, RationalLineFamily, RationalTorusPoint,
                       check_line_containment_in_kernel, compute_delta, is_prime, line_in_Z,
                       merge_directions, pairing, prime_power_exponent, precursor_conclusion_check,
                       support_dichotomy)
from .tiler import PeriodicTiling, tile_prism, verify_tiling

CASE1 = "Case1"
CASE2_1 = "Case2_1"
CASE2_2 = "Case2_2"
CASE3 = "Case3"

NOTE_CASE2_2 = "1-periodic point exists in the orbit closure; construction out of scope"
NOTE_CASE3 = ("weak periodicity theorem for polynomial sequences applies; "
              "1-weakly periodic tiling exists; construction out of scope")


@dataclass(frozen=True)
class Case1Witness:
    g0: IntVec
    g1: IntVec
    normal: IntVec
    prism: PrismDecomposition | None
    tiling: PeriodicTiling | None


@dataclass(frozen=True)
class Case21Witness:
    g0: IntVec
    scaling: int
    line: tuple  # (RationalTorusPoint, IntVec)
    prism: PrismDecomposition | None
    tiling: PeriodicTiling | None


@dataclass(frozen=True)
class Case22Witness:
    g0: IntVec
    scaling: int
    families: tuple  # (h, RationalLineFamily) pairs
    note: str = NOTE_CASE2_2


@dataclass(frozen=True)
class Case3Witness:
    families: tuple
    note: str = NOTE_CASE3


@dataclass(frozen=True)
class Classification:
    """Outcome of ``classify``; geometry refers to the cluster as given."""

    cluster: Cluster
    p: int
    delta: DeltaSet
    divisible_dirs: tuple
    case: str
    witness: object
    offset: IntVec = field(default=(0, 0, 0))

    @property
    def tiling(self) -> PeriodicTiling | None:
        return getattr(self.witness, "tiling", None)

    @property
    def constructive(self) -> bool:
        return self.case in (CASE1, CASE2_1)


def support_set(cluster: Cluster) -> DeltaSet:
    """Support directions depending only on the differences of the cluster.

    The zero set is unchanged by translating the cluster, so the supports
    computed from every choice of origin in ``F`` can be merged; the result
    does not depend on where ``F`` sits.
    """
    vectors = []
    for a in cluster.points:
        vectors.extend(compute_delta(cluster.translate(lat.vscale(-1, a))).vectors)
    return merge_directions(vectors)


def _shift_prism(prism: PrismDecomposition | None, w: IntVec) -> PrismDecomposition | None:
    if prism is None:
        return None
    return PrismDecomposition(prism.base, prism.axis, lat.vadd(prism.translate, w),
                              prism.offsets, tuple(sorted(lat.vadd(a, w) for a in prism.foundation)))


def _shift_tiling(tiling: PeriodicTiling | None, w: IntVec) -> PeriodicTiling | None:
    # T + F0 = Z^3 with F = F0 + w gives (T - w) + F = Z^3
    return None if tiling is None else tiling.translate(lat.vscale(-1, w))


def _families(cluster: Cluster, p: int, vectors) -> tuple:
    out = []
    for h in vectors:
        fam = support_dichotomy(cluster, p, h)
        if isinstance(fam, LinesDivisible):
            fam = RationalLineFamily.empty()
        out.append((h, fam))
    return tuple(out)


def classify(cluster: Cluster, p: int, search_cap: int, delta: DeltaSet | None = None,
             experimental: bool = False) -> Classification:
    """Decide the case of a cluster of size ``p^2`` in ``Z^3``.

    ``delta`` replaces the computed support set (it must cover the zero
    set).  ``experimental`` admits any power of ``p``; the constructive
    steps then only run when the size is ``p^2``.
    """
    if cluster.dim != 3:
        raise DomainError("classification is defined for clusters in Z^3")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = len(cluster)
    if experimental:
        if prime_power_exponent(n, p) is None or n == 1:
            raise DomainError(f"|F| = {n} is not a power of {p}")
    elif n != p * p:
        raise DomainError(f"|F| = {n} is not {p}^2")
    square = n == p * p

    f0, w = cluster.normalized()
    if delta is None:
        delta = support_set(f0)
    divisible = tuple(g for g in delta.vectors
                      if all_fibers_divisible(line_fibers(f0, g), p))

    def done(case, witness):
        return Classification(cluster, p, delta, divisible, case, witness, w)

    if len(divisible) >= 2:
        g0, g1 = divisible[0], divisible[1]
        # planes containing g1 are unions of g1-lines, and g0 leaves them
        normal = lat.primitive_part(lat.cross(g1, lat.cross(g0, g1)))
        prism = tiling = None
        if square:
            prism = prism_from_divisibility(f0, p, g0, normal)
            tiling = tile_prism(prism, f0, search_cap)
        return done(CASE1, Case1Witness(g0, g1, normal, _shift_prism(prism, w),
                                        _shift_tiling(tiling, w)))

    if len(divisible) == 1:
        g0 = divisible[0]
        families = _families(f0, p, [h for h in delta.vectors if h != g0])
        points = {rho for _, fam in families for rho in fam.points}
        scaling = reduce(math.lcm, (_pair_den(rho, g0) for rho in points), 1)
        ng0 = lat.vscale(scaling, g0)
        for _, fam in families:
            for rho, v in fam.lines():
                if check_line_containment_in_kernel((rho, v), ng0):
                    continue
                if not line_in_Z(f0, rho, v):
                    continue
                prism = tiling = None
                if square:
                    if not precursor_conclusion_check(f0, p, rho, v):
                        raise AssertionError("plane divisibility failed on a line inside Z")
                    prism = prism_from_divisibility(f0, p, g0, v)
                    tiling = tile_prism(prism, f0, search_cap)
                return done(CASE2_1, Case21Witness(g0, scaling, (rho, v),
                                                   _shift_prism(prism, w),
                                                   _shift_tiling(tiling, w)))
        return done(CASE2_2, Case22Witness(g0, scaling, families))

    return done(CASE3, Case3Witness(_families(f0, p, delta.vectors)))


def _pair_den(rho: RationalTorusPoint, g: Sequence[int]) -> int:
    return pairing(g, rho).denominator


def check_embedded(result: Classification) -> bool:
    """Every prism and tiling carried by the result is valid for its cluster."""
    prism = getattr(result.witness, "prism", None)
    if prism is not None and not prism.is_valid_for(result.cluster):
        return False
    tiling = result.tiling
    if tiling is not None:
        if not verify_tiling(result.cluster, tiling) or tiling.period.rank != 3:
            return False
    return True

"""Finite clusters of lattice points, their fibers, and prism structure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import lattice as lat
from .errors import DomainError
from .lattice import IntVec, Sublattice


@dataclass(frozen=True)
class Cluster:
    """A nonempty finite set of points of ``Z^dim`` (``dim`` in 1..3).

    Points are kept sorted so two clusters with the same point set compare
    equal.
    """

    points: tuple

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = [lat.vec(p) for p in points]
        if not pts:
            raise DomainError("a cluster must be nonempty")
        dim = len(pts[0])
        if not 1 <= dim <= 3:
            raise DomainError(f"unsupported dimension {dim}")
        if any(len(p) != dim for p in pts):
            raise DomainError("points have inconsistent dimension")
        if len(set(pts)) != len(pts):
            raise DomainError("duplicate points in cluster")
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.pointset

    @property
    def pointset(self) -> frozenset:
        return frozenset(self.points)

    def translate(self, w: Sequence[int]) -> "Cluster":
        return Cluster(lat.vadd(p, w) for p in self.points)

    def dilate(self, alpha: int) -> "Cluster":
        return Cluster(lat.vscale(alpha, p) for p in self.points)

    def transform(self, t: Sequence[Sequence[int]]) -> "Cluster":
        return Cluster(lat.mat_vec(t, p) for p in self.points)

    def normalized(self) -> tuple["Cluster", IntVec]:
        """Translate so the lexicographically smallest point is the origin.

        Returns the translated cluster and the removed offset ``w`` (so the
        original is ``normalized + w``).
        """
        w = self.points[0]
        return self.translate(lat.vscale(-1, w)), w

    def differences(self) -> list[IntVec]:
        return [lat.vsub(b, a) for i, a in enumerate(self.points)
                for b in self.points[i + 1:]]

    def affine_rank(self) -> int:
        return lat.rank(self.differences())


@dataclass(frozen=True)
class FiberPartition:
    """Partition of a cluster along a line direction or by a plane normal.

    ``kind`` is ``"line"`` (two points share a fiber iff their difference is
    parallel to ``direction``) or ``"normal"`` (iff they have the same inner
    product with ``direction``).
    """

    kind: str
    direction: IntVec
    fibers: tuple  # tuple of tuples of points

    @property
    def sizes(self) -> list[int]:
        return [len(f) for f in self.fibers]


def _line_key(p: Sequence[int], g: Sequence[int]) -> tuple:
    n = len(g)
    return tuple(p[i] * g[j] - p[j] * g[i] for i in range(n) for j in range(i + 1, n))


def line_fibers(cluster: Cluster, g: Sequence[int]) -> FiberPartition:
    """Intersections of the cluster with lines parallel to ``g``, ordered by smallest point."""
    g = lat.vec(g)
    if lat.is_zero(g):
        raise DomainError("line direction must be nonzero")
    if len(g) != cluster.dim:
        raise DomainError("dimension mismatch")
    groups: dict = {}
    for p in cluster.points:
        groups.setdefault(_line_key(p, g), []).append(p)
    fibers = sorted((tuple(f) for f in groups.values()), key=lambda f: f[0])
    return FiberPartition("line", g, tuple(fibers))


def normal_fibers(cluster: Cluster, v: Sequence[int]) -> FiberPartition:
    """Level sets of ``x -> <x, v>`` on the cluster, by increasing level."""
    v = lat.vec(v)
    if lat.is_zero(v):
        raise DomainError("plane normal must be nonzero")
    if len(v) != cluster.dim:
        raise DomainError("dimension mismatch")
    groups: dict = {}
    for p in cluster.points:
        groups.setdefault(lat.dot(p, v), []).append(p)
    fibers = tuple(tuple(groups[k]) for k in sorted(groups))
    return FiberPartition("normal", v, fibers)


def all_fibers_divisible(partition: FiberPartition, p: int) -> bool:
    """Every fiber size is a multiple of ``p``.

    Applied to line fibers along ``g`` this decides divisibility for every
    line parallel to ``g`` and, equivalently, for every plane parallel to
    ``g``.  Empty intersections count as divisible.
    """
    return all(len(f) % p == 0 for f in partition.fibers)


# ---------------------------------------------------------------------------
# prisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrismDecomposition:
    """Witness that a cluster is a union of axis translates of one foundation.

    ``foundation = (translate + base) & F`` and
    ``F = union(n * axis + foundation for n in offsets)``.
    """

    base: Sublattice
    axis: IntVec
    translate: IntVec
    offsets: tuple  # sorted ints, containing 0
    foundation: tuple  # sorted points

    def layers(self) -> list[list[IntVec]]:
        return [[lat.vadd(a, lat.vscale(n, self.axis)) for a in self.foundation]
                for n in self.offsets]

    def reconstruct(self) -> set:
        return {p for layer in self.layers() for p in layer}

    def check(self, cluster: Cluster) -> None:
        """Raise DomainError unless every invariant holds for ``cluster``."""
        if cluster.dim != 3 or self.base.ambient_dim != 3:
            raise DomainError("prisms live in Z^3")
        if self.base.rank != 2:
            raise DomainError("prism base must have rank 2")
        if lat.is_zero(self.axis) or lat.rank(list(self.base.basis) + [self.axis]) != 3:
            raise DomainError("axis must leave the plane of the base")
        if 0 not in self.offsets or len(set(self.offsets)) != len(self.offsets):
            raise DomainError("offsets must be distinct and contain 0")
        if not self.foundation:
            raise DomainError("foundation must be nonempty")
        coset = tuple(sorted(p for p in cluster.points
                             if self.base.contains(lat.vsub(p, self.translate))))
        if coset != tuple(sorted(self.foundation)):
            raise DomainError("foundation is not the cluster's intersection with the base coset")
        if self.reconstruct() != cluster.pointset:
            raise DomainError("layers do not reconstruct the cluster")

    def is_valid_for(self, cluster: Cluster) -> bool:
        try:
            self.check(cluster)
        except DomainError:
            return False
        return True


def _plane_normal(span_vectors: list[IntVec], axis: IntVec) -> IntVec:
    """Primitive ``nu`` orthogonal to ``span_vectors`` with ``<nu, axis> != 0``.

    Requires ``axis`` outside the rational span of ``span_vectors``.
    """
    for e in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
        if all(lat.dot(e, w) == 0 for w in span_vectors) and lat.dot(e, axis):
            return e
    rows = [w for w in span_vectors if any(w)]
    ker = lat.kernel_basis(rows, 3) if rows else list(lat.identity(3))
    for k in ker:
        if lat.dot(k, axis):
            return lat.canonical_direction(k)
    # a combination of two kernel vectors both orthogonal to axis would be too
    raise AssertionError("axis lies in the span; no transversal plane")


def _candidate_axes(cluster: Cluster) -> list[IntVec]:
    dirs = {lat.canonical_direction(d) for d in cluster.differences()}
    # prefer short axes, and among equals the later coordinates (e3 first)
    return sorted(dirs, key=lambda g: (sum(map(abs, g)), tuple(-abs(c) for c in reversed(g)), g))


def _decompose_along(cluster: Cluster, g: IntVec) -> PrismDecomposition | None:
    fibers = line_fibers(cluster, g).fibers
    patterns = set()
    bottoms = []
    for f in fibers:
        # position of each point along g relative to the fiber's lowest point
        k = next(i for i, c in enumerate(g) if c)
        steps = [(q[k] - f[0][k]) // g[k] for q in f]
        low = min(steps)
        patterns.add(tuple(sorted(s - low for s in steps)))
        bottoms.append(f[steps.index(low)])
    if len(patterns) != 1:
        return None
    offsets = patterns.pop()
    if len(offsets) < 2:
        return None
    diffs = [lat.vsub(b, bottoms[0]) for b in bottoms[1:]]
    if lat.rank(diffs + [g]) == lat.rank(diffs):
        return None
    nu = _plane_normal(diffs, g)
    base = Sublattice.span(lat.kernel_basis([nu], 3), 3)
    h = bottoms[0]
    return PrismDecomposition(base, g, h, offsets, tuple(sorted(bottoms)))


def prism_decompose(cluster: Cluster) -> PrismDecomposition | None:
    """Find a prism structure for a cluster in ``Z^3``, or None if there is none.

    Axes are tried among primitive directions of point differences; a
    cluster lying in a single plane is reported as a one-layer prism when no
    multi-layer structure exists.
    """
    if cluster.dim != 3:
        raise DomainError("prism decomposition is defined in Z^3")
    for g in _candidate_axes(cluster):
        found = _decompose_along(cluster, g)
        if found is not None:
            return found
    diffs = cluster.differences()
    r = lat.rank(diffs)
    if r <= 2:
        span = [d for d in diffs if any(d)]
        axis = next(e for e in ((0, 0, 1), (0, 1, 0), (1, 0, 0))
                    if lat.rank(span + [e]) > r)
        nu = _plane_normal(span, axis)
        base = Sublattice.span(lat.kernel_basis([nu], 3), 3)
        return PrismDecomposition(base, axis, cluster.points[0], (0,), cluster.points)
    return None


def prism_from_divisibility(cluster: Cluster, p: int, g: Sequence[int],
                            v: Sequence[int]) -> PrismDecomposition:
    """Prism with ``p`` layers of ``p`` points, from two divisibility facts.

    Needs ``|F| = p^2``, all line fibers along ``g`` divisible by ``p``, all
    level sets of ``<., v>`` divisible by ``p`` and ``<g, v> != 0``.  The plane
    ``v^perp`` is flattened to ``Z^2 x {0}``; the occupied layers are read off
    bottom to top and matched along ``g``.
    """
    g = lat.vec(g)
    v = lat.vec(v)
    if cluster.dim != 3:
        raise DomainError("expected a cluster in Z^3")
    if len(cluster) != p * p:
        raise DomainError(f"hypothesis |F| = p^2 fails: |F| = {len(cluster)}, p = {p}")
    if lat.is_zero(g) or lat.is_zero(v):
        raise DomainError("g and v must be nonzero")
    if not all_fibers_divisible(line_fibers(cluster, g), p):
        raise DomainError(f"hypothesis fails: some line parallel to {g} meets F "
                          f"in a set of size not divisible by {p}")
    if not all_fibers_divisible(normal_fibers(cluster, v), p):
        raise DomainError(f"hypothesis fails: some plane with normal {v} meets F "
                          f"in a set of size not divisible by {p}")
    if lat.dot(g, v) == 0:
        raise DomainError("hypothesis fails: the plane with normal v is parallel to g")

    g = lat.primitive_part(g)
    plane = Sublattice.span(lat.kernel_basis([v], 3), 3)
    t = lat.flatten_subgroup(plane)
    height = {q: lat.mat_vec(t, q)[2] for q in cluster.points}
    levels = sorted(set(height.values()))
    assert len(levels) == p, "layer count forced by the divisibility hypotheses"
    layers = [[q for q in cluster.points if height[q] == lv] for lv in levels]
    bottom = layers[0]
    h = bottom[0]
    offsets = []
    for layer in layers:
        match = [q for q in layer if lat.parallel(lat.vsub(q, h), g)]
        assert len(match) == 1
        d = lat.vsub(match[0], h)
        k = next(i for i, c in enumerate(g) if c)
        offsets.append(d[k] // g[k])
    prism = PrismDecomposition(plane, g, h, tuple(sorted(offsets)), tuple(sorted(bottom)))
    prism.check(cluster)
    return prism

"""Periodic tilings of Z^n by translates of a cluster.

A fully periodic tiling is stored as a full-rank period lattice together
with one representative per translate class modulo it.  Finding one is an
exact cover problem on the finite torus ``Z^n / L``; in one dimension the
transfer graph of coverage states gives every tiling at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from . import lattice as lat
from .cluster import Cluster, PrismDecomposition
from .errors import DomainError
from .lattice import IntVec, Sublattice
from .spectral import is_prime


@dataclass(frozen=True)
class PeriodicTiling:
    """``T = reps + period``; ``reps`` are reduced modulo ``period`` and sorted."""

    dim: int
    period: Sublattice
    reps: tuple

    def __init__(self, period: Sublattice, reps: Iterable[Sequence[int]]):
        if not period.is_full_rank:
            raise DomainError("a periodic tiling needs a full-rank period lattice")
        reduced = sorted({period.reduce(r) for r in reps})
        object.__setattr__(self, "dim", period.ambient_dim)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "reps", tuple(reduced))

    def contains(self, t: Sequence[int]) -> bool:
        return self.period.reduce(t) in set(self.reps)

    def translate(self, w: Sequence[int]) -> "PeriodicTiling":
        return PeriodicTiling(self.period, (lat.vadd(r, w) for r in self.reps))


@dataclass(frozen=True)
class OneDimReport:
    """All tilings of Z by a 1-D cluster, as 0/1 words of common length ``uniform_period``.

    ``words[i][k] == "1"`` means ``k`` is in the tiling (up to translation).
    """

    uniform_period: int
    tilings: tuple
    exact: bool

    def tiling_sets(self) -> list[list[int]]:
        return [[k for k, c in enumerate(w) if c == "1"] for w in self.tilings]

    def as_periodic(self, index: int = 0) -> PeriodicTiling:
        return PeriodicTiling(Sublattice.diagonal(self.uniform_period),
                              [(k,) for k in self.tiling_sets()[index]])


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_tiling(cluster: Cluster, tiling: PeriodicTiling) -> bool:
    """Does every class of ``Z^n / period`` arise exactly once as ``t + a``?"""
    if cluster.dim != tiling.dim:
        raise DomainError("cluster and tiling dimensions differ")
    period = tiling.period
    if len(cluster) * len(tiling.reps) != period.index:
        return False
    seen = set()
    for t in tiling.reps:
        for a in cluster.points:
            c = period.reduce(lat.vadd(t, a))
            if c in seen:
                return False
            seen.add(c)
    return True


def dilation_check(cluster: Cluster, tiling: PeriodicTiling, alpha: int) -> bool:
    """Check that a tiling by ``F`` also tiles with the dilate ``alpha F``."""
    if alpha < 1 or math.gcd(alpha, len(cluster)) != 1:
        raise DomainError(f"alpha = {alpha} is not a positive integer coprime to |F| = {len(cluster)}")
    if not verify_tiling(cluster, tiling):
        raise DomainError("the given set is not a tiling by the cluster")
    return verify_tiling(cluster.dilate(alpha), tiling)


# ---------------------------------------------------------------------------
# exact cover on a torus
# ---------------------------------------------------------------------------

def _exact_cover(ncells: int, placements: list[int]) -> list[int] | None:
    """Indices of placements (bitmasks) partitioning ``ncells`` cells, or None.

    Branches on the uncovered cell with the fewest compatible placements,
    lowest cell first on ties, and tries placements in list order.
    """
    by_cell: list[list[int]] = [[] for _ in range(ncells)]
    for i, m in enumerate(placements):
        for c in range(ncells):
            if m >> c & 1:
                by_cell[c].append(i)
    full = (1 << ncells) - 1

    def search(covered: int, chosen: list[int]) -> list[int] | None:
        if covered == full:
            return chosen
        best = None
        best_opts = None
        for c in range(ncells):
            if covered >> c & 1:
                continue
            opts = [i for i in by_cell[c] if not placements[i] & covered]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = c, opts
                if not opts:
                    return None
        for i in best_opts:
            found = search(covered | placements[i], chosen + [i])
            if found is not None:
                return found
        return None

    return search(0, [])


def tile_torus(cluster: Cluster, period: Sublattice) -> PeriodicTiling | None:
    """Tile ``Z^n / period`` by translates of the cluster, if possible."""
    if cluster.dim != period.ambient_dim:
        raise DomainError("dimension mismatch")
    if not period.is_full_rank:
        raise DomainError("the torus lattice must have full rank")
    n = period.index
    if n % len(cluster):
        raise DomainError(f"index {n} is not divisible by |F| = {len(cluster)}")
    cells = period.coset_representatives()
    pos = {c: i for i, c in enumerate(cells)}
    placements: list[int] = []
    owners: list[IntVec] = []
    seen = set()
    for t in cells:
        hit = {pos[period.reduce(lat.vadd(t, a))] for a in cluster.points}
        if len(hit) < len(cluster):
            continue  # the translate overlaps itself on the torus
        mask = sum(1 << i for i in hit)
        if mask not in seen:
            seen.add(mask)
            placements.append(mask)
            owners.append(t)
    chosen = _exact_cover(len(cells), placements)
    if chosen is None:
        return None
    tiling = PeriodicTiling(period, [owners[i] for i in chosen])
    assert verify_tiling(cluster, tiling)
    return tiling


def search_fully_periodic(cluster: Cluster, max_index: int,
                          prefer: Sequence[Sequence[int]] | None = None) -> PeriodicTiling | None:
    """First torus tiling over lattices of index ``|F|, 2|F|, ...`` up to ``max_index``.

    Within one index, lattices containing every vector of ``prefer`` are
    tried first.  None means the cap was exhausted, not that the cluster
    fails to tile.
    """
    if max_index < 1:
        raise DomainError("max_index must be positive")
    k = len(cluster)
    for index in range(k, max_index + 1, k):
        lattices = lat.enumerate_hnf(cluster.dim, index)
        if prefer:
            lattices = ([L for L in lattices if all(L.contains(v) for v in prefer)]
                        + [L for L in lattices if not all(L.contains(v) for v in prefer)])
        for L in lattices:
            found = tile_torus(cluster, L)
            if found is not None:
                return found
    return None


# ---------------------------------------------------------------------------
# one dimension
# ---------------------------------------------------------------------------

def transfer_graph(cluster: Cluster) -> tuple[dict[int, int], int]:
    """Coverage-state transfer map of a 1-D cluster normalized to start at 0.

    At position ``x`` the state records which of the cells ``x .. x + diam``
    are already covered by tiles placed to the left (the last is always
    free).  If ``x`` is covered the window slides; otherwise a tile must be
    placed at ``x``, which is allowed only without overlap.  So each state has
    at most one successor.  Returns ``(successor map, diam)``.
    """
    if cluster.dim != 1:
        raise DomainError("expected a 1-D cluster")
    low = cluster.points[0][0]
    offs = [p[0] - low for p in cluster.points]
    diam = offs[-1]
    mask = sum(1 << a for a in offs)
    succ: dict[int, int] = {}
    for s in range(1 << diam):
        if s & 1:
            succ[s] = s >> 1
        elif not s & mask:
            succ[s] = (s | mask) >> 1
    return succ, diam


def _cycles(succ: dict[int, int]) -> list[list[int]]:
    """Cycles of a partial functional graph, each starting at its smallest node."""
    cycles = []
    done: set = set()
    for start in sorted(succ):
        path: list[int] = []
        where: dict[int, int] = {}
        x = start
        while x in succ and x not in done and x not in where:
            where[x] = len(path)
            path.append(x)
            x = succ[x]
        if x in where:
            cyc = path[where[x]:]
            k = cyc.index(min(cyc))
            cycles.append(cyc[k:] + cyc[:k])
        done.update(path)
    return cycles


def tile_1d(cluster: Cluster) -> OneDimReport:
    """Every tiling of Z by a 1-D cluster, with a period common to all of them.

    Bi-infinite paths of the transfer graph are exactly the tilings.  The
    recurrent part must be a disjoint union of cycles; this is checked, and
    the lcm of the cycle lengths is a period of every tiling.
    """
    succ, _ = transfer_graph(cluster)
    cycles = _cycles(succ)
    recurrent = {x for c in cycles for x in c}
    indeg: dict[int, int] = {x: 0 for x in recurrent}
    for x in recurrent:
        assert succ[x] in recurrent
        indeg[succ[x]] += 1
    if any(d != 1 for d in indeg.values()):
        raise AssertionError("recurrent transfer subgraph is not a union of cycles")
    period = reduce(math.lcm, (len(c) for c in cycles), 1)
    words = []
    for c in cycles:
        w = "".join("0" if s & 1 else "1" for s in c)
        w = max(w[i:] + w[:i] for i in range(len(w)))
        words.append(w * (period // len(w)))
    return OneDimReport(period, tuple(sorted(words, reverse=True)), bool(words))


# ---------------------------------------------------------------------------
# prisms
# ---------------------------------------------------------------------------

def _base_coords(base: Sublattice, v: Sequence[int]) -> IntVec:
    coords = base.coordinates(v)
    assert coords is not None
    return coords


def tile_prism(prism: PrismDecomposition, cluster: Cluster, max_index: int) -> PeriodicTiling | None:
    """Fully periodic tiling of a prism with a prime-size foundation.

    First tries the product of a tiling of Z by the layer offsets and a
    tiling of the base by the foundation; failing that, a bounded torus
    search favouring periods built from the base tiling.
    """
    prism.check(cluster)
    if not is_prime(len(prism.foundation)):
        raise DomainError(f"foundation size {len(prism.foundation)} is not prime")
    h = prism.translate
    g = prism.axis
    cols = list(prism.base.basis)
    base_cluster = Cluster(_base_coords(prism.base, lat.vsub(a, h)) for a in prism.foundation)
    flat = search_fully_periodic(base_cluster, max_index)
    offsets = tile_1d(Cluster((n,) for n in prism.offsets))
    prefer = None
    if flat is not None:
        images = [lat.mat_vec(lat.from_columns(cols), b) for b in flat.period.basis]
        prefer = images
        if offsets.exact:
            n_o = offsets.uniform_period
            period = Sublattice.span(images + [lat.vscale(n_o, g)], 3)
            column_lat = Sublattice.span(cols + [g], 3)
            cosets = column_lat.coset_representatives()
            reps = []
            for c in cosets:
                for b in flat.reps:
                    pb = lat.mat_vec(lat.from_columns(cols), b)
                    for k in offsets.tiling_sets()[0]:
                        reps.append(lat.vsub(lat.vadd(lat.vadd(c, pb), lat.vscale(k, g)), h))
            tiling = PeriodicTiling(period, reps)
            if verify_tiling(cluster, tiling):
                return tiling
    return search_fully_periodic(cluster, max_index, prefer)

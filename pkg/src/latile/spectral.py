"""The zero set of a cluster's mask sums at rational torus points.

For a cluster ``F`` containing the origin, ``Z`` is the set of torus points
where ``sum_{g in F} exp(2 pi i alpha <g, x>)`` vanishes for every positive
``alpha`` coprime to ``|F|``.  Restricted to rational points every question
about ``Z`` reduces to finitely many vanishing tests in ``Z[zeta_D]``, which
this module answers exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from . import lattice as lat
from .cluster import Cluster, all_fibers_divisible, line_fibers, normal_fibers
from .cyclotomic import CycLaurentPoly, is_zero_poly, root_power_sum
from .errors import DomainError
from .lattice import IntVec


# ---------------------------------------------------------------------------
# small number theory
# ---------------------------------------------------------------------------

def prime_factors(n: int) -> list[int]:
    out = []
    n = abs(n)
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def radical(n: int) -> int:
    return math.prod(prime_factors(n))


def prime_power_exponent(n: int, p: int) -> int | None:
    """``k`` with ``n == p**k``, or None."""
    k = 0
    while n % p == 0 and n > 1:
        n //= p
        k += 1
    return k if n == 1 else None


def realizable_residues(d: int, modulus: int) -> list[int]:
    """Residues ``r mod d`` hit by some positive ``alpha`` coprime to ``modulus``.

    A prime dividing both ``modulus`` and ``d`` divides ``alpha`` iff it divides
    ``r``; primes of ``modulus`` not dividing ``d`` can always be dodged by CRT.
    """
    g = math.gcd(modulus, d)
    return [r for r in range(d) if math.gcd(r, g) == 1]


def realize_residue(r: int, d: int, modulus: int) -> int:
    """Smallest positive ``alpha = r (mod d)`` coprime to ``modulus``."""
    alpha = r % d or d
    while math.gcd(alpha, modulus) != 1:
        alpha += d
        if alpha > d * modulus + d:
            raise DomainError(f"residue {r} mod {d} is not realizable coprime to {modulus}")
    return alpha


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

class RationalTorusPoint:
    """A point of ``R^n / Z^n`` with rational coordinates reduced to ``[0, 1)``.

    Stored as a common denominator and integer numerators, which is also the
    sort key.
    """

    __slots__ = ("den", "nums")

    def __init__(self, coords: Iterable):
        fr = [Fraction(c) % 1 for c in coords]
        den = reduce(math.lcm, (c.denominator for c in fr), 1)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "nums", tuple(int(c * den) for c in fr))

    def __setattr__(self, name, value):
        raise AttributeError("RationalTorusPoint is immutable")

    @classmethod
    def from_numerators(cls, den: int, nums: Iterable[int]) -> "RationalTorusPoint":
        """The point ``nums / den`` without going through Fraction."""
        nums = [x % den for x in nums]
        g = reduce(math.gcd, nums, den)
        out = object.__new__(cls)
        object.__setattr__(out, "den", den // g)
        object.__setattr__(out, "nums", tuple(x // g for x in nums))
        return out

    @property
    def coords(self) -> tuple:
        return tuple(Fraction(x, self.den) for x in self.nums)

    @property
    def dim(self) -> int:
        return len(self.nums)

    @property
    def denominator(self) -> int:
        return self.den

    def _key(self):
        return (self.den, self.nums)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalTorusPoint):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: "RationalTorusPoint") -> bool:
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __add__(self, other) -> "RationalTorusPoint":
        return RationalTorusPoint(a + b for a, b in zip(self.coords, _coords(other)))

    def __sub__(self, other) -> "RationalTorusPoint":
        return RationalTorusPoint(a - b for a, b in zip(self.coords, _coords(other)))

    def shift(self, t, v: Sequence[int]) -> "RationalTorusPoint":
        """``self + t v`` on the torus."""
        t = Fraction(t)
        return RationalTorusPoint(a + t * b for a, b in zip(self.coords, v))

    def __repr__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _coords(x) -> tuple:
    return x.coords if isinstance(x, RationalTorusPoint) else tuple(Fraction(c) for c in x)


def pairing(g: Sequence[int], rho: RationalTorusPoint) -> Fraction:
    """``<g, rho>`` modulo 1."""
    return Fraction(sum(a * b for a, b in zip(g, rho.nums)) % rho.den, rho.den)


def in_kernel(rho: RationalTorusPoint, g: Sequence[int]) -> bool:
    """``chi_g(rho) == 1``."""
    return pairing(g, rho) == 0


@dataclass(frozen=True)
class DeltaSet:
    """Pairwise linearly independent nonzero vectors whose character kernels cover ``Z``."""

    vectors: tuple

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def covers(self, rho: RationalTorusPoint) -> bool:
        return any(in_kernel(rho, h) for h in self.vectors)


def on_line(w: RationalTorusPoint, rho: RationalTorusPoint, v: Sequence[int]) -> bool:
    """Is ``w`` on the torus line ``{rho + t v : t real}``?"""
    d = (w - rho).coords
    i = next((k for k, c in enumerate(v) if c), None)
    if i is None:
        return all(c == 0 for c in d)
    # t v_i = d_i (mod 1) pins t modulo 1 to |v_i| candidates
    for k in range(abs(v[i])):
        t = (d[i] + k) / v[i]
        if all((c - t * b) % 1 == 0 for c, b in zip(d, v)):
            return True
    return False


@dataclass(frozen=True)
class RationalLineFamily:
    """Lines ``rho + t v`` for every ``rho`` in ``points`` and ``v`` in ``directions``."""

    points: tuple
    directions: tuple
    modulus: int | None = None

    def lines(self):
        return [(rho, v) for rho in self.points for v in self.directions]

    def contains(self, w: RationalTorusPoint) -> bool:
        return any(on_line(w, rho, v) for rho in self.points for v in self.directions)

    def union(self, other: "RationalLineFamily") -> "RationalLineFamily":
        return RationalLineFamily(
            tuple(sorted(set(self.points) | set(other.points))),
            tuple(sorted(set(self.directions) | set(other.directions))),
            None,
        )

    @classmethod
    def empty(cls) -> "RationalLineFamily":
        return cls((), (), None)


@dataclass(frozen=True)
class LinesDivisible:
    """Every line parallel to ``direction`` meets the cluster in a multiple of ``p`` points."""

    direction: IntVec
    p: int


# ---------------------------------------------------------------------------
# Z membership
# ---------------------------------------------------------------------------

def _require_origin(cluster: Cluster) -> None:
    if (0,) * cluster.dim not in cluster:
        raise DomainError("the cluster must contain the origin")


def _phases(cluster: Cluster, rho: RationalTorusPoint) -> tuple[int, list[int]]:
    """``D`` and the numerators ``c_g`` with ``<g, rho> = c_g / D (mod 1)``."""
    raw = [sum(a * b for a, b in zip(g, rho.nums)) % rho.den for g in cluster.points]
    d = rho.den // reduce(math.gcd, raw, rho.den)
    scale = rho.den // d
    return d, [x // scale for x in raw]


def z_membership(cluster: Cluster, rho: RationalTorusPoint, coprime_to: int | None = None) -> bool:
    """Does every mask sum with frequency coprime to ``|F|`` vanish at ``rho``?

    The sum depends on ``alpha`` only modulo ``D``, the common denominator of
    the phases, so it suffices to test each realizable residue once.
    ``coprime_to`` overrides the modulus (default ``|F|``).
    """
    _require_origin(cluster)
    modulus = len(cluster) if coprime_to is None else coprime_to
    d, c = _phases(cluster, rho)
    if d == 1:
        return False
    # alpha = 1 is always allowed; a sum far from 0 in floating point is
    # certainly nonzero (rounding error is below 1e-12 here)
    if abs(sum(cmath.exp(2j * math.pi * x / d) for x in c)) > 1e-6:
        return False
    return all(root_power_sum(d, (r * x for x in c)).is_zero()
               for r in realizable_residues(d, modulus))


def compute_delta(cluster: Cluster) -> DeltaSet:
    """Pairwise independent vectors whose kernels cover ``Z``.

    Start from ``n g`` (``n`` the radical of ``|F|``) for each nonzero
    ``g in F`` and merge vectors on a common line into the generator of the
    intersection of the cyclic groups they generate.
    """
    _require_origin(cluster)
    if len(cluster) < 2:
        raise DomainError("a singleton cluster has empty zero set; no support set")
    n = radical(len(cluster))
    scales: dict[IntVec, int] = {}
    for g in cluster.points:
        if any(g):
            ng = lat.vscale(n, g)
            d = lat.canonical_direction(ng)
            s = abs(lat.content(ng))
            scales[d] = math.lcm(scales.get(d, 1), s)
    return DeltaSet(tuple(sorted(lat.vscale(s, d) for d, s in scales.items())))


def merge_directions(vectors: Iterable[Sequence[int]]) -> DeltaSet:
    """Merge vectors along common lines by lcm of scale, as in ``compute_delta``."""
    scales: dict[IntVec, int] = {}
    for w in vectors:
        d = lat.canonical_direction(w)
        scales[d] = math.lcm(scales.get(d, 1), abs(lat.content(w)))
    return DeltaSet(tuple(sorted(lat.vscale(s, d) for d, s in scales.items())))


# ---------------------------------------------------------------------------
# kernels and lines
# ---------------------------------------------------------------------------

def kernel_intersection_lines(g: Sequence[int], h: Sequence[int]) -> RationalLineFamily:
    """Lines covering ``ker chi_g & ker chi_h`` for independent ``g, h`` in ``Z^3``.

    With ``U M V = diag(d1, d2)`` for ``M = [g; h]``, the direction is the last
    column of ``V`` and ``n = d2`` is the least integer with ``n Z^2`` inside
    ``M(Z^3)``.  Every kernel point is ``y / n + t v`` with ``M y`` in
    ``n Z^2``; the emitted points are those ``y / n`` taken modulo the line.
    """
    g, h = lat.vec(g), lat.vec(h)
    if len(g) != 3 or len(h) != 3:
        raise DomainError("kernel intersection lines live in dimension 3")
    if lat.is_zero(g) or lat.is_zero(h) or lat.parallel(g, h):
        raise DomainError("g and h must be linearly independent")
    _, d, v = lat.smith_normal_form((g, h))
    d1, d2 = d[0][0], d[1][1]
    direction = lat.canonical_direction(lat.column(v, 2))
    n = d2
    points = set()
    for z1 in range(0, n, n // d1):
        for z2 in range(n):
            points.add(RationalTorusPoint.from_numerators(n, lat.mat_vec(v, (z1, z2, 0))))
    return RationalLineFamily(tuple(sorted(points)), (direction,), n)


def line_restriction_poly(cluster: Cluster, rho: RationalTorusPoint, v: Sequence[int],
                          alpha: int) -> CycLaurentPoly:
    """``q(z) = sum_g zeta_D^(alpha c_g) z^(alpha <g, v>)``.

    ``q(exp(2 pi i t))`` is the mask sum with frequency ``alpha`` at ``rho + t v``.
    """
    v = lat.vec(v)
    if lat.is_zero(v):
        raise DomainError("line direction must be nonzero")
    if alpha < 1 or math.gcd(alpha, len(cluster)) != 1:
        raise DomainError(f"alpha = {alpha} is not a positive integer coprime to |F| = {len(cluster)}")
    return _restriction(cluster, rho, v, alpha)


def _restriction(cluster, rho, v, alpha) -> CycLaurentPoly:
    d, c = _phases(cluster, rho)
    groups: dict[int, list[int]] = {}
    for g, cg in zip(cluster.points, c):
        groups.setdefault(alpha * lat.dot(g, v), []).append(alpha * cg)
    return CycLaurentPoly(d, [(e, root_power_sum(d, exps)) for e, exps in groups.items()])


def line_in_Z(cluster: Cluster, rho: RationalTorusPoint, v: Sequence[int],
              coprime_to: int | None = None) -> bool:
    """Does the whole line ``rho + t v`` lie in ``Z``?

    Equivalent to infinitely many of its points lying in ``Z``: each
    restriction polynomial would otherwise have only finitely many roots on
    the circle.  Exponent classes do not depend on ``alpha``, so one ``alpha``
    per realizable residue suffices.
    """
    _require_origin(cluster)
    v = lat.vec(v)
    if lat.is_zero(v):
        raise DomainError("line direction must be nonzero")
    modulus = len(cluster) if coprime_to is None else coprime_to
    sizes: dict[int, int] = {}
    for g in cluster.points:
        e = lat.dot(g, v)
        sizes[e] = sizes.get(e, 0) + 1
    if 1 in sizes.values():
        return False  # a lone root of unity never cancels
    d, _ = _phases(cluster, rho)
    if d == 1:
        return False
    return all(is_zero_poly(_restriction(cluster, rho, v, realize_residue(r, d, modulus)))
               for r in realizable_residues(d, modulus))


def precursor_conclusion_check(cluster: Cluster, p: int, rho: RationalTorusPoint,
                               v: Sequence[int]) -> bool:
    """Divisibility by ``p`` of every plane section with normal ``v``.

    Only defined when the line ``rho + t v`` lies in the zero set taken over
    frequencies coprime to ``p``; the answer is then always True, and is
    computed rather than assumed.
    """
    if not is_prime(p) or len(cluster) % p:
        raise DomainError(f"{p} must be a prime dividing |F| = {len(cluster)}")
    if not line_in_Z(cluster, rho, v, coprime_to=p):
        raise DomainError("hypothesis not verified: the line is not contained in Z")
    return all_fibers_divisible(normal_fibers(cluster, v), p)


def check_line_containment_in_kernel(line: tuple, g: Sequence[int]) -> bool:
    """``{rho + t v}`` lies in ``ker chi_g`` iff ``<v, g> = 0`` and ``<rho, g>`` is an integer."""
    rho, v = line
    return lat.dot(v, g) == 0 and in_kernel(rho, g)


def support_dichotomy(cluster: Cluster, p: int, h: Sequence[int]):
    """Either ``LinesDivisible`` along ``h`` or finitely many rational lines
    covering ``ker chi_h & Z``.

    The second branch moves ``h`` to ``(0, 0, m)``, builds every candidate
    ``m n beta (g^E - g^E', 1)`` over pairs of distinct line classes and over
    ``beta`` the ``p``-free parts of divisors of ``m``, maps them back and
    intersects their kernels with ``ker chi_h``.
    """
    _require_origin(cluster)
    h = lat.vec(h)
    if lat.is_zero(h):
        raise DomainError("h must be nonzero")
    if cluster.dim != 3:
        raise DomainError("support dichotomy is implemented in dimension 3")
    if not is_prime(p) or prime_power_exponent(len(cluster), p) is None:
        raise DomainError(f"|F| = {len(cluster)} is not a power of the prime {p}")
    fibers = line_fibers(cluster, h)
    if all_fibers_divisible(fibers, p):
        return LinesDivisible(h, p)

    m = lat.content(h)
    s = lat.complete_to_basis(lat.primitive_part(h))
    t = lat.inverse_unimodular(s)
    moved = [lat.mat_vec(t, g) for g in cluster.points]
    classes: dict = {}
    for g in moved:
        classes.setdefault(g[:2], g)
    reps = sorted(classes)
    n = radical(len(cluster))
    betas = sorted({_p_free(d, p) for d in range(1, m + 1) if m % d == 0})
    gamma = set()
    for beta in betas:
        k = m * n * beta
        for e in reps:
            for e2 in reps:
                if e != e2:
                    u = (k * (e[0] - e2[0]), k * (e[1] - e2[1]), k)
                    gamma.add(lat.mat_vec(s, u))
    points: set = set()
    directions: set = set()
    for u in gamma:
        part = kernel_intersection_lines(h, u)
        points.update(part.points)
        directions.update(part.directions)
    return RationalLineFamily(tuple(sorted(points)), tuple(sorted(directions)), None)


def _p_free(d: int, p: int) -> int:
    while d % p == 0:
        d //= p
    return d

"""Rational sequences in R/Z that are polynomial on residue classes.

A sequence ``s`` is stored as a modulus ``m`` and, for each residue ``c``,
coefficients ``a_0..a_d`` with ``s[c + m j] = a_0 + a_1 j + ... + a_d j^d``
modulo 1.  Laurent polynomials in the shift ``u`` act by
``(u^n s)[i] = s[i + n]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence


# ---------------------------------------------------------------------------
# polynomials with Fraction coefficients, low degree first
# ---------------------------------------------------------------------------

def _trim(a: list) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _eval(poly: Sequence[Fraction], x) -> Fraction:
    if isinstance(x, int):
        # integer Horner over a common denominator
        den = math.lcm(*(c.denominator for c in poly)) if poly else 1
        acc = 0
        for c in reversed(poly):
            acc = acc * x + c.numerator * (den // c.denominator)
        return Fraction(acc, den)
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _compose_affine(poly: Sequence[Fraction], a: int, b: int) -> list[Fraction]:
    """Coefficients of ``j -> poly(a + b j)``."""
    out = [Fraction(0)] * len(poly)
    for k, c in enumerate(poly):
        if c:
            for i in range(k + 1):
                out[i] += c * math.comb(k, i) * a ** (k - i) * b ** i
    return out


def _mod1(poly: Iterable[Fraction]) -> tuple:
    return _trim([Fraction(c) % 1 for c in poly])


def _newton_to_power(diffs: Sequence[Fraction]) -> list[Fraction]:
    """Power-basis coefficients of ``sum_k diffs[k] * binom(j, k)``."""
    out = [Fraction(0)] * max(len(diffs), 1)
    basis = [Fraction(1)]  # coefficients of binom(j, k)
    for k, d in enumerate(diffs):
        for i, c in enumerate(basis):
            out[i] += d * c
        # binom(j, k+1) = binom(j, k) * (j - k) / (k + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nxt[i + 1] += c / (k + 1)
            nxt[i] -= c * k / (k + 1)
        basis = nxt
    return out


# ---------------------------------------------------------------------------
# sequences and operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PiecewisePolySeq:
    """Sequence in R/Z given by one polynomial per residue class mod ``modulus``."""

    modulus: int
    pieces: tuple

    def __init__(self, modulus: int, pieces: Sequence[Sequence]):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if len(pieces) != modulus:
            raise ValueError(f"expected {modulus} pieces, got {len(pieces)}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "pieces", tuple(_mod1(map(Fraction, p)) for p in pieces))

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "PiecewisePolySeq":
        """``s[i] = coeffs[0] + coeffs[1] i + ...`` on all of Z."""
        return cls(1, [coeffs])

    @classmethod
    def constant(cls, value) -> "PiecewisePolySeq":
        return cls(1, [[value]])

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.pieces), default=-1)

    def __getitem__(self, i: int) -> Fraction:
        c = i % self.modulus
        j = (i - c) // self.modulus
        return _eval(self.pieces[c], j) % 1

    def values(self, start: int, count: int) -> list[Fraction]:
        return [self[i] for i in range(start, start + count)]

    def lift(self, modulus: int) -> "PiecewisePolySeq":
        """The same sequence described with a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        r = modulus // self.modulus
        pieces = []
        for c in range(modulus):
            c0, q = c % self.modulus, c // self.modulus
            pieces.append(_compose_affine(self.pieces[c0], q, r))
        return PiecewisePolySeq(modulus, pieces)

    def is_zero(self) -> bool:
        # a polynomial of degree d taking integer values at d + 1 consecutive
        # integers is integer valued everywhere
        return all(all(_eval(p, j) % 1 == 0 for j in range(len(p))) for p in self.pieces)

    def __sub__(self, other: "PiecewisePolySeq") -> "PiecewisePolySeq":
        m = math.lcm(self.modulus, other.modulus)
        a, b = self.lift(m), other.lift(m)
        pieces = []
        for p, q in zip(a.pieces, b.pieces):
            n = max(len(p), len(q))
            pieces.append([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                           for i in range(n)])
        return PiecewisePolySeq(m, pieces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewisePolySeq):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None


@dataclass(frozen=True)
class LaurentOperator:
    """Element ``sum c_n u^n`` of ``Z[u, 1/u]``; zero coefficients are dropped."""

    terms: tuple  # sorted (exponent, coefficient) pairs

    def __init__(self, terms: Mapping[int, int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def shift(cls, n: int = 1) -> "LaurentOperator":
        return cls({n: 1})

    @classmethod
    def difference(cls) -> "LaurentOperator":
        """``u - 1``."""
        return cls({1: 1, 0: -1})

    @classmethod
    def unipotent(cls, m: int, k: int) -> "LaurentOperator":
        """``(u^m - 1)^k``."""
        return cls({m: 1, 0: -1}) ** k

    def __mul__(self, other: "LaurentOperator") -> "LaurentOperator":
        acc: dict[int, int] = {}
        for e, c in self.terms:
            for f, d in other.terms:
                acc[e + f] = acc.get(e + f, 0) + c * d
        return LaurentOperator(acc)

    def __add__(self, other: "LaurentOperator") -> "LaurentOperator":
        return LaurentOperator(list(self.terms) + list(other.terms))

    def __pow__(self, k: int) -> "LaurentOperator":
        out = LaurentOperator({0: 1})
        for _ in range(k):
            out = out * self
        return out


def _shifted(s: PiecewisePolySeq, n: int) -> list[list[Fraction]]:
    """Pieces of ``u^n s`` with the same modulus."""
    m = s.modulus
    pieces = []
    for c in range(m):
        q, c2 = divmod(c + n, m)
        pieces.append(_compose_affine(s.pieces[c2], q, 1))
    return pieces


def act(op: LaurentOperator, s: PiecewisePolySeq) -> PiecewisePolySeq:
    """``op`` applied to ``s``, exactly."""
    m = s.modulus
    total = [[Fraction(0)] for _ in range(m)]
    for e, c in op.terms:
        for acc, piece in zip(total, _shifted(s, e)):
            if len(piece) > len(acc):
                acc.extend([Fraction(0)] * (len(piece) - len(acc)))
            for i, x in enumerate(piece):
                acc[i] += c * x
    return PiecewisePolySeq(m, total)


def is_annihilated(s: PiecewisePolySeq, op: LaurentOperator) -> bool:
    return act(op, s).is_zero()


def solve_unipotent(m: int, k: int, initial: Sequence) -> PiecewisePolySeq:
    """The sequence killed by ``(u^m - 1)^k`` with ``s[0..mk-1] = initial``.

    Being killed means each residue class mod ``m`` carries a sequence whose
    ``k``-th difference vanishes, so its Newton series stops at degree ``k - 1``;
    the ``k`` initial values on the class fix the forward differences.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    vals = [Fraction(x) for x in initial]
    if len(vals) != m * k:
        raise ValueError(f"expected {m * k} initial values, got {len(vals)}")
    pieces = []
    for c in range(m):
        row = vals[c::m]
        diffs = []
        while row:
            diffs.append(row[0])
            row = [b - a for a, b in zip(row, row[1:])]
        pieces.append(_newton_to_power(diffs))
    return PiecewisePolySeq(m, pieces)


def _int_poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials by a monic divisor."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    rem = list(_trim(a[:db]))
    return q, rem


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binomial_minus_one(m: int) -> list[int]:
    return [-1] + [0] * (m - 1) + [1]


def reduce_annihilator(moduli: Sequence[int]) -> tuple[int, int]:
    """``(lcm, count)``: ``(u^lcm - 1)^count`` is a multiple of ``prod (u^m_i - 1)``."""
    if not moduli or any(m < 1 for m in moduli):
        raise ValueError("moduli must be a nonempty list of positive integers")
    m = reduce(math.lcm, moduli)
    k = len(moduli)
    prod = reduce(_int_poly_mul, (_binomial_minus_one(x) for x in moduli))
    big = reduce(_int_poly_mul, [_binomial_minus_one(m)] * k)
    _, rem = _int_poly_divmod(big, prod)
    if rem:
        raise AssertionError(f"divisibility failed for moduli {list(moduli)}")
    return m, k


@dataclass(frozen=True)
class Periodic:
    period: int


@dataclass(frozen=True)
class Equidistributed:
    """Never produced for rational coefficients; present so callers can match both outcomes."""


def classify_weyl(piece: Sequence) -> Periodic | Equidistributed:
    """Minimal period of ``j -> a_0 + a_1 j + ... + a_d j^d`` in R/Z.

    With ``D`` the lcm of the denominators of ``a_1..a_d`` every coefficient of
    ``s(j + D) - s(j)`` is an integer, so the periods form a subgroup of Z
    containing ``D``; the least one is a divisor of ``D``.
    """
    coeffs = [Fraction(c) for c in piece]
    d = reduce(math.lcm, (c.denominator for c in coeffs[1:]), 1)
    deg = max(len(coeffs) - 1, 0)
    for n in range(1, d + 1):
        if d % n == 0:
            if all((_eval(coeffs, j + n) - _eval(coeffs, j)) % 1 == 0 for j in range(deg + 1)):
                return Periodic(n)
    raise AssertionError("the common denominator is always a period")

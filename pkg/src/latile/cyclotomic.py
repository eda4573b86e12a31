"""Exact arithmetic in Z[zeta_N] and zero tests for cyclotomic Laurent polynomials.

An element of ``Z[zeta_N]`` is stored as the remainder of an integer
polynomial modulo the cyclotomic polynomial ``Phi_N``.  Because ``Phi_N`` is
the minimal polynomial of ``zeta_N`` the remainder is zero exactly when the
element is, which is the whole point of the representation: ``x^N - 1`` would
not give a decision procedure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


# ---------------------------------------------------------------------------
# integer polynomials, coefficient lists low degree first
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    assert b[-1] == 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] if db else [])


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n`` (low degree first), by dividing ``x^n - 1``
    by ``Phi_d`` for every proper divisor ``d`` of ``n``."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, r = _divmod_monic(num, list(cyclotomic_poly(d)))
            assert not r
    return tuple(num)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(a: list[int], n: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    a = list(a) + [0] * max(0, deg - len(a))
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            for j in range(deg + 1):
                a[i - deg + j] -= c * phi[j]
    return tuple(a[:deg])


# ---------------------------------------------------------------------------
# CycInt
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycInt:
    """An element of ``Z[zeta_order]`` in the power basis ``1, zeta, ..., zeta^(phi-1)``."""

    order: int
    coeffs: tuple

    @classmethod
    def from_poly(cls, order: int, poly: Iterable[int]) -> "CycInt":
        return cls(order, _reduce(list(poly), order))

    @classmethod
    def zero(cls, order: int = 1) -> "CycInt":
        return cls(order, (0,) * totient(order))

    @classmethod
    def integer(cls, k: int, order: int = 1) -> "CycInt":
        return cls.from_poly(order, [k])

    @classmethod
    def root(cls, order: int, exponent: int = 1) -> "CycInt":
        """``zeta_order ** exponent``."""
        e = exponent % order
        return cls.from_poly(order, [0] * e + [1])

    def lift(self, order: int) -> "CycInt":
        """Same number viewed in ``Z[zeta_order]``; ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        poly = [0] * (step * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return CycInt.from_poly(order, poly)

    def _common(self, other) -> tuple["CycInt", "CycInt"]:
        if isinstance(other, int):
            other = CycInt.integer(other, self.order)
        if not isinstance(other, CycInt):
            return NotImplemented
        n = math.lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        pair = self._common(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycInt(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._common(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycInt(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._common(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        prod = [0] * max(len(a.coeffs) + len(b.coeffs) - 1, 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return CycInt.from_poly(a.order, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycInt":
        if k < 0:
            raise ValueError("negative powers are not ring elements in general")
        out = CycInt.integer(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        pair = self._common(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # equal values may carry different orders; the normalized trace does not
        return hash(self.normalized_trace())

    def normalized_trace(self) -> Fraction:
        """``Tr(x) / [Q(zeta_N) : Q]``, independent of the order used to store ``x``."""
        n = self.order
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                m = n // math.gcd(i, n)
                total += Fraction(c * _mobius(m), totient(m))
        return total

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum(c * z ** i for i, c in enumerate(self.coeffs))


def _mobius(n: int) -> int:
    result = 1
    q = 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            result = -result
        q += 1
    return -result if n > 1 else result


# ---------------------------------------------------------------------------
# Laurent polynomials with cyclotomic coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycLaurentPoly:
    """Finite sum ``sum_e c_e z^e`` with ``c_e`` in ``Z[zeta_order]``; zero terms dropped."""

    order: int
    terms: tuple  # sorted (exponent, CycInt) pairs

    def __init__(self, order: int, terms: Mapping[int, CycInt] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, CycInt] = {}
        for e, c in items:
            c = c.lift(order) if isinstance(c, CycInt) else CycInt.integer(c, order)
            acc[e] = acc[e] + c if e in acc else c
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    def coefficient(self, e: int) -> CycInt:
        return dict(self.terms).get(e, CycInt.zero(self.order))

    def evaluate(self, z: complex) -> complex:
        return sum(c.to_complex() * z ** e for e, c in self.terms)


def is_zero_poly(q: CycLaurentPoly) -> bool:
    """True iff all coefficients vanish.

    A nonzero Laurent polynomial has finitely many roots on the unit circle,
    so this also decides whether ``q`` vanishes at infinitely many points of it.
    """
    return all(c.is_zero() for _, c in q.terms)


def root_power_sum(n: int, exponents: Iterable[int]) -> CycInt:
    """Exact value of ``sum zeta_n ** a`` over the multiset ``exponents``."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [0] * n
    for a in exponents:
        poly[a % n] += 1
    return CycInt.from_poly(n, poly)


def phi_prime_power_check(p: int, k: int, exponents: Iterable[int]) -> tuple[bool, bool]:
    """``(is_zero, divisibility_ok)`` for a sum of ``p^k``-th roots of unity.

    A vanishing sum of ``m`` such roots forces ``p | m``; ``divisibility_ok``
    reports whether that holds for this input (it always should).
    """
    exps = list(exponents)
    zero = root_power_sum(p ** k, exps).is_zero()
    return zero, (not zero) or len(exps) % p == 0

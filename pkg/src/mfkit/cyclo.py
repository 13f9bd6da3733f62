"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A :class:`CycloScalar` is stored as an integer coefficient vector in the
power basis ``1, zeta, ..., zeta^(phi(N)-1)`` together with one positive
common denominator.  The vector is always reduced modulo the N-th
cyclotomic polynomial and the content is divided out, so two scalars of the
same order are equal exactly when their stored data agree.  Scalars of
different orders are compared after lifting both into Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from mfkit import kernels

Rational = Union[int, Fraction]

__all__ = [
    "CycloScalar",
    "arith",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
]


def _divide_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quo = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quo[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quo


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _divide_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _table(n: int):
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    rows = []
    v = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(v))
        carry = v[-1]
        v = [0] + v[:-1]
        if carry:
            v = [vi - carry * pi for vi, pi in zip(v, phi_poly)]
    return kernels.Table(n, rows)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def _trace_row(n: int) -> tuple[int, ...]:
    # Tr(zeta_n^j) is the Ramanujan sum c_n(j)
    row = []
    for j in range(euler_phi(n)):
        g = math.gcd(j, n)
        row.append(sum(_mobius(n // d) * d for d in range(1, g + 1) if g % d == 0))
    return tuple(row)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


class CycloScalar:
    """An element of Q(zeta_order).

    ``coeffs`` may be any sequence of rationals; entry j multiplies
    ``zeta^j`` and the result is reduced to canonical form.
    """

    __slots__ = ("order", "_nums", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Rational] = ()):
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        folded = [0] * order
        for j, c in enumerate(coeffs):
            folded[j % order] += c.numerator * (den // c.denominator)
        self._set(order, kernels.fold_reduce(folded, _table(order)), den)

    def _set(self, order: int, nums: list[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if den < 0:
            g = -g
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self.order = order
        self._nums = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, order: int, nums: list[int], den: int = 1) -> "CycloScalar":
        obj = cls.__new__(cls)
        obj._set(order, nums, den)
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, q: Rational, order: int = 1) -> "CycloScalar":
        q = Fraction(q)
        return cls._make(order, [q.numerator] + [0] * (euler_phi(order) - 1), q.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "CycloScalar":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CycloScalar":
        return cls.rational(1, order)

    # -- accessors ----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def degree(self) -> int:
        return len(self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    # -- field structure ----------------------------------------------

    def lift(self, order: int) -> "CycloScalar":
        """The same number viewed in Q(zeta_order); ``order`` must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        if self.is_rational():
            return CycloScalar._make(order, [self._nums[0]] + [0] * (euler_phi(order) - 1), self._den)
        step = order // self.order
        folded = [0] * order
        for j, x in enumerate(self._nums):
            folded[j * step] = x
        return CycloScalar._make(order, kernels.fold_reduce(folded, _table(order)), self._den)

    def _common(self, other: "CycloScalar") -> tuple["CycloScalar", "CycloScalar"]:
        if self.order == other.order:
            return self, other
        m = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        if a._den == b._den:
            nums = [x + y for x, y in zip(a._nums, b._nums)]
            return CycloScalar._make(a.order, nums, a._den)
        nums = [x * b._den + y * a._den for x, y in zip(a._nums, b._nums)]
        return CycloScalar._make(a.order, nums, a._den * b._den)

    __radd__ = __add__

    def __neg__(self) -> "CycloScalar":
        return CycloScalar._make(self.order, [-x for x in self._nums], self._den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        den = a._den * b._den
        if a.is_rational():
            c = a._nums[0]
            return CycloScalar._make(a.order, [c * y for y in b._nums], den)
        if b.is_rational():
            c = b._nums[0]
            return CycloScalar._make(a.order, [c * x for x in a._nums], den)
        return CycloScalar._make(a.order, kernels.mulmod(a._nums, b._nums, _table(a.order)), den)

    __rmul__ = __mul__

    def conjugate(self, k: int = -1) -> "CycloScalar":
        """Galois automorphism zeta -> zeta^k (k = -1 is complex conjugation)."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise ValueError(f"exponent {k} is not a unit modulo {n}")
        if self.is_rational():
            return self
        return CycloScalar._make(n, kernels.galois(self._nums, k % n, _table(n)), self._den)

    def inv(self) -> "CycloScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.order
        if self.is_rational():
            return CycloScalar._make(n, [self._den] + [0] * (self.degree - 1), self._nums[0])
        # product of the other conjugates; times self it is the (rational) norm
        t = _table(n)
        acc = None
        for k in _units(n):
            if k == 1:
                continue
            g = kernels.galois(self._nums, k, t)
            acc = g if acc is None else kernels.mulmod(acc, g, t)
        norm = kernels.mulmod(self._nums, acc, t)
        if any(norm[1:]):
            raise ArithmeticError("norm computation did not land in Q")
        return CycloScalar._make(n, [x * self._den for x in acc], norm[0])

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, e: int) -> "CycloScalar":
        if e < 0:
            return self.inv() ** (-e)
        result = CycloScalar.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def trace(self) -> Fraction:
        row = _trace_row(self.order)
        return Fraction(sum(x * r for x, r in zip(self._nums, row)), self._den)

    def norm(self) -> Fraction:
        acc = CycloScalar.one(self.order)
        for k in _units(self.order):
            acc = acc * self.conjugate(k)
        return acc.rational_value()

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a._den == b._den and a._nums == b._nums

    def __hash__(self) -> int:
        # trace / degree does not change under lifting, so equal values hash equal
        if self._hash is None:
            self._hash = hash(self.trace() / self.degree)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- numeric / serialization --------------------------------------

    def to_complex(self, embedding: int = 1) -> complex:
        n = self.order
        if math.gcd(embedding, n) != 1:
            raise ValueError(f"embedding {embedding} is not coprime to order {n}")
        total = 0j
        for j, x in enumerate(self._nums):
            if x:
                total += x * cmath.exp(2j * math.pi * ((embedding * j) % n) / n)
        return total / self._den

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloScalar":
        order = int(data["order"])
        coeffs = [Fraction(int(num), int(den)) for num, den in data["coeffs"]]
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"expected {euler_phi(order)} coefficients for order {order}, got {len(coeffs)}"
            )
        return cls(order, coeffs)

    def __repr__(self) -> str:
        return f"CycloScalar({self.order}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.order}" + (f"^{j}" if j > 1 else "")
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _coerce(x):
    if isinstance(x, CycloScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloScalar.rational(x)
    return NotImplemented


def root_of_unity(k: int, n: int) -> CycloScalar:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    folded = [0] * n
    folded[k % n] = 1
    return CycloScalar._make(n, kernels.fold_reduce(folded, _table(n)))


def arith(op: str, a: CycloScalar, b: CycloScalar | None = None) -> CycloScalar:
    """Dispatch ``add``, ``mul``, ``neg`` or ``inv`` by name."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")

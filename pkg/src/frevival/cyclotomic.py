"""Exact sums of roots of unity.

A :class:`CyclotomicValue` stores integer coefficients ``c_j`` on the
spanning set ``1, z, ..., z^(m-1)`` with ``z = exp(2 pi i / m)``.  The set is
not a basis, so distinct coefficient vectors can denote the same number;
equality and hashing go through :meth:`CyclotomicValue.canonical`, which
reduces modulo the m-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    # x^m - 1 divided by every Phi_d with d a proper divisor of m
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _exact_divide(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]  # den is monic
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    assert not any(num[: len(den) - 1]), "inexact division"
    return out


@lru_cache(maxsize=None)
def _galois_orbits(m: int) -> tuple[tuple[int, ...], ...]:
    units = [k for k in range(1, m + 1) if math.gcd(k, m) == 1]
    seen = set()
    orbits = []
    for j in range(m):
        if j in seen:
            continue
        orb = sorted({(j * k) % m for k in units})
        seen.update(orb)
        orbits.append(tuple(orb))
    return tuple(orbits)


@lru_cache(maxsize=None)
def _roots(m: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


Scalar = Union[int, "CyclotomicValue"]


@dataclass(frozen=True, eq=False)
class CyclotomicValue:
    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or len(self.coeffs) != self.m:
            raise ValueError(f"need m >= 1 and m coefficients, got m={self.m}, {len(self.coeffs)}")

    # constructors

    @classmethod
    def zero(cls, m: int) -> "CyclotomicValue":
        return cls(m, (0,) * m)

    @classmethod
    def integer(cls, n: int, m: int = 1) -> "CyclotomicValue":
        return cls(m, (int(n),) + (0,) * (m - 1))

    @classmethod
    def root(cls, m: int, j: int = 1) -> "CyclotomicValue":
        """The root of unity z_m^j."""
        c = [0] * m
        c[j % m] = 1
        return cls(m, tuple(c))

    # representation changes

    def rescale(self, m: int) -> "CyclotomicValue":
        """Same number written over m-th roots (m must be a multiple of self.m)."""
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"cannot rescale from m={self.m} to m={m}")
        step = m // self.m
        c = [0] * m
        for j, v in enumerate(self.coeffs):
            c[j * step] = v
        return CyclotomicValue(m, tuple(c))

    def canonical(self) -> tuple[int, ...]:
        """Coefficients in the power basis of Q(z_m): remainder mod Phi_m, trailing zeros stripped."""
        phi = cyclotomic_polynomial(self.m)
        deg = len(phi) - 1
        rem = list(self.coeffs)
        for i in range(len(rem) - 1, deg - 1, -1):
            q = rem[i]
            if q:
                base = i - deg
                for j, c in enumerate(phi):
                    rem[base + j] -= q * c
        rem = rem[:deg]
        while rem and rem[-1] == 0:
            rem.pop()
        return tuple(rem)

    def _pair(self, other: "CyclotomicValue"):
        if self.m == other.m:
            return self, other
        m = math.lcm(self.m, other.m)
        return self.rescale(m), other.rescale(m)

    # arithmetic

    def __add__(self, other: Scalar) -> "CyclotomicValue":
        if isinstance(other, int):
            other = CyclotomicValue.integer(other, self.m)
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        a, b = self._pair(other)
        return CyclotomicValue(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicValue":
        return CyclotomicValue(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar) -> "CyclotomicValue":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "CyclotomicValue":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CyclotomicValue":
        if isinstance(other, (int, np.integer)):
            return CyclotomicValue(self.m, tuple(int(other) * c for c in self.coeffs))
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        a, b = self._pair(other)
        m = a.m
        out = [0] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % m] += x * y
        return CyclotomicValue(m, tuple(out))

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicValue":
        m = self.m
        return CyclotomicValue(m, tuple(self.coeffs[(m - j) % m] for j in range(m)))

    def galois(self, k: int) -> "CyclotomicValue":
        """Image under the automorphism z -> z^k (k coprime to m)."""
        if math.gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not a unit mod {self.m}")
        out = [0] * self.m
        for j, c in enumerate(self.coeffs):
            out[(j * k) % self.m] += c
        return CyclotomicValue(self.m, tuple(out))

    # comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CyclotomicValue.integer(other, self.m)
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        a, b = self._pair(other)
        if a.coeffs == b.coeffs:
            return True
        return (a - b).canonical() == ()

    def __hash__(self) -> int:
        # coefficient vectors are not canonical across different m, so only a
        # representation-independent invariant is safe to hash
        return hash(self.rational_integer())

    def is_zero(self) -> bool:
        return not any(self.coeffs) or self.canonical() == ()

    def numeric(self) -> complex:
        return complex(np.dot(np.array(self.coeffs, dtype=float), _roots(self.m)))

    def __complex__(self) -> complex:
        return self.numeric()

    def is_galois_invariant(self) -> bool:
        c = self.coeffs
        return all(len({c[j] for j in orb}) == 1 for orb in _galois_orbits(self.m))

    def rational_integer(self) -> int | None:
        """The integer this value equals, or None if it is not a rational integer."""
        if self.is_galois_invariant():
            # fixed by the whole Galois group, hence rational; an algebraic
            # integer, hence an integer
            return int(round(self.numeric().real))
        canon = self.canonical()
        if len(canon) <= 1:
            return canon[0] if canon else 0
        return None

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z{self.m}^{j}")
        return "Cyc(" + (" + ".join(terms) or "0") + ")"


def cyc_add(a: CyclotomicValue, b: CyclotomicValue) -> CyclotomicValue:
    return a + b


def cyc_mul(a: CyclotomicValue, b: CyclotomicValue) -> CyclotomicValue:
    return a * b


def numeric_eval(v: CyclotomicValue) -> complex:
    return v.numeric()


def is_rational_integer(v: CyclotomicValue) -> int | None:
    return v.rational_integer()


def exp_i(theta: float) -> complex:
    return cmath.exp(1j * theta)

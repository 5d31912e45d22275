"""Lambda_[D](z) as a relative Molien series of the dual Jacobian.

Roots of unity are handled exactly in the group ring Q[x]/(x^m - 1), where
x stands for a primitive m-th root of unity omega.  Only at the end is an
element reduced modulo the m-th cyclotomic polynomial to read off its value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .divisors import PreconditionError, jacobian


class MolienConsistencyError(ArithmeticError):
    """A Molien coefficient failed to reduce to a nonnegative integer."""


class CycloElement:
    """Element of Q[x]/(x^m - 1), stored as coefficients of x^0..x^(m-1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = [Fraction(c) for c in coeffs]
        if not self.coeffs:
            raise ValueError("CycloElement needs m >= 1 coefficients")

    @classmethod
    def monomial(cls, m: int, k: int, c=1) -> "CycloElement":
        coeffs = [0] * m
        coeffs[k % m] = c
        return cls(coeffs)

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "CycloElement") -> None:
        if other.m != self.m:
            raise ValueError("mismatched group rings")

    def __add__(self, other: "CycloElement") -> "CycloElement":
        self._check(other)
        return CycloElement([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement([a * other for a in self.coeffs])
        self._check(other)
        m = self.m
        out = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % m] += a * b
        return CycloElement(out)

    __rmul__ = __mul__

    def rotate(self, k: int) -> "CycloElement":
        """Multiply by x^k."""
        m = self.m
        k %= m
        return CycloElement(self.coeffs[m - k:] + self.coeffs[: m - k])

    def __repr__(self):
        return f"CycloElement({[str(c) for c in self.coeffs]})"


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(a: list, b: list) -> list:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]  # b is monic
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic_reduce(x: CycloElement) -> Fraction:
    """The value of ``x`` at omega, which must be rational."""
    phi = cyclotomic_polynomial(x.m)
    deg = len(phi) - 1
    r = list(x.coeffs)
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            for j, y in enumerate(phi):
                r[i - deg + j] -= c * y
    if any(r[1:deg]):
        raise ArithmeticError("value is irrational")
    return r[0]


@dataclass(frozen=True)
class CharacterTable:
    """Characters chi_r of Jac, indexed by residue tuples r.

    ``exponents[r][v]`` is the power of omega on the v-th diagonal entry of
    rho(chi_r); the q entry is always 0.
    """

    exponent: int
    factors: tuple
    elements: tuple
    exponents: tuple

    def pairing(self, cls: Sequence[int], r: Sequence[int]) -> int:
        """``chi_r([D]) = omega^pairing`` for the class with coordinates ``cls``."""
        m = self.exponent
        return sum((m // mi) * ri * ci for mi, ri, ci in zip(self.factors, r, cls)) % m


def character_table(system) -> CharacterTable:
    jac = jacobian(system)
    m = jac.exponent
    factors = jac.invariant_factors
    elements = tuple(jac.classes())
    exps = []
    for r in elements:
        e = [0] * system.n
        for col, v in enumerate(system.others):
            e[v] = sum((m // mi) * ri * row[col] for mi, ri, row in zip(factors, r, jac.projection)) % m
        exps.append(tuple(e))
    return CharacterTable(m, factors, elements, tuple(exps))


@lru_cache(maxsize=32)
def _character_series(system, N: int) -> tuple:
    """Per character, group-ring coefficients of prod_v 1/(1 - omega^e_v z^w_v).

    Row d of each array holds the coefficient of z^d.
    """
    table = character_table(system)
    m = table.exponent
    bound = comb(system.n + N, N) * len(table.elements)
    dtype = np.int64 if bound < 2**62 else object
    out = []
    for exps in table.exponents:
        c = np.zeros((N + 1, m), dtype=dtype)
        c[0, 0] = 1
        for e, w in zip(exps, system.weights):
            for d in range(w, N + 1):
                c[d] += np.roll(c[d - w], e)
        out.append(c)
    return table, tuple(out)


def molien_lambda(system, cls: Sequence[int], N: int) -> list:
    """Coefficients 0..N of the relative Molien series for the class ``cls``."""
    if N < 0:
        raise PreconditionError("series depth must be nonnegative")
    jac = jacobian(system)
    cls = jac.reduce(cls)
    table, per_char = _character_series(system, N)
    total = None
    for r, c in zip(table.elements, per_char):
        # multiply by conj(chi_r([D])) = omega^(-pairing)
        term = np.roll(c, -table.pairing(cls, r), axis=1)
        total = term if total is None else total + term
    order = jac.order
    coeffs = []
    for d in range(N + 1):
        elem = CycloElement([int(x) for x in total[d]]) * Fraction(1, order)
        try:
            value = cyclotomic_reduce(elem)
        except ArithmeticError as exc:
            raise MolienConsistencyError(f"coefficient {d}: {exc}") from exc
        if value.denominator != 1 or value < 0:
            raise MolienConsistencyError(f"coefficient {d} is {value}, not a count")
        coeffs.append(int(value))
    return coeffs


def character_sum(system, cls: Sequence[int]) -> Fraction:
    """``(1/|Jac|) sum_r omega^pairing(cls, r)``: 1 for the trivial class, else 0."""
    table = character_table(system)
    m = table.exponent
    acc = CycloElement([0] * m)
    for r in table.elements:
        acc = acc + CycloElement.monomial(m, table.pairing(cls, r))
    return cyclotomic_reduce(acc * Fraction(1, len(table.elements)))


def all_classes_series(system, N: int) -> dict:
    return {cls: molien_lambda(system, cls, N) for cls in itertools.product(*(range(m) for m in jacobian(system).invariant_factors))}

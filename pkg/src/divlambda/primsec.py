"""Primary and secondary divisors and the closed form of Lambda_[D](z).

Every effective divisor E in a class decomposes uniquely as
``E = F + sum_v a_v * l_v * v`` with ``0 <= F(v) < l_v``.  The ``F`` that
occur form the secondary set of the class, and the generating function of
#|D + kq| is ``S(z) / prod_v (1 - z^(w_v l_v))`` with ``S`` the degree
polynomial of the secondary set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import linalg
from .divisors import PreconditionError, class_representative, degree, jacobian, ord_q


@dataclass(frozen=True)
class PrimarySet:
    multipliers: tuple

    def divisors(self) -> list:
        n = len(self.multipliers)
        return [tuple(l if i == v else 0 for i in range(n)) for v, l in enumerate(self.multipliers)]


@dataclass(frozen=True)
class SecondarySet:
    cls: tuple
    divisors: tuple


@dataclass(frozen=True, eq=False)
class RationalGF:
    """``sum(numerator[i] z^i) / prod_e (1 - z^e)``, not reduced.

    Two values compare equal when they are the same rational function.
    """

    numerator: tuple
    denominator_exponents: tuple

    def series(self, N: int) -> list:
        return series(self, N)

    def _cross(self, other: "RationalGF") -> tuple:
        left = _polymul(list(self.numerator), _denominator_poly(other.denominator_exponents))
        right = _polymul(list(other.numerator), _denominator_poly(self.denominator_exponents))
        return _trim(left), _trim(right)

    def __eq__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        left, right = self._cross(other)
        return left == right

    __hash__ = None

    def __add__(self, other: "RationalGF") -> "RationalGF":
        num = _polyadd(
            _polymul(list(self.numerator), _denominator_poly(other.denominator_exponents)),
            _polymul(list(other.numerator), _denominator_poly(self.denominator_exponents)),
        )
        return RationalGF(tuple(num), tuple(self.denominator_exponents) + tuple(other.denominator_exponents))


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _polymul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polyadd(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _denominator_poly(exponents: Sequence[int]) -> list:
    p = [1]
    for e in exponents:
        factor = [0] * (e + 1)
        factor[0] = 1
        factor[e] = -1
        p = _polymul(p, factor)
    return p


def series(gf: RationalGF, N: int) -> list:
    """Taylor coefficients 0..N of ``gf`` by exact division."""
    if N < 0:
        raise PreconditionError("series depth must be nonnegative")
    out = [0] * (N + 1)
    for i, c in enumerate(gf.numerator[: N + 1]):
        out[i] = c
    for e in gf.denominator_exponents:
        if e <= 0:
            raise PreconditionError("denominator exponents must be positive")
        # multiply by 1/(1 - z^e): running sum with stride e
        for i in range(e, N + 1):
            out[i] += out[i - e]
    return out


def minimal_primary_set(system) -> PrimarySet:
    return PrimarySet(tuple(ord_q(system, v) for v in range(system.n)))


def primary_set(system, multipliers: Optional[Sequence[int]] = None) -> PrimarySet:
    """Validated primary set; ``None`` gives the minimal one."""
    if multipliers is None:
        return minimal_primary_set(system)
    multipliers = tuple(int(x) for x in multipliers)
    if len(multipliers) != system.n:
        raise PreconditionError(f"expected {system.n} multipliers, got {len(multipliers)}")
    for v, l in enumerate(multipliers):
        o = ord_q(system, v)
        if l <= 0 or l % o:
            raise PreconditionError(f"multiplier {l} at vertex {v} is not a positive multiple of ord_q = {o}")
    return PrimarySet(multipliers)


@lru_cache(maxsize=None)
def _hnf(system) -> tuple:
    H, _ = linalg.hermite_normal_form(system.reduced)
    return tuple(tuple(r) for r in H)


def _coset_box(H, start: Sequence[int], bounds: Sequence[int]) -> list:
    """Points of ``start + im(H)`` in the box ``0 <= x_i < bounds[i]``.

    ``H`` is lower triangular with ``H[i][i]`` dividing ``bounds[i]``; the
    coordinates are fixed one at a time by the matching column of ``H``.
    """
    n = len(start)
    out = []

    def rec(i, x):
        if i == n:
            out.append(tuple(x))
            return
        p = H[i][i]
        r = x[i] % p
        for value in range(r, bounds[i], p):
            a = (value - x[i]) // p
            y = list(x)
            if a:
                for row in range(i, n):
                    y[row] += a * H[row][i]
            rec(i + 1, y)

    rec(0, list(start))
    return out


def secondary_set(system, P: PrimarySet, cls: Sequence[int]) -> SecondarySet:
    """Standard representatives of the class inside the box ``0 <= F < l``."""
    jac = jacobian(system)
    cls = jac.reduce(cls)
    for v, l in enumerate(P.multipliers):
        if l % ord_q(system, v):
            raise PreconditionError("primary multipliers must be multiples of ord_q")
    rep = class_representative(system, cls)
    start = [rep[v] for v in system.others]
    bounds = [P.multipliers[v] for v in system.others]
    reps = _coset_box(_hnf(system), start, bounds)
    out = []
    for c in reps:
        for k in range(P.multipliers[system.q]):
            F = [0] * system.n
            for v, x in zip(system.others, c):
                F[v] = x
            F[system.q] = k
            out.append(tuple(F))
    out.sort()
    return SecondarySet(cls, tuple(out))


def decompose(system, P: PrimarySet, E: Sequence[int]) -> tuple:
    """Split effective ``E`` as ``F + sum_v a_v l_v v``; returns ``(F, a)``."""
    if len(E) != system.n:
        raise PreconditionError(f"divisor has length {len(E)}, expected {system.n}")
    if any(x < 0 for x in E):
        raise PreconditionError("decompose needs an effective divisor")
    F = tuple(x % l for x, l in zip(E, P.multipliers))
    a = tuple(x // l for x, l in zip(E, P.multipliers))
    return F, a


def lambda_gf_primsec(system, cls: Sequence[int], P: Optional[PrimarySet] = None) -> RationalGF:
    if P is None:
        P = minimal_primary_set(system)
    S = secondary_set(system, P, cls)
    degrees = [degree(system, F) for F in S.divisors]
    num = [0] * (max(degrees) + 1)
    for d in degrees:
        num[d] += 1
    w = system.weights
    return RationalGF(tuple(num), tuple(w[v] * l for v, l in enumerate(P.multipliers)))


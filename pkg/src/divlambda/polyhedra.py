"""The q-cone of a divisor class, its fundamental parallelepiped, and |D|.

Cone points are vectors of length n indexed like divisors: the q slot holds
the degree coordinate t and the other slots hold a firing script f (so for a
graph with q last a point reads (f, t), and for an M-matrix system with q
first it reads (t, f)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .divisors import PreconditionError, degree, jacobian, ord_q
from .primsec import RationalGF


@dataclass(frozen=True)
class SimplicialCone:
    """``apex + sum(lambda_i * generators[i])`` with all ``lambda_i >= 0``."""

    apex: tuple
    generators: tuple

    def __post_init__(self):
        gens = [tuple(int(x) for x in g) for g in self.generators]
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "apex", tuple(Fraction(x) for x in self.apex))
        if any(len(g) != len(self.apex) for g in gens) or len(gens) != len(self.apex):
            raise PreconditionError("a simplicial cone needs one generator per dimension")
        if gens and linalg.determinant(self.generator_matrix) == 0:
            raise PreconditionError("cone generators are not linearly independent")

    @property
    def dimension(self) -> int:
        return len(self.apex)

    @property
    def generator_matrix(self) -> list:
        """Generators as columns."""
        return linalg.transpose(self.generators) if self.generators else []

    def barycentric(self, x: Sequence) -> list:
        """Exact coefficients of ``x - apex`` in the generator basis."""
        diff = [Fraction(a) - b for a, b in zip(x, self.apex)]
        return linalg.solve(self.generator_matrix, diff)


@dataclass(frozen=True)
class Parallelepiped:
    cone: SimplicialCone
    lattice_points: tuple


@dataclass(frozen=True)
class Polytope:
    """``{x : A x >= b}``."""

    A: tuple
    b: tuple

    def contains(self, x: Sequence) -> bool:
        return all(sum(a * v for a, v in zip(row, x)) >= bi for row, bi in zip(self.A, self.b))


def cone_membership(cone: SimplicialCone, x: Sequence) -> tuple:
    """``(inside, lambda)`` with ``lambda`` the barycentric certificate."""
    lam = cone.barycentric(x)
    return all(l >= 0 for l in lam), lam


def _check_degree_zero(system, D: Sequence[int]) -> None:
    if len(D) != system.n:
        raise PreconditionError(f"divisor has length {len(D)}, expected {system.n}")
    if degree(system, D) != 0:
        raise PreconditionError("the q-cone is defined for degree-0 divisors")


def _multipliers(system, ell: Optional[Sequence[int]]) -> list:
    if ell is None:
        return [ord_q(system, v) for v in system.others]
    ell = list(ell)
    for v, l in zip(system.others, ell):
        if l <= 0 or l % ord_q(system, v):
            raise PreconditionError(f"multiplier {l} at vertex {v} is not a multiple of ord_q")
    return ell


def facet_cone(system, D: Sequence[int], ell: Optional[Sequence[int]] = None) -> SimplicialCone:
    """The (n-1)-cone ``{f : A f >= -D|_{q=0}}`` of firing scripts.

    Generators are ``A^{-1}(l_i e_i)``; ``ell`` lists one multiplier per
    non-q vertex (default ``ord_q``).
    """
    _check_degree_zero(system, D)
    ell = _multipliers(system, ell)
    inv = linalg.rational_inverse(system.reduced)
    rest = [-D[v] for v in system.others]
    apex = linalg.matvec(inv, rest)
    gens = []
    for i, l in enumerate(ell):
        col = [row[i] * l for row in inv]
        if any(x.denominator != 1 for x in col):
            raise PreconditionError("facet generator is not integral")
        gens.append(tuple(int(x) for x in col))
    return SimplicialCone(tuple(apex), tuple(gens))


def _q_row(system) -> list:
    return [system.matrix[system.q][v] for v in system.others]


def _lift(system, f: Sequence, t) -> tuple:
    point = [0] * system.n
    for v, x in zip(system.others, f):
        point[v] = x
    point[system.q] = t
    return tuple(point)


def q_cone(
    system, D: Sequence[int], ell_q: int = 1, ell: Optional[Sequence[int]] = None
) -> SimplicialCone:
    """The n-cone ``{(f, t) : A f >= -D|_{q=0}, r.f + t >= -D(q)}``.

    The generators are the facet generators lifted to ``t = -r.f`` followed
    by ``ell_q`` times the q direction.
    """
    if ell_q <= 0:
        raise PreconditionError("ell_q must be positive")
    facet = facet_cone(system, D, ell)
    r = _q_row(system)
    gens = []
    for g in facet.generators:
        gens.append(_lift(system, g, -sum(a * b for a, b in zip(r, g))))
    gens.append(_lift(system, [0] * (system.n - 1), ell_q))
    apex_t = -D[system.q] - sum(a * b for a, b in zip(r, facet.apex))
    return SimplicialCone(_lift(system, facet.apex, apex_t), tuple(gens))


def _scaled_inverse(cone: SimplicialCone) -> tuple:
    """Integers ``(adj, b, scale)`` with ``lambda(x) = (adj x - b) / scale``."""
    Ginv = linalg.rational_inverse(cone.generator_matrix)
    base = linalg.matvec(Ginv, cone.apex)
    scale = linalg.lcm(*(x.denominator for row in Ginv for x in row), *(x.denominator for x in base))
    adj = [[int(x * scale) for x in row] for row in Ginv]
    b = [int(x * scale) for x in base]
    return adj, b, scale


def parallelepiped_points(cone: SimplicialCone) -> Parallelepiped:
    """Integer points with barycentric coordinates in ``[0, 1)``.

    One point per coset of Z^n / (generator lattice): with ``U G W = S``
    (Smith form), the vectors ``U^{-1} k`` for ``0 <= k_i < s_i`` represent
    the cosets, and each is translated into the parallelepiped by the floor
    of its barycentric coordinates.
    """
    n = cone.dimension
    if n == 0:
        return Parallelepiped(cone, ((),))
    G = cone.generator_matrix
    snf = linalg.smith_normal_form(G)
    Uinv = linalg.integer_inverse(snf.left)
    adj, b, scale = _scaled_inverse(cone)
    points = []
    for k in itertools.product(*(range(s) for s in snf.diag)):
        c = linalg.matvec(Uinv, k)
        shift = [(sum(a * x for a, x in zip(row, c)) - bi) // scale for row, bi in zip(adj, b)]
        x = [a - sum(g * s for g, s in zip(row, shift)) for a, row in zip(c, G)]
        points.append(tuple(x))
    points.sort()
    return Parallelepiped(cone, tuple(points))


def parallelepiped_points_scan(cone: SimplicialCone) -> Parallelepiped:
    """Same set as :func:`parallelepiped_points`, by scanning the bounding box."""
    n = cone.dimension
    corners = []
    for mask in itertools.product((0, 1), repeat=n):
        corners.append([a + sum(m * g[i] for m, g in zip(mask, cone.generators)) for i, a in enumerate(cone.apex)])
    lo = [math.floor(min(c[i] for c in corners)) for i in range(n)]
    hi = [math.ceil(max(c[i] for c in corners)) for i in range(n)]
    adj, b, scale = _scaled_inverse(cone)
    points = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        lam = [sum(a * v for a, v in zip(row, x)) - bi for row, bi in zip(adj, b)]
        if all(0 <= l < scale for l in lam):
            points.append(tuple(x))
    return Parallelepiped(cone, tuple(sorted(points)))


def psi(system, D: Sequence[int], point: Sequence[int]) -> tuple:
    """``(f, k) -> D + k q + L f``; the point must be an integer cone point."""
    if len(point) != system.n:
        raise PreconditionError("cone point has the wrong length")
    f = list(point)
    k = f[system.q]
    f[system.q] = 0
    Lf = linalg.matvec(system.matrix, f)
    E = [d + x for d, x in zip(D, Lf)]
    E[system.q] += k
    if any(x < 0 for x in E):
        raise PreconditionError("point lies outside the q-cone")
    return tuple(E)


def lambda_gf_cone(
    system, D: Sequence[int], ell_q: int = 1, ell: Optional[Sequence[int]] = None
) -> RationalGF:
    """Integer-point transform of the q-cone specialized to ``(1, .., 1, z)``.

    Only the degree coordinate is kept, so each exponent is the q-slot value
    of a parallelepiped point or generator.
    """
    cone = q_cone(system, D, ell_q, ell)
    pts = parallelepiped_points(cone).lattice_points
    degs = [p[system.q] for p in pts]
    num = [0] * (max(degs) + 1)
    for d in degs:
        num[d] += 1
    return RationalGF(tuple(num), tuple(g[system.q] for g in cone.generators))


def p_polytope(system, D: Sequence[int]) -> Polytope:
    """Firing scripts with ``f_q = 0`` that make ``D`` effective."""
    A = [list(row) for row in system.reduced]
    b = [-D[v] for v in system.others]
    A.append(_q_row(system))
    b.append(-D[system.q])
    return Polytope(tuple(tuple(r) for r in A), tuple(b))


def _polytope_box(P: Polytope) -> Optional[list]:
    """Bounding box from the feasible basic solutions, or None if empty."""
    m = len(P.A)
    d = len(P.A[0]) if P.A else 0
    vertices = []
    for rows in itertools.combinations(range(m), d):
        sub = [list(P.A[i]) for i in rows]
        if linalg.determinant(sub) == 0:
            continue
        x = linalg.solve(sub, [P.b[i] for i in rows])
        if P.contains(x):
            vertices.append(x)
    if not vertices:
        return None
    return [(math.ceil(min(v[i] for v in vertices)), math.floor(max(v[i] for v in vertices))) for i in range(d)]


def enumerate_linear_system(system, D: Sequence[int]) -> list:
    """All effective divisors linearly equivalent to ``D``, sorted."""
    if len(D) != system.n:
        raise PreconditionError(f"divisor has length {len(D)}, expected {system.n}")
    if degree(system, D) < 0:
        return []
    if system.n == 1:
        return [tuple(D)]
    P = p_polytope(system, D)
    box = _polytope_box(P)
    if box is None:
        return []
    out = []
    for f in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if P.contains(f):
            out.append(psi(system, D, _lift(system, f, 0)))
    out.sort()
    return out

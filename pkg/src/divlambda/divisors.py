"""Graphs, Laplacians, divisors and the Jacobian group.

Most functions here take a *system*: any object exposing

* ``n`` -- number of vertices,
* ``q`` -- index of the distinguished vertex,
* ``matrix`` -- the n x n Laplacian-like matrix,
* ``reduced`` -- ``matrix`` with row and column ``q`` removed,
* ``others`` -- the indices different from ``q``, in increasing order,
* ``weights`` -- the degree vector (all ones for graphs).

:class:`Graph` is the main example; :class:`divlambda.mmatrix.MMatrixSystem`
is the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from . import linalg
from .linalg import IntMatrix

Divisor = tuple  # tuple of ints, one per vertex


class PreconditionError(ValueError):
    """Input violates a mathematical precondition."""


@dataclass(frozen=True)
class Graph:
    """Connected undirected multigraph with a distinguished vertex ``q``.

    ``edges`` is a multiset of unordered index pairs; repeated pairs are
    parallel edges and ``(i, i)`` is a loop.
    """

    n: int
    edges: tuple
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("a graph needs at least one vertex")
        if not 0 <= self.q < self.n:
            raise PreconditionError(f"q={self.q} is not a vertex index")
        normalized = []
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise PreconditionError(f"edge ({i}, {j}) has an endpoint out of range")
            normalized.append((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        if not self._connected():
            raise PreconditionError("graph is not connected")

    def _connected(self) -> bool:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            parent[find(i)] = find(j)
        return len({find(v) for v in range(self.n)}) == 1

    @cached_property
    def matrix(self) -> IntMatrix:
        L = [[0] * self.n for _ in range(self.n)]
        for i, j in self.edges:
            if i == j:
                continue  # a loop adds 2 to degree and 2 to adjacency
            L[i][i] += 1
            L[j][j] += 1
            L[i][j] -= 1
            L[j][i] -= 1
        return L

    @cached_property
    def reduced(self) -> IntMatrix:
        return linalg.delete_index(self.matrix, self.q)

    @cached_property
    def others(self) -> tuple:
        return tuple(v for v in range(self.n) if v != self.q)

    @property
    def weights(self) -> tuple:
        return (1,) * self.n

    def neighbors(self, v: int) -> list:
        out = []
        for i, j in self.edges:
            if i == j:
                continue
            if i == v:
                out.append(j)
            elif j == v:
                out.append(i)
        return out

    # -- fixtures --------------------------------------------------------

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)), n - 1)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        """C_n with vertices v_1..v_n around the cycle and q = v_n.

        C_2 is a double edge.
        """
        if n < 2:
            raise PreconditionError("cycle graphs need n >= 2")
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)), n - 1)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(itertools.combinations(range(n), 2)), n - 1)

    @classmethod
    def diamond(cls) -> "Graph":
        """K_4 minus the edge v_3 q, with q = v_4 last."""
        return cls(4, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3)), 3)


@dataclass(frozen=True)
class JacobianStructure:
    """Coordinates on Jac = Z^{n-1} / im(reduced) from a Smith decomposition.

    ``projection`` has one row per nontrivial invariant factor; applied to
    the non-q part of a divisor and reduced modulo the factors, it gives the
    class coordinates.  ``lifts[i]`` is a degree-0 divisor whose coordinates
    are the i-th unit vector.
    """

    invariant_factors: tuple
    projection: tuple
    lifts: tuple

    @property
    def order(self) -> int:
        out = 1
        for m in self.invariant_factors:
            out *= m
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def classes(self) -> Iterator[tuple]:
        """All class coordinate tuples, in lexicographic order."""
        return itertools.product(*(range(m) for m in self.invariant_factors))

    def reduce(self, coords: Sequence[int]) -> tuple:
        if len(coords) != len(self.invariant_factors):
            raise PreconditionError(
                f"expected {len(self.invariant_factors)} class coordinates, got {len(coords)}"
            )
        return tuple(c % m for c, m in zip(coords, self.invariant_factors))


@dataclass(frozen=True)
class ClassCoords:
    degree: int
    jac: tuple


def laplacian(G: Graph) -> IntMatrix:
    return linalg.copy_matrix(G.matrix)


def reduced_laplacian(G: Graph) -> IntMatrix:
    return linalg.copy_matrix(G.reduced)


def _normalize_row(row: list, m: int) -> tuple[list, int]:
    """Scale ``row`` by a unit mod ``m`` so its first invertible entry is 1."""
    for x in row:
        x %= m
        if x and linalg.gcd(x, m) == 1:
            unit = pow(x, -1, m)
            return [(y * unit) % m for y in row], unit
    return [y % m for y in row], 1


@lru_cache(maxsize=None)
def jacobian(system) -> JacobianStructure:
    """Invariant factors (units dropped) and class projection of ``system``.

    Each projection row is rescaled by a unit so that its first invertible
    entry is 1; for a cyclic Jacobian generated by [v_1 - q] this makes that
    class the coordinate 1.
    """
    A = system.reduced
    snf = linalg.smith_normal_form(A)
    Uinv = linalg.integer_inverse(snf.left) if A else []
    factors, rows, lifts = [], [], []
    for k, m in enumerate(snf.diag):
        if m == 1:
            continue
        row, unit = _normalize_row(snf.left[k], m)
        factors.append(m)
        rows.append(tuple(row))
        # column k of U^{-1} maps to e_k under U; undo the unit scaling
        c = pow(unit, -1, m)
        x = [c * Uinv[i][k] for i in range(len(Uinv))]
        lifts.append(_embed_degree_zero(system, x))
    return JacobianStructure(tuple(factors), tuple(rows), tuple(lifts))


def _embed_degree_zero(system, rest: Sequence[int]) -> Divisor:
    D = [0] * system.n
    w = system.weights
    for v, x in zip(system.others, rest):
        D[v] = x
    D[system.q] = -sum(w[v] * D[v] for v in system.others)
    return tuple(D)


def degree(system, D: Sequence[int]) -> int:
    return sum(w * d for w, d in zip(system.weights, D))


def _check_length(system, D: Sequence[int]) -> None:
    if len(D) != system.n:
        raise PreconditionError(f"divisor has length {len(D)}, expected {system.n}")


def jac_coords(system, D: Sequence[int]) -> tuple:
    """Jacobian coordinates of ``D - deg(D) q``."""
    _check_length(system, D)
    jac = jacobian(system)
    rest = [D[v] for v in system.others]
    return tuple(
        sum(p * x for p, x in zip(row, rest)) % m
        for row, m in zip(jac.projection, jac.invariant_factors)
    )


def class_coords(system, D: Sequence[int]) -> ClassCoords:
    return ClassCoords(degree(system, D), jac_coords(system, D))


def linearly_equivalent(system, D: Sequence[int], E: Sequence[int]) -> bool:
    _check_length(system, D)
    _check_length(system, E)
    return class_coords(system, D) == class_coords(system, E)


def class_representative(system, coords: Sequence[int]) -> Divisor:
    """A degree-0 divisor with the given Jacobian coordinates."""
    jac = jacobian(system)
    coords = jac.reduce(coords)
    D = [0] * system.n
    for c, lift in zip(coords, jac.lifts):
        for v in range(system.n):
            D[v] += c * lift[v]
    return tuple(D)


@lru_cache(maxsize=None)
def _reduced_inverse(system) -> tuple:
    return tuple(tuple(r) for r in linalg.rational_inverse(system.reduced))


def ord_q(system, v: int) -> int:
    """Order of [v - deg(v) q] in the Jacobian.

    The lcm of the denominators in the matching column of the inverse
    reduced matrix.
    """
    if v == system.q:
        return 1
    col = system.others.index(v)
    inv = _reduced_inverse(system)
    return linalg.lcm(*(row[col].denominator for row in inv))


def orders(system) -> tuple:
    return tuple(ord_q(system, v) for v in range(system.n))


def _fire(G: Graph, D: list, W: set) -> None:
    """Fire every vertex of ``W`` once (in place)."""
    for i, j in G.edges:
        if i == j:
            continue
        if (i in W) != (j in W):
            src, dst = (i, j) if i in W else (j, i)
            D[src] -= 1
            D[dst] += 1


def q_reduced(G: Graph, D: Sequence[int]) -> Divisor:
    """The unique q-reduced divisor linearly equivalent to ``D``."""
    _check_length(G, D)
    D = list(D)
    others = G.others
    deficit = max((-D[v] for v in others), default=0)
    if deficit > 0:
        # borrow with script adj(L~) k 1: adds det(L~) k to every non-q vertex
        det = linalg.determinant(G.reduced)
        k = -(-deficit // det)
        inv = _reduced_inverse(G)
        script = [int(sum(row) * det * k) for row in inv]
        f = [0] * G.n
        for v, s in zip(others, script):
            f[v] = s
        Lf = linalg.matvec(G.matrix, f)
        D = [d + x for d, x in zip(D, Lf)]
    edge_count = {}
    for i, j in G.edges:
        if i != j:
            edge_count[(i, j)] = edge_count.get((i, j), 0) + 1
            edge_count[(j, i)] = edge_count.get((j, i), 0) + 1
    while True:
        burnt = {G.q}
        changed = True
        while changed:
            changed = False
            for v in others:
                if v in burnt:
                    continue
                threat = sum(edge_count.get((v, b), 0) for b in burnt)
                if D[v] < threat:
                    burnt.add(v)
                    changed = True
        unburnt = set(range(G.n)) - burnt
        if not unburnt:
            return tuple(D)
        _fire(G, D, unburnt)


def compositions(total: int, weights: Sequence[int]) -> Iterator[tuple]:
    """All ``x >= 0`` with ``sum(w * x) == total``."""
    n = len(weights)
    if n == 0:
        if total == 0:
            yield ()
        return

    def rec(i, remaining, prefix):
        if i == n - 1:
            w = weights[i]
            if remaining % w == 0:
                yield prefix + (remaining // w,)
            return
        w = weights[i]
        for x in range(remaining // w + 1):
            yield from rec(i + 1, remaining - w * x, prefix + (x,))

    if total >= 0:
        yield from rec(0, total, ())


def effective_in_class(system, coords: Sequence[int], k: int) -> list:
    """Brute force: effective divisors of degree ``k`` in the class ``coords``."""
    target = jacobian(system).reduce(coords)
    return [E for E in compositions(k, system.weights) if jac_coords(system, E) == target]


def oracle_lambda(system, coords: Sequence[int], k: int) -> int:
    """#|D + kq| for the class ``coords``, by enumerating all effective divisors."""
    return len(effective_in_class(system, coords, k))


def rational_column(system, v: int) -> tuple:
    """Column of the inverse reduced matrix for the non-q vertex ``v``."""
    col = system.others.index(v)
    return tuple(Fraction(row[col]) for row in _reduced_inverse(system))

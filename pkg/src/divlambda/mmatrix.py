"""Divisor theory for integer M-matrices.

An M-matrix A (nonpositive off-diagonal, entrywise nonnegative inverse) with
positive integer scripts u, w (Au >= 0, wA >= 0) is bordered into

    Ahat = [[w A u, -w A],
            [-A u,    A ]]

which plays the role of a Laplacian with q at index 0.  Degree is the dot
product with phi = (1, w); the other left-kernel vector is delta = (1, u).
The generic pipelines in :mod:`divisors`, :mod:`primsec`, :mod:`polyhedra`
and :mod:`molien` run unchanged on an :class:`MMatrixSystem`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .divisors import PreconditionError, compositions, degree, jac_coords, jacobian
from .molien import molien_lambda
from .primsec import RationalGF, lambda_gf_primsec


def _as_tuple_matrix(M) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class MMatrixSystem:
    A: tuple
    u: tuple
    w: tuple
    matrix: tuple
    phi: tuple
    delta: tuple

    q = 0

    @property
    def n(self) -> int:
        return len(self.phi)

    @property
    def reduced(self) -> tuple:
        return self.A

    @property
    def others(self) -> tuple:
        return tuple(range(1, self.n))

    @property
    def weights(self) -> tuple:
        return self.phi


def _offdiagonal_nonpositive(A) -> bool:
    return all(A[i][j] <= 0 for i in range(len(A)) for j in range(len(A)) if i != j)


def is_m_matrix(A: Sequence[Sequence[int]]) -> bool:
    """Nonpositive off-diagonal and an entrywise nonnegative inverse."""
    n, m = linalg.shape(A)
    if n != m or not _offdiagonal_nonpositive(A):
        return False
    if n == 0:
        return True
    if linalg.determinant(A) == 0:
        return False
    return all(x >= 0 for row in linalg.rational_inverse(A) for x in row)


def _reaches_positive(A, config) -> bool:
    # every zero of the configuration must reach a positive entry along
    # nonzero entries of A
    n = len(A)
    good = {i for i in range(n) if config[i] > 0}
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if i not in good and any(A[i][j] != 0 and j in good for j in range(n) if j != i):
                good.add(i)
                changed = True
    return len(good) == n


def minimal_burning_script(A: Sequence[Sequence[int]]) -> tuple:
    """Start from all ones and bump any coordinate where ``(Au)_i < 0``."""
    if not is_m_matrix(A):
        raise PreconditionError("not an M-matrix")
    n = len(A)
    u = [1] * n
    while True:
        Au = linalg.matvec(A, u)
        bad = next((i for i in range(n) if Au[i] < 0), None)
        if bad is None:
            break
        u[bad] += 1
    if not _reaches_positive(A, linalg.matvec(A, u)):
        raise ArithmeticError("burning script fails the reachability condition")
    return tuple(u)


def extend(A: Sequence[Sequence[int]], u: Sequence[int], w: Sequence[int]) -> MMatrixSystem:
    """The (w, u)-extension of ``A``."""
    n1, m = linalg.shape(A)
    if n1 != m:
        raise PreconditionError("A must be square")
    if len(u) != n1 or len(w) != n1:
        raise PreconditionError("scripts must have one entry per row of A")
    if any(x <= 0 for x in u):
        raise PreconditionError(f"u must be positive, got {tuple(u)}")
    if any(x <= 0 for x in w):
        raise PreconditionError(f"w must be positive, got {tuple(w)}")
    Au = linalg.matvec(A, u)
    wA = linalg.matvec(linalg.transpose(A), w) if n1 else []
    if any(x < 0 for x in Au):
        raise PreconditionError(f"A u >= 0 fails: A u = {tuple(Au)}")
    if any(x < 0 for x in wA):
        raise PreconditionError(f"w A >= 0 fails: w A = {tuple(wA)}")
    wAu = sum(a * b for a, b in zip(wA, u))
    top = [wAu] + [-x for x in wA]
    rows = [top] + [[-Au[i]] + list(A[i]) for i in range(n1)]
    phi = (1,) + tuple(w)
    delta = (1,) + tuple(u)
    if any(linalg.matvec(linalg.transpose(rows), phi)) or any(linalg.matvec(rows, delta)):
        raise ArithmeticError("kernel identities fail for the extension")
    return MMatrixSystem(_as_tuple_matrix(A), tuple(u), tuple(w), _as_tuple_matrix(rows), phi, delta)


def system_from_matrix(
    A: Sequence[Sequence[int]], u: Optional[Sequence[int]] = None, w: Optional[Sequence[int]] = None
) -> MMatrixSystem:
    """Extension with minimal burning scripts filling in missing ``u``/``w``."""
    if not is_m_matrix(A):
        raise PreconditionError("not an M-matrix")
    if u is None:
        u = minimal_burning_script(A)
    if w is None:
        w = minimal_burning_script(linalg.transpose(A)) if A else ()
    return extend(A, u, w)


def m_degree(system: MMatrixSystem, D: Sequence[int]) -> int:
    return degree(system, D)


def m_lambda_primsec(system: MMatrixSystem, cls: Sequence[int]) -> RationalGF:
    return lambda_gf_primsec(system, cls)


def m_lambda_molien(system: MMatrixSystem, cls: Sequence[int], N: int) -> list:
    return molien_lambda(system, cls, N)


def m_enumerate_linear_system(system: MMatrixSystem, D: Sequence[int]) -> list:
    """Effective divisors of the same phi-degree and class as ``D``."""
    if len(D) != system.n:
        raise PreconditionError(f"divisor has length {system.n}, got {len(D)}")
    d = degree(system, D)
    if d < 0:
        return []
    target = jac_coords(system, D)
    return sorted(E for E in compositions(d, system.phi) if jac_coords(system, E) == target)


def mckay_cartan(M: Sequence[Sequence[int]], dims: Sequence[int]) -> MMatrixSystem:
    """System of the extended McKay-Cartan matrix ``dim(rho) I - M``.

    ``M[i][j]`` is the multiplicity of the j-th irreducible in rho tensor
    the i-th, with the trivial representation first.  The size of the
    identity multiple is dim(rho) = sum_j M[0][j] dims[j] (the symbol n in
    the usual notation is also the number of irreducibles; the two agree for
    the regular representation of an abelian group).
    """
    n, m = linalg.shape(M)
    if n != m or len(dims) != n or n == 0:
        raise PreconditionError("M must be square with one dimension per irreducible")
    if dims[0] != 1 or any(d <= 0 for d in dims):
        raise PreconditionError("dims must be positive with the trivial representation first")
    dim_rho = sum(M[0][j] * dims[j] for j in range(n))
    Ct = [[(dim_rho if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]
    Chat = linalg.transpose(Ct)  # transpose of extended McKay-Cartan
    dims = tuple(dims)
    if any(linalg.matvec(linalg.transpose(Chat), dims)) or any(linalg.matvec(Chat, dims)):
        raise PreconditionError("not a valid McKay system")
    A = [row[1:] for row in Chat[1:]]
    try:
        system = extend(A, dims[1:], dims[1:])
    except (PreconditionError, ArithmeticError) as exc:
        raise PreconditionError(f"not a valid McKay system: {exc}") from exc
    if [list(r) for r in system.matrix] != Chat:
        raise PreconditionError("not a valid McKay system")
    return system


def graph_system(G) -> MMatrixSystem:
    """Extension of a graph's reduced Laplacian with unit scripts.

    The graph must have q at index 0 for the result to reproduce its
    Laplacian.
    """
    n1 = G.n - 1
    return extend(G.reduced, (1,) * n1, (1,) * n1)


def invariant_factors(system: MMatrixSystem) -> tuple:
    return jacobian(system).invariant_factors


B3_CARTAN_TRANSPOSE = ((2, -1, 0), (-1, 2, -1), (0, -2, 2))

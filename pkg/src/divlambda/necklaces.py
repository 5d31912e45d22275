"""Binary necklaces and complete linear systems on cycle graphs.

Words use ``"b"`` for black and ``"w"`` for white beads.  On C_n the
vertices are v_1..v_n around the cycle with q = v_n, so a divisor is the
tuple ``(E(v_1), ..., E(v_n))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, gcd
from typing import Sequence

from .divisors import PreconditionError


class CoprimalityError(PreconditionError):
    pass


def rotations(word: Sequence) -> list:
    return [word[i:] + word[:i] for i in range(len(word))]


def period(word: Sequence) -> int:
    """Smallest i > 0 with the i-fold rotation of ``word`` equal to ``word``."""
    n = len(word)
    for i in range(1, n + 1):
        if n % i == 0 and word[i:] + word[:i] == word:
            return i
    return n


@dataclass(frozen=True, order=True)
class Necklace:
    """Rotation class of a binary word, stored as its least rotation (b < w)."""

    word: str

    def __post_init__(self):
        if set(self.word) - {"b", "w"}:
            raise ValueError(f"not a binary word: {self.word!r}")
        object.__setattr__(self, "word", min(rotations(self.word)) if self.word else "")

    @property
    def n_black(self) -> int:
        return self.word.count("b")

    @property
    def k_white(self) -> int:
        return self.word.count("w")

    @property
    def period(self) -> int:
        return period(self.word)


def canonical_code(a: Sequence[int]) -> tuple:
    """Codes are kept as their lexicographically greatest rotation."""
    return max(rotations(tuple(a)))


def code(N: Necklace) -> tuple:
    """Run lengths of white beads after each black bead."""
    if N.n_black == 0:
        raise PreconditionError("the code needs at least one black bead")
    w = N.word
    start = w.index("b")
    w = w[start:] + w[:start]
    runs = [len(chunk) for chunk in w.split("b")[1:]]
    return canonical_code(runs)


def decode(a: Sequence[int]) -> Necklace:
    if any(x < 0 for x in a):
        raise PreconditionError("code entries must be nonnegative")
    return Necklace("".join("b" + "w" * x for x in a))


def enumerate_necklaces(n: int, k: int) -> list:
    """N(n, k), sorted by canonical word."""
    if n < 1:
        raise PreconditionError("necklaces need n >= 1 black beads")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    seen = set()
    for whites in itertools.combinations(range(n + k), k):
        chars = ["b"] * (n + k)
        for i in whites:
            chars[i] = "w"
        seen.add(Necklace("".join(chars)))
    return sorted(seen)


def _totient(d: int) -> int:
    return sum(1 for i in range(1, d + 1) if gcd(i, d) == 1)


def necklace_count(n: int, k: int) -> int:
    """#N(n, k) = (1/(n+k)) sum_{d | gcd(n,k)} phi(d) C((n+k)/d, n/d)."""
    g = gcd(n, k)
    total = sum(_totient(d) * comb((n + k) // d, n // d) for d in range(1, g + 1) if g % d == 0)
    return total // (n + k)


def m_divisible(N: Necklace, m: int) -> bool:
    return N.period % m == 0


def divisibility_moduli(n: int, k: int, j: int) -> tuple:
    """``(m_j, n_j) = ((n+k)/gcd(n,k,j), n/gcd(n,j))``."""
    return (n + k) // gcd(gcd(n, k), j), n // gcd(n, j)


def count_divisible(n: int, k: int, j: int) -> int:
    """#|D_j + kq| on C_n, counted on necklaces and on their codes."""
    if not 1 <= j <= n:
        raise PreconditionError("j must lie in 1..n")
    mj, nj = divisibility_moduli(n, k, j)
    necklaces = enumerate_necklaces(n, k)
    by_period = sum(1 for N in necklaces if m_divisible(N, mj))
    by_code = sum(1 for N in necklaces if period(code(N)) % nj == 0)
    if by_period != by_code:
        raise ArithmeticError(f"divisibility counts disagree: {by_period} != {by_code}")
    return by_period


def cycle_equivalence(n: int, D: Sequence[int]) -> tuple:
    """``(k, j)`` with ``D ~ D_j + kq`` on C_n."""
    if len(D) != n:
        raise PreconditionError(f"divisor has length {len(D)}, expected {n}")
    return sum(D), sum(i * d for i, d in enumerate(D, start=1)) % n


def cycle_linear_system(n: int, k: int, j: int) -> list:
    """|D_j + kq| on C_n, sorted."""
    if k < 0:
        return []
    out = []
    for bars in itertools.combinations(range(n + k - 1), n - 1):
        parts, prev = [], -1
        for b in bars + (n + k - 1,):
            parts.append(b - prev - 1)
            prev = b
        if cycle_equivalence(n, parts)[1] == j % n:
            out.append(tuple(parts))
    return sorted(out)


def rotate_divisor(E: Sequence[int], i: int) -> tuple:
    """sigma^i with sigma(E)(v_t) = E(v_{t+1})."""
    i %= len(E)
    return tuple(E[i:]) + tuple(E[:i])


def divisor_to_necklace(E: Sequence[int]) -> Necklace:
    return decode(E)


def necklace_to_divisor(N: Necklace, j: int) -> tuple:
    """The unique rotation of the code lying in |D_j + kq| (needs gcd(n, k) = 1)."""
    n, k = N.n_black, N.k_white
    if gcd(n, k) != 1:
        raise CoprimalityError("bijection requires coprimality")
    a = code(N)
    hits = [rotate_divisor(a, i) for i in range(n) if cycle_equivalence(n, rotate_divisor(a, i))[1] == j % n]
    if len(hits) != 1:
        raise ArithmeticError(f"expected one rotation in class {j}, found {len(hits)}")
    return hits[0]


def necklace_bijection(n: int, k: int, j: int) -> dict:
    """The map E -> N_E from |D_j + kq| onto N(n, k)."""
    if gcd(n, k) != 1:
        raise CoprimalityError("bijection requires coprimality")
    mapping = {E: divisor_to_necklace(E) for E in cycle_linear_system(n, k, j)}
    if len(set(mapping.values())) != len(mapping) or len(mapping) != necklace_count(n, k):
        raise ArithmeticError("necklace map is not a bijection")
    return mapping

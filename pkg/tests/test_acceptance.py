"""Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

Run under pytest (the lines are printed even with output capture on) or
directly with ``python3 tests/test_acceptance.py``.
"""

import sys
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from divlambda.divisors import Graph, class_representative, compositions, jac_coords, jacobian, oracle_lambda
from divlambda.mmatrix import B3_CARTAN_TRANSPOSE, extend, graph_system, m_enumerate_linear_system, mckay_cartan
from divlambda.molien import MolienConsistencyError, molien_lambda
from divlambda.necklaces import (
    code,
    count_divisible,
    enumerate_necklaces,
    necklace_bijection,
    necklace_count,
    necklace_to_divisor,
)
from divlambda.polyhedra import enumerate_linear_system, lambda_gf_cone, parallelepiped_points, q_cone
from divlambda.primsec import RationalGF, lambda_gf_primsec, minimal_primary_set, secondary_set, series

from graph_family import small_graphs

DIAMOND = Graph.diamond()
C4 = Graph.cycle(4)
FAMILY_N = 15
ORACLE_K = 8


def three_methods(system, cls, N):
    D = class_representative(system, cls)
    return (
        series(lambda_gf_primsec(system, cls), N),
        series(lambda_gf_cone(system, D), N),
        molien_lambda(system, cls, N),
    )


def report(number, ok, detail=""):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    return line


# criterion checks return (ok, detail)


def check_1():
    want = [1, 1, 3, 3, 6, 8, 12, 16, 23, 29, 39]
    got = three_methods(DIAMOND, (0,), 10)
    return all(s == want for s in got), f"series {got[0]}"


def check_2():
    want = [0, 1, 1, 3, 4, 7, 10, 15, 20, 28, 35]
    got = three_methods(DIAMOND, jac_coords(DIAMOND, (1, 0, 0, -1)), 10)
    return all(s == want for s in got), f"series {got[0]}"


def check_3():
    from test_primsec import DIAMOND_S0, DIAMOND_S1

    P = minimal_primary_set(DIAMOND)
    s0 = set(secondary_set(DIAMOND, P, (0,)).divisors)
    s1 = set(secondary_set(DIAMOND, P, jac_coords(DIAMOND, (1, 0, 0, -1))).divisors)
    return s0 == DIAMOND_S0 and s1 == DIAMOND_S1, f"|S_0| = {len(s0)}, |S_D| = {len(s1)}"


def check_4():
    cls = jac_coords(C4, (0, 1, 0, -1))
    got = three_methods(C4, cls, 10)
    want = [1, 3, 5, 9, 14, 22, 30, 42, 55, 73]
    linsys = enumerate_linear_system(C4, (2, 0, 0, 1))
    ok = all(s[1:] == want for s in got) and len(linsys) == 5
    return ok, f"series 1..10 {got[0][1:]}, #|D2+3q| = {len(linsys)}"


def check_5():
    K5 = Graph.complete(5)
    want0 = [1, 1, 1, 1, 2, 6, 6, 6, 7, 11, 21, 21, 22, 26, 36, 56, 57, 61, 71, 91, 126, 130, 140, 160, 195, 251]
    got0 = three_methods(K5, (0, 0, 0), 25)
    cls = jac_coords(K5, (0, 1, 2, 3, -6))
    lam = three_methods(K5, cls, 30)
    diff = [b - a for a, b in zip(lam[0], lam[0][1:])]
    pattern = [0] * 5 + [comb(k + 3, 3) for k in range(5) for _ in range(5)]
    ok = all(s == want0 for s in got0) and all(s == lam[0] for s in lam) and diff == pattern
    return ok, f"lambda_0 terms 0..25 match; delta lambda_D = {diff[:12]}..."


def check_6():
    C3 = Graph.cycle(3)
    cone = q_cone(C3, (1, 0, -1))
    apex_ok = cone.apex == (Fraction(-2, 3), Fraction(-1, 3), Fraction(0))
    gens_ok = set(cone.generators) == {(2, 1, 3), (1, 2, 3), (0, 0, 1)}
    pts = set(parallelepiped_points(cone).lattice_points)
    pts_ok = pts == {(0, 0, 1), (0, 1, 2), (1, 1, 3)}
    gf = lambda_gf_cone(C3, (1, 0, -1))
    gf_ok = gf == RationalGF((0, 1, 1, 1), (3, 3, 1))
    count = len(enumerate_linear_system(C3, (1, 0, 6)))
    ok = apex_ok and gens_ok and pts_ok and gf_ok and count == 12
    return ok, f"apex {tuple(str(x) for x in cone.apex)}, Pi points {sorted(pts)}, #|(1,0,6)| = {count}"


@lru_cache(maxsize=None)
def family_results():
    """Per graph: {class: (primsec, cone, molien)} to FAMILY_N, or the Molien error."""
    out = []
    for G in small_graphs():
        per_class, error = {}, None
        for c in jacobian(G).classes():
            try:
                per_class[c] = three_methods(G, c, FAMILY_N)
            except MolienConsistencyError as exc:
                error = str(exc)
        out.append((G, per_class, error))
    return out


def check_7():
    mismatches, checked = 0, 0
    for G, per_class, error in family_results():
        if error:
            mismatches += 1
            continue
        for c, (a, b, m) in per_class.items():
            checked += 1
            oracle = [oracle_lambda(G, c, k) for k in range(ORACLE_K + 1)]
            if not (a == b == m and a[: ORACLE_K + 1] == oracle):
                mismatches += 1
    return mismatches == 0, f"{len(family_results())} graphs, {checked} classes, {mismatches} mismatches"


def check_8():
    bad = 0
    for G, per_class, _ in family_results():
        total = [sum(s[0][k] for s in per_class.values()) for k in range(FAMILY_N + 1)]
        if total != [comb(k + G.n - 1, G.n - 1) for k in range(FAMILY_N + 1)]:
            bad += 1
    return bad == 0, f"{bad} graphs fail the partition identity"


def _counts_by_class(n, k):
    C = Graph.cycle(n)
    counts = {}
    for E in compositions(k, (1,) * n):
        c = jac_coords(C, E)
        counts[c] = counts.get(c, 0) + 1
    return counts


def check_9():
    problems = []
    for n in range(2, 9):
        C = Graph.cycle(n)
        kq = series(lambda_gf_primsec(C, (0,)), 10)
        for k in range(0, 11):
            necklaces = enumerate_necklaces(n, k)
            if not kq[k] == len(necklaces) == necklace_count(n, k):
                problems.append(f"#|kq| n={n} k={k}")
            # brute force over all effective divisors of degree k, bucketed by class
            counts = _counts_by_class(n, k)
            if n <= 5 and k <= 5 and any(counts.get((j,), 0) != oracle_lambda(C, (j,), k) for j in range(n)):
                problems.append(f"oracle n={n} k={k}")
            for j in range(1, n + 1):
                if count_divisible(n, k, j) != counts.get((j % n,), 0):
                    problems.append(f"divisible n={n} k={k} j={j}")
    codes_ok = [code(N) for N in enumerate_necklaces(4, 2)] == [(2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0)]
    if not codes_ok:
        problems.append("N(4,2) codes")
    for n, k in [(3, 4), (4, 3), (5, 2), (5, 3), (7, 4)]:
        for j in range(1, n + 1):
            mapping = necklace_bijection(n, k, j)
            if set(mapping.values()) != set(enumerate_necklaces(n, k)):
                problems.append(f"onto n={n} k={k} j={j}")
            if any(necklace_to_divisor(N, j) != E for E, N in mapping.items()):
                problems.append(f"round trip n={n} k={k} j={j}")
    return not problems, "; ".join(problems[:5]) or "counts, divisibility, codes and bijections all match"


def _relabel_q_first(G):
    perm = [G.q] + list(G.others)
    where = {v: i for i, v in enumerate(perm)}
    return Graph(G.n, tuple((where[a], where[b]) for a, b in G.edges), 0), perm


def check_10():
    S = extend(B3_CARTAN_TRANSPOSE, (1, 2, 2), (1, 2, 1))
    problems = []
    if [list(r) for r in S.matrix] != [[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -2, 2]]:
        problems.append("extension")
    if S.phi != (1, 1, 2, 1) or S.delta != (1, 1, 2, 2):
        problems.append("kernel vectors")
    if lambda_gf_primsec(S, (0,)) != RationalGF((1,), (1, 1, 2, 2)):
        problems.append("closed form")
    if any(s != [1, 2, 5, 8, 14, 20, 30, 40, 55] for s in three_methods(S, (0,), 8)):
        problems.append("class 0 series")
    cls = jac_coords(S, (-1, 0, 0, 1))
    if any(s != [0, 1, 2, 5, 8, 14, 20, 30, 40] for s in three_methods(S, cls, 8)):
        problems.append("class D series")
    if len(m_enumerate_linear_system(S, (2, 0, 0, 0))) != 5:
        problems.append("|2q|")
    for G in (DIAMOND, C4, Graph.complete(4)):
        H, perm = _relabel_q_first(G)
        M = graph_system(H)
        if [list(r) for r in M.matrix] != H.matrix:
            problems.append("degenerate extension")
        for c in jacobian(G).classes():
            D = class_representative(G, c)
            mc = jac_coords(M, tuple(D[v] for v in perm))
            if three_methods(M, mc, 12) != three_methods(G, c, 12):
                problems.append(f"pipeline on {G.n} vertices")
                break
    return not problems, "; ".join(problems) or "B3 values and graph degeneration reproduced"


def check_11():
    problems = []
    for n in (3, 4):
        S = mckay_cartan([[1] * n for _ in range(n)], [1] * n)
        K = Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)), 0)
        if [list(r) for r in S.matrix] != K.matrix:
            problems.append(f"matrix n={n}")
        if jacobian(S).invariant_factors != jacobian(K).invariant_factors:
            problems.append(f"invariant factors n={n}")
    return not problems, "; ".join(problems) or "regular representations give K_3, K_4"


def check_12():
    errors = [(G, e) for G, _, e in family_results() if e]
    return not errors, f"{len(errors)} graphs raised a Molien consistency error"


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10, check_11, check_12]


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(number, capsys):
    ok, detail = CHECKS[number - 1]()
    with capsys.disabled():
        print("\n" + report(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for i, check in enumerate(CHECKS, start=1):
        ok, detail = check()
        failed += not ok
        print(report(i, ok, detail))
    sys.exit(1 if failed else 0)

"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 precondition violation,
3 internal consistency failure (for example methods disagreeing).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import mmatrix, necklaces
from .divisors import (
    Graph,
    PreconditionError,
    degree,
    jac_coords,
    jacobian,
    class_representative,
    orders,
    q_reduced,
)
from .molien import molien_lambda
from .polyhedra import enumerate_linear_system, lambda_gf_cone
from .primsec import lambda_gf_primsec

METHODS = ("primsec", "cone", "molien")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConsistencyError(ArithmeticError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            yield lineno, [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {raw.strip()!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """First line ``n q``, then one ``i j`` line per edge."""
    lines = list(_int_lines(text))
    if not lines:
        raise ParseError("empty graph file", 1)
    lineno, head = lines[0]
    if len(head) != 2:
        raise ParseError("header must be 'n q'", lineno)
    n, q = head
    edges = []
    for lineno, vals in lines[1:]:
        if len(vals) != 2:
            raise ParseError("edge lines must be 'i j'", lineno)
        if not all(0 <= v < n for v in vals):
            raise ParseError(f"endpoint out of range 0..{n - 1}", lineno)
        edges.append(tuple(vals))
    if not 0 <= q < n:
        raise ParseError(f"q = {q} out of range", lines[0][0])
    return Graph(n, tuple(edges), q)


def parse_matrix(text: str) -> list:
    """First line ``r c``, then ``r`` rows of ``c`` integers."""
    lines = list(_int_lines(text))
    if not lines:
        raise ParseError("empty matrix file", 1)
    lineno, head = lines[0]
    if len(head) != 2:
        raise ParseError("header must be 'r c'", lineno)
    r, c = head
    rows = lines[1:]
    if len(rows) != r:
        last = rows[-1][0] if rows else lineno
        raise ParseError(f"expected {r} rows, found {len(rows)}", last)
    for lineno, vals in rows:
        if len(vals) != c:
            raise ParseError(f"expected {c} entries, found {len(vals)}", lineno)
    return [vals for _, vals in rows]


def parse_int_list(text: str, what: str = "list") -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise ParseError(f"bad {what} {text!r}") from None


def load_graph(spec: str) -> Graph:
    """A graph file path or a fixture name: diamond, cycle:N, complete:N, path:N."""
    name, _, arg = spec.partition(":")
    fixtures = {"cycle": Graph.cycle, "complete": Graph.complete, "path": Graph.path}
    if spec == "diamond":
        return Graph.diamond()
    if name in fixtures and arg:
        try:
            size = int(arg)
        except ValueError:
            raise ParseError(f"bad fixture size {arg!r}") from None
        return fixtures[name](size)
    path = Path(spec)
    if not path.exists():
        raise ParseError(f"no such graph file or fixture: {spec}")
    return parse_graph(path.read_text())


def load_system(args):
    if getattr(args, "matrix", None):
        if args.matrix == "b3":
            A = [list(r) for r in mmatrix.B3_CARTAN_TRANSPOSE]
        else:
            path = Path(args.matrix)
            if not path.exists():
                raise ParseError(f"no such matrix file: {args.matrix}")
            A = parse_matrix(path.read_text())
        u = parse_int_list(args.u, "script") if args.u else None
        w = parse_int_list(args.w, "script") if args.w else None
        return mmatrix.system_from_matrix(A, u, w)
    if not getattr(args, "input", None):
        raise ParseError("an input graph or --matrix is required")
    return load_graph(args.input)


def _class_and_degree(system, args) -> tuple:
    if args.divisor is not None and args.cls is not None:
        raise ParseError("give either --divisor or --class, not both")
    jac = jacobian(system)
    if args.divisor is not None:
        D = parse_int_list(args.divisor, "divisor")
        if len(D) != system.n:
            raise ParseError(f"divisor needs {system.n} entries, got {len(D)}")
        return jac_coords(system, D), degree(system, D)
    if args.cls is not None:
        coords = parse_int_list(args.cls, "class")
        if len(coords) != len(jac.invariant_factors):
            raise ParseError(f"class needs {len(jac.invariant_factors)} coordinates, got {len(coords)}")
        return jac.reduce(coords), 0
    return jac.reduce([0] * len(jac.invariant_factors)), 0


def cmd_jacobian(args) -> dict:
    system = load_system(args)
    jac = jacobian(system)
    return {"q": system.q, "invariant_factors": list(jac.invariant_factors), "order": jac.order}


def cmd_orders(args) -> dict:
    system = load_system(args)
    return {"q": system.q, "orders": list(orders(system))}


def cmd_reduce(args) -> dict:
    system = load_system(args)
    if not isinstance(system, Graph):
        raise PreconditionError("q-reduction is only available for graphs")
    if args.divisor is None:
        raise ParseError("reduce needs --divisor")
    D = parse_int_list(args.divisor, "divisor")
    if len(D) != system.n:
        raise ParseError(f"divisor needs {system.n} entries, got {len(D)}")
    return {"q": system.q, "divisor": list(D), "reduced": list(q_reduced(system, D))}


def cmd_lambda(args) -> dict:
    system = load_system(args)
    cls, deg = _class_and_degree(system, args)
    N = args.N if args.N is not None else max(20, deg + 1)
    if N < 0:
        raise PreconditionError("series depth must be nonnegative")
    methods = METHODS if args.method == "all" else (args.method,)
    results, gf = {}, None
    for method in methods:
        if method == "primsec":
            g = lambda_gf_primsec(system, cls)
            gf = gf or g
            results[method] = g.series(N)
        elif method == "cone":
            g = lambda_gf_cone(system, class_representative(system, cls))
            gf = gf or g
            results[method] = g.series(N)
        else:
            results[method] = molien_lambda(system, cls, N)
    values = list(results.values())
    agree = all(v == values[0] for v in values)
    if not agree:
        detail = "; ".join(f"{m}={s}" for m, s in results.items())
        raise ConsistencyError(f"methods disagree: {detail}")
    return {
        "q": system.q,
        "class": list(cls),
        "numerator": list(gf.numerator) if gf else None,
        "denominator_exponents": list(gf.denominator_exponents) if gf else None,
        "series": values[0],
        "methods_agree": True,
    }


def cmd_linsys(args) -> dict:
    system = load_system(args)
    if args.divisor is None:
        raise ParseError("linsys needs --divisor")
    D = parse_int_list(args.divisor, "divisor")
    if len(D) != system.n:
        raise ParseError(f"divisor needs {system.n} entries, got {len(D)}")
    divs = enumerate_linear_system(system, D)
    return {"q": system.q, "degree": degree(system, D), "count": len(divs), "divisors": [list(E) for E in divs]}


def cmd_necklace(args) -> dict:
    found = necklaces.enumerate_necklaces(args.n, args.k)
    out = {"n": args.n, "k": args.k, "count": len(found), "codes": [list(necklaces.code(x)) for x in found]}
    if args.j is not None:
        out["j"] = args.j
        out["divisible_count"] = necklaces.count_divisible(args.n, args.k, args.j)
        if args.bijection:
            mapping = necklaces.necklace_bijection(args.n, args.k, args.j)
            out["bijection"] = [[list(E), N.word] for E, N in sorted(mapping.items())]
    elif args.bijection:
        raise ParseError("--bijection needs --j")
    return out


def cmd_mmatrix(args) -> dict:
    if not args.matrix:
        raise ParseError("mmatrix needs --matrix")
    system = load_system(args)
    jac = jacobian(system)
    return {
        "q": system.q,
        "u": list(system.u),
        "w": list(system.w),
        "extended": [list(r) for r in system.matrix],
        "phi": list(system.phi),
        "delta": list(system.delta),
        "invariant_factors": list(jac.invariant_factors),
        "order": jac.order,
    }


def _add_input(p, divisor=False, cls=False):
    p.add_argument("input", nargs="?", help="graph file or fixture (diamond, cycle:N, complete:N, path:N)")
    p.add_argument("--matrix", help="M-matrix file (or 'b3'); q is index 0")
    p.add_argument("--u", help="right script, comma separated")
    p.add_argument("--w", help="left script, comma separated")
    if divisor:
        p.add_argument("--divisor", help="comma-separated divisor in vertex order")
    if cls:
        p.add_argument("--class", dest="cls", help="Jacobian coordinates, comma separated")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="divlambda", description="Complete linear systems of divisors.")
    parser.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("jacobian", help="invariant factors of the Jacobian")
    _add_input(p)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("orders", help="ord_q of every vertex")
    _add_input(p)
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("reduce", help="q-reduced representative of a divisor")
    _add_input(p, divisor=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lambda", help="generating function of #|D + kq|")
    _add_input(p, divisor=True, cls=True)
    p.add_argument("--method", choices=METHODS + ("all",), default="primsec")
    p.add_argument("-N", type=int, default=None, help="series depth")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("linsys", help="enumerate |D|")
    _add_input(p, divisor=True)
    p.set_defaults(func=cmd_linsys)

    p = sub.add_parser("necklace", help="binary necklaces N(n, k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--j", type=int, default=None, help="also count |D_j + kq| via divisibility")
    p.add_argument("--bijection", action="store_true", help="list the map |D_j + kq| -> N(n, k)")
    p.set_defaults(func=cmd_necklace)

    p = sub.add_parser("mmatrix", help="extension of an M-matrix")
    p.add_argument("--matrix", required=True, help="M-matrix file (or 'b3')")
    p.add_argument("--u", help="right script, comma separated")
    p.add_argument("--w", help="left script, comma separated")
    p.set_defaults(func=cmd_mmatrix)
    return parser


def format_text(result: dict) -> str:
    lines = []
    for key, value in result.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.extend("  " + " ".join(str(x) for x in row) for row in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _join_negative_values(argv: Sequence[str]) -> list:
    # argparse reads "-1,0,2" as an option; glue it to its flag
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


_LIST_FLAGS = ("--divisor", "--class", "--u", "--w")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        result = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 3
    print(format_text(result) if args.text else json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())

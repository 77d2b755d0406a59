"""Command-line interface.

Exit codes: 0 success, 1 negative decision (answer false, not colorable,
not a vertex, not adjacent, LP not optimal), 2 input error, 3 budget or
subclass refusal.  All rationals print as ``p/q``; identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from satpoly.blockpoint import BlockPoint
from satpoly.builders import PolytopeId
from satpoly.errors import BudgetError, InputError, SatpolyError, SubclassError
from satpoly.linsys import LinearSystem, lp_maximize
from satpoly.rational import format_rational, format_vector, parse_rational
from satpoly import ecbgc as ecbgc_mod
from satpoly import recognition, reductions, vertices

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_flat_vector(path: str) -> list:
    tokens = []
    for raw in _read(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    return [parse_rational(t) for t in tokens]


def _cmd_build(args) -> int:
    system = PolytopeId(args.polytope, m=args.m, n=args.n).build()
    sys.stdout.write(system.to_text())
    return EXIT_OK


def _cmd_lp(args) -> int:
    system = LinearSystem.from_text(_read(args.system))
    objective = _read_flat_vector(args.objective)
    result = lp_maximize(system, objective)
    print(f"status {result.status}")
    if result.status != "Optimal":
        return EXIT_NEGATIVE
    print(f"value {format_rational(result.value)}")
    print("point " + format_vector(result.point))
    print("tight " + " ".join(str(i) for i in sorted(result.tight_set)))
    return EXIT_OK


def _cmd_vertices(args) -> int:
    action = args.action
    if action in ("enumerate", "diameter", "clique") and (
        args.m is None or args.n is None
    ):
        raise InputError(f"vertices {action} needs --m and --n")
    if action == "enumerate":
        for code in vertices.enumerate_integral_vertices(
            args.m, args.n, budget=args.budget
        ):
            print(code)
        return EXIT_OK
    if action == "adjacent":
        if args.u is None or args.v is None:
            raise InputError("vertices adjacent needs --u and --v")
        u = vertices.VertexCode.parse(args.u)
        v = vertices.VertexCode.parse(args.v)
        ok = vertices.adjacent(u, v)
        print("true" if ok else "false")
        return EXIT_OK if ok else EXIT_NEGATIVE
    if action == "diameter":
        graph = vertices.skeleton(args.m, args.n, budget=args.budget)
        print(graph.diameter())
        return EXIT_OK
    if action == "clique":
        for code in vertices.construct_clique(args.m, args.n):
            print(code)
        return EXIT_OK
    # fractional
    if args.n is None:
        raise InputError("vertices fractional needs --n")
    point = vertices.fractional_vertex(args.n)
    sys.stdout.write(point.to_text())
    return EXIT_OK


def _cmd_verify_vertex(args) -> int:
    system = LinearSystem.from_text(_read(args.system))
    point = BlockPoint.from_text(_read(args.point), expect_tag="point")
    ok = vertices.verify_vertex(point, system)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_enum_lp_vertices(args) -> int:
    system = LinearSystem.from_text(_read(args.system))
    for vertex in vertices.enumerate_lp_vertices(system, budget=args.budget):
        print(format_vector(vertex))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    formula = reductions.parse_cnf3(_read(args.cnf))
    builder = {
        "max3sat": reductions.objective_max3sat,
        "x3sat": reductions.objective_x3sat,
        "nae3sat": reductions.objective_nae3sat,
    }[args.variant]
    sys.stdout.write(builder(formula).to_text(tag="objective"))
    return EXIT_OK


def _cmd_recognize(args) -> int:
    if args.kind == "satp":
        c = BlockPoint.from_text(_read(args.objective), expect_tag="objective")
        m = args.m if args.m is not None else c.m
        n = args.n if args.n is not None else c.n
        outcome = recognition.recognize_satp(c, m, n)
        print(f"answer {'true' if outcome.answer else 'false'}")
        print(f"value {format_rational(outcome.lp_value)}")
        print(
            "relaxation "
            + format_rational(outcome.relaxation_value)
            + " strengthened "
            + format_rational(outcome.strengthened_value)
        )
        if outcome.witness is not None:
            print(f"witness {outcome.witness}")
        return EXIT_OK if outcome.answer else EXIT_NEGATIVE
    if args.n is None:
        raise InputError("recognize bqp needs --n")
    objective = _read_flat_vector(args.objective)
    outcome = recognition.recognize_bqp(objective, args.n)
    print(f"answer {'true' if outcome.answer else 'false'}")
    print(f"value {format_rational(outcome.lp_value)}")
    print(
        "relaxation "
        + format_rational(outcome.relaxation_value)
        + " strengthened "
        + format_rational(outcome.strengthened_value)
    )
    return EXIT_OK if outcome.answer else EXIT_NEGATIVE


def _cmd_oracle(args) -> int:
    if args.kind == "satp":
        if args.objective is None:
            raise InputError("oracle satp needs --objective")
        c = BlockPoint.from_text(_read(args.objective), expect_tag="objective")
        value, code = recognition.integer_max_oracle(
            c, c.m, c.n, budget=args.budget
        )
        print(f"value {format_rational(value)}")
        print(f"argmax {code}")
        return EXIT_OK
    if args.instance is None:
        raise InputError("oracle ecbgc needs --instance")
    inst = ecbgc_mod.parse_ecbgc(_read(args.instance))
    coloring = ecbgc_mod.brute_force_coloring(inst, budget=args.budget)
    if coloring is None:
        print("no coloring")
        return EXIT_NEGATIVE
    _print_coloring(coloring)
    return EXIT_OK


def _print_coloring(coloring: ecbgc_mod.Coloring) -> None:
    for i, color in enumerate(coloring.u_colors, start=1):
        print(f"u {i} {color}")
    for j, color in enumerate(coloring.v_colors, start=1):
        print(f"v {j} {color}")


def _cmd_ecbgc(args) -> int:
    if args.action == "from-x3sat":
        if args.cnf is None:
            raise InputError("ecbgc from-x3sat needs --cnf")
        formula = reductions.parse_cnf3(_read(args.cnf))
        sys.stdout.write(ecbgc_mod.format_ecbgc(ecbgc_mod.reduce_x3sat_to_ecbgc(formula)))
        return EXIT_OK
    if args.instance is None:
        raise InputError(f"ecbgc {args.action} needs --instance")
    inst = ecbgc_mod.parse_ecbgc(_read(args.instance))
    if args.action == "check":
        cond = ecbgc_mod.check_condition(inst)
        if cond.ok:
            for j, (a, b) in enumerate(cond.pairs, start=1):
                print(f"v {j} pair {a} {b}")
            return EXIT_OK
        print(f"violating {cond.violating}")
        return EXIT_NEGATIVE
    coloring = ecbgc_mod.solve_ecbgc(inst)
    if coloring is None:
        print("no coloring")
        return EXIT_NEGATIVE
    _print_coloring(coloring)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satpoly",
        description="Exact tools for the 3-SAT relaxation polytope family.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a constraint system")
    p.add_argument(
        "--polytope",
        required=True,
        choices=["satp", "satp2", "bqp", "bqp-std", "met"],
    )
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("lp", help="maximize an objective over a system")
    p.add_argument("--system", required=True)
    p.add_argument("--objective", required=True, help="flat rational vector file")
    p.set_defaults(func=_cmd_lp)

    p = sub.add_parser("vertices", help="integral-vertex machinery")
    p.add_argument(
        "action", choices=["enumerate", "adjacent", "diameter", "clique", "fractional"]
    )
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--u", help="vertex code ROW:COL, e.g. 01:20")
    p.add_argument("--v", help="vertex code ROW:COL")
    p.add_argument("--budget", type=int, default=vertices.DEFAULT_CODE_BUDGET)
    p.set_defaults(func=_cmd_vertices)

    p = sub.add_parser("verify-vertex", help="algebraic vertex test")
    p.add_argument("--system", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_verify_vertex)

    p = sub.add_parser("enum-lp-vertices", help="exhaustive vertex enumeration")
    p.add_argument("--system", required=True)
    p.add_argument("--budget", type=int, default=vertices.DEFAULT_LP_VERTEX_BUDGET)
    p.set_defaults(func=_cmd_enum_lp_vertices)

    p = sub.add_parser("reduce", help="3-CNF to objective vector")
    p.add_argument("variant", choices=["max3sat", "x3sat", "nae3sat"])
    p.add_argument("--cnf", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("recognize", help="integer recognition")
    p.add_argument("kind", choices=["satp", "bqp"])
    p.add_argument("--objective", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("oracle", help="brute-force ground truth")
    p.add_argument("kind", choices=["satp", "ecbgc"])
    p.add_argument("--objective")
    p.add_argument("--instance")
    p.add_argument("--budget", type=int, default=vertices.DEFAULT_CODE_BUDGET)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("ecbgc", help="edge-constrained bipartite coloring")
    p.add_argument("action", choices=["check", "solve", "from-x3sat"])
    p.add_argument("--instance")
    p.add_argument("--cnf")
    p.set_defaults(func=_cmd_ecbgc)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (BudgetError, SubclassError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SatpolyError as exc:  # pragma: no cover - internal errors
        print(f"internal error: {exc}", file=sys.stderr)
        raise


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: instance generation, solving, linearization, benchmarks.

Exit codes are a stable contract: 0 for success (and for the linearizable
verdict), 3 for a not-linearizable verdict, 2 for usage errors and violated
preconditions.  All output values are exact rationals; wall-clock timings in
``bench`` are the only floats anywhere.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from .adjacent import solve_aqspp
from .complete import k4_linearize, normalize_knstar, tournament4_linearize
from .errors import QspathError
from .fileio import emit_instance, parse_instance
from .generate import FILLS, filled_instance, random_digraph, worked_example
from .graphs import (
    count_grid_paths,
    make_complete_symmetric,
    make_directed_cycle,
    make_grid,
    make_hypercube,
    make_tournament,
    path_vertices,
)
from .grid import linearize_grid
from .model import QsppInstance, SppInstance, brute_force_solve, spp_solve
from .pathmatrix import (
    CostMismatch,
    InfeasibilityCertificate,
    LinearizationResult,
    build_path_matrix,
    lp_oracle,
)
from .reductions import DisjointPathsInstance, disjoint_to_aqspp, parse_qaplib, qap_to_qspp
from .special import solve_product_case


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_generate(args: argparse.Namespace) -> int:
    family = args.family
    if family == "qap-reduce":
        if not args.params:
            raise QspathError("qap-reduce needs the path of a QAP text file")
        with open(args.params[0], encoding="utf-8") as handle:
            text = handle.read()
        inst = qap_to_qspp(parse_qaplib(text))
        _write(emit_instance(inst), args.output)
        return 0
    if family == "disjoint-reduce":
        n = int(args.params[0])
        if args.seed is None:
            raise QspathError("disjoint-reduce needs --seed")
        rng = random.Random(args.seed)
        g = random_digraph(n, args.density, rng)
        s1, t1, s2, t2 = rng.sample(range(n), 4)
        inst = disjoint_to_aqspp(DisjointPathsInstance(g, s1, t1, s2, t2))
        _write(emit_instance(inst), args.output)
        return 0

    if family == "grid":
        p, q = (int(v) for v in args.params)
        g = make_grid(p, q)
        source, target = 0, g.n - 1
    elif family == "complete":
        n = int(args.params[0])
        if args.example:
            _write(emit_instance(worked_example(n)), args.output)
            return 0
        g = make_complete_symmetric(n, simplified=not args.full, source=0, target=n - 1)
        source, target = 0, n - 1
    elif family == "cycle":
        n = int(args.params[0])
        g = make_directed_cycle(n)
        source, target = 0, n - 1
    elif family == "hypercube":
        n = int(args.params[0])
        g = make_hypercube(n)
        source, target = 0, g.n - 1
    elif family == "tournament":
        n = int(args.params[0])
        bits = args.orientation
        if bits is None:
            if args.seed is None:
                raise QspathError("tournament needs --orientation or --seed")
            bits = random.Random(args.seed).getrandbits(n * (n - 1) // 2)
        g = make_tournament(n, bits)
        source, target = 0, n - 1
    else:
        raise QspathError(f"unknown family {family!r}")
    inst = filled_instance(g, source, target, args.fill, args.seed, args.max_entry)
    _write(emit_instance(inst), args.output)
    return 0


def _load(path: str) -> QsppInstance:
    with open(path, encoding="utf-8") as handle:
        return parse_instance(handle.read())


def _print_solution(method: str, inst: QsppInstance, path, cost: Fraction) -> None:
    verts = path_vertices(inst.graph, path)
    print(f"method {method}")
    print("path " + " ".join(str(v) for v in verts))
    print(f"cost {cost}")


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args.file)
    if args.method == "brute":
        path, cost = brute_force_solve(inst, args.limit)
    elif args.method == "aqspp":
        path, cost = solve_aqspp(inst)
    elif args.method == "product":
        path, cost = solve_product_case(inst)
    else:
        if any(v for row in inst.interaction.rows for v in row):
            raise QspathError(
                "method spp needs a zero interaction matrix; use brute or aqspp"
            )
        path, cost = spp_solve(
            SppInstance(inst.graph, inst.source, inst.target, inst.linear)
        )
    _print_solution(args.method, inst, path, cost)
    return 0


def _print_result(inst: QsppInstance, result: LinearizationResult) -> int:
    if result.linearizable:
        print("verdict linearizable")
        print("vector")
        print(" ".join(str(v) for v in result.vector))
        return 0
    print("verdict not-linearizable")
    if result.note:
        print(f"note {result.note}")
    witness = result.witness
    if isinstance(witness, InfeasibilityCertificate):
        print("certificate")
        print(" ".join(str(v) for v in witness.coefficients))
    elif isinstance(witness, CostMismatch):
        verts = path_vertices(inst.graph, witness.path)
        print("witness-path " + " ".join(str(v) for v in verts))
        print(f"expected {witness.expected}")
        print(f"got {witness.got}")
    return 3


def _cmd_linearize(args: argparse.Namespace) -> int:
    inst = _load(args.file)
    if args.mode == "grid":
        result = linearize_grid(inst)
    elif args.mode == "k4":
        result = k4_linearize(normalize_knstar(inst))
    elif args.mode == "t4":
        result = tournament4_linearize(inst)
    else:
        pm = build_path_matrix(inst, args.limit)
        result = lp_oracle(pm, require_nonneg=args.mode == "oracle-nonneg")
    return _print_result(inst, result)


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes: list[tuple[int, int]] = []
    if args.max_p >= 2 and args.max_q >= 2:
        for p in range(2, args.max_p + 1):
            sizes.append((p, args.max_q))
        for q in range(2, args.max_q):
            sizes.append((args.max_p, q))
    sizes.sort()
    print("p q arcs paths seconds verdict")
    for p, q in sizes:
        g = make_grid(p, q)
        inst = filled_instance(g, 0, g.n - 1, "weak-sum", args.seed + p * 1000 + q)
        start = time.perf_counter()
        result = linearize_grid(inst)
        elapsed = time.perf_counter() - start
        verdict = "linearizable" if result.linearizable else "not-linearizable"
        print(f"{p} {q} {g.m} {count_grid_paths(p, q)} {elapsed:.4f} {verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qspath",
        description="Quadratic shortest path toolkit: exact solvers and "
        "linearizability checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write an instance file")
    gen.add_argument(
        "family",
        choices=[
            "grid",
            "complete",
            "cycle",
            "hypercube",
            "tournament",
            "qap-reduce",
            "disjoint-reduce",
        ],
    )
    gen.add_argument("params", nargs="*", help="family parameters (sizes or a QAP file)")
    gen.add_argument("--fill", choices=sorted(FILLS), default="zero")
    gen.add_argument("--seed", type=int, default=None, help="64-bit seed for random fills")
    gen.add_argument("--max-entry", type=int, default=9)
    gen.add_argument("--example", action="store_true", help="built-in worked example (complete 4 or 5)")
    gen.add_argument("--full", action="store_true", help="complete graph without arc removal")
    gen.add_argument("--orientation", type=int, default=None, help="tournament orientation bits")
    gen.add_argument("--density", type=float, default=0.4, help="arc probability for disjoint-reduce")
    gen.add_argument("--output", default=None)
    gen.set_defaults(func=_cmd_generate)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("file")
    solve.add_argument("--method", choices=["brute", "aqspp", "product", "spp"], default="brute")
    solve.add_argument("--limit", type=int, default=10**6)
    solve.set_defaults(func=_cmd_solve)

    lin = sub.add_parser("linearize", help="decide linearizability of an instance file")
    lin.add_argument("file")
    lin.add_argument(
        "--mode",
        choices=["grid", "k4", "t4", "oracle", "oracle-nonneg"],
        required=True,
    )
    lin.add_argument("--limit", type=int, default=1000)
    lin.set_defaults(func=_cmd_linearize)

    bench = sub.add_parser("bench", help="time the grid decision across sizes")
    bench.add_argument("--max-p", type=int, required=True)
    bench.add_argument("--max-q", type=int, required=True)
    bench.add_argument("--seed", type=int, default=0)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QspathError, OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

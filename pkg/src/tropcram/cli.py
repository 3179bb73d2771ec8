"""Command-line front end.

Exit status: 0 on success, 2 when the problem is mathematically infeasible
(the status is still printed), 1 on usage, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from . import __version__
from .assignment import fast_det
from .axioms import check_axioms, declared_traits_hold
from .errors import Infeasible, TropcramError
from .extension import semiring_by_name
from .geometry import Hyperplane, hyperplane_through, meet_hyperplanes
from .io import format_matrix, format_row, read_matrix, read_vector
from .linalg import TropMatrix, adjugate, as_rmax, det, hungarian_scaling, kleene_star, per
from .random_instances import rmax_matrix
from .semirings import RMAX, ParseError
from .solvers import (
    POLICIES,
    SolverConfig,
    cramer_solve,
    gauss_seidel_solve,
    homogeneous_solve,
    jacobi_solve,
)
from .transport import (
    cramer_permanents_brute,
    cramer_permanents_transport,
    cramer_permanents_via_jacobi,
    cross_check_permanents,
    solve_transport,
)

INFEASIBLE_STATUSES = ("structurally_singular", "no_thin_certificate")


def _q(x) -> str:
    return RMAX.fmt(x)


def _qs(xs) -> str:
    return " ".join(_q(x) for x in xs)


def _config(args) -> SolverConfig:
    return SolverConfig(
        policy=args.policy, diag_policy=args.diag_policy, seed=args.seed,
        max_sweeps=args.max_sweeps,
    )


def _semiring_override(args):
    return semiring_by_name(args.semiring) if args.semiring else None


def _matrix(args, path) -> TropMatrix:
    return read_matrix(path, _semiring_override(args))


def _system(args):
    A = _matrix(args, args.matrix)
    S, b = read_vector(args.vector, A.S if args.semiring is None else _semiring_override(args))
    if S is not A.S:
        raise ParseError(f"{args.vector}: semiring {S.name} does not match {args.matrix} ({A.S.name})")
    if len(b) != A.nrows:
        raise ParseError(
            f"dimension mismatch: {args.matrix} has {A.nrows} rows, {args.vector} has length {len(b)}")
    return A, b


def _print_trace(S, trace, out):
    for k, x in enumerate(trace):
        print(f"x{k}: {format_row(S, x)}", file=out)


# ---------------------------------------------------------------------------
# Commands


def cmd_det(args, out) -> int:
    A = _matrix(args, args.matrix)
    d = det(A) if args.brute else fast_det(A)
    print(A.S.fmt(d), file=out)
    return 0


def cmd_per(args, out) -> int:
    A = _matrix(args, args.matrix)
    print(A.S.fmt(per(A)), file=out)
    return 0


def cmd_adj(args, out) -> int:
    A = _matrix(args, args.matrix)
    print(format_matrix(adjugate(A, signed=not args.unsigned)), end="", file=out)
    return 0


def cmd_star(args, out) -> int:
    A = as_rmax(_matrix(args, args.matrix))
    print(format_matrix(kleene_star(A)), end="", file=out)
    return 0


def cmd_scale(args, out) -> int:
    A = as_rmax(_matrix(args, args.matrix))
    sc = hungarian_scaling(A)
    print(f"per: {_q(sc.per)}", file=out)
    print(f"sigma: {' '.join(str(j + 1) for j in sc.sigma)}", file=out)
    print(f"u: {_qs(sc.u)}", file=out)
    print(f"v: {_qs(sc.v)}", file=out)
    return 0


def _report(S, rep, out, trace: bool) -> int:
    print(f"status: {rep.status}", file=out)
    if rep.det is not None:
        print(f"det: {S.fmt(rep.det)}", file=out)
    if rep.cramer is not None:
        print(f"cramer: {format_row(S, rep.cramer)}", file=out)
    if rep.all_solutions_modulus is not None:
        print(f"modulus: {_qs(rep.all_solutions_modulus)}", file=out)
    if trace and rep.trace:
        _print_trace(S, rep.trace, out)
    if rep.iterations is not None:
        print(f"sweeps: {rep.iterations}", file=out)
    for note in rep.notes:
        print(f"note: {note}", file=out)
    if rep.solution is not None:
        print(f"solution: {format_row(S, rep.solution)}", file=out)
    return 2 if rep.status in INFEASIBLE_STATUSES and rep.solution is None else 0


def cmd_solve(args, out) -> int:
    A, b = _system(args)
    return _report(A.S, cramer_solve(A, b, _config(args)), out, args.trace)


def _iterative(solver):
    def run(args, out) -> int:
        A, b = _system(args)
        res = solver(A, b, _config(args))
        if args.trace:
            _print_trace(A.S, res.trace, out)
            print(f"sweeps: {res.sweeps}", file=out)
        print(format_row(A.S, res.solution), file=out)
        return 0
    return run


cmd_jacobi = _iterative(jacobi_solve)
cmd_gauss_seidel = _iterative(gauss_seidel_solve)


def cmd_homogeneous(args, out) -> int:
    A = _matrix(args, args.matrix)
    return _report(A.S, homogeneous_solve(A, _config(args)), out, args.trace)


def cmd_cramer_all(args, out) -> int:
    C = as_rmax(_matrix(args, args.matrix))
    routes = {
        "transport": cramer_permanents_transport,
        "jacobi": cramer_permanents_via_jacobi,
        "brute": cramer_permanents_brute,
    }
    print(_qs(routes[args.method](C)), file=out)
    return 0


def cmd_transport(args, out) -> int:
    C = as_rmax(_matrix(args, args.matrix))
    sol = solve_transport(C, order=args.order)
    print(f"value: {_q(sol.value)}", file=out)
    print(f"pivots: {sol.pivots}", file=out)
    print(f"u: {_qs(sol.u)}", file=out)
    print(f"v: {_qs(sol.v)}", file=out)
    print("flow:", file=out)
    for row in sol.flow:
        print(" ".join(str(y) for y in row), file=out)
    return 0


def cmd_hyperplane_through(args, out) -> int:
    P = _matrix(args, args.matrix)
    H = hyperplane_through(P.rows, P.S, _config(args))
    print(f"params: {format_row(P.S, H.params)}", file=out)
    print(f"equation: {H.equation()}", file=out)
    return 0


def cmd_meet(args, out) -> int:
    M = _matrix(args, args.matrix)
    res = meet_hyperplanes([Hyperplane(M.S, r) for r in M.rows], _config(args))
    print(f"eps: {' '.join('+1' if e > 0 else '-1' for e in res.eps)}", file=out)
    print(f"point: {_qs(res.point)}", file=out)
    return 0


def cmd_check_axioms(args, out) -> int:
    S = semiring_by_name(args.name)
    report = check_axioms(S, seed=args.seed or 0, budget=args.budget)
    for line in report.lines():
        print(line, file=out)
    declared = declared_traits_hold(S, report)
    broken = [t for t, ok in declared.items() if not ok]
    for t, ok in declared.items():
        print(f"declared {t}: {'holds' if ok else 'VIOLATED'}", file=out)
    return 2 if broken else 0


def cmd_cross_check(args, out) -> int:
    if args.source != "random":
        C = as_rmax(_matrix(args, args.source))
        r = cross_check_permanents(C)
        print(f"brute: {_qs(r.brute)}", file=out)
        print(f"jacobi: {_qs(r.jacobi)}", file=out)
        print(f"transport: {_qs(r.transport) if r.transport else 'infeasible'}", file=out)
        print("OK 1/1" if r.agree else "FAIL 0/1", file=out)
        return 0 if r.agree else 2
    if args.n < 2:
        raise TropcramError("--n must be at least 2")
    rng = random.Random(args.seed if args.seed is not None else 0)
    cases = [
        rmax_matrix(rng, args.n - 1, args.n, -args.max_mag, args.max_mag, args.p_bottom)
        for _ in range(args.cases)
    ]
    if args.workers > 1:
        with ThreadPoolExecutor(args.workers) as pool:
            results = list(pool.map(cross_check_permanents, cases))
    else:
        results = [cross_check_permanents(C) for C in cases]
    ok = sum(r.agree for r in results)
    for C, r in zip(cases, results):
        if not r.agree:
            print(f"mismatch on\n{format_matrix(C)}brute {_qs(r.brute)} | jacobi {_qs(r.jacobi)}"
                  f" | transport {_qs(r.transport) if r.transport else 'infeasible'}", file=out)
            break
    print(f"{'OK' if ok == len(results) else 'FAIL'} {ok}/{len(results)}", file=out)
    return 0 if ok == len(results) else 2


# ---------------------------------------------------------------------------
# Argument parsing


def _common(p: argparse.ArgumentParser, solver: bool = False) -> None:
    p.add_argument("--semiring", help="override the semiring named in the input files")
    p.add_argument("--seed", type=int, default=None, help="seed for random choices")
    if solver:
        p.add_argument("--policy", choices=POLICIES, default="prefer-positive",
                       help="choice among thin witnesses")
        p.add_argument("--diag-policy", choices=POLICIES, default=None,
                       help="choice of the thin part of balanced diagonal entries")
        p.add_argument("--max-sweeps", type=int, default=None)
        p.add_argument("--trace", action="store_true", help="print iterates one per line")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tropcram", description="Linear systems over tropical extensions.")
    ap.add_argument("--version", action="version", version=f"tropcram {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, inputs=("matrix",), solver=False):
        p = sub.add_parser(name, help=help_text)
        for inp in inputs:
            p.add_argument(inp)
        _common(p, solver)
        p.set_defaults(func=func)
        return p

    add("det", cmd_det, "determinant").add_argument(
        "--brute", action="store_true", help="use the permutation expansion")
    add("per", cmd_per, "permanent by permutation expansion")
    add("adj", cmd_adj, "adjugate matrix").add_argument(
        "--unsigned", action="store_true", help="permanental adjugate")
    add("star", cmd_star, "Kleene star of a max-plus matrix")
    add("scale", cmd_scale, "optimal assignment with Hungarian potentials")
    add("solve", cmd_solve, "Cramer solve with status report", ("matrix", "vector"), True)
    add("jacobi", cmd_jacobi, "Jacobi iteration", ("matrix", "vector"), True)
    add("gauss-seidel", cmd_gauss_seidel, "Gauss-Seidel iteration", ("matrix", "vector"), True)
    add("homogeneous", cmd_homogeneous, "thin nonzero solution of A x balanced", solver=True)
    add("cramer-all", cmd_cramer_all, "permanents of all maximal minors of an (n-1) x n matrix").add_argument(
        "--method", choices=("transport", "jacobi", "brute"), default="transport")
    add("transport", cmd_transport, "transportation problem for an (n-1) x n matrix").add_argument(
        "--order", choices=("bland", "reversed"), default="bland", help="pivot order")
    add("hyperplane-through", cmd_hyperplane_through, "hyperplane through n-1 points (rows)", solver=True)
    add("meet", cmd_meet, "sign pattern and meeting point of n-1 signed hyperplanes (rows)", solver=True)

    p = sub.add_parser("check-axioms", help="verify semiring laws and structural properties")
    p.add_argument("name", help="semiring name, e.g. smax, t2, phase, signs, n2, torus4, super3-max")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=20000, help="sample budget per property")
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("cross-check", help="compare the three Cramer-permanent routes")
    p.add_argument("source", help="'random' or a matrix file")
    p.add_argument("--n", type=int, default=4, help="matrix is (n-1) x n")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--max-mag", type=int, default=5, help="entries are integers in [-M, M]")
    p.add_argument("--p-bottom", type=float, default=0.0, help="probability of a -inf entry")
    p.add_argument("--workers", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_cross_check)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args, out)
    except Infeasible as exc:
        msg = str(exc)
        print(msg if msg.startswith("infeasible") else f"infeasible: {msg}", file=out)
        return 2
    except (TropcramError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Run the 3x3 signed system through Jacobi (both witness policies) and
Gauss-Seidel, print the iterates and check each fixed point."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from configs import WorkedSystemConfig, from_cli  # noqa: E402
from tropcram.io import format_row, read_matrix, read_vector  # noqa: E402
from tropcram.linalg import mat_vec  # noqa: E402
from tropcram.solvers import SolverConfig, cramer_solve, gauss_seidel_solve, jacobi_solve  # noqa: E402


def show(title, S, A, b, res):
    print(f"-- {title}")
    for k, x in enumerate(res.trace):
        print(f"  x{k}: {format_row(S, x)}")
    residual = mat_vec(A, res.solution)
    ok = all(S.balances(l, r) for l, r in zip(residual, b))
    print(f"  sweeps {res.sweeps}, A x = {format_row(S, residual)}, balances b: {ok}")


def main(argv=None):
    cfg = from_cli(WorkedSystemConfig, argv, __doc__)
    A = read_matrix(cfg.matrix)
    S, b = read_vector(cfg.vector)
    rep = cramer_solve(A, b)
    print(f"det = {S.fmt(rep.det)}, status {rep.status}")
    print(f"Cramer vector = {format_row(S, rep.cramer)}")
    for policy in cfg.policies:
        show(f"Jacobi, {policy}", S, A, b, jacobi_solve(A, b, SolverConfig(policy)))
    if cfg.gauss_seidel:
        show("Gauss-Seidel", S, A, b, gauss_seidel_solve(A, b))


if __name__ == "__main__":
    main()

"""Random signed systems: status distribution, sweep counts per policy,
and how often Jacobi and Gauss-Seidel land on the same solution."""

import collections
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from configs import SolverSweepConfig, from_cli  # noqa: E402
from tropcram.errors import StructurallySingular  # noqa: E402
from tropcram.extension import SMAX  # noqa: E402
from tropcram.random_instances import ext_matrix  # noqa: E402
from tropcram.solvers import SolverConfig, cramer_solve, gauss_seidel_solve, jacobi_solve  # noqa: E402


def main(argv=None):
    cfg = from_cli(SolverSweepConfig, argv, __doc__)
    rng = random.Random(cfg.seed)
    for n in cfg.sizes:
        statuses = collections.Counter()
        sweeps = {p: [] for p in cfg.policies}
        gs_sweeps, same = [], 0
        for _ in range(cfg.cases):
            A = ext_matrix(rng, SMAX, n, n, p_nonthin=cfg.p_nonthin)
            b = ext_matrix(rng, SMAX, 1, n, p_nonthin=cfg.p_nonthin).rows[0]
            statuses[cramer_solve(A, b).status] += 1
            try:
                runs = {p: jacobi_solve(A, b, SolverConfig(p, seed=cfg.seed)) for p in cfg.policies}
            except StructurallySingular:
                continue
            for p, r in runs.items():
                sweeps[p].append(r.sweeps)
            gs = gauss_seidel_solve(A, b)
            gs_sweeps.append(gs.sweeps)
            same += gs.solution == runs[cfg.policies[0]].solution
        avg = {p: sum(v) / len(v) for p, v in sweeps.items() if v}
        print(f"n={n}: " + ", ".join(f"{k} {v}" for k, v in sorted(statuses.items())))
        print("    mean sweeps " + ", ".join(f"{p} {a:.2f}" for p, a in avg.items())
              + (f", gauss-seidel {sum(gs_sweeps) / len(gs_sweeps):.2f}" if gs_sweeps else "")
              + f"; GS matches Jacobi on {same}/{len(gs_sweeps)}")


if __name__ == "__main__":
    main()

"""Time the three routes to all Cramer permanents of (n-1) x n max-plus
matrices: brute force (small n only), Jacobi and transportation."""

import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from configs import TimingConfig, from_cli  # noqa: E402
from tropcram.errors import TransportInfeasible  # noqa: E402
from tropcram.random_instances import rmax_matrix  # noqa: E402
from tropcram.transport import (  # noqa: E402
    cramer_permanents_brute,
    cramer_permanents_transport,
    cramer_permanents_via_jacobi,
)


def clock(fn, C):
    s = time.perf_counter()
    out = fn(C)
    return out, time.perf_counter() - s


def main(argv=None):
    cfg = from_cli(TimingConfig, argv, __doc__)
    rng = random.Random(cfg.seed)
    print(f"{'n':>3} {'brute ms':>10} {'jacobi ms':>10} {'transport ms':>13} {'agree':>6}")
    for n in cfg.sizes:
        times = {"brute": [], "jacobi": [], "transport": []}
        agree = 0
        for _ in range(cfg.cases):
            C = rmax_matrix(rng, n - 1, n, -cfg.max_mag, cfg.max_mag, cfg.p_bottom)
            jac, t = clock(cramer_permanents_via_jacobi, C)
            times["jacobi"].append(t)
            try:
                tr, t = clock(cramer_permanents_transport, C)
                times["transport"].append(t)
            except TransportInfeasible:
                tr = None
            ok = tr is None or tr == jac
            if n <= cfg.brute_limit:
                br, t = clock(cramer_permanents_brute, C)
                times["brute"].append(t)
                ok = ok and br == jac
            agree += ok

        def ms(key):
            return f"{1000 * statistics.median(times[key]):.3f}" if times[key] else "-"

        print(f"{n:>3} {ms('brute'):>10} {ms('jacobi'):>10} {ms('transport'):>13} {agree:>3}/{cfg.cases}")


if __name__ == "__main__":
    main()

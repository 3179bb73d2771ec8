"""Which structural properties hold in each semiring, with witnesses for
the failures."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from configs import SurveyConfig, from_cli  # noqa: E402
from tropcram.axioms import check_axioms, declared_traits_hold  # noqa: E402
from tropcram.extension import semiring_by_name  # noqa: E402


def fmt(S, x):
    try:
        return S.fmt(x)
    except (TypeError, ValueError, AttributeError, KeyError, IndexError):
        if isinstance(x, (tuple, list)):
            return "(" + ", ".join(fmt(S, y) for y in x) + ")"
        return str(x)


def main(argv=None):
    cfg = from_cli(SurveyConfig, argv, __doc__)
    for name in cfg.semirings:
        S = semiring_by_name(name)
        rep = check_axioms(S, seed=cfg.seed, budget=cfg.budget)
        mode = "exhaustive" if rep.complete else "sampled"
        fails = rep.failures()
        declared = declared_traits_hold(S, rep)
        print(f"{name:<12} {mode:<10} weak={rep.weak_elimination!s:<5} strong={rep.strong_elimination!s:<5}"
              f" declared-ok={all(declared.values())!s:<5} failing: {', '.join(fails) or '-'}")
        for f in fails:
            w = rep.results[f].witness
            if w is not None:
                print(f"{'':14}{f}: {', '.join(fmt(S, x) for x in w)}")


if __name__ == "__main__":
    main()

"""How much must be kept as a function of how much may leak.

Sweeping the privacy level traces the trade-off between the correlations a
splitting keeps and the correlations it is allowed to hand to the
environment.  For a maximally entangled pair conservation forces the exact
line: one bit less kept for every bit allowed out, until the floor of one
bit is reached at the halfway point.
"""

from __future__ import annotations

import argparse

from pqdec import OptimizerOptions, isotropic, max_entangled, rates_sweep, to_density


def run(name, rho, grid, opts) -> None:
    res = rates_sweep(rho, grid, opts)
    print(name)
    print(f"{'eps':>6} {'kept (envelope)':>16} {'leaked':>9} {'lower bound':>12}")
    for row in res.rows:
        print(
            f"{row.eps:>6.2f} {row.xi_envelope:>16.6f} "
            f"{row.i_re:>9.6f} {row.prop1_lower:>12.6f}"
        )
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    grid = [0.0, 0.25, 0.5, 0.75, 1.0]
    opts = OptimizerOptions(restarts=6, iterations=800, seed=args.seed)
    run("maximally entangled pair (the exact line is 2 - eps)",
        to_density(max_entangled(2)), grid, opts)
    run("isotropic state, f = 0.9", isotropic(2, 0.9), grid, opts)


if __name__ == "__main__":
    main()

"""Absorptivity ratio study: how the CdS/sulfate absorption ratio moves the front.

    python3 demos/apt_ratios.py --n 300
"""
import argparse

from cadmia.analysis import front_log_fit, normalized_cumulative_series, separation_front
from cadmia.config import bundled_scenario
from cadmia.kernel import Grid, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=300)
    args = ap.parse_args()
    g = Grid.uniform(args.n)
    print("config     nu      b(psi=0.9)  D/D0 at t=1")
    for name in ("apt_nu1", "apt_nu2", "bct", "apt_nu8", "apt_nu16"):
        m = bundled_scenario(name).model
        f = simulate(m, g)
        fit = front_log_fit(separation_front(f, 0.9))
        print(f"{name:9s}  {m.nu:.4f}  {fit.b:.4e}  {normalized_cumulative_series(f)[-1]:.5f}")


if __name__ == "__main__":
    main()

"""One-at-a-time sensitivity of the overall concentration on the base case.

    python3 demos/sensitivity_oat.py --n 100
"""
import argparse

from cadmia.analysis import oat_study
from cadmia.config import bundled_scenario
from cadmia.kernel import Grid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100)
    args = ap.parse_args()
    recs = oat_study(bundled_scenario("bct").model, Grid.uniform(args.n),
                     percents=(-10, -5, -1, 1, 5, 10))
    print("param  delta    C          dC/dtheta")
    for r in recs[1:]:
        print(f"{r.parameter:5s}  {r.delta:+.2f}  {r.value_C:.6f}  {r.derivative_estimate:+.4e}")


if __name__ == "__main__":
    main()

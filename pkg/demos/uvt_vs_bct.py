"""UV-extended irradiance versus the base case.

Prints the relative increase of the deterioration over time when the
spectral band is widened into the UV.

    python3 demos/uvt_vs_bct.py --n 1000
"""
import argparse

from cadmia.analysis import deterioration_increase
from cadmia.config import bundled_scenario
from cadmia.kernel import Grid, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000,
                    help="grid points per axis; coarse grids under-resolve the UV front")
    args = ap.parse_args()
    g = Grid.uniform(args.n)
    base = simulate(bundled_scenario("bct").model, g)
    uvt = simulate(bundled_scenario("uvt").model, g)
    inc = deterioration_increase(base, uvt)
    for n in (args.n // 4, args.n // 2, 3 * args.n // 4, args.n):
        print(f"t={n / args.n:.2f}  increase={100 * inc[n]:.2f}%")


if __name__ == "__main__":
    main()

"""Base case: separation fronts and their logarithmic fits.

Simulates the bundled base configuration, prints the front fits for a few
thresholds and the normalized cumulative concentration at a few times.

    python3 demos/bct_front.py --n 400
"""
import argparse

from cadmia.analysis import front_log_fit, normalized_cumulative_series, separation_front
from cadmia.config import bundled_scenario
from cadmia.kernel import Grid, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=400, help="grid points per axis")
    args = ap.parse_args()

    sc = bundled_scenario("bct")
    nu, mu, xi = sc.model.parameters
    print(f"nu={nu:.4g} mu={mu:.5g} xi={xi:.5g}")
    field = simulate(sc.model, Grid.uniform(args.n))

    print("psi    a (slope)    b (S at t=1)  mean fit error")
    for psi in (0.9, 0.8, 0.7):
        fit = front_log_fit(separation_front(field, psi))
        print(f"{psi:.1f}  {fit.a:11.4e}  {fit.b:11.4e}  {fit.mean_fit_error:.2e}")

    d = normalized_cumulative_series(field)
    for n in (0, args.n // 4, args.n // 2, args.n):
        print(f"t={n / args.n:.2f}  D/D0={d[n]:.6f}")


if __name__ == "__main__":
    main()

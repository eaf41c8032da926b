"""Convergence of the P and PC schemes on the toy problem.

The reference is the PC solution at ``--ref-level``; the default keeps the run
short (level 11 reproduces the published table but takes several minutes).

    python3 demos/convergence_toy.py --ref-level 9
"""
import argparse

from cadmia.analysis import convergence_study
from cadmia.scenario import toy_model


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ref-level", type=int, default=9)
    args = ap.parse_args()
    levels = range(3, min(8, args.ref_level))
    print("step        E_P        E_C        rho_P  rho_C")
    for r in convergence_study(toy_model(), levels, args.ref_level):
        op = f"{r.order_P:.3f}" if r.order_P else "  -  "
        oc = f"{r.order_PC:.3f}" if r.order_PC else "  -  "
        print(f"{r.step:.6f}  {r.error_P:.3e}  {r.error_PC:.3e}  {op}  {oc}")


if __name__ == "__main__":
    main()

"""Print the closed forms, decimal values and the existence checks for F = 12."""

import argparse

from pdw_tiling.solver import NoSolution, solve_geometry
from pdw_tiling.tiling import build_tiling, existence_report, verify_tiling


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--tol", type=float, default=1e-9)
    args = p.parse_args()

    sol = solve_geometry(12)
    for name, cf in sol.closed_forms().items():
        print(f"{name:>6}  {str(cf):<22} {cf.value:.12f}")
    print(f"cos v2v4 = {sol.cos_diagonal}, rejected branch <v1, v2> = {sol.rejected_inner_product}")
    for F in (18, 24, 30):
        try:
            solve_geometry(F)
        except NoSolution as exc:
            print(f"F={F}: {exc}")

    t = build_tiling()
    ex = existence_report(t, args.tol)
    for k, v in ex.values.items():
        print(f"{k:>24} = {v:.10f}")
    print(ex)
    print(verify_tiling(t, args.tol))


if __name__ == "__main__":
    main()

"""Enumerate charts over pdw_F, pruned and brute force, and compare."""

import argparse
import time

from pdw_tiling.charts import chart_a, equal_up_to_symmetry, vertex_type
from pdw_tiling.solver import (SearchConfig, SearchStats, brute_force_charts, enumerate_charts,
                               unique_up_to_symmetry)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--faces", type=int, nargs="+", default=[12, 18, 24])
    p.add_argument("--tile-type", default="both")
    p.add_argument("--brute-force", action="store_true",
                   help="also run the unpruned oracle (8^F leaves, so F <= 12 only)")
    args = p.parse_args()
    tile_type = args.tile_type if args.tile_type == "both" else int(args.tile_type)

    for F in args.faces:
        stats = SearchStats()
        t0 = time.perf_counter()
        charts = enumerate_charts(F, tile_type, config=SearchConfig(face_budget=max(F, 24)),
                                  stats=stats)
        reps = unique_up_to_symmetry(charts)
        print(f"F={F}: {len(charts)} charts, {len(reps)} classes, {stats.nodes} nodes, "
              f"{stats.pruned} pruned, rejected {dict(stats.rejected)}, "
              f"{time.perf_counter() - t0:.2f} s")
        for c in reps:
            same = equal_up_to_symmetry(c, chart_a(F))
            print(f"  type {c.tile_type}, alternating chart: {same}")
            c = chart_a(F) if same else c
            for v in ("N", "v0", "v1", "v2"):
                print(f"    {v:>3}: {vertex_type(c, v)}")
        if args.brute_force and F <= 12:
            t0 = time.perf_counter()
            oracle = unique_up_to_symmetry(brute_force_charts(F, tile_type))
            print(f"  brute force: {len(oracle)} classes, {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()

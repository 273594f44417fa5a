"""SVG views of the tiling along its three 2-fold axes, plus an OFF mesh."""

import argparse
from pathlib import Path

from pdw_tiling.export import to_off, to_svg
from pdw_tiling.symmetry import described_axes
from pdw_tiling.tiling import build_tiling


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("-o", "--outdir", default="figures")
    p.add_argument("--arc-segments", type=int, default=32)
    args = p.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    t = build_tiling()
    for name, axis in described_axes(t).items():
        slug = name.replace("(", "_").replace(")", "").replace(",", "_")
        path = out / f"view_{slug}.svg"
        path.write_text(to_svg(t, axis, args.arc_segments))
        print(f"wrote {path}")
    path = out / "tiling.off"
    path.write_text(to_off(t, args.arc_segments))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

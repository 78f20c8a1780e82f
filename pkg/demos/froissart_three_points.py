"""Spurious zero-pole pairs of diagonal Padé approximants with three branch points.

The function has branch points at -1.2+0.8i, 0.9+1.5i and 0.5-1.2i.  Its
Riemann surface has genus one, so at most one Froissart doublet is expected.
The poles gather on three arcs meeting at one junction point.

    python demos/froissart_three_points.py [n]
"""

import sys
from pathlib import Path

from hpzeros import analysis
from hpzeros.export import render_svg
from hpzeros.presets import PRESETS, compute

OUT = Path(__file__).with_name("out")


def main(n=60):
    preset = PRESETS["fig1_1"]
    comp = compute(preset.kind, preset.specs, n)
    zeros, poles = comp.zero_sets["zeros"], comp.zero_sets["poles"]
    rep = analysis.detect_froissart(zeros, poles, preset.branch_points, genus_bound=preset.genus)
    print(f"[{n}/{n}] at {comp.ctx.bits} bits: {rep.count} doublet(s), genus bound {preset.genus}")
    for z, p, gap in rep.doublets:
        print(f"  zero {complex(z):.5f}  pole {complex(p):.5f}  gap {float(gap):.1e}")
    junction = analysis.estimate_chebotarev(poles, preset.branch_points)
    print(f"junction of the pole arcs near {junction:.4f}")
    OUT.mkdir(exist_ok=True)
    path = OUT / f"three_points_{n}.svg"
    path.write_text(render_svg([zeros, poles], preset.window(), caption=f"[{n}/{n}] zeros (blue) and poles (red)"))
    print(f"picture: {path}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 60)

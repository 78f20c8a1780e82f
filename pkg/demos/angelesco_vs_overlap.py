"""Type I Hermite-Padé zeros for the log pair, disjoint versus overlapping supports.

With a < 0 the supports [-1, a] and [-a, 1] are disjoint: q1 and q2 have all
their zeros on their own segments and q0 lives on the imaginary axis.  With
a > 0 the supports overlap and the zeros of q2 leave the real line.

    python demos/angelesco_vs_overlap.py [n]
"""

import sys
from fractions import Fraction
from pathlib import Path

from hpzeros import FunctionSpec, analysis
from hpzeros.export import render_svg
from hpzeros.presets import compute

OUT = Path(__file__).with_name("out")


def main(n=40):
    OUT.mkdir(exist_ok=True)
    for a in (Fraction(-1, 10), Fraction(2, 5)):
        specs = (FunctionSpec.case(1, a, 1), FunctionSpec.case(1, a, 2))
        zs = compute("hp", specs, n).zero_sets
        print(f"a = {a}, n = {n}")
        if a < 0:
            rep = analysis.angelesco_localization([zs["q0"], zs["q1"], zs["q2"]], a)
            print("  zeros on their segments and q0 on the imaginary axis:", rep.ok)
        refl = analysis.check_reflection_pairing(zs["q1"], zs["q2"], 1e-30)
        print(f"  q1 mirrors -q2: {refl.ok} (defect {float(refl.defect):.1e})")
        print(f"  fraction of q2 zeros off the real line: {analysis.lens_fraction(zs['q2']):.2f}")
        svg = render_svg(list(zs.values()), window=(-1.5, 1.5, -1.5, 1.5), caption=f"log pair, a={float(a):g}, n={n}")
        path = OUT / f"log_pair_a{float(a):g}.svg"
        path.write_text(svg)
        print(f"  picture: {path}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 40)

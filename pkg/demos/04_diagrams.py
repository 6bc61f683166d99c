"""Braid diagrams: encoding, the orbifold Reidemeister move and rendering.

Run with ``python demos/04_diagrams.py [out.svg]``."""

import sys

from orbibraid.diagrams import (apply_orbifold_reidemeister, diagram_to_word, find_sites, permutation,
                                render_ascii, render_svg, word_to_diagram)
from orbibraid.homs import cycle_notation
from orbibraid.words import GroupParams

p = GroupParams(3, 1, 1, (2,))
d = word_to_diagram("h1^-1 u1^2 h1 t1 h2", p)
print(render_ascii(d))
print(f"events: {len(d)}, permutation {cycle_notation(permutation(d))}")

for site in find_sites(d):
    smaller = apply_orbifold_reidemeister(d, site)
    print(f"removing {p.m(site.cone)} leaps at event {site.index}: {diagram_to_word(smaller)}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(render_svg(d))
    print(f"wrote {sys.argv[1]}")

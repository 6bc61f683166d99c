"""Words, free reduction and syllable normal forms.

Run with ``python demos/01_words_and_normal_forms.py``."""

from orbibraid.freeprod import FreeProductLayout, nf_of_word
from orbibraid.words import GroupParams, free_reduce, parse

p = GroupParams(n=3, L=1, N=1, orders=(3,))
print(f"group parameters: {p}")

w = parse("h1 t1 t1^-1 h2 (u1)^3")
print(f"parsed word:        {w}")
print(f"freely reduced:     {free_reduce(w)}")
print("free reduction leaves u1^3 alone; the order relation is not a free cancellation.")

# The point group is a free product F_{n-1+L} * Z_m.  Its normal form collapses u^m.
layout = FreeProductLayout.for_params(p)
for text in ["z1 z1 z1", "x1 z1 z1^-1 x2", "x1 z1^2 z1^2 x1^-1", "(x1 z1)^3 (x1^-1 z1^-1)^3"]:
    e = nf_of_word(text, layout)
    shown = str(e) or "1"
    print(f"  {text:28} -> {shown:40} ({len(e.syllables)} syllables)")

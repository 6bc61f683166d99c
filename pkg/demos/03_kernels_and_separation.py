"""Kernel generating families, their mechanized triviality, and separation.

Run with ``python demos/03_kernels_and_separation.py``."""

from orbibraid.kernels import (discharge_iota_obligations, kernel_K, separation_check,
                               special_case_K2)
from orbibraid.words import GroupParams

p = GroupParams(2, 0, 1, (2,))
fam = kernel_K(p, depth=3)
print(f"bounded kernel family at {p}, depth 3: {len(fam)} elements")
for level, w in zip(fam.levels, fam.elements):
    print(f"  level {level}: {w}")

for m in (2, 3):
    report = discharge_iota_obligations(GroupParams(2, 0, 1, (m,)))
    worst = max(r.states for _, r in report.results)
    print(f"\nm={m}: {len(report.results)} obligations, all proven: {report.proven}, max states {worst}")
    for ob, _ in report.results:
        if ob.kind in ("E", "F", "seed"):
            print(f"  {ob.label}")

for m in (2, 3):
    v = separation_check(GroupParams(2, 1, 1, (m,)))
    print(f"\nseparation at m={m}: {v.verdict}; {v.kernel_size} kernel elements vanish under q")
    print(f"  witness {v.witness}")
    print(f"  image   {v.witness_image}  ({v.witness_syllables} syllables)")

k2 = special_case_K2(3)
print(f"\ntwo-strand case, m=3: passed={k2.passed}")
print(f"  relators {list(k2.fixed_relators)}")

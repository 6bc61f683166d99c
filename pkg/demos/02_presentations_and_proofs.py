"""Presentations, proof search and refutation by invariants.

Run with ``python demos/02_presentations_and_proofs.py``."""

from orbibraid import artin
from orbibraid.homs import standard_oracles
from orbibraid.presentations import present_orb_braid, present_pure_orb_braid
from orbibraid.prover import ProofTrace, disprove_equal, prove_equal
from orbibraid.words import GroupParams

p = GroupParams(n=3, L=1, N=1, orders=(3,))
pres = present_orb_braid(p)
print(f"orbifold braid group at {p}: {len(pres.alphabet)} generators, {len(pres.relators)} relators")
for r, fam in zip(pres.relators, pres.families):
    print(f"  {fam:12} {r}")

tr = prove_equal(pres, "h1 h2 h1", "h2 h1 h2")
print(f"\nh1 h2 h1 = h2 h1 h2: proven in {len(tr.steps)} steps after {tr.states} states")
for step in tr.steps:
    print(f"  {step}")

tr = prove_equal(pres, "h1^-1 u1 h1 h1^-1 u1 h1 h1^-1 u1 h1", "")
print(f"\nc(2,1)^3 = 1: {'proven' if isinstance(tr, ProofTrace) else 'unknown'}")

cert = disprove_equal("h1", "", standard_oracles(pres, p))
print(f"\nh1 != 1, refuted by {cert.oracle}: image {cert.image_lhs} vs {cert.image_rhs}")

# Without finite-order relations the Artin action decides the word problem.
for w in ["u1^3", "h1 h1^-1", "h1 u1 h1 u1 h1^-1 u1^-1 h1^-1 u1^-1"]:
    print(f"  Artin action: {w:40} {'trivial' if artin.is_trivial_ZLN(w, p) else 'nontrivial'}")

pure = present_pure_orb_braid(GroupParams(2, 0, 1, (2,)))
print(f"\npure group on two strands: {[str(r) for r in pure.relators]}")

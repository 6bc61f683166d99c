"""The acceptance grid: ten end-to-end checks shared by the test suite and ``orbibraid suite``."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import artin
from .diagrams import (ReidemeisterSite, apply_orbifold_reidemeister, diagram_to_word, find_sites,
                       permutation, word_to_diagram)
from .freeprod import CYCLIC, FREE, FreeProductElement, nf_multiply
from .homs import (NAMED_HOMS, Verdict, functoriality_checks, hom_ev, hom_ev_star, hom_perm, hom_q,
                   von_dyck_check)
from .kernels import (discharge_iota_obligations, discharge_pc_obligations, kernel_K,
                      separation_check, special_case_K2)
from .presentations import present_map_id_orb, present_orb_braid, to_lower
from .prover import DEFAULT_BUDGET, ProofTrace, prove_equal
from .words import GroupParams, Letter, Word

GRID: tuple[GroupParams, ...] = (
    GroupParams(2, 0, 1, (2,)),
    GroupParams(2, 1, 1, (2,)),
    GroupParams(2, 1, 1, (3,)),
    GroupParams(3, 1, 1, (3,)),
    GroupParams(3, 1, 2, (2, 3)),
    GroupParams(3, 2, 1, (3,)),
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:>2}: {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "details": self.details}


def _timed(number: int, title: str, fn: Callable[[list[str]], bool], limit: float | None = None) -> CriterionResult:
    details: list[str] = []
    start = time.perf_counter()
    ok = fn(details)
    secs = time.perf_counter() - start
    if limit is not None and secs >= limit:
        details.append(f"time {secs:.1f}s exceeds the {limit:.0f}s limit")
        ok = False
    return CriterionResult(number, title, ok, secs, details)


# ---------------------------------------------------------------------------
# 1. Normal forms vs. a Cayley-graph walk
# ---------------------------------------------------------------------------

def _cayley_agreement(free_rank: int, orders: Sequence[int], radius: int) -> tuple[int, int, list[str]]:
    """Walk every word of length <= radius and compare two canonical forms.

    The reference side keeps words in a string-rewriting normal form
    (x x^-1 -> 1, z^-1 -> z^{m-1}, z^m -> 1) and explores the Cayley graph
    breadth first; the tested side multiplies syllable normal forms.  Every
    edge out of every vertex at distance < radius is checked, so every word
    of length <= radius is covered."""
    orders = tuple(orders)
    period = {100 + nu: m for nu, m in enumerate(orders, start=1)}
    letters: list[tuple[int, FreeProductElement]] = []
    for i in range(1, free_rank + 1):
        letters.append((i, FreeProductElement(((FREE, i, 1),), free_rank, orders)))
        letters.append((-i, FreeProductElement(((FREE, i, -1),), free_rank, orders)))
    for nu, m in enumerate(orders, start=1):
        letters.append((100 + nu, FreeProductElement(((CYCLIC, nu, 1),), free_rank, orders)))
        letters.append((-(100 + nu), FreeProductElement(((CYCLIC, nu, m - 1),), free_rank, orders)))

    def append(w: tuple, a: int) -> tuple:
        if a >= 100:
            run = 0
            while run < len(w) and w[-1 - run] == a:
                run += 1
            return w[:-run] if run == period[a] - 1 else w + (a,)
        if a <= -100:
            for _ in range(period[-a] - 1):
                w = append(w, -a)
            return w
        return w[:-1] if w and w[-1] == -a else w + (a,)

    spellings: dict = {}

    def spell_syllable(s) -> tuple:
        kind, i, x = s
        if kind == FREE:
            return (i if x > 0 else -i,) * abs(x)
        return (100 + i,) * x

    def spelled(e: FreeProductElement) -> tuple:
        out: tuple = ()
        for s in e.syllables:
            part = spellings.get(s)
            if part is None:
                part = spellings[s] = spell_syllable(s)
            out += part
        return out

    mismatches: list[str] = []
    prev: dict = {}
    cur = {(): FreeProductElement((), free_rank, orders)}
    vertices, edges = 1, 0
    for d in range(radius):
        nxt: dict = {}
        last = d == radius - 1
        for w, e in cur.items():
            for a, ea in letters:
                w2, e2 = append(w, a), nf_multiply(e, ea)
                edges += 1
                if not last:
                    known = prev.get(w2) or cur.get(w2) or nxt.get(w2)
                    if known is not None:
                        if known.syllables != e2.syllables:
                            mismatches.append(f"{w}+{a}")
                        continue
                if spelled(e2) != w2:
                    mismatches.append(f"{w}+{a}")
                elif not last:
                    nxt[w2] = e2
        prev, cur = cur, nxt
        vertices += len(nxt)
    return vertices, edges, mismatches


def criterion_1(details: list[str], radius: int = 8) -> bool:
    ok = True
    for rank in range(0, 3):
        for n_cyc in range(0, 3):
            # orders up to permutation: relabelling cyclic factors gives the same check
            for orders in itertools.combinations_with_replacement((2, 3), n_cyc):
                if rank == 0 and n_cyc == 0:
                    continue
                v, e, bad = _cayley_agreement(rank, orders, radius)
                details.append(f"rank={rank} orders={orders}: {e} edges, {len(bad)} mismatches")
                ok = ok and not bad
    return ok


# ---------------------------------------------------------------------------
# 2 - 10
# ---------------------------------------------------------------------------

def criterion_2(details: list[str], grid: Sequence[GroupParams] = GRID) -> bool:
    ok = True
    for p in grid:
        bad = [str(r) for r in present_map_id_orb(p).relators
               if not artin.is_trivial_ZLN(to_lower(r), p)]
        nontrivial = all(not artin.is_trivial_ZLN(Word.gen("u", nu, power=k), p)
                         for nu in range(1, p.N + 1) for k in range(1, p.m(nu) + 1))
        details.append(f"{p}: {len(bad)} relators act nontrivially; u^k nontrivial for k<=m: {nontrivial}")
        ok = ok and not bad and nontrivial
    return ok


def criterion_3(details: list[str], grid: Sequence[GroupParams] = GRID) -> bool:
    ok = True
    for p in grid:
        ev, evs = hom_ev(p), hom_ev_star(p)
        for nu in range(1, p.N + 1):
            w = Word.gen("U", nu, power=p.m(nu))
            verdict, tr = ev.oracle.decide_trivial(ev.apply(w), DEFAULT_BUDGET)
            star_nontrivial = not evs.oracle.is_identity(evs.apply(w))
            states = tr.states if isinstance(tr, ProofTrace) else "-"
            details.append(f"{p} ν={nu}: ev(U^m) {verdict.value} (states {states}); ev*(U^m) nontrivial: {star_nontrivial}")
            ok = ok and verdict is Verdict.PROVEN and star_nontrivial
    return ok


def criterion_4(details: list[str], grid: Sequence[GroupParams] = GRID) -> bool:
    ok = True
    names = ["ev", "ev_star", "f", "iota", "pi", "s", "omega", "perm"]
    for p in grid:
        statuses = {}
        for name in names:
            statuses[name] = von_dyck_check(NAMED_HOMS[name](p)).status
        for theta in range(1, p.L + 1):
            for o in range(1, p.N + 1):
                statuses[f"q[{theta},{o}]"] = von_dyck_check(hom_q(p, theta, o)).status
        func = functoriality_checks(p)
        func_ok = all(v is Verdict.PROVEN for pairs in func.values() for _, v in pairs)
        bad = [k for k, v in statuses.items() if v is not Verdict.PROVEN]
        details.append(f"{p}: {len(statuses)} maps checked, not proven: {bad or 'none'}; "
                       f"π∘ι / π∘s checks: {'ok' if func_ok else 'FAILED'}"
                       + ("" if p.L else " (q needs L >= 1)"))
        ok = ok and not bad and func_ok
    return ok


def criterion_5(details: list[str], grid: Sequence[GroupParams] = GRID, depth: int = 3) -> bool:
    ok = True
    for p in grid:
        fam = kernel_K(p, depth)
        details.append(f"{p}: {len(fam)} elements at depth {depth}, all non-identity: {fam.certified()}")
        ok = ok and fam.certified() and len(fam) > 0
        one = GroupParams(1, p.L, p.N, p.orders)
        empty = len(kernel_K(one, depth)) == 0
        details.append(f"{one}: empty: {empty}")
        ok = ok and empty
    return ok


def criterion_6(details: list[str]) -> bool:
    ok = True
    for m in (2, 3):
        p = GroupParams(2, 0, 1, (m,))
        rep = discharge_iota_obligations(p, DEFAULT_BUDGET, z_max=3)
        kinds = {}
        for ob, tr in rep.results:
            kinds.setdefault(ob.kind, []).append(isinstance(tr, ProofTrace))
        commute = kinds.get("F", [False])
        seeds = [isinstance(tr, ProofTrace) for ob, tr in rep.results if ob.kind == "seed"]
        itc = [v for k, vs in kinds.items() if k.startswith("it_conj") for v in vs]
        max_states = max((tr.states for _, tr in rep.results if isinstance(tr, ProofTrace)), default=0)
        details.append(f"m={m}: (ac)^m=(ca)^m {all(commute)}, seed {all(seeds) and bool(seeds)}, "
                       f"{sum(itc)}/{len(itc)} conjugation identities (z<=3), max states {max_states}")
        ok = ok and rep.proven and all(commute) and bool(seeds) and all(seeds) and bool(itc)
    return ok


def criterion_7(details: list[str]) -> bool:
    ok = True
    for p in (GroupParams(2, 1, 1, (2,)), GroupParams(2, 1, 1, (3,))):
        v = separation_check(p, 1, 1, 3)
        details.append(f"{p}: {v.verdict}; {v.kernel_size} kernel elements vanish: {v.all_vanish}; "
                       f"witness image {v.witness_image} ({v.witness_syllables} syllables)")
        ok = ok and v.separated
    return ok


def criterion_8(details: list[str]) -> bool:
    ok = True
    for m in (2, 3, 4):
        r = special_case_K2(m)
        details.append(f"m={m}: tags {list(r.tags)}, conjugation {r.pc_is_conjugation}, "
                       f"presentation {list(r.fixed_relators)}")
        ok = ok and r.passed
    return ok


def criterion_9(details: list[str]) -> bool:
    ok = True
    for p in (GroupParams(2, 0, 1, (2,)), GroupParams(3, 1, 1, (3,))):
        rep, _ = discharge_pc_obligations(p, DEFAULT_BUDGET)
        states = max((tr.states for _, tr in rep.results if isinstance(tr, ProofTrace)), default=0)
        details.append(f"{p}: {len(rep.results)} obligations, proven: {rep.proven}, max states {states}")
        ok = ok and rep.proven
    return ok


def random_braid_word(p: GroupParams, rng: random.Random, max_len: int = 12) -> Word:
    gens = [("h", j) for j in range(1, p.n)] + [("t", l) for l in range(1, p.L + 1)] \
        + [("u", nu) for nu in range(1, p.N + 1)]
    length = rng.randint(0, max_len)
    return Word(tuple(Letter(f, (i,), rng.choice((1, -1))) for f, i in (rng.choice(gens) for _ in range(length))))


def criterion_10(details: list[str], grid: Sequence[GroupParams] = GRID, words: int = 1000,
                 moves: int = 50, seed: int = 20240601) -> bool:
    ok = True
    rng = random.Random(seed)
    for p in grid:
        perm = hom_perm(p)
        bad_rt = bad_perm = 0
        for _ in range(words):
            w = random_braid_word(p, rng)
            d = word_to_diagram(w, p)
            if diagram_to_word(d) != w:
                bad_rt += 1
            if permutation(d) != perm.oracle.image(perm.apply(w)):
                bad_perm += 1
        details.append(f"{p}: {words} words, round-trip failures {bad_rt}, permutation mismatches {bad_perm}")
        ok = ok and bad_rt == 0 and bad_perm == 0
    pres_cache = {p: present_orb_braid(p) for p in grid}
    failures = 0
    for k in range(moves):
        p = grid[k % len(grid)]
        w = random_braid_word(p, rng, 8)
        d = word_to_diagram(w, p)
        # insert at a generator-block boundary so the result still spells a word
        cut = rng.randint(0, len(w))
        at = len(word_to_diagram(Word(w.letters[:cut]), p))
        nu = rng.randint(1, p.N)
        site = ReidemeisterSite(at, nu, True, rng.choice((1, -1)))
        d2 = apply_orbifold_reidemeister(d, site)
        pairs = [(d, d2)]
        sites = find_sites(d2)
        if sites:
            pairs.append((d2, apply_orbifold_reidemeister(d2, rng.choice(sites))))
        for before, after in pairs:
            tr = prove_equal(pres_cache[p], diagram_to_word(before), diagram_to_word(after))
            if not isinstance(tr, ProofTrace):
                failures += 1
    details.append(f"{moves} seeded Reidemeister instances (insert and delete), unproven: {failures}")
    return ok and failures == 0


CRITERIA: list[tuple[int, str, Callable[[list[str]], bool], float | None]] = [
    (1, "normal forms agree with a Cayley-graph walk", criterion_1, 60.0),
    (2, "Artin action validates every relation", criterion_2, 30.0),
    (3, "ev(U^m) trivial, ev*(U^m) nontrivial", criterion_3, None),
    (4, "von Dyck suites for all named maps", criterion_4, None),
    (5, "kernel elements are non-identity", criterion_5, None),
    (6, "ι-triviality of kernel seeds", criterion_6, None),
    (7, "separation K_n ⊊ K_{n+L}", criterion_7, 10.0),
    (8, "two-strand special case", criterion_8, None),
    (9, "partial-conjugation squares commute", criterion_9, None),
    (10, "diagram round trips and Reidemeister moves", criterion_10, None),
]


def run_criterion(number: int, grid: Sequence[GroupParams] | None = None,
                  seed: int | None = None) -> CriterionResult:
    num, title, fn, limit = CRITERIA[number - 1]
    kwargs: dict = {}
    if grid is not None and num in (2, 3, 4, 5, 10):
        kwargs["grid"] = tuple(grid)
    if seed is not None and num == 10:
        kwargs["seed"] = seed
    return _timed(num, title, lambda d: fn(d, **kwargs), limit)


def run_all(grid: Sequence[GroupParams] | None = None, only: Sequence[int] | None = None,
            seed: int | None = None) -> list[CriterionResult]:
    return [run_criterion(n, grid, seed) for n, *_ in CRITERIA if only is None or n in only]

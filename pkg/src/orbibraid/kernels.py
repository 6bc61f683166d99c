"""Partial conjugations, kernel families K_n / K_{n+L}, and their certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .freeprod import FreeProductLayout, nf_of_word
from .presentations import (Presentation, present_fixed_strand, present_pure_orb_braid)
from .prover import (DEFAULT_BUDGET, Lemma, ProofTrace, SearchBudget, Unknown, as_lemma,
                     prove_by_rewriting, prove_equal, rules_from_conjugation)
from .words import (AlphabetError, GroupParams, Letter, Word, as_word, free_reduce,
                    point_alphabet, substitute)


def _x(j: int) -> Word:
    return Word.gen("x", j)


def _y(lam: int) -> Word:
    return Word.gen("y", lam)


def _z(nu: int) -> Word:
    return Word.gen("z", nu)


@dataclass(frozen=True, order=True)
class PartialConjugationTag:
    kind: str  # "a" | "b" | "c"
    k: int
    other: int  # i for a(k,i), ι for b(k,ι), ν for c(k,ν)

    def __str__(self) -> str:
        return f"{self.kind}({self.k},{self.other})"

    def validate(self, p: GroupParams) -> None:
        ok = 1 <= self.k < p.n
        if self.kind == "a":
            ok = ok and 1 <= self.other < self.k
        elif self.kind == "b":
            ok = ok and 1 <= self.other <= p.L
        elif self.kind == "c":
            ok = ok and 1 <= self.other <= p.N
        else:
            ok = False
        if not ok:
            raise ValueError(f"tag {self} is out of range for {p}")


def all_tags(p: GroupParams) -> list[PartialConjugationTag]:
    tags = []
    for k in range(1, p.n):
        tags += [PartialConjugationTag("a", k, i) for i in range(1, k)]
        tags += [PartialConjugationTag("b", k, lam) for lam in range(1, p.L + 1)]
        tags += [PartialConjugationTag("c", k, nu) for nu in range(1, p.N + 1)]
    return tags


def tag_word(tag: PartialConjugationTag) -> Word:
    """The pure generator that the tag conjugates by."""
    return Word.gen(tag.kind, tag.k, tag.other)


def _pc_letter_image(tag: PartialConjugationTag, fam: str, idx: int, inverse: bool) -> Word:
    k = tag.k
    xk = _x(k)
    if tag.kind == "a":
        s = _x(tag.other)
    elif tag.kind == "b":
        s = _y(tag.other)
    else:
        s = _z(tag.other)
    si, xki = s.inverse(), xk.inverse()
    if not inverse:
        outer = Word.of(si, xki, s, xk)        # s^-1 x_k^-1 s x_k
        own = Word.of(si, xki, s, xk, s)       # image of the tag's own s
        on_xk = Word.of(si, xk, s)
    else:
        outer = Word.of(xk, s, xki, si)        # x_k s x_k^-1 s^-1
        own = Word.of(xk, s, xki)
        on_xk = Word.of(xk, s, xk, si, xki)

    def wrap(g: Word) -> Word:
        return Word.of(outer, g, outer.inverse())

    g = Word.gen(fam, idx)
    if fam == "x":
        if idx > k:
            return g
        if idx == k:
            return on_xk
        if tag.kind == "a":
            i = tag.other
            if idx < i:
                return g
            if idx == i:
                return own
        return wrap(g)
    if fam == "y":
        if tag.kind == "a":
            return g
        if tag.kind == "b":
            if idx < tag.other:
                return wrap(g)
            if idx == tag.other:
                return own
            return g
        return wrap(g)
    if fam == "z":
        if tag.kind != "c":
            return g
        if idx < tag.other:
            return wrap(g)
        if idx == tag.other:
            return own
        return g
    raise AlphabetError(f"letter family {fam!r} is outside the x/y/z alphabet")


def _pc(tag: PartialConjugationTag, w: Word | str, p: GroupParams | None, inverse: bool) -> Word:
    w = as_word(w)
    if p is not None:
        tag.validate(p)
        point_alphabet(p).validate(w)

    def image(gen):
        fam, idx = gen
        return _pc_letter_image(tag, fam, idx[0], inverse)

    return substitute(w, image)


def pc_apply(tag: PartialConjugationTag, w: Word | str, p: GroupParams | None = None) -> Word:
    """Letterwise partial conjugation pc_tag, freely reduced."""
    return _pc(tag, w, p, inverse=False)


def pc_apply_inverse(tag: PartialConjugationTag, w: Word | str, p: GroupParams | None = None) -> Word:
    """The inverse automorphism pc_tag^-1 (conjugation by the inverse generator)."""
    return _pc(tag, w, p, inverse=True)


def generic_row(tag: PartialConjugationTag, letter: Letter) -> bool:
    """Whether the image of ``letter`` comes from a row stated only for another tag kind.

    Rows for y under a(k,i) and c(k,ν), and for z under a(k,i) and b(k,ι), are
    written with an index (θ or μ) ordered against a parameter the tag does
    not have; the row pattern is applied to every index of that family."""
    fam = letter.family
    return (fam == "y" and tag.kind in "ac") or (fam == "z" and tag.kind in "ab")


# ---------------------------------------------------------------------------
# Kernel families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelFamily:
    params: GroupParams
    seeds: tuple[Word, ...]
    depth: int
    elements: tuple[Word, ...]
    degenerate: tuple[bool, ...] = field(default=())
    levels: tuple[int, ...] = field(default=())  # closure depth at which each element appeared

    def __len__(self) -> int:
        return len(self.elements)

    def certified(self) -> bool:
        return not any(self.degenerate)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "depth": self.depth,
            "seeds": [str(s) for s in self.seeds],
            "elements": [str(e) for e in self.elements],
            "levels": list(self.levels),
            "degenerate": [i for i, d in enumerate(self.degenerate) if d],
        }


def pc_closure(seeds: Sequence[Word | str], p: GroupParams, depth: int,
               tags: Sequence[PartialConjugationTag] | None = None) -> KernelFamily:
    """All words reachable from ``seeds`` by at most ``depth`` partial conjugations.

    Words are compared after free reduction; the order is level by level, each
    level sorted by (length, text)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    tags = list(all_tags(p) if tags is None else tags)
    layout = FreeProductLayout.for_params(p)
    seen: dict[Word, int] = {}
    frontier = []
    for s in seeds:
        w = free_reduce(as_word(s))
        if w not in seen:
            seen[w] = 0
            frontier.append(w)
    for level in range(1, depth + 1):
        nxt = set()
        for w in frontier:
            for tag in tags:
                v = pc_apply(tag, w)
                if v not in seen:
                    nxt.add(v)
        frontier = sorted(nxt, key=lambda v: (len(v), str(v)))
        for v in frontier:
            seen[v] = level
        if not frontier:
            break
    elements = tuple(seen)
    degenerate = tuple(nf_of_word(w, layout).is_identity() for w in elements)
    seed_words = tuple(free_reduce(as_word(s)) for s in seeds)
    return KernelFamily(p, seed_words, depth, elements, degenerate, tuple(seen.values()))


def seed(first: Word, z: Word, m: int) -> Word:
    """(g z)^m (g^-1 z^-1)^m."""
    return free_reduce((first * z) ** m * (first.inverse() * z.inverse()) ** m)


def kernel_seeds(p: GroupParams, fixed: bool = False) -> list[Word]:
    out = [seed(_x(k), _z(nu), p.m(nu)) for k in range(1, p.n) for nu in range(1, p.N + 1)]
    if fixed:
        out += [seed(_y(lam), _z(nu), p.m(nu)) for lam in range(1, p.L + 1) for nu in range(1, p.N + 1)]
    return out


def kernel_K(p: GroupParams, depth: int = 3) -> KernelFamily:
    """Bounded generating set of K_n: PC-closure of the (x_k z_ν) seeds."""
    return pc_closure(kernel_seeds(p), p, depth)


def kernel_K_fixed(p: GroupParams, depth: int = 3) -> KernelFamily:
    """Bounded generating set of K_{n+L}: adds the (y_λ z_ν) seeds."""
    return pc_closure(kernel_seeds(p, fixed=True), p, depth)


# ---------------------------------------------------------------------------
# Prover obligations in the pure presentation
# ---------------------------------------------------------------------------

def iota_word(w: Word | str, p: GroupParams) -> Word:
    """x_j -> a(n,j), y_λ -> b(n,λ), z_ν -> c(n,ν)."""
    n = p.n
    point_alphabet(p).validate(as_word(w))

    def image(gen):
        fam, (i,) = gen
        return Word.gen({"x": "a", "y": "b", "z": "c"}[fam], n, i)

    return substitute(as_word(w), image)


@dataclass(frozen=True)
class Obligation:
    lhs: Word
    rhs: Word
    label: str
    kind: str = ""
    z: int | None = None

    def to_json(self) -> dict:
        return {"label": self.label, "lhs": str(self.lhs), "rhs": str(self.rhs)}


def it_conj_obligations(p: GroupParams, z_max: int | None = None) -> list[Obligation]:
    """c_kν^z g c_kν^-z = (its closed form) for the five generator families g."""
    n = p.n
    z_max = max(p.orders, default=0) if z_max is None else z_max
    out = []
    for k in range(1, n):
        for nu in range(1, p.N + 1):
            c = Word.gen("c", k, nu)
            cn = Word.gen("c", n, nu)
            ank = Word.gen("a", n, k)
            left = cn.inverse() * ank.inverse()      # c_n^-1 a_nk^-1
            right = ank * cn                          # a_nk c_n
            targets = [("1", ank, False), ("2", cn, False)]
            targets += [("3", Word.gen("a", n, j), True) for j in range(1, k)]
            targets += [("4", Word.gen("b", n, lam), True) for lam in range(1, p.L + 1)]
            targets += [("5", Word.gen("c", n, mu), True) for mu in range(1, nu)]
            for z in range(0, z_max + 1):
                for fam, g, deep in targets:
                    lhs = c ** z * g * c ** (-z)
                    if deep:
                        inner = (cn * ank) ** z
                        rhs = left ** z * inner * g * inner.inverse() * right ** z
                    else:
                        rhs = left ** z * g * right ** z
                    out.append(Obligation(free_reduce(lhs), free_reduce(rhs),
                                          f"it_conj({fam}) c({k},{nu}) on {g} z={z}", f"it_conj{fam}", z))
    return out


def iota_triviality_obligations(p: GroupParams) -> list[Obligation]:
    """ι(seed) = 1 for each seed, followed by the conjugation identities they rest on."""
    if p.n < 2:
        raise ValueError("needs n >= 2")
    out = [Obligation(iota_word(s, p), Word(), f"iota(seed {s})", "seed") for s in kernel_seeds(p)]
    return out + it_conj_obligations(p)


def pc_diagram_obligations(p: GroupParams) -> list[Obligation]:
    """tag · ι(g) · tag^-1 = ι(pc_tag(g)) for every tag and every x/y/z letter g."""
    out = []
    for tag in all_tags(p):
        t = tag_word(tag)
        for g in point_alphabet(p).letters():
            out.append(Obligation(free_reduce(t * iota_word(g, p) * t.inverse()),
                                  iota_word(pc_apply(tag, g, p), p), f"pc[{tag}]({g})", "pc"))
    return out


@dataclass
class DischargeReport:
    results: list[tuple[Obligation, ProofTrace | Unknown]]

    @property
    def proven(self) -> bool:
        return all(isinstance(r, ProofTrace) for _, r in self.results)

    def unknown(self) -> list[Obligation]:
        return [o for o, r in self.results if not isinstance(r, ProofTrace)]


def discharge_pc_obligations(p: GroupParams, budget: SearchBudget = DEFAULT_BUDGET,
                             pres: Presentation | None = None,
                             obligations: Sequence[Obligation] | None = None,
                             lemmas: Sequence[Lemma] = ()) -> tuple[DischargeReport, list[Lemma]]:
    """Prove conjugation obligations shortest-first, reusing each proof as a lemma."""
    pres = pres or present_pure_orb_braid(p)
    obs = list(pc_diagram_obligations(p) if obligations is None else obligations)
    order = sorted(range(len(obs)), key=lambda i: (len(obs[i].rhs), len(obs[i].lhs), i))
    proven = list(lemmas)
    results: dict[int, ProofTrace | Unknown] = {}
    for i in order:
        ob = obs[i]
        tr = prove_equal(pres, ob.lhs, ob.rhs, budget, proven)
        results[i] = tr
        if isinstance(tr, ProofTrace) and ob.lhs != ob.rhs:
            proven.append(as_lemma(tr, ob.label))
    return DischargeReport([(obs[i], results[i]) for i in range(len(obs))]), proven


def discharge_iota_obligations(p: GroupParams, budget: SearchBudget = DEFAULT_BUDGET,
                               z_max: int | None = None) -> DischargeReport:
    """Mechanized chain for ι(seed) = 1.

    1. c_kν g c_kν^-1 = ι(pc_c(g)) by search (the z = 1 conjugation identities);
    2. each conjugation identity for higher z by pushing c_kν through the word;
    3. a_nk = g^m a_nk g^-m with g = c_n^-1 a_nk^-1, from c_kν^m = 1 and step 2;
    4. (a_nk c_n)^m = (c_n a_nk)^m and finally ι(seed) = 1."""
    if p.n < 2:
        raise ValueError("needs n >= 2")
    pres = present_pure_orb_braid(p)
    n = p.n
    c_tags = [t for t in all_tags(p) if t.kind == "c"]
    base_obs = [o for o in pc_diagram_obligations(p)
                if o.label.startswith("pc[c(")]
    base_report, base_lemmas = discharge_pc_obligations(p, budget, pres, base_obs)
    results = list(base_report.results)
    if not base_report.proven:
        return DischargeReport(results)
    by_tag: dict[PartialConjugationTag, list[Lemma]] = {}
    for lem in base_lemmas:
        for t in c_tags:
            if lem.name.startswith(f"pc[{t}]"):
                by_tag.setdefault(t, []).append(lem)
    it_lemmas: dict[tuple[int, int, int], Lemma] = {}
    for ob in it_conj_obligations(p, z_max):
        k, nu = _tag_of_label(ob.label)
        tag = PartialConjugationTag("c", k, nu)
        lems = by_tag.get(tag, [])
        rules = [r for lem in lems for r in rules_from_conjugation(lem, tag_word(tag))]
        if ob.lhs == ob.rhs:
            tr: ProofTrace | Unknown = ProofTrace(ob.lhs, ob.rhs, (), 0, 0)
        else:
            tr = prove_by_rewriting(pres, ob.lhs, ob.rhs, rules, lems, budget)
        results.append((ob, tr))
        if isinstance(tr, ProofTrace) and ob.kind == "it_conj1" and ob.z == p.m(nu):
            it_lemmas[(k, nu, 0)] = as_lemma(tr, ob.label)
    for k in range(1, n):
        for nu in range(1, p.N + 1):
            m = p.m(nu)
            a, cn = Word.gen("a", n, k), Word.gen("c", n, nu)
            g = cn.inverse() * a.inverse()
            lem = it_lemmas.get((k, nu, 0))
            if lem is None:
                results.append((Obligation(a, a, f"E({k},{nu})", "E"), Unknown("missing conjugation lemma")))
                continue
            ob_e = Obligation(a, free_reduce(g ** m * a * g ** (-m)), f"E({k},{nu})", "E")
            tr_e = prove_equal(pres, ob_e.lhs, ob_e.rhs, budget, [lem])
            results.append((ob_e, tr_e))
            if not isinstance(tr_e, ProofTrace):
                continue
            ob_f = Obligation((a * cn) ** m, (cn * a) ** m, f"commute({k},{nu})", "F")
            tr_f = prove_equal(pres, ob_f.lhs, ob_f.rhs, budget, [as_lemma(tr_e, ob_e.label)])
            results.append((ob_f, tr_f))
            if not isinstance(tr_f, ProofTrace):
                continue
            s = iota_word(seed(_x(k), _z(nu), m), p)
            ob_s = Obligation(s, Word(), f"iota(seed x{k} z{nu})", "seed")
            results.append((ob_s, prove_equal(pres, s, Word(), budget, [as_lemma(tr_f, ob_f.label)])))
    return DischargeReport(results)


def _tag_of_label(label: str) -> tuple[int, int]:
    inner = label.split(" c(", 1)[1].split(")", 1)[0]
    k, nu = inner.split(",")
    return int(k), int(nu)


# ---------------------------------------------------------------------------
# Separation and the two-strand case
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparationVerdict:
    separated: bool
    params: GroupParams
    theta: int
    o: int
    depth: int
    kernel_size: int
    all_vanish: bool
    non_vanishing: tuple[str, ...]
    witness: Word
    witness_image: str
    witness_syllables: int

    @property
    def verdict(self) -> str:
        return "Separated" if self.separated else "NotSeparated"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "params": self.params.to_json(),
            "theta": self.theta,
            "o": self.o,
            "depth": self.depth,
            "kernel_size": self.kernel_size,
            "kernel_vanishes_under_q": self.all_vanish,
            "non_vanishing": list(self.non_vanishing),
            "witness": str(self.witness),
            "witness_image": self.witness_image,
            "witness_syllables": self.witness_syllables,
        }


def separation_check(p: GroupParams, theta: int = 1, o: int = 1, depth: int = 3) -> SeparationVerdict:
    """K_n ⊊ K_{n+L}: q_{θ,o} kills the bounded K_n but not the witness seed."""
    from .homs import hom_q

    if p.L < 1:
        raise ValueError("separation needs L >= 1")
    q = hom_q(p, theta, o)
    fam = kernel_K(p, depth)
    bad = tuple(str(w) for w in fam.elements if not q.oracle.is_identity(q.apply(w)))
    witness = seed(_y(theta), _z(o), p.m(o))
    img = q.oracle.evaluate(q.apply(witness))
    separated = not bad and not img.is_identity()
    return SeparationVerdict(separated, p, theta, o, depth, len(fam), not bad, bad, witness,
                             str(img), len(img.syllables))


@dataclass(frozen=True)
class K2Report:
    m: int
    single_tag: bool
    pc_is_conjugation: bool
    presentation_matches: bool
    tags: tuple[str, ...]
    fixed_relators: tuple[str, ...]
    expected_relators: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.single_tag and self.pc_is_conjugation and self.presentation_matches

    def to_json(self) -> dict:
        return {"m": self.m, "passed": self.passed, "single_tag": self.single_tag,
                "pc_is_conjugation": self.pc_is_conjugation,
                "presentation_matches": self.presentation_matches,
                "tags": list(self.tags), "fixed_relators": list(self.fixed_relators),
                "expected_relators": list(self.expected_relators)}


def special_case_K2(m: int) -> K2Report:
    """Two strands, no punctures, one cone point of order m."""
    if m < 2:
        raise ValueError("m must be >= 2")
    p = GroupParams(2, 0, 1, (m,))
    tags = all_tags(p)
    single = tags == [PartialConjugationTag("c", 1, 1)]
    x1, z = _x(1), _z(1)
    conj = z.inverse() * x1.inverse()
    agrees = single and all(
        pc_apply(tags[0], g, p) == free_reduce(conj * g * conj.inverse()) for g in (x1, z))
    # The fixed-strand group on one marked strand and one puncture, read with t1 -> x1, u1 -> z.
    fixed = present_fixed_strand(GroupParams(1, 1, 1, (m,)))
    rename = {("t", (1,)): x1, ("u", (1,)): z}
    got = tuple(str(substitute(r, rename)) for r in fixed.relators)
    expected = (str(z ** m), str(free_reduce((x1 * z) ** m * (z * x1) ** (-m))))
    return K2Report(m, single, agrees, sorted(got) == sorted(expected),
                    tuple(str(t) for t in tags), got, expected)

"""Named homomorphisms, von Dyck checks and invariant oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

from . import artin
from .freeprod import FreeProductElement, FreeProductLayout, nf_of_word
from .presentations import (Presentation, expand_pure, present_fixed_strand, present_free_product,
                            present_map_id_orb, present_orb_braid, present_orb_braid_ln,
                            present_pure_orb_braid)
from .prover import (DEFAULT_BUDGET, DisproofCertificate, Lemma, ProofTrace, SearchBudget,
                     Unknown, disprove_equal, prove_equal)
from .words import Generator, GroupParams, Letter, Word, as_word, free_reduce, substitute


class Verdict(str, Enum):
    PROVEN = "Proven"
    UNKNOWN = "Unknown"
    REFUTED = "Refuted"


# ---------------------------------------------------------------------------
# Target oracles
# ---------------------------------------------------------------------------

class Oracle:
    """Decides (or semi-decides) equality in a target group."""

    name = "oracle"
    exact = True

    def image(self, w: Word):
        raise NotImplementedError

    def equal_images(self, a, b) -> bool:
        return a == b

    def is_identity(self, w: Word) -> bool:
        return self.equal_images(self.image(w), self.image(Word()))

    def decide_trivial(self, w: Word, budget: SearchBudget = DEFAULT_BUDGET):
        """(verdict, evidence) for w = 1 in the target."""
        if self.is_identity(w):
            return Verdict.PROVEN, None
        return Verdict.REFUTED, DisproofCertificate(self.name, str(self.image(w)), str(self.image(Word())))


class PermutationOracle(Oracle):
    """h_j (or H_j) -> transposition (j, j+1); everything else -> identity.

    A word s1 s2 ... maps to τ_{s1} ∘ τ_{s2} ∘ ...; tuples list the image of 1..n."""

    name = "permutation"

    def __init__(self, n: int):
        self.n = n

    def image(self, w: Word) -> tuple[int, ...]:
        perm = list(range(1, self.n + 1))
        # compose right to left: apply the last letter first
        for l in reversed(as_word(w).letters):
            if l.family in ("h", "H", "σ"):
                j = l.indices[0]
                # τ ∘ perm
                perm = [j + 1 if v == j else j if v == j + 1 else v for v in perm]
        return tuple(perm)


def permutation_of(w: Word | str, n: int) -> tuple[int, ...]:
    return PermutationOracle(n).image(as_word(w))


def cycle_notation(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i))
            i = perm[i - 1]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


@dataclass(frozen=True)
class AbelianImage:
    h: int
    t: tuple[int, ...]
    u: tuple[int, ...]

    def __str__(self) -> str:
        return f"h:{self.h} t:{list(self.t)} u:{list(self.u)}"


class AbelianOracle(Oracle):
    """Exponent vector in Z ⊕ Z^L ⊕ Z_{m_1} ⊕ ... ⊕ Z_{m_N}; a/b/c letters are expanded."""

    name = "abelianization"

    def __init__(self, p: GroupParams):
        self.p = p

    def image(self, w: Word) -> AbelianImage:
        w = as_word(w)
        if any(f in w.families() for f in "abc"):
            w = expand_pure(w)
        h = 0
        t = [0] * self.p.L
        u = [0] * self.p.N
        for l in w.letters:
            fam = l.family.lower()
            if fam == "h":
                h += l.sign
            elif fam == "t":
                t[l.indices[0] - 1] += l.sign
            elif fam == "u":
                u[l.indices[0] - 1] += l.sign
            else:
                raise ValueError(f"letter {l} has no abelian image")
        return AbelianImage(h, tuple(t), tuple(x % m for x, m in zip(u, self.p.orders)))


class ArtinOracle(Oracle):
    """Faithful action of Z_n(Σ_Γ(L, N)) on a free group."""

    name = "artin"

    def __init__(self, p: GroupParams):
        self.p = p

    def image(self, w: Word) -> artin.FreeAutomorphism:
        w = as_word(w)
        if any(f in w.families() for f in "abc"):
            w = expand_pure(w)
        return artin.action_of(w, self.p)

    def equal_images(self, a, b) -> bool:
        return a.images == b.images


class FreeProductOracle(Oracle):
    name = "freeprod"

    def __init__(self, layout: FreeProductLayout):
        self.layout = layout

    def image(self, w: Word) -> FreeProductElement:
        return nf_of_word(as_word(w), self.layout)

    def evaluate(self, w: Word) -> FreeProductElement:
        return self.image(w)


class ProverOracle(Oracle):
    """Bounded search in a presentation; optional invariant oracles refute."""

    name = "prover"
    exact = False

    def __init__(self, pres: Presentation, refuters: Sequence[Oracle] = (), lemmas: Sequence[Lemma] = ()):
        self.pres = pres
        self.refuters = list(refuters)
        self.lemmas = list(lemmas)

    def image(self, w: Word) -> Word:
        return free_reduce(as_word(w))

    def is_identity(self, w: Word) -> bool:
        return self.decide_trivial(w)[0] is Verdict.PROVEN

    def decide_trivial(self, w: Word, budget: SearchBudget = DEFAULT_BUDGET):
        w = free_reduce(as_word(w))
        if not w:
            return Verdict.PROVEN, ProofTrace(w, w, (), 0, 0)
        tr = prove_equal(self.pres, w, Word(), budget, self.lemmas)
        if isinstance(tr, ProofTrace):
            return Verdict.PROVEN, tr
        cert = disprove_equal(w, Word(), self.refuters)
        if isinstance(cert, DisproofCertificate):
            return Verdict.REFUTED, cert
        return Verdict.UNKNOWN, tr


# ---------------------------------------------------------------------------
# Homomorphisms and the von Dyck check
# ---------------------------------------------------------------------------

@dataclass
class Homomorphism:
    source: Presentation
    oracle: Oracle
    assignment: Mapping[Generator, Word]
    label: str

    def __post_init__(self):
        missing = [g for g in self.source.alphabet.generators if g not in self.assignment]
        if missing:
            raise ValueError(f"{self.label}: no image for {missing}")

    def apply(self, w: Word | str) -> Word:
        return substitute(as_word(w), self.assignment)

    __call__ = apply

    @property
    def target(self) -> Presentation | None:
        return getattr(self.oracle, "pres", None)


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """outer ∘ inner, with the outer target oracle."""
    assignment = {g: outer.apply(w) for g, w in inner.assignment.items()}
    return Homomorphism(inner.source, outer.oracle, assignment, f"{outer.label}∘{inner.label}")


@dataclass
class RelatorVerdict:
    relator: Word
    image: Word
    verdict: Verdict
    evidence: object = None

    def to_json(self) -> dict:
        out = {"relator": str(self.relator), "image": str(self.image), "verdict": self.verdict.value}
        if isinstance(self.evidence, ProofTrace):
            out["moves"] = self.evidence.moves
        elif isinstance(self.evidence, DisproofCertificate):
            out["certificate"] = self.evidence.to_json()
        elif isinstance(self.evidence, Unknown):
            out["reason"] = self.evidence.reason
        return out


@dataclass
class VonDyckReport:
    label: str
    verdicts: list[RelatorVerdict] = field(default_factory=list)

    @property
    def status(self) -> Verdict:
        if any(v.verdict is Verdict.REFUTED for v in self.verdicts):
            return Verdict.REFUTED
        if any(v.verdict is Verdict.UNKNOWN for v in self.verdicts):
            return Verdict.UNKNOWN
        return Verdict.PROVEN

    @property
    def all_proven(self) -> bool:
        return self.status is Verdict.PROVEN

    def failing(self) -> list[RelatorVerdict]:
        return [v for v in self.verdicts if v.verdict is not Verdict.PROVEN]

    def to_json(self) -> dict:
        return {"hom": self.label, "status": self.status.value,
                "relators": [v.to_json() for v in self.verdicts]}


def von_dyck_check(h: Homomorphism, budget: SearchBudget = DEFAULT_BUDGET) -> VonDyckReport:
    """Whether every source relator maps to the identity of the target."""
    report = VonDyckReport(h.label)
    for r in h.source.relators:
        img = h.apply(r)
        verdict, evidence = h.oracle.decide_trivial(img, budget)
        report.verdicts.append(RelatorVerdict(r, img, verdict, evidence))
    return report


@dataclass
class RegisteredOracle:
    """An invariant oracle usable by ``disprove_equal`` on source words."""

    hom: Homomorphism
    name: str

    def image(self, w: Word):
        return self.hom.oracle.image(self.hom.apply(w))

    def equal_images(self, a, b) -> bool:
        return self.hom.oracle.equal_images(a, b)


class OracleRegistrationError(ValueError):
    pass


def register_oracle(h: Homomorphism, budget: SearchBudget = DEFAULT_BUDGET) -> RegisteredOracle:
    """Accept an exact-target homomorphism only after its von Dyck check passes."""
    if not h.oracle.exact:
        raise OracleRegistrationError(f"{h.label}: target equality is not decidable")
    report = von_dyck_check(h, budget)
    if not report.all_proven:
        bad = ", ".join(str(v.relator) for v in report.failing()[:3])
        raise OracleRegistrationError(f"{h.label} does not preserve relators: {bad}")
    return RegisteredOracle(h, f"{h.oracle.name}[{h.label}]")


def standard_oracles(source: Presentation, p: GroupParams) -> list[RegisteredOracle]:
    """The exact invariant oracles that are homomorphisms out of ``source``."""
    out = []
    identity = {g: Word((Letter(g[0].lower(), g[1]),)) for g in source.alphabet.generators}
    candidates = [
        Homomorphism(source, PermutationOracle(p.n), identity, "perm"),
        Homomorphism(source, AbelianOracle(p), identity, "abel"),
        Homomorphism(source, ArtinOracle(p), identity, "artin"),
    ]
    for h in candidates:
        try:
            out.append(register_oracle(h))
        except (OracleRegistrationError, ValueError):
            continue
    return out


# ---------------------------------------------------------------------------
# The named maps
# ---------------------------------------------------------------------------

def _letter(fam: str, *idx: int) -> Word:
    return Word((Letter(fam, tuple(idx)),))


def _rename(source: Presentation, fn: Callable[[Generator], Word]) -> dict[Generator, Word]:
    return {g: fn(g) for g in source.alphabet.generators}


def _lower(g: Generator) -> Word:
    return _letter(g[0].lower(), *g[1])


def _braid_refuters(p: GroupParams) -> list[Oracle]:
    return [PermutationOracle(p.n), AbelianOracle(p)]


def hom_ev(p: GroupParams, budget_lemmas: Sequence[Lemma] = ()) -> Homomorphism:
    src = present_map_id_orb(p)
    oracle = ProverOracle(present_orb_braid(p), _braid_refuters(p), budget_lemmas)
    return Homomorphism(src, oracle, _rename(src, _lower), "ev")


def hom_ev_star(p: GroupParams) -> Homomorphism:
    src = present_map_id_orb(p)
    return Homomorphism(src, ArtinOracle(p), _rename(src, _lower), "ev*")


def hom_f(p: GroupParams) -> Homomorphism:
    src = present_orb_braid_ln(p)
    oracle = ProverOracle(present_orb_braid(p), _braid_refuters(p))
    return Homomorphism(src, oracle, _rename(src, _lower), "f")


def _pure_below(p: GroupParams) -> GroupParams:
    return GroupParams(p.n - 1, p.L, p.N, p.orders)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def hom_iota(p: GroupParams) -> Homomorphism:
    _need(p.n >= 2, "ι needs n >= 2")
    src = present_free_product(p)
    names = {"x": "a", "y": "b", "z": "c"}
    oracle = ProverOracle(present_pure_orb_braid(p), [PermutationOracle(p.n), AbelianOracle(p)])
    return Homomorphism(src, oracle, _rename(src, lambda g: _letter(names[g[0]], p.n, g[1][0])), "ι")


def hom_pi(p: GroupParams) -> Homomorphism:
    _need(p.n >= 2, "π needs n >= 2")
    src = present_pure_orb_braid(p)
    q = _pure_below(p)
    oracle = ProverOracle(present_pure_orb_braid(q), [AbelianOracle(q)])

    def image(g: Generator) -> Word:
        return Word() if g[1][0] == p.n else _letter(*((g[0],) + g[1]))

    return Homomorphism(src, oracle, _rename(src, image), "π")


def hom_s(p: GroupParams) -> Homomorphism:
    _need(p.n >= 2, "s needs n >= 2")
    src = present_pure_orb_braid(_pure_below(p))
    oracle = ProverOracle(present_pure_orb_braid(p), [AbelianOracle(p)])
    return Homomorphism(src, oracle, _rename(src, lambda g: _letter(g[0], *g[1])), "s")


def hom_omega(p: GroupParams) -> Homomorphism:
    """Z_n(Σ_Γ(L)) -> Z^{fix(L)}: identity on letters (the identity map when L = 0)."""
    src = present_orb_braid(p)
    oracle = ProverOracle(present_fixed_strand(p), _braid_refuters(p))
    return Homomorphism(src, oracle, _rename(src, lambda g: _letter(g[0], *g[1])), "ω")


def hom_q(p: GroupParams, theta: int = 1, o: int = 1) -> Homomorphism:
    """F_{n-1+L} * Γ -> Z * Z_{m_o}: y_θ -> y, z_o -> z, all other letters -> 1."""
    _need(1 <= theta <= p.L, f"θ = {theta} outside 1..L")
    _need(1 <= o <= p.N, f"o = {o} outside 1..N")
    src = present_free_product(p)
    layout = FreeProductLayout(0, 1, (p.m(o),))

    def image(g: Generator) -> Word:
        if g == ("y", (theta,)):
            return _letter("y", 1)
        if g == ("z", (o,)):
            return _letter("z", 1)
        return Word()

    return Homomorphism(src, FreeProductOracle(layout), _rename(src, image), f"q[{theta},{o}]")


def hom_perm(p: GroupParams) -> Homomorphism:
    src = present_orb_braid(p)
    return Homomorphism(src, PermutationOracle(p.n), _rename(src, lambda g: _letter(g[0], *g[1])), "perm")


def hom_abel(p: GroupParams) -> Homomorphism:
    src = present_orb_braid(p)
    return Homomorphism(src, AbelianOracle(p), _rename(src, lambda g: _letter(g[0], *g[1])), "abel")


NAMED_HOMS: dict[str, Callable[..., Homomorphism]] = {
    "ev": hom_ev,
    "ev_star": hom_ev_star,
    "f": hom_f,
    "iota": hom_iota,
    "pi": hom_pi,
    "s": hom_s,
    "omega": hom_omega,
    "q": hom_q,
    "perm": hom_perm,
    "abel": hom_abel,
}


def functoriality_checks(p: GroupParams, budget: SearchBudget = DEFAULT_BUDGET) -> dict[str, list[tuple[str, Verdict]]]:
    """π∘ι is trivial and π∘s is the identity, generator by generator."""
    pi, iota, s = hom_pi(p), hom_iota(p), hom_s(p)
    pi_iota = compose(pi, iota)
    pi_s = compose(pi, s)
    out: dict[str, list[tuple[str, Verdict]]] = {"pi_iota_trivial": [], "pi_s_identity": []}
    for g in iota.source.alphabet.letters():
        out["pi_iota_trivial"].append((str(g), pi.oracle.decide_trivial(pi_iota.apply(g), budget)[0]))
    for g in s.source.alphabet.letters():
        diff = free_reduce(pi_s.apply(g) * g.inverse())
        out["pi_s_identity"].append((str(g), pi.oracle.decide_trivial(diff, budget)[0]))
    return out

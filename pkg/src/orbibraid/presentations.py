"""Builders for the finite presentations of orbifold braid groups and friends.

Conventions: a commutator [x, y] is the relator x y x^-1 y^-1; a triple
equality X = Y = Z becomes the two relators X Y^-1 and Y Z^-1.  Index
ranges use strict inequalities and never add symmetric duplicates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .words import (Alphabet, GroupParams, Letter, Word, braid_alphabet, commutator,
                    free_reduce, parse, point_alphabet, pure_alphabet, substitute)


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    label: str
    params: GroupParams | None = None
    families: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for r in self.relators:
            if not r or not r.is_reduced():
                raise ValueError(f"relator {r} is empty or not reduced")
            self.alphabet.validate(r)

    def __len__(self) -> int:
        return len(self.relators)

    def family_of(self, i: int) -> str:
        return self.families[i] if self.families else ""

    def with_relators(self, extra: Iterable[tuple[str, Word]], label: str) -> "Presentation":
        fams = list(self.families) or [""] * len(self.relators)
        rels = list(self.relators)
        for fam, w in extra:
            rels.append(w)
            fams.append(fam)
        return Presentation(self.alphabet, tuple(rels), label, self.params, tuple(fams))

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "params": self.params.to_json() if self.params else None,
            "alphabet": [str(Word((Letter(f, i),))) for f, i in self.alphabet.generators],
            "relators": [str(r) for r in self.relators],
            "families": list(self.families),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        gens = []
        for text in data["alphabet"]:
            (l,) = parse(text).letters
            gens.append(l.generator)
        params = GroupParams.from_json(data["params"]) if data.get("params") else None
        rels = tuple(parse(r) for r in data["relators"])
        fams = tuple(data.get("families") or ())
        return cls(Alphabet(tuple(gens)), rels, data.get("label", ""), params, fams)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


class _Collector:
    def __init__(self):
        self.relators: list[Word] = []
        self.families: list[str] = []

    def add(self, family: str, w: Word) -> None:
        r = free_reduce(w)
        if not r:
            raise AssertionError(f"relator of family {family} reduces to the empty word")
        self.relators.append(r)
        self.families.append(family)

    def triple(self, family: str, x: Word, y: Word, z: Word) -> None:
        self.add(family, x * y.inverse())
        self.add(family, y * z.inverse())

    def build(self, alphabet: Alphabet, label: str, p: GroupParams | None) -> Presentation:
        return Presentation(alphabet, tuple(self.relators), label, p, tuple(self.families))


def _g(family: str, *indices: int) -> Word:
    return Word((Letter(family, tuple(indices), 1),))


def _check(p: GroupParams, min_n: int = 1) -> None:
    if not isinstance(p, GroupParams):
        raise ParamsError("expected GroupParams")
    if p.n < min_n:
        raise ParamsError(f"needs n >= {min_n}, got n = {p.n}")


# ---------------------------------------------------------------------------
# Braid-type presentations (generators h, t, u or H, T, U)
# ---------------------------------------------------------------------------

def _braid_relators(col: _Collector, p: GroupParams, fams: tuple[str, str, str], finite: bool) -> None:
    h, t, u = fams
    n, L, N = p.n, p.L, p.N
    if finite:
        for nu in range(1, N + 1):
            col.add("(1) finite order", _g(u, nu) ** p.m(nu))
    for i in range(1, n - 1):
        hi, hj = _g(h, i), _g(h, i + 1)
        col.add("(2) braid", Word.of(hi, hj, hi) * Word.of(hj, hi, hj).inverse())
    for j in range(1, n):
        for k in range(j + 2, n):
            col.add("(2) commutator", commutator(_g(h, j), _g(h, k)))
    for j in range(2, n):
        for lam in range(1, L + 1):
            col.add("(3) [t,h]", commutator(_g(t, lam), _g(h, j)))
        for nu in range(1, N + 1):
            col.add("(3) [u,h]", commutator(_g(u, nu), _g(h, j)))
    if n < 2:
        return
    h1 = _g(h, 1)
    for lam in range(1, L + 1):
        col.add("(4) [h1 t h1, t]", commutator(Word.of(h1, _g(t, lam), h1), _g(t, lam)))
    for nu in range(1, N + 1):
        col.add("(4) [h1 u h1, u]", commutator(Word.of(h1, _g(u, nu), h1), _g(u, nu)))

    def second(fam: str, idx: int) -> Word:
        return Word.of(h1.inverse(), _g(fam, idx), h1)

    for lam in range(1, L + 1):
        for theta in range(1, lam):
            col.add("(5) [t, b2]", commutator(_g(t, theta), second(t, lam)))
    for nu in range(1, N + 1):
        for mu in range(1, nu):
            col.add("(5) [u, c2]", commutator(_g(u, mu), second(u, nu)))
    for lam in range(1, L + 1):
        for nu in range(1, N + 1):
            col.add("(5) [t, c2]", commutator(_g(t, lam), second(u, nu)))


def present_orb_braid(p: GroupParams) -> Presentation:
    """Z_n(Σ_Γ(L)) on h_1..h_{n-1}, t_1..t_L, u_1..u_N."""
    _check(p)
    col = _Collector()
    _braid_relators(col, p, ("h", "t", "u"), finite=True)
    return col.build(braid_alphabet(p), "orb_braid", p)


def present_orb_braid_ln(p: GroupParams) -> Presentation:
    """Z_n(Σ_Γ(L, N)): the same presentation without the finite-order relators."""
    _check(p)
    col = _Collector()
    _braid_relators(col, p, ("h", "t", "u"), finite=False)
    return col.build(braid_alphabet(p), "orb_braid_LN", p)


def present_map_id_orb(p: GroupParams) -> Presentation:
    """Map^{id,orb}_n(Σ_Γ(L)) on H, T, U; no finite-order relators."""
    _check(p)
    col = _Collector()
    _braid_relators(col, p, ("H", "T", "U"), finite=False)
    return col.build(braid_alphabet(p, upper=True), "map_id_orb", p)


def present_fixed_strand(p: GroupParams) -> Presentation:
    """present_orb_braid plus (t_λ u_ν)^{m_ν} (u_ν t_λ)^{-m_ν} for all λ, ν."""
    base = present_orb_braid(p)
    extra = []
    for lam in range(1, p.L + 1):
        for nu in range(1, p.N + 1):
            m = p.m(nu)
            tu, ut = Word.of(_g("t", lam), _g("u", nu)), Word.of(_g("u", nu), _g("t", lam))
            extra.append(("fixed strand", free_reduce(tu ** m * ut ** (-m))))
    return base.with_relators(extra, "fixed_strand")


# ---------------------------------------------------------------------------
# Pure presentations (generators a, b, c or A, B, C)
# ---------------------------------------------------------------------------

def _pure_relators(col: _Collector, p: GroupParams, n: int, fams: tuple[str, str, str],
                   finite: bool) -> None:
    """Relation families of the pure group on strands 1..n."""
    A, B, C = fams
    L, N = p.L, p.N

    def a(j: int, i: int) -> Word:
        return _g(A, j, i)

    def b(k: int, lam: int) -> Word:
        return _g(B, k, lam)

    def c(k: int, nu: int) -> Word:
        return _g(C, k, nu)

    def cj(x: Word, y: Word) -> Word:
        return Word.of(x, y, x.inverse())

    lams = range(1, L + 1)
    nus = range(1, N + 1)
    if finite:
        for k in range(1, n + 1):
            for nu in nus:
                col.add("(1) c^m", c(k, nu) ** p.m(nu))
    # (2) disjoint supports: j < k < l
    for l in range(1, n + 1):
        for k in range(1, l):
            for j in range(1, k):
                for i in range(1, j):
                    col.add("(2) [a_ji, a_lk]", commutator(a(j, i), a(l, k)))
                for lam in lams:
                    col.add("(2) [b_j, a_lk]", commutator(b(j, lam), a(l, k)))
                for nu in nus:
                    col.add("(2) [c_j, a_lk]", commutator(c(j, nu), a(l, k)))
    # (3) nested supports
    for l in range(1, n + 1):
        for k in range(1, l):
            for j in range(1, k):
                for i in range(1, j):
                    col.add("(3) [a_li, a_kj]", commutator(a(l, i), a(k, j)))
                for lam in lams:
                    col.add("(3) [b_l, a_kj]", commutator(b(l, lam), a(k, j)))
            for lam in lams:
                for theta in range(1, lam):
                    col.add("(3) [b_l, b_k]", commutator(b(l, lam), b(k, theta)))
            for j in range(1, k):
                for nu in nus:
                    col.add("(3) [c_l, a_kj]", commutator(c(l, nu), a(k, j)))
            for nu in nus:
                for lam in lams:
                    col.add("(3) [c_l, b_k]", commutator(c(l, nu), b(k, lam)))
            for nu in nus:
                for mu in range(1, nu):
                    col.add("(3) [c_l, c_k]", commutator(c(l, nu), c(k, mu)))
    # (4) commutators with conjugates
    for k in range(1, n + 1):
        for j in range(1, k):
            for i in range(1, j):
                for l in range(k + 1, n + 1):
                    col.add("(4) [a a a^-1, a]", commutator(cj(a(l, k), a(l, j)), a(k, i)))
                for lam in lams:
                    col.add("(4) [a a a^-1, b]", commutator(cj(a(k, j), a(k, i)), b(j, lam)))
            for lam in lams:
                for theta in range(1, lam):
                    col.add("(4) [a b a^-1, b]", commutator(cj(a(k, j), b(k, theta)), b(j, lam)))
            for i in range(1, j):
                for nu in nus:
                    col.add("(4) [a a a^-1, c]", commutator(cj(a(k, j), a(k, i)), c(j, nu)))
            for nu in nus:
                for mu in range(1, nu):
                    col.add("(4) [a c a^-1, c]", commutator(cj(a(k, j), c(k, mu)), c(j, nu)))
            for lam in lams:
                for nu in nus:
                    col.add("(4) [a b a^-1, c]", commutator(cj(a(k, j), b(k, lam)), c(j, nu)))
    # (5) triple products
    for k in range(1, n + 1):
        for j in range(1, k):
            for i in range(1, j):
                col.triple("(5) a a a", Word.of(a(j, i), a(k, j), a(k, i)),
                           Word.of(a(k, i), a(j, i), a(k, j)), Word.of(a(k, j), a(k, i), a(j, i)))
    for j in range(1, n + 1):
        for i in range(1, j):
            for lam in lams:
                col.triple("(5) a b b", Word.of(a(j, i), b(j, lam), b(i, lam)),
                           Word.of(b(i, lam), a(j, i), b(j, lam)), Word.of(b(j, lam), b(i, lam), a(j, i)))
            for nu in nus:
                col.triple("(5) a c c", Word.of(a(j, i), c(j, nu), c(i, nu)),
                           Word.of(c(i, nu), a(j, i), c(j, nu)), Word.of(c(j, nu), c(i, nu), a(j, i)))


def present_pure_orb_braid(p: GroupParams) -> Presentation:
    """PZ_n(Σ_Γ(L)) on a(j,i), b(k,λ), c(k,ν)."""
    _check(p)
    col = _Collector()
    _pure_relators(col, p, p.n, ("a", "b", "c"), finite=True)
    return col.build(pure_alphabet(p), "pure_orb_braid", p)


def present_pmap_id_orb(p: GroupParams) -> Presentation:
    """PMap^{id,orb}_n(Σ_Γ(L)) on A, B, C; no finite-order relators."""
    _check(p)
    col = _Collector()
    _pure_relators(col, p, p.n, ("A", "B", "C"), finite=False)
    return col.build(pure_alphabet(p, upper=True), "pmap_id_orb", p)


def present_free_product(p: GroupParams) -> Presentation:
    """F_{n-1+L} * Γ on x_1..x_{n-1}, y_1..y_L, z_1..z_N."""
    _check(p)
    col = _Collector()
    for nu in range(1, p.N + 1):
        col.add("z^m", _g("z", nu) ** p.m(nu))
    return col.build(point_alphabet(p), "free_product", p)


def present_semidirect_pure(p: GroupParams, pc_depth: int = 1) -> Presentation:
    """PZ_n as (F_{n-1+L} * Γ)/K ⋊ PZ_{n-1}, with the PC-closure truncated at ``pc_depth``."""
    from .kernels import all_tags, kernel_K, pc_apply, pc_apply_inverse, tag_word

    _check(p, 2)
    if pc_depth < 0:
        raise ParamsError("pc_depth must be >= 0")
    col = _Collector()
    for nu in range(1, p.N + 1):
        col.add("(R) z^m", _g("z", nu) ** p.m(nu))
    for w in kernel_K(p, pc_depth).elements:
        col.add("(R) PC", w)
    _pure_relators(col, p, p.n - 1, ("a", "b", "c"), finite=True)
    points = point_alphabet(p)
    for tag in all_tags(p):
        g = tag_word(tag)
        for x in points.letters():
            col.add("(C) conj", Word.of(g, x, g.inverse()) * pc_apply(tag, x, p).inverse())
            col.add("(C) inverse conj", Word.of(g.inverse(), x, g) * pc_apply_inverse(tag, x, p).inverse())
    alphabet = pure_alphabet(p, below=p.n - 1) + points
    return col.build(alphabet, f"semidirect_pure[pcDepth={pc_depth}]", p)


# ---------------------------------------------------------------------------
# Expansions of pure generators into h/t/u words
# ---------------------------------------------------------------------------

def expand_a(j: int, i: int) -> Word:
    """h_{j-1}^-1 ... h_{i+1}^-1 h_i^2 h_{i+1} ... h_{j-1}."""
    if not 1 <= i < j:
        raise IndexError(f"a({j},{i}) needs 1 <= i < j")
    tail = Word.of(*[_g("h", r) for r in range(i + 1, j)])
    return Word.of(tail.inverse(), _g("h", i) ** 2, tail)


def _strand_conj(k: int, core: Word) -> Word:
    tail = Word.of(*[_g("h", r) for r in range(1, k)])
    return Word.of(tail.inverse(), core, tail)


def expand_b(k: int, lam: int) -> Word:
    """h_{k-1}^-1 ... h_1^-1 t_λ h_1 ... h_{k-1}."""
    if k < 1 or lam < 1:
        raise IndexError(f"b({k},{lam}) has invalid indices")
    return _strand_conj(k, _g("t", lam))


def expand_c(k: int, nu: int) -> Word:
    """h_{k-1}^-1 ... h_1^-1 u_ν h_1 ... h_{k-1}."""
    if k < 1 or nu < 1:
        raise IndexError(f"c({k},{nu}) has invalid indices")
    return _strand_conj(k, _g("u", nu))


def _expansion(gen) -> Word:
    fam, idx = gen
    if fam == "a":
        return expand_a(*idx)
    if fam == "b":
        return expand_b(*idx)
    if fam == "c":
        return expand_c(*idx)
    if fam in ("h", "t", "u"):
        return Word((Letter(fam, idx),))
    raise KeyError(gen)


def expand_pure(w: Word) -> Word:
    """Replace a/b/c letters by their h/t/u expansions (h/t/u letters pass through)."""
    return substitute(w, _expansion)


def to_upper(w: Word) -> Word:
    return Word(tuple(Letter(l.family.upper(), l.indices, l.sign) for l in w.letters))


def to_lower(w: Word) -> Word:
    return Word(tuple(Letter(l.family.lower(), l.indices, l.sign) for l in w.letters))


FAMILY_BUILDERS = {
    "orb_braid": present_orb_braid,
    "orb_braid_LN": present_orb_braid_ln,
    "map_id_orb": present_map_id_orb,
    "pure_orb_braid": present_pure_orb_braid,
    "pmap_id_orb": present_pmap_id_orb,
    "free_product": present_free_product,
    "fixed_strand": present_fixed_strand,
    "semidirect_pure": present_semidirect_pure,
}


def build(family: str, p: GroupParams, pc_depth: int = 1) -> Presentation:
    if family not in FAMILY_BUILDERS:
        raise ParamsError(f"unknown presentation family {family!r}")
    if family == "semidirect_pure":
        return present_semidirect_pure(p, pc_depth)
    return FAMILY_BUILDERS[family](p)

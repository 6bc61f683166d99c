"""Artin action of braid groups on free groups, used as a faithful oracle.

The orbifold braid group Z_n(Σ_Γ(L, N)) (no finite-order relators) embeds
into the braid group on N + L + n strands, which acts faithfully on the free
group F(g_1..g_total).  Strand positions, left to right, are
cone_N .. cone_1, puncture_L .. puncture_1, marked_1 .. marked_n.

Composition: ``artin_action(v w) == artin_action(v) ∘ artin_action(w)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import GroupParams, Letter, Word, WordError, as_word

# Internal images are tuples of nonzero ints: +i is g_i, -i is g_i^-1.
IntWord = tuple[int, ...]

# Band generators for t/u are σ_{q-1}^-1 .. σ_{p+1}^-1 σ_p^{2·BAND_SIGN} σ_{p+1} .. σ_{q-1}:
# the conjugation direction and sign under which every relation of the
# Map^{id,orb} presentation acts trivially (checked by the test suite).
BAND_SIGN = 1
BAND_CONJUGATE_BELOW = True


class ArtinIndexError(WordError):
    pass


def _reduce(seq) -> IntWord:
    out: list[int] = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _inv(w: IntWord) -> IntWord:
    return tuple(-x for x in reversed(w))


def _subst(w: IntWord, images: tuple[IntWord, ...]) -> IntWord:
    out: list[int] = []
    for x in w:
        img = images[x - 1] if x > 0 else _inv(images[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def _sigma_images(i: int, sign: int, total: int) -> tuple[IntWord, ...]:
    images = [(k,) for k in range(1, total + 1)]
    if sign > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return tuple(images)


def _int_to_word(w: IntWord) -> Word:
    return Word(tuple(Letter("g", (abs(x),), 1 if x > 0 else -1) for x in w))


def _word_to_int(w: Word, total: int) -> IntWord:
    out = []
    for l in w.letters:
        if l.family != "g" or not 1 <= l.indices[0] <= total:
            raise ArtinIndexError(f"letter {l} is not a free generator g_1..g_{total}")
        out.append(l.indices[0] * l.sign)
    return _reduce(out)


@dataclass(frozen=True)
class FreeAutomorphism:
    """Images of g_1..g_rank together with the images of the inverse map."""

    rank: int
    images: tuple[IntWord, ...]
    inverse_images: tuple[IntWord, ...]

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        ident = tuple((k,) for k in range(1, rank + 1))
        return cls(rank, ident, ident)

    def is_identity(self) -> bool:
        return all(img == (k,) for k, img in enumerate(self.images, start=1))

    def __call__(self, w: Word) -> Word:
        return _int_to_word(_subst(_word_to_int(w, self.rank), self.images))

    def compose(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        """self ∘ other."""
        if self.rank != other.rank:
            raise ArtinIndexError("rank mismatch")
        return FreeAutomorphism(
            self.rank,
            tuple(_subst(img, self.images) for img in other.images),
            tuple(_subst(img, other.inverse_images) for img in self.inverse_images),
        )

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(self.rank, self.inverse_images, self.images)

    def image_words(self) -> list[Word]:
        return [_int_to_word(w) for w in self.images]

    def __str__(self) -> str:
        return ", ".join(f"g{k} -> {_int_to_word(w) or '1'}" for k, w in enumerate(self.images, 1))


def artin_action(braid: Word | str, total: int) -> FreeAutomorphism:
    """Automorphism of F_total induced by a word in σ_1..σ_{total-1}."""
    braid = as_word(braid)
    images = tuple((k,) for k in range(1, total + 1))
    inv_images = images
    for l in braid.letters:
        if l.family != "σ" or len(l.indices) != 1 or not 1 <= l.indices[0] < total:
            raise ArtinIndexError(f"letter {l} is not a braid generator on {total} strands")
        i = l.indices[0]
        step = _sigma_images(i, l.sign, total)
        step_inv = _sigma_images(i, -l.sign, total)
        # current ∘ φ_s, and its inverse φ_s^-1 ∘ current^-1
        images = tuple(_subst(img, images) for img in step)
        inv_images = tuple(_subst(img, step_inv) for img in inv_images)
    return FreeAutomorphism(total, images, inv_images)


# ---------------------------------------------------------------------------
# Layout and embedding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrandLayout:
    n: int
    L: int
    N: int

    @classmethod
    def for_params(cls, p: GroupParams) -> "StrandLayout":
        return cls(p.n, p.L, p.N)

    @property
    def total(self) -> int:
        return self.N + self.L + self.n

    def cone(self, nu: int) -> int:
        if not 1 <= nu <= self.N:
            raise ArtinIndexError(f"cone index {nu} out of range")
        return self.N + 1 - nu

    def puncture(self, lam: int) -> int:
        if not 1 <= lam <= self.L:
            raise ArtinIndexError(f"puncture index {lam} out of range")
        return self.N + self.L + 1 - lam

    def marked(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise ArtinIndexError(f"strand index {j} out of range")
        return self.N + self.L + j


def _sigma(i: int, sign: int = 1) -> Letter:
    return Letter("σ", (i,), sign)


def band_generator(p: int, q: int, sign: int = BAND_SIGN, below: bool = BAND_CONJUGATE_BELOW) -> Word:
    """Pure braid twisting strand q once around strand p (p < q)."""
    if not 1 <= p < q:
        raise ArtinIndexError("band generator needs 1 <= p < q")
    chain = [_sigma(r) for r in range(q - 1, p, -1)]
    twist = [_sigma(p, sign), _sigma(p, sign)]
    if below:
        left = [l.inverse() for l in chain]
        right = [l for l in reversed(chain)]
    else:
        left = chain
        right = [l.inverse() for l in reversed(chain)]
    return Word(tuple(left + twist + right))


def embed_generator(gen: Letter | Word | str, p: GroupParams) -> Word:
    """σ-word for one h/t/u (or H/T/U) letter, honoring its sign."""
    if isinstance(gen, str):
        gen = as_word(gen)
    if isinstance(gen, Word):
        if len(gen) != 1:
            raise ArtinIndexError("embed_generator takes a single letter")
        gen = gen.letters[0]
    lay = StrandLayout.for_params(p)
    fam = gen.family.lower()
    (idx,) = gen.indices if len(gen.indices) == 1 else (None,)
    if idx is None:
        raise ArtinIndexError(f"letter {gen} is not an h/t/u generator")
    if fam == "h":
        if not 1 <= idx < p.n:
            raise ArtinIndexError(f"h{idx} out of range for n={p.n}")
        w = Word((_sigma(lay.marked(idx)),))
    elif fam == "t":
        w = band_generator(lay.puncture(idx), lay.marked(1))
    elif fam == "u":
        w = band_generator(lay.cone(idx), lay.marked(1))
    else:
        raise ArtinIndexError(f"letter {gen} is not an h/t/u generator")
    return w if gen.sign > 0 else w.inverse()


def embed_word(w: Word | str, p: GroupParams) -> Word:
    w = as_word(w)
    out: list[Letter] = []
    for l in w.letters:
        out.extend(embed_generator(l, p).letters)
    return Word(tuple(out))


@lru_cache(maxsize=4096)
def _generator_action(family: str, idx: int, p: GroupParams) -> FreeAutomorphism:
    lay = StrandLayout.for_params(p)
    return artin_action(embed_generator(Letter(family, (idx,), 1), p), lay.total)


def action_of(w: Word | str, p: GroupParams) -> FreeAutomorphism:
    """Automorphism of an h/t/u word, composed generator by generator."""
    w = as_word(w)
    total = StrandLayout.for_params(p).total
    acc = FreeAutomorphism.identity(total)
    for l in w.letters:
        g = _generator_action(l.family.lower(), l.indices[0] if l.indices else 0, p)
        acc = acc.compose(g if l.sign > 0 else g.inverse())
    return acc


def is_trivial_ZLN(w: Word | str, p: GroupParams) -> bool:
    """Whether w is the identity of Z_n(Σ_Γ(L, N)), decided by the faithful action."""
    return action_of(w, p).is_identity()


def equal_ZLN(w1: Word | str, w2: Word | str, p: GroupParams) -> bool:
    return action_of(as_word(w1), p).images == action_of(as_word(w2), p).images

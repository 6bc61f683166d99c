import pytest
from hypothesis import given, settings, strategies as st

from orbibraid import artin
from orbibraid.artin import (ArtinIndexError, FreeAutomorphism, StrandLayout, action_of, artin_action,
                             band_generator, embed_generator, embed_word, equal_ZLN, is_trivial_ZLN)
from orbibraid.homs import hom_perm
from orbibraid.presentations import expand_pure, present_map_id_orb, present_orb_braid, present_pmap_id_orb, to_lower
from orbibraid.words import GroupParams, Word, free_reduce, parse

from conftest import GRID, GRID_IDS, braid_letters, params_and_word, words_over


def test_cancelling_pair_is_identity():
    assert artin_action("σ1 σ1^-1", 2).is_identity()


def test_braid_relation_holds():
    assert artin_action("σ1 σ2 σ1", 3) == artin_action("σ2 σ1 σ2", 3)


def test_full_twist_on_two_strands():
    # DERIVED: g1 -> (g1 g2) g1 (g1 g2)^-1, g2 -> g1 g2 g1^-1
    a = artin_action("σ1^2", 2)
    assert a.image_words() == [parse("g1 g2 g1 g2^-1 g1^-1"), parse("g1 g2 g1^-1")]


def test_single_crossing_images():
    assert artin_action("σ1", 2).image_words() == [parse("g1 g2 g1^-1"), parse("g1")]


def test_embedding_examples():
    assert embed_generator("h1", GroupParams(2, 0, 0, ())) == parse("σ1")
    # DERIVED: adjacent band generator is a single full twist
    assert embed_generator("u1", GroupParams(1, 0, 1, (2,))) == parse("σ1^2")
    assert embed_generator("t1", GroupParams(1, 1, 1, (2,))) == parse("σ2^2")
    assert embed_generator("u1^-1", GroupParams(1, 0, 1, (2,))) == parse("σ1^-2")


def test_band_generator_shape():
    assert band_generator(1, 3) == parse("σ2^-1 σ1 σ1 σ2")
    assert band_generator(1, 3, below=False) == parse("σ2 σ1 σ1 σ2^-1")


def test_layout_positions():
    lay = StrandLayout(2, 2, 2)
    assert [lay.cone(1), lay.cone(2), lay.puncture(1), lay.puncture(2), lay.marked(1), lay.marked(2)] == [2, 1, 4, 3, 5, 6]
    with pytest.raises(ArtinIndexError):
        lay.cone(3)


def test_out_of_range_letters():
    with pytest.raises(ArtinIndexError):
        embed_generator("h2", GroupParams(2, 0, 0, ()))
    with pytest.raises(ArtinIndexError):
        artin_action("σ3", 3)


def test_finite_order_fails_without_relation():
    # PAPER: the cone generator has infinite order before imposing u^m
    assert not is_trivial_ZLN("u1^2", GroupParams(1, 0, 1, (2,)))
    assert is_trivial_ZLN("h1 h1^-1", GroupParams(2, 0, 0, ()))


@pytest.mark.parametrize("p", GRID, ids=GRID_IDS)
def test_relators_act_trivially(p):
    # validates the chirality constants
    for r in present_map_id_orb(p).relators:
        assert is_trivial_ZLN(to_lower(r), p), r
    for r, fam in zip(present_orb_braid(p).relators, present_orb_braid(p).families):
        assert is_trivial_ZLN(r, p) == (not fam.startswith("(1)")), r


@pytest.mark.parametrize("p", GRID + [GroupParams(4, 2, 2, (2, 3))], ids=lambda p: str(p))
def test_pure_relators_act_trivially(p):
    for r in present_pmap_id_orb(p).relators:
        assert is_trivial_ZLN(expand_pure(to_lower(r)), p), r


@pytest.mark.parametrize("p", GRID, ids=GRID_IDS)
def test_cone_generator_powers_nontrivial(p):
    for nu in range(1, p.N + 1):
        for k in range(1, 4 * p.m(nu) + 1):
            assert not is_trivial_ZLN(Word.gen("u", nu, power=k), p)


def test_chirality_constants_recorded():
    assert (artin.BAND_SIGN, artin.BAND_CONJUGATE_BELOW) == (1, True)


# --- properties ------------------------------------------------------------

@st.composite
def params_and_two_words(draw):
    p = draw(st.sampled_from(GRID))
    return p, draw(words_over(braid_letters(p), 10)), draw(words_over(braid_letters(p), 10))


@given(params_and_two_words())
@settings(max_examples=1000)
def test_action_is_a_homomorphism(pvw):
    p, v, w = pvw
    assert action_of(v * w, p) == action_of(v, p).compose(action_of(w, p))


@given(params_and_word(12))
@settings(max_examples=200)
def test_action_matches_embedded_braid(pw):
    p, w = pw
    assert action_of(w, p) == artin_action(embed_word(w, p), StrandLayout.for_params(p).total)


@given(params_and_word(8))
@settings(max_examples=60)
def test_inverse_word_gives_inverse_action(pw):
    p, w = pw
    assert action_of(w * w.inverse(), p).is_identity()
    assert equal_ZLN(w.inverse(), free_reduce(w.inverse()), p)
    a = action_of(w, p)
    assert a.compose(a.inverse()).is_identity()


def _conjugacy_permutation(a: FreeAutomorphism, p: GroupParams) -> tuple[int, ...]:
    """Where each marked generator's conjugacy class goes."""
    off = p.N + p.L
    out = []
    for img in a.image_words()[off:]:
        letters = img.letters
        while len(letters) > 1 and letters[0].is_inverse_of(letters[-1]):
            letters = letters[1:-1]
        (g,) = letters
        out.append(g.indices[0] - off)
    return tuple(out)


@given(params_and_word(12))
@settings(max_examples=300)
def test_induced_permutation_matches_perm(pw):
    p, w = pw
    perm = hom_perm(p)
    assert _conjugacy_permutation(action_of(w, p), p) == perm.oracle.image(perm.apply(w))

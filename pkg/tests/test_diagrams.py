import pytest
from hypothesis import given, settings, strategies as st

from orbibraid.diagrams import (Diagram, DiagramError, GammaLeap, PunctureCross, ReidemeisterSite, SiteMismatch,
                                StrandCross, apply_orbifold_reidemeister, diagram_to_word, find_sites,
                                permutation, render, render_ascii, render_svg, strand_at, word_to_diagram)
from orbibraid.homs import hom_perm
from orbibraid.presentations import present_orb_braid
from orbibraid.prover import ProofTrace, SearchBudget, prove_equal
from orbibraid.words import AlphabetError, GroupParams, Word, parse

from conftest import GRID, braid_letters, params_and_word, words_over

P311 = GroupParams(3, 1, 1, (3,))
P2012 = GroupParams(2, 0, 1, (2,))


def test_single_crossing():
    assert word_to_diagram("h1", P311).events == (StrandCross(1, 1),)


def test_cone_generator_is_a_leap():
    assert word_to_diagram("u1", P311).events == (GammaLeap(1, 1, 1),)


def test_empty_word_gives_empty_diagram():
    d = word_to_diagram("", P311)
    assert len(d) == 0 and diagram_to_word(d) == Word(())


def test_puncture_block_shape():
    p = GroupParams(2, 2, 0, ())
    assert word_to_diagram("t1", p).events == (PunctureCross(1, 1, True), PunctureCross(1, 1, False))
    # DERIVED: t2 passes over puncture 1 on the way in and out
    assert word_to_diagram("t2^-1", p).events == (PunctureCross(1, 1, True), PunctureCross(1, 2, False),
                                                  PunctureCross(1, 2, True), PunctureCross(1, 1, True))


def test_round_trip_example():
    w = parse("h1 u1 h1^-1")
    assert diagram_to_word(word_to_diagram(w, P311)) == w


def test_inverse_leap_decodes_to_inverse_generator():
    d = Diagram(P311, (GammaLeap(1, 1, -1),))
    assert diagram_to_word(d) == parse("u1^-1")


def test_invalid_events():
    with pytest.raises(DiagramError):
        Diagram(P311, (StrandCross(3, 1),))
    with pytest.raises(DiagramError):
        Diagram(P311, (GammaLeap(1, 2, 1),))
    with pytest.raises(DiagramError):
        diagram_to_word(Diagram(P311, (GammaLeap(2, 1, 1),)))
    with pytest.raises(DiagramError):
        diagram_to_word(Diagram(P311, (PunctureCross(1, 1, True),)))
    with pytest.raises(AlphabetError):
        word_to_diagram("h3", P311)


# --- orbifold Reidemeister move ---------------------------------------------

def test_full_run_of_leaps_deletes():
    d = word_to_diagram("u1^3", P311)
    (site,) = find_sites(d)
    empty = apply_orbifold_reidemeister(d, site)
    assert len(empty) == 0
    back = apply_orbifold_reidemeister(empty, ReidemeisterSite(0, 1, insert=True))
    assert back == d


def test_site_on_another_strand():
    d = word_to_diagram("h1^-1 u1^2 h1", P2012)
    assert strand_at(d, 1) == 2
    (site,) = find_sites(d, strand=2)
    assert find_sites(d, strand=1) == []
    out = apply_orbifold_reidemeister(d, site)
    assert diagram_to_word(out) == parse("h1^-1 h1")


def test_mismatched_site_rejected():
    d = word_to_diagram("u1^2", P311)
    with pytest.raises(SiteMismatch):
        apply_orbifold_reidemeister(d, ReidemeisterSite(0, 1))
    with pytest.raises(SiteMismatch):
        apply_orbifold_reidemeister(d, ReidemeisterSite(9, 1, insert=True))
    with pytest.raises(SiteMismatch):
        apply_orbifold_reidemeister(d, ReidemeisterSite(0, 2, insert=True))


# --- permutation --------------------------------------------------------------

def test_permutation_examples():
    p = GroupParams(3, 0, 0, ())
    # DERIVED: τ1∘τ2 is the 3-cycle 1 -> 2 -> 3 -> 1
    assert permutation(word_to_diagram("h1 h2", p)) == (2, 3, 1)
    assert permutation(word_to_diagram("t1 u1", P311)) == (1, 2, 3)


# --- rendering ---------------------------------------------------------------

def test_empty_render_has_strands_and_bars():
    text = render_ascii(word_to_diagram("", P311))
    header = text.splitlines()[0].split()
    assert header == ["c1", "p1", "1", "2", "3"]
    assert all(line.count("|") == 3 for line in text.splitlines()[1:])


def test_render_labels_events():
    text = render_ascii(word_to_diagram("h1 t1 u1", P311))
    assert "h1" in text and "around cone 1" in text and "over puncture 1" in text


def test_render_is_deterministic():
    d = word_to_diagram("h1 t1^-1 u1 h2^-1", P311)
    assert render_svg(d) == render_svg(d) == render(d, "svg")
    assert render_svg(d).startswith("<svg") and render_svg(d).rstrip().endswith("</svg>")
    assert render(d, "ascii") == render_ascii(d)


# --- properties ------------------------------------------------------------

@given(params_and_word(16))
@settings(max_examples=1000)
def test_round_trip(pw):
    p, w = pw
    assert diagram_to_word(word_to_diagram(w, p)) == w


@given(params_and_word(12))
@settings(max_examples=300)
def test_permutation_matches_homomorphism(pw):
    p, w = pw
    perm = hom_perm(p)
    assert permutation(word_to_diagram(w, p)) == perm.oracle.image(perm.apply(w))


@st.composite
def leap_insertion(draw):
    p = draw(st.sampled_from([q for q in GRID if q.N and q.n <= 3]))
    w = draw(words_over(braid_letters(p), 5))
    cone = draw(st.integers(1, p.N))
    sign = draw(st.sampled_from([1, -1]))
    cut = draw(st.integers(0, len(w)))
    return p, w, cut, cone, sign


@given(leap_insertion())
@settings(max_examples=40)
def test_reidemeister_preserves_the_element(data):
    p, w, cut, cone, sign = data
    at = len(word_to_diagram(Word(w.letters[:cut]), p))
    d = word_to_diagram(w, p)
    moved = apply_orbifold_reidemeister(d, ReidemeisterSite(at, cone, insert=True, sign=sign))
    w2 = diagram_to_word(moved)
    assert apply_orbifold_reidemeister(moved, ReidemeisterSite(at, cone, sign=sign)) == d
    tr = prove_equal(present_orb_braid(p), w, w2, SearchBudget(max_states=20_000))
    assert isinstance(tr, ProofTrace)

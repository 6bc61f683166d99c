import json

import pytest
from hypothesis import given, settings, strategies as st

from orbibraid.homs import standard_oracles
from orbibraid.presentations import (expand_pure, present_orb_braid, present_orb_braid_ln,
                                     present_pure_orb_braid)
from orbibraid.prover import (DisproofCertificate, ProofTrace, SearchBudget, TraceError, TraceStep, Unknown,
                              as_lemma, check_trace, disprove_equal, prove_by_rewriting, prove_equal,
                              replay, rules_from_conjugation, verify_trace)
from orbibraid.words import GroupParams, Word, free_reduce, parse

from conftest import GRID, braid_letters, words_over

P311 = GroupParams(3, 1, 1, (3,))
P2012 = GroupParams(2, 0, 1, (2,))


def test_braid_relation_in_one_move(validate):
    pres = present_orb_braid(P311)
    tr = prove_equal(pres, "h1 h2 h1", "h2 h1 h2")
    assert isinstance(tr, ProofTrace) and tr.depth == 1
    assert replay(pres, "h1 h2 h1", tr.steps) == parse("h2 h1 h2")
    validate("trace", tr.to_json())


def test_cone_generator_has_finite_order():
    # PAPER: c_{k,ν}^{m_ν} is trivial in the orbifold braid group
    pres = present_orb_braid(P2012)
    w = parse("h1^-1 u1 h1 h1^-1 u1 h1")
    assert free_reduce(w) == expand_pure(parse("c(2,1)^2"))
    tr = prove_equal(pres, w, "")
    assert isinstance(tr, ProofTrace)
    assert verify_trace(pres, w, tr) == Word(())


def test_kernel_commutation_in_pure_group():
    # PAPER: (c a)^m = (a c)^m in the pure group, found directly for m = 2
    pres = present_pure_orb_braid(P2012)
    tr = prove_equal(pres, parse("a(2,1) c(2,1)") ** 2, parse("c(2,1) a(2,1)") ** 2,
                     SearchBudget(max_states=10 ** 6))
    assert isinstance(tr, ProofTrace)
    assert tr.states <= 10 ** 6
    assert check_trace(pres, tr)


def test_verify_empty_trace_reduces():
    pres = present_orb_braid(P311)
    assert verify_trace(pres, "h1 h1^-1 t1", []) == parse("t1")
    assert replay(pres, "h1 h1^-1 t1", []) == parse("h1 h1^-1 t1")  # replay is exact


def test_verify_single_insertion():
    pres = present_orb_braid(P311)
    out = verify_trace(pres, "h2", [TraceStep("ins", 0, 0, 0, 1)])
    assert out == free_reduce(pres.relators[0] * parse("h2"))


def test_verify_braid_trace():
    pres = present_orb_braid(P311)
    assert verify_trace(pres, "h1 h2 h1", prove_equal(pres, "h1 h2 h1", "h2 h1 h2")) == parse("h2 h1 h2")


def test_replay_rejects_bad_steps():
    pres = present_orb_braid(P311)
    with pytest.raises(TraceError):
        replay(pres, "h1", [TraceStep("red", 0)])
    with pytest.raises(TraceError):
        replay(pres, "h1", [TraceStep("ins", 5, 0, 0, 1)])


def test_trace_json_round_trip():
    pres = present_orb_braid(P311)
    tr = prove_equal(pres, "h1 h2 h1", "h2 h1 h2")
    again = ProofTrace.from_json(json.loads(json.dumps(tr.to_json())))
    assert again == tr
    assert check_trace(pres, again)


def test_budget_exhaustion_is_unknown():
    pres = present_orb_braid(P311)
    res = prove_equal(pres, "u1", "", SearchBudget(max_states=500))
    assert isinstance(res, Unknown) and not res
    assert res.states <= 500 + 64


def test_alphabet_is_checked():
    with pytest.raises(ValueError):
        prove_equal(present_orb_braid(P311), "h3", "")


def test_artin_certificate_for_cone_generator():
    # PAPER: u_ν is nontrivial in the group without finite-order relations
    pres = present_orb_braid_ln(P311)
    artin = [o for o in standard_oracles(pres, P311) if o.name.startswith("artin")]
    assert artin, "the Artin action passes the von Dyck check on this presentation"
    cert = disprove_equal("u1", "", artin)
    assert isinstance(cert, DisproofCertificate)


def test_abelianization_certificate():
    p = GroupParams(2, 2, 0, ())
    abel = [o for o in standard_oracles(present_orb_braid(p), p) if o.name.startswith("abel")]
    cert = disprove_equal("t1", "t2", abel)
    assert isinstance(cert, DisproofCertificate)
    assert cert.image_lhs != cert.image_rhs


def test_permutation_certificate():
    pres = present_orb_braid(P311)
    cert = disprove_equal("h1", "", standard_oracles(pres, P311))
    assert isinstance(cert, DisproofCertificate) and cert.oracle.startswith("perm")
    assert "(2, 1, 3)" in cert.image_lhs


def test_artin_is_not_an_oracle_for_finite_order_quotient():
    names = [o.name for o in standard_oracles(present_orb_braid(P311), P311)]
    assert not any(n.startswith("artin") for n in names)
    assert any(n.startswith("perm") for n in names)


def test_lemma_reuse():
    pres = present_orb_braid(P311)
    tr = prove_equal(pres, "h1 h2 h1", "h2 h1 h2")
    lemma = as_lemma(tr, "braid")
    tr2 = prove_equal(pres, "t1 h1 h2 h1", "t1 h2 h1 h2", lemmas=[lemma])
    assert isinstance(tr2, ProofTrace) and check_trace(pres, tr2)


def test_rewriting_with_conjugation_rules():
    # u1 commutes with h2 at n = 3: push u1 to the right past h2 letters
    pres = present_orb_braid(P311)
    lemma = as_lemma(prove_equal(pres, "u1 h2 u1^-1", "h2"), "u-h2")
    rules = rules_from_conjugation(lemma, parse("u1"))
    tr = prove_by_rewriting(pres, "u1 h2 h2 h2", "h2 h2 h2 u1", rules, [lemma])
    assert isinstance(tr, ProofTrace) and check_trace(pres, tr)


# --- properties ------------------------------------------------------------

@st.composite
def relator_insertion(draw):
    p = draw(st.sampled_from(GRID[:4]))
    pres = present_orb_braid(p)
    w = draw(words_over(braid_letters(p), 4))
    r = draw(st.sampled_from(pres.relators))
    k = draw(st.integers(0, len(r) - 1))
    r = Word(r.letters[k:] + r.letters[:k])
    if draw(st.booleans()):
        r = r.inverse()
    pos = draw(st.integers(0, len(w)))
    return pres, w, Word(w.letters[:pos] + r.letters + w.letters[pos:])


@given(relator_insertion())
@settings(max_examples=40)
def test_found_traces_replay(data):
    pres, w1, w2 = data
    tr = prove_equal(pres, w1, w2, SearchBudget(max_states=20_000))
    assert isinstance(tr, ProofTrace)
    assert verify_trace(pres, w1, tr) == free_reduce(w2)


@st.composite
def word_pairs(draw):
    p = draw(st.sampled_from(GRID[:4]))
    gens = braid_letters(p)
    return p, draw(words_over(gens, 5)), draw(words_over(gens, 5))


@given(word_pairs())
@settings(max_examples=60)
def test_prove_and_disprove_never_both_succeed(data):
    p, w1, w2 = data
    pres = present_orb_braid(p)
    proved = prove_equal(pres, w1, w2, SearchBudget(max_states=2_000))
    refuted = disprove_equal(w1, w2, standard_oracles(pres, p))
    assert not (isinstance(proved, ProofTrace) and isinstance(refuted, DisproofCertificate))

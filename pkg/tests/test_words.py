import pytest
from hypothesis import given, settings, strategies as st

from orbibraid.presentations import expand_c
from orbibraid.words import (Alphabet, AlphabetError, AssignmentError, GroupParams, Letter, Word,
                             WordSyntaxError, braid_alphabet, commutator, compose_assignments, conj,
                             format_word, free_reduce, parse, pure_alphabet, substitute)

from conftest import words_over

GENS = [("h", 1), ("h", 2), ("t", 1), ("u", 1)]


@pytest.mark.parametrize("text, expected", [
    ("h1 h1^-1", ""),
    ("u1 u1 u1", "u1^3"),  # order relations are not free reduction
    ("t1 h2 h2^-1 t1^-1 u3", "u3"),
])
def test_free_reduce(text, expected):
    assert str(free_reduce(parse(text))) == expected


def test_substitute_upper_to_lower():
    # PAPER: ev sends H_j to h_j
    assert str(substitute(parse("H1"), {("H", (1,)): parse("h1")})) == "h1"


def test_substitute_inverse_rule():
    assert str(substitute(parse("x1^-1"), {("x", (1,)): parse("a(3,1)")})) == "a(3,1)^-1"


def test_substitute_missing_generator():
    with pytest.raises(AssignmentError):
        substitute(parse("x2"), {("x", (1,)): parse("h1")})


def test_cone_generator_expansion():
    # PAPER: c_{2,1} = h1^-1 u1 h1
    assert str(expand_c(2, 1)) == "h1^-1 u1 h1"


def test_parse_counts_and_indices():
    assert len(parse("h1 t2^-1 u1^3")) == 5
    (l,) = parse("a(3,1)").letters
    assert l.indices == (3, 1) and l.family == "a"
    assert parse("") == Word(())
    assert parse("  ") == Word(())


def test_parse_groups_and_powers():
    assert str(parse("(h1 t1)^2")) == "h1 t1 h1 t1"
    assert str(parse("(h1 t1)^-1")) == "t1^-1 h1^-1"
    assert str(parse("h1^0")) == ""
    assert str(parse("σ1 s2 sigma1")) == "σ1 σ2 σ1"


@pytest.mark.parametrize("text, offset", [("h1 x(", 5), ("a(3)", 0), ("h1 )", 3)])
def test_parse_errors_report_offsets(text, offset):
    with pytest.raises(WordSyntaxError) as e:
        parse(text)
    assert e.value.offset == offset


def test_commutator_and_conj():
    x, y = parse("x1"), parse("z1")
    assert str(commutator(x, y)) == "x1 z1 x1^-1 z1^-1"
    assert str(conj(y, x)) == "z1 x1 z1^-1"


def test_params_json_round_trip():
    p = GroupParams.from_json({"n": 3, "L": 1, "N": 2, "m": [2, 3]})
    assert p.to_json() == {"n": 3, "L": 1, "N": 2, "m": [2, 3]}
    assert p.m(2) == 3


@pytest.mark.parametrize("data", [
    {"n": 0, "L": 0, "N": 0, "m": []},
    {"n": 2, "L": -1, "N": 0, "m": []},
    {"n": 2, "L": 0, "N": 2, "m": [3]},
    {"n": 2, "L": 0, "N": 1, "m": [1]},
])
def test_params_validation(data):
    with pytest.raises(ValueError):
        GroupParams.from_json(data)


def test_alphabets():
    p = GroupParams(3, 1, 1, (3,))
    assert [str(w) for w in braid_alphabet(p).letters()] == ["h1", "h2", "t1", "u1"]
    assert [str(w) for w in pure_alphabet(GroupParams(2, 0, 1, (2,))).letters()] == ["a(2,1)", "c(1,1)", "c(2,1)"]
    with pytest.raises(AlphabetError):
        braid_alphabet(p).validate(parse("h3"))


def test_alphabet_rejects_duplicates():
    with pytest.raises(AlphabetError):
        Alphabet((("h", (1,)), ("h", (1,))))


def test_format_uses_runs():
    assert format_word(parse("h1 h1 h1 t1^-1 t1^-1")) == "h1^3 t1^-2"


# --- properties ------------------------------------------------------------

@given(words_over(GENS, 20))
def test_free_reduce_idempotent_and_shortening(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert r.is_reduced()


@given(words_over(GENS, 20))
def test_text_round_trip(w):
    assert parse(str(w)) == w
    assert parse(format_word(w)) == w


@given(words_over(GENS, 12))
def test_inverse_cancels(w):
    assert free_reduce(w * w.inverse()) == Word(())


_image = words_over(GENS, 4)
_assignment = st.fixed_dictionaries({g: _image for g in [("h", (1,)), ("h", (2,)), ("t", (1,)), ("u", (1,))]})


@given(words_over(GENS, 12), _assignment, _assignment)
@settings(max_examples=200)
def test_substitution_composes(w, a, b):
    assert substitute(substitute(w, a), b) == substitute(w, compose_assignments(a, b))


@given(words_over(GENS, 10), words_over(GENS, 10), _assignment)
def test_substitution_is_multiplicative(u, v, a):
    assert substitute(u * v, a) == free_reduce(substitute(u, a) * substitute(v, a))


def test_letter_inverse():
    l = Letter("h", (1,), 1)
    assert l.inverse().sign == -1 and l.inverse().inverse() == l

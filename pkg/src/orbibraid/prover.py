"""Bounded proof search for word equality in finitely presented groups.

Search runs breadth-first from both ends over freely reduced words.  A move
replaces a subword ``u`` of the current word by ``v^-1`` where ``u v`` is a
cyclic rotation of a relator or of its inverse; short relators may also be
inserted outright.  Every move is recorded as primitive trace steps on raw
(unreduced) words:

``ins``  insert ``rotate(r^sign, rot)`` for relator ``r`` at ``pos``;
``red``  cancel the inverse pair at ``pos, pos+1``;
``exp``  insert the pair ``x x^-1`` at ``pos``.

Each primitive step has an explicit inverse, so traces can be reversed and
spliced.  Previously proven equalities may be supplied as lemmas; their
proofs are inlined so that the final trace only mentions base relators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Protocol, Sequence

from .presentations import Presentation
from .words import Alphabet, Letter, Word, WordError, as_word, free_reduce


class TraceError(WordError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 1_000_000
    max_word_length: int = 64
    max_depth: int = 24
    insert_cap: int = 4

    def __post_init__(self):
        if min(self.max_states, self.max_word_length, self.max_depth) <= 0:
            raise ValueError("budget limits must be positive")
        if self.insert_cap < 0:
            raise ValueError("insert_cap must be >= 0")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class TraceStep:
    kind: str  # "ins" | "red" | "exp"
    pos: int
    rel: int = -1
    rot: int = 0
    sign: int = 1
    letter: Letter | None = None

    def to_json(self) -> dict:
        if self.kind == "ins":
            return {"op": "ins", "pos": self.pos, "rel": self.rel, "rot": self.rot, "sign": self.sign}
        if self.kind == "exp":
            return {"op": "exp", "pos": self.pos, "letter": str(self.letter)}
        return {"op": "red", "pos": self.pos}

    @classmethod
    def from_json(cls, d: dict) -> "TraceStep":
        op = d["op"]
        if op == "ins":
            return cls("ins", int(d["pos"]), int(d["rel"]), int(d["rot"]), int(d["sign"]))
        if op == "exp":
            (l,) = as_word(d["letter"]).letters
            return cls("exp", int(d["pos"]), letter=l)
        if op == "red":
            return cls("red", int(d["pos"]))
        raise TraceError(f"unknown trace op {op!r}")


@dataclass(frozen=True)
class ProofTrace:
    lhs: Word
    rhs: Word
    steps: tuple[TraceStep, ...]
    moves: int = 0
    states: int = 0
    lemmas_used: tuple[str, ...] = ()

    @property
    def depth(self) -> int:
        return self.moves

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "moves": self.moves,
            "states": self.states,
            "lemmas": list(self.lemmas_used),
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ProofTrace":
        return cls(as_word(d["lhs"]), as_word(d["rhs"]),
                   tuple(TraceStep.from_json(s) for s in d["steps"]),
                   int(d.get("moves", 0)), int(d.get("states", 0)), tuple(d.get("lemmas", ())))


@dataclass(frozen=True)
class Unknown:
    """Inconclusive search result."""

    reason: str
    states: int = 0

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Lemma:
    """A proven equality lhs = rhs together with its base-relator trace."""

    lhs: Word
    rhs: Word
    trace: ProofTrace
    name: str = ""


# ---------------------------------------------------------------------------
# Byte encoding of words
# ---------------------------------------------------------------------------

class _Codec:
    def __init__(self, alphabet: Alphabet):
        if 2 * len(alphabet) > 256:
            raise ValueError("alphabet too large for the byte encoding")
        self.alphabet = alphabet

    def encode(self, w: Word) -> bytes:
        return bytes(2 * self.alphabet.index(l.generator) + (0 if l.sign > 0 else 1) for l in w.letters)

    def letter(self, c: int) -> Letter:
        fam, idx = self.alphabet.generators[c >> 1]
        return Letter(fam, idx, -1 if c & 1 else 1)

    def decode(self, b: Iterable[int]) -> Word:
        return Word(tuple(self.letter(c) for c in b))


def _inv(b: bytes) -> bytes:
    return bytes(c ^ 1 for c in reversed(b))


def _reduce(b: Iterable[int]) -> bytes:
    st = bytearray()
    for c in b:
        if st and st[-1] == c ^ 1:
            st.pop()
        else:
            st.append(c)
    return bytes(st)


def _reduce_steps(word: bytearray) -> list[TraceStep]:
    """Fully reduce ``word`` in place, returning the red steps used."""
    st = bytearray()
    steps = []
    for c in bytes(word):
        if st and st[-1] == c ^ 1:
            steps.append(TraceStep("red", len(st) - 1))
            st.pop()
        else:
            st.append(c)
    word[:] = st
    return steps


def _join(a: bytes, b: bytes) -> bytes:
    t = 0
    la = len(a)
    m = min(la, len(b))
    while t < m and a[la - 1 - t] ^ 1 == b[t]:
        t += 1
    return a[:la - t] + b[t:] if t else a + b


def _rotate(b: bytes, k: int) -> bytes:
    return b[k:] + b[:k]


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------

def _relator_variant(rels: Sequence[bytes], rel: int, rot: int, sign: int) -> bytes:
    if not 0 <= rel < len(rels):
        raise TraceError(f"relator index {rel} out of range")
    r = rels[rel] if sign > 0 else _inv(rels[rel])
    if sign not in (1, -1) or not 0 <= rot < max(1, len(r)):
        raise TraceError("bad rotation or sign")
    return _rotate(r, rot)


def _apply_step(word: bytearray, s: TraceStep, rels: Sequence[bytes], codec: _Codec) -> None:
    if not 0 <= s.pos <= len(word):
        raise TraceError(f"step position {s.pos} outside word of length {len(word)}")
    if s.kind == "ins":
        word[s.pos:s.pos] = _relator_variant(rels, s.rel, s.rot, s.sign)
    elif s.kind == "red":
        if s.pos + 1 >= len(word) or word[s.pos] ^ 1 != word[s.pos + 1]:
            raise TraceError(f"no cancelling pair at position {s.pos}")
        del word[s.pos:s.pos + 2]
    elif s.kind == "exp":
        if s.letter is None:
            raise TraceError("exp step without letter")
        c = codec.encode(Word((s.letter,)))[0]
        word[s.pos:s.pos] = bytes((c, c ^ 1))
    else:
        raise TraceError(f"unknown step kind {s.kind!r}")


def replay(pres: Presentation, w1: Word | str, steps: Iterable[TraceStep]) -> Word:
    """Raw (unreduced) word reached by replaying ``steps`` from ``w1``."""
    codec = _Codec(pres.alphabet)
    rels = [codec.encode(r) for r in pres.relators]
    word = bytearray(codec.encode(as_word(w1)))
    for s in steps:
        _apply_step(word, s, rels, codec)
    return codec.decode(word)


def verify_trace(pres: Presentation, w1: Word | str, trace: ProofTrace | Sequence[TraceStep]) -> Word:
    """Replay a trace from ``w1`` and return the freely reduced end word."""
    steps = trace.steps if isinstance(trace, ProofTrace) else trace
    return free_reduce(replay(pres, w1, steps))


def check_trace(pres: Presentation, trace: ProofTrace) -> bool:
    try:
        return verify_trace(pres, trace.lhs, trace) == free_reduce(trace.rhs)
    except (TraceError, WordError):
        return False


def _invert_steps(start: bytes, steps: Sequence[TraceStep], rels: Sequence[bytes], codec: _Codec) -> list[TraceStep]:
    """Steps leading from the end word of ``steps`` back to ``start``."""
    word = bytearray(start)
    inverse: list[list[TraceStep]] = []
    for s in steps:
        if s.kind == "ins":
            v = _relator_variant(rels, s.rel, s.rot, s.sign)
            ell = len(v)
            inv = [TraceStep("ins", s.pos + ell, s.rel, (ell - s.rot) % ell, -s.sign)]
            inv += [TraceStep("red", s.pos + ell - 1 - t) for t in range(ell)]
            inverse.append(inv)
        elif s.kind == "red":
            inverse.append([TraceStep("exp", s.pos, letter=codec.letter(word[s.pos]))])
        else:
            inverse.append([TraceStep("red", s.pos)])
        _apply_step(word, s, rels, codec)
    out: list[TraceStep] = []
    for block in reversed(inverse):
        out.extend(block)
    return out


def _shift(steps: Iterable[TraceStep], offset: int) -> list[TraceStep]:
    return [TraceStep(s.kind, s.pos + offset, s.rel, s.rot, s.sign, s.letter) for s in steps]


def _build_pair(word: bytes, codec: _Codec) -> list[TraceStep]:
    """Steps from the empty word to ``word word^-1``."""
    return [TraceStep("exp", t, letter=codec.letter(c)) for t, c in enumerate(word)]


# ---------------------------------------------------------------------------
# Search engine
# ---------------------------------------------------------------------------

@dataclass
class _Variant:
    word: bytes
    source: int  # index into relators (>= 0) or lemma (-1 - j)
    rot: int
    sign: int


class _Engine:
    def __init__(self, pres: Presentation, lemmas: Sequence[Lemma], budget: SearchBudget):
        self.pres = pres
        self.budget = budget
        self.codec = _Codec(pres.alphabet)
        self.rels = [self.codec.encode(r) for r in pres.relators]
        self.lemmas = list(lemmas)
        self.lemma_words = [self.codec.encode(free_reduce(l.lhs * l.rhs.inverse())) for l in self.lemmas]
        self._lemma_builders: dict[tuple[int, int], list[TraceStep]] = {}
        self.variants: list[_Variant] = []
        self.by_word: dict[bytes, int] = {}
        for j, r in enumerate(self.rels):
            self._add_variants(r, j)
        for j, r in enumerate(self.lemma_words):
            if r:
                self._add_variants(r, -1 - j)
        # prefix -> [(variant id, k, replacement)]
        self.prefix: dict[bytes, list[tuple[int, int, bytes]]] = {}
        for vid, v in enumerate(self.variants):
            for k in range(1, len(v.word) + 1):
                self.prefix.setdefault(v.word[:k], []).append((vid, k, _inv(v.word[k:])))
        self.short = [vid for vid, v in enumerate(self.variants)
                      if 0 < len(v.word) <= budget.insert_cap and v.word == _reduce(v.word)]

    def _add_variants(self, r: bytes, source: int) -> None:
        for sign in (1, -1):
            base = r if sign > 0 else _inv(r)
            for rot in range(len(base)):
                w = _rotate(base, rot)
                if w not in self.by_word:
                    self.by_word[w] = len(self.variants)
                    self.variants.append(_Variant(w, source, rot, sign))

    # -- neighbours ---------------------------------------------------------
    def neighbours(self, w: bytes):
        """Yield (new word, move); a move is (insert position, variant id)."""
        maxlen = self.budget.max_word_length
        n = len(w)
        prefix = self.prefix
        for i in range(n):
            for k in range(1, n - i + 1):
                hits = prefix.get(w[i:i + k])
                if hits is None:
                    break
                for vid, kk, repl in hits:
                    if kk != k:
                        continue
                    new = _join(_join(w[:i], repl), w[i + k:])
                    if len(new) <= maxlen:
                        yield new, (i, k, vid)
        for vid in self.short:
            v = self.variants[vid].word
            if n + len(v) > maxlen:
                continue
            for i in range(n + 1):
                new = _join(_join(w[:i], v), w[i:])
                yield new, (i, 0, vid)

    # -- trace construction --------------------------------------------------
    def _lemma_build(self, j: int, sign: int) -> list[TraceStep]:
        """Steps from the empty word to lemma relator j raised to ``sign``."""
        key = (j, sign)
        if key in self._lemma_builders:
            return self._lemma_builders[key]
        lem = self.lemmas[j]
        lhs, rhs = self.codec.encode(lem.lhs), self.codec.encode(lem.rhs)
        forward = list(lem.trace.steps)
        if sign > 0:
            # rhs rhs^-1 -> lhs rhs^-1 by the reversed proof on the prefix
            steps = _build_pair(rhs, self.codec)
            steps += _invert_steps(lhs, forward, self.rels, self.codec)
            raw = bytearray(lhs + _inv(rhs))
        else:
            steps = _build_pair(lhs, self.codec)
            steps += forward
            raw = bytearray(rhs + _inv(lhs))
        steps += _reduce_steps(raw)
        self._lemma_builders[key] = steps
        return steps

    def insertion_steps(self, pos: int, vid: int) -> list[TraceStep]:
        v = self.variants[vid]
        if v.source >= 0:
            return [TraceStep("ins", pos, v.source, v.rot, v.sign)]
        j = -1 - v.source
        base = self.lemma_words[j] if v.sign > 0 else _inv(self.lemma_words[j])
        build = self._lemma_build(j, v.sign)
        if v.rot == 0:
            return _shift(build, pos)
        suffix = base[v.rot:]
        s = len(suffix)
        steps = _build_pair(suffix, self.codec)
        steps += _shift(build, s)
        total = s + len(base) + s
        steps += [TraceStep("red", total - s - 1 - t) for t in range(s)]
        return _shift(steps, pos)

    def move_steps(self, w: bytes, move: tuple[int, int, int]) -> tuple[list[TraceStep], bytes]:
        i, k, vid = move
        v = self.variants[vid].word
        if k == 0:
            ins_vid, pos = vid, i
        else:
            ins_word = _inv(v[:k]) + _inv(v[k:])
            ins_vid, pos = self.by_word[ins_word], i + k
        ins_word = self.variants[ins_vid].word
        raw = bytearray(w[:pos] + ins_word + w[pos:])
        steps = self.insertion_steps(pos, ins_vid)
        steps += _reduce_steps(raw)
        return steps, bytes(raw)

    def path_steps(self, start_raw: bytes, path: list[tuple[bytes, tuple[int, int, int]]]) -> list[TraceStep]:
        raw = bytearray(start_raw)
        steps = _reduce_steps(raw)
        for w, move in path:
            s, _ = self.move_steps(w, move)
            steps += s
        return steps

    def lemma_names(self, moves: Iterable[tuple[int, int, int]]) -> tuple[str, ...]:
        names = []
        for _, _, vid in moves:
            src = self.variants[vid].source
            if src < 0:
                name = self.lemmas[-1 - src].name or f"lemma{-1 - src}"
                if name not in names:
                    names.append(name)
        return tuple(names)

    # -- bidirectional BFS ---------------------------------------------------
    def search(self, w1: Word, w2: Word) -> ProofTrace | Unknown:
        codec = self.codec
        raw1, raw2 = codec.encode(w1), codec.encode(w2)
        s, t = _reduce(raw1), _reduce(raw2)
        if max(len(s), len(t)) > self.budget.max_word_length:
            return Unknown("input longer than max_word_length")
        parents = ({s: None}, {t: None})
        frontiers = ([s], [t])
        depths = [0, 0]
        meet = s if s == t else None
        while meet is None:
            if depths[0] + depths[1] >= self.budget.max_depth:
                return Unknown("depth limit reached", len(parents[0]) + len(parents[1]))
            side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
            if not frontiers[side]:
                return Unknown("search space exhausted", len(parents[0]) + len(parents[1]))
            mine, other = parents[side], parents[1 - side]
            nxt = []
            for w in frontiers[side]:
                for new, move in self.neighbours(w):
                    if new in mine:
                        continue
                    mine[new] = (w, move)
                    if new in other:
                        meet = new
                        break
                    nxt.append(new)
                    if len(mine) + len(other) >= self.budget.max_states:
                        return Unknown("state limit reached", len(mine) + len(other))
                if meet is not None:
                    break
            frontiers[side][:] = nxt
            depths[side] += 1

        def chain(par, node):
            path = []
            while par[node] is not None:
                prev, move = par[node]
                path.append((prev, move))
                node = prev
            path.reverse()
            return path

        fwd, bwd = chain(parents[0], meet), chain(parents[1], meet)
        steps = self.path_steps(raw1, fwd)
        back = self.path_steps(raw2, bwd)
        steps += _invert_steps(raw2, back, self.rels, codec)
        moves = [m for _, m in fwd] + [m for _, m in bwd]
        return ProofTrace(w1, w2, tuple(steps), len(moves), len(parents[0]) + len(parents[1]),
                          self.lemma_names(moves))


def prove_equal(pres: Presentation, w1: Word | str, w2: Word | str,
                budget: SearchBudget = DEFAULT_BUDGET,
                lemmas: Sequence[Lemma] = ()) -> ProofTrace | Unknown:
    """Search for a derivation of w1 = w2 in ``pres``; returns a trace or Unknown."""
    w1, w2 = as_word(w1), as_word(w2)
    pres.alphabet.validate(w1)
    pres.alphabet.validate(w2)
    engine = _Engine(pres, lemmas, budget)
    result = engine.search(w1, w2)
    if isinstance(result, ProofTrace) and not check_trace(pres, result):
        raise TraceError("internal error: search produced an invalid trace")
    return result


def as_lemma(trace: ProofTrace, name: str = "") -> Lemma:
    """Turn a proof of lhs = rhs into a lemma (lhs and rhs are reduced first)."""
    return Lemma(free_reduce(trace.lhs), free_reduce(trace.rhs), _normalize_ends(trace), name)


def _normalize_ends(trace: ProofTrace) -> ProofTrace:
    # The lemma machinery expects a trace from reduced lhs to reduced rhs.
    # Traces are exact on raw words, so pad with explicit (un)reductions.
    lhs, rhs = trace.lhs, trace.rhs
    if lhs.is_reduced() and rhs.is_reduced():
        return trace
    raise TraceError("lemma sides must be freely reduced words")


# ---------------------------------------------------------------------------
# Oriented rewriting tactic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    """Replace ``lhs`` by ``rhs``; lhs·rhs^-1 must be a lemma or relator conjugate."""

    lhs: Word
    rhs: Word


def rules_from_conjugation(lemma: Lemma, g: Word) -> list[RewriteRule]:
    """From g x g^-1 = φ(x), the push rules g x -> φ(x) g and g x^-1 -> φ(x)^-1 g."""
    x = free_reduce(g.inverse() * lemma.lhs * g)
    phi = lemma.rhs
    return [RewriteRule(g * x, phi * g), RewriteRule(g * x.inverse(), phi.inverse() * g)]


def rewrite_normalize(pres: Presentation, w: Word | str, rules: Sequence[RewriteRule],
                      lemmas: Sequence[Lemma] = (), max_steps: int = 10_000,
                      budget: SearchBudget = DEFAULT_BUDGET) -> tuple[Word, list[TraceStep], int]:
    """Apply rules at the rightmost match until none applies.

    Returns (normal form, trace steps from w, number of rewrites)."""
    w = as_word(w)
    big = SearchBudget(budget.max_states, 10 ** 9, budget.max_depth, 0)
    engine = _Engine(pres, lemmas, big)
    codec = engine.codec
    encoded = []
    for rule in rules:
        u, r = codec.encode(rule.lhs), codec.encode(rule.rhs)
        v = _inv(r)
        vid = engine.by_word.get(u + v)
        if vid is None:
            raise TraceError(f"rule {rule.lhs} -> {rule.rhs} is not backed by a relator or lemma")
        encoded.append((u, len(u), vid))
    raw = bytearray(codec.encode(w))
    steps = _reduce_steps(raw)
    cur = bytes(raw)
    count = 0
    while count < max_steps:
        best = None
        for u, k, vid in encoded:
            i = cur.rfind(u)
            if i >= 0 and (best is None or i > best[0]):
                best = (i, k, vid)
        if best is None:
            break
        s, cur = engine.move_steps(cur, best)
        steps += s
        count += 1
    return codec.decode(cur), steps, count


def prove_by_rewriting(pres: Presentation, w1: Word | str, w2: Word | str,
                       rules: Sequence[RewriteRule], lemmas: Sequence[Lemma] = (),
                       budget: SearchBudget = DEFAULT_BUDGET) -> ProofTrace | Unknown:
    """Normalize both sides with ``rules``; bridge any remaining gap by search."""
    w1, w2 = as_word(w1), as_word(w2)
    n1, s1, c1 = rewrite_normalize(pres, w1, rules, lemmas, budget=budget)
    n2, s2, c2 = rewrite_normalize(pres, w2, rules, lemmas, budget=budget)
    engine = _Engine(pres, lemmas, budget)
    codec = engine.codec
    if n1 == n2:
        bridge: ProofTrace | Unknown = ProofTrace(n1, n2, (), 0, 0)
    else:
        bridge = engine.search(n1, n2)
        if isinstance(bridge, Unknown):
            return bridge
    back = _invert_steps(codec.encode(w2), s2, engine.rels, codec)
    steps = tuple(s1) + bridge.steps + tuple(back)
    trace = ProofTrace(w1, w2, steps, c1 + c2 + bridge.moves, bridge.states,
                       tuple(l.name for l in lemmas if l.name))
    if not check_trace(pres, trace):
        raise TraceError("internal error: rewriting produced an invalid trace")
    return trace


# ---------------------------------------------------------------------------
# Disproof by invariants
# ---------------------------------------------------------------------------

class EqualityOracle(Protocol):
    name: str

    def image(self, w: Word): ...

    def equal_images(self, a, b) -> bool: ...


@dataclass(frozen=True)
class DisproofCertificate:
    oracle: str
    image_lhs: str
    image_rhs: str

    def to_json(self) -> dict:
        return {"oracle": self.oracle, "lhs_image": self.image_lhs, "rhs_image": self.image_rhs}


def disprove_equal(w1: Word | str, w2: Word | str,
                   oracles: Sequence[EqualityOracle]) -> DisproofCertificate | Unknown:
    """First oracle whose images of w1 and w2 differ; Unknown when all agree."""
    w1, w2 = as_word(w1), as_word(w2)
    for oracle in oracles:
        a, b = oracle.image(w1), oracle.image(w2)
        if not oracle.equal_images(a, b):
            return DisproofCertificate(oracle.name, str(a), str(b))
    return Unknown("all oracles agree")

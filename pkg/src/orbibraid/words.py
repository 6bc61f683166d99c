"""Letters, words, alphabets and the textual word grammar.

A word is a flat tuple of signed letters.  Each letter belongs to a named
family (``h``, ``t``, ``u``, ``a``, ``x``, ``σ`` ...) and carries a tuple of
integer indices.  The text grammar is::

    word     := item*
    item     := atom ('^' integer)?
    atom     := letter | '(' word ')'
    letter   := name (digits | '(' integer (',' integer)* ')')?

Exponents are expanded when parsing, so ``"u1^3"`` is three letters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Generator = tuple[str, tuple[int, ...]]

# Index arity of every family understood by the grammar.
FAMILY_ARITY: dict[str, int] = {
    "h": 1, "t": 1, "u": 1,
    "H": 1, "T": 1, "U": 1,
    "a": 2, "b": 2, "c": 2,
    "A": 2, "B": 2, "C": 2,
    "x": 1, "y": 1, "z": 1,
    "σ": 1, "g": 1,
}

NAME_ALIASES = {"s": "σ", "sigma": "σ"}


class WordError(ValueError):
    """Base class for word-level errors."""


class WordSyntaxError(WordError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class AlphabetError(WordError):
    """A letter is outside the alphabet it is used with."""


class AssignmentError(WordError):
    """A substitution lacks an image for some generator."""


@dataclass(frozen=True, slots=True)
class Letter:
    family: str
    indices: tuple[int, ...] = ()
    sign: int = 1

    @property
    def generator(self) -> Generator:
        return (self.family, self.indices)

    def inverse(self) -> "Letter":
        return Letter(self.family, self.indices, -self.sign)

    def is_inverse_of(self, other: "Letter") -> bool:
        return (self.family == other.family and self.indices == other.indices
                and self.sign == -other.sign)

    def base_text(self) -> str:
        return generator_text(self.generator)

    def __str__(self) -> str:
        return self.base_text() + ("" if self.sign > 0 else "^-1")


def generator_text(gen: Generator) -> str:
    family, indices = gen
    if not indices:
        return family
    if len(indices) == 1:
        return f"{family}{indices[0]}"
    return f"{family}({','.join(str(i) for i in indices)})"


def letter(family: str, *indices: int, sign: int = 1) -> Letter:
    return Letter(family, tuple(indices), sign)


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, *parts: Union["Word", Letter]) -> "Word":
        out: list[Letter] = []
        for part in parts:
            if isinstance(part, Letter):
                out.append(part)
            else:
                out.extend(part.letters)
        return cls(tuple(out))

    @classmethod
    def gen(cls, family: str, *indices: int, power: int = 1) -> "Word":
        base = Letter(family, tuple(indices), 1 if power >= 0 else -1)
        return cls((base,) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k >= 0:
            return Word(self.letters * k)
        return Word(self.inverse().letters * (-k))

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def reduced(self) -> "Word":
        return free_reduce(self)

    def is_reduced(self) -> bool:
        return all(not a.is_inverse_of(b) for a, b in zip(self.letters, self.letters[1:]))

    def generators(self) -> set[Generator]:
        return {l.generator for l in self.letters}

    def families(self) -> set[str]:
        return {l.family for l in self.letters}

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return Word.of(x, y, x.inverse(), y.inverse())


def conj(g: Word, w: Word) -> Word:
    """g w g^-1, not reduced."""
    return Word.of(g, w, g.inverse())


def free_reduce(w: Word | Sequence[Letter]) -> Word:
    letters = w.letters if isinstance(w, Word) else tuple(w)
    stack: list[Letter] = []
    for l in letters:
        if stack and stack[-1].is_inverse_of(l):
            stack.pop()
        else:
            stack.append(l)
    return Word(tuple(stack))


Assignment = Union[Mapping[Generator, Word], Callable[[Generator], Word]]


def substitute(w: Word, assignment: Assignment) -> Word:
    """Letterwise image of ``w``; inverse letters map to inverse images."""
    lookup = assignment if callable(assignment) else None
    cache: dict[Generator, Word] = {}
    out: list[Letter] = []
    for l in w.letters:
        gen = l.generator
        image = cache.get(gen)
        if image is None:
            try:
                image = lookup(gen) if lookup else assignment[gen]  # type: ignore[index]
            except KeyError:
                raise AssignmentError(f"no image for generator {generator_text(gen)}") from None
            if image is None:
                raise AssignmentError(f"no image for generator {generator_text(gen)}")
            cache[gen] = image
        out.extend(image.letters if l.sign > 0 else image.inverse().letters)
    return free_reduce(out)


def compose_assignments(first: Mapping[Generator, Word], second: Assignment) -> dict[Generator, Word]:
    """Assignment equivalent to applying ``first`` and then ``second``."""
    return {g: substitute(w, second) for g, w in first.items()}


# ---------------------------------------------------------------------------
# Group parameters and alphabets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupParams:
    """The tuple (n, L, N, m_1..m_N) indexing every group family."""

    n: int
    L: int = 0
    N: int = 0
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(m) for m in self.orders))
        if self.n < 1:
            raise ValueError(f"strand count must be >= 1, got {self.n}")
        if self.L < 0 or self.N < 0:
            raise ValueError("puncture and cone counts must be >= 0")
        if len(self.orders) != self.N:
            raise ValueError(f"expected {self.N} cyclic orders, got {len(self.orders)}")
        if any(m < 2 for m in self.orders):
            raise ValueError("every cyclic order must be >= 2")

    def m(self, nu: int) -> int:
        return self.orders[nu - 1]

    @classmethod
    def from_json(cls, data: Mapping) -> "GroupParams":
        orders = tuple(data.get("m", ()))
        return cls(int(data["n"]), int(data.get("L", 0)), int(data.get("N", len(orders))), orders)

    def to_json(self) -> dict:
        return {"n": self.n, "L": self.L, "N": self.N, "m": list(self.orders)}

    def __str__(self) -> str:
        return f"(n={self.n}, L={self.L}, N={self.N}, m={self.orders})"


@dataclass(frozen=True)
class Alphabet:
    """An ordered generator list; families are derived from it."""

    generators: tuple[Generator, ...]
    _index: dict[Generator, int] = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.generators)})
        if len(self._index) != len(self.generators):
            raise AlphabetError("duplicate generator in alphabet")

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, gen: Generator) -> bool:
        return gen in self._index

    def index(self, gen: Generator) -> int:
        try:
            return self._index[gen]
        except KeyError:
            raise AlphabetError(f"generator {generator_text(gen)} not in alphabet") from None

    @property
    def families(self) -> list[tuple[str, int, tuple[tuple[int, int], ...]]]:
        """(family, arity, per-index (min, max) bounds) in first-seen order."""
        seen: dict[str, list[tuple[int, ...]]] = {}
        for fam, idx in self.generators:
            seen.setdefault(fam, []).append(idx)
        out = []
        for fam, idxs in seen.items():
            arity = len(idxs[0])
            bounds = tuple((min(i[k] for i in idxs), max(i[k] for i in idxs)) for k in range(arity))
            out.append((fam, arity, bounds))
        return out

    def validate(self, w: Word) -> Word:
        for l in w.letters:
            if l.generator not in self._index:
                raise AlphabetError(f"letter {l.base_text()} not in alphabet")
        return w

    def letters(self) -> list[Word]:
        return [Word((Letter(f, i, 1),)) for f, i in self.generators]

    def __add__(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.generators + tuple(g for g in other.generators if g not in self._index))


def _gens(family: str, indices: Iterable) -> tuple[Generator, ...]:
    return tuple((family, tuple(i) if isinstance(i, tuple) else (i,)) for i in indices)


def braid_alphabet(p: GroupParams, upper: bool = False) -> Alphabet:
    """h_1..h_{n-1}, t_1..t_L, u_1..u_N (H/T/U when ``upper``)."""
    h, t, u = ("H", "T", "U") if upper else ("h", "t", "u")
    return Alphabet(_gens(h, range(1, p.n)) + _gens(t, range(1, p.L + 1))
                    + _gens(u, range(1, p.N + 1)))


def pure_alphabet(p: GroupParams, upper: bool = False, below: int | None = None) -> Alphabet:
    """a(j,i), b(k,λ), c(k,ν) with strand indices up to ``below`` (default n)."""
    a, b, c = ("A", "B", "C") if upper else ("a", "b", "c")
    n = p.n if below is None else below
    gens = _gens(a, [(j, i) for j in range(2, n + 1) for i in range(1, j)])
    gens += _gens(b, [(k, lam) for k in range(1, n + 1) for lam in range(1, p.L + 1)])
    gens += _gens(c, [(k, nu) for k in range(1, n + 1) for nu in range(1, p.N + 1)])
    return Alphabet(gens)


def point_alphabet(p: GroupParams) -> Alphabet:
    """x_1..x_{n-1}, y_1..y_L, z_1..z_N: generators of F_{n-1+L} * Γ."""
    return Alphabet(_gens("x", range(1, p.n)) + _gens("y", range(1, p.L + 1))
                    + _gens("z", range(1, p.N + 1)))


def sigma_alphabet(total: int) -> Alphabet:
    return Alphabet(_gens("σ", range(1, total)))


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> WordSyntaxError:
        p = self.pos if pos is None else pos
        return WordSyntaxError(message, len(self.text[:p].encode("utf-8")))

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse_word(self, closing: str | None) -> list[Letter]:
        out: list[Letter] = []
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch == "":
                if closing:
                    raise self.error(f"expected '{closing}'")
                return out
            if ch == closing:
                return out
            out.extend(self.parse_item())

    def parse_item(self) -> list[Letter]:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            body = self.parse_word(")")
            self.pos += 1
        elif ch.isalpha() or ch == "_":
            body = [self.parse_letter()]
        else:
            raise self.error(f"unexpected character {ch!r}")
        if self.peek() == "^":
            self.pos += 1
            k = self.parse_int()
            if k < 0:
                body = [l.inverse() for l in reversed(body)]
            body = body * abs(k)
        return body

    def parse_int(self) -> int:
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.peek().isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "+", "-"):
            raise self.error("expected integer", start)
        return int(digits)

    def parse_letter(self) -> Letter:
        start = self.pos
        while self.peek().isalpha() or self.peek() == "_":
            self.pos += 1
        name = NAME_ALIASES.get(self.text[start:self.pos], self.text[start:self.pos])
        indices: tuple[int, ...] = ()
        if self.peek().isdigit():
            istart = self.pos
            while self.peek().isdigit():
                self.pos += 1
            indices = (int(self.text[istart:self.pos]),)
        elif self.peek() == "(":
            self.pos += 1
            vals = []
            while True:
                self.skip_ws()
                vals.append(self.parse_int())
                self.skip_ws()
                if self.peek() == ",":
                    self.pos += 1
                    continue
                if self.peek() == ")":
                    self.pos += 1
                    break
                raise self.error("expected ',' or ')' in index list")
            indices = tuple(vals)
        arity = FAMILY_ARITY.get(name)
        if arity is None:
            raise self.error(f"unknown letter family {name!r}", start)
        if arity != len(indices):
            raise self.error(f"family {name!r} takes {arity} indices", start)
        return Letter(name, indices, 1)


def parse(text: str) -> Word:
    """Parse the word grammar; exponents are expanded, no reduction applied."""
    return Word(tuple(_Parser(text).parse_word(None)))


def format_word(w: Word) -> str:
    """Canonical text; runs of one letter are written with an exponent."""
    parts: list[str] = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j + 1 < len(letters) and letters[j + 1] == letters[i]:
            j += 1
        run = (j - i + 1) * letters[i].sign
        base = letters[i].base_text()
        parts.append(base if run == 1 else f"{base}^{run}")
        i = j + 1
    return " ".join(parts)


def as_word(w: Union[str, Word]) -> Word:
    return parse(w) if isinstance(w, str) else w

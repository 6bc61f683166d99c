"""Syllable normal forms in F_k * Z_{m_1} * ... * Z_{m_N}.

Free generators are numbered 1..k; the first ``n_x`` of them print as
``x_j`` and the rest as ``y_λ``.  Cyclic factors print as ``z_ν``.
Cyclic exponents are kept in 1..m_ν-1, which makes the normal form unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .words import AlphabetError, GroupParams, Letter, Word, parse

FREE, CYCLIC = 0, 1

Syllable = tuple[int, int, int]  # (kind, index, exponent)


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class FreeProductElement:
    syllables: tuple[Syllable, ...]
    free_rank: int
    orders: tuple[int, ...]
    n_x: int | None = None

    def __post_init__(self):
        if self.n_x is None:
            object.__setattr__(self, "n_x", self.free_rank)

    @property
    def signature(self) -> tuple[int, tuple[int, ...], int]:
        return (self.free_rank, self.orders, self.n_x)

    def is_identity(self) -> bool:
        return not self.syllables

    def inverse(self) -> "FreeProductElement":
        inv = []
        for kind, idx, e in reversed(self.syllables):
            inv.append((kind, idx, -e if kind == FREE else self.orders[idx - 1] - e))
        return FreeProductElement(tuple(inv), self.free_rank, self.orders, self.n_x)

    def __mul__(self, other: "FreeProductElement") -> "FreeProductElement":
        return nf_multiply(self, other)

    def __pow__(self, k: int) -> "FreeProductElement":
        base = self if k >= 0 else self.inverse()
        out = identity(self.free_rank, self.orders, self.n_x)
        for _ in range(abs(k)):
            out = nf_multiply(out, base)
        return out

    def to_word(self) -> Word:
        letters: list[Letter] = []
        for kind, idx, e in self.syllables:
            if kind == FREE:
                fam, i = ("x", idx) if idx <= self.n_x else ("y", idx - self.n_x)
            else:
                fam, i = "z", idx
            letters.extend([Letter(fam, (i,), 1 if e > 0 else -1)] * abs(e))
        return Word(tuple(letters))

    def __str__(self) -> str:
        return str(self.to_word())

    def __len__(self) -> int:
        return len(self.syllables)


def identity(free_rank: int = 0, orders: Iterable[int] = (), n_x: int | None = None) -> FreeProductElement:
    return FreeProductElement((), free_rank, tuple(orders), n_x)


def _push(stack: list[Syllable], syl: Syllable, orders: tuple[int, ...]) -> None:
    kind, idx, e = syl
    if stack and stack[-1][0] == kind and stack[-1][1] == idx:
        e += stack.pop()[2]
    if kind == CYCLIC:
        e %= orders[idx - 1]
    if e:
        stack.append((kind, idx, e))


def nf_multiply(a: FreeProductElement, b: FreeProductElement) -> FreeProductElement:
    if a.signature != b.signature:
        raise ParameterError("free product elements live in different groups")
    stack = list(a.syllables)
    for syl in b.syllables:
        _push(stack, syl, a.orders)
    return FreeProductElement(tuple(stack), a.free_rank, a.orders, a.n_x)


def is_identity(a: FreeProductElement) -> bool:
    return not a.syllables


@dataclass(frozen=True)
class FreeProductLayout:
    """Which letters evaluate to which factor: x_1..x_{n_x}, y_1..y_{n_y}, z_1..z_N."""

    n_x: int
    n_y: int
    orders: tuple[int, ...]

    @classmethod
    def for_params(cls, p: GroupParams) -> "FreeProductLayout":
        """The group F_{n-1+L} * Γ."""
        return cls(p.n - 1, p.L, p.orders)

    @property
    def free_rank(self) -> int:
        return self.n_x + self.n_y

    def identity(self) -> FreeProductElement:
        return identity(self.free_rank, self.orders, self.n_x)

    def syllable_of(self, l: Letter) -> Syllable:
        if len(l.indices) == 1:
            i = l.indices[0]
            if l.family == "x" and 1 <= i <= self.n_x:
                return (FREE, i, l.sign)
            if l.family == "y" and 1 <= i <= self.n_y:
                return (FREE, self.n_x + i, l.sign)
            if l.family == "z" and 1 <= i <= len(self.orders):
                return (CYCLIC, i, l.sign % self.orders[i - 1])
        raise AlphabetError(f"letter {l} is not a generator of this free product")


def nf_of_word(w: Word | str, layout: FreeProductLayout) -> FreeProductElement:
    """Evaluate a word over x/y/z letters eagerly into normal form."""
    if isinstance(w, str):
        w = parse(w)
    stack: list[Syllable] = []
    for l in w.letters:
        _push(stack, layout.syllable_of(l), layout.orders)
    return FreeProductElement(tuple(stack), layout.free_rank, layout.orders, layout.n_x)

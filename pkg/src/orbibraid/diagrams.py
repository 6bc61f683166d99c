"""Orbifold braid diagrams as event sequences: codec, permutation, moves, rendering.

Each generator becomes a block of events read top to bottom:

* ``h_j^ε``  -> ``StrandCross(j, ε)`` (ε = +1: strand at position j passes over);
* ``t_λ``    -> strand 1 passes over punctures 1..λ-1, goes over then under
  puncture λ, and passes back over λ-1..1; ``t_λ^-1`` swaps the pair at λ;
* ``u_ν^ε``  -> ``GammaLeap(1, ν, ε)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .words import AlphabetError, GroupParams, Letter, Word, WordError, as_word


class DiagramError(WordError):
    pass


class SiteMismatch(DiagramError):
    pass


@dataclass(frozen=True)
class StrandCross:
    position: int
    sign: int


@dataclass(frozen=True)
class PunctureCross:
    strand: int
    puncture: int
    over: bool


@dataclass(frozen=True)
class GammaLeap:
    strand: int
    cone: int
    exponent: int


DiagramEvent = Union[StrandCross, PunctureCross, GammaLeap]


@dataclass(frozen=True)
class Diagram:
    params: GroupParams
    events: tuple[DiagramEvent, ...] = ()

    def __post_init__(self):
        p = self.params
        for e in self.events:
            if isinstance(e, StrandCross):
                ok = 1 <= e.position < p.n and e.sign in (1, -1)
            elif isinstance(e, PunctureCross):
                ok = 1 <= e.strand <= p.n and 1 <= e.puncture <= p.L
            elif isinstance(e, GammaLeap):
                ok = 1 <= e.strand <= p.n and 1 <= e.cone <= p.N and e.exponent in (1, -1)
            else:
                ok = False
            if not ok:
                raise DiagramError(f"event {e} is invalid for {p}")

    def __len__(self) -> int:
        return len(self.events)


def _t_block(lam: int, sign: int) -> list[DiagramEvent]:
    pair = [PunctureCross(1, lam, True), PunctureCross(1, lam, False)]
    if sign < 0:
        pair.reverse()
    return ([PunctureCross(1, mu, True) for mu in range(1, lam)] + pair
            + [PunctureCross(1, mu, True) for mu in range(lam - 1, 0, -1)])


def letter_block(l: Letter, p: GroupParams) -> list[DiagramEvent]:
    (idx,) = l.indices if len(l.indices) == 1 else (0,)
    if l.family == "h" and 1 <= idx < p.n:
        return [StrandCross(idx, l.sign)]
    if l.family == "t" and 1 <= idx <= p.L:
        return _t_block(idx, l.sign)
    if l.family == "u" and 1 <= idx <= p.N:
        return [GammaLeap(1, idx, l.sign)]
    raise AlphabetError(f"letter {l} is not an h/t/u generator for {p}")


def word_to_diagram(w: Word | str, p: GroupParams) -> Diagram:
    events: list[DiagramEvent] = []
    for l in as_word(w).letters:
        events.extend(letter_block(l, p))
    return Diagram(p, tuple(events))


def diagram_to_word(d: Diagram) -> Word:
    """Decode generator blocks; raises DiagramError on any other event pattern."""
    ev = d.events
    out: list[Letter] = []
    i = 0
    while i < len(ev):
        e = ev[i]
        if isinstance(e, StrandCross):
            out.append(Letter("h", (e.position,), e.sign))
            i += 1
        elif isinstance(e, GammaLeap):
            if e.strand != 1:
                raise DiagramError(f"Γ-leap on strand {e.strand} at event {i} is not a generator block")
            out.append(Letter("u", (e.cone,), e.exponent))
            i += 1
        else:
            lam = None
            j = i
            while j + 1 < len(ev) and isinstance(ev[j + 1], PunctureCross):
                if ev[j + 1].puncture == ev[j].puncture:
                    lam = ev[j].puncture
                    break
                j += 1
            if lam is None:
                raise DiagramError(f"unterminated puncture block at event {i}")
            block = list(ev[i:i + 2 * lam])
            sign = 1 if block == _t_block(lam, 1) else -1 if block == _t_block(lam, -1) else 0
            if not sign:
                raise DiagramError(f"malformed puncture block at event {i}")
            out.append(Letter("t", (lam,), sign))
            i += 2 * lam
    return Word(tuple(out))


def permutation(d: Diagram) -> tuple[int, ...]:
    """Composite of the crossing transpositions, last event applied first.

    ``perm[i-1]`` is the image of i; this matches the permutation homomorphism."""
    perm = list(range(1, d.params.n + 1))
    for e in reversed(d.events):
        if isinstance(e, StrandCross):
            j = e.position
            perm = [j + 1 if v == j else j if v == j + 1 else v for v in perm]
    return tuple(perm)


def strand_at(d: Diagram, index: int, position: int = 1) -> int:
    """Label (starting position) of the strand occupying ``position`` just before event ``index``."""
    at = list(range(1, d.params.n + 1))  # at[pos-1] = strand label
    for e in d.events[:index]:
        if isinstance(e, StrandCross):
            j = e.position
            at[j - 1], at[j] = at[j], at[j - 1]
    return at[position - 1]


# ---------------------------------------------------------------------------
# Orbifold Reidemeister move
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReidemeisterSite:
    """Where to delete (or insert) m_ν consecutive Γ-leaps around cone ν."""

    index: int
    cone: int
    insert: bool = False
    sign: int = 1


def apply_orbifold_reidemeister(d: Diagram, site: ReidemeisterSite) -> Diagram:
    p = d.params
    if not 1 <= site.cone <= p.N or site.sign not in (1, -1):
        raise SiteMismatch(f"cone {site.cone} / sign {site.sign} invalid for {p}")
    m = p.m(site.cone)
    leap = GammaLeap(1, site.cone, site.sign)
    if not 0 <= site.index <= len(d.events):
        raise SiteMismatch(f"site index {site.index} outside the diagram")
    if site.insert:
        events = d.events[:site.index] + (leap,) * m + d.events[site.index:]
    else:
        if d.events[site.index:site.index + m] != (leap,) * m:
            raise SiteMismatch(f"no run of {m} leaps {leap} at event {site.index}")
        events = d.events[:site.index] + d.events[site.index + m:]
    return Diagram(p, events)


def find_sites(d: Diagram, strand: int | None = None) -> list[ReidemeisterSite]:
    """Deletable runs of m_ν equal leaps, optionally only those on a given strand."""
    sites = []
    p = d.params
    for i, e in enumerate(d.events):
        if isinstance(e, GammaLeap):
            m = p.m(e.cone)
            if d.events[i:i + m] == (e,) * m and (strand is None or strand_at(d, i) == strand):
                sites.append(ReidemeisterSite(i, e.cone, False, e.exponent))
    return sites


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _x_of(p: GroupParams, kind: str, idx: int) -> int:
    if kind == "cone":
        return -p.L - idx
    if kind == "puncture":
        return -idx
    return idx


def _event_label(e: DiagramEvent) -> str:
    if isinstance(e, StrandCross):
        return f"h{e.position}{'' if e.sign > 0 else '^-1'}"
    if isinstance(e, PunctureCross):
        return f"strand {e.strand} {'over' if e.over else 'under'} puncture {e.puncture}"
    return f"leap strand {e.strand} around cone {e.cone} ({'+' if e.exponent > 0 else '-'})"


def render_ascii(d: Diagram) -> str:
    p = d.params
    xmin = -p.L - p.N
    xs = list(range(xmin, p.n + 1))
    col = {x: 4 * (x - xmin) for x in xs}
    width = col[p.n] + 1

    def blank() -> list[str]:
        row = [" "] * width
        for nu in range(1, p.N + 1):
            row[col[_x_of(p, "cone", nu)]] = "!"
        for lam in range(1, p.L + 1):
            row[col[_x_of(p, "puncture", lam)]] = ":"
        for j in range(1, p.n + 1):
            row[col[j]] = "|"
        return row

    header = [" "] * width
    for nu in range(1, p.N + 1):
        _put(header, col[_x_of(p, "cone", nu)], f"c{nu}")
    for lam in range(1, p.L + 1):
        _put(header, col[_x_of(p, "puncture", lam)], f"p{lam}")
    for j in range(1, p.n + 1):
        _put(header, col[j], str(j))
    lines = ["".join(header).rstrip(), "".join(blank()).rstrip()]
    for e in d.events:
        row = blank()
        if isinstance(e, StrandCross):
            a, b = col[e.position], col[e.position + 1]
            row[a], row[b] = ("\\", "/") if e.sign > 0 else ("/", "\\")
            row[(a + b) // 2] = "X" if e.sign > 0 else "x"
        elif isinstance(e, PunctureCross):
            a, b = col[_x_of(p, "puncture", e.puncture)], col[e.strand]
            for c in range(a + 1, b):
                if row[c] == " ":
                    row[c] = "-"
            row[a] = "=" if e.over else "+"
        else:
            a, b = col[_x_of(p, "cone", e.cone)], col[e.strand]
            for c in range(a + 1, b):
                if row[c] == " ":
                    row[c] = "~"
            row[a] = "@" if e.exponent > 0 else "o"
        lines.append(("".join(row)).rstrip() + "    " + _event_label(e))
    lines.append("".join(blank()).rstrip())
    return "\n".join(lines) + "\n"


def _put(row: list[str], at: int, text: str) -> None:
    for k, ch in enumerate(text):
        if 0 <= at + k < len(row):
            row[at + k] = ch


def render_svg(d: Diagram) -> str:
    p = d.params
    unit, slot, margin = 60, 40, 40
    xmin = -p.L - p.N

    def X(x: int) -> int:
        return margin + unit * (x - xmin)

    height = 2 * margin + slot * max(1, len(d.events))
    width = 2 * margin + unit * (p.n - xmin)
    top, bottom = margin, height - margin
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    for nu in range(1, p.N + 1):
        x = X(_x_of(p, "cone", nu))
        out.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}" stroke="red" stroke-width="3"/>')
        out.append(f'<polygon points="{x - 6},{top} {x + 6},{top} {x},{top - 12}" fill="red"/>')
        out.append(f'<text x="{x}" y="{top - 16}" font-size="12" text-anchor="middle">c{nu}</text>')
    for lam in range(1, p.L + 1):
        x = X(_x_of(p, "puncture", lam))
        out.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}" stroke="blue" stroke-width="3"/>')
        out.append(f'<text x="{x}" y="{top - 16}" font-size="12" text-anchor="middle">p{lam}</text>')
    for j in range(1, p.n + 1):
        out.append(f'<text x="{X(j)}" y="{top - 16}" font-size="12" text-anchor="middle">{j}</text>')
    if not d.events:
        for j in range(1, p.n + 1):
            out.append(f'<line x1="{X(j)}" y1="{top}" x2="{X(j)}" y2="{bottom}" stroke="black" stroke-width="2"/>')
    for k, e in enumerate(d.events):
        y0, y1 = top + slot * k, top + slot * (k + 1)
        ym = (y0 + y1) // 2
        busy: set[int] = set()
        if isinstance(e, StrandCross):
            a, b = X(e.position), X(e.position + 1)
            busy = {e.position, e.position + 1}
            over, under = ((a, b), (b, a)) if e.sign > 0 else ((b, a), (a, b))
            out.append(f'<line x1="{under[0]}" y1="{y0}" x2="{under[1]}" y2="{y1}" stroke="black" stroke-width="2"/>')
            out.append(f'<line x1="{over[0]}" y1="{y0}" x2="{over[1]}" y2="{y1}" stroke="white" stroke-width="8"/>')
            out.append(f'<line x1="{over[0]}" y1="{y0}" x2="{over[1]}" y2="{y1}" stroke="black" stroke-width="2"/>')
        elif isinstance(e, PunctureCross):
            s, q = X(e.strand), X(_x_of(p, "puncture", e.puncture))
            busy = {e.strand}
            dash = "" if e.over else ' stroke-dasharray="4,3"'
            out.append(f'<path d="M {s} {y0} C {q} {y0}, {q} {y1}, {s} {y1}" fill="none" '
                       f'stroke="black" stroke-width="2"{dash}/>')
        else:
            s, q = X(e.strand), X(_x_of(p, "cone", e.cone))
            busy = {e.strand}
            out.append(f'<path d="M {s} {y0} Q {q} {ym}, {s} {y1}" fill="none" stroke="black" stroke-width="2"/>')
            out.append(f'<text x="{q + 6}" y="{ym + 4}" font-size="11" fill="red">{"+" if e.exponent > 0 else "-"}</text>')
        for j in range(1, p.n + 1):
            if j not in busy:
                out.append(f'<line x1="{X(j)}" y1="{y0}" x2="{X(j)}" y2="{y1}" stroke="black" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(d: Diagram, fmt: str = "svg") -> str:
    if fmt == "svg":
        return render_svg(d)
    if fmt == "ascii":
        return render_ascii(d)
    raise ValueError(f"unknown render format {fmt!r}")

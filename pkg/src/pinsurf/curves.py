"""Curves on a one-vertex ribbon graph and their holonomy invariants.

The surface is a disk with one band per generator (cap the boundary to get
the closed surface).  Band ends sit at evenly spaced slots around the disk:

* crosscap c_i: ends adjacent, band twisted
* handle a_i, b_i: ends interleaved a b a b, untwisted
* radical d_i: ends adjacent, untwisted

A curve is a cyclic word in the generators.  Each letter runs through a
band; between letters the curve crosses the disk along a chord.  Strands
sharing a band are stacked in the counterclockwise order of (word, letter)
at end 0 and in the reverse order at end 1; a twisted band therefore
carries C(k, 2) crossings and an untwisted one none.

Holonomy is computed by transporting the tangent frame through the
extension of O(2) belonging to the structure type, with exact rational
angles (units of pi).  A structure is a cochain of Z/4 values per band;
the total holonomy is the sum of the letter values plus twice a rotation
correction that only depends on how the curve turns inside the disk.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .extensions import representative
from .forms import QForm, StructureType
from .homology import HClass, HomologyModel

Letter = tuple[int, int]  # (generator index, +1 or -1)
Word = tuple[Letter, ...]


# -- words --------------------------------------------------------------------


def reduce(word: Sequence[Letter]) -> Word:
    """Free and cyclic reduction."""
    stack: list[Letter] = []
    for g, e in word:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] == (stack[hi - 1][0], -stack[hi - 1][1]):
        lo += 1
        hi -= 1
    return tuple(stack[lo:hi])


def is_reduced(word: Sequence[Letter]) -> bool:
    return tuple(word) == reduce(word)


def inverse(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


@dataclass(frozen=True)
class CurveSystem:
    words: tuple[Word, ...]

    @classmethod
    def of(cls, words: Iterable[Sequence[Letter]]) -> "CurveSystem":
        reduced = (reduce(w) for w in words)
        return cls(tuple(w for w in reduced if w))

    @property
    def n(self) -> int:
        return len(self.words)

    @property
    def length(self) -> int:
        return sum(len(w) for w in self.words)


_LETTER_RE = re.compile(r"^([A-Za-z]+\d*)(\^-1|')?$")


def parse_words(text: str, model: HomologyModel) -> CurveSystem:
    """Parse ``"c1,c2;c1^-1"``: words separated by ';', letters by ','."""
    index = {name: i for i, name in enumerate(model.generators)}
    words = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        word = []
        for token in chunk.split(","):
            m = _LETTER_RE.match(token.strip())
            if m is None or m.group(1) not in index:
                raise ValueError(f"unknown letter {token.strip()!r} on {model.spec}")
            word.append((index[m.group(1)], -1 if m.group(2) else 1))
        words.append(word)
    return CurveSystem.of(words)


def format_words(S: CurveSystem, model: HomologyModel) -> str:
    return ";".join(
        ",".join(model.generators[g] + ("" if e > 0 else "^-1") for g, e in w) for w in S.words
    )


# -- ribbon model -------------------------------------------------------------


@dataclass(frozen=True)
class RibbonModel:
    model: HomologyModel
    slots: tuple[tuple[int, int], ...]  # counterclockwise (band, end)
    twisted: tuple[bool, ...]

    @cached_property
    def slot_of(self) -> dict[tuple[int, int], int]:
        return {s: i for i, s in enumerate(self.slots)}

    def angle(self, band: int, end: int) -> Fraction:
        """Angle of a band end in units of pi."""
        return Fraction(2 * self.slot_of[(band, end)], len(self.slots))


@lru_cache(maxsize=None)
def ribbon_model(model: HomologyModel) -> RibbonModel:
    slots = []
    names = model.generators
    i = 0
    while i < len(names):
        name = names[i]
        if name.startswith("a"):
            slots += [(i, 0), (i + 1, 0), (i, 1), (i + 1, 1)]
            i += 2
        else:
            slots += [(i, 0), (i, 1)]
            i += 1
    twisted = tuple(bool(w) for w in model.w1)
    rm = RibbonModel(model, tuple(slots), twisted)
    for g in range(model.rank):
        assert sum(1 for b, _ in slots if b == g) == 2
    return rm


def _ends(letter: Letter) -> tuple[int, int]:
    """(exit end, arrival end) of a letter."""
    return (0, 1) if letter[1] > 0 else (1, 0)


@dataclass(frozen=True)
class _Drawing:
    chords: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # endpoint keys
    band_crossings: int


def _draw(rm: RibbonModel, S: CurveSystem) -> _Drawing:
    # strands per band, stacked by (word, letter) at end 0
    strands: dict[int, list[tuple[int, int]]] = {}
    for wi, w in enumerate(S.words):
        for li, (g, _) in enumerate(w):
            strands.setdefault(g, []).append((wi, li))
    position: dict[tuple[int, int, int], int] = {}  # (word, letter, end) -> sub-slot
    for g, lst in strands.items():
        k = len(lst)
        for p, (wi, li) in enumerate(lst):
            position[(wi, li, 0)] = p
            position[(wi, li, 1)] = k - 1 - p

    def key(wi, li, end):
        g = S.words[wi][li][0]
        return (rm.slot_of[(g, end)], position[(wi, li, end)])

    chords = []
    for wi, w in enumerate(S.words):
        k = len(w)
        for li in range(k):
            nxt = (li + 1) % k
            arrive = key(wi, li, _ends(w[li])[1])
            leave = key(wi, nxt, _ends(w[nxt])[0])
            chords.append((arrive, leave))
    band = sum(len(lst) * (len(lst) - 1) // 2 for g, lst in strands.items() if rm.twisted[g])
    return _Drawing(tuple(chords), band)


def _interleave(c1, c2) -> bool:
    a, b = sorted(c1)
    x, y = sorted(c2)
    return (a < x < b) != (a < y < b)


def self_intersections(rm: RibbonModel, S: CurveSystem) -> int:
    d = _draw(rm, S)
    disk = sum(1 for c1, c2 in itertools.combinations(d.chords, 2) if _interleave(c1, c2))
    return disk + d.band_crossings


def mutual_intersections(rm: RibbonModel, S1: CurveSystem, S2: CurveSystem) -> int:
    """Crossings between the two systems when drawn together."""
    return _mutual(rm, CurveSystem(S1.words + S2.words), len(S1.words))


def _mutual(rm: RibbonModel, both: CurveSystem, split: int) -> int:
    d = _draw(rm, both)
    owner = []
    for wi, w in enumerate(both.words):
        owner += [wi < split] * len(w)
    disk = sum(
        1
        for (i, c1), (j, c2) in itertools.combinations(enumerate(d.chords), 2)
        if owner[i] != owner[j] and _interleave(c1, c2)
    )
    band = 0
    counts: dict[int, list[int]] = {}
    for wi, w in enumerate(both.words):
        for g, _ in w:
            counts.setdefault(g, [0, 0])[0 if wi < split else 1] += 1
    for g, (x, y) in counts.items():
        if rm.twisted[g]:
            band += x * y
    return disk + band


# -- frame transport in the extension of O(2) ----------------------------------


@dataclass(frozen=True)
class _Elem:
    """R(theta) z^k e^s with theta in [0, 2) units of pi."""

    theta: Fraction
    k: int
    s: int


class FrameGroup:
    """The Z/2-extension of O(2) with characteristic class a*w2 + b*w1^2.

    Rotation by 2*pi lifts to z^a; the reflection lift e satisfies e^2 = z^b
    and e R(t) e^-1 = R(-t).
    """

    def __init__(self, stype: StructureType):
        self.a, self.b = stype.value

    def make(self, theta, k=0, s=0) -> _Elem:
        theta = Fraction(theta)
        turns = theta // 2
        return _Elem(theta - 2 * turns, (k + self.a * int(turns)) % 2, s % 2)

    def one(self) -> _Elem:
        return _Elem(Fraction(0), 0, 0)

    def mul(self, x: _Elem, y: _Elem) -> _Elem:
        theta = x.theta + (-y.theta if x.s else y.theta)
        return self.make(theta, x.k + y.k + self.b * x.s * y.s, x.s + y.s)

    def inv(self, x: _Elem) -> _Elem:
        if x.s == 0:
            return self.make(-x.theta, x.k, 0)
        return self.make(x.theta, x.k + self.b, 1)


@lru_cache(maxsize=None)
def _word_holonomy(rm: RibbonModel, word: Word, stype: StructureType) -> int:
    """Holonomy of the tangent-framed word with all band lifts at their reference."""
    G = FrameGroup(stype)

    def glue(g: int, end: int) -> _Elem:
        # band coordinates -> disk coordinates at the given end
        if end == 0:
            return G.make(rm.angle(g, 0))
        return G.make(rm.angle(g, 1) + 1, 0, int(rm.twisted[g]))

    M = G.one()
    k = len(word)
    for j in range(k):
        g, e = word[j]
        out_end, in_end = _ends(word[j])
        transfer = G.mul(glue(g, in_end), G.inv(glue(g, out_end)))
        ng, _ = word[(j + 1) % k]
        nxt_out = _ends(word[(j + 1) % k])[0]
        delta = (rm.angle(ng, nxt_out) - rm.angle(g, in_end)) % 2
        turn = G.make(delta - 1)
        M = G.mul(G.mul(turn, transfer), M)
    g0, _ = word[0]
    start = G.make(rm.angle(g0, _ends(word[0])[0]))
    rho = G.mul(G.mul(G.inv(start), M), start)
    if rho.theta != 0:
        raise AssertionError(f"frame did not close up along {word}")
    return rho.s + 2 * rho.k


def _reference_letter(rm: RibbonModel, letter: Letter, stype: StructureType) -> int:
    g, e = letter
    value = _word_holonomy(rm, ((g, 1),), stype)
    return value if e > 0 else -value % 4


def rotation_correction(rm: RibbonModel, word: Word, stype: StructureType) -> int:
    """Half the gap between the frame holonomy of a word and the sum of its letters, mod 2."""
    gap = _word_holonomy(rm, word, stype) - sum(_reference_letter(rm, x, stype) for x in word)
    assert gap % 2 == 0
    return (gap // 2) % 2


# -- cochains and the curve-side value of q ------------------------------------


@dataclass(frozen=True)
class Cochain:
    """Holonomy value per band, encoded in Z/4 (odd exactly on twisted bands)."""

    values: tuple[int, ...]

    def letter(self, x: Letter) -> int:
        g, e = x
        return self.values[g] % 4 if e > 0 else -self.values[g] % 4


def _check_cochain(rm: RibbonModel, phi: Cochain) -> None:
    if len(phi.values) != rm.model.rank:
        raise ValueError("cochain has the wrong length")
    for g, v in enumerate(phi.values):
        if v % 2 != int(rm.twisted[g]):
            raise ValueError(f"cochain value {v} on {rm.model.generators[g]} has the wrong parity")


def word_holonomy(rm: RibbonModel, word: Word, phi: Cochain, stype: StructureType) -> int:
    return (sum(phi.letter(x) for x in word) + 2 * rotation_correction(rm, word, stype)) % 4


def holonomy(rm: RibbonModel, S: CurveSystem, phi: Cochain, stype: StructureType) -> int:
    """Total holonomy: component holonomies combined in the 1-dimensional group."""
    _check_cochain(rm, phi)
    group = representative(stype)
    h = 0
    for w in S.words:
        h = group.table[h][word_holonomy(rm, w, phi, stype)]
    return h


@dataclass(frozen=True)
class CurveReport:
    n: int
    i: int
    h: int
    q: int


def curve_report(model: HomologyModel, S: CurveSystem, phi: Cochain, stype: StructureType) -> CurveReport:
    rm = ribbon_model(model)
    for w in S.words:
        if not is_reduced(w):
            raise ValueError("curve words must be reduced")
    n = S.n
    i = self_intersections(rm, S)
    h = holonomy(rm, S, phi, stype)
    return CurveReport(n, i, h, q_from_counts(stype, h, n, i))


def q_from_counts(stype: StructureType, h: int, n: int, i: int) -> int:
    """Uniformized value of q from holonomy, component count and crossing count."""
    if stype is StructureType.PIN_MINUS:
        return (h + 2 * (n + i)) % 4
    if stype is StructureType.OTILDE:
        return h
    if stype is StructureType.PIN_PLUS:
        return 2 * (((h >> 1) + n + i) % 2)
    return 2 * ((h >> 1) % 2)


def q_curve(model: HomologyModel, S: CurveSystem, phi: Cochain, stype: StructureType) -> int:
    return curve_report(model, S, phi, stype).q


def calibrate(q: QForm) -> Cochain:
    """The cochain whose one-letter curves reproduce q on the generators."""
    model = q.model
    rm = ribbon_model(model)
    values = []
    for g in range(model.rank):
        i0 = self_intersections(rm, CurveSystem((((g, 1),),)))
        v = q.values[g]
        w = int(rm.twisted[g])
        t = q.type
        if t is StructureType.PIN_MINUS:
            phi = v - 2 * (1 + i0)
        elif t is StructureType.OTILDE:
            phi = v
        elif t is StructureType.PIN_PLUS:
            phi = w + 2 * ((v // 2 - 1 - i0) % 2)
        else:
            phi = w + 2 * (v // 2)
        values.append(phi % 4)
    return Cochain(tuple(values))


def homology_class(model: HomologyModel, S: CurveSystem) -> HClass:
    v = [0] * model.rank
    for w in S.words:
        for g, e in w:
            v[g] += e
    return model.canonicalize(v)


# -- enumeration ----------------------------------------------------------------


def _canonical_rotation(word: Word) -> Word:
    return min(word[i:] + word[:i] for i in range(len(word)))


def cyclic_words(rank: int, length: int) -> list[Word]:
    """Cyclically reduced words of the given length, one per rotation class."""
    letters = [(g, e) for g in range(rank) for e in (1, -1)]
    out = set()
    for w in itertools.product(letters, repeat=length):
        if reduce(w) == w:
            out.add(_canonical_rotation(w))
    return sorted(out)


def curve_systems(rank: int, max_length: int) -> Iterator[CurveSystem]:
    """All multisets of cyclically reduced words with total length <= max_length."""
    pool: list[Word] = []
    for L in range(1, max_length + 1):
        pool += cyclic_words(rank, L)
    # pool is sorted by length, so the first too-long word ends the scan
    lengths = [len(w) for w in pool]

    def extend(start: int, budget: int, acc: list[Word]):
        if acc:
            yield CurveSystem(tuple(acc))
        for idx in range(start, len(pool)):
            if lengths[idx] > budget:
                break
            acc.append(pool[idx])
            yield from extend(idx, budget - lengths[idx], acc)
            acc.pop()

    yield from extend(0, max_length, [])

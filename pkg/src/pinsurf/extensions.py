"""Z/2-extensions of O1 as explicit order-4 groups, and their sum.

Each labelled representative uses the same element codes 0..3:

* cyclic (pin-, otilde): code = element of Z/4, projection = parity
* Klein (pin+, trivial): code = s + 2k for (s, k) in O1 x Z/2, multiplication
  is XOR of codes, projection = s

In both cases the kernel generator has code 2.  The sum G1 v G2 is the
fibered product over O1 divided by the diagonal kernel; it is identified
with the representative of label1 + label2 by sending the class of the pair
of standard odd lifts (code 1, code 1) to the standard odd lift (code 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable

from .forms import StructureType

CYCLIC4 = "cyclic4"
KLEIN4 = "klein4"


@dataclass(frozen=True)
class FiniteExtension:
    elements: tuple[Hashable, ...]
    table: tuple[tuple[int, ...], ...]
    proj: tuple[int, ...]  # 0 for +1, 1 for -1 in O1
    kernel_gen: int
    label: StructureType

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x for x in range(self.order)):
                return e
        raise ValueError("multiplication table has no identity")

    def element_order(self, i: int) -> int:
        e, x, n = self.identity, i, 1
        while x != e:
            x = self.table[x][i]
            n += 1
        return n

    def check(self) -> bool:
        """proj is a surjective homomorphism with central kernel {e, kernel_gen}."""
        n = range(self.order)
        t = self.table
        if any(t[t[i][j]][k] != t[i][t[j][k]] for i in n for j in n for k in n):
            return False
        if any(self.proj[t[i][j]] != (self.proj[i] + self.proj[j]) % 2 for i in n for j in n):
            return False
        kernel = {i for i in n if self.proj[i] == 0}
        if kernel != {self.identity, self.kernel_gen} or self.kernel_gen == self.identity:
            return False
        if set(self.proj) != {0, 1}:
            return False
        return all(t[self.kernel_gen][i] == t[i][self.kernel_gen] for i in n)


def _cyclic_table():
    return tuple(tuple((i + j) % 4 for j in range(4)) for i in range(4))


def _klein_table():
    return tuple(tuple(i ^ j for j in range(4)) for i in range(4))


def is_cyclic_label(label: StructureType) -> bool:
    return label.b == 1


@lru_cache(maxsize=None)
def representative(label: StructureType) -> FiniteExtension:
    table = _cyclic_table() if is_cyclic_label(label) else _klein_table()
    return FiniteExtension(
        elements=(0, 1, 2, 3),
        table=table,
        proj=(0, 1, 0, 1),
        kernel_gen=2,
        label=label,
    )


def iso_class(G: FiniteExtension) -> str:
    if G.order != 4:
        raise ValueError(f"expected an order-4 group, got order {G.order}")
    return CYCLIC4 if any(G.element_order(i) == 4 for i in range(4)) else KLEIN4


def uniformized(label: StructureType, code: int) -> int:
    """Holonomy value in Z/4: the element itself (cyclic) or twice its Z/2 part (Klein)."""
    return code if is_cyclic_label(label) else 2 * (code >> 1)


def lift(label: StructureType, value: int, w: int) -> int:
    """Element code with uniformized value ``value`` and O1-projection ``w``."""
    value %= 4
    if is_cyclic_label(label):
        if value % 2 != w:
            raise ValueError(f"value {value} has the wrong O1-projection for a {label} element")
        return value
    if value % 2:
        raise ValueError(f"{label} holonomy values are even, got {value}")
    return w + value


@dataclass(frozen=True)
class VeeQuotient:
    """G1 v G2 together with its identification with the labelled representative."""

    group: FiniteExtension
    cosets: tuple[frozenset, ...]
    identification: tuple[int, ...]  # coset index -> representative code

    def coset_of(self, x: int, y: int) -> int:
        for i, c in enumerate(self.cosets):
            if (x, y) in c:
                return i
        raise ValueError(f"({x}, {y}) is not in the fibered product")


def vee_quotient(G1: FiniteExtension, G2: FiniteExtension) -> VeeQuotient:
    pairs = [(x, y) for x in range(G1.order) for y in range(G2.order) if G1.proj[x] == G2.proj[y]]
    diag = [(G1.identity, G2.identity), (G1.kernel_gen, G2.kernel_gen)]

    def mul(p, q):
        return (G1.table[p[0]][q[0]], G2.table[p[1]][q[1]])

    cosets: list[frozenset] = []
    seen = set()
    for p in pairs:
        if p in seen:
            continue
        c = frozenset(mul(p, d) for d in diag)
        seen |= c
        cosets.append(c)
    cosets.sort(key=min)
    where = {p: i for i, c in enumerate(cosets) for p in c}
    table = tuple(tuple(where[mul(min(ci), min(cj))] for cj in cosets) for ci in cosets)
    proj = tuple(G1.proj[min(c)[0]] for c in cosets)
    kernel_gen = where[(G1.kernel_gen, G2.identity)]
    label = G1.label + G2.label
    group = FiniteExtension(
        elements=tuple(tuple(sorted(c)) for c in cosets),
        table=table,
        proj=proj,
        kernel_gen=kernel_gen,
        label=label,
    )

    # standard odd lifts have code 1 in every representative
    target = representative(label)
    u = where[(1, 1)]
    e = group.identity
    k = kernel_gen
    uk = table[u][k]
    ident = [0] * len(cosets)
    ident[e], ident[k], ident[u], ident[uk] = 0, 2, 1, target.table[1][2]
    for i, j in itertools.product(range(4), repeat=2):
        if ident[table[i][j]] != target.table[ident[i]][ident[j]]:
            raise AssertionError("identification with the representative is not a homomorphism")
    return VeeQuotient(group, tuple(cosets), tuple(ident))


def vee_group(G1: FiniteExtension, G2: FiniteExtension) -> FiniteExtension:
    return vee_quotient(G1, G2).group


def holonomy_sum(
    x: int,
    y: int,
    type1: StructureType = StructureType.PIN_MINUS,
    type2: StructureType = StructureType.PIN_MINUS,
    w: int | None = None,
) -> int:
    """Combine two circle holonomies through the explicit diagonal quotient.

    ``w`` is the common O1-projection (the value of w1 on the circle); for
    cyclic types it is read off the parity of the value when omitted.
    """
    if w is None:
        if is_cyclic_label(type1):
            w = x % 2
        elif is_cyclic_label(type2):
            w = y % 2
        else:
            w = 0
    gx = lift(type1, x, w)
    gy = lift(type2, y, w)
    vq = vee_quotient(representative(type1), representative(type2))
    code = vq.identification[vq.coset_of(gx, gy)]
    return uniformized(type1 + type2, code)


def label_table() -> dict[tuple[StructureType, StructureType], StructureType]:
    from .forms import ALL_TYPES

    return {
        (s, t): vee_group(representative(s), representative(t)).label for s in ALL_TYPES for t in ALL_TYPES
    }


def format_group(G: FiniteExtension) -> str:
    names = [str(e) for e in G.elements]
    width = max(len(n) for n in names)
    lines = [" " * width + " | " + " ".join(n.rjust(width) for n in names)]
    lines.append("-" * len(lines[0]))
    for i, n in enumerate(names):
        lines.append(n.rjust(width) + " | " + " ".join(names[j].rjust(width) for j in G.table[i]))
    return "\n".join(lines)

"""Addition of structures: (q1, q2) -> q1 + q2 + 2 q1 q2, pointwise."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .forms import ALL_TYPES, QForm, StructureType, enumerate_forms, exists, shift, zero_form
from .homology import HomologyModel


class VeeSumError(ArithmeticError):
    """The generator-level sum disagrees with the pointwise sum somewhere."""


def pointwise(x: int, y: int) -> int:
    return (x + y + 2 * x * y) % 4


def vee(q1: QForm, q2: QForm) -> QForm:
    if q1.model.spec != q2.model.spec:
        raise ValueError(f"forms live on different surfaces: {q1.model.spec} vs {q2.model.spec}")
    r = QForm(
        q1.type + q2.type,
        q1.model,
        tuple(pointwise(x, y) for x, y in zip(q1.values, q2.values)),
    )
    expected = (q1.table + q2.table + 2 * q1.table * q2.table) % 4
    if not np.array_equal(r.table, expected):
        raise VeeSumError(f"generator-level sum of {q1} and {q2} is not pointwise")
    return r


def check_affine(q: QForm, c: Sequence[int]) -> bool:
    translate = QForm(StructureType.TRIVIAL, q.model, tuple(2 * (int(x) % 2) for x in c))
    return vee(q, translate) == shift(q, c)


@dataclass(frozen=True)
class StructureGroup:
    model: HomologyModel
    forms: tuple[QForm, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.forms)

    def types(self) -> set[StructureType]:
        return {q.type for q in self.forms}

    def is_closed(self) -> bool:
        n = self.order
        return all(0 <= x < n for row in self.table for x in row)

    def is_associative(self) -> bool:
        t = self.table
        rng = range(self.order)
        return all(t[t[i][j]][k] == t[i][t[j][k]] for i in rng for j in rng for k in rng)

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.order) for j in range(self.order))

    def has_identity(self) -> bool:
        e = self.identity
        return all(self.table[e][i] == i == self.table[i][e] for i in range(self.order))

    def every_element_involution(self) -> bool:
        return all(self.table[i][i] == self.identity for i in range(self.order))

    def type_map_is_homomorphism(self) -> bool:
        f = self.forms
        return all(
            f[self.table[i][j]].type == f[i].type + f[j].type
            for i in range(self.order)
            for j in range(self.order)
        )

    def is_group(self) -> bool:
        return (
            self.is_closed()
            and self.has_identity()
            and self.is_associative()
            and self.every_element_involution()  # inverses: q is its own
        )


def structure_group(model: HomologyModel) -> StructureGroup:
    forms: list[QForm] = []
    for t in ALL_TYPES:
        if exists(model, t):
            forms.extend(enumerate_forms(model, t))
    index = {q: i for i, q in enumerate(forms)}
    table = []
    for q1 in forms:
        row = []
        for q2 in forms:
            r = vee(q1, q2)
            if r not in index:
                raise VeeSumError(f"{r} is not among the enumerated structures")
            row.append(index[r])
        table.append(tuple(row))
    return StructureGroup(model, tuple(forms), tuple(table), index[zero_form(model)])

"""Isomorphism invariants of forms and orbits under homology automorphisms.

The Gauss-sum invariant in ``brown_invariant`` goes beyond the Pin+
classification: it is the standard Z/8 invariant of a Z/4-valued quadratic
enhancement, included as a diagnostic for Pin- forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forms import QForm, StructureType, enumerate_forms, eval_form
from .homology import HomologyModel, NoTorsionError

MAX_SEARCH_RANK = 4


def two_torsion_value(q: QForm) -> int:
    return eval_form(q, q.model.torsion_element())


@dataclass(frozen=True)
class GaussSum:
    real: int
    imag: int

    @property
    def norm(self) -> int:
        return self.real**2 + self.imag**2


_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def gauss_sum(q: QForm) -> GaussSum:
    """Sum of i^q(x) over H1(F; Z/2), exactly."""
    re = im = 0
    m = q.model.rank
    for bits in range(2**m):
        v = [(bits >> (m - 1 - j)) & 1 for j in range(m)]
        dr, di = _I_POWERS[q.eval_raw(v)]
        re += dr
        im += di
    return GaussSum(re, im)


def brown_invariant(q: QForm) -> int:
    if q.type is not StructureType.PIN_MINUS:
        raise ValueError(f"the Gauss-sum invariant needs a pin- form, got {q.type}")
    if not q.model.spec.closed:
        raise ValueError("the Gauss-sum invariant needs a closed surface")
    s = gauss_sum(q)
    m = q.model.rank
    if s.norm != 2**m:
        raise ArithmeticError(f"|gauss sum|^2 = {s.norm}, expected {2**m}")
    # s = 2^(m/2) * exp(i pi sigma / 4)
    if m % 2 == 0:
        scale = 2 ** (m // 2)
        unit = (s.real // scale, s.imag // scale)
        return 2 * _I_POWERS.index(unit)
    scale = 2 ** ((m - 1) // 2)
    # divide by (1 + i): (x + iy)(1 - i) / 2
    x, y = s.real // scale, s.imag // scale
    unit = ((x + y) // 2, (y - x) // 2)
    return 2 * _I_POWERS.index(unit) + 1


# -- automorphisms --------------------------------------------------------------


@dataclass(frozen=True)
class FormAutomorphism:
    """Images of the generators, as canonical coefficient vectors (columns)."""

    columns: tuple[tuple[int, ...], ...]

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.columns, dtype=np.int64).reshape(len(self.columns), -1).T


def _column_indices(model: HomologyModel, autos: np.ndarray) -> np.ndarray:
    """Element index of every generator image; autos has shape (K, m, m) of columns."""
    return model.index_of(autos)


def _search(model: HomologyModel) -> np.ndarray:
    m = model.rank
    E = model.element_array
    P = model.pairing_table
    w1 = model.w1_table
    B = model.B
    if m == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    # per-position candidate columns: w1 and self-pairing already forced equal
    cand = [np.flatnonzero(w1 == model.w1[i]) for i in range(m)]
    partial = cand[0].reshape(-1, 1)
    for i in range(1, m):
        rows = []
        for c in cand[i]:
            ok = np.ones(len(partial), dtype=bool)
            for j in range(i):
                ok &= P[partial[:, j], c] == B[j][i]
            if ok.any():
                sel = partial[ok]
                rows.append(np.hstack([sel, np.full((len(sel), 1), c)]))
        partial = np.vstack(rows) if rows else np.zeros((0, i + 1), dtype=np.int64)
    cols = E[partial]  # (K, m, m): cols[k, i] is the image of generator i

    # invertible mod 2
    keep = np.array([_invertible_mod2(c % 2) for c in cols], dtype=bool) if len(cols) else np.zeros(0, bool)
    cols = cols[keep]
    # relations map into the relation subgroup
    rel_codes = set(model.index_of(model.relation_subgroup).tolist())
    for r in model.relations:
        images = np.einsum("kij,i->kj", cols, np.array(r)) % 4
        cols = cols[np.isin(model.index_of(images), list(rel_codes))]
    if model.torsion is not None:
        t_idx = model.index_of(np.array([model.torsion]))[0]
        images = np.einsum("kij,i->kj", cols, np.array(model.torsion)) % 4
        cols = cols[model.index_of(images) == t_idx]
    return cols


def _invertible_mod2(M: np.ndarray) -> bool:
    A = (M % 2).astype(np.uint8).copy()
    n = len(A)
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if A[r, col]), None)
        if pivot is None:
            return False
        A[[row, pivot]] = A[[pivot, row]]
        for r in range(n):
            if r != row and A[r, col]:
                A[r] ^= A[row]
        row += 1
    return True


def automorphism_array(model: HomologyModel) -> np.ndarray:
    """All automorphisms as an array of shape (K, m, m); entry [k, i] is the image of generator i."""
    if model.rank > MAX_SEARCH_RANK:
        raise ValueError(f"automorphism search is limited to {MAX_SEARCH_RANK} generators")
    cols = _search(model)
    order = np.lexsort(cols.reshape(len(cols), -1).T[::-1]) if len(cols) else np.zeros(0, dtype=int)
    return cols[order]


def automorphisms(model: HomologyModel) -> list[FormAutomorphism]:
    return [
        FormAutomorphism(tuple(tuple(int(x) for x in col) for col in a)) for a in automorphism_array(model)
    ]


def apply(model: HomologyModel, auto: FormAutomorphism, v) -> tuple[int, ...]:
    """Image of a coefficient vector, canonicalized."""
    image = np.zeros(model.rank, dtype=np.int64)
    for x, col in zip(v, auto.columns):
        image += int(x) * np.array(col, dtype=np.int64)
    return model.canonicalize(image % 4).coefficients


def pullback(q: QForm, auto: FormAutomorphism) -> QForm:
    """q composed with the automorphism."""
    idx = q.model.index_of(np.array(auto.columns, dtype=np.int64).reshape(q.model.rank, q.model.rank))
    return QForm(q.type, q.model, tuple(int(q.table[i]) for i in idx))


def orbits(model: HomologyModel, stype: StructureType) -> list[list[QForm]]:
    forms = enumerate_forms(model, stype)
    if not forms:
        return []
    autos = automorphism_array(model)
    index = {q.values: i for i, q in enumerate(forms)}
    parent = list(range(len(forms)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    idx = model.index_of(autos)  # (K, m)
    for i, q in enumerate(forms):
        images = {tuple(int(v) for v in row) for row in q.table[idx]}
        for values in images:
            j = index[values]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[QForm]] = {}
    for i, q in enumerate(forms):
        groups.setdefault(find(i), []).append(q)
    return [groups[k] for k in sorted(groups)]


def orbit_labels(model: HomologyModel, stype: StructureType) -> dict[QForm, int]:
    return {q: k for k, orbit in enumerate(orbits(model, stype)) for q in orbit}


def cobordant(q1: QForm, q2: QForm) -> bool:
    for q in (q1, q2):
        if q.type is not StructureType.PIN_PLUS:
            raise ValueError(f"cobordism test needs pin+ forms, got {q.type}")
    if q1.model.spec != q2.model.spec:
        raise ValueError("forms live on different surfaces")
    if not q1.model.spec.closed:
        raise ValueError("cobordism test needs a closed surface")
    if q1.model.torsion is None:
        raise NoTorsionError(f"{q1.model.spec} has no torsion")
    return two_torsion_value(q1) == two_torsion_value(q2)

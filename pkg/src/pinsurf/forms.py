"""Structures of the four Pin-types as functions H1(F; Z/4) -> Z/4.

A structure of type (a, b), characteristic class a*w2 + b*w1^2, is a
function q with

    q(x + y) = q(x) + q(y) + 2a<x, y>        (1)
    q(x) = b*w1(x)  (mod 2)                  (2)

Forms are stored by their values on generators; the value on any class is
the unique extension forced by (1).  Pin+ and trivial forms live in {0, 2}
(Z/2 embedded in Z/4 by doubling).
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .homology import HClass, HomologyModel, quadratic_part


class StructureType(enum.Enum):
    TRIVIAL = (0, 0)
    PIN_PLUS = (1, 0)
    OTILDE = (0, 1)
    PIN_MINUS = (1, 1)

    @property
    def a(self) -> int:
        return self.value[0]

    @property
    def b(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_ab(cls, a: int, b: int) -> "StructureType":
        return cls((a % 2, b % 2))

    @classmethod
    def parse(cls, text: str) -> "StructureType":
        key = text.strip().lower()
        try:
            return _BY_LABEL[key]
        except KeyError:
            raise ValueError(f"unknown structure type {text!r}") from None

    def __add__(self, other: "StructureType") -> "StructureType":
        return StructureType.from_ab(self.a + other.a, self.b + other.b)

    def __str__(self) -> str:
        return self.label


_LABELS = {
    StructureType.TRIVIAL: "trivial",
    StructureType.PIN_PLUS: "pin+",
    StructureType.OTILDE: "otilde",
    StructureType.PIN_MINUS: "pin-",
}
_BY_LABEL = {v: k for k, v in _LABELS.items()}
_BY_LABEL.update({"pinplus": StructureType.PIN_PLUS, "pinminus": StructureType.PIN_MINUS})

ALL_TYPES = (
    StructureType.TRIVIAL,
    StructureType.PIN_PLUS,
    StructureType.OTILDE,
    StructureType.PIN_MINUS,
)


@dataclass(frozen=True)
class QForm:
    type: StructureType
    model: HomologyModel
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.model.rank:
            raise ValueError(
                f"{self.model.spec} has {self.model.rank} generators, got {len(self.values)} values"
            )
        object.__setattr__(self, "values", tuple(int(v) % 4 for v in self.values))

    def __eq__(self, other):
        if not isinstance(other, QForm):
            return NotImplemented
        return (self.type, self.model.spec, self.values) == (other.type, other.model.spec, other.values)

    def __hash__(self):
        return hash((self.type, self.model.spec, self.values))

    def __repr__(self):
        return f"QForm({self.model.spec}, {serialize(self)})"

    def eval_raw(self, v: Sequence[int]) -> int:
        vec = np.array([int(x) % 4 for x in v], dtype=np.int64)
        lin = int(vec @ np.array(self.values, dtype=np.int64)) if self.model.rank else 0
        quad = int(quadratic_part(self.model, vec.reshape(1, -1))[0])
        return (lin + 2 * self.type.a * quad) % 4

    def __call__(self, alpha: HClass) -> int:
        return eval_form(self, alpha)

    @cached_property
    def table(self) -> np.ndarray:
        """Values on every element of ``model.elements()``, in that order."""
        E = self.model.element_array
        lin = E @ np.array(self.values, dtype=np.int64) if self.model.rank else np.zeros(len(E), dtype=np.int64)
        return (lin + 2 * self.type.a * self.model.quadratic_table) % 4


def eval_form(q: QForm, alpha: HClass) -> int:
    if not q.model.contains(alpha):
        raise ValueError(f"{alpha} is not a class of {q.model.spec}")
    return q.eval_raw(alpha.coefficients)


def verify_form(q: QForm) -> bool:
    """Exhaustive check of conditions (1) and (2) over all pairs of classes.

    Also checks that the closed-form value does not depend on the chosen
    representative of a class.
    """
    model = q.model
    a, b = q.type.value
    T = q.table
    # representative independence
    E = model.element_array
    values = np.array(q.values, dtype=np.int64)
    for r in model.relation_subgroup:
        moved = (E + r) % 4
        vals = (moved @ values + 2 * a * quadratic_part(model, moved)) % 4
        if not np.array_equal(vals, T):
            return False
    if T[model.index_of(np.zeros((1, model.rank), dtype=np.int64))[0]] != 0:
        return False
    if not np.array_equal(T % 2, (b * model.w1_table) % 2):
        return False
    lhs = T[model.addition_table]
    rhs = (T[:, None] + T[None, :] + 2 * a * model.pairing_table) % 4
    return bool(np.array_equal(lhs, rhs))


def enumerate_forms(model: HomologyModel, stype: StructureType) -> list[QForm]:
    choices = [(1, 3) if stype.b * w else (0, 2) for w in model.w1]
    out = []
    for values in itertools.product(*choices):
        q = QForm(stype, model, values)
        if verify_form(q):
            out.append(q)
    return out


def exists(model: HomologyModel, stype: StructureType) -> bool:
    return model.obstruction(stype.a, stype.b) == 0


def zero_form(model: HomologyModel) -> QForm:
    return QForm(StructureType.TRIVIAL, model, (0,) * model.rank)


def shift(q: QForm, c: Sequence[int]) -> QForm:
    """Affine action of a mod-2 cohomology class given by its generator values."""
    if len(c) != q.model.rank:
        raise ValueError("shift vector has the wrong length")
    return QForm(q.type, q.model, tuple(v + 2 * (int(x) % 2) for v, x in zip(q.values, c)))


def mod2_class(q: QForm) -> tuple[int, ...]:
    return tuple(v % 2 for v in q.values)


def z2_values(q: QForm) -> tuple[int, ...]:
    """Generator values of a Pin+ or trivial form as Z/2 elements."""
    if q.type.b:
        raise ValueError(f"{q.type} forms are not Z/2-valued")
    return tuple(v // 2 for v in q.values)


# -- serialization ------------------------------------------------------------

_FORM_RE = re.compile(r"^\s*([a-z+\-]+)\s*:\s*\[([0-9,\s]*)\]\s*$")


def serialize(q: QForm) -> str:
    return f"{q.type.label}:[{','.join(map(str, q.values))}]"


def to_json(q: QForm) -> dict:
    return {"type": q.type.label, "values": list(q.values)}


def parse_form(text: str, model: HomologyModel) -> QForm:
    """Parse ``pin-:[1,3]`` or the JSON object form ``{"type": ..., "values": ...}``."""
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        return from_json(obj, model)
    m = _FORM_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse form {text!r}")
    stype = StructureType.parse(m.group(1))
    body = m.group(2).strip()
    values = tuple(int(x) for x in body.split(",")) if body else ()
    return QForm(stype, model, values)


def from_json(obj: dict, model: HomologyModel) -> QForm:
    return QForm(StructureType.parse(obj["type"]), model, tuple(int(x) for x in obj["values"]))


def checked_form(text: str, model: HomologyModel) -> QForm:
    q = parse_form(text, model)
    if not verify_form(q):
        raise ValueError(f"{text!r} is not a valid {q.type} form on {model.spec}")
    return q

"""First homology of compact surfaces with Z/4 coefficients.

Surfaces are given by homeomorphism type only.  Generators follow fixed
conventions so that every enumeration downstream is reproducible:

* closed orientable genus g: symplectic basis a1, b1, ..., ag, bg
* closed non-orientable with h crosscaps: c1, ..., ch modulo 2*(c1 + ... + ch)
* k >= 1 boundary circles: the closed basis (without the relation) plus
  k - 1 radical generators d1, ..., d(k-1)

The intersection pairing is only ever needed mod 2.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np


class NoTorsionError(ValueError):
    """Raised when a torsion element is requested on a surface without one."""


@dataclass(frozen=True)
class SurfaceSpec:
    orientable: bool
    genus: int
    boundary: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError("genus and boundary count must be non-negative")
        if not self.orientable and self.genus < 1:
            raise ValueError("a non-orientable surface needs at least one crosscap")

    @property
    def closed(self) -> bool:
        return self.boundary == 0

    @property
    def euler_characteristic(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary
        return 2 - self.genus - self.boundary

    @property
    def name(self) -> str:
        base = f"{'O' if self.orientable else 'N'}{self.genus}"
        return base if self.closed else f"{base}:b={self.boundary}"

    def __str__(self) -> str:
        return self.name


_ALIASES = {
    "sphere": "O0",
    "torus": "O1",
    "rp2": "N1",
    "klein": "N2",
}

_SURFACE_RE = re.compile(r"^([ON])(\d+)(?::b=(\d+))?$")


def parse_surface(text: str) -> SurfaceSpec:
    """Parse ``O<g>`` / ``N<h>`` with an optional ``:b=<k>`` suffix.

    >>> parse_surface("N1:b=1")
    SurfaceSpec(orientable=False, genus=1, boundary=1)
    """
    s = text.strip()
    s = _ALIASES.get(s.lower(), s)
    if any(sep in s for sep in "+,#&"):
        raise ValueError(f"disconnected surfaces are not supported: {text!r}")
    m = _SURFACE_RE.match(s)
    if m is None:
        raise ValueError(f"cannot parse surface {text!r}; expected O<g> or N<h>[:b=<k>]")
    kind, genus, boundary = m.groups()
    return SurfaceSpec(kind == "O", int(genus), int(boundary or 0))


@dataclass(frozen=True)
class HClass:
    """A homology class, stored as its canonical coefficient vector."""

    coefficients: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coefficients)) + ")"


def _code(vectors: np.ndarray) -> np.ndarray:
    # base-4 code, first coordinate most significant, so code order is lex order
    m = vectors.shape[-1]
    weights = 4 ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return vectors.astype(np.int64) @ weights


def _all_vectors(m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(4), repeat=m)), dtype=np.int64)


@dataclass(frozen=True)
class HomologyModel:
    spec: SurfaceSpec
    generators: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    w1: tuple[int, ...]
    torsion: Optional[tuple[int, ...]]
    w2_eval: int
    w1sq_eval: int

    def __post_init__(self):
        m = len(self.generators)
        if len(self.B) != m or any(len(row) != m for row in self.B):
            raise ValueError("pairing matrix has the wrong shape")
        for i in range(m):
            if self.B[i][i] != self.w1[i]:
                raise ValueError("w1 must equal the diagonal of the pairing")
            for j in range(m):
                if self.B[i][j] != self.B[j][i]:
                    raise ValueError("pairing matrix must be symmetric")
        if self.w2_eval != self.w1sq_eval:
            raise ValueError("w2 and w1^2 must agree on a surface")

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def b1(self) -> int:
        """Dimension of H1(F; Z/2)."""
        return len(self.generators)

    # -- element tables (numpy, built lazily) -------------------------------

    @cached_property
    def relation_subgroup(self) -> np.ndarray:
        m = self.rank
        span = {tuple([0] * m)}
        frontier = list(span)
        gens = [np.array(r, dtype=np.int64) for r in self.relations]
        while frontier:
            new = []
            for v in frontier:
                for r in gens:
                    w = tuple(int(x) for x in (np.array(v) + r) % 4)
                    if w not in span:
                        span.add(w)
                        new.append(w)
            frontier = new
        return np.array(sorted(span), dtype=np.int64).reshape(len(span), m)

    @cached_property
    def _canonical_lookup(self) -> np.ndarray:
        # raw code -> canonical code
        raw = _all_vectors(self.rank)
        shifted = (raw[:, None, :] + self.relation_subgroup[None, :, :]) % 4
        return _code(shifted).min(axis=1)

    @cached_property
    def element_array(self) -> np.ndarray:
        raw = _all_vectors(self.rank)
        codes = _code(raw)
        keep = self._canonical_lookup == codes
        return raw[keep]

    @cached_property
    def _index_of_code(self) -> np.ndarray:
        lookup = np.full(4 ** self.rank, -1, dtype=np.int64)
        lookup[_code(self.element_array)] = np.arange(len(self.element_array))
        # every raw code points at the index of its canonical element
        return lookup[self._canonical_lookup]

    def index_of(self, vectors: np.ndarray) -> np.ndarray:
        """Element indices of (possibly non-canonical) raw vectors."""
        return self._index_of_code[_code(np.asarray(vectors) % 4)]

    @cached_property
    def addition_table(self) -> np.ndarray:
        E = self.element_array
        return self.index_of((E[:, None, :] + E[None, :, :]) % 4)

    @cached_property
    def pairing_table(self) -> np.ndarray:
        E2 = self.element_array % 2
        return (E2 @ np.array(self.B, dtype=np.int64).reshape(self.rank, self.rank) @ E2.T) % 2

    @cached_property
    def w1_table(self) -> np.ndarray:
        return (self.element_array @ np.array(self.w1, dtype=np.int64)) % 2

    @cached_property
    def quadratic_table(self) -> np.ndarray:
        """sum_{i<j} n_i n_j B_ij + sum_i C(n_i, 2) B_ii for every element."""
        return quadratic_part(self, self.element_array)

    # -- class-level operations ----------------------------------------------

    def canonicalize(self, v: Sequence[int]) -> HClass:
        if len(v) != self.rank:
            raise ValueError(f"expected a vector of length {self.rank}, got {len(v)}")
        vec = np.array([int(x) % 4 for x in v], dtype=np.int64).reshape(1, self.rank)
        idx = int(self.index_of(vec)[0])
        return HClass(tuple(int(x) for x in self.element_array[idx]))

    def zero(self) -> HClass:
        return HClass((0,) * self.rank)

    def generator(self, i: int) -> HClass:
        v = [0] * self.rank
        v[i] = 1
        return self.canonicalize(v)

    def add(self, alpha: HClass, beta: HClass) -> HClass:
        return self.canonicalize([x + y for x, y in zip(alpha.coefficients, beta.coefficients)])

    def scale(self, n: int, alpha: HClass) -> HClass:
        return self.canonicalize([n * x for x in alpha.coefficients])

    def contains(self, alpha: HClass) -> bool:
        return (
            len(alpha.coefficients) == self.rank
            and self.canonicalize(alpha.coefficients) == alpha
        )

    def _check(self, alpha: HClass) -> None:
        if not self.contains(alpha):
            raise ValueError(f"{alpha} is not a canonical class of {self.spec}")

    def pairing(self, alpha: HClass, beta: HClass) -> int:
        self._check(alpha)
        self._check(beta)
        total = 0
        for i, x in enumerate(alpha.coefficients):
            for j, y in enumerate(beta.coefficients):
                total += x * y * self.B[i][j]
        return total % 2

    def w1_eval(self, alpha: HClass) -> int:
        self._check(alpha)
        return sum(x * w for x, w in zip(alpha.coefficients, self.w1)) % 2

    def elements(self) -> Iterator[HClass]:
        for row in self.element_array:
            yield HClass(tuple(int(x) for x in row))

    def element_count(self) -> int:
        return len(self.element_array)

    def torsion_element(self) -> HClass:
        if self.torsion is None:
            raise NoTorsionError(f"{self.spec} has no torsion")
        return self.canonicalize(self.torsion)

    def obstruction(self, a: int, b: int) -> int:
        """Evaluation of a*w2 + b*w1^2 on the fundamental class."""
        return (a * self.w2_eval + b * self.w1sq_eval) % 2


def quadratic_part(model: HomologyModel, vectors: np.ndarray) -> np.ndarray:
    """Integer-representative expansion used by condition (1) with a = 1.

    Entries of ``vectors`` are reduced to 0..3 first; the result is a mod-2 value.
    """
    n = np.asarray(vectors, dtype=np.int64) % 4
    B = np.array(model.B, dtype=np.int64).reshape(model.rank, model.rank)
    upper = np.triu(B, k=1)
    cross = np.einsum("...i,ij,...j->...", n, upper, n)
    diag = (n * (n - 1) // 2) @ np.diag(B) if model.rank else np.zeros(n.shape[:-1], dtype=np.int64)
    return (cross + diag) % 2


def _symplectic(g: int) -> list[list[int]]:
    B = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        B[2 * i][2 * i + 1] = B[2 * i + 1][2 * i] = 1
    return B


@lru_cache(maxsize=None)
def build_homology(spec: SurfaceSpec) -> HomologyModel:
    if not spec.orientable and spec.genus < 1:
        raise ValueError("a non-orientable surface needs at least one crosscap")
    radicals = max(spec.boundary - 1, 0)
    if spec.orientable:
        gens = []
        for i in range(1, spec.genus + 1):
            gens += [f"a{i}", f"b{i}"]
        core = _symplectic(spec.genus)
    else:
        gens = [f"c{i}" for i in range(1, spec.genus + 1)]
        core = [[int(i == j) for j in range(spec.genus)] for i in range(spec.genus)]
    gens += [f"d{i}" for i in range(1, radicals + 1)]
    m = len(gens)
    B = [[0] * m for _ in range(m)]
    for i, row in enumerate(core):
        B[i][: len(row)] = row
    w1 = [B[i][i] for i in range(m)]

    relations: tuple[tuple[int, ...], ...] = ()
    torsion = None
    w2 = 0
    if not spec.orientable and spec.closed:
        relations = ((2,) * m,)
        torsion = (1,) * m
        w2 = spec.genus % 2
    return HomologyModel(
        spec=spec,
        generators=tuple(gens),
        relations=relations,
        B=tuple(tuple(r) for r in B),
        w1=tuple(w1),
        torsion=torsion,
        w2_eval=w2,
        w1sq_eval=w2,
    )


def model_for(surface: str | SurfaceSpec) -> HomologyModel:
    if isinstance(surface, str):
        surface = parse_surface(surface)
    return build_homology(surface)

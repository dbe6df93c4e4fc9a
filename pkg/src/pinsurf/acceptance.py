"""Exit criteria, runnable from the CLI (``pinsurf selftest``) and from pytest.

Every check is exact; time bounds are part of the criterion.
"""

from __future__ import annotations

import io
import itertools
import json
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import classify, curves, extensions
from .forms import (
    ALL_TYPES,
    QForm,
    StructureType,
    enumerate_forms,
    exists,
    from_json,
    parse_form,
    serialize,
    to_json,
    verify_form,
)
from .homology import HomologyModel, model_for
from .veesum import check_affine, structure_group, vee

FAMILY = ("O0", "O1", "O2", "N1", "N2", "N3", "N4", "N1:b=1", "O0:b=2", "O1:b=1", "N2:b=1")
CURVE_FAMILY = ("N1", "N2", "N3", "O1")
CURVE_LENGTH = 6

P, M, O, T = StructureType.PIN_PLUS, StructureType.PIN_MINUS, StructureType.OTILDE, StructureType.TRIVIAL


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _models():
    return [model_for(s) for s in FAMILY]


def _all_forms(model: HomologyModel) -> list[QForm]:
    return [q for t in ALL_TYPES for q in enumerate_forms(model, t)]


def form_counts(**_) -> tuple[bool, str]:
    start = time.perf_counter()
    bad = []
    for model in _models():
        for t in ALL_TYPES:
            count = len(enumerate_forms(model, t))
            empty = model.spec.name in ("N1", "N3") and t in (P, O)
            expected = 0 if empty else 2**model.b1
            if count != expected or exists(model, t) != (count > 0):
                bad.append(f"{model.spec}/{t}: {count}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    return ok, f"{len(FAMILY) * 4} counts, mismatches={bad or 'none'}, {elapsed:.3f}s < 1s"


def form_conditions(inject_fault: bool = False, **_) -> tuple[bool, str]:
    start = time.perf_counter()
    checked = failed = 0
    for model in _models():
        forms = _all_forms(model)
        if inject_fault and model.spec.name == "N2":
            # parity violated on c1
            forms.append(QForm(M, model, (2, 1)))
        for q in forms:
            checked += 1
            failed += not verify_form(q)
    elapsed = time.perf_counter() - start
    return failed == 0 and elapsed < 10.0, f"{checked} forms, {failed} failed, {elapsed:.2f}s < 10s"


def factoring(**_) -> tuple[bool, str]:
    bad = 0
    for model in _models():
        S = model.addition_table
        doubled = S[np.arange(len(S)), np.arange(len(S))]
        for q in enumerate_forms(model, M):
            # q(x + 2y) = q(x)
            bad += not np.array_equal(q.table[S[:, doubled]], np.repeat(q.table[:, None], len(S), axis=1))
        for q in enumerate_forms(model, O):
            bad += not np.array_equal(q.table[S], (q.table[:, None] + q.table[None, :]) % 4)
    return bad == 0, f"{bad} pin-/otilde forms violate the factoring claims"


def pointwise_sum(**_) -> tuple[bool, str]:
    pairs = bad = 0
    for model in _models():
        forms = _all_forms(model)
        for q1, q2 in itertools.product(forms, repeat=2):
            pairs += 1
            r = vee(q1, q2)
            expected = (q1.table + q2.table + 2 * q1.table * q2.table) % 4
            if not (
                np.array_equal(r.table, expected) and r.type == q1.type + q2.type and verify_form(r)
            ):
                bad += 1
    return bad == 0, f"{pairs} pairs, {bad} disagree with the pointwise sum"


def group_law(**_) -> tuple[bool, str]:
    bad = []
    affine = 0
    for model in _models():
        G = structure_group(model)
        n_types = sum(exists(model, t) for t in ALL_TYPES)
        if not (
            G.is_group()
            and G.is_commutative()
            and G.every_element_involution()
            and G.type_map_is_homomorphism()
            and G.order == n_types * 2**model.b1
        ):
            bad.append(str(model.spec))
        for q in G.forms:
            for c in itertools.product((0, 1), repeat=model.rank):
                affine += 1
                if not check_affine(q, c):
                    bad.append(f"{model.spec}:{serialize(q)}+{c}")
    return not bad, f"group axioms on {len(FAMILY)} surfaces, {affine} affine checks, failures={bad or 'none'}"


def circle_level(**_) -> tuple[bool, str]:
    rep = extensions.representative
    notes = []
    z4 = extensions.vee_group(rep(M), rep(M))
    if extensions.iso_class(z4) != extensions.KLEIN4:
        notes.append("Z/4 v Z/4 is not Klein")
    for s, t in itertools.product(ALL_TYPES, repeat=2):
        G = extensions.vee_group(rep(s), rep(t))
        if (
            not G.check()
            or G.label != s + t
            or extensions.iso_class(G) != extensions.iso_class(rep(s + t))
        ):
            notes.append(f"{s} v {t}")
    checked = 0
    for x, y in itertools.product(range(4), repeat=2):
        for s, t in itertools.product(ALL_TYPES, repeat=2):
            for w in (0, 1):
                try:
                    z = extensions.holonomy_sum(x, y, s, t, w)
                except ValueError:
                    continue
                checked += 1
                if z != (x + y + 2 * x * y) % 4:
                    notes.append(f"hol({x},{y};{s},{t},{w})={z}")
    return not notes, f"16-entry label table, {checked} holonomy sums, failures={notes or 'none'}"


def pin_plus_classification(**_) -> tuple[bool, str]:
    start = time.perf_counter()
    notes = []
    for name in ("N2", "N4"):
        model = model_for(name)
        orbits = classify.orbits(model, P)
        values = [sorted({classify.two_torsion_value(q) for q in orb}) for orb in orbits]
        if len(orbits) != 2 or sorted(v[0] for v in values) != [0, 2] or any(len(v) != 1 for v in values):
            notes.append(f"{name}: orbits {values}")
        label = {q: k for k, orb in enumerate(orbits) for q in orb}
        for q1, q2 in itertools.product(label, repeat=2):
            if classify.cobordant(q1, q2) != (label[q1] == label[q2]):
                notes.append(f"{name}: cobordant mismatch")
                break
    elapsed = time.perf_counter() - start
    return not notes and elapsed < 60.0, f"N2, N4: 2 pin+ orbits split by q(t) in {{0,2}}, failures={notes or 'none'}, {elapsed:.1f}s < 60s"


def curve_oracle(**_) -> tuple[bool, str]:
    start = time.perf_counter()
    mismatches = 0
    evaluations = 0
    parity_bad = 0
    for name in CURVE_FAMILY:
        model = model_for(name)
        rm = curves.ribbon_model(model)
        systems = list(curves.curve_systems(model.rank, CURVE_LENGTH))
        geometry = []
        for S in systems:
            cls = curves.homology_class(model, S)
            idx = int(model.index_of(np.array([cls.coefficients]))[0])
            geometry.append((S, curves.self_intersections(rm, S), idx))
        for t in ALL_TYPES:
            for q in enumerate_forms(model, t):
                phi = curves.calibrate(q)
                for S, i, idx in geometry:
                    evaluations += 1
                    h = curves.holonomy(rm, S, phi, t)
                    mismatches += curves.q_from_counts(t, h, S.n, i) != q.table[idx]
        words = [w for L in range(1, CURVE_LENGTH) for w in curves.cyclic_words(model.rank, L)]
        for w1, w2 in itertools.combinations_with_replacement(words, 2):
            if len(w1) + len(w2) > CURVE_LENGTH:
                continue
            S1, S2 = curves.CurveSystem((w1,)), curves.CurveSystem((w2,))
            crossings = curves.mutual_intersections(rm, S1, S2)
            pairing = model.pairing(curves.homology_class(model, S1), curves.homology_class(model, S2))
            parity_bad += crossings % 2 != pairing
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and parity_bad == 0 and elapsed < 120.0
    return ok, (
        f"{evaluations} curve evaluations, {mismatches} mismatches, "
        f"{parity_bad} crossing-parity failures, {elapsed:.1f}s < 120s"
    )


def brown_sanity(**_) -> tuple[bool, str]:
    bad = []
    for model in _models():
        if not model.spec.closed:
            continue
        for q in enumerate_forms(model, M):
            if classify.gauss_sum(q).norm != 2**model.b1:
                bad.append(serialize(q))
            classify.brown_invariant(q)
    n1 = sorted(classify.brown_invariant(q) for q in enumerate_forms(model_for("N1"), M))
    return not bad and n1 == [1, 7], f"modulus failures={bad or 'none'}, N1 sigmas={n1}"


CLI_SAMPLES = (
    ["forms", "list", "--surface", "N2", "--type", "pin+", "--format", "json"],
    ["forms", "list", "--surface", "N3", "--type", "pin+"],
    ["forms", "classify", "--surface", "N2", "--type", "pin+", "--format", "csv"],
    ["forms", "exists", "--surface", "N3", "--type", "otilde"],
    ["forms", "sum", "--surface", "N2", "pin-:[1,1]", "pin+:[0,2]"],
    ["groups", "vee", "pin-", "pin-"],
    ["curve", "eval", "--surface", "N2", "--words", "c1,c2;c1", "--form", "pin-:[1,1]"],
    ["surface", "info", "--surface", "klein", "--format", "json"],
)


def cli_determinism(**_) -> tuple[bool, str]:
    from .cli import run

    notes = []
    for argv in CLI_SAMPLES:
        outputs = []
        for _ in range(2):
            buf = io.StringIO()
            status = run(argv, out=buf, err=io.StringIO())
            outputs.append((status, buf.getvalue().encode()))
        if outputs[0] != outputs[1] or outputs[0][0] != 0:
            notes.append(" ".join(argv))
    trips = 0
    for model in _models():
        for q in _all_forms(model):
            trips += 1
            if parse_form(serialize(q), model) != q or from_json(json.loads(json.dumps(to_json(q))), model) != q:
                notes.append(serialize(q))
    return not notes, f"{len(CLI_SAMPLES)} commands x2 byte-identical, {trips} round trips, failures={notes or 'none'}"


CRITERIA: tuple[tuple[int, str, Callable[..., tuple[bool, str]]], ...] = (
    (1, "structure counts", form_counts),
    (2, "form conditions", form_conditions),
    (3, "factoring claims", factoring),
    (4, "pointwise vee-sum", pointwise_sum),
    (5, "group law and affine action", group_law),
    (6, "circle-level extensions", circle_level),
    (7, "Pin+ classification", pin_plus_classification),
    (8, "curve oracle", curve_oracle),
    (9, "Gauss-sum sanity", brown_sanity),
    (10, "CLI determinism and round trip", cli_determinism),
)


def run_criterion(number: int, inject_fault: bool = False) -> CriterionResult:
    for n, name, fn in CRITERIA:
        if n == number:
            start = time.perf_counter()
            passed, detail = fn(inject_fault=inject_fault)
            return CriterionResult(n, name, passed, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(inject_fault: bool = False) -> list[CriterionResult]:
    return [run_criterion(n, inject_fault) for n, _, _ in CRITERIA]

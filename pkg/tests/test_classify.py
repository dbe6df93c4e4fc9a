import itertools

import pytest

from pinsurf.classify import (
    MAX_SEARCH_RANK,
    apply,
    automorphisms,
    brown_invariant,
    cobordant,
    gauss_sum,
    orbit_labels,
    orbits,
    pullback,
    two_torsion_value,
)
from pinsurf.forms import QForm, StructureType, enumerate_forms, eval_form, zero_form
from pinsurf.homology import NoTorsionError, model_for
from pinsurf.veesum import vee

P, M, O, T = StructureType.PIN_PLUS, StructureType.PIN_MINUS, StructureType.OTILDE, StructureType.TRIVIAL


def test_two_torsion_examples():
    n2 = model_for("N2")
    assert two_torsion_value(QForm(P, n2, (0, 0))) == 0
    assert two_torsion_value(QForm(P, n2, (0, 2))) == 2
    with pytest.raises(NoTorsionError):
        two_torsion_value(zero_form(model_for("O1")))


def test_brown_examples():
    n1 = model_for("N1")
    assert brown_invariant(QForm(M, n1, (1,))) == 1
    assert brown_invariant(QForm(M, n1, (3,))) == 7
    assert brown_invariant(QForm(M, model_for("O1"), (0, 0))) == 0
    # Arf invariant one
    assert brown_invariant(QForm(M, model_for("O1"), (2, 2))) == 4


def test_brown_preconditions():
    with pytest.raises(ValueError):
        brown_invariant(zero_form(model_for("N2")))
    with pytest.raises(ValueError):
        brown_invariant(QForm(M, model_for("N1:b=1"), (1,)))
    with pytest.raises(ArithmeticError):
        brown_invariant(QForm(M, model_for("O1"), (1, 3)))


@pytest.mark.parametrize("name", ["O0", "N1", "N2", "N3", "O1", "O2", "N4"])
def test_gauss_sum_modulus(name):
    model = model_for(name)
    for q in enumerate_forms(model, M):
        assert gauss_sum(q).norm == 2**model.b1


def test_brown_is_additive_over_connected_sum():
    # N3 = N1 # N2: sigma adds when the form splits
    n1 = model_for("N1")
    sums = sorted(brown_invariant(QForm(M, n1, (a,))) + brown_invariant(QForm(M, n1, (b,))) for a in (1, 3) for b in (1, 3))
    n2 = model_for("N2")
    assert sorted(brown_invariant(q) for q in enumerate_forms(n2, M)) == sorted(s % 8 for s in sums)


def test_automorphism_examples():
    assert [a.columns for a in automorphisms(model_for("N1"))] == [((1,),)]
    n2 = automorphisms(model_for("N2"))
    assert ((0, 1), (1, 0)) in [a.columns for a in n2]
    torus = automorphisms(model_for("O1"))
    assert ((0, 1), (1, 0)) in [a.columns for a in torus]


@pytest.mark.parametrize("name", ["N2", "O1", "N3", "N2:b=1"])
def test_automorphisms_form_a_group(name):
    model = model_for(name)
    autos = automorphisms(model)
    cols = {a.columns for a in autos}
    identity = tuple(model.generator(i).coefficients for i in range(model.rank))
    assert identity in cols

    def compose(f, g):
        return tuple(apply(model, f, col) for col in g.columns)

    for f, g in itertools.product(autos[:12], repeat=2):
        assert compose(f, g) in cols


@pytest.mark.parametrize("name", ["N2", "O1", "N3"])
def test_automorphisms_preserve_structure(name):
    model = model_for(name)
    els = list(model.elements())
    for a in automorphisms(model)[:20]:
        image = {x: model.canonicalize(apply(model, a, x.coefficients)) for x in els}
        assert len(set(image.values())) == len(els)
        for x, y in itertools.product(els[:8], repeat=2):
            assert model.pairing(image[x], image[y]) == model.pairing(x, y)
        assert all(model.w1_eval(image[x]) == model.w1_eval(x) for x in els)
        if model.torsion is not None:
            t = model.torsion_element()
            assert image[t] == t


def test_search_bound():
    with pytest.raises(ValueError):
        automorphisms(model_for(f"N{MAX_SEARCH_RANK + 1}"))


def test_orbit_labels():
    n2 = model_for("N2")
    label = orbit_labels(n2, P)
    assert set(label.values()) == {0, 1}
    assert all(label[q] == (two_torsion_value(q) == 2) for q in label)


def test_orbit_examples():
    n2 = model_for("N2")
    orb = orbits(n2, P)
    assert [len(o) for o in orb] == [2, 2]
    assert sorted(two_torsion_value(o[0]) for o in orb) == [0, 2]
    assert len(orbits(n2, T)) <= 4
    n1 = orbits(model_for("N1"), M)
    assert len(n1) == 2
    assert sorted(brown_invariant(o[0]) for o in n1) == [1, 7]
    assert orbits(model_for("N3"), P) == []


@pytest.mark.parametrize("name, stype", [("N2", P), ("N2", M), ("N3", M), ("O1", M), ("N4", P), ("O1", O)])
def test_orbits_partition_and_invariants(name, stype):
    model = model_for(name)
    forms = enumerate_forms(model, stype)
    orb = orbits(model, stype)
    assert sorted(q.values for o in orb for q in o) == [q.values for q in forms]
    label = {q: k for k, o in enumerate(orb) for q in o}
    sample = automorphisms(model)[::97][:30]
    for q in forms:
        for a in sample:
            assert label[pullback(q, a)] == label[q]
    if model.spec.closed and stype is M:
        for o in orb:
            assert len({brown_invariant(q) for q in o}) == 1
    if model.torsion is not None:
        for o in orb:
            assert len({two_torsion_value(q) for q in o}) == 1


def test_pullback_evaluates_through_automorphism():
    model = model_for("N3")
    q = enumerate_forms(model, M)[3]
    for a in automorphisms(model)[:10]:
        p = pullback(q, a)
        for x in model.elements():
            assert eval_form(p, x) == eval_form(q, model.canonicalize(apply(model, a, x.coefficients)))


def test_cobordant_examples():
    n2 = model_for("N2")
    q00, q22, q02 = (QForm(P, n2, v) for v in ((0, 0), (2, 2), (0, 2)))
    assert cobordant(q00, q22)
    assert not cobordant(q00, q02)
    assert cobordant(q02, q02)


def test_cobordant_preconditions():
    n2 = model_for("N2")
    with pytest.raises(ValueError):
        cobordant(QForm(M, n2, (1, 1)), QForm(P, n2, (0, 0)))
    with pytest.raises(ValueError):
        cobordant(QForm(P, n2, (0, 0)), QForm(P, model_for("N4"), (0, 0, 0, 0)))
    with pytest.raises(ValueError):
        cobordant(QForm(P, model_for("N2:b=1"), (0, 0)), QForm(P, model_for("N2:b=1"), (0, 0)))


def test_brown_shifts_by_vee_with_linear_form():
    # sigma moves under the affine action, so it is not constant on a form set
    n3 = model_for("N3")
    forms = enumerate_forms(n3, M)
    shifted = {brown_invariant(vee(forms[0], t)) for t in enumerate_forms(n3, T)}
    assert len(shifted) > 1

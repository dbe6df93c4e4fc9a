import itertools

import pytest
from hypothesis import given, strategies as st

from pinsurf.forms import (
    ALL_TYPES,
    QForm,
    StructureType,
    checked_form,
    enumerate_forms,
    eval_form,
    exists,
    from_json,
    mod2_class,
    parse_form,
    serialize,
    shift,
    to_json,
    verify_form,
    z2_values,
    zero_form,
)
from pinsurf.homology import model_for

P, M, O, T = StructureType.PIN_PLUS, StructureType.PIN_MINUS, StructureType.OTILDE, StructureType.TRIVIAL


def brute_force_forms(model, stype):
    """Every function on the elements satisfying both conditions, found without the closed form."""
    els = list(model.elements())
    index = {x: i for i, x in enumerate(els)}
    a, b = stype.a, stype.b
    out = []
    for values in itertools.product(range(4), repeat=model.rank):
        # a solution is determined by its generator values; rebuild it by walking sums
        q = {model.zero(): 0}
        frontier = [model.zero()]
        while frontier:
            x = frontier.pop()
            for g in range(model.rank):
                y = model.add(x, model.generator(g))
                v = (q[x] + values[g] + 2 * a * model.pairing(x, model.generator(g))) % 4
                if y not in q:
                    q[y] = v
                    frontier.append(y)
        ok = all(
            q[model.add(x, y)] == (q[x] + q[y] + 2 * a * model.pairing(x, y)) % 4
            and q[x] % 2 == b * model.w1_eval(x)
            for x in els
            for y in els
        )
        if ok:
            out.append(tuple(q[model.generator(g)] for g in range(model.rank)))
    return sorted(out)


@pytest.mark.parametrize("name", ["O0", "O1", "N1", "N2", "N3", "N1:b=1", "O0:b=2"])
@pytest.mark.parametrize("stype", ALL_TYPES)
def test_enumeration_matches_brute_force(name, stype):
    model = model_for(name)
    assert [q.values for q in enumerate_forms(model, stype)] == brute_force_forms(model, stype)


def test_counts(model):
    for t in ALL_TYPES:
        n = len(enumerate_forms(model, t))
        odd_closed = not model.spec.orientable and model.spec.closed and model.spec.genus % 2
        blocked = odd_closed and t.a + t.b == 1
        assert n == (0 if blocked else 2**model.b1)
        assert exists(model, t) == (n > 0)
        assert exists(model, t) == (model.obstruction(t.a, t.b) == 0)


@pytest.mark.parametrize(
    "name, stype, expected",
    [("N3", P, False), ("N2", P, True), ("N3:b=1", O, True), ("N1", O, False), ("N1", M, True), ("N1", T, True)],
)
def test_exists(name, stype, expected):
    assert exists(model_for(name), stype) is expected


def test_eval_examples():
    n1 = model_for("N1")
    q = QForm(M, n1, (1,))
    assert q.eval_raw([2]) == 0
    assert eval_form(q, n1.zero()) == 0
    n2 = model_for("N2")
    q = QForm(M, n2, (1, 1))
    assert eval_form(q, n2.canonicalize([1, 1])) == 2


def test_eval_respects_relations(model):
    for t in ALL_TYPES:
        for q in enumerate_forms(model, t):
            for v in itertools.product(range(4), repeat=model.rank):
                assert q.eval_raw(v) == eval_form(q, model.canonicalize(v))


def test_eval_rejects_foreign_class():
    q = zero_form(model_for("N2"))
    with pytest.raises(ValueError):
        eval_form(q, model_for("N3").zero())


def test_verify_examples():
    n1 = model_for("N1")
    assert verify_form(zero_form(n1))
    assert verify_form(QForm(M, n1, (1,)))
    assert not verify_form(QForm(O, n1, (1,)))
    assert not verify_form(QForm(M, model_for("N2"), (2, 1)))


def test_enumeration_examples():
    torus = model_for("O1")
    forms = enumerate_forms(torus, M)
    assert len(forms) == 4 and all(v % 2 == 0 for q in forms for v in q.values)
    assert enumerate_forms(model_for("N1"), P) == []
    forms = enumerate_forms(model_for("N2"), O)
    assert len(forms) == 4 and all(v % 2 == 1 for q in forms for v in q.values)
    assert forms == sorted(forms, key=lambda q: q.values)


def test_even_types_take_even_values(model):
    for t in (T, P):
        for q in enumerate_forms(model, t):
            assert set(q.table.tolist()) <= {0, 2}
            assert all(v in (0, 1) for v in z2_values(q))


def test_shift_examples():
    n1 = model_for("N1")
    q = QForm(M, n1, (1,))
    assert shift(q, (0,)) == q
    assert shift(q, (1,)).values == (3,)
    assert shift(QForm(M, model_for("O1"), (0, 0)), (1, 0)).values == (2, 0)


def test_shift_is_free_and_transitive(model):
    for t in ALL_TYPES:
        forms = enumerate_forms(model, t)
        if not forms:
            continue
        # cochains modulo the relations, one per class of H^1(F; Z/2)
        orbit = {shift(forms[0], c) for c in itertools.product((0, 1), repeat=model.rank)}
        assert orbit == set(forms)
        assert len(forms) == 2**model.b1


def test_mod2_class():
    n2 = model_for("N2")
    assert mod2_class(QForm(M, n2, (1, 1))) == (1, 1)
    for q in enumerate_forms(n2, P):
        assert mod2_class(q) == (0, 0)
    n2b = model_for("N2:b=1")
    for q in enumerate_forms(n2b, O):
        assert mod2_class(q) == n2b.w1


def test_serialization_round_trip(model):
    for t in ALL_TYPES:
        for q in enumerate_forms(model, t):
            assert parse_form(serialize(q), model) == q
            assert from_json(to_json(q), model) == q


def test_serialization_format():
    q = QForm(M, model_for("N2"), (1, 3))
    assert serialize(q) == "pin-:[1,3]"
    assert to_json(q) == {"type": "pin-", "values": [1, 3]}


@pytest.mark.parametrize("text", ["pin-:[1]", "pin-:[1,3", "spin:[1,1]", "pin-:[1,x]"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_form(text, model_for("N2"))


def test_checked_form_rejects_invalid():
    n2 = model_for("N2")
    assert checked_form("pin-:[1,1]", n2).values == (1, 1)
    with pytest.raises(ValueError):
        checked_form("pin-:[2,1]", n2)


def test_type_parse_and_addition():
    assert StructureType.parse("pinplus") is P
    assert StructureType.parse("Pin-") is M
    assert M + P is O
    assert M + M is T
    assert all(t + t is T for t in ALL_TYPES)


@given(st.sampled_from(["O1", "N2", "N3", "N2:b=1"]), st.sampled_from(ALL_TYPES), st.data())
def test_condition_one_on_random_pairs(name, stype, data):
    model = model_for(name)
    forms = enumerate_forms(model, stype)
    if not forms:
        return
    q = data.draw(st.sampled_from(forms))
    vec = st.lists(st.integers(0, 3), min_size=model.rank, max_size=model.rank)
    x, y = model.canonicalize(data.draw(vec)), model.canonicalize(data.draw(vec))
    lhs = eval_form(q, model.add(x, y))
    rhs = (eval_form(q, x) + eval_form(q, y) + 2 * stype.a * model.pairing(x, y)) % 4
    assert lhs == rhs

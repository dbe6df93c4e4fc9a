import itertools

import pytest

from pinsurf.extensions import (
    CYCLIC4,
    KLEIN4,
    FiniteExtension,
    holonomy_sum,
    iso_class,
    label_table,
    lift,
    representative,
    uniformized,
    vee_group,
    vee_quotient,
)
from pinsurf.forms import ALL_TYPES, StructureType

P, M, O, T = StructureType.PIN_PLUS, StructureType.PIN_MINUS, StructureType.OTILDE, StructureType.TRIVIAL
rep = representative


@pytest.mark.parametrize("label, iso", [(M, CYCLIC4), (O, CYCLIC4), (P, KLEIN4), (T, KLEIN4)])
def test_representatives(label, iso):
    G = rep(label)
    assert G.check()
    assert iso_class(G) == iso
    assert G.kernel_gen == 2 and uniformized(label, G.kernel_gen) == 2


def test_known_sums():
    assert iso_class(vee_group(rep(M), rep(M))) == KLEIN4
    assert iso_class(vee_group(rep(M), rep(P))) == CYCLIC4
    assert vee_group(rep(M), rep(P)).label is O
    assert iso_class(vee_group(rep(O), rep(O))) == KLEIN4


@pytest.mark.parametrize("s, t", list(itertools.product(ALL_TYPES, repeat=2)))
def test_vee_group_is_labelled_extension(s, t):
    G = vee_group(rep(s), rep(t))
    assert G.order == 4 and G.check()
    assert G.label is s + t
    assert iso_class(G) == iso_class(rep(s + t))


def test_label_table_is_klein_four():
    table = label_table()
    for s in ALL_TYPES:
        assert table[(T, s)] is s
        assert table[(s, s)] is T
    for s, t, u in itertools.product(ALL_TYPES, repeat=3):
        assert table[(s, t)] is table[(t, s)]
        assert table[(table[(s, t)], u)] is table[(s, table[(t, u)])]


def test_identification_is_homomorphism():
    for s, t in itertools.product(ALL_TYPES, repeat=2):
        vq = vee_quotient(rep(s), rep(t))
        G, R = vq.group, rep(s + t)
        f = vq.identification
        assert sorted(f) == [0, 1, 2, 3]
        for i, j in itertools.product(range(4), repeat=2):
            assert f[G.table[i][j]] == R.table[f[i]][f[j]]
        assert f[vq.coset_of(1, 1)] == 1


@pytest.mark.parametrize("x, y, z", [(1, 1, 0), (1, 3, 2), (0, 2, 2), (3, 3, 0), (2, 2, 0)])
def test_holonomy_sum_examples(x, y, z):
    assert holonomy_sum(x, y) == z


def test_holonomy_sum_is_pointwise_law():
    for s, t in itertools.product(ALL_TYPES, repeat=2):
        for x, y, w in itertools.product(range(4), range(4), (0, 1)):
            try:
                z = holonomy_sum(x, y, s, t, w)
            except ValueError:
                continue
            assert z == (x + y + 2 * x * y) % 4


def test_holonomy_sum_rejects_mismatched_parity():
    with pytest.raises(ValueError):
        holonomy_sum(1, 2)
    with pytest.raises(ValueError):
        lift(P, 1, 1)


def test_iso_class_needs_order_four():
    G = FiniteExtension((0, 1), ((0, 1), (1, 0)), (0, 1), 1, T)
    with pytest.raises(ValueError):
        iso_class(G)

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from knotcrypt.codes import canonical_dt, extract_dt
from knotcrypt.diagram import is_isomorphic, is_planar, validate_diagram
from knotcrypt.errors import KnotCryptError, MultiComponentError
from knotcrypt.invariants import jones, kauffman_bracket
from knotcrypt.tangles import (
    RotationKind,
    Tangle,
    TanglePresentation,
    boundary_order,
    close_presentation,
    mutate,
    rotate_tangle,
    split_diagram,
)

I, H, V, Z = (RotationKind.NONE, RotationKind.FLIP_HORIZONTAL,
              RotationKind.FLIP_VERTICAL, RotationKind.HALF_TURN)


def kink_presentation(parity=0):
    # one crossing inside, its two loose ends joined in pairs by plain outer arcs
    inner = Tangle(((("a", "b", "c", "d"), parity),), ("a", "b", "c", "d"))
    outer = Tangle((), ("p", "q", "q", "p"))
    return TanglePresentation(outer, inner, base=("p", 0))


def test_kink_closure():
    d = close_presentation(kink_presentation())
    assert d.n == 1 and validate_diagram(d).ok
    assert kauffman_bracket(d).terms in ({3: -1}, {-3: -1})


def test_split_closing_into_two_circles():
    inner = Tangle(((("a", "b", "c", "d"), 0),), ("a", "b", "c", "d"))
    # NW joined to SE and NE to SW: each strand through the crossing closes on itself
    outer = Tangle((), ("p", "q", "p", "q"))
    with pytest.raises(MultiComponentError, match="multi-component closure"):
        close_presentation(TanglePresentation(outer, inner, base=("p", 0)))


def test_labels_must_pair_up():
    with pytest.raises(KnotCryptError):
        Tangle(((("a", "b", "c", "e"), 0),), ("a", "b", "c", "d"))


def test_gluing_must_be_a_bijection():
    p = kink_presentation()
    with pytest.raises(KnotCryptError):
        TanglePresentation(p.outer, p.inner, p.base, gluing=(0, 0, 1, 2))


def test_rotation_group():
    for r in RotationKind:
        assert r.then(r) is I
        assert I.then(r) is r
    assert H.then(V) is Z and V.then(H) is Z
    assert {a.then(b) for a in RotationKind for b in RotationKind} == set(RotationKind)


def test_rotations_on_tangles(table):
    t = table["6_2"].tangle.inner
    assert rotate_tangle(t, I) == t
    for r in RotationKind:
        assert rotate_tangle(rotate_tangle(t, r), r) == t
    assert rotate_tangle(rotate_tangle(t, H), V) == rotate_tangle(t, Z)
    # the half turn moves endpoints only; the flips also swap over and under
    assert rotate_tangle(t, Z).crossings == t.crossings
    flipped = rotate_tangle(t, V)
    assert all(p1 != p2 for (_, p1), (_, p2) in zip(t.crossings, flipped.crossings))


def test_identity_mutation_is_closure(table):
    for e in table:
        assert mutate(e.tangle, I) == close_presentation(e.tangle)


def test_single_crossing_half_turn(table):
    p = kink_presentation()
    assert is_isomorphic(mutate(p, Z), close_presentation(p))
    # a one-crossing inner tangle cut from a table knot
    e = table["3_1"]
    assert len(e.tangle.inner.crossings) == 1
    assert is_isomorphic(mutate(e.tangle, Z), close_presentation(e.tangle))


def test_trefoil_closure_code(table):
    assert canonical_dt(close_presentation(table["3_1"].tangle)) == canonical_dt(table["3_1"].pd)
    assert extract_dt(close_presentation(table["3_1"].tangle)) == (4, 6, 2)


def test_conway_closure(table):
    d = close_presentation(table["11n_34"].tangle)
    assert d.n == 11 and validate_diagram(d).ok


def test_every_mutation_is_valid_and_jones_blind(table):
    for e in table:
        j = jones(e.pd)
        for r in RotationKind:
            m = mutate(e.tangle, r)
            assert m.n == e.pd.n
            assert validate_diagram(m).ok and is_planar(m), (e.name, r)
            assert jones(m) == j, (e.name, r)


def test_kinoshita_terasaka_to_conway(table):
    kt, conway = table["11n_42"], table["11n_34"]
    target, r = kt.mutant
    assert target == "11n_34"
    m = mutate(kt.tangle, r)
    assert is_isomorphic(m, conway.pd)
    assert jones(m) == jones(kt.pd)
    assert canonical_dt(m) != canonical_dt(kt.pd)


def test_boundary_order_on_table(table):
    for e in table:
        order = boundary_order(e.pd, set(e.inner))
        assert order is not None and sorted(order) == sorted(e.boundary)


def test_boundary_order_rejects_non_tangles(table):
    d = table["7_1"].pd
    # two crossings that do not sit side by side cut more than four arcs
    assert any(boundary_order(d, {a, b}) is None for a, b in itertools.combinations(range(7), 2))


def test_split_checks_boundary(table):
    e = table["5_2"]
    with pytest.raises(KnotCryptError, match="cut arcs"):
        split_diagram(e.pd, e.inner, (1, 2, 3, 4))
    with pytest.raises(KnotCryptError):
        split_diagram(e.pd, range(e.pd.n), e.boundary)


def test_mutation_needs_a_crossing():
    inner = Tangle((), ("a", "b", "b", "a"))
    outer = Tangle(((("p", "q", "r", "s"), 0),), ("p", "q", "r", "s"))
    p = TanglePresentation(outer, inner, base=("p", 0))
    with pytest.raises(KnotCryptError, match="at least one crossing"):
        mutate(p, H)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 36), st.sampled_from(list(RotationKind)), st.sampled_from(list(RotationKind)))
def test_composed_rotations(table, k, r1, r2):
    e = list(table)[k]
    p = e.tangle
    twice = TanglePresentation(p.outer, rotate_tangle(rotate_tangle(p.inner, r1), r2), p.base)
    once = TanglePresentation(p.outer, rotate_tangle(p.inner, r1.then(r2)), p.base)
    assert close_presentation(twice) == close_presentation(once)

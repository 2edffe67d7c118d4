import pytest
from hypothesis import given, settings, strategies as st

import oracles
from knotcrypt.codes import canonical_dt, extract_dt
from knotcrypt.diagram import (
    Diagram,
    connected_sum,
    crossing_signs,
    format_pd,
    is_alternating,
    is_isomorphic,
    is_planar,
    mirror_diagram,
    normalize,
    parse_pd,
    passages,
    reverse_diagram,
    unknot,
    validate_diagram,
)
from knotcrypt.errors import InvalidDiagramError, PDSyntaxError
from knotcrypt.invariants import jones

TREFOIL = "X(1,5,2,4)\nX(3,1,4,6)\nX(5,3,6,2)\nBASE 1 +"


def test_unknot_is_valid():
    assert validate_diagram(unknot()).ok


def test_trefoil_fixture_is_valid():
    d = parse_pd(TREFOIL)
    assert validate_diagram(d).ok
    assert d.n == 3


def test_duplicated_arc_slot_is_reported():
    d = Diagram(((1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 1, 2)))
    report = validate_diagram(d)
    assert not report.ok
    assert any("arc 1 appears 3 times" in v for v in report.violations)


def test_two_component_link_is_rejected():
    # Hopf link
    d = Diagram(((1, 3, 2, 4), (3, 1, 4, 2)))
    assert not validate_diagram(d).ok


def test_basepoint_must_be_an_arc():
    report = validate_diagram(Diagram(((1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)), base_arc=9))
    assert not report.ok


def test_pd_round_trip():
    d = parse_pd(TREFOIL)
    assert parse_pd(format_pd(d)) == d
    assert parse_pd(" ".join(format_pd(d).split())) == d


@pytest.mark.parametrize("text", ["X(1,2,3)", "X(1,5,2,4) BASE 1 + X(3,1,4,6)", "BASE 1", "Y(1,2,3,4)"])
def test_pd_syntax_errors(text):
    with pytest.raises(PDSyntaxError):
        parse_pd(text)


def test_walk_visits_each_crossing_twice(table):
    for e in table:
        walk = passages(e.pd)
        assert len(walk) == 2 * e.pd.n
        assert sorted(p.crossing for p in walk) == sorted(list(range(e.pd.n)) * 2)


def test_walk_matches_independent_trace(table):
    for e in table:
        mine = [(p.crossing, p.in_slot, p.out_slot) for p in passages(e.pd)]
        theirs = [w[:3] for w in oracles.pd_walk(e.pd.crossings, e.pd.base_arc)]
        assert mine == theirs, e.name


def test_table_diagrams_are_planar(table):
    assert all(is_planar(e.pd) for e in table)


def test_trefoil_signs():
    assert crossing_signs(parse_pd(TREFOIL)) == [1, 1, 1]


# connected sum


def test_unknot_is_identity_for_sum(table):
    t = table["3_1"].pd
    assert canonical_dt(connected_sum(unknot(), t)) == canonical_dt(t)
    assert canonical_dt(connected_sum(t, unknot())) == canonical_dt(t)


def test_trefoil_sum_code_matches_traversal_oracle(table):
    d = connected_sum(table["3_1"].pd, table["3_1"].pd)
    assert extract_dt(d) == (4, 6, 2, 10, 12, 8)
    assert oracles.dt_code(d.crossings, d.base_arc) == (4, 6, 2, 10, 12, 8)


def test_square_knot(table):
    t = table["3_1"].pd
    square = connected_sum(t, mirror_diagram(t))
    assert square.n == 6 and validate_diagram(square).ok
    # amphichiral: its Jones polynomial is symmetric under t -> 1/t
    j = jones(square)
    assert j == j.substitute_power(-1)
    assert j == jones(t) * jones(t).substitute_power(-1)
    # composite, so it is not the prime 6_2 of the table
    assert j != jones(table["6_2"].pd)


def test_sum_crossing_counts_add(table):
    es = list(table)[:12]
    for a in es:
        for b in es:
            s = connected_sum(a.pd, b.pd)
            assert s.n == a.pd.n + b.pd.n
            assert validate_diagram(s).ok and is_planar(s)


def test_sum_with_reversed_operand_is_valid(table):
    d = connected_sum(reverse_diagram(table["5_2"].pd), table["3_1"].pd)
    assert validate_diagram(d).ok and d.n == 8


# mirror


def test_mirror_of_unknot():
    assert mirror_diagram(unknot()) == unknot()


def test_mirror_is_an_involution(table):
    for e in table:
        assert mirror_diagram(mirror_diagram(e.pd)) == e.pd


def test_mirror_flips_every_sign(table):
    for e in table:
        m = mirror_diagram(e.pd)
        assert validate_diagram(m).ok
        assert crossing_signs(m) == [-s for s in crossing_signs(e.pd)]


# alternation


def test_alternating_flags(table):
    assert is_alternating(unknot())
    for e in table:
        if e.crossing_number <= 7:
            assert is_alternating(e.pd), e.name
    assert not is_alternating(table["8_19"].pd)
    assert not is_alternating(table["11n_34"].pd)


# isomorphism


def test_relabelled_diagram_is_isomorphic(table):
    d = table["6_2"].pd
    shift = {a: a + 100 for a in d.arcs}
    moved = Diagram(tuple(tuple(shift[a] for a in c) for c in reversed(d.crossings)), shift[d.base_arc])
    assert is_isomorphic(d, moved)
    assert normalize(moved) == normalize(d)
    assert not is_isomorphic(d, table["6_1"].pd)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 36), st.integers(0, 100))
def test_any_basepoint_gives_valid_diagram(table, k, j):
    e = list(table)[k]
    arcs = sorted(e.pd.arcs)
    d = Diagram(e.pd.crossings, arcs[j % len(arcs)])
    assert validate_diagram(d).ok
    assert len(passages(d)) == 2 * d.n
    assert jones(d) == jones(e.pd)


def test_require_valid_raises():
    from knotcrypt.diagram import require_valid

    with pytest.raises(InvalidDiagramError):
        require_valid(Diagram(((1, 3, 2, 4), (3, 1, 4, 2))))

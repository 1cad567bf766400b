import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from canvaslab.canvas import Canvas, double_wheel, fix_c4e, fix_w5, icosahedron_minus_triangle
from canvaslab.deficiency import (
    PAPER_PARAMS,
    Params,
    ParamsError,
    decomposition_check,
    defbound_check,
    deficiency,
    deficiency_via_faces,
    induced_closure,
    prop_4_5_expected,
    random_two_connected_subgraph,
    report,
    split_bounds_check,
    theorem_6_1_terms,
)
from canvaslab.plane_graph import is_two_connected

from strategies import canvases


def test_paper_params_satisfy_the_inequalities():
    assert PAPER_PARAMS == Params.parse("1/18, 1/12, 2/3")
    assert str(PAPER_PARAMS) == "1/18,1/12,2/3"


@pytest.mark.parametrize(
    "text,message",
    [
        ("1/6,1/12,2/3", "I1 violated"),
        ("1/18,1/9,1/2", "I2 violated"),
        ("1/18,1/12,5/6", "I3 violated"),
        ("0,1/12,2/3", "epsilon must be positive"),
        ("1/18,1/12", "three comma-separated"),
    ],
)
def test_bad_params(text, message):
    with pytest.raises(ParamsError, match=message):
        Params.parse(text)


def test_w5_report():
    r = report(fix_w5())
    assert (r.v, r.defi, r.b, r.q) == (1, 2, 1, 1)
    assert r.s == Fraction(2, 9)
    assert r.d == Fraction(16, 9)
    assert r.face_terms == (0,) * 5 and r.consistent
    assert prop_4_5_expected(fix_w5()) == r.d
    assert theorem_6_1_terms(fix_w5()) == (Fraction(1, 18), 1)


def test_c4e_report():
    r = report(fix_c4e())
    assert (r.v, r.defi, r.d) == (0, 1, 1)
    assert prop_4_5_expected(fix_c4e()) == 1


def test_double_wheel_boundary_sets():
    r = report(double_wheel())
    assert (r.v, r.defi, r.b, r.q) == (2, 2, 2, 2)
    assert r.consistent
    assert prop_4_5_expected(double_wheel()) is None


@settings(max_examples=100, deadline=None)
@given(canvases(max_k=7, max_steps=7))
def test_deficiency_face_formula(t):
    assert deficiency(t) == deficiency_via_faces(t)


@settings(max_examples=60, deadline=None)
@given(canvases(max_k=6, max_steps=7))
def test_decomposition_with_induced_subgraphs(t):
    rng = random.Random(len(t.graph.edges))
    for _ in range(5):
        g2 = random_two_connected_subgraph(t, rng)
        assert is_two_connected(g2)
        rep = decomposition_check(t, g2)
        # the deficiency and internal count always split exactly
        assert rep["def"].holds and rep["v"].holds
        closed = induced_closure(t, g2)
        assert decomposition_check(t, closed).holds


def test_surplus_decomposition_fails_for_a_non_induced_subgraph():
    t = icosahedron_minus_triangle()
    g2 = t.graph.without_edges([(0, 3), (0, 8), (1, 5), (3, 11), (9, 10), (9, 11)])
    assert is_two_connected(g2)
    rep = decomposition_check(t, g2)
    assert rep["def"].holds and rep["v"].holds
    assert (rep["b"].lhs, rep["b"].rhs, rep["b"].holds) == (6, 4, False)
    assert (rep["s"].lhs, rep["s"].rhs) == (Fraction(3, 2), Fraction(4, 3))
    assert not rep["d"].holds
    assert decomposition_check(t, induced_closure(t, g2)).holds


def test_chord_split_bound_on_c4e():
    rep = split_bounds_check(fix_c4e(), (0, 2))
    assert rep.holds and rep["d"].lhs == rep["d"].rhs == 1
    with pytest.raises(ValueError):
        split_bounds_check(fix_c4e(), (0, 1))


def test_vertex_split_bound_on_w5():
    rep = split_bounds_check(fix_w5(), (0, 5, 2))
    assert rep.holds and rep.note == ""
    w = fix_w5()
    t = Canvas(w.graph.without_edges([(1, 5)]), w.outer, w.lists)
    rep = split_bounds_check(t, (1, 5, 3))
    assert "augmented" in rep.note


def test_defbound_slack_on_c4e_chord():
    # no internal vertices, one chord: def exceeds the bound by exactly one
    rep = defbound_check(fix_c4e())
    assert rep.applicable
    assert (rep["defbound"].lhs, rep["defbound"].rhs) == (1, 0)
    assert rep["slack"].holds and rep["equality-iff-five-and-chordless"].holds
    assert "internal-degree reading" in rep.note


def test_defbound_equality_on_w5():
    rep = defbound_check(fix_w5())
    assert rep.holds and rep["defbound"].lhs == rep["defbound"].rhs == 2
    assert rep.note == "all-vertex reading of the equality clause fails"


def test_defbound_not_applicable_below_degree_five():
    assert not defbound_check(double_wheel()).applicable

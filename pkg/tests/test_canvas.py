import pytest

from canvaslab.canvas import (
    Canvas,
    CanvasError,
    cycle_colorable,
    double_wheel,
    fix_c4e,
    fix_k4,
    fix_w5,
    icosahedron_minus_triangle,
    induced_subcanvas,
    make_lists,
    subcanvas_by_cycle,
    subcanvas_by_face,
    validate,
    validate_canvas,
    wheel,
)
from canvaslab.plane_graph import PlaneGraph


@pytest.mark.parametrize("make", [fix_w5, fix_c4e, double_wheel, icosahedron_minus_triangle])
def test_fixtures_are_valid(make):
    assert validate(make()).ok


def test_k4_fixture_has_short_internal_list():
    rep = validate(fix_k4())
    assert rep.tags() == {"short-internal-list"}
    assert validate(fix_k4(range(5))).ok


def test_boundary_uncolorable():
    # C3 with all lists {1,2} cannot be colored
    t = fix_c4e({0: {1}, 1: {1}, 2: {2}, 3: {3}})
    assert "boundary-uncolorable" in validate(t).tags()


def test_not_two_connected_and_missing_list():
    g = PlaneGraph({0: (1, 2), 1: (2, 0), 2: (0, 1, 3), 3: (2,)}, (0, 1))
    rep = validate_canvas(g, (0, 1, 2), {0: {1}, 1: {2}, 2: {3}})
    assert {"not-2-connected", "missing-list"} <= rep.tags()


def test_wrong_outer_cycle_flagged():
    t = fix_w5()
    rep = validate_canvas(t.graph, (0, 1, 2, 4, 3), t.lists)
    assert "outer-not-cycle" in rep.tags()


def test_bad_embedding_short_circuits():
    g = PlaneGraph({0: (1, 2), 1: (2,), 2: (0, 1)}, (0, 1))
    rep = validate_canvas(g, (0, 1, 2), {0: {1}, 1: {2}, 2: {3}})
    assert rep.tags() == {"bad-embedding"}


@pytest.mark.parametrize(
    "lists,ok",
    [
        ({0: {1}, 1: {2}, 2: {3}}, True),
        ({0: {1, 2}, 1: {1, 2}, 2: {1, 2}}, False),
        ({0: {1, 2}, 1: {1, 2}, 2: {1, 2, 3}}, True),
    ],
)
def test_cycle_colorable_triangle(lists, ok):
    assert cycle_colorable((0, 1, 2), make_lists(lists)) is ok


def test_even_cycle_two_colorable():
    lists = make_lists({v: {1, 2} for v in range(6)})
    assert cycle_colorable(tuple(range(6)), lists)
    assert not cycle_colorable(tuple(range(5)), make_lists({v: {1, 2} for v in range(5)}))


def test_canvas_equality_ignores_name_and_foreign_lists():
    a = fix_w5()
    b = Canvas(a.graph, a.outer, {**a.lists, 99: frozenset({1})}, "other")
    assert a == b and hash(a) == hash(b)


def test_subcanvas_by_face_is_triangle():
    t = fix_w5()
    f = t.graph.face_of((1, 0))
    sub = subcanvas_by_face(t, f)
    assert len(sub.outer) == 3 and sub.graph.n == 3
    with pytest.raises(CanvasError):
        subcanvas_by_face(t, t.graph.outer_face)


def test_subcanvas_by_cycle_double_wheel():
    t = double_wheel()
    sub = subcanvas_by_cycle(t, (0, 5, 2, 3, 4))
    assert validate(sub).ok
    assert sub.internal_vertices == (6,)


def test_induced_subcanvas_requires_cycle_and_two_connectivity():
    t = fix_w5()
    spokes = t.graph.without_edges([(3, 5), (4, 5)])
    sub = induced_subcanvas(t, spokes)
    assert sub.internal_vertices == (5,)
    with pytest.raises(CanvasError):
        induced_subcanvas(t, t.graph.without_edges([(0, 1)]))
    with pytest.raises(CanvasError):
        induced_subcanvas(t, t.graph.without_edges([(1, 5), (2, 5), (3, 5), (4, 5)]))


def test_wheel_sizes():
    for k in range(3, 9):
        t = wheel(k)
        assert validate(t).ok
        assert t.graph.degree(k) == k

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CANCELLATIVE, product_path
from dimerlab import fixtures
from dimerlab.contraction import contract
from dimerlab.quiver import (Arrow, DimerQuiver, Face, Path, PathError, homology, is_isomorphic,
                             lift, regauge, unit_cycle_at, validate)


def c3(faces=None, offsets=((1, 0), (0, 1), (-1, -1))):
    arrows = [("x", 0, 0, offsets[0]), ("y", 0, 0, offsets[1]), ("z", 0, 0, offsets[2])]
    faces = faces or [("+", "x y z".split()), ("-", "x z y".split())]
    return DimerQuiver.build(1, arrows, faces)


def codes(q):
    return {v.code for v in validate(q)}


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixtures_validate(name):
    assert validate(fixtures.load(name)) == []


def test_c3_hex_matches_hand_built():
    assert fixtures.load("c3_hex") == c3()


def test_same_orientation_violation():
    q = c3(faces=[("+", "x y z".split()), ("+", "x z y".split())])
    assert "arrow in two faces of same orientation" in codes(q)


def test_reversed_face_breaks_vertex_link():
    # (x y z)+ replaced by (x z y)+: every corner appears twice, so the
    # faces around the vertex fall apart into three fans
    q = c3(faces=[("+", "x z y".split()), ("-", "x z y".split())])
    assert codes(q) == {"vertex link not a cycle"}


def test_other_violations_are_named():
    assert "face homology nonzero" in codes(c3(offsets=((1, 0), (0, 1), (0, 0))))
    assert "homology does not generate Z^2" in codes(c3(offsets=((2, 0), (0, 2), (-2, -2))))
    # two disjoint copies of c3 on vertices 0 and 1
    q = DimerQuiver.build(2, [("x", 0, 0, (1, 0)), ("y", 0, 0, (0, 1)), ("z", 0, 0, (-1, -1)),
                              ("X", 1, 1, (1, 0)), ("Y", 1, 1, (0, 1)), ("Z", 1, 1, (-1, -1))],
                          [("+", "x y z".split()), ("-", "x z y".split()),
                           ("+", "X Y Z".split()), ("-", "X Z Y".split())])
    assert "not connected" in codes(q)
    q = DimerQuiver.build(2, [("x", 0, 1, (1, 0)), ("y", 0, 0, (0, 1)), ("z", 0, 0, (-1, -1))],
                          [("+", "x y z".split()), ("-", "x z y".split())])
    c = codes(q)
    assert "face not a cycle" in c and "euler characteristic nonzero" in c


def test_unit_cycles_c3():
    q = c3()
    cycles = unit_cycle_at(q, 0)
    assert len(cycles) == 6  # every rotation of both faces starts at the only vertex
    classes = {min(p.arrows[k:] + p.arrows[:k] for k in range(3)) for p in cycles}
    assert sorted(" ".join(q.name(a) for a in c) for c in classes) == ["x y z", "x z y"]
    with pytest.raises(IndexError):
        unit_cycle_at(q, 1)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_unit_cycles_are_null_homologous_cycles(name):
    q = fixtures.load(name)
    for i in range(q.vertex_count):
        cycles = unit_cycle_at(q, i)
        assert cycles
        # one rotation per face slot leaving i: two per outgoing arrow
        assert len(cycles) == 2 * len(q.out_arrows[i])
        for p in cycles:
            assert p.start == i and q.path_head(p) == i
            assert homology(q, p) == (0, 0)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_face_lengths_sum_to_twice_arrows(name):
    q = fixtures.load(name)
    assert sum(len(f.arrows) for f in q.faces) == 2 * len(q.arrows)


def test_lift_and_homology_c3():
    q = c3()
    assert lift(q, q.path("x", "y")).visited == ((0, (0, 0)), (0, (1, 0)), (0, (1, 1)))
    assert homology(q, Path(0)) == (0, 0)
    assert homology(q, q.path("x")) == (1, 0)
    assert homology(q, q.path("x", "y", "z")) == (0, 0)
    with pytest.raises(PathError):
        q.check(Path(0, (0, 7)))


def test_lift_faces_close_up():
    for name in fixtures.NAMES:
        q = fixtures.load(name)
        for f in range(len(q.faces)):
            lp = lift(q, q.face_path(f))
            assert lp.visited[-1] == lp.visited[0]


def test_lifts_of_ab_and_ba_share_endpoints():
    q = fixtures.load("fig1iii_Q")
    ab, ba = lift(q, product_path(q, "ab")), lift(q, product_path(q, "ba"))
    assert ab.visited[0] == ba.visited[0] and ab.visited[-1] == ba.visited[-1]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(fixtures.NAMES), st.data())
def test_lift_is_additive(name, data):
    q = fixtures.load(name)
    v = data.draw(st.integers(0, q.vertex_count - 1))
    arrows = []
    for _ in range(data.draw(st.integers(0, 8))):
        arrows.append(data.draw(st.sampled_from(q.out_arrows[v])))
        v = q.head(arrows[-1])
    p = Path(q.tail(arrows[0]) if arrows else v, tuple(arrows))
    k = data.draw(st.integers(0, len(arrows)))
    first = Path(p.start, p.arrows[:k])
    second = Path(q.path_head(first), p.arrows[k:])
    start = (data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3)))
    l1 = lift(q, first, start)
    l2 = lift(q, second, l1.visited[-1][1])
    assert lift(q, p, start).visited[-1] == l2.visited[-1]
    assert homology(q, p) == tuple(a + b for a, b in zip(homology(q, first), homology(q, second)))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.lists(st.tuples(st.integers(-1, 3), st.integers(-1, 3),
                                             st.integers(-2, 2), st.integers(-2, 2)), max_size=6),
       st.lists(st.tuples(st.sampled_from("+-x"), st.lists(st.integers(-1, 6), max_size=4)), max_size=5))
def test_validate_is_total(n, arrows, faces):
    q = DimerQuiver(n, tuple(Arrow(f"a{k}", t, h, (dx, dy)) for k, (t, h, dx, dy) in enumerate(arrows)),
                    tuple(Face(tuple(ids), o) for o, ids in faces))
    for v in validate(q):
        assert v.code and v.message


def test_regauge_preserves_validity_and_isomorphism():
    q = fixtures.load("fig1iii_Q")
    g = regauge(q, [(0, 0), (2, -1), (5, 3)])
    assert validate(g) == []
    assert is_isomorphic(q, g)
    assert not is_isomorphic(q, fixtures.load("fig1iii_Qp"))


@pytest.mark.parametrize("name", CANCELLATIVE)
def test_empty_contraction_is_identity(name):
    q = fixtures.load(name)
    m = contract(q, ())
    assert m.target == q

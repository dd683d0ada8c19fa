import pytest
from hypothesis import given, settings, strategies as st

from dimerlab import fixtures
from dimerlab.io import ParseError, parse, read, serialize, write
from dimerlab.quiver import regauge, validate

C3 = """dimer 1
vertex 0 0.5 0.5
arrow x 0 0 (1,0)
arrow y 0 0 (0,1)
arrow z 0 0 (-1,-1)
face + x y z
face - x z y
"""


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_round_trip_is_byte_stable(name):
    text = fixtures.text(name)
    q = parse(text)
    assert serialize(q) == text
    assert parse(serialize(q)) == q


def test_c3_parses_valid():
    q = parse(C3)
    assert validate(q) == []
    assert q.vertex_count == 1 and len(q.arrows) == 3


def test_comments_and_blank_lines():
    text = "# leading\n\ndimer 1  # header\n" + "\n".join(C3.splitlines()[1:]) + "\n# trailing\n"
    assert parse(text) == parse(C3)


def test_comments_are_written(tmp_path):
    p = tmp_path / "c3.dimer"
    write(parse(C3), p, comments=["hexagonal", "one vertex"])
    assert p.read_text().splitlines()[1:3] == ["# hexagonal", "# one vertex"]
    assert read(p) == parse(C3)


@pytest.mark.parametrize("text, line, fragment", [
    (C3.replace("face - x z y", "face - x z w"), 7, "undeclared arrow 'w'"),
    (C3.replace("arrow y 0 0", "arrow x 0 0"), 4, "duplicate arrow name"),
    (C3.replace("vertex 0 0.5 0.5", "vertex 0\nvertex 0"), 3, "duplicate vertex id"),
    (C3.replace("vertex 0 0.5 0.5", "vertex 1"), 2, "dense"),
    (C3.replace("dimer 1", "dimer 2"), 1, "header"),
    (C3.replace("(1,0)", "(1;0)"), 3, "bad offset"),
    (C3.replace("arrow z 0 0", "arrow z 0 4"), 5, "undeclared vertex 4"),
    (C3 + "edge a b\n", 8, "unknown keyword"),
    (C3.replace("face + x y z", "face * x y z"), 6, "+ or -"),
    ("", 1, "empty"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.line == line
    assert fragment in str(e.value)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(fixtures.NAMES), st.data())
def test_round_trip_after_regauge(name, data):
    q = fixtures.load(name)
    phi = [(data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))) for _ in range(q.vertex_count)]
    g = regauge(q, phi)
    assert parse(serialize(g)) == g
    assert serialize(parse(serialize(g))) == serialize(g)

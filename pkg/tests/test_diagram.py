import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bikeigebra.blockmatrix import read_matrix
from bikeigebra.coloring import count_colorings
from bikeigebra.diagram import (
    Diagram,
    DiagramError,
    EquationSystem,
    Node,
    Tangle,
    detect_format,
    diagram_to_equations,
    format_diagram,
    format_equations,
    parse_diagram,
    parse_equations,
    parse_system,
)
from bikeigebra.errors import ParseError, StructureError
from bikeigebra.terms import App, Var, parse_term


def test_free_loop():
    D = parse_diagram("semiarcs a\n")
    assert D.semiarcs == ("a",) and D.nodes == ()
    assert diagram_to_equations(D).equations == ()


def test_closed_two_node_diagram():
    D = parse_diagram("semiarcs a b c d\nX a b c d\nV c d a b\n")
    assert len(D.nodes) == 2
    assert D.boundary == ()


def test_theta():
    D = parse_diagram("semiarcs a b c\nH a b c\nH a b c\n")
    assert D.count("H") == 2
    assert diagram_to_equations(D).equations == (
        (Var("c"), App("p", (Var("a"), Var("b")))),
    ) * 2


@pytest.mark.parametrize(
    "text,code,line,col",
    [
        ("semiarcs a b\nX a b a\n", "ARITY", 2, 7),
        ("semiarcs a b\nT a z\n", "UNKNOWN_LABEL", 2, 5),
        ("semiarcs a b\nT a b\nT a b\nT a b\n", "DUPLICATE_OVERUSE", 4, 3),
        ("semiarcs a\nQ a\n", "SYNTAX", 2, 1),
        ("T a b\n", "SYNTAX", 1, 1),
        ("semiarcs a a\n", "SYNTAX", 1, 12),
        ("semiarcs a-b\n", "SYNTAX", 1, 10),
        ("", "SYNTAX", None, None),
    ],
)
def test_parse_diagram_errors(text, code, line, col):
    with pytest.raises(ParseError) as info:
        parse_diagram(text)
    assert info.value.code == code
    assert (info.value.line, info.value.col) == (line, col)


def test_diagram_model_validation():
    with pytest.raises(DiagramError):
        Diagram(("a",), (Node("T", ("a", "b")),))
    with pytest.raises(DiagramError):
        Diagram(("a", "b"), (Node("T", ("a",)),))
    with pytest.raises(DiagramError):
        Diagram(("a",), (Node("T", ("a", "a")), Node("T", ("a", "a"))))


def test_single_twist_and_crossings():
    D = Diagram(("a", "b"), (Node("T", ("a", "b")),))
    assert diagram_to_equations(D).equations == ((Var("b"), App("t", (Var("a"),))),)
    assert D.boundary == ("a", "b")
    D = Diagram(("x1", "x3", "x5", "x6"), (Node("X", ("x3", "x1", "x6", "x5")),))
    assert diagram_to_equations(D).equations == (
        (Var("x6"), App("u", (Var("x3"), Var("x1")))),
        (Var("x5"), App("o", (Var("x1"), Var("x3")))),
    )
    D = Diagram(("x2", "x7", "x8", "x9"), (Node("V", ("x2", "x7", "x8", "x9")),))
    assert [str(l) + " = " + str(r) for l, r in diagram_to_equations(D).equations] == [
        "x8 = v(x2, x7)",
        "x9 = v(x7, x2)",
    ]


def test_fixture_round_trips(fixtures):
    for path in fixtures.glob("*.dgm"):
        D = parse_diagram(path.read_text())
        assert parse_diagram(format_diagram(D)) == D


def test_l1_transcription(fixtures):
    E = parse_equations((fixtures / "L1-long.eqs").read_text())
    assert len(E.equations) == 10
    assert E.variables == tuple(f"x{i}" for i in range(1, 10))
    assert str(E.equations[0][1]) == "v(t(x1), x1)"
    R = parse_equations((fixtures / "L1-reduced.eqs").read_text())
    assert len(R.equations) == 3 and R.variables == ("x1", "x2")
    assert parse_equations(format_equations(E)) == E


def test_small_equations():
    E = parse_equations("x = x")
    assert E.variables == ("x",) and len(E.equations) == 1
    (lhs, rhs), = parse_equations("x5 = u(x2, x4)").equations
    assert lhs == Var("x5") and rhs == App("u", (Var("x2"), Var("x4")))
    # an operator name without parentheses is a variable
    assert parse_term("u") == Var("u")


@pytest.mark.parametrize(
    "text,code,col",
    [
        ("x = u(a)", "SYNTAX", 8),
        ("x = u(a, b, c)", "SYNTAX", 11),
        ("x = w(a)", "SYNTAX", 5),
        ("x u(a, b)", "SYNTAX", 3),
        ("x = a b", "SYNTAX", 7),
        ("vars x\nx = y", "UNDECLARED", 5),
    ],
)
def test_parse_equation_errors(text, code, col):
    with pytest.raises(ParseError) as info:
        parse_equations(text)
    assert info.value.code == code
    assert info.value.col == col


def test_equation_system_validation():
    with pytest.raises(StructureError):
        EquationSystem(("x",), ((Var("x"), Var("y")),))
    with pytest.raises(StructureError):
        Tangle(EquationSystem(("x",)), ("y",))


def test_format_detection():
    assert detect_format("# c\nsemiarcs a\n") == "diagram"
    assert detect_format("vars x\nx = x\n") == "equations"
    assert parse_system("semiarcs a b\nT a b\n").equations == ((Var("b"), App("t", (Var("a"),))),)
    with pytest.raises(ValueError):
        parse_system("x = x", "nope")


@st.composite
def diagrams(draw):
    names = ["a", "b", "c", "d", "e", "f"]
    uses = {n: 0 for n in names}
    nodes = []
    for _ in range(draw(st.integers(0, 4))):
        kind = draw(st.sampled_from("XVTH"))
        k = {"X": 4, "V": 4, "T": 2, "H": 3}[kind]
        free = [n for n in names if uses[n] < 2]
        if len(free) < k:
            break
        picked = draw(st.lists(st.sampled_from(free), min_size=k, max_size=k))
        trial = dict(uses)
        for p in picked:
            trial[p] += 1
        if max(trial.values()) > 2:
            continue
        uses = trial
        nodes.append(Node(kind, tuple(picked)))
    return Diagram(tuple(names), tuple(nodes))


@settings(max_examples=200, deadline=None)
@given(diagrams())
def test_round_trip_and_equation_count(D):
    assert parse_diagram(format_diagram(D)) == D
    E = diagram_to_equations(D)
    expected = 2 * D.count("X") + 2 * D.count("V") + D.count("T") + D.count("H")
    assert len(E.equations) == expected
    assert parse_equations(format_equations(E)) == E


def test_pending_counts_file(fixtures):
    doc = json.loads((fixtures / "pending.json").read_text())
    for item in doc["pending"]:
        assert (fixtures / item["matrix"]).exists()
        # a diagram dropped in here becomes checkable
        if item["diagram"] is not None:
            X = read_matrix(fixtures / item["matrix"])
            E = parse_system((fixtures / item["diagram"]).read_text())
            assert count_colorings(E, X, verify=False) == item["count"]

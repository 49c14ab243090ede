import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bikeigebra import catalog
from bikeigebra.coloring import (
    BUDGET_ENV,
    brute_force_count,
    count_colorings,
    is_colorable,
    list_colorings,
)
from bikeigebra.diagram import EquationSystem, parse_diagram, diagram_to_equations, parse_system
from bikeigebra.errors import BudgetExceeded, NotVerifiedError
from bikeigebra.search import SearchFilter, enumerate_all
from bikeigebra.terms import App, Var, compile_term

MATRICES = ("x2", "x4a", "x4b")


def load_system(fixtures, name):
    return parse_system((fixtures / name).read_text())


def test_l1_not_colorable(fixtures):
    X = catalog.load("x2")
    for name in ("L1-long.eqs", "L1-reduced.eqs"):
        E = load_system(fixtures, name)
        assert count_colorings(E, X) == 0
        assert brute_force_count(E, X) == 0
        assert not is_colorable(E, X)


def test_l1_reduced_conditions_each_fail(fixtures):
    # every one of the four assignments breaks at least one condition
    E = load_system(fixtures, "L1-reduced.eqs")
    ops = catalog.load("x2").ops
    slots = {"x1": 0, "x2": 1}
    for env in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        failed = [
            i for i, (l, r) in enumerate(E.equations)
            if compile_term(l, slots)(ops, env) != compile_term(r, slots)(ops, env)
        ]
        assert failed


def test_l1_forms_agree_on_census(fixtures):
    long = load_system(fixtures, "L1-long.eqs")
    reduced = load_system(fixtures, "L1-reduced.eqs")
    for n in (1, 2, 3):
        for e in enumerate_all(SearchFilter(n, iso=True)):
            X = e.structure
            assert count_colorings(long, X) == count_colorings(reduced, X)


def test_unknot_and_theta(fixtures):
    assert count_colorings(load_system(fixtures, "unknot.dgm"), catalog.load("x2")) == 2
    theta = load_system(fixtures, "theta.dgm")
    X = catalog.load("x4a")
    assert count_colorings(theta, X) == 16 == brute_force_count(theta, X)
    cols = list_colorings(theta, X)
    assert len(cols) == 16
    assert cols[0] == {"a": 1, "b": 1, "c": 3}
    assert cols == sorted(cols, key=lambda c: (c["a"], c["b"], c["c"]))


def test_unverified_structure_refused(fixtures):
    theta = load_system(fixtures, "theta.dgm")
    X = catalog.load("broken")
    with pytest.raises(NotVerifiedError):
        count_colorings(theta, X)
    with pytest.raises(NotVerifiedError):
        brute_force_count(theta, X)
    assert count_colorings(theta, X, verify=False) == brute_force_count(theta, X, verify=False)


def test_budget(fixtures, monkeypatch):
    E = load_system(fixtures, "L1-long.eqs")
    X = catalog.load("x2")
    with pytest.raises(BudgetExceeded):
        brute_force_count(E, X, budget=100)
    monkeypatch.setenv(BUDGET_ENV, "10")
    with pytest.raises(BudgetExceeded):
        brute_force_count(E, X)


def _flip(node_line):
    kind, *labs = node_line.split()
    if kind == "X":
        a, b, c, d = labs
        return f"X {c} {d} {a} {b}"
    if kind == "V":
        a, b, c, d = labs
        return f"V {c} {d} {a} {b}"
    if kind == "H":
        a, b, c = labs
        return f"H {b} {c} {a}"
    return node_line


CLOSED = [
    "semiarcs a b c d\nX a b c d\nX c d a b\n",
    "semiarcs a b c d\nX a b c d\nV c d a b\n",
    "semiarcs a b c d e f\nX a b c d\nH c d e\nH e f a\nT f b\n",
    "semiarcs a b c d e f\nH a b c\nH c d e\nX e f a b\n",
]


@pytest.mark.parametrize("text", CLOSED)
def test_convention_flip_and_vertex_rotation(text):
    lines = text.strip().splitlines()
    base = diagram_to_equations(parse_diagram(text))
    for k in range(1, len(lines)):
        flipped = lines[:k] + [_flip(lines[k])] + lines[k + 1:]
        other = diagram_to_equations(parse_diagram("\n".join(flipped) + "\n"))
        for name in ("x2", "x4a", "x4b", "x8"):
            X = catalog.load(name)
            assert count_colorings(other, X) == count_colorings(base, X)


def random_system(rng, k):
    names = [f"x{i}" for i in range(1, k + 1)]

    def term(depth):
        if depth == 0 or rng.random() < 0.35:
            return Var(rng.choice(names))
        op = rng.choice("uovpt")
        if op == "t":
            return App("t", (term(depth - 1),))
        return App(op, (term(depth - 1), term(depth - 1)))

    eqs = []
    for _ in range(rng.randint(0, 4)):
        lhs = Var(rng.choice(names)) if rng.random() < 0.6 else term(2)
        eqs.append((lhs, term(3)))
    return EquationSystem(tuple(names), tuple(eqs))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.sampled_from(MATRICES))
def test_solver_matches_brute_force(seed, k, name):
    E = random_system(random.Random(seed), k)
    X = catalog.load(name)
    n = count_colorings(E, X)
    assert n == brute_force_count(E, X)
    assert len(list_colorings(E, X)) == n
    assert is_colorable(E, X) == (n > 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_adding_equations_never_adds_colorings(seed):
    rng = random.Random(seed)
    E = random_system(rng, 4)
    F = random_system(rng, 4)
    X = catalog.load("x4a")
    both = EquationSystem(E.variables, E.equations + F.equations)
    assert count_colorings(both, X) <= count_colorings(E, X)


def test_workers_do_not_change_results(fixtures):
    X = catalog.load("x8")
    rng = random.Random(7)
    for _ in range(3):
        E = random_system(rng, 5)
        assert count_colorings(E, X, workers=2) == count_colorings(E, X)
        assert list_colorings(E, X, workers=2) == list_colorings(E, X)

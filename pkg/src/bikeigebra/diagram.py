"""Diagrams of twisted virtual handlebody-links and coloring-equation systems.

Diagram files are line oriented::

    # theta graph
    semiarcs a b c
    H a b c
    H a b c

Node lines: ``X under_in over_in under_out over_out`` (classical crossing),
``V a_in b_in a_out b_out`` (virtual crossing), ``T in out`` (twist bar) and
``H a b c`` (trivalent vertex, ``c = ab``).

Equation files hold one ``term = term`` per line, optionally preceded by a
``vars`` header declaring every variable.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ParseError, StructureError
from .terms import NAME_RE, App, Term, Var, ordered_variables, parse_equation

NODE_ARITY = {"X": 4, "V": 4, "T": 2, "H": 3}
NODE_NAMES = {"X": "classical", "V": "virtual", "T": "twist", "H": "vertex"}


class Node(NamedTuple):
    kind: str
    labels: tuple[str, ...]

    def __str__(self):
        return " ".join((self.kind,) + self.labels)


def classical(under_in, over_in, under_out, over_out) -> Node:
    return Node("X", (under_in, over_in, under_out, over_out))


def virtual(a_in, b_in, a_out, b_out) -> Node:
    return Node("V", (a_in, b_in, a_out, b_out))


def twist(a_in, a_out) -> Node:
    return Node("T", (a_in, a_out))


def vertex(a, b, c) -> Node:
    return Node("H", (a, b, c))


class DiagramError(StructureError):
    def __init__(self, code, message):
        self.code = code
        super().__init__(f"{code}: {message}")


@dataclass(frozen=True)
class Diagram:
    semiarcs: tuple[str, ...]
    nodes: tuple[Node, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "semiarcs", tuple(self.semiarcs))
        object.__setattr__(self, "nodes", tuple(Node(n[0], tuple(n[1])) for n in self.nodes))
        if len(set(self.semiarcs)) != len(self.semiarcs):
            raise DiagramError("SYNTAX", "semiarc declared twice")
        declared = set(self.semiarcs)
        for node in self.nodes:
            if node.kind not in NODE_ARITY:
                raise DiagramError("SYNTAX", f"unknown node kind {node.kind!r}")
            if len(node.labels) != NODE_ARITY[node.kind]:
                raise DiagramError("ARITY", f"{node.kind} takes {NODE_ARITY[node.kind]} labels")
            for lab in node.labels:
                if lab not in declared:
                    raise DiagramError("UNKNOWN_LABEL", f"{lab!r} is not a declared semiarc")
        for lab, k in self.uses().items():
            if k > 2:
                raise DiagramError("DUPLICATE_OVERUSE", f"semiarc {lab!r} used {k} times")

    def uses(self) -> Counter:
        c = Counter({s: 0 for s in self.semiarcs})
        for node in self.nodes:
            c.update(node.labels)
        return c

    @property
    def boundary(self) -> tuple[str, ...]:
        """Semiarcs with exactly one node end (open ends of a tangle)."""
        uses = self.uses()
        return tuple(s for s in self.semiarcs if uses[s] == 1)

    def count(self, kind: str) -> int:
        return sum(1 for n in self.nodes if n.kind == kind)


@dataclass(frozen=True)
class EquationSystem:
    variables: tuple[str, ...]
    equations: tuple[tuple[Term, Term], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple((l, r) for l, r in self.equations))
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise StructureError("variable declared twice")
        for lhs, rhs in self.equations:
            for v in ordered_variables(lhs) + ordered_variables(rhs):
                if v not in declared:
                    raise StructureError(f"UNDECLARED: variable {v!r}")

    def add(self, *equations: tuple[Term, Term]) -> "EquationSystem":
        return EquationSystem(self.variables, self.equations + tuple(equations))

    @classmethod
    def from_equations(cls, equations) -> "EquationSystem":
        names: list[str] = []
        for lhs, rhs in equations:
            ordered_variables(lhs, names)
            ordered_variables(rhs, names)
        return cls(tuple(names), tuple(equations))


@dataclass(frozen=True)
class Tangle:
    system: EquationSystem
    boundary: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        missing = set(self.boundary) - set(self.system.variables)
        if missing:
            raise StructureError(f"boundary variables not in the system: {sorted(missing)}")
        if len(set(self.boundary)) != len(self.boundary):
            raise StructureError("repeated boundary variable")

    @property
    def internal(self) -> tuple[str, ...]:
        b = set(self.boundary)
        return tuple(v for v in self.system.variables if v not in b)


def _strip(line: str) -> str:
    return line.split("#", 1)[0]


def _tokens(line: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_diagram(text: str) -> Diagram:
    semiarcs = None
    nodes = []
    uses: Counter = Counter()
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(_strip(raw))
        if not toks:
            continue
        head, hcol = toks[0]
        if head == "semiarcs":
            if semiarcs is not None:
                raise ParseError("SYNTAX", "second 'semiarcs' header", lineno, hcol)
            semiarcs = []
            for lab, col in toks[1:]:
                if not NAME_RE.fullmatch(lab):
                    raise ParseError("SYNTAX", f"bad semiarc label {lab!r}", lineno, col)
                if lab in semiarcs:
                    raise ParseError("SYNTAX", f"semiarc {lab!r} declared twice", lineno, col)
                semiarcs.append(lab)
            if not semiarcs:
                raise ParseError("SYNTAX", "'semiarcs' needs at least one label", lineno, hcol)
            continue
        if semiarcs is None:
            raise ParseError("SYNTAX", "expected 'semiarcs' header before nodes", lineno, hcol)
        if head not in NODE_ARITY:
            raise ParseError("SYNTAX", f"unknown node kind {head!r}", lineno, hcol)
        args = toks[1:]
        if len(args) != NODE_ARITY[head]:
            col = args[-1][1] if args else hcol
            raise ParseError(
                "ARITY",
                f"{NODE_NAMES[head]} node takes {NODE_ARITY[head]} labels, got {len(args)}",
                lineno,
                col,
            )
        for lab, col in args:
            if lab not in semiarcs:
                raise ParseError("UNKNOWN_LABEL", f"{lab!r} is not a declared semiarc", lineno, col)
            uses[lab] += 1
            if uses[lab] > 2:
                raise ParseError("DUPLICATE_OVERUSE", f"semiarc {lab!r} used more than twice", lineno, col)
        nodes.append(Node(head, tuple(lab for lab, _ in args)))
    if semiarcs is None:
        raise ParseError("SYNTAX", "missing 'semiarcs' header")
    return Diagram(tuple(semiarcs), tuple(nodes))


def format_diagram(D: Diagram) -> str:
    lines = ["semiarcs " + " ".join(D.semiarcs)]
    lines += [str(n) for n in D.nodes]
    return "\n".join(lines) + "\n"


def parse_equations(text: str) -> EquationSystem:
    declared = None
    equations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        toks = _tokens(line)
        if not toks:
            continue
        if toks[0][0] == "vars" and "=" not in line:
            if declared is not None or equations:
                raise ParseError("SYNTAX", "'vars' header must come first, once", lineno, toks[0][1])
            declared = []
            for name, col in toks[1:]:
                if not NAME_RE.fullmatch(name):
                    raise ParseError("SYNTAX", f"bad variable name {name!r}", lineno, col)
                if name in declared:
                    raise ParseError("SYNTAX", f"variable {name!r} declared twice", lineno, col)
                declared.append(name)
            continue
        lhs, rhs = parse_equation(line, lineno)
        if declared is not None:
            for name in ordered_variables(lhs) + ordered_variables(rhs):
                if name not in declared:
                    m = re.search(rf"(?<![A-Za-z0-9_]){re.escape(name)}(?![A-Za-z0-9_(])", line)
                    raise ParseError(
                        "UNDECLARED", f"variable {name!r} not declared", lineno, m.start() + 1 if m else None
                    )
        equations.append((lhs, rhs))
    if declared is not None:
        return EquationSystem(tuple(declared), tuple(equations))
    return EquationSystem.from_equations(equations)


def format_equations(E: EquationSystem, header: bool = True) -> str:
    lines = ["vars " + " ".join(E.variables)] if header and E.variables else []
    lines += [f"{lhs} = {rhs}" for lhs, rhs in E.equations]
    return "\n".join(lines) + "\n"


def node_equations(node: Node) -> list[tuple[Term, Term]]:
    """Coloring rule of a single node, as ``output = term`` equations."""
    L = [Var(x) for x in node.labels]
    if node.kind == "X":
        ui, oi, uo, oo = L
        return [(uo, App("u", (ui, oi))), (oo, App("o", (oi, ui)))]
    if node.kind == "V":
        ai, bi, ao, bo = L
        return [(ao, App("v", (ai, bi))), (bo, App("v", (bi, ai)))]
    if node.kind == "T":
        i, o = L
        return [(o, App("t", (i,)))]
    a, b, c = L
    return [(c, App("p", (a, b)))]


def diagram_to_equations(D: Diagram) -> EquationSystem:
    eqs = []
    for node in D.nodes:
        eqs.extend(node_equations(node))
    return EquationSystem(D.semiarcs, tuple(eqs))


def detect_format(text: str) -> str:
    """``"diagram"`` if the first token is ``semiarcs``, else ``"equations"``."""
    for raw in text.splitlines():
        toks = _strip(raw).split()
        if toks:
            return "diagram" if toks[0] == "semiarcs" else "equations"
    return "equations"


def parse_system(text: str, fmt: str = "auto") -> EquationSystem:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "diagram":
        return diagram_to_equations(parse_diagram(text))
    if fmt == "equations":
        return parse_equations(text)
    raise ValueError(f"unknown format {fmt!r}")

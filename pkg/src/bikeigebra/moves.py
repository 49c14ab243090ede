"""Local moves as pairs of boundary-labelled tangles, and the coloring-bijection check.

A move preserves colorings for a structure when, for every assignment of
elements to the shared boundary semiarcs, the two sides admit the same number
of extensions to their internal semiarcs.

The tangles are built from diagram nodes, so each side is colored by exactly
the rules used for whole diagrams.  Boundary semiarcs keep their names on both
sides; internal ones are prefixed ``L_`` / ``R_``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .algebra import TwistedVirtualBikeigebra
from .coloring import list_colorings
from .diagram import Diagram, EquationSystem, Node, Tangle, classical, diagram_to_equations, twist, vertex, virtual
from .errors import StructureError
from .terms import Var

MOVE_LABELS = (
    "rI", "rII", "rIII", "rIV.u", "rIV.o", "rV",
    "vI", "vII", "vIII", "v",
    "tI", "tII", "tIII", "tIV", "tV",
)


@dataclass(frozen=True)
class MoveTangle:
    label: str
    left: Tangle
    right: Tangle
    boundary: tuple[str, ...]
    axioms: tuple[str, ...] = ()
    note: str = ""

    def __post_init__(self):
        if self.left.boundary != self.boundary or self.right.boundary != self.boundary:
            raise StructureError(f"{self.label}: both sides must share the boundary {self.boundary}")
        shared = set(self.left.internal) & set(self.right.internal)
        if shared:
            raise StructureError(f"{self.label}: internal semiarcs on both sides: {sorted(shared)}")

    def swapped(self) -> "MoveTangle":
        return MoveTangle(self.label, self.right, self.left, self.boundary, self.axioms, self.note)


@dataclass
class BijectionReport:
    label: str
    boundary: tuple[str, ...]
    assignments: int
    left_counts: dict = field(repr=False)
    right_counts: dict = field(repr=False)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def max_extensions(self) -> int:
        return max([0, *self.left_counts.values(), *self.right_counts.values()])

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return f"{self.label} boundary={self.assignments} status={status} mismatches={len(self.mismatches)}"

    def as_dict(self) -> dict:
        return {
            "move": self.label,
            "boundary": list(self.boundary),
            "assignments": self.assignments,
            "status": "ok" if self.ok else "FAIL",
            "mismatches": [
                {"boundary": list(b), "left": l, "right": r} for b, l, r in self.mismatches
            ],
        }


def _side(prefix: str, boundary, nodes=(), arcs=()) -> Tangle:
    """Tangle from diagram nodes plus bare arcs ``(a, b)`` joining two ends."""
    bset = set(boundary)

    def name(lab):
        return lab if lab in bset else f"{prefix}_{lab}"

    nodes = [Node(n.kind, tuple(name(l) for l in n.labels)) for n in nodes]
    labels = list(boundary)
    for n in nodes:
        for lab in n.labels:
            if lab not in labels:
                labels.append(lab)
    system = diagram_to_equations(Diagram(tuple(labels), tuple(nodes)))
    system = system.add(*((Var(name(b)), Var(name(a))) for a, b in arcs))
    return Tangle(system, tuple(boundary))


def _move(label, boundary, left, right, axioms, note="") -> MoveTangle:
    return MoveTangle(
        label,
        _side("L", boundary, *left),
        _side("R", boundary, *right),
        tuple(boundary),
        tuple(axioms),
        note,
    )


def _triangle(kinds, boundary):
    """Both sides of a third-move on strands low, mid, high.

    ``kinds`` gives the node type ("X" or "V") for the pairs (low,mid),
    (low,high), (mid,high); in a classical pair the lower strand passes under.
    Side A meets the crossings in the order lm, lh, mh; side B in mh, lh, lm.
    """
    l, m, h, l2, m2, h2 = boundary

    def node(kind, lower_in, upper_in, lower_out, upper_out):
        make = classical if kind == "X" else virtual
        return make(lower_in, upper_in, lower_out, upper_out)

    klm, klh, kmh = kinds
    side_a = [
        node(klm, l, m, "l1", "m1"),
        node(klh, "l1", h, l2, "h1"),
        node(kmh, "m1", "h1", m2, h2),
    ]
    side_b = [
        node(kmh, m, h, "m1", "h1"),
        node(klh, l, "h1", "l1", h2),
        node(klm, "l1", "m1", l2, m2),
    ]
    return (side_a,), (side_b,)


def builtin_moves() -> list[MoveTangle]:
    moves = []

    # kinks: an arc against a curl under-first followed by a curl over-first
    moves.append(_move(
        "rI", ["a", "b"],
        ([], [("a", "b")]),
        ([classical("a", "c", "c", "m"), classical("d", "m", "b", "d")],),
        ["ri.i"],
    ))
    moves.append(_move(
        "rII", ["a", "b", "a2", "b2"],
        ([], [("a", "a2"), ("b", "b2")]),
        ([classical("a", "b", "c", "d"), classical("c", "d", "a2", "b2")],),
        ["rii.i", "rii.ii", "rii.iii", "rii.iv"],
    ))
    moves.append(_move(
        "rIII", ["l", "m", "h", "l2", "m2", "h2"],
        *_triangle("XXX", ["l", "m", "h", "l2", "m2", "h2"]),
        ["riii.i", "riii.ii", "riii.iii"],
    ))
    # a crossing of two edges next to a vertex is absorbed by turning the vertex
    moves.append(_move(
        "rIV.u", ["x", "y", "c"],
        ([vertex("x", "y", "c")],),
        ([classical("x", "y", "x1", "y1"), vertex("y1", "x1", "c")],),
        ["riv.i"],
    ))
    moves.append(_move(
        "rIV.o", ["x", "y", "c"],
        ([vertex("x", "y", "c")],),
        ([classical("y", "x", "y1", "x1"), vertex("y1", "x1", "c")],),
        ["riv.ii"],
    ))
    # strand z passes over the vertex and strand w passes under it
    moves.append(_move(
        "rV", ["x", "y", "c", "z", "z2", "w", "w2"],
        ([
            vertex("x", "y", "c0"),
            classical("c0", "z", "c1", "z2"),
            classical("w", "c1", "w2", "c"),
        ],),
        ([
            classical("x", "z", "x1", "za"),
            classical("y", "za", "y1", "z2"),
            classical("w", "x1", "wa", "x2"),
            classical("wa", "y1", "w2", "y2"),
            vertex("x2", "y2", "c"),
        ],),
        ["rv.i", "rv.ii", "rv.iii", "rv.iv"],
    ))
    moves.append(_move(
        "vI", ["a", "b"],
        ([], [("a", "b")]),
        ([virtual("a", "c", "c", "b")],),
        [],
        "virtual curl; relies on c -> c v c being a bijection",
    ))
    moves.append(_move(
        "vII", ["a", "b", "a2", "b2"],
        ([], [("a", "a2"), ("b", "b2")]),
        ([virtual("a", "b", "c", "d"), virtual("c", "d", "a2", "b2")],),
        ["vii.i", "vii.ii"],
    ))
    moves.append(_move(
        "vIII", ["l", "m", "h", "l2", "m2", "h2"],
        *_triangle("XVV", ["l", "m", "h", "l2", "m2", "h2"]),
        ["viii.i", "viii.ii", "viii.iii"],
    ))
    moves.append(_move(
        "v", ["l", "m", "h", "l2", "m2", "h2"],
        *_triangle("VVV", ["l", "m", "h", "l2", "m2", "h2"]),
        ["v.i"],
    ))
    moves.append(_move(
        "tI", ["a", "b"],
        ([], [("a", "b")]),
        ([twist("a", "c"), twist("c", "b")],),
        ["INVOLUTION"],
    ))
    # a twist bar slides through a virtual crossing
    moves.append(_move(
        "tII", ["a", "b", "a2", "b2"],
        ([twist("a", "a1"), virtual("a1", "b", "a2", "b2")],),
        ([virtual("a", "b", "a1", "b2"), twist("a1", "a2")],),
        ["tii.i", "tii.ii"],
    ))
    # twist bars on all four ends switch the crossing between virtual crossings
    moves.append(_move(
        "tIII", ["x", "y", "a", "b"],
        ([
            twist("x", "tx"), twist("y", "ty"),
            classical("tx", "ty", "p", "q"),
            twist("p", "a"), twist("q", "b"),
        ],),
        ([
            virtual("x", "y", "x1", "y1"),
            classical("y1", "x1", "p", "q"),
            virtual("q", "p", "a", "b"),
        ],),
        ["tiii.i", "tiii.ii"],
    ))
    # twist bars on all three edges of a vertex against a virtual crossing of two of them
    moves.append(_move(
        "tIV", ["x", "y", "c"],
        ([twist("x", "tx"), twist("y", "ty"), vertex("tx", "ty", "c0"), twist("c0", "c")],),
        ([virtual("x", "y", "x1", "y1"), vertex("y1", "x1", "c")],),
        ["tiv.i"],
    ))
    # a strand passes the vertex through virtual crossings
    moves.append(_move(
        "tV", ["x", "y", "c", "z", "z2"],
        ([vertex("x", "y", "c0"), virtual("c0", "z", "c", "z2")],),
        ([
            virtual("x", "z", "x1", "za"),
            virtual("y", "za", "y1", "z2"),
            vertex("x1", "y1", "c"),
        ],),
        ["tv.i", "tv.ii"],
    ))
    assert tuple(m.label for m in moves) == MOVE_LABELS
    return moves


def _tally(tangle: Tangle, X) -> Counter:
    idx = tangle.boundary
    return Counter(
        tuple(col[b] for b in idx) for col in list_colorings(tangle.system, X, verify=False)
    )


def check_move(X: TwistedVirtualBikeigebra, M: MoveTangle) -> BijectionReport:
    """Compare extension counts of both sides over all boundary colorings.

    Colorings of each side are enumerated once and grouped by their boundary
    values; boundary tuples absent from a side have zero extensions there.
    """
    left = _tally(M.left, X)
    right = _tally(M.right, X)
    mismatches = [
        (b, left.get(b, 0), right.get(b, 0))
        for b in sorted(set(left) | set(right))
        if left.get(b, 0) != right.get(b, 0)
    ]
    return BijectionReport(
        M.label, M.boundary, X.order ** len(M.boundary), dict(left), dict(right), mismatches
    )


def check_all_moves(X: TwistedVirtualBikeigebra, labels=None) -> list[BijectionReport]:
    moves = builtin_moves()
    if labels is not None:
        unknown = set(labels) - set(MOVE_LABELS)
        if unknown:
            raise ValueError(f"unknown move label(s): {', '.join(sorted(unknown))}")
        moves = [m for m in moves if m.label in labels]
    return [check_move(X, m) for m in moves]

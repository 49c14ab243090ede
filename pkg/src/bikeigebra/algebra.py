"""Finite twisted virtual bikeigebras as operation tables, and their axiom checker.

Elements are the integers ``1..n``.  Unassigned cells of the partial vertex
product hold the sentinel :data:`UNDEFINED`; it propagates through every
operation, so an expression such as ``(xy) u z`` is UNDEFINED whenever ``xy`` is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import ParameterError, StructureError
from .terms import compile_term, parse_term


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __str__(self):
        return "-"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


def _sort_value(v) -> int:
    return 0 if v is UNDEFINED else v


def _as_rows(cells, allow_undefined: bool) -> tuple[tuple, ...]:
    rows = tuple(tuple(r) for r in cells)
    n = len(rows)
    if n < 1:
        raise StructureError("an operation table needs order >= 1")
    out = []
    for i, r in enumerate(rows, 1):
        if len(r) != n:
            raise StructureError(f"row {i} has {len(r)} cells, expected {n}")
        norm = []
        for j, c in enumerate(r, 1):
            if c is None or c is UNDEFINED or c == "-":
                if not allow_undefined:
                    raise StructureError(f"cell ({i},{j}) is undefined in a total operation")
                norm.append(UNDEFINED)
                continue
            if isinstance(c, bool) or not isinstance(c, int) or not 1 <= c <= n:
                raise StructureError(f"cell ({i},{j}) = {c!r} is not an element of 1..{n}")
            norm.append(c)
        out.append(tuple(norm))
    return tuple(out)


@dataclass(frozen=True)
class OperationTable:
    """Total binary operation; ``rows[x-1][y-1]`` is ``x * y``."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", _as_rows(self.rows, allow_undefined=False))

    @property
    def order(self) -> int:
        return len(self.rows)

    def __call__(self, x: int, y: int) -> int:
        return self.rows[x - 1][y - 1]

    @classmethod
    def from_function(cls, n: int, f) -> "OperationTable":
        return cls([[f(x, y) for y in range(1, n + 1)] for x in range(1, n + 1)])

    @classmethod
    def trivial(cls, n: int) -> "OperationTable":
        """``x * y = x``."""
        return cls.from_function(n, lambda x, y: x)


@dataclass(frozen=True)
class PartialProduct:
    rows: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", _as_rows(self.rows, allow_undefined=True))

    @property
    def order(self) -> int:
        return len(self.rows)

    def __call__(self, x: int, y: int):
        return self.rows[x - 1][y - 1]

    def defined_cells(self) -> list[tuple[int, int, int]]:
        return [
            (x, y, c)
            for x, row in enumerate(self.rows, 1)
            for y, c in enumerate(row, 1)
            if c is not UNDEFINED
        ]

    def is_empty(self) -> bool:
        return not self.defined_cells()

    @classmethod
    def empty(cls, n: int) -> "PartialProduct":
        return cls([[UNDEFINED] * n for _ in range(n)])

    @classmethod
    def from_function(cls, n: int, f) -> "PartialProduct":
        return cls([[f(x, y) for y in range(1, n + 1)] for x in range(1, n + 1)])


@dataclass(frozen=True)
class TwistMap:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        n = len(image)
        if n < 1:
            raise StructureError("a twist map needs order >= 1")
        for i, t in enumerate(image, 1):
            if isinstance(t, bool) or not isinstance(t, int) or not 1 <= t <= n:
                raise StructureError(f"T({i}) = {t!r} is not an element of 1..{n}")
        for i, t in enumerate(image, 1):
            if image[t - 1] != i:
                raise StructureError(f"twist map is not an involution: T(T({i})) = {image[t - 1]}")
        object.__setattr__(self, "image", image)

    @property
    def order(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    @classmethod
    def identity(cls, n: int) -> "TwistMap":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_swaps(cls, n: int, *swaps: tuple[int, int]) -> "TwistMap":
        image = list(range(1, n + 1))
        for a, b in swaps:
            image[a - 1], image[b - 1] = b, a
        return cls(tuple(image))


def involutions(n: int) -> list[tuple[int, ...]]:
    """All involutive permutations of 1..n, lexicographic by image tuple."""
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        if all(perm[perm[i] - 1] == i + 1 for i in range(n)):
            out.append(perm)
    return out


def _binary_op(rows):
    def op(a, b):
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        return rows[a - 1][b - 1]

    return op


def _unary_op(image):
    def op(a):
        if a is UNDEFINED:
            return UNDEFINED
        return image[a - 1]

    return op


@dataclass(frozen=True)
class TwistedVirtualBikeigebra:
    under: OperationTable
    over: OperationTable
    virt: OperationTable
    product: PartialProduct
    twist: TwistMap
    name: str = field(default="", compare=False)

    def __post_init__(self):
        orders = {
            "under": self.under.order,
            "over": self.over.order,
            "virt": self.virt.order,
            "product": self.product.order,
            "twist": self.twist.order,
        }
        if len(set(orders.values())) != 1:
            raise StructureError(f"component orders differ: {orders}")

    @property
    def order(self) -> int:
        return self.under.order

    @property
    def elements(self) -> range:
        return range(1, self.order + 1)

    @cached_property
    def ops(self) -> tuple:
        """``(u, o, v, p, t)`` callables that propagate UNDEFINED."""
        return (
            _binary_op(self.under.rows),
            _binary_op(self.over.rows),
            _binary_op(self.virt.rows),
            _binary_op(self.product.rows),
            _unary_op(self.twist.image),
        )

    @cached_property
    def violations(self) -> tuple["AxiomViolation", ...]:
        return tuple(verify_all(self))

    @property
    def is_valid(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "VERIFIED" if self.is_valid else "UNVERIFIED"

    def __getstate__(self):
        # cached closures do not pickle
        state = dict(self.__dict__)
        state.pop("ops", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)

    @classmethod
    def build(cls, under, over, virt, product, twist, name="") -> "TwistedVirtualBikeigebra":
        """Construct from plain nested sequences."""
        return cls(
            under if isinstance(under, OperationTable) else OperationTable(under),
            over if isinstance(over, OperationTable) else OperationTable(over),
            virt if isinstance(virt, OperationTable) else OperationTable(virt),
            product if isinstance(product, PartialProduct) else PartialProduct(product),
            twist if isinstance(twist, TwistMap) else TwistMap(tuple(twist)),
            name,
        )


class AxiomViolation(NamedTuple):
    label: str
    witness: tuple[int, ...]
    left: object
    right: object

    def sort_key(self):
        return (self.label, self.witness, _sort_value(self.left), _sort_value(self.right))

    def __str__(self):
        w = ",".join(str(x) for x in self.witness)
        return f"{self.label} witness=({w}) left={self.left} right={self.right}"


class Axiom(NamedTuple):
    label: str
    arity: int
    lhs: str
    rhs: str
    guard: str | None = None


# Checked under Kleene equality: both sides UNDEFINED, or both defined and equal.
# A guarded instance is skipped when the guard term is UNDEFINED; this is the
# "where the product is defined" reading for laws with a vertex on one side only.
AXIOMS: tuple[Axiom, ...] = (
    Axiom("INVOLUTION", 1, "t(t(x))", "x"),
    Axiom("ri.i", 1, "u(x,x)", "o(x,x)"),
    Axiom("rii.i", 2, "u(u(x,y),y)", "x"),
    Axiom("rii.ii", 2, "o(o(x,y),y)", "x"),
    Axiom("rii.iii", 2, "u(x,o(y,x))", "u(x,y)"),
    Axiom("rii.iv", 2, "o(x,u(y,x))", "o(x,y)"),
    Axiom("vii.i", 2, "v(v(x,y),y)", "x"),
    Axiom("vii.ii", 2, "v(x,v(y,x))", "v(x,y)"),
    Axiom("riii.i", 3, "u(u(x,y),u(z,y))", "u(u(x,z),o(y,z))"),
    Axiom("riii.ii", 3, "o(u(x,y),u(z,y))", "u(o(x,z),o(y,z))"),
    Axiom("riii.iii", 3, "o(o(x,y),o(z,y))", "o(o(x,z),u(y,z))"),
    Axiom("viii.i", 3, "v(u(x,y),v(z,y))", "u(v(x,z),v(y,z))"),
    Axiom("viii.ii", 3, "v(o(x,y),v(z,y))", "o(v(x,z),v(y,z))"),
    Axiom("viii.iii", 3, "v(v(x,y),o(z,y))", "v(v(x,z),u(y,z))"),
    Axiom("v.i", 3, "v(v(x,y),v(z,y))", "v(v(x,z),v(y,z))"),
    Axiom("CYCLIC", 2, "p(y,p(x,y))", "x", guard="p(x,y)"),
    Axiom("CYCLIC", 2, "p(p(x,y),x)", "y", guard="p(x,y)"),
    Axiom("ASSOC", 3, "p(p(x,y),z)", "p(x,p(y,z))"),
    Axiom("riv.i", 2, "p(x,y)", "p(o(y,x),u(x,y))"),
    Axiom("riv.ii", 2, "p(x,y)", "p(u(y,x),o(x,y))"),
    Axiom("rv.i", 3, "u(p(x,y),z)", "p(u(x,z),u(y,o(z,x)))"),
    Axiom("rv.ii", 3, "o(p(x,y),z)", "p(o(x,z),o(y,u(z,x)))"),
    Axiom("rv.iii", 3, "u(x,p(y,z))", "u(u(x,y),z)", guard="p(y,z)"),
    Axiom("rv.iv", 3, "o(x,p(y,z))", "o(o(x,y),z)", guard="p(y,z)"),
    Axiom("tv.i", 3, "v(p(x,y),z)", "p(v(x,z),v(y,v(z,x)))"),
    Axiom("tv.ii", 3, "v(x,p(y,z))", "v(v(x,y),z)", guard="p(y,z)"),
    Axiom("tii.i", 2, "t(v(x,y))", "v(t(x),y)"),
    Axiom("tii.ii", 2, "v(x,y)", "v(x,t(y))"),
    Axiom("tiii.i", 2, "t(u(t(x),t(y)))", "v(o(v(x,y),v(y,x)),u(v(y,x),v(x,y)))"),
    Axiom("tiii.ii", 2, "t(o(t(x),t(y)))", "v(u(v(x,y),v(y,x)),o(v(y,x),v(x,y)))"),
    Axiom("tiv.i", 2, "t(p(t(x),t(y)))", "p(v(y,x),v(x,y))"),
)

AXIOM_LABELS: tuple[str, ...] = tuple(dict.fromkeys(a.label for a in AXIOMS))

_SLOTS = {"x": 0, "y": 1, "z": 2}


class _CompiledAxiom(NamedTuple):
    label: str
    arity: int
    lhs: object
    rhs: object
    guard: object


def _compile(ax: Axiom) -> _CompiledAxiom:
    def c(src):
        return compile_term(parse_term(src), _SLOTS)

    return _CompiledAxiom(ax.label, ax.arity, c(ax.lhs), c(ax.rhs), c(ax.guard) if ax.guard else None)


COMPILED_AXIOMS: tuple[_CompiledAxiom, ...] = tuple(_compile(a) for a in AXIOMS)


def _violations_of(ax: _CompiledAxiom, ops, n: int, fail_fast: bool) -> list[AxiomViolation]:
    out = []
    lhs, rhs, guard = ax.lhs, ax.rhs, ax.guard
    for w in itertools.product(range(1, n + 1), repeat=ax.arity):
        if guard is not None and guard(ops, w) is UNDEFINED:
            continue
        left = lhs(ops, w)
        right = rhs(ops, w)
        if left != right:
            out.append(AxiomViolation(ax.label, w, left, right))
            if fail_fast:
                break
    return out


def _check(X, axioms, fail_fast: bool) -> list[AxiomViolation]:
    ops = X.ops
    n = X.order
    found = []
    for ax in axioms:
        found.extend(_violations_of(ax, ops, n, fail_fast))
        if fail_fast and found:
            return found
    found.sort(key=AxiomViolation.sort_key)
    return found


def verify_all(X: TwistedVirtualBikeigebra, fail_fast: bool = False) -> list[AxiomViolation]:
    """Every axiom violation of ``X``, sorted by (label, witness).

    With ``fail_fast`` the scan stops at the first violation; the result is then
    empty exactly when the full result would be.
    """
    return _check(X, COMPILED_AXIOMS, fail_fast)


def check_axiom(X: TwistedVirtualBikeigebra, label: str, fail_fast: bool = False) -> list[AxiomViolation]:
    if label not in AXIOM_LABELS:
        raise ValueError(f"unknown axiom label {label!r}; known: {', '.join(AXIOM_LABELS)}")
    return _check(X, [a for a in COMPILED_AXIOMS if a.label == label], fail_fast)


def noncommuting_pairs(X: TwistedVirtualBikeigebra) -> list[tuple[int, int]]:
    """Pairs with ``xy`` and ``yx`` not Kleene-equal (diagnostic only, not an axiom)."""
    p = X.product
    return [(x, y) for x in X.elements for y in X.elements if x < y and p(x, y) != p(y, x)]


def relabel(X: TwistedVirtualBikeigebra, perm: Sequence[int]) -> TwistedVirtualBikeigebra:
    """Transport ``X`` along the bijection ``i -> perm[i-1]``."""
    n = X.order
    inv = [0] * n
    for i, j in enumerate(perm, 1):
        inv[j - 1] = i

    def move(table):
        return [
            [_map(perm, table.rows[inv[a] - 1][inv[b] - 1]) for b in range(n)]
            for a in range(n)
        ]

    return TwistedVirtualBikeigebra.build(
        move(X.under),
        move(X.over),
        move(X.virt),
        move(X.product),
        [perm[X.twist(inv[a]) - 1] for a in range(n)],
        name=X.name,
    )


def _map(perm, value):
    return UNDEFINED if value is UNDEFINED else perm[value - 1]


def trivial_structure(n: int, product=None, twist=None) -> TwistedVirtualBikeigebra:
    triv = OperationTable.trivial(n)
    return TwistedVirtualBikeigebra(
        triv,
        triv,
        triv,
        product if product is not None else PartialProduct.empty(n),
        twist if twist is not None else TwistMap.identity(n),
    )


# Klein four-group labelling: 1=(0,0), 2=(0,1), 3=(1,0), 4=(1,1), so addition is xor on i-1.
def klein_four(T: TwistMap | Iterable[int]) -> TwistedVirtualBikeigebra:
    if not isinstance(T, TwistMap):
        T = TwistMap(tuple(T))
    if T.order != 4:
        raise StructureError("klein_four needs a twist map on 4 elements")
    product = PartialProduct.from_function(4, lambda x, y: ((x - 1) ^ (y - 1)) + 1)
    return trivial_structure(4, product=product, twist=T)


def alexander_candidate(m: int, s: int, t: int) -> TwistedVirtualBikeigebra:
    """Alexander bikei on Z_m: x u y = tx + (s-t)y, x o y = sx, with
    trivial virtual operation, total product x + y and identity twist.

    Element ``i`` stands for the residue ``i - 1``.
    """
    if m < 1:
        raise ParameterError("modulus must be positive")
    s, t = s % m, t % m
    problems = []
    if gcd(s, m) != 1 or gcd(t, m) != 1:
        problems.append("s and t must be units")
    if (s * s - 1) % m:
        problems.append("s^2 != 1")
    if (t * t - 1) % m:
        problems.append("t^2 != 1")
    if ((1 - s) * (s - t)) % m:
        problems.append("(1-s)(s-t) != 0")
    if problems:
        raise ParameterError(f"PARAMS: (m={m}, s={s}, t={t}): " + "; ".join(problems))

    def el(r):
        return r % m + 1

    under = OperationTable.from_function(m, lambda x, y: el(t * (x - 1) + (s - t) * (y - 1)))
    over = OperationTable.from_function(m, lambda x, y: el(s * (x - 1)))
    product = PartialProduct.from_function(m, lambda x, y: el((x - 1) + (y - 1)))
    return TwistedVirtualBikeigebra(
        under, over, OperationTable.trivial(m), product, TwistMap.identity(m),
        name=f"alexander(m={m},s={s},t={t})",
    )


def alexander_parameters(m: int) -> list[tuple[int, int]]:
    """All (s, t) in 0..m-1 satisfying the Alexander bikei relations mod m."""
    out = []
    for s in range(m):
        for t in range(m):
            if gcd(s, m) != 1 or gcd(t, m) != 1:
                continue
            if (s * s - 1) % m or (t * t - 1) % m or ((1 - s) * (s - t)) % m:
                continue
            out.append((s, t))
    return out

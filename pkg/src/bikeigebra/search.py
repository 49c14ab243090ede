"""Exhaustive enumeration of small twisted virtual bikeigebras.

Structures are grown in stages, each pruned by the axioms it can already
decide: the bikei pair (under, over), then the virtual operation, then the
partial product, then the twist map.  Columns of under, over and virtual are
involutions (``(x*y)*y = x``), so those stages assign whole columns.  Partially
filled tables raise ``_Unknown`` when read at an empty cell, and an axiom
instance that touches one is simply postponed.
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .algebra import (
    COMPILED_AXIOMS,
    UNDEFINED,
    OperationTable,
    PartialProduct,
    TwistedVirtualBikeigebra,
    TwistMap,
    involutions,
)
from .blockmatrix import format_rows

STAGES = ("bikei", "virtual", "product", "full")

STAGE_AXIOMS = {
    "bikei": ("ri.i", "rii.i", "rii.ii", "rii.iii", "rii.iv", "riii.i", "riii.ii", "riii.iii"),
    "virtual": ("vii.i", "vii.ii", "viii.i", "viii.ii", "viii.iii", "v.i"),
    "product": ("CYCLIC", "ASSOC", "riv.i", "riv.ii", "rv.i", "rv.ii", "rv.iii", "rv.iv", "tv.i", "tv.ii"),
    "full": ("INVOLUTION", "tii.i", "tii.ii", "tiii.i", "tiii.ii", "tiv.i"),
}

# engineering budget, not a mathematical limit
ORDER_BOUND = {"bikei": 6, "virtual": 5, "product": 5, "full": 5}


class ResourceError(RuntimeError):
    pass


def _axioms(stage):
    labels = STAGE_AXIOMS[stage]
    return [a for a in COMPILED_AXIOMS if a.label in labels]


class _Unknown(Exception):
    pass


_UNKNOWN = _Unknown()


def _partial_binary(rows):
    def op(a, b):
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        c = rows[a - 1][b - 1]
        if c is None:
            raise _UNKNOWN
        return c

    return op


def _no_twist(a):
    raise _UNKNOWN


def _consistent(axioms, ops, n) -> bool:
    elems = range(1, n + 1)
    for ax in axioms:
        for w in itertools.product(elems, repeat=ax.arity):
            try:
                if ax.guard is not None and ax.guard(ops, w) is UNDEFINED:
                    continue
                if ax.lhs(ops, w) != ax.rhs(ops, w):
                    return False
            except _Unknown:
                continue
    return True


def _blank(n):
    return [[None] * n for _ in range(n)]


def enumerate_bikei(n: int) -> Iterator[tuple[OperationTable, OperationTable]]:
    """All (under, over) pairs on 1..n satisfying ri.i, rii.i-iv and riii.i-iii,
    in lexicographic order of their cells."""
    u, o = _blank(n), _blank(n)
    ops = (_partial_binary(u), _partial_binary(o), None, None, None)
    order = []
    for y in range(n):
        order += [(0, y), (1, y)]
    found = []
    for _ in _filled(n, [u, o], order, _axioms("bikei"), ops):
        found.append((tuple(map(tuple, u)), tuple(map(tuple, o))))
    found.sort()
    for ur, orr in found:
        yield OperationTable(ur), OperationTable(orr)


def _filled(n, tables, order, axioms, ops):
    """Depth-first fill; yields once per complete consistent assignment
    (the tables themselves are mutated in place)."""
    invs = involutions(n)

    def rec(k):
        if k == len(order):
            yield None
            return
        t, y = order[k]
        rows = tables[t]
        for inv in invs:
            for x in range(n):
                rows[x][y] = inv[x]
            if _consistent(axioms, ops, n):
                yield from rec(k + 1)
        for x in range(n):
            rows[x][y] = None

    return rec(0)


def extend_virtual(pair) -> Iterator[OperationTable]:
    """Virtual operations compatible with a bikei pair, lexicographic."""
    under, over = pair
    n = under.order
    v = _blank(n)
    ops = (_partial_binary(under.rows), _partial_binary(over.rows), _partial_binary(v), None, None)
    found = [tuple(map(tuple, v)) for _ in _filled(n, [v], [(0, y) for y in range(n)], _axioms("virtual"), ops)]
    for rows in sorted(found):
        yield OperationTable(rows)


def extend_products(triple) -> Iterator[PartialProduct]:
    """Partial products compatible with (under, over, virt).

    Cells are filled row by row trying UNDEFINED first, so the output is
    lexicographic with UNDEFINED lowest and the empty product comes first.
    Setting ``xy = z`` forces ``yz = x`` and ``zx = y``.
    """
    under, over, virt = triple
    n = under.order
    p = _blank(n)
    ops = (
        _partial_binary(under.rows),
        _partial_binary(over.rows),
        _partial_binary(virt.rows),
        _partial_binary(p),
        _no_twist,
    )
    axioms = _axioms("product")
    cells = [(x, y) for x in range(n) for y in range(n)]

    def put(x, y, z, trail):
        # z is 0-based element or UNDEFINED
        cur = p[x][y]
        if cur is not None:
            return cur == (UNDEFINED if z is UNDEFINED else z + 1)
        if z is UNDEFINED:
            p[x][y] = UNDEFINED
            trail.append((x, y))
            return True
        p[x][y] = z + 1
        trail.append((x, y))
        return put(y, z, x, trail) and put(z, x, y, trail)

    def rec(k):
        while k < len(cells) and p[cells[k][0]][cells[k][1]] is not None:
            k += 1
        if k == len(cells):
            yield PartialProduct(tuple(tuple(r) for r in p))
            return
        x, y = cells[k]
        for z in [UNDEFINED, *range(n)]:
            trail: list = []
            if put(x, y, z, trail) and _consistent(axioms, ops, n):
                yield from rec(k + 1)
            for a, b in trail:
                p[a][b] = None

    yield from rec(0)


def extend_twists(triple_with_product) -> Iterator[TwistMap]:
    under, over, virt, product = triple_with_product
    n = under.order
    for image in involutions(n):
        T = TwistMap(image)
        X = TwistedVirtualBikeigebra(under, over, virt, product, T)
        if _consistent(_axioms("full"), X.ops, n):
            yield T


@dataclass(frozen=True)
class SearchFilter:
    order: int
    stage: str = "full"
    require_undefined: bool = False
    require_nontrivial_twist: bool = False
    iso: bool = False
    force: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.stage not in STAGES:
            raise ValueError(f"stage must be one of {STAGES}")
        if self.require_undefined and STAGES.index(self.stage) < STAGES.index("product"):
            raise ValueError("require_undefined needs stage 'product' or 'full'")
        if self.require_nontrivial_twist and self.stage != "full":
            raise ValueError("require_nontrivial_twist needs stage 'full'")


@dataclass(frozen=True)
class CensusEntry:
    components: tuple
    key: str
    automorphisms: int

    @property
    def structure(self):
        """The full structure at stage ``full``; otherwise the component tuple."""
        if len(self.components) == 5:
            return TwistedVirtualBikeigebra(*self.components)
        return self.components

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def key_hash(self) -> str:
        return hashlib.sha1(self.key.encode()).hexdigest()[:12]

    def block(self) -> str:
        lines = [f"# n={self.order} key={self.key_hash}"] + format_rows(self.components)
        return "\n".join(lines) + "\n"

    def record(self) -> dict:
        names = ("under", "over", "virt", "product", "twist")
        rec = {"order": self.order, "key": self.key, "key_hash": self.key_hash,
               "automorphisms": self.automorphisms}
        for name, comp in zip(names, self.components):
            if isinstance(comp, TwistMap):
                rec[name] = list(comp.image)
            else:
                rec[name] = [[None if c is UNDEFINED else c for c in row] for row in comp.rows]
        return rec


def _cell(c) -> str:
    return "-" if c is UNDEFINED else str(c)


def serialize(components) -> str:
    parts = []
    for comp in components:
        if isinstance(comp, TwistMap):
            parts.append("".join(str(c) for c in comp.image))
        else:
            parts.append("".join(_cell(c) for row in comp.rows for c in row))
    return "|".join(parts)


def relabel_components(components, perm):
    n = len(perm)
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j - 1] = i

    def img(c):
        return UNDEFINED if c is UNDEFINED else perm[c - 1]

    out = []
    for comp in components:
        if isinstance(comp, TwistMap):
            out.append(TwistMap(tuple(img(comp.image[inv[a]]) for a in range(n))))
        else:
            rows = [[img(comp.rows[inv[a]][inv[b]]) for b in range(n)] for a in range(n)]
            out.append(type(comp)(rows))
    return tuple(out)


def canonical_form(components) -> tuple[str, tuple, int]:
    """(key, canonical components, automorphism count) over all n! relabelings."""
    n = components[0].order
    own = serialize(components)
    best = None
    autos = 0
    for perm in itertools.permutations(range(1, n + 1)):
        moved = relabel_components(components, perm)
        s = serialize(moved)
        if s == own:
            autos += 1
        if best is None or s < best[0]:
            best = (s, moved)
    return best[0], best[1], autos


def _stage_stream(pair, stage, require_undefined, require_nontrivial_twist):
    if stage == "bikei":
        yield pair
        return
    for v in extend_virtual(pair):
        if stage == "virtual":
            yield (*pair, v)
            continue
        for p in extend_products((*pair, v)):
            if require_undefined and not any(c is UNDEFINED for row in p.rows for c in row):
                continue
            if stage == "product":
                yield (*pair, v, p)
                continue
            for T in extend_twists((*pair, v, p)):
                if require_nontrivial_twist and T == TwistMap.identity(T.order):
                    continue
                yield (*pair, v, p, T)


def _entries_for(args):
    pair, stage, req_u, req_t = args
    out = []
    for comps in _stage_stream(pair, stage, req_u, req_t):
        key, _, autos = canonical_form(comps)
        out.append((key, serialize(comps), comps, autos))
    return out


def enumerate_all(flt: SearchFilter, workers: int = 1) -> Iterator[CensusEntry]:
    """Every structure of order ``flt.order`` surviving the stages and filter
    predicates, sorted by canonical key.  With ``flt.iso`` only the canonical
    representative of each isomorphism class is kept."""
    if flt.order > ORDER_BOUND[flt.stage] and not flt.force:
        raise ResourceError(
            f"order {flt.order} exceeds the stage '{flt.stage}' bound {ORDER_BOUND[flt.stage]}; use force"
        )
    jobs = [(pair, flt.stage, flt.require_undefined, flt.require_nontrivial_twist)
            for pair in enumerate_bikei(flt.order)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_entries_for, jobs))
    else:
        parts = [_entries_for(j) for j in jobs]
    rows = sorted((r for part in parts for r in part), key=lambda r: (r[0], r[1]))
    entries = [CensusEntry(comps, key, autos) for key, _, comps, autos in rows]
    if flt.iso:
        entries = iso_representatives(entries)
    return iter(entries)


def iso_representatives(entries) -> list[CensusEntry]:
    """One canonical-form entry per key, keeping key order."""
    out = []
    seen = set()
    for e in entries:
        if e.key in seen:
            continue
        seen.add(e.key)
        _, canon, _ = canonical_form(e.components)
        out.append(CensusEntry(canon, e.key, e.automorphisms))
    return out

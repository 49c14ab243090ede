"""Counting colorings of an equation system by a finite structure.

A coloring assigns an element to every variable so that both sides of every
equation evaluate to the same defined element.  The solver interleaves
directional propagation (``var = term`` with the term fully known fixes
``var``) with backtracking on the variable of smallest remaining domain.
:func:`brute_force_count` shares none of that machinery.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Dict

from .algebra import UNDEFINED, TwistedVirtualBikeigebra
from .diagram import EquationSystem
from .errors import BudgetExceeded, NotVerifiedError
from .terms import Var, compile_term, variables

Coloring = Dict[str, int]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "BIKEIGEBRA_BUDGET"


def evaluation_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _require_valid(X: TwistedVirtualBikeigebra, verify: bool):
    if verify and not X.is_valid:
        first = X.violations[0]
        raise NotVerifiedError(
            f"structure fails {len(X.violations)} axiom instance(s), first: {first}; "
            "pass verify=False to color anyway"
        )


class _Equation:
    __slots__ = ("lhs", "rhs", "vars", "lvar", "rvar", "lvars", "rvars")

    def __init__(self, lhs, rhs, idx):
        self.lhs = compile_term(lhs, idx)
        self.rhs = compile_term(rhs, idx)
        self.lvars = frozenset(idx[v] for v in variables(lhs))
        self.rvars = frozenset(idx[v] for v in variables(rhs))
        self.vars = tuple(sorted(self.lvars | self.rvars))
        # a bare variable side not occurring on the other side can be solved for
        self.lvar = idx[lhs.name] if isinstance(lhs, Var) and idx[lhs.name] not in self.rvars else None
        self.rvar = idx[rhs.name] if isinstance(rhs, Var) and idx[rhs.name] not in self.lvars else None


class _Search:
    def __init__(self, system: EquationSystem, X: TwistedVirtualBikeigebra):
        self.names = sorted(system.variables)
        idx = {name: i for i, name in enumerate(self.names)}
        self.k = len(self.names)
        self.n = X.order
        self.ops = X.ops
        self.eqs = [_Equation(l, r, idx) for l, r in system.equations]
        self.watch = [[] for _ in range(self.k)]
        for e, eq in enumerate(self.eqs):
            for v in eq.vars:
                self.watch[v].append(e)
        self.free = [v for v in range(self.k) if not self.watch[v]]
        self.constrained = [v for v in range(self.k) if self.watch[v]]
        self.vals = [None] * self.k
        self.pending = [len(eq.vars) for eq in self.eqs]

    def _holds(self, eq) -> bool:
        a = eq.lhs(self.ops, self.vals)
        if a is UNDEFINED:
            return False
        return a == eq.rhs(self.ops, self.vals)

    def _assign(self, v, value, trail, queue) -> bool:
        self.vals[v] = value
        trail.append(v)
        for e in self.watch[v]:
            self.pending[e] -= 1
            if self.pending[e] <= 1:
                queue.append(e)
        return True

    def _undo(self, trail, mark):
        while len(trail) > mark:
            v = trail.pop()
            self.vals[v] = None
            for e in self.watch[v]:
                self.pending[e] += 1

    def _propagate(self, queue, trail) -> bool:
        vals = self.vals
        while queue:
            e = queue.pop()
            eq = self.eqs[e]
            left = self.pending[e]
            if left == 0:
                if not self._holds(eq):
                    return False
            elif left == 1:
                target = None
                if eq.lvar is not None and vals[eq.lvar] is None:
                    target, solve = eq.lvar, eq.rhs
                elif eq.rvar is not None and vals[eq.rvar] is None:
                    target, solve = eq.rvar, eq.lhs
                if target is None:
                    continue
                value = solve(self.ops, vals)
                if value is UNDEFINED:
                    return False
                self._assign(target, value, trail, queue)
        return True

    def _domain(self, v):
        """Values for ``v`` allowed by equations where it is the last unknown."""
        single = [e for e in self.watch[v] if self.pending[e] == 1]
        if not single:
            return None
        out = []
        for value in range(1, self.n + 1):
            self.vals[v] = value
            if all(self._holds(self.eqs[e]) for e in single):
                out.append(value)
        self.vals[v] = None
        return out

    def _choose(self):
        best = None
        best_dom = None
        for v in self.constrained:
            if self.vals[v] is not None:
                continue
            dom = self._domain(v)
            if dom is not None and len(dom) <= 1:
                return v, dom
            size = len(dom) if dom is not None else self.n + 1
            key = (size, -len(self.watch[v]), v)
            if best is None or key < best:
                best, best_dom = key, (v, dom)
        if best is None:
            return None, None
        v, dom = best_dom
        return v, dom if dom is not None else list(range(1, self.n + 1))

    def solve(self, mode: str, fixed: dict | None = None):
        """Run the search. ``mode`` is ``count``, ``list`` or ``any``.

        ``list`` yields value tuples over the constrained variables only.
        """
        trail: list = []
        queue = list(range(len(self.eqs)))
        for v, value in (fixed or {}).items():
            self._assign(v, value, trail, queue)
        if not self._propagate(queue, trail):
            return 0 if mode != "list" else []
        found = []
        total = self._dfs(mode, trail, found)
        return found if mode == "list" else total

    def _dfs(self, mode, trail, found) -> int:
        v, dom = self._choose()
        if v is None:
            if mode == "list":
                found.append(tuple(self.vals[c] for c in self.constrained))
            return 1
        total = 0
        for value in dom:
            mark = len(trail)
            queue: list = []
            self._assign(v, value, trail, queue)
            if self._propagate(queue, trail):
                total += self._dfs(mode, trail, found)
            self._undo(trail, mark)
            if mode == "any" and total:
                return total
        return total

    def split(self):
        """Top-level branching variable and its values, after root propagation."""
        trail: list = []
        if not self._propagate(list(range(len(self.eqs))), trail):
            self._undo(trail, 0)
            return None, []
        v, dom = self._choose()
        self._undo(trail, 0)
        return v, dom or []

    def expand(self, rows):
        """Full colorings from constrained-value rows, free variables ranging over 1..n."""
        out = []
        elems = range(1, self.n + 1)
        for row in rows:
            base = dict(zip(self.constrained, row))
            for extra in itertools.product(elems, repeat=len(self.free)):
                full = dict(base)
                full.update(zip(self.free, extra))
                out.append({self.names[i]: full[i] for i in range(self.k)})
        out.sort(key=lambda c: tuple(c[name] for name in self.names))
        return out


def _worker(args):
    system, X, fixed, mode = args
    return _Search(system, X).solve(mode, fixed)


def _parallel(system, X, mode, workers):
    search = _Search(system, X)
    v, dom = search.split()
    if v is None or len(dom) < 2:
        return search.solve(mode)
    jobs = [(system, X, {v: value}, mode) for value in dom]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_worker, jobs))
    if mode == "list":
        return [row for part in parts for row in part]
    return sum(parts)


def count_colorings(
    system: EquationSystem, X: TwistedVirtualBikeigebra, *, verify: bool = True, workers: int = 1
) -> int:
    """Number of colorings of ``system`` by ``X``; the counting invariant when
    ``system`` comes from a diagram."""
    _require_valid(X, verify)
    search = _Search(system, X)
    if workers > 1:
        core = _parallel(system, X, "count", workers)
    else:
        core = search.solve("count")
    return core * X.order ** len(search.free)


def list_colorings(
    system: EquationSystem, X: TwistedVirtualBikeigebra, *, verify: bool = True, workers: int = 1
) -> list[Coloring]:
    """All colorings as dicts keyed by variable name (sorted), in lexicographic
    order of their value tuples."""
    _require_valid(X, verify)
    search = _Search(system, X)
    rows = _parallel(system, X, "list", workers) if workers > 1 else search.solve("list")
    return search.expand(rows)


def is_colorable(system: EquationSystem, X: TwistedVirtualBikeigebra, *, verify: bool = True) -> bool:
    _require_valid(X, verify)
    return _Search(system, X).solve("any") > 0


def brute_force_count(
    system: EquationSystem,
    X: TwistedVirtualBikeigebra,
    *,
    budget: int | None = None,
    verify: bool = True,
) -> int:
    """Count by trying all ``n**k`` assignments; no propagation, no pruning."""
    _require_valid(X, verify)
    if budget is None:
        budget = evaluation_budget()
    names = list(system.variables)
    n, k = X.order, len(names)
    if n**k > budget:
        raise BudgetExceeded(f"BUDGET_EXCEEDED: {n}^{k} assignments exceed budget {budget}")
    idx = {name: i for i, name in enumerate(names)}
    ops = X.ops
    eqs = [(compile_term(l, idx), compile_term(r, idx)) for l, r in system.equations]
    total = 0
    for env in itertools.product(range(1, n + 1), repeat=k):
        for lhs, rhs in eqs:
            a = lhs(ops, env)
            if a is UNDEFINED or a != rhs(ops, env):
                break
        else:
            total += 1
    return total

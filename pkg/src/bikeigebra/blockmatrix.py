"""Block-matrix text format for finite twisted virtual bikeigebras.

Row ``x`` lists ``x u y``, ``x o y``, ``x v y``, ``xy`` for ``y = 1..n`` followed
by ``T(x)``: ``4n + 1`` fields.  ``-`` marks an undefined product cell.  ``|``
separators, brackets and ``#`` comments are ignored on input.
"""

from __future__ import annotations

import re

from .algebra import UNDEFINED, TwistedVirtualBikeigebra
from .errors import ParseError, StructureError

_FIELD_RE = re.compile(r"[^\s|\[\]]+")


def _rows(text: str):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        fields = [(m.group(), m.start() + 1) for m in _FIELD_RE.finditer(line)]
        if fields:
            rows.append((lineno, fields))
    return rows


def parse_matrix(text: str, name: str = "") -> TwistedVirtualBikeigebra:
    rows = _rows(text)
    if not rows:
        raise ParseError("SYNTAX", "no matrix rows found")
    n = len(rows)
    width = 4 * n + 1
    blocks = [[], [], [], []]
    twist = []
    for lineno, fields in rows:
        if len(fields) != width:
            col = fields[min(len(fields), width) - 1][1]
            raise ParseError(
                "ARITY", f"expected {width} fields for order {n}, found {len(fields)}", lineno, col
            )
        values = []
        for k, (tok, col) in enumerate(fields):
            block = k // n if k < 4 * n else 4
            if tok == "-":
                if block != 3:
                    raise ParseError("SYNTAX", "'-' is only allowed in the product block", lineno, col)
                values.append(UNDEFINED)
                continue
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise ParseError("SYNTAX", f"{tok!r} is not an element of 1..{n}", lineno, col)
            values.append(int(tok))
        for b in range(4):
            blocks[b].append(values[b * n:(b + 1) * n])
        twist.append(values[4 * n])
    try:
        return TwistedVirtualBikeigebra.build(*blocks, twist, name=name)
    except StructureError as exc:
        raise ParseError("STRUCTURE", str(exc)) from exc


def format_rows(components) -> list[str]:
    """Rows of any leading subset of (under, over, virt, product, twist)."""
    n = components[0].order
    lines = []
    for x in range(1, n + 1):
        parts = []
        for comp in components:
            if hasattr(comp, "rows"):
                parts.append(" ".join(str(c) for c in comp.rows[x - 1]))
            else:
                parts.append(str(comp(x)))
        lines.append(" | ".join(parts))
    return lines


def format_matrix(X: TwistedVirtualBikeigebra) -> str:
    return "\n".join(format_rows((X.under, X.over, X.virt, X.product, X.twist))) + "\n"


def read_matrix(path) -> TwistedVirtualBikeigebra:
    from pathlib import Path

    p = Path(path)
    return parse_matrix(p.read_text(encoding="utf-8"), name=p.stem)

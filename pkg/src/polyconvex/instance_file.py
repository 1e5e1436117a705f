"""Versioned JSON instance files.

Every rational is a string ``"p/q"`` or an integer; floats are refused.
Errors name the offending position as a JSON path such as
``$.blocks[0].pieces[1].slope[0]`` (or line and column for syntax errors).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .functions import AffinePiece, PolyhedralFunction
from .linalg import Subspace
from .monotropic import MonotropicInstance
from .rational import fmt
from .sets import Cell, ConvexRegion, LinearConstraint

FORMAT_VERSION = 1
_RELATIONS = ("le", "lt", "eq")


class InstanceParseError(ValueError):
    def __init__(self, message: str, where: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


class _FloatLiteral(str):
    """A JSON float, kept as text so the error can point at it."""


def _rat(v, where: str) -> Fraction:
    if isinstance(v, _FloatLiteral):
        raise InstanceParseError(f"float literal {v} is not exact; write it as a 'p/q' string", where)
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InstanceParseError(f"expected an integer or a 'p/q' string, got {type(v).__name__}", where)
    try:
        text = v.strip() if isinstance(v, str) else v
        if isinstance(text, str) and any(ch in text for ch in ".eE"):
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InstanceParseError(f"not an exact rational: {v!r}", where) from None


def _vector(v, where: str, dim: int | None = None) -> tuple:
    if not isinstance(v, list):
        raise InstanceParseError("expected a list", where)
    if dim is not None and len(v) != dim:
        raise InstanceParseError(f"expected {dim} entries, got {len(v)}", where)
    return tuple(_rat(x, f"{where}[{i}]") for i, x in enumerate(v))


def _field(obj, key: str, where: str):
    if not isinstance(obj, dict):
        raise InstanceParseError("expected an object", where)
    if key not in obj:
        raise InstanceParseError(f"missing field {key!r}", where)
    return obj[key]


def _constraint(obj, dim: int, where: str) -> LinearConstraint:
    normal = _vector(_field(obj, "normal", where), f"{where}.normal", dim)
    bound = _rat(_field(obj, "bound", where), f"{where}.bound")
    rel = obj.get("relation", "le")
    if rel not in _RELATIONS:
        raise InstanceParseError(f"relation must be one of {_RELATIONS}, got {rel!r}", f"{where}.relation")
    return LinearConstraint(normal, bound, rel)


def _block(obj, where: str) -> PolyhedralFunction:
    dim = _field(obj, "dim", where)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InstanceParseError("dim must be a positive integer", f"{where}.dim")
    raw_pieces = _field(obj, "pieces", where)
    if not isinstance(raw_pieces, list) or not raw_pieces:
        raise InstanceParseError("expected a nonempty list of pieces", f"{where}.pieces")
    pieces = []
    for i, p in enumerate(raw_pieces):
        pw = f"{where}.pieces[{i}]"
        pieces.append(AffinePiece(_vector(_field(p, "slope", pw), f"{pw}.slope", dim), _rat(_field(p, "offset", pw), f"{pw}.offset")))
    raw_cells = obj.get("domain", [{"constraints": []}])
    if not isinstance(raw_cells, list) or not raw_cells:
        raise InstanceParseError("expected a nonempty list of cells", f"{where}.domain")
    cells = []
    for i, c in enumerate(raw_cells):
        cw = f"{where}.domain[{i}]"
        cons = _field(c, "constraints", cw)
        if not isinstance(cons, list):
            raise InstanceParseError("expected a list", f"{cw}.constraints")
        cells.append(Cell(dim, tuple(_constraint(k, dim, f"{cw}.constraints[{j}]") for j, k in enumerate(cons))))
    try:
        return PolyhedralFunction(dim, tuple(pieces), ConvexRegion(dim, tuple(cells)))
    except ValueError as e:
        raise InstanceParseError(str(e), f"{where}.domain") from None


def from_dict(doc) -> MonotropicInstance:
    version = _field(doc, "version", "$")
    if version != FORMAT_VERSION:
        raise InstanceParseError(f"unsupported version {version!r}", "$.version")
    raw_blocks = _field(doc, "blocks", "$")
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise InstanceParseError("expected a nonempty list of blocks", "$.blocks")
    blocks = [_block(b, f"$.blocks[{i}]") for i, b in enumerate(raw_blocks)]
    total = sum(b.dim for b in blocks)
    raw_basis = _field(doc, "subspace_basis", "$")
    if not isinstance(raw_basis, list):
        raise InstanceParseError("expected a list of vectors", "$.subspace_basis")
    basis = [_vector(v, f"$.subspace_basis[{i}]", total) for i, v in enumerate(raw_basis)]
    try:
        return MonotropicInstance(tuple(blocks), Subspace.span(total, basis))
    except ValueError as e:
        raise InstanceParseError(str(e), "$") from None


def loads(text: str) -> MonotropicInstance:
    try:
        doc = json.loads(text, parse_float=_FloatLiteral)
    except json.JSONDecodeError as e:
        raise InstanceParseError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return from_dict(doc)


def load(path) -> MonotropicInstance:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_dict(I: MonotropicInstance) -> dict:
    blocks = []
    for f in I.blocks:
        blocks.append(
            {
                "dim": f.dim,
                "pieces": [{"slope": [fmt(a) for a in p.slope], "offset": fmt(p.offset)} for p in f.pieces],
                "domain": [
                    {
                        "constraints": [
                            {"normal": [fmt(a) for a in c.normal], "bound": fmt(c.bound), "relation": c.relation}
                            for c in cell.constraints
                        ]
                    }
                    for cell in f.domain.cells
                ],
            }
        )
    return {
        "version": FORMAT_VERSION,
        "blocks": blocks,
        "subspace_basis": [[fmt(a) for a in v] for v in I.S.basis],
    }


def dumps(I: MonotropicInstance) -> str:
    return json.dumps(to_dict(I), indent=2) + "\n"

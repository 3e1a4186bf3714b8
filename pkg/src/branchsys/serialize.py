"""JSON and TSV wire formats.

All rational numbers travel as exact "p/q" strings (plain "p" for
integers); floating-point values are printed with 17 significant digits
so reports round-trip bit-exactly.  `dumps` is a deterministic JSON
writer: given equal in-memory reports it produces byte-identical text,
which the CLI relies on.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable

from .affine import AffinePiece, PAMap
from .branching import BranchingSystem
from .errors import SchemaError
from .graphs import graph_from_obj, graph_to_obj
from .intervals import Interval, IntervalSet
from .ppoly import PPoly

__all__ = [
    "rational_to_str",
    "rational_from_str",
    "load_system",
    "save_system",
    "system_to_obj",
    "system_from_obj",
    "load_ppoly",
    "save_ppoly",
    "ppoly_to_obj",
    "ppoly_from_obj",
    "dumps",
    "write_samples_tsv",
]


def rational_to_str(q: Fraction) -> str:
    return str(q)


def rational_from_str(value, path: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(f"{path}: expected a rational string, got {value!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{path}: invalid rational {value!r}") from exc


# -- interval sets ---------------------------------------------------------------


def _interval_set_to_obj(region: IntervalSet) -> list[dict]:
    return [{"lo": str(p.lo), "hi": str(p.hi)} for p in region]


def _interval_set_from_obj(obj, path: str) -> IntervalSet:
    if not isinstance(obj, list):
        raise SchemaError(f"{path}: expected a list of intervals")
    parts = []
    for i, item in enumerate(obj):
        if not isinstance(item, dict) or "lo" not in item or "hi" not in item:
            raise SchemaError(f"{path}[{i}]: expected {{'lo','hi'}}")
        lo = rational_from_str(item["lo"], f"{path}[{i}].lo")
        hi = rational_from_str(item["hi"], f"{path}[{i}].hi")
        if lo >= hi:
            raise SchemaError(f"{path}[{i}]: empty interval [{lo}, {hi})")
        parts.append(Interval(lo, hi))
    return IntervalSet(parts)


# -- branching systems -------------------------------------------------------------


def system_to_obj(bs: BranchingSystem) -> dict:
    return {
        "graph": graph_to_obj(bs.graph),
        "X": _interval_set_to_obj(bs.X),
        "R": {e.id: _interval_set_to_obj(bs.R[e.id]) for e in bs.graph.edges},
        "D": {v: _interval_set_to_obj(bs.D[v]) for v in bs.graph.vertices},
        "f": {
            e.id: [
                {
                    "src_lo": str(p.src.lo),
                    "src_hi": str(p.src.hi),
                    "a": str(p.a),
                    "b": str(p.b),
                }
                for p in bs.f[e.id].pieces
            ]
            for e in bs.graph.edges
        },
    }


def system_from_obj(obj, path: str = "$") -> BranchingSystem:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    for key in ("graph", "X", "R", "D", "f"):
        if key not in obj:
            raise SchemaError(f"{path}.{key}: missing")
    graph = graph_from_obj(obj["graph"], f"{path}.graph")
    X = _interval_set_from_obj(obj["X"], f"{path}.X")
    edge_ids = [e.id for e in graph.edges]

    def id_keyed(section: str, ids: Iterable[str]) -> dict:
        table = obj[section]
        if not isinstance(table, dict):
            raise SchemaError(f"{path}.{section}: expected an object")
        missing = [i for i in ids if i not in table]
        if missing:
            raise SchemaError(f"{path}.{section}: missing entry {missing[0]!r}")
        extra = [k for k in table if k not in set(ids)]
        if extra:
            raise SchemaError(f"{path}.{section}: unknown id {extra[0]!r}")
        return table

    R = {
        eid: _interval_set_from_obj(val, f"{path}.R.{eid}")
        for eid, val in id_keyed("R", edge_ids).items()
    }
    D = {
        vid: _interval_set_from_obj(val, f"{path}.D.{vid}")
        for vid, val in id_keyed("D", graph.vertices).items()
    }
    f = {}
    for eid, val in id_keyed("f", edge_ids).items():
        if not isinstance(val, list):
            raise SchemaError(f"{path}.f.{eid}: expected a list of affine pieces")
        pieces = []
        for i, item in enumerate(val):
            ppath = f"{path}.f.{eid}[{i}]"
            if not isinstance(item, dict):
                raise SchemaError(f"{ppath}: expected an object")
            for key in ("src_lo", "src_hi", "a", "b"):
                if key not in item:
                    raise SchemaError(f"{ppath}.{key}: missing")
            lo = rational_from_str(item["src_lo"], f"{ppath}.src_lo")
            hi = rational_from_str(item["src_hi"], f"{ppath}.src_hi")
            a = rational_from_str(item["a"], f"{ppath}.a")
            b = rational_from_str(item["b"], f"{ppath}.b")
            if lo >= hi:
                raise SchemaError(f"{ppath}: empty source interval [{lo}, {hi})")
            if a == 0:
                raise SchemaError(f"{ppath}.a: slope must be nonzero")
            pieces.append(AffinePiece(Interval(lo, hi), a, b))
        try:
            f[eid] = PAMap(pieces)
        except ValueError as exc:
            raise SchemaError(f"{path}.f.{eid}: {exc}") from exc
    return BranchingSystem(graph, X, R, D, f)


def load_system(text: str) -> BranchingSystem:
    """Parse a branching-system JSON document.  Loading does not validate
    the branching-system axioms; run the validator separately."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return system_from_obj(obj)


def save_system(bs: BranchingSystem) -> str:
    return dumps(system_to_obj(bs))


# -- piecewise polynomials -----------------------------------------------------------


def ppoly_to_obj(phi: PPoly) -> dict:
    pieces = []
    for lo, hi, coeffs in phi.monomial_pieces():
        pieces.append(
            {
                "lo": str(lo),
                "hi": str(hi),
                "re": [c.real for c in coeffs],
                "im": [c.imag for c in coeffs],
            }
        )
    return {"pieces": pieces}


def ppoly_from_obj(obj, path: str = "$") -> PPoly:
    if not isinstance(obj, dict) or "pieces" not in obj:
        raise SchemaError(f"{path}.pieces: missing")
    if not isinstance(obj["pieces"], list):
        raise SchemaError(f"{path}.pieces: expected a list")
    out = []
    for i, item in enumerate(obj["pieces"]):
        ppath = f"{path}.pieces[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{ppath}: expected an object")
        for key in ("lo", "hi", "re", "im"):
            if key not in item:
                raise SchemaError(f"{ppath}.{key}: missing")
        lo = rational_from_str(item["lo"], f"{ppath}.lo")
        hi = rational_from_str(item["hi"], f"{ppath}.hi")
        re, im = item["re"], item["im"]
        if not isinstance(re, list) or not isinstance(im, list) or len(re) != len(im):
            raise SchemaError(f"{ppath}: 're' and 'im' must be equal-length lists")
        try:
            coeffs = [complex(float(r), float(s)) for r, s in zip(re, im)]
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{ppath}: non-numeric coefficient") from exc
        out.append((lo, hi, coeffs))
    try:
        return PPoly(out)
    except ValueError as exc:
        raise SchemaError(f"{path}.pieces: {exc}") from exc


def load_ppoly(text: str) -> PPoly:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return ppoly_from_obj(obj)


def save_ppoly(phi: PPoly) -> str:
    return dumps(ppoly_to_obj(phi))


# -- deterministic JSON ------------------------------------------------------------


def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite float {x} in JSON payload")
    return "%.17g" % x


def _encode(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for k, v in obj.items():
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(str(k)))
            out.append(":")
            _encode(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _encode(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 digits."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


# -- TSV ---------------------------------------------------------------------------


def write_samples_tsv(stream: IO[str], xs, values) -> None:
    """Sample table: columns x, Re, Im."""
    stream.write("x\tre\tim\n")
    for x, v in zip(xs, values):
        v = complex(v)
        stream.write(f"{_format_float(float(x))}\t{_format_float(v.real)}\t{_format_float(v.imag)}\n")

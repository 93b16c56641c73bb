"""JSON-shaped input documents: parsing with locations, and serialization.

Kinds and their required keys:

``setsystem``       ``{"ground_size": N, "sets": [[i, ...], ...]}``
``trace``           ``{"length": N, "patterns": ["0101", ...]}``
``pseudotree``      ``{"nodes": N, "parent": [p0 or null, ...]}``
``chaincuts``       ``{"length": L, "cuts": [c, ...]}``
``coverfamily``     ``{"ground_size": N, "covers": [[[i, ...], ...], ...]}`` plus
                    optional ``"chi"``, ``"M"`` (string ``"p/q"`` or int), ``"d"``,
                    ``"interval"``
``instanceparams``  any of ``d, n, p, m, m1`` as naturals

A document may carry an explicit ``"kind"``; otherwise it is inferred from
its keys.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .algebras import ChainCuts, Pseudotree
from .coverlab import Cover, GrowthWitness
from .setsys import SetFamily, TraceSet

KINDS = ("setsystem", "trace", "pseudotree", "chaincuts", "coverfamily", "instanceparams")


class DocumentError(ValueError):
    """Malformed input; ``line``/``column`` for syntax, ``path`` for content."""

    def __init__(self, message: str, *, source: str = "<input>", line: int | None = None,
                 column: int | None = None, path: str | None = None):
        self.source, self.line, self.column, self.path = source, line, column, path
        where = source
        if line is not None:
            where += f":{line}:{column}"
        if path:
            where += f" at {path}"
        super().__init__(f"{where}: {message}")


class DuplicateMemberWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any
    source: str = "<input>"


def _load(text: str, source: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, source=source, line=e.lineno, column=e.colno) from None
    if not isinstance(obj, dict):
        raise DocumentError("expected a JSON object", source=source, line=1, column=1)
    return obj


def _nat(obj: dict, key: str, source: str, *, required: bool = True, default: int | None = None):
    if key not in obj:
        if required:
            raise DocumentError(f"missing required key {key!r}", source=source, path=key)
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise DocumentError(f"{key!r} must be a natural number, got {v!r}", source=source, path=key)
    return v


def _index_list(v: Any, bound: int, path: str, source: str) -> list[int]:
    if not isinstance(v, list):
        raise DocumentError("expected a list of indices", source=source, path=path)
    for j, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, int):
            raise DocumentError(f"expected an integer, got {x!r}", source=source, path=f"{path}[{j}]")
        if not 0 <= x < bound:
            raise DocumentError(f"index {x} out of range 0..{bound - 1}", source=source,
                                path=f"{path}[{j}]")
    return v


def infer_kind(obj: dict) -> str:
    if "kind" in obj:
        return obj["kind"]
    if "covers" in obj:
        return "coverfamily"
    if "sets" in obj:
        return "setsystem"
    if "patterns" in obj:
        return "trace"
    if "parent" in obj:
        return "pseudotree"
    if "cuts" in obj:
        return "chaincuts"
    return "instanceparams"


def parse_setsystem(text: str, source: str = "<input>") -> SetFamily:
    return _setsystem(_load(text, source), source)


def _setsystem(obj: dict, source: str) -> SetFamily:
    n = _nat(obj, "ground_size", source)
    sets = obj.get("sets")
    if not isinstance(sets, list):
        raise DocumentError("'sets' must be a list of lists", source=source, path="sets")
    members = [_index_list(s, n, f"sets[{i}]", source) for i, s in enumerate(sets)]
    family = SetFamily.from_sets(n, members)
    for i, j in family.duplicates():
        warnings.warn(f"{source}: member {j} duplicates member {i}", DuplicateMemberWarning,
                      stacklevel=2)
    return family


def _trace(obj: dict, source: str) -> TraceSet:
    n = _nat(obj, "length", source)
    pats = obj.get("patterns")
    if not isinstance(pats, list):
        raise DocumentError("'patterns' must be a list of bit strings", source=source, path="patterns")
    for i, p in enumerate(pats):
        if not isinstance(p, str) or len(p) != n or set(p) - {"0", "1"}:
            raise DocumentError(f"expected a 0/1 string of length {n}, got {p!r}",
                                source=source, path=f"patterns[{i}]")
    return TraceSet.of(n, pats)


def parse_pseudotree(text: str, source: str = "<input>") -> Pseudotree:
    return _pseudotree(_load(text, source), source)


def _pseudotree(obj: dict, source: str) -> Pseudotree:
    n = _nat(obj, "nodes", source)
    parent = obj.get("parent")
    if not isinstance(parent, list) or len(parent) != n:
        raise DocumentError(f"'parent' must be a list of {n} entries", source=source, path="parent")
    for i, p in enumerate(parent):
        if p is None:
            continue
        if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p < n:
            raise DocumentError(f"parent {p!r} out of range 0..{n - 1}", source=source,
                                path=f"parent[{i}]")
    try:
        return Pseudotree(tuple(parent))
    except ValueError as e:
        raise DocumentError(str(e), source=source, path="parent") from None


def _chaincuts(obj: dict, source: str) -> ChainCuts:
    n = _nat(obj, "length", source)
    cuts = _index_list(obj.get("cuts"), n, "cuts", source)
    return ChainCuts(n, tuple(cuts))


def _coverfamily(obj: dict, source: str) -> GrowthWitness:
    n = _nat(obj, "ground_size", source)
    raw = obj.get("covers")
    if not isinstance(raw, list) or not raw:
        raise DocumentError("'covers' must be a nonempty list", source=source, path="covers")
    covers = []
    for i, cov in enumerate(raw):
        if not isinstance(cov, list):
            raise DocumentError("a cover is a list of cells", source=source, path=f"covers[{i}]")
        cells = [_index_list(c, n, f"covers[{i}][{j}]", source) for j, c in enumerate(cov)]
        try:
            covers.append(Cover.of(n, cells))
        except ValueError as e:
            raise DocumentError(str(e), source=source, path=f"covers[{i}]") from None
    chi = obj.get("chi", [len(c) for c in covers])
    try:
        return GrowthWitness(d=_nat(obj, "d", source, required=False, default=1),
                             M=Fraction(str(obj.get("M", 1))), chi=tuple(chi),
                             family=tuple(covers), interval=bool(obj.get("interval", False)))
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise DocumentError(str(e), source=source) from None


def _params(obj: dict, source: str) -> dict[str, int]:
    return {k: _nat(obj, k, source) for k in ("d", "n", "p", "m", "m1") if k in obj}


_PARSERS = {
    "setsystem": _setsystem,
    "trace": _trace,
    "pseudotree": _pseudotree,
    "chaincuts": _chaincuts,
    "coverfamily": _coverfamily,
    "instanceparams": _params,
}


def parse_document(text: str, source: str = "<input>", expect: tuple[str, ...] | None = None) -> Document:
    obj = _load(text, source)
    kind = infer_kind(obj)
    if kind not in _PARSERS:
        raise DocumentError(f"unknown document kind {kind!r}", source=source, path="kind")
    if expect and kind not in expect:
        raise DocumentError(f"expected a {' or '.join(expect)} document, got {kind}", source=source)
    return Document(kind, _PARSERS[kind](obj, source), source)


def to_obj(doc: Document) -> dict:
    p = doc.payload
    if doc.kind == "setsystem":
        return {"kind": "setsystem", "ground_size": p.ground_size, "sets": [sorted(s) for s in p]}
    if doc.kind == "trace":
        return {"kind": "trace", "length": p.length, "patterns": p.as_strings()}
    if doc.kind == "pseudotree":
        return {"kind": "pseudotree", "nodes": len(p), "parent": list(p.parent)}
    if doc.kind == "chaincuts":
        return {"kind": "chaincuts", "length": p.length, "cuts": list(p.cuts)}
    if doc.kind == "coverfamily":
        n = p.family[0].ground_size
        return {"kind": "coverfamily", "ground_size": n,
                "covers": [[sorted(c) for c in cov.cells] for cov in p.family],
                "chi": list(p.chi), "M": str(p.M), "d": p.d, "interval": p.interval}
    if doc.kind == "instanceparams":
        return {"kind": "instanceparams", **p}
    raise ValueError(f"unknown kind {doc.kind}")


def serialize(doc: Document) -> str:
    return json.dumps(to_obj(doc), sort_keys=True)

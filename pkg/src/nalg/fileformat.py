"""Algebra and bipartite-description documents (JSON, UTF-8).

An algebra file is a single document::

    {
      "name": "sl2",
      "arity": 2,
      "dim": 3,
      "labels": ["e", "h", "f"],
      "products": [
        {"args": [1, 2], "value": [{"coef": "1", "basis": 2}]},
        ...
      ],
      "metadata": { ... }          # optional, free-form provenance
    }

``args`` are 1-based basis indices of length arity; unlisted products are
zero; rationals are strings "p/q" (or "p" when the denominator is 1).  The
emitter sorts products and value terms, so save -> load -> save is bit-exact.

A bipartite description file is::

    {"left": [{"type": "sl2"}], "right": [{"weights": {"1": 1}}]}

with 1-based left indices as the weight keys.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .core import NAryAlgebra
from .exactlin import Subspace, Vector, format_scalar


class ParseError(ValueError):
    """Malformed input document; mapped to exit code 2 by the command line."""


def vector_to_strings(v: Sequence[Fraction]) -> list[str]:
    return [format_scalar(x) for x in v]


def _parse_scalar(s, where: str) -> Fraction:
    if isinstance(s, str) or isinstance(s, int):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {s!r} in {where}: {exc}") from None
    raise ParseError(f"bad rational {s!r} in {where}: expected a string")


def _require(doc: dict, key: str, typ, where: str):
    if key not in doc:
        raise ParseError(f"missing field {key!r} in {where}")
    val = doc[key]
    if not isinstance(val, typ):
        raise ParseError(f"field {key!r} in {where} has the wrong type")
    return val


def algebra_to_dict(alg: NAryAlgebra) -> dict:
    products = []
    for key, val in alg.products():
        terms = [{"coef": format_scalar(c), "basis": i + 1}
                 for i, c in enumerate(val) if c]
        products.append({"args": [i + 1 for i in key], "value": terms})
    doc = {
        "name": alg.name,
        "arity": alg.arity,
        "dim": alg.dim,
        "labels": list(alg.labels),
        "products": products,
    }
    if alg.meta:
        doc["metadata"] = alg.meta
    return doc


def algebra_from_dict(doc: dict, where: str = "algebra document") -> NAryAlgebra:
    if not isinstance(doc, dict):
        raise ParseError(f"{where} is not an object")
    arity = _require(doc, "arity", int, where)
    dim = _require(doc, "dim", int, where)
    if arity < 2:
        raise ParseError(f"arity must be at least 2 in {where}")
    if dim < 0:
        raise ParseError(f"dim must be nonnegative in {where}")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != dim:
            raise ParseError(f"labels must list exactly {dim} names in {where}")
    tensor: dict[tuple[int, ...], list[Fraction]] = {}
    for pi, prod in enumerate(_require(doc, "products", list, where)):
        loc = f"{where}, product {pi}"
        if not isinstance(prod, dict):
            raise ParseError(f"{loc} is not an object")
        args = _require(prod, "args", list, loc)
        if len(args) != arity:
            raise ParseError(f"{loc}: args must have length {arity}")
        key = []
        for a in args:
            if not isinstance(a, int) or not 1 <= a <= dim:
                raise ParseError(f"{loc}: basis index {a!r} out of range 1..{dim}")
            key.append(a - 1)
        vec = [Fraction(0)] * dim
        for term in _require(prod, "value", list, loc):
            if not isinstance(term, dict):
                raise ParseError(f"{loc}: value term is not an object")
            b = term.get("basis")
            if not isinstance(b, int) or not 1 <= b <= dim:
                raise ParseError(f"{loc}: basis index {b!r} out of range 1..{dim}")
            vec[b - 1] += _parse_scalar(term.get("coef"), loc)
        k = tuple(key)
        if k in tensor:
            raise ParseError(f"{loc}: duplicate product for args {args}")
        tensor[k] = vec
    meta = doc.get("metadata")
    if meta is not None and not isinstance(meta, dict):
        raise ParseError(f"metadata must be an object in {where}")
    try:
        return NAryAlgebra(arity, dim, tensor, labels,
                           name=str(doc.get("name", "")), meta=meta)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def dumps_algebra(alg: NAryAlgebra) -> str:
    return json.dumps(algebra_to_dict(alg), indent=2, ensure_ascii=False) + "\n"


def save_algebra(alg: NAryAlgebra, path: str | Path) -> None:
    Path(path).write_text(dumps_algebra(alg), encoding="utf-8")


def load_algebra(path: str | Path) -> NAryAlgebra:
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p} is not valid JSON: {exc}") from None
    return algebra_from_dict(doc, where=str(p))


def subspace_to_dict(sub: Subspace, labels: Sequence[str] | None = None) -> dict:
    doc = {
        "ambient_dim": sub.ambient_dim,
        "dim": sub.dim,
        "basis": [vector_to_strings(r) for r in sub.rows],
    }
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def bipartite_spec_to_dict(spec) -> dict:
    return {
        "left": [{"type": t} for t in spec.left],
        "right": [{"weights": {str(i + 1): int(w) for i, w in sorted(ws.items())}}
                  for ws in spec.right],
    }


def bipartite_spec_from_dict(doc: dict, where: str = "bipartite document"):
    from .functors import BipartiteSpec

    if not isinstance(doc, dict):
        raise ParseError(f"{where} is not an object")
    left = []
    for li, node in enumerate(_require(doc, "left", list, where)):
        if not isinstance(node, dict) or "type" not in node:
            raise ParseError(f"{where}: left node {li} needs a type")
        left.append(str(node["type"]))
    right = []
    for ri, node in enumerate(_require(doc, "right", list, where)):
        loc = f"{where}, right node {ri}"
        if not isinstance(node, dict):
            raise ParseError(f"{loc} is not an object")
        weights_doc = _require(node, "weights", dict, loc)
        weights = {}
        for key, w in weights_doc.items():
            try:
                i = int(key)
            except (TypeError, ValueError):
                raise ParseError(f"{loc}: bad left index {key!r}") from None
            if not isinstance(w, int):
                raise ParseError(f"{loc}: weight for {key!r} must be an integer")
            weights[i - 1] = w
        right.append(weights)
    try:
        return BipartiteSpec(tuple(left), tuple(right))
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def load_bipartite_spec(path: str | Path):
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p} is not valid JSON: {exc}") from None
    return bipartite_spec_from_dict(doc, where=str(p))

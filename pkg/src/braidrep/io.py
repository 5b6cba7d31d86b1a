"""Representation files, graph export.

RepFile::

    {"n": 4, "dimension": 3, "field": "Q(t)",
     "generators": [[["-t", "1", "0"], ...], ...]}

Scalars are always strings in the text grammar of :mod:`braidrep.field`.
"""

from __future__ import annotations

import json
from typing import Dict

from .field import FIELDS, format_scalar, parse_scalar
from .friendship import FriendshipGraph
from .linalg import Matrix
from .rep import BraidRepresentation


class RepFileError(ValueError):
    pass


def rep_to_dict(rep: BraidRepresentation) -> Dict:
    return {
        "n": rep.n,
        "dimension": rep.r,
        "field": rep.field,
        "generators": [[[format_scalar(x) for x in row] for row in g.rows] for g in rep.generators],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def rep_to_json(rep: BraidRepresentation) -> str:
    return dumps(rep_to_dict(rep))


def rep_from_dict(doc: Dict, name: str = "", check: bool = False) -> BraidRepresentation:
    """Parse a RepFile document.  Relations are not verified unless ``check``."""
    try:
        n = int(doc["n"])
        r = int(doc["dimension"])
        field = doc["field"]
        raw = doc["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise RepFileError(f"malformed representation file: {exc}") from exc
    if field not in FIELDS:
        raise RepFileError(f"unknown field {field!r}")
    if n < 3:
        raise RepFileError(f"n must be >= 3, got {n}")
    if len(raw) != n - 1:
        raise RepFileError(f"expected {n - 1} generators, got {len(raw)}")
    gens = []
    for k, g in enumerate(raw, start=1):
        if len(g) != r or any(len(row) != r for row in g):
            raise RepFileError(f"generator {k} is not {r}x{r}")
        try:
            rows = [[parse_scalar(str(x), field) for x in row] for row in g]
        except ValueError as exc:
            raise RepFileError(f"generator {k}: {exc}") from exc
        gens.append(Matrix(rows, field))
    return BraidRepresentation(n, gens, name=name, check=check)


def load_rep(path: str, check: bool = False) -> BraidRepresentation:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise RepFileError(f"{path}: not JSON: {exc}") from exc
    return rep_from_dict(doc, name=str(path), check=check)


def save_rep(rep: BraidRepresentation, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(rep_to_json(rep))


def graph_to_dot(graph: FriendshipGraph, name: str = "friendship") -> str:
    lines = [f"graph {name} {{"]
    for i in range(graph.n):
        lines.append(f"  A{i};")
    for i, j in graph.edges():
        lines.append(f'  A{i} -- A{j} [label="f={graph.f(i, j)},tf={graph.tf(i, j)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: FriendshipGraph) -> Dict:
    return {
        "n": graph.n,
        "classification": graph.classification,
        "f_table": graph.f_table,
        "tf_table": graph.tf_table,
        "f_of_k": {str(k): v for k, v in graph.f_of_k.items()},
        "tf_of_k": {str(k): v for k, v in graph.tf_of_k.items()},
        "edges": [[i, j] for i, j in graph.edges()],
        "violations": graph.violations,
    }

"""JSON descriptors for groups, matrices, trees, colored graphs and point sets."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ParseError
from .matrices import AffineMap, Matrix
from .perm import Permutation, parse_permutation
from .scalars import parse_scalar


def load_json(source: str | Path) -> Any:
    """Read a JSON file; syntax errors become ParseError with line and column."""
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    return loads(text, name=str(source))


def loads(text: str, name: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         payload={"line": exc.lineno, "column": exc.colno}) from None


def _require(data: Any, key: str, kind: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{kind} descriptor needs a {key!r} field")
    return data[key]


def permutation_from_json(item: Any, degree: int) -> Permutation:
    """A cycle string, an image list, or {"images": [...]}."""
    if isinstance(item, str):
        return parse_permutation(item, degree)
    if isinstance(item, dict):
        item = _require(item, "images", "isometry")
    if isinstance(item, list) and all(isinstance(x, int) for x in item):
        if len(item) != degree:
            raise ParseError(f"image list of length {len(item)} for degree {degree}")
        try:
            return Permutation(tuple(item))
        except Exception as exc:
            raise ParseError(f"not a bijection: {item}") from exc
    raise ParseError(f"cannot read a permutation from {item!r}")


def perm_group_from_json(data: dict) -> tuple[int, list[Permutation]]:
    degree = _require(data, "degree", "group")
    if not isinstance(degree, int) or degree < 1:
        raise ParseError(f"degree must be a positive integer, got {degree!r}")
    gens = _require(data, "generators", "group")
    return degree, [permutation_from_json(g, degree) for g in gens]


def matrix_from_json(rows: Any) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"a matrix is a nonempty list of rows, got {rows!r}")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows of different lengths")
    return Matrix(tuple(tuple(parse_scalar(x) for x in r) for r in rows))


def affine_from_json(item: dict) -> AffineMap:
    linear = matrix_from_json(_require(item, "linear", "affine map"))
    translation = tuple(parse_scalar(x) for x in _require(item, "translation", "affine map"))
    return AffineMap(linear, translation)


def word_from_json(items: Any):
    from .sl2z import SignedWord

    try:
        return SignedWord(tuple((str(g), int(e)) for g, e in items))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"a word is a list of [generator, exponent] pairs: {items!r}") from exc


def tree_from_json(data: dict):
    from .tree import Tree

    n = _require(data, "n", "tree")
    edges = _require(data, "edges", "tree")
    try:
        return Tree(int(n), edges)
    except (ValueError, TypeError, IndexError) as exc:
        raise ParseError(f"invalid tree: {exc}") from exc


def colored_graph_from_json(data: dict, **kwargs):
    from .colored import validate_colored_graph

    n = _require(data, "n", "colored graph")
    edges = _require(data, "edges", "colored graph")
    colors = _require(data, "colors", "colored graph")
    try:
        return validate_colored_graph(int(n), edges, colors, **kwargs)
    except (ValueError, TypeError, IndexError) as exc:
        raise ParseError(f"invalid colored graph: {exc}") from exc


def points_from_json(data: Any) -> tuple[list[list[float]], str | None]:
    """Either a bare list of points or {"space": ..., "points": [...]}."""
    space = None
    if isinstance(data, dict):
        space = data.get("space")
        data = _require(data, "points", "point set")
    if not isinstance(data, list) or not all(isinstance(p, list) for p in data):
        raise ParseError("points must be a list of coordinate lists")
    try:
        return [[float(x) for x in p] for p in data], space
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric coordinate: {exc}") from exc


def complex_from_json(x: Any) -> complex:
    """A number, a [re, im] pair, or a string such as "1+2j"."""
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, str):
        try:
            return complex(x.replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ParseError(f"cannot read a complex number from {x!r}")

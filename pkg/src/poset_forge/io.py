"""JSON interchange for graphs and complexes.

Graph file::

    {"d": 3, "vertices": ["alpha", "100", "110"],
     "edges": [{"u": "100", "v": "alpha", "color": 1}, ...]}

Complex file::

    {"d": 3, "facets": ["alpha", "100", "110"],
     "identifications": [{"facet_a": "alpha", "facet_b": "110", "colors": [1, 2]}, ...]}

Identifications are a generating set; readers close them downward.  An
optional ``labels`` list on a complex names the ambient colors of its positions.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import CellComplex, build_from_graph
from .graph import ColoredMultigraph


class FormatError(ValueError):
    pass


def graph_to_dict(G: ColoredMultigraph) -> dict:
    return {"d": G.d, "vertices": list(G.vertices),
            "edges": [{"u": e.u, "v": e.v, "color": e.color} for e in G.edges]}


def _field(data: dict, key: str, kind):
    if key not in data:
        raise FormatError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise FormatError(f"field {key!r} has the wrong type")
    return value


def graph_from_dict(data: dict) -> ColoredMultigraph:
    d = _field(data, "d", int)
    vertices = _field(data, "vertices", list)
    edges = []
    for n, e in enumerate(_field(data, "edges", list)):
        try:
            edges.append((e["u"], e["v"], int(e["color"])))
        except (KeyError, TypeError, ValueError):
            raise FormatError(f"malformed record edges[{n}]") from None
    try:
        return ColoredMultigraph(d, vertices, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def complex_to_dict(P: CellComplex) -> dict:
    out = {"d": P.d, "facets": list(P.facets),
           "identifications": [{"facet_a": a, "facet_b": b, "colors": sorted(S)}
                               for a, b, S in P.generators()]}
    if P.labels != tuple(range(1, P.d + 1)):
        out["labels"] = list(P.labels)
    return out


def complex_from_dict(data: dict) -> CellComplex:
    d = _field(data, "d", int)
    facets = _field(data, "facets", list)
    gens = []
    for n, r in enumerate(data.get("identifications", [])):
        try:
            gens.append((r["facet_a"], r["facet_b"], [int(c) for c in r["colors"]]))
        except (KeyError, TypeError, ValueError):
            raise FormatError(f"malformed record identifications[{n}]") from None
    try:
        return CellComplex.from_identifications(d, facets, gens, labels=data.get("labels"))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps(obj) -> str:
    data = graph_to_dict(obj) if isinstance(obj, ColoredMultigraph) else complex_to_dict(obj)
    return json.dumps(data, indent=1) + "\n"


def write(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def read(path):
    """A graph or a complex, depending on the file's fields."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object")
    if "facets" in data:
        return complex_from_dict(data)
    if "vertices" in data:
        return graph_from_dict(data)
    raise FormatError(f"{path}: need either 'facets' (complex) or 'vertices' (graph)")


def read_complex(path) -> CellComplex:
    obj = read(path)
    if isinstance(obj, ColoredMultigraph):
        try:
            return build_from_graph(obj)
        except ValueError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return obj

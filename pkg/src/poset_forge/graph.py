"""Edge-colored multigraphs.

A :class:`ColoredMultigraph` is the encoding substrate for the cell complexes in
:mod:`poset_forge.complex`: vertices become facets and an edge of color ``c``
glues the two facets along the ridge missing color ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    color: int


@dataclass(frozen=True)
class ColoredMultigraph:
    """Finite multigraph whose edges carry colors in ``1..d``.

    Parallel edges are allowed, loops are not.  Instances are immutable.
    """

    d: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __init__(self, d: int, vertices: Iterable[str], edges: Iterable) -> None:
        vertices = tuple(str(v) for v in vertices)
        edges = tuple(e if isinstance(e, Edge) else Edge(str(e[0]), str(e[1]), int(e[2]))
                      for e in edges)
        if d < 1:
            raise ValueError(f"number of colors must be positive, got d={d}")
        if len(set(vertices)) != len(vertices):
            raise ValueError("vertex identifiers must be unique")
        known = set(vertices)
        for e in edges:
            if e.u not in known or e.v not in known:
                raise ValueError(f"edge {e} references an unknown vertex")
            if e.u == e.v:
                raise ValueError(f"loop at vertex {e.u!r} is not allowed")
            if not 1 <= e.color <= d:
                raise ValueError(f"edge color {e.color} outside 1..{d}")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def colors(self) -> frozenset[int]:
        return frozenset(range(1, self.d + 1))

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.u, e.v, color=e.color)
        return g


def _check_colors(G: ColoredMultigraph, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(int(c) for c in S)
    bad = sorted(c for c in S if not 1 <= c <= G.d)
    if bad:
        raise ValueError(f"colors {bad} outside 1..{G.d}")
    return S


def restrict(G: ColoredMultigraph, S: Iterable[int]) -> ColoredMultigraph:
    """Keep every vertex and exactly the edges whose color lies in ``S``."""
    S = _check_colors(G, S)
    return ColoredMultigraph(G.d, G.vertices, [e for e in G.edges if e.color in S])


def components(G: ColoredMultigraph) -> list[list[str]]:
    """Connected components, isolated vertices included.

    Each component lists its vertices in graph order; components are sorted
    by their first vertex.
    """
    idx = G.index
    comps = [sorted(c, key=idx.__getitem__) for c in nx.connected_components(G.to_networkx())]
    comps.sort(key=lambda c: idx[c[0]])
    return comps


def is_connected_avoiding(G: ColoredMultigraph, c: int) -> bool:
    if not 1 <= c <= G.d:
        raise ValueError(f"color {c} outside 1..{G.d}")
    return len(components(restrict(G, G.colors() - {c}))) == 1


def is_connected(G: ColoredMultigraph) -> bool:
    return len(G.vertices) > 0 and len(components(G)) == 1


def to_dot(G: ColoredMultigraph, name: str = "G") -> str:
    """Render as an undirected DOT graph, one line per multigraph edge.

    The apex vertex ``alpha`` is drawn as a white circle.
    """
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        if v == "alpha":
            lines.append(f'  "{v}" [shape=circle, style=filled, fillcolor=white, label="α"];')
        else:
            lines.append(f'  "{v}" [shape=point, xlabel="{v}"];')
    for e in G.edges:
        lines.append(f'  "{e.u}" -- "{e.v}" [label="{e.color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

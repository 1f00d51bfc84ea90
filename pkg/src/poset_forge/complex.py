"""Balanced simplicial cell complexes.

A complex of rank ``d`` is a list of facets, each a (d-1)-simplex whose
vertices are colored ``1..d``.  The face of facet ``f`` carrying the colors
``S`` is written ``(f, S)``; faces of different facets are glued by declaring
``(f, S) ~ (g, S)``, which forces ``(f, T) ~ (g, T)`` for every ``T`` inside
``S``.  The equivalence classes are the elements of the simplicial poset, with
the empty color set as the bottom element.

Color sets are handled internally as bitmasks: bit ``i`` is the color in
position ``i + 1``.  The face table is materialized for all ``2**d`` masks at
construction, so every face query afterwards is a lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from networkx.utils import UnionFind
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graph import ColoredMultigraph, is_connected


class ConsistencyError(AssertionError):
    """An internal cross-check between two independent routes disagreed."""


class Face(NamedTuple):
    """Canonical handle of a face class: its smallest ``(facet, colors)`` member."""

    facet: int
    mask: int

    @property
    def rank(self) -> int:
        return bin(self.mask).count("1")

    @property
    def dim(self) -> int:
        return self.rank - 1

    @property
    def colors(self) -> frozenset[int]:
        return mask_colors(self.mask)


def colors_mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= 1 << (int(c) - 1)
    return m


def mask_colors(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _popcount(m: int) -> int:
    return bin(m).count("1")


class CellComplex:
    """Balanced simplicial cell complex of rank ``d``.

    Use :meth:`from_identifications`, :func:`build_from_graph` or the other
    module-level builders rather than the raw constructor, which takes a fully
    materialized class table and performs no closure.

    ``labels`` records which colors of an ambient complex the positions
    ``1..d`` stand for (links renumber their colors); ``source`` optionally
    records the graph and color palette the complex was built from.
    """

    def __init__(self, d: int, facets: Sequence[str], classes, labels=None, source=None):
        facets = tuple(str(f) for f in facets)
        if d < 0:
            raise ValueError(f"rank must be nonnegative, got {d}")
        if not facets:
            raise ValueError("a complex needs at least one facet")
        if len(set(facets)) != len(facets):
            raise ValueError("facet identifiers must be unique")
        n, full = len(facets), 1 << d
        # Raw class labels -> canonical (facet, mask) representatives.
        best: dict = {}
        keys = [sorted(mask_colors(m)) for m in range(full)]
        for f in range(n):
            row = classes[f]
            if len(row) != full:
                raise ValueError(f"facet {facets[f]!r}: expected {full} face entries")
            for m in range(full):
                key = (f, keys[m])
                lab = row[m]
                if lab not in best or key < best[lab][0]:
                    best[lab] = (key, Face(f, m))
        self.d = int(d)
        self.facets = facets
        self.labels = tuple(labels) if labels is not None else tuple(range(1, d + 1))
        if len(self.labels) != d:
            raise ValueError("labels must have one entry per color")
        self.source = source
        self._table = tuple(tuple(best[classes[f][m]][1] for m in range(full)) for f in range(n))
        self._by_rank = None
        self._valid = None

    # construction -------------------------------------------------------

    @classmethod
    def from_identifications(cls, d: int, facets: Sequence[str], identifications: Iterable,
                             labels=None, source=None) -> "CellComplex":
        """Close a generating set of gluings ``(facet_a, facet_b, colors)``.

        ``colors`` are positions in ``1..d``; all subsets of a declared color
        set are identified as well, and all bottom faces coincide.
        """
        facets = [str(f) for f in facets]
        index = {f: i for i, f in enumerate(facets)}
        n, full = len(facets), 1 << d
        a_idx, b_idx, masks = [], [], []
        for a, b, colors in identifications:
            if str(a) not in index or str(b) not in index:
                raise ValueError(f"identification ({a}, {b}) references an unknown facet")
            m = colors_mask(colors)
            if m >= full:
                raise ValueError(f"identification colors {sorted(colors)} outside 1..{d}")
            if m == full - 1 and a != b:
                raise ValueError(f"identification of whole facets {a!r} and {b!r}; glue_facets merges facets")
            a_idx.append(index[str(a)])
            b_idx.append(index[str(b)])
            masks.append(m)
        a_idx, b_idx, masks = np.array(a_idx, int), np.array(b_idx, int), np.array(masks, int)
        classes = np.empty((n, full), dtype=np.int64)
        for m in range(full):
            if m == 0:
                classes[:, 0] = 0
                continue
            sel = (masks & m) == m
            graph = coo_matrix((np.ones(sel.sum()), (a_idx[sel], b_idx[sel])), shape=(n, n))
            _, comp = connected_components(graph, directed=False)
            rep = np.full(comp.max() + 1, n)
            np.minimum.at(rep, comp, np.arange(n))
            classes[:, m] = rep[comp]
        # Class label = (rep facet, mask); the raw constructor canonicalizes.
        table = [[(int(classes[f, m]), m) for m in range(full)] for f in range(n)]
        return cls(d, facets, table, labels=labels, source=source)

    # queries ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.d

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def facet_index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < len(self.facets):
                raise KeyError(f"facet index {name} out of range")
            return int(name)
        try:
            return self.facets.index(str(name))
        except ValueError:
            raise KeyError(f"no facet named {name!r}") from None

    def face(self, facet, colors=None, *, mask: int | None = None) -> Face:
        """The class of ``(facet, colors)``; colors are positions ``1..d``."""
        if mask is None:
            mask = colors_mask(colors or ())
        if not 0 <= mask < 1 << self.d:
            raise ValueError(f"color mask {mask} out of range for rank {self.d}")
        return self._table[self.facet_index(facet)][mask]

    def _faces_by_rank(self) -> list[list[Face]]:
        if self._by_rank is None:
            by_rank: list[list[Face]] = [[] for _ in range(self.d + 1)]
            seen = set()
            for row in self._table:
                for fc in row:
                    if fc not in seen:
                        seen.add(fc)
                        by_rank[fc.rank].append(fc)
            for lst in by_rank:
                lst.sort(key=lambda fc: (sorted(fc.colors), fc.facet))
            self._by_rank = by_rank
        return self._by_rank

    def faces(self, r: int) -> list[Face]:
        if not 0 <= r <= self.d:
            raise ValueError(f"rank {r} outside 0..{self.d}")
        return list(self._faces_by_rank()[r])

    def all_faces(self) -> list[Face]:
        return [fc for lst in self._faces_by_rank() for fc in lst]

    def contains(self, face: Face) -> bool:
        return 0 <= face.facet < self.n_facets and face.mask < (1 << self.d) \
            and self._table[face.facet][face.mask] == face

    def members(self, face: Face) -> list[int]:
        """Facets having ``face`` among their faces, in facet order."""
        return [g for g in range(self.n_facets) if self._table[g][face.mask] == face]

    def is_pure(self) -> bool:
        """Every maximal face is one of the facets, all of rank ``d``."""
        full = (1 << self.d) - 1
        return len({row[full] for row in self._table}) == self.n_facets

    def bottom(self) -> Face:
        return self._table[0][0]

    def describe(self, face: Face) -> str:
        cols = ",".join(str(self.labels[c - 1]) for c in sorted(face.colors))
        return f"{self.facets[face.facet]}[{cols}]"

    def generators(self) -> list[tuple[str, str, frozenset[int]]]:
        """A generating set of gluings whose closure reproduces this complex.

        At each color set, members of a class already glued through some
        larger color set are grouped first; only the links between groups
        are emitted.
        """
        d, full, T = self.d, 1 << self.d, self._table
        gens = []
        for m in sorted(range(1, full - 1), key=lambda m: (-_popcount(m), m)):
            up = [m | (1 << b) for b in range(d) if not m >> b & 1]
            classes: dict[Face, list[int]] = {}
            for g in range(self.n_facets):
                classes.setdefault(T[g][m], []).append(g)
            for members in classes.values():
                if len(members) < 2:
                    continue
                uf = UnionFind(members)
                for u in up:
                    above: dict[Face, int] = {}
                    for g in members:
                        uf.union(above.setdefault(T[g][u], g), g)
                heads = sorted(min(group) for group in uf.to_sets())
                gens.extend((self.facets[heads[0]], self.facets[h], mask_colors(m)) for h in heads[1:])
        return gens

    def __eq__(self, other) -> bool:
        return isinstance(other, CellComplex) and self.d == other.d \
            and self.facets == other.facets and self._table == other._table

    def __hash__(self):
        return hash((self.d, self.facets, self._table))

    def __repr__(self) -> str:
        return f"CellComplex(d={self.d}, facets={self.n_facets})"

    def renamed(self, prefix: str) -> "CellComplex":
        """Same complex with every facet name prefixed (used before unions)."""
        out = CellComplex.__new__(CellComplex)
        out.__dict__.update(self.__dict__)
        out.facets = tuple(prefix + f for f in self.facets)
        out.source = None
        return out

    def link(self, sigma: Face) -> "CellComplex":
        return link(self, sigma)


# builders ---------------------------------------------------------------

def simplex(d: int, name: str = "F") -> CellComplex:
    """A single (d-1)-simplex."""
    return CellComplex.from_identifications(d, [name], [])


def build_from_graph(G: ColoredMultigraph, colors: Iterable[int] | None = None) -> CellComplex:
    """The complex P(G): one facet per vertex, one ridge gluing per edge.

    ``colors`` selects a palette of graph colors (default all of ``1..d``);
    edges of other colors are dropped and the palette is renumbered in
    increasing order, so ``build_from_graph(G, palette - {c})`` is the link of
    the vertex colored ``c``.
    """
    palette = sorted(set(colors)) if colors is not None else list(range(1, G.d + 1))
    if any(not 1 <= c <= G.d for c in palette):
        raise ValueError(f"palette {palette} outside 1..{G.d}")
    pos = {c: i + 1 for i, c in enumerate(palette)}
    sub = ColoredMultigraph(G.d, G.vertices, [e for e in G.edges if e.color in pos])
    if not is_connected(sub):
        raise ValueError("build_from_graph needs a connected graph; assemble pieces with disjoint_union")
    everything = set(pos.values())
    gens = [(e.u, e.v, everything - {pos[e.color]}) for e in sub.edges]
    return CellComplex.from_identifications(len(palette), G.vertices, gens, labels=palette,
                                            source=(G, tuple(palette)))


def _prefixed(P1: CellComplex, P2: CellComplex) -> tuple[CellComplex, CellComplex]:
    if set(P1.facets) & set(P2.facets):
        return P1.renamed("a."), P2.renamed("b.")
    return P1, P2


def disjoint_union(P1: CellComplex, P2: CellComplex) -> CellComplex:
    """Side by side, sharing only the bottom element.

    Facet names are kept when they are disjoint, otherwise prefixed ``a.``
    and ``b.``.
    """
    if P1.d != P2.d:
        raise ValueError(f"rank mismatch: {P1.d} vs {P2.d}")
    P1, P2 = _prefixed(P1, P2)
    return CellComplex.from_identifications(P1.d, P1.facets + P2.facets,
                                            P1.generators() + P2.generators(), labels=P1.labels)


def glue_facets(P1: CellComplex, F1, P2: CellComplex, F2) -> CellComplex:
    """Disjoint union with facet ``F1`` of ``P1`` identified with ``F2`` of ``P2``.

    Vertices are matched by color.  The merged facet keeps ``P1``'s name.
    """
    if P1.d != P2.d:
        raise ValueError(f"rank mismatch: {P1.d} vs {P2.d}")
    i1, i2 = P1.facet_index(F1), P2.facet_index(F2)
    P1, P2 = _prefixed(P1, P2)
    keep, drop = P1.facets[i1], P2.facets[i2]
    facets = P1.facets + tuple(f for f in P2.facets if f != drop)
    gens = P1.generators() + [(keep if a == drop else a, keep if b == drop else b, S)
                              for a, b, S in P2.generators()]
    return CellComplex.from_identifications(P1.d, facets, gens, labels=P1.labels)


def link(P: CellComplex, sigma: Face) -> CellComplex:
    """All faces above ``sigma``, re-ranked over the colors ``sigma`` misses.

    When ``P`` was built from a graph and ``sigma`` is a vertex whose color
    class is glued through all facets, the result is checked against the
    complex of the graph with that color removed.
    """
    if not P.contains(sigma):
        raise ValueError(f"{sigma} is not a face of {P!r}")
    S = sigma.mask
    rest = [b for b in range(P.d) if not S >> b & 1]
    members = P.members(sigma)
    where = {g: i for i, g in enumerate(members)}
    table = []
    for g in members:
        row = []
        for m in range(1 << len(rest)):
            big = S
            for i, b in enumerate(rest):
                if m >> i & 1:
                    big |= 1 << b
            rep = P._table[g][big]
            row.append((where[rep.facet], m))
        table.append(row)
    labels = [P.labels[b] for b in rest]
    L = CellComplex(len(rest), [P.facets[g] for g in members], table, labels=labels)
    if P.source is not None and sigma.rank == 1 and len(members) == P.n_facets:
        G, palette = P.source
        drop = P.labels[S.bit_length() - 1]
        expected = build_from_graph(G, [c for c in palette if c != drop])
        if expected != L:
            raise ConsistencyError(f"link of color {drop} differs from the complex of the restricted graph")
        L.source = expected.source
    return L


def faces(P: CellComplex, r: int) -> list[Face]:
    return P.faces(r)


# validation -------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(P: CellComplex) -> ValidationReport:
    """Check the simplicial-poset axioms on the materialized class table."""
    d, full, T = P.d, 1 << P.d, P._table
    for f in range(P.n_facets):
        for m in range(full):
            if T[f][m].mask != m:
                other = T[f][m]
                return ValidationReport(False, "color consistency: "
                                        f"({P.facets[f]}, {sorted(mask_colors(m))}) ~ "
                                        f"({P.facets[other.facet]}, {sorted(other.colors)})")
    if len({T[f][0] for f in range(P.n_facets)}) != 1:
        return ValidationReport(False, "bottom: empty faces of different facets are not identified")
    for f in range(P.n_facets):
        for m in range(1, full):
            r = T[f][m].facet
            for b in range(d):
                if m >> b & 1 and T[f][m & ~(1 << b)] != T[r][m & ~(1 << b)]:
                    return ValidationReport(False, "downward closure: "
                                            f"({P.facets[f]}, {sorted(mask_colors(m))}) ~ "
                                            f"({P.facets[r]}, {sorted(mask_colors(m))}) but not on "
                                            f"{sorted(mask_colors(m & ~(1 << b)))}")
    for f in range(P.n_facets):
        if len(set(T[f])) != full:
            return ValidationReport(False, f"boolean interval: facet {P.facets[f]} repeats a face")
    if len({T[f][full - 1] for f in range(P.n_facets)}) != P.n_facets:
        return ValidationReport(False, "purity: two facets are identified with each other")
    return ValidationReport(True)


def require_valid(P: CellComplex) -> None:
    if P._valid is None:
        P._valid = validate(P)
    if not P._valid.ok:
        raise ValueError(f"invalid complex: {P._valid.violation}")

"""Graphical shellings, CW shellings, and h-vectors read off from shellings.

For a vertex ordering ``F_1, ..., F_r`` of a colored graph, a color set ``S``
separates ``F_i`` when no path from ``F_i`` to an earlier vertex avoids the
colors in ``S``.  The ordering is a graphical shelling when every ``F_i`` has a
unique minimal separating set ``R(F_i)``.

Separating sets are closed upward (removing more colors removes more paths),
so the unique minimum exists exactly when the intersection of all separating
sets separates.  That intersection is the set of colors ``c`` for which
dropping every color but ``c`` still leaves a path backwards.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .complex import CellComplex, ConsistencyError
from .graph import ColoredMultigraph
from .invariants import HVector


@dataclass(frozen=True)
class ShellingCertificate:
    order: tuple[str, ...]
    restrictions: tuple[frozenset[int], ...]
    colors: frozenset[int]
    graph: ColoredMultigraph | None = field(default=None, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.colors)


class _Adjacency:
    def __init__(self, G: ColoredMultigraph, colors):
        self.G = G
        self.palette = frozenset(colors) if colors is not None else G.colors()
        bad = [c for c in self.palette if not 1 <= c <= G.d]
        if bad:
            raise ValueError(f"colors {sorted(bad)} outside 1..{G.d}")
        self.adj: dict[str, list[tuple[str, int]]] = {v: [] for v in G.vertices}
        for e in G.edges:
            if e.color in self.palette:
                self.adj[e.u].append((e.v, e.color))
                self.adj[e.v].append((e.u, e.color))

    def reaches(self, start: str, targets: set[str], allowed: frozenset[int]) -> bool:
        seen = {start}
        todo = deque([start])
        while todo:
            x = todo.popleft()
            for y, c in self.adj[x]:
                if c in allowed and y not in seen:
                    if y in targets:
                        return True
                    seen.add(y)
                    todo.append(y)
        return False


def _check_order(G: ColoredMultigraph, order: Sequence[str]) -> tuple[str, ...]:
    order = tuple(str(v) for v in order)
    if sorted(order) != sorted(G.vertices):
        raise ValueError("order must be a permutation of the graph's vertices")
    return order


def _separates(adj: _Adjacency, order, i: int, S: frozenset[int]) -> bool:
    return not adj.reaches(order[i - 1], set(order[:i - 1]), adj.palette - S)


def _fast_min(adj: _Adjacency, order, i: int) -> frozenset[int] | None:
    if i == 1:
        return frozenset()
    pal = adj.palette
    T = frozenset(c for c in pal if not _separates(adj, order, i, pal - {c}))
    return T if _separates(adj, order, i, T) else None


def minimal_separators(G: ColoredMultigraph, order: Sequence[str], i: int, colors=None) -> list[frozenset[int]]:
    """All inclusion-minimal separating sets, by enumerating every subset."""
    order = _check_order(G, order)
    if not 1 <= i <= len(order):
        raise IndexError(f"index {i} outside 1..{len(order)}")
    adj = _Adjacency(G, colors)
    pal = sorted(adj.palette)
    seps = [frozenset(S) for n in range(len(pal) + 1) for S in combinations(pal, n)
            if _separates(adj, order, i, frozenset(S))]
    return [S for S in seps if not any(T < S for T in seps)]


def separating_family_min(G: ColoredMultigraph, order: Sequence[str], i: int, colors=None,
                          oracle: bool = False) -> frozenset[int] | None:
    """``R(F_i)`` for the 1-based index ``i``, or None if there is no unique minimum.

    ``colors`` restricts the graph to a palette (the link of a vertex uses
    all colors but one).  With ``oracle=True`` the answer is cross-checked
    against full subset enumeration.
    """
    order = _check_order(G, order)
    if not 1 <= i <= len(order):
        raise IndexError(f"index {i} outside 1..{len(order)}")
    adj = _Adjacency(G, colors)
    got = _fast_min(adj, order, i)
    if oracle:
        mins = minimal_separators(G, order, i, colors)
        expected = mins[0] if len(mins) == 1 else None
        if got != expected:
            raise ConsistencyError(f"fast separator {got} disagrees with enumeration {mins} at i={i}")
    return got


def is_graphical_shelling(G: ColoredMultigraph, order: Sequence[str], colors=None,
                          oracle: bool = True) -> ShellingCertificate | None:
    order = _check_order(G, order)
    adj = _Adjacency(G, colors)
    rs = []
    for i in range(1, len(order) + 1):
        R = separating_family_min(G, order, i, colors, oracle=oracle) if oracle \
            else _fast_min(adj, order, i)
        if R is None:
            return None
        rs.append(R)
    return ShellingCertificate(order, tuple(rs), adj.palette, G)


def h_from_shelling(cert: ShellingCertificate) -> HVector:
    h = [0] * (cert.rank + 1)
    for R in cert.restrictions:
        h[len(R)] += 1
    return HVector(h)


def cw_shelling_steps(P: CellComplex, order: Sequence) -> list[dict]:
    """Per-step view of how each facet meets the union of earlier ones.

    ``shared_ridges`` names each shared ridge by the color it is missing.
    """
    if not P.is_pure():
        raise ValueError("CW shellings are defined for pure complexes")
    idx = [P.facet_index(f) for f in order]
    if sorted(idx) != list(range(P.n_facets)):
        raise ValueError("order must list every facet exactly once")
    d, full = P.d, (1 << P.d) - 1
    seen: set = set()
    steps = []
    for j, f in enumerate(idx):
        faces = [P.face(f, mask=m) for m in range(full)]
        if j == 0:
            steps.append({"facet": P.facets[f], "shared_ridges": [], "ok": True})
        else:
            shared = [m for m in range(full) if faces[m] in seen]
            ridges = [m for m in shared if bin(m).count("1") == d - 1]
            pure = bool(ridges) and all(any(m & r == m for r in ridges) for m in shared)
            steps.append({"facet": P.facets[f],
                          "shared_ridges": [sorted(P.labels[c] for c in range(d) if not r >> c & 1)
                                            for r in ridges],
                          "ok": d == 1 or pure})
        seen.update(faces)
    return steps


def is_cw_shelling(P: CellComplex, order: Sequence) -> bool:
    """Each new facet must meet the earlier ones in a nonempty pure (d-2)-dimensional subcomplex."""
    steps = cw_shelling_steps(P, order)
    return P.d == 1 or all(s["ok"] for s in steps)


def find_graphical_shelling(G: ColoredMultigraph, colors=None, first: str | None = None,
                            limit: int = 100_000) -> ShellingCertificate | None:
    """Greedy extension with backtracking; a utility for small graphs only."""
    adj = _Adjacency(G, colors)
    starts = [first] if first is not None else list(G.vertices)
    budget = [limit]

    def extend(order: list[str], rs: list[frozenset[int]]):
        if len(order) == len(G.vertices):
            return order, rs
        for v in G.vertices:
            if v in order:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                return None
            trial = order + [v]
            R = _fast_min(adj, trial, len(trial))
            if R is not None:
                found = extend(trial, rs + [R])
                if found:
                    return found
        return None

    for s in starts:
        found = extend([s], [frozenset()])
        if found:
            return ShellingCertificate(tuple(found[0]), tuple(found[1]), adj.palette, G)
    return None

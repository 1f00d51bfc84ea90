"""Binary-word graphs and the Buchsbaum posets X(k, d) built from them.

Words are strings over ``0``/``1`` starting with ``1``; a block is a maximal
constant run.  Positions are 1-based throughout, matching edge colors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .complex import CellComplex, ConsistencyError, build_from_graph, disjoint_union, glue_facets, simplex
from .graph import ColoredMultigraph

APEX = "alpha"


@dataclass(frozen=True)
class BlockData:
    blocks: tuple[str, ...]
    block_of: tuple[int, ...]       # block_of[j - 1] = index of the block holding position j
    block_start: frozenset[int]     # positions i > 1 where a new block begins
    block_end: frozenset[int]       # positions i < d where a block ends

    def b(self, j: int) -> int:
        return self.block_of[j - 1]


def block_data(w: str) -> BlockData:
    if not w or w[0] != "1" or set(w) - {"0", "1"}:
        raise ValueError(f"not a binary word starting with 1: {w!r}")
    blocks, block_of = [], []
    for ch in w:
        if blocks and blocks[-1][0] == ch:
            blocks[-1] += ch
        else:
            blocks.append(ch)
        block_of.append(len(blocks))
    d = len(w)
    start = frozenset(i for i in range(2, d + 1) if w[i - 1] != w[i - 2])
    end = frozenset(i for i in range(1, d) if w[i - 1] != w[i])
    return BlockData(tuple(blocks), tuple(block_of), start, end)


def words(d: int, k: int) -> list[str]:
    """Words of length ``d`` with first letter 1 and exactly ``k + 1`` blocks, sorted."""
    if d < 1 or not 0 <= k <= d - 1:
        return []
    out = []
    # A word is fixed by the positions where a new block starts.
    for cuts in combinations(range(2, d + 1), k):
        bits, bit, prev = [], 1, 1
        for c in list(cuts) + [d + 1]:
            bits.extend([str(bit)] * (c - prev))
            bit, prev = 1 - bit, c
        out.append("".join(bits))
    return sorted(out)


def singleton_positions(w: str) -> list[int]:
    bd = block_data(w)
    return [j for j in range(1, len(w) + 1) if len(bd.blocks[bd.b(j) - 1]) == 1]


def build_g_prime(k: int, d: int) -> ColoredMultigraph:
    """Words of W_d(k), joined by an edge colored ``j`` when they differ only at ``j``."""
    if not 1 <= k <= d - 1:
        raise ValueError(f"need 1 <= k <= d-1, got k={k}, d={d}")
    ws = words(d, k)
    edges = []
    for a, b in combinations(ws, 2):
        diff = [j for j in range(1, d + 1) if a[j - 1] != b[j - 1]]
        if len(diff) == 1:
            edges.append((a, b, diff[0]))
    return ColoredMultigraph(d, ws, edges)


def build_g(k: int, d: int) -> ColoredMultigraph:
    """G'(k, d) plus the apex, joined to each word once per singleton block."""
    gp = build_g_prime(k, d)
    apex_edges = [(w, APEX, j) for w in gp.vertices for j in singleton_positions(w)]
    return ColoredMultigraph(d, (APEX,) + gp.vertices, apex_edges + list(gp.edges))


def parallel_graph(d: int) -> ColoredMultigraph:
    """Two vertices joined by ``d`` parallel edges colored ``1..d``."""
    w = words(d, d - 1)[0]
    return ColoredMultigraph(d, (APEX, w), [(w, APEX, j) for j in range(1, d + 1)])


def xkd(k: int, d: int) -> CellComplex:
    """The Buchsbaum poset X(k, d): reduced homology only in degree ``k``, of rank one.

    ``k = 0`` is two disjoint simplices, ``k = d - 1`` two simplices glued
    along their boundaries; the latter is G(d-1, d), whose only word is the
    alternating one.
    """
    if d < 2 or not 0 <= k <= d - 1:
        raise ValueError(f"need d >= 2 and 0 <= k <= d-1, got k={k}, d={d}")
    if k == 0:
        return disjoint_union(simplex(d, APEX), simplex(d, "1" * d))
    if k == d - 1:
        return build_from_graph(parallel_graph(d))
    return build_from_graph(build_g(k, d))


@dataclass(frozen=True)
class LinkOrderKey:
    """Block endpoints of ``w`` on either side of the distinguished color ``c``.

    ``before`` holds block ends left of ``c``, ``after`` holds block starts
    right of ``c``; together they are the restriction set of ``w`` in the
    link shelling.
    """

    word: str
    c: int
    before: tuple[int, ...]
    after: tuple[int, ...]

    @property
    def restriction(self) -> frozenset[int]:
        return frozenset(self.before) | frozenset(self.after)

    def sort_key(self):
        return (len(self.before), self.before, tuple(-x for x in reversed(self.after)))


def link_order_key(w: str, c: int, k: int | None = None) -> LinkOrderKey:
    bd = block_data(w)
    before = tuple(sorted(i for i in bd.block_end if i < c))
    after = tuple(sorted(i for i in bd.block_start if i > c))
    if k is not None:
        j = bd.b(c)
        if len(before) != j - 1 or len(after) != k - j + 1:
            raise ConsistencyError(f"endpoint counts off for {w} at color {c}")
    return LinkOrderKey(w, c, before, after)


def link_shelling_order(k: int, d: int, c: int) -> list[str]:
    """Apex first, then words by (#ends before c, ends before c, starts after c from the top)."""
    if not 1 <= k <= d - 1 or not 1 <= c <= d:
        raise ValueError(f"need 1 <= k <= d-1 and 1 <= c <= d, got k={k}, d={d}, c={c}")
    keys = [link_order_key(w, c, k) for w in words(d, k)]
    keys.sort(key=LinkOrderKey.sort_key)
    return [APEX] + [key.word for key in keys]


def expected_restrictions(k: int, d: int, c: int) -> list[frozenset[int]]:
    order = link_shelling_order(k, d, c)
    return [frozenset()] + [link_order_key(w, c).restriction for w in order[1:]]


class OutOfScope(NotImplementedError):
    pass


def minimal_h_prime(betti, d: int) -> tuple[int, ...]:
    """The smallest h'-vector allowed for the given reduced Betti numbers."""
    return (1,) + tuple(comb(d, j) * betti[j] for j in range(1, d)) + (betti[d],)


def synthesize(betti, d: int, h_prime=None, verify: bool = True) -> CellComplex:
    """A Buchsbaum complex with the given reduced Betti numbers and minimal h'.

    ``betti`` lists the reduced Betti numbers in degrees ``-1..d-1``.  Copies of
    X(k, d), one per unit of homology in degree ``k``, are chained by gluing
    each new copy's first facet onto the last facet built so far.  An
    ``h_prime`` target is accepted only when it equals the minimal one.
    """
    betti = tuple(int(b) for b in betti)
    if d < 2:
        raise ValueError("rank must be at least 2")
    if len(betti) != d + 1:
        raise ValueError(f"expected {d + 1} Betti numbers (degrees -1..{d - 1}), got {len(betti)}")
    if betti[0] != 0 or any(b < 0 for b in betti):
        raise ValueError(f"Betti numbers must be nonnegative with b_-1 = 0, got {betti}")
    floor = minimal_h_prime(betti, d)
    if h_prime is not None:
        h_prime = tuple(int(x) for x in h_prime)
        if len(h_prime) != d + 1:
            raise ValueError(f"expected {d + 1} h' entries, got {len(h_prime)}")
        if h_prime[0] != 1 or h_prime[d] != betti[d] or any(h_prime[j] < floor[j] for j in range(1, d)):
            raise ValueError(f"h' = {h_prime} violates the lower bound {floor} for these Betti numbers")
        if h_prime != floor:
            raise OutOfScope("h' above the binomial lower bound needs a facet-adding construction "
                             "that this package does not implement")
    summands = [k for k in range(d) for _ in range(betti[k + 1])]
    if not summands:
        Q = simplex(d)
    else:
        Q = xkd(summands[0], d).renamed("s0.")
        for n, k in enumerate(summands[1:], start=1):
            X = xkd(k, d).renamed(f"s{n}.")
            Q = glue_facets(Q, Q.facets[-1], X, X.facets[0])
    if verify:
        from .homology import reduced_betti
        from .invariants import f_vector, h_from_f, h_prime as hp_of

        got_b = reduced_betti(Q)
        got_hp = hp_of(h_from_f(f_vector(Q)), got_b)
        if tuple(got_b) != betti or tuple(got_hp) != floor:
            raise ConsistencyError(f"synthesized complex has b={tuple(got_b)}, h'={tuple(got_hp)}")
    return Q

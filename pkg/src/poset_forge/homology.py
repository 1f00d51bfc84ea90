"""Reduced homology over Q and prime fields.

The working engine is the cellular chain complex of the face classes: a face
with colors ``c_1 < ... < c_r`` has boundary ``sum (-1)**(t-1) * (face minus c_t)``.
The order complex (chains of nonzero faces, i.e. the barycentric subdivision)
gives an independent second route used as an oracle on small inputs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import isprime

from .complex import CellComplex, Face, link, require_valid
from .invariants import BettiVector

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """``p == 0`` means the rationals, otherwise the prime field of order ``p``."""

    p: int = 0

    def __post_init__(self):
        if self.p and not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field {text!r}; use q, f2 or f<p>")

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"


Q = FieldSpec(0)
F2 = FieldSpec(2)


@dataclass
class SparseMatrix:
    """Column-major sparse integer matrix; ``cols[j]`` maps row -> entry."""

    nrows: int
    ncols: int
    cols: list[dict[int, int]]

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{i: int(rows[i][j]) for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def triplets(self):
        for j, col in enumerate(self.cols):
            for i in sorted(col):
                yield i, j, col[i]

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = []
        for col in other.cols:
            acc: dict[int, int] = {}
            for k, v in col.items():
                for i, w in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            cols.append({i: v for i, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def is_zero(self) -> bool:
        return not any(self.cols)


def rank(M, field: FieldSpec = Q) -> int:
    """Exact rank by column reduction with deterministic pivots.

    Each column is reduced against earlier pivot columns keyed by their first
    nonzero row.  Over Q the combination is fraction-free on integers, with
    each column divided by its content to keep entries small.
    """
    if not isinstance(M, SparseMatrix):
        M = SparseMatrix.from_dense(M)
    p = field.p
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for col in M.cols:
        col = {i: v % p for i, v in col.items() if v % p} if p else dict(col)
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = col
                r += 1
                break
            if p:
                factor = col[lead] * pow(piv[lead], -1, p) % p
                for i, v in piv.items():
                    x = (col.get(i, 0) - factor * v) % p
                    if x:
                        col[i] = x
                    else:
                        col.pop(i, None)
            else:
                a, b = piv[lead], col[lead]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {i: a * v for i, v in col.items()}
                for i, v in piv.items():
                    x = new.get(i, 0) - b * v
                    if x:
                        new[i] = x
                    else:
                        new.pop(i, None)
                if new:
                    c = 0
                    for v in new.values():
                        c = gcd(c, v)
                    if c > 1:
                        new = {i: v // c for i, v in new.items()}
                col = new
    return r


@dataclass
class ChainComplex:
    """Augmented cellular chain complex.

    ``groups[r + 1]`` lists the faces of rank ``r + 1`` spanning ``C_r``
    (so ``groups[0]`` is the bottom face); ``boundaries[r]`` is the matrix
    of ``C_r -> C_{r-1}`` for ``r = 0..d-1``.
    """

    groups: list[list[Face]]
    boundaries: list[SparseMatrix]

    def check(self) -> bool:
        return all((self.boundaries[r - 1] @ self.boundaries[r]).is_zero()
                   for r in range(1, len(self.boundaries)))


def boundary_matrices(P: CellComplex) -> ChainComplex:
    require_valid(P)
    groups = [P.faces(r) for r in range(P.d + 1)]
    index = [{fc: i for i, fc in enumerate(g)} for g in groups]
    boundaries = []
    for r in range(1, P.d + 1):
        cols = []
        for fc in groups[r]:
            col = {}
            t = 0
            for b in range(P.d):
                if fc.mask >> b & 1:
                    below = P.face(fc.facet, mask=fc.mask & ~(1 << b))
                    col[index[r - 1][below]] = -1 if t % 2 else 1
                    t += 1
            cols.append(col)
        boundaries.append(SparseMatrix(len(groups[r - 1]), len(groups[r]), cols))
    cc = ChainComplex(groups, boundaries)
    if not cc.check():
        raise AssertionError("boundary of boundary is nonzero")
    return cc


def _betti_from_boundaries(dims: list[int], boundaries: list[SparseMatrix], field: FieldSpec) -> list[int]:
    # dims[i] = dim C_{i-1}; boundaries[r] : C_r -> C_{r-1}
    ranks = [rank(B, field) for B in boundaries] + [0]
    out = []
    for i in range(len(dims)):
        r_out = ranks[i - 1] if i >= 1 else 0
        out.append(dims[i] - r_out - ranks[i])
    return out


def reduced_betti(P: CellComplex, field: FieldSpec = Q) -> BettiVector:
    cc = boundary_matrices(P)
    return BettiVector(_betti_from_boundaries([len(g) for g in cc.groups], cc.boundaries, field),
                       str(field))


def order_complex_budget() -> int:
    return int(os.environ.get("POSET_FORGE_BUDGET", DEFAULT_BUDGET))


def order_complex(P: CellComplex, budget: int | None = None) -> list[list[tuple[Face, ...]]]:
    """Chains of nonzero faces, grouped by length (index 0 holds the empty chain)."""
    require_valid(P)
    budget = order_complex_budget() if budget is None else budget

    def below(fc: Face) -> list[Face]:
        out = []
        sub = (fc.mask - 1) & fc.mask
        while sub:
            out.append(P.face(fc.facet, mask=sub))
            sub = (sub - 1) & fc.mask
        return out

    @lru_cache(maxsize=None)
    def count(fc: Face) -> int:
        return 1 + sum(count(x) for x in below(fc))

    nonzero = [fc for fc in P.all_faces() if fc.mask]
    total = 1 + sum(count(fc) for fc in nonzero)
    if total > budget:
        raise BudgetExceeded(f"order complex has {total} faces, budget is {budget}")

    @lru_cache(maxsize=None)
    def ending_at(fc: Face) -> tuple[tuple[Face, ...], ...]:
        out = [(fc,)]
        for x in below(fc):
            out.extend(ch + (fc,) for ch in ending_at(x))
        return tuple(out)

    by_len: list[list[tuple[Face, ...]]] = [[()]] + [[] for _ in range(P.d)]
    for fc in nonzero:
        for ch in ending_at(fc):
            by_len[len(ch)].append(ch)
    for lst in by_len:
        lst.sort()
    return by_len


def betti_via_order_complex(P: CellComplex, field: FieldSpec = Q, budget: int | None = None) -> BettiVector:
    """Reduced Betti numbers of the barycentric subdivision, by plain simplicial homology."""
    simplices = order_complex(P, budget)
    index = [{s: i for i, s in enumerate(lst)} for lst in simplices]
    boundaries = []
    for n in range(1, len(simplices)):
        cols = []
        for s in simplices[n]:
            cols.append({index[n - 1][s[:i] + s[i + 1:]]: (-1) ** i for i in range(n)})
        boundaries.append(SparseMatrix(len(simplices[n - 1]), len(simplices[n]), cols))
    return BettiVector(_betti_from_boundaries([len(s) for s in simplices], boundaries, field), str(field))


def cm_obstruction(P: CellComplex, field: FieldSpec = Q):
    """First ``(face, degree)`` whose link has homology below its top dimension, else None."""
    for sigma in P.all_faces():
        top = P.d - sigma.rank - 1
        if top < 0:
            continue
        betti = reduced_betti(link(P, sigma), field)
        for i in range(-1, top):
            if betti[i + 1]:
                return sigma, i
    return None


def is_cohen_macaulay(P: CellComplex, field: FieldSpec = Q) -> bool:
    return cm_obstruction(P, field) is None


def is_buchsbaum(P: CellComplex, field: FieldSpec = Q) -> bool:
    if not P.is_pure():
        return False
    return all(is_cohen_macaulay(link(P, v), field) for v in P.faces(1))

"""Face numbers and the identities relating them.

Index conventions, fixed throughout the package:

* ``FVector[i]`` is ``f_{i-1}``, so ``FVector[0] == 1`` is the empty face.
* ``HVector[j]`` and ``HPrimeVector[j]`` are ``h_j`` and ``h'_j``.
* ``BettiVector[i]`` is the reduced Betti number in degree ``i - 1``.

All arithmetic is on Python integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb

from .complex import CellComplex, link


class _IntVector(tuple):
    def __new__(cls, entries):
        return super().__new__(cls, (int(x) for x in entries))

    @property
    def d(self) -> int:
        return len(self) - 1

    def __repr__(self) -> str:
        return f"{type(self).__name__}{tuple(self)}"


class FVector(_IntVector):
    def f(self, i: int) -> int:
        """The number of ``i``-dimensional faces."""
        return self[i + 1]


class HVector(_IntVector):
    pass


class HPrimeVector(_IntVector):
    pass


class BettiVector(_IntVector):
    """Reduced Betti numbers ``b_{-1}, ..., b_{d-1}`` over ``field``."""

    def __new__(cls, entries, field: str = "Q"):
        obj = super().__new__(cls, entries)
        obj.field = field
        return obj

    def beta(self, i: int) -> int:
        return self[i + 1]

    def __getnewargs__(self):
        return (tuple(self), self.field)


def f_vector(P: CellComplex) -> FVector:
    return FVector(len(P.faces(r)) for r in range(P.d + 1))


def reduced_euler(f) -> int:
    """Reduced Euler characteristic, the alternating sum starting at ``-f_{-1}``."""
    return sum(fi if i % 2 else -fi for i, fi in enumerate(f))


def h_from_f(f) -> HVector:
    f = tuple(f)
    d = len(f) - 1
    if d < 0 or f[0] != 1:
        raise ValueError(f"f-vector must start with f_-1 = 1, got {f}")
    h = HVector(sum((-1) ** (j - i) * comb(d - i, d - j) * f[i] for i in range(j + 1))
                for j in range(d + 1))
    assert h[d] == (-1) ** (d - 1) * reduced_euler(f)
    return h


def f_from_h(h) -> FVector:
    h = tuple(h)
    d = len(h) - 1
    if d < 0 or h[0] != 1:
        raise ValueError(f"h-vector must start with h_0 = 1, got {h}")
    return FVector(sum(comb(d - j, d - i) * h[j] for j in range(i + 1)) for i in range(d + 1))


def h_prime(h, betti) -> HPrimeVector:
    h, betti = tuple(h), tuple(betti)
    d = len(h) - 1
    if len(betti) != d + 1:
        raise ValueError(f"Betti vector has {len(betti)} entries, expected {d + 1}")
    hp = HPrimeVector(h[j] + comb(d, j) * sum((-1) ** (j - i - 1) * betti[i] for i in range(j))
                      for j in range(d + 1))
    assert hp[d] == betti[d], "top h' must equal the top reduced Betti number"
    return hp


@dataclass
class ShortSimplicialReport:
    link_sums: list[int]
    residuals: list[int]

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals)


def short_simplicial_check(P: CellComplex) -> ShortSimplicialReport:
    """Compare vertex-link h-numbers against ``i h_i + (d-i+1) h_{i-1}`` for ``i = 1..d``."""
    d = P.d
    h = h_from_f(f_vector(P))
    link_h = [h_from_f(f_vector(link(P, v))) for v in P.faces(1)]
    sums, residuals = [], []
    for i in range(1, d + 1):
        s = sum(lh[i - 1] for lh in link_h)
        sums.append(s)
        residuals.append(s - (i * h[i] + (d - i + 1) * h[i - 1]))
    return ShortSimplicialReport(sums, residuals)


@dataclass
class NSReport:
    slacks: dict[int, int]
    bottom_ok: bool
    top_ok: bool

    @property
    def failures(self) -> list[int]:
        return [j for j, s in self.slacks.items() if s < 0]

    @property
    def ok(self) -> bool:
        return not self.failures and self.bottom_ok and self.top_ok


def ns_check(hp, betti) -> NSReport:
    """Slack ``h'_j - C(d,j) b_{j-1}`` for ``j = 1..d-1`` plus the two boundary equalities."""
    hp, betti = tuple(hp), tuple(betti)
    d = len(hp) - 1
    slacks = {j: hp[j] - comb(d, j) * betti[j] for j in range(1, d)}
    return NSReport(slacks, hp[0] == 1, hp[d] == betti[d])


@dataclass
class RidgeProfile:
    A: int
    B: int
    max_multiplicity: int
    histogram: dict[int, int] = field(default_factory=dict)
    a_identity: bool | None = None

    @property
    def is_pseudomanifold_like(self) -> bool:
        return self.max_multiplicity <= 2


def ridge_profile(P: CellComplex) -> RidgeProfile:
    """How many facets contain each ridge.

    A facet contains exactly one ridge per color, so the multiplicities sum
    to ``d * f_{d-1}``.  When no ridge lies in three or more facets the count
    of free ridges is also pinned down by the f-vector.
    """
    d = P.d
    if d < 1:
        raise ValueError("ridges need rank at least 1")
    full = (1 << d) - 1
    mult = Counter(P.face(g, mask=full & ~(1 << b)) for g in range(P.n_facets) for b in range(d))
    hist = dict(sorted(Counter(mult.values()).items()))
    assert sum(m * c for m, c in hist.items()) == d * P.n_facets
    A, B = hist.get(1, 0), hist.get(2, 0)
    top = max(hist) if hist else 0
    f = f_vector(P)
    ident = A == 2 * f.f(d - 2) - d * f.f(d - 1) if top <= 2 else None
    return RidgeProfile(A, B, top, hist, ident)


@dataclass
class BinomialIdentityReport:
    d: int
    k: int
    first: int
    first_expected: int
    second: int | None
    second_expected: int | None

    @property
    def ok(self) -> bool:
        return self.first == self.first_expected and self.second == self.second_expected


def binomial_identities(d: int, k: int) -> BinomialIdentityReport:
    if not 0 <= k <= d - 1:
        raise ValueError(f"need 0 <= k <= d-1, got k={k}, d={d}")
    first = sum((-1) ** (j - k + 1) * comb(d, j) for j in range(k + 1, d + 1))
    second = second_expected = None
    if k < d - 1:
        second = sum((-1) ** (j - k + 1) * (d - j) * comb(d, j) for j in range(k + 1, d))
        second_expected = d * comb(d - 2, k)
    return BinomialIdentityReport(d, k, first, comb(d - 1, k), second, second_expected)

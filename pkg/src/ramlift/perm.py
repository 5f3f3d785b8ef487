"""Permutations, exact finitely supported distributions and their factorizations.

Group elements only need ``*`` (the group product), ``inverse()``,
equality and hashing.  Permutations compose left to right:
``(s * t)(i) = t(s(i))``, which makes ``s -> P_s`` with ``P[i][s(i)] = 1``
a homomorphism.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Hashable, Iterable, Sequence

DEFAULT_SR_CAP = 8


class CapExceeded(ValueError):
    """An exhaustive enumeration would exceed its configured size cap."""


class NotGenerating(ValueError):
    pass


def env_cap(default: int) -> int:
    raw = os.environ.get("RAMLIFT_CAP")
    return int(raw) if raw else default


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {list(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, r: int) -> Permutation:
        return cls(tuple(range(r)))

    @classmethod
    def transposition(cls, r: int, a: int, b: int) -> Permutation:
        imgs = list(range(r))
        imgs[a], imgs[b] = b, a
        return cls(tuple(imgs))

    @classmethod
    def cycle(cls, r: int, *points: int) -> Permutation:
        imgs = list(range(r))
        for k, p in enumerate(points):
            imgs[p] = points[(k + 1) % len(points)]
        return cls(tuple(imgs))

    @property
    def r(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.r != self.r:
            raise ValueError("permutations of different degree")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.r
        for i, s in enumerate(self.images):
            inv[s] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == s for i, s in enumerate(self.images))

    def sign(self) -> int:
        seen = [False] * self.r
        parity = 0
        for i in range(self.r):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = self.images[j]
                    length += 1
                parity += length - 1
        return -1 if parity % 2 else 1

    def matrix(self) -> list[list[int]]:
        r = self.r
        m = [[0] * r for _ in range(r)]
        for i, s in enumerate(self.images):
            m[i][s] = 1
        return m

    def to_json(self) -> list[int]:
        return list(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True, order=True)
class ZMod:
    """Residue k mod m under addition."""

    k: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "k", self.k % self.m)

    def __mul__(self, other: ZMod) -> ZMod:
        if not isinstance(other, ZMod):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("residues with different moduli")
        return ZMod(self.k + other.k, self.m)

    def inverse(self) -> ZMod:
        return ZMod(-self.k, self.m)

    def is_identity(self) -> bool:
        return self.k == 0

    def to_json(self) -> int:
        return self.k

    def __repr__(self):
        return f"ZMod({self.k}, {self.m})"


def closure(generators: Iterable[Hashable], identity: Hashable, cap: int | None = None) -> list:
    """All products of the generators, BFS order starting at the identity."""
    gens = list(generators)
    seen = {identity: None}
    order = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen[y] = None
                    order.append(y)
                    nxt.append(y)
                    if cap is not None and len(order) > cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
        frontier = nxt
    return order


@dataclass(frozen=True)
class FactorDistribution:
    support: tuple[tuple[Hashable, Fraction], ...]

    def __post_init__(self):
        sup = tuple((g, Fraction(w)) for g, w in self.support)
        if not sup:
            raise ValueError("empty support")
        if any(w <= 0 for _, w in sup):
            raise ValueError("weights must be positive")
        if sum(w for _, w in sup) != 1:
            raise ValueError("weights must sum to exactly 1")
        if len({g for g, _ in sup}) != len(sup):
            raise ValueError("support elements must be distinct")
        object.__setattr__(self, "support", sup)

    @classmethod
    def merged(cls, pairs: Iterable[tuple[Hashable, Fraction]]) -> FactorDistribution:
        """Build from pairs, adding weights of repeated elements (first position kept)."""
        acc: dict = {}
        for g, w in pairs:
            acc[g] = acc.get(g, Fraction(0)) + Fraction(w)
        return cls(tuple((g, w) for g, w in acc.items() if w))

    @classmethod
    def point(cls, g: Hashable) -> FactorDistribution:
        return cls(((g, Fraction(1)),))

    @classmethod
    def uniform(cls, elements: Sequence[Hashable]) -> FactorDistribution:
        w = Fraction(1, len(elements))
        return cls(tuple((g, w) for g in elements))

    def __len__(self):
        return len(self.support)

    @property
    def elements(self) -> list:
        return [g for g, _ in self.support]

    def as_dict(self) -> dict:
        return dict(self.support)

    def convolve(self, other: FactorDistribution) -> FactorDistribution:
        """Distribution of X * Y for independent X ~ self, Y ~ other."""
        return FactorDistribution.merged((a * b, wa * wb) for a, wa in self.support for b, wb in other.support)

    def tv_distance(self, other: FactorDistribution) -> Fraction:
        p, q = self.as_dict(), other.as_dict()
        return sum((abs(p.get(g, 0) - q.get(g, 0)) for g in set(p) | set(q)), Fraction(0)) / 2

    def same_law(self, other: FactorDistribution) -> bool:
        return self.as_dict() == other.as_dict()

    def to_json(self) -> dict:
        return {"support": [[_element_json(g), f"{w.numerator}/{w.denominator}"] for g, w in self.support]}


def _element_json(g):
    return g.to_json() if hasattr(g, "to_json") else g


def convolution(factors: Sequence[FactorDistribution]) -> FactorDistribution:
    if not factors:
        raise ValueError("need at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = out.convolve(f)
    return out


@dataclass(frozen=True)
class EdgeFactorization:
    """Independent factors whose ordered product has the target law.

    ``tv_slack`` is the exact total variation distance of the product from
    the uniform law (0 for exact factorizations).
    """

    factors: tuple[FactorDistribution, ...]
    tv_slack: Fraction = Fraction(0)
    label: str = ""
    group_order: int | None = field(default=None, compare=False)

    def product(self) -> FactorDistribution:
        return convolution(self.factors)

    @property
    def exact(self) -> bool:
        return self.tv_slack == 0

    def to_json(self) -> list[dict]:
        return [f.to_json() for f in self.factors]


def uniform_sr(r: int, cap: int = DEFAULT_SR_CAP) -> FactorDistribution:
    if r < 1:
        raise ValueError("r must be at least 1")
    if r > cap:
        raise CapExceeded(f"S_{r} has {factorial(r)} elements; enumeration cap is r <= {cap}")
    return FactorDistribution.uniform([Permutation(p) for p in permutations(range(r))])


def swap_factorization(r: int) -> EdgeFactorization:
    """C(r,2) two-point factors whose product is uniform on S_r.

    Stage s = 2..r appends the factors Y_1..Y_{s-1}, where Y_j is the swap
    (j-1, s-1) with probability 1/(s-j+1) and the identity otherwise.
    """
    if r < 2:
        raise ValueError("swap factorization needs r >= 2")
    ident = Permutation.identity(r)
    factors = []
    for s in range(2, r + 1):
        for j in range(1, s):
            p = Fraction(1, s - j + 1)
            swap = Permutation.transposition(r, j - 1, s - 1)
            factors.append(FactorDistribution(((ident, 1 - p), (swap, p))))
    return EdgeFactorization(tuple(factors), label=f"swap:{r}", group_order=factorial(r))


def xyz_s3() -> EdgeFactorization:
    ident = Permutation.identity(3)
    s01 = Permutation.transposition(3, 0, 1)
    s02 = Permutation.transposition(3, 0, 2)
    half, third = Fraction(1, 2), Fraction(1, 3)
    x = FactorDistribution(((ident, half), (s01, half)))
    y = FactorDistribution(((ident, third), (s02, 1 - third)))
    z = FactorDistribution(((ident, half), (s01, half)))
    return EdgeFactorization((x, y, z), label="xyz", group_order=6)


def cyclic_uniform(m: int) -> EdgeFactorization:
    if m < 2:
        raise ValueError("m must be at least 2")
    dist = FactorDistribution.uniform([ZMod(k, m) for k in range(m)])
    return EdgeFactorization((dist,), label=f"cyclic:{m}", group_order=m)


def lazy_walk_factorization(
    generators: Sequence[Hashable],
    steps: int,
    identity: Hashable,
    group: Sequence[Hashable] | None = None,
    cap: int = 5040,
) -> EdgeFactorization:
    """Lazy random walk factors {g: 1/3, g^-1: 1/3, id: 1/3}, cycling the generators.

    If ``group`` is given, the generators must generate all of it.
    """
    if not generators:
        raise ValueError("need at least one generator")
    if steps < 1:
        raise ValueError("steps must be positive")
    generated = closure(list(generators) + [g.inverse() for g in generators], identity, cap=cap)
    if group is not None and len(generated) != len(set(group)):
        raise NotGenerating(f"generators give a subgroup of order {len(generated)}, not {len(set(group))}")
    third = Fraction(1, 3)
    factors = []
    for i in range(steps):
        g = generators[i % len(generators)]
        factors.append(FactorDistribution.merged([(g, third), (g.inverse(), third), (identity, third)]))
    target = FactorDistribution.uniform(generated)
    tv = convolution(factors).tv_distance(target)
    return EdgeFactorization(tuple(factors), tv_slack=tv, label="lazy-walk", group_order=len(generated))

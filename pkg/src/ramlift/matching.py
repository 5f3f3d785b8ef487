"""Matching polynomials and the d-matching polynomial.

Loops never belong to an ordinary matching.  In the multi-matching weight
a loop at v counts twice toward m(v) and appears twice in v's multinomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterator

from .cover import build_covering
from .graph import OrientedMultigraph
from .perm import CapExceeded, env_cap, uniform_sr
from .poly import RatPoly

ORACLE_CAP = 10**6


def matching_counts(g: OrientedMultigraph) -> list[int]:
    """m_i = number of i-edge matchings, by vertex expansion with memoization.

    Removing the lowest live vertex v: matchings avoiding v, plus, for each
    non-loop edge v--w, matchings of the graph without v and w.
    """
    mult: dict[tuple[int, int], int] = {}
    for h, t in g.edges:
        if h != t:
            key = (min(h, t), max(h, t))
            mult[key] = mult.get(key, 0) + 1
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for (u, w), k in mult.items():
        nbrs[u].append((w, k))
        nbrs[w].append((u, k))

    @lru_cache(maxsize=None)
    def counts(alive: int) -> tuple[int, ...]:
        if alive == 0:
            return (1,)
        v = (alive & -alive).bit_length() - 1
        rest = alive & ~(1 << v)
        out = list(counts(rest))
        for w, k in nbrs[v]:
            if rest >> w & 1:
                sub = counts(rest & ~(1 << w))
                if len(out) < len(sub) + 1:
                    out.extend([0] * (len(sub) + 1 - len(out)))
                for i, c in enumerate(sub):
                    out[i + 1] += k * c
        return tuple(out)

    return list(counts((1 << g.n) - 1))


def matching_poly(g: OrientedMultigraph) -> RatPoly:
    coeffs = [0] * (g.n + 1)
    for i, m in enumerate(matching_counts(g)):
        coeffs[g.n - 2 * i] = (-1) ** i * m
    return RatPoly(coeffs)


def vertex_load(g: OrientedMultigraph, m: tuple[int, ...]) -> list[int]:
    load = [0] * g.n
    for (h, t), k in zip(g.edges, m):
        load[h] += k
        load[t] += k
    return load


def enumerate_multimatchings(g: OrientedMultigraph, d: int) -> Iterator[tuple[int, ...]]:
    """All edge multiplicity vectors with every vertex covered at most d times."""
    if d < 1:
        raise ValueError("d must be at least 1")
    budget = [d] * g.n
    m = [0] * g.num_edges

    def rec(j: int):
        if j == g.num_edges:
            yield tuple(m)
            return
        h, t = g.edges[j]
        cost = 2 if h == t else 1
        top = budget[h] // 2 if h == t else min(budget[h], budget[t])
        for k in range(top + 1):
            m[j] = k
            budget[h] -= cost * k if h == t else k
            if h != t:
                budget[t] -= k
            yield from rec(j + 1)
            budget[h] += cost * k if h == t else k
            if h != t:
                budget[t] += k
        m[j] = 0

    yield from rec(0)


def multinomial(n: int, parts: list[int]) -> int:
    rest = n - sum(parts)
    if rest < 0:
        return 0
    return factorial(n) // (prod(factorial(p) for p in parts) * factorial(rest))


def weight(g: OrientedMultigraph, m: tuple[int, ...], d: int) -> Fraction:
    """Average number of matchings of a random d-covering projecting onto m."""
    at_vertex: list[list[int]] = [[] for _ in range(g.n)]
    for (h, t), k in zip(g.edges, m):
        at_vertex[h].append(k)
        at_vertex[t].append(k)
    num = prod(multinomial(d, parts) for parts in at_vertex)
    den = prod(comb(d, k) for k in m)
    return Fraction(num, den)


def d_matching_poly(g: OrientedMultigraph, d: int) -> RatPoly:
    coeffs = [Fraction(0)] * (g.n * d + 1)
    for m in enumerate_multimatchings(g, d):
        size = sum(m)
        coeffs[g.n * d - 2 * size] += (-1) ** size * weight(g, m, d)
    return RatPoly(coeffs)


def d_matching_poly_oracle(g: OrientedMultigraph, d: int, cap: int | None = None) -> RatPoly:
    """Exact average of matching polynomials over all d-coverings of g."""
    cap = env_cap(ORACLE_CAP) if cap is None else cap
    if d == 1 or g.num_edges == 0:
        return matching_poly(build_covering(g, [uniform_sr(1).elements[0]] * g.num_edges)) if g.num_edges else _power_of_x(g.n * d)
    count = factorial(d) ** g.num_edges
    if count > cap:
        raise CapExceeded(f"{count} coverings exceed the oracle cap {cap}")
    perms = uniform_sr(d).elements
    total = [0] * (g.n * d + 1)
    for sigma in product(perms, repeat=g.num_edges):
        for i, c in enumerate(matching_poly(build_covering(g, sigma)).coeffs):
            total[i] += int(c)
    return RatPoly([Fraction(c, count) for c in total])


def _power_of_x(k: int) -> RatPoly:
    return RatPoly([0] * k + [1])

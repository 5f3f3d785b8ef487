"""Coverings, twisted adjacency matrices and their characteristic polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence

import numpy as np

from . import ring
from .graph import OrientedMultigraph
from .perm import Permutation
from .poly import RatPoly, div_exact
from .repgroup import Representation, build_std
from .ring import Cyclo

FLOAT_TOL = 1e-9


class ImaginaryResidue(ArithmeticError):
    """A characteristic polynomial coefficient did not reduce to a rational."""


class InexactField(ValueError):
    """Exact char polys are only available over Q(zeta_m), m in {1, 2, 3, 4, 6}."""


@dataclass(frozen=True)
class GroupLabeling:
    """Group element per positively oriented edge; -e carries the inverse."""

    graph: OrientedMultigraph
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.graph.num_edges:
            raise ValueError(f"labeling has {len(self.values)} values for {self.graph.num_edges} edges")

    def __getitem__(self, j: int):
        return self.values[j]

    def oriented(self, j: int, forward: bool = True):
        return self.values[j] if forward else self.values[j].inverse()

    def to_json(self) -> list:
        return [v.to_json() if hasattr(v, "to_json") else v for v in self.values]


@dataclass(frozen=True)
class TwistedAdjacency:
    """nd x nd block matrix; block (u, v) sums pi(label) over edges u -> v."""

    n: int
    dim: int
    entries: tuple[tuple[object, ...], ...]
    modulus: int = 1

    @property
    def size(self) -> int:
        return self.n * self.dim

    def to_complex(self) -> np.ndarray:
        return ring.to_complex_matrix(self.entries)


def build_covering(g: OrientedMultigraph, sigma: Sequence[Permutation]) -> OrientedMultigraph:
    """The r-covering with edges head_i -- tail_{sigma(i)}; vertex (v, i) is v*r + i."""
    if len(sigma) != g.num_edges:
        raise ValueError("one permutation per edge")
    if not sigma:
        raise ValueError("cannot infer r for an edgeless graph")
    r = sigma[0].r
    if any(s.r != r for s in sigma):
        raise ValueError("all permutations must have the same degree")
    edges = []
    for (h, t), s in zip(g.edges, sigma):
        for i in range(r):
            edges.append((h * r + i, t * r + s(i)))
    return OrientedMultigraph(g.n * r, tuple(edges))


def _add_block(a, u: int, v: int, block, d: int):
    for i in range(d):
        row = a[u * d + i]
        for j in range(d):
            x = block[i][j]
            if x:
                row[v * d + j] = row[v * d + j] + x


def twisted_adjacency(g: OrientedMultigraph, labeling: Sequence[Hashable], rep: Representation) -> TwistedAdjacency:
    """A loop at v adds both pi(label) and its inverse to block (v, v)."""
    values = labeling.values if isinstance(labeling, GroupLabeling) else tuple(labeling)
    if len(values) != g.num_edges:
        raise ValueError("labeling does not match the edge count")
    d = rep.dim
    a = ring.zeros(g.n * d)
    for (h, t), x in zip(g.edges, values):
        _add_block(a, h, t, rep.matrix(x), d)
        _add_block(a, t, h, rep.matrix(x.inverse()), d)
    return TwistedAdjacency(g.n, d, ring.freeze(a), rep.modulus)


def _to_rational(c: object) -> Fraction:
    if isinstance(c, Cyclo):
        if not c.is_rational():
            raise ImaginaryResidue(f"coefficient {c!r} is not rational")
        return c.to_rational()
    return Fraction(c)


def char_poly(a: TwistedAdjacency | Sequence[Sequence[object]], modulus: int | None = None) -> RatPoly:
    """Exact det(xI - A) via Berkowitz over the entry ring."""
    if isinstance(a, TwistedAdjacency):
        modulus = a.modulus if modulus is None else modulus
        a = a.entries
    if modulus is not None and modulus not in ring.EXACT_MODULI:
        raise InexactField(f"entries in Q(zeta_{modulus}); use char_poly_float")
    return RatPoly([_to_rational(c) for c in ring.berkowitz(a)])


def char_poly_float(a: TwistedAdjacency) -> np.ndarray:
    """Coefficients (lowest first) of det(xI - A) from a Hermitian eigensolve."""
    m = a.to_complex()
    if not np.allclose(m, m.conj().T, atol=FLOAT_TOL):
        raise ImaginaryResidue("matrix is not Hermitian")
    eig = np.linalg.eigvalsh(m)
    return np.poly(eig)[::-1].real


def spectrum(a: TwistedAdjacency) -> np.ndarray:
    """Sorted eigenvalues; a is assumed similar to a Hermitian matrix."""
    return np.sort(np.linalg.eigvals(a.to_complex()).real)


def adjacency_char_poly(g: OrientedMultigraph) -> RatPoly:
    return char_poly(g.adjacency())


def new_char_poly(g: OrientedMultigraph, sigma: Sequence[Permutation], check: bool = True) -> RatPoly:
    """Char poly of the new spectrum of the covering given by sigma.

    Computed as det(xI - A_H) / det(xI - A_G); with ``check`` it must agree
    with the char poly of the std twist.
    """
    r = sigma[0].r
    if r == 1:
        return RatPoly.const(1)
    h = build_covering(g, sigma)
    quotient = div_exact(adjacency_char_poly(h), adjacency_char_poly(g))
    if check:
        direct = char_poly(twisted_adjacency(g, sigma, build_std(r)))
        if direct != quotient:
            raise AssertionError("new spectrum via division disagrees with the std twist")
    return quotient

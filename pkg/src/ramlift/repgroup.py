"""Finite groups, their unitary representations, and the checks built on them.

Every representation carries two realizations of each matrix:

* ``matrix(g)``: exact entries (int, Fraction or Cyclo), used for
  characteristic polynomials and ranks.  For std(S_r) this is the integer
  basis e_i - e_{r-1}, which is conjugate to (not equal to) a unitary form.
* ``unitary(g)``: a complex numpy array that is unitary, used for
  characters and coefficient inner products.

Both are homomorphisms for the group product ``*`` of the elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable, Hashable, Sequence

import numpy as np

from . import ring
from .perm import CapExceeded, FactorDistribution, Permutation, ZMod, closure
from .ring import Cyclo

GROUP_CAP = 5040
CHAR_TOL = 1e-9


class NumericalDegeneracy(ArithmeticError):
    """A character inner product is not within tolerance of an integer."""


def unit(m: int, k: int) -> object:
    """zeta_m^k, as a plain int when it is +-1."""
    k %= m
    if k == 0:
        return 1
    if 2 * k == m:
        return -1
    return Cyclo.zeta(m, k)


@dataclass(frozen=True, order=True)
class Monomial:
    """Element of G(m,1,d): matrix with entry zeta_m^{phases[i]} at (i, perm(i))."""

    perm: Permutation
    phases: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(int(a) % self.m for a in self.phases))
        if len(self.phases) != self.perm.r:
            raise ValueError("one phase per row")

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        phases = tuple(a + other.phases[self.perm(i)] for i, a in enumerate(self.phases))
        return Monomial(self.perm * other.perm, phases, self.m)

    def inverse(self) -> Monomial:
        inv = self.perm.inverse()
        return Monomial(inv, tuple(-self.phases[inv(i)] for i in range(inv.r)), self.m)

    def matrix(self) -> list[list[object]]:
        d = self.perm.r
        out = [[0] * d for _ in range(d)]
        for i, a in enumerate(self.phases):
            out[i][self.perm(i)] = unit(self.m, a)
        return out

    def to_json(self) -> dict:
        return {"perm": self.perm.to_json(), "phases": list(self.phases)}


@dataclass(frozen=True)
class MatrixElement:
    """An invertible exact matrix under matrix multiplication."""

    entries: tuple[tuple[object, ...], ...]

    def __mul__(self, other: MatrixElement) -> MatrixElement:
        if not isinstance(other, MatrixElement):
            return NotImplemented
        return MatrixElement(ring.freeze(ring.matmul(self.entries, other.entries)))

    def inverse(self) -> MatrixElement:
        return MatrixElement(ring.freeze(ring.inverse_matrix(self.entries)))

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple
    identity: Hashable
    index: dict = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index.update({g: i for i, g in enumerate(self.elements)})
        if self.identity not in self.index:
            raise ValueError("identity missing from the element list")

    @classmethod
    def from_generators(cls, name: str, generators: Sequence, identity, cap: int = GROUP_CAP) -> FiniteGroup:
        return cls(name, tuple(closure(generators, identity, cap=cap)), identity)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index


def symmetric_group(r: int, cap: int = GROUP_CAP) -> FiniteGroup:
    if math.factorial(r) > cap:
        raise CapExceeded(f"|S_{r}| = {math.factorial(r)} exceeds cap {cap}")
    return FiniteGroup(f"S{r}", tuple(Permutation(p) for p in permutations(range(r))), Permutation.identity(r))


def cyclic_group(m: int) -> FiniteGroup:
    return FiniteGroup(f"Z{m}", tuple(ZMod(k, m) for k in range(m)), ZMod(0, m))


def g_m1d_group(m: int, d: int, cap: int = GROUP_CAP) -> FiniteGroup:
    order = math.factorial(d) * m**d
    if order > cap:
        raise CapExceeded(f"|G({m},1,{d})| = {order} exceeds cap {cap}")
    elems = tuple(
        Monomial(Permutation(p), a, m) for p in permutations(range(d)) for a in product(range(m), repeat=d)
    )
    return FiniteGroup(f"G({m},1,{d})", elems, Monomial(Permutation.identity(d), (0,) * d, m))


class Representation:
    """A d-dimensional representation of a finite group.

    ``modulus`` is the m with all exact entries in Q(zeta_m).
    """

    def __init__(
        self,
        name: str,
        group: FiniteGroup,
        dim: int,
        exact: Callable[[Hashable], Sequence[Sequence[object]]],
        modulus: int = 1,
        unitary: Callable[[Hashable], np.ndarray] | None = None,
    ):
        self.name = name
        self.group = group
        self.dim = dim
        self.modulus = modulus
        self._exact_fn = exact
        self._unitary_fn = unitary
        self._exact: dict = {}
        self._unitary: dict = {}

    def __repr__(self):
        return f"Representation({self.name}, dim={self.dim}, |G|={self.group.order})"

    def matrix(self, g) -> tuple[tuple[object, ...], ...]:
        m = self._exact.get(g)
        if m is None:
            m = ring.freeze(self._exact_fn(g))
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError(f"{self.name}: matrix of wrong size")
            self._exact[g] = m
        return m

    def unitary(self, g) -> np.ndarray:
        u = self._unitary.get(g)
        if u is None:
            u = self._unitary_fn(g) if self._unitary_fn else ring.to_complex_matrix(self.matrix(g))
            self._unitary[g] = u
        return u

    @property
    def exact_charpoly_field(self) -> bool:
        """Hermitian char polys over this field are rational."""
        return self.modulus in ring.EXACT_MODULI

    def character(self) -> np.ndarray:
        return np.array([np.trace(self.unitary(g)) for g in self.group.elements])

    def image(self) -> set:
        return {self.matrix(g) for g in self.group.elements}


def build_trivial(group: FiniteGroup) -> Representation:
    return Representation(f"triv({group.name})", group, 1, lambda g: [[1]])


def build_sign(r: int) -> Representation:
    return Representation(f"sign(S{r})", symmetric_group(r), 1, lambda g: [[g.sign()]])


def build_perm(r: int) -> Representation:
    return Representation(f"perm(S{r})", symmetric_group(r), r, lambda g: g.matrix())


def helmert_basis(r: int) -> np.ndarray:
    """Orthonormal basis (as columns) of the complement of the all-ones vector."""
    u = np.zeros((r, r - 1))
    for k in range(1, r):
        u[:k, k - 1] = 1.0
        u[k, k - 1] = -k
        u[:, k - 1] /= math.sqrt(k * (k + 1))
    return u


def std_integer_matrix(g: Permutation) -> list[list[int]]:
    """std(g) in the basis b_i = e_i - e_{r-1}: the top r-1 rows of P_g B."""
    r = g.r
    p = g.matrix()
    return [[p[i][j] - p[i][r - 1] for j in range(r - 1)] for i in range(r - 1)]


def build_std(r: int) -> Representation:
    if r < 2:
        raise ValueError("std(S_r) needs r >= 2")
    u = helmert_basis(r)
    return Representation(
        f"std(S{r})",
        symmetric_group(r),
        r - 1,
        std_integer_matrix,
        unitary=lambda g: (u.T @ np.array(g.matrix(), dtype=float) @ u).astype(complex),
    )


def build_cyclic(m: int, k: int = 1) -> Representation:
    """1-dimensional representation a -> zeta_m^{k a} of Z/m."""
    return Representation(f"cyclic({m})^{k}", cyclic_group(m), 1, lambda g: [[unit(m, k * g.k)]], modulus=m)


def build_g_m1d(m: int, d: int) -> Representation:
    return Representation(f"G({m},1,{d})", g_m1d_group(m, d), d, lambda g: g.matrix(), modulus=m)


def build_regular(group: FiniteGroup) -> Representation:
    els = group.elements
    idx = group.index

    def mat(g):
        n = len(els)
        out = [[0] * n for _ in range(n)]
        for i, h in enumerate(els):
            out[i][idx[h * g]] = 1
        return out

    return Representation(f"reg({group.name})", group, group.order, mat)


def build_matrix_group(name: str, generators: Sequence[Sequence[Sequence[object]]], modulus: int = 1) -> Representation:
    """Natural representation of the group generated by exact matrices."""
    gens = [MatrixElement(ring.freeze(g)) for g in generators]
    d = len(gens[0].entries)
    group = FiniteGroup.from_generators(name, gens, MatrixElement(ring.freeze(ring.identity(d))))
    return Representation(name, group, d, lambda g: g.entries, modulus=modulus)


def representation_from_descriptor(desc: str) -> Representation:
    """Parse ``std:r``, ``perm:r``, ``sign:r``, ``cyclic:m`` or ``gm1d:m,d``."""
    kind, _, arg = desc.partition(":")
    try:
        nums = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise ValueError(f"bad group descriptor {desc!r}") from None
    builders = {"std": build_std, "perm": build_perm, "sign": build_sign, "cyclic": build_cyclic, "gm1d": build_g_m1d}
    arity = {"std": 1, "perm": 1, "sign": 1, "cyclic": 1, "gm1d": 2}
    if kind not in builders or len(nums) != arity[kind]:
        raise ValueError(f"bad group descriptor {desc!r}; expected std:r, perm:r, sign:r, cyclic:m or gm1d:m,d")
    return builders[kind](*nums)


def _minor(a, rows, cols):
    return [[a[i][j] for j in cols] for i in rows]


def exterior_power(rep: Representation, m: int) -> Representation:
    """m-th exterior power on the lexicographic basis of m-subsets."""
    d = rep.dim
    if not 0 <= m <= d:
        raise ValueError(f"exterior power {m} out of range 0..{d}")
    subsets = list(combinations(range(d), m))

    def exact(g):
        a = rep.matrix(g)
        return [[ring.det(_minor(a, rs, cs)) if m else 1 for cs in subsets] for rs in subsets]

    def numeric(g):
        u = rep.unitary(g)
        if m == 0:
            return np.ones((1, 1), dtype=complex)
        return np.array([[np.linalg.det(u[np.ix_(rs, cs)]) for cs in subsets] for rs in subsets], dtype=complex)

    return Representation(f"wedge{m}({rep.name})", rep.group, len(subsets), lambda g: _tidy(exact(g)), rep.modulus, numeric)


def _tidy(a):
    return [[ring._simplify(x) for x in row] for row in a]


def check_homomorphism(rep: Representation, exact: bool = True) -> bool:
    """pi(g h) = pi(g) pi(h) over all pairs."""
    els = rep.group.elements
    for g in els:
        for h in els:
            if exact:
                if ring.freeze(ring.matmul(rep.matrix(g), rep.matrix(h))) != rep.matrix(g * h):
                    return False
            elif not np.allclose(rep.unitary(g) @ rep.unitary(h), rep.unitary(g * h), atol=CHAR_TOL):
                return False
    return True


def is_unitary(rep: Representation, tol: float = CHAR_TOL) -> bool:
    eye = np.eye(rep.dim)
    return all(np.allclose(u.conj().T @ u, eye, atol=tol) for u in map(rep.unitary, rep.group.elements))


def character_inner(chi1: np.ndarray, chi2: np.ndarray) -> complex:
    return complex(np.mean(chi1 * np.conj(chi2)))


def _rounded(value: complex, tol: float = CHAR_TOL) -> int:
    k = round(value.real)
    if abs(value - k) > tol:
        raise NumericalDegeneracy(f"character inner product {value} is not an integer")
    return k


@dataclass(frozen=True)
class P1Report:
    passed: bool
    norms: tuple[int, ...]
    overlaps: tuple[tuple[int, int, int], ...]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "powers": [{"m": m, "norm": n, "irreducible": n == 1} for m, n in enumerate(self.norms)],
            "overlaps": [{"i": i, "j": j, "inner": v} for i, j, v in self.overlaps],
        }


def check_p1(rep: Representation, tol: float = CHAR_TOL) -> P1Report:
    """Are all exterior powers irreducible and pairwise non-isomorphic?"""
    chars = [exterior_power(rep, m).character() for m in range(rep.dim + 1)]
    norms = tuple(_rounded(character_inner(c, c), tol) for c in chars)
    overlaps = []
    for i, j in combinations(range(len(chars)), 2):
        v = _rounded(character_inner(chars[i], chars[j]), tol)
        if v:
            overlaps.append((i, j, v))
    passed = all(n == 1 for n in norms) and not overlaps
    return P1Report(passed, norms, tuple(overlaps))


def is_pseudo_reflection(a: Sequence[Sequence[object]]) -> bool:
    return ring.rank(ring.matsub(a, ring.identity(len(a)))) == 1


@dataclass(frozen=True)
class P2Report:
    passed: bool
    image_order: int
    reflections: int
    generated_order: int

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "image_order": self.image_order,
            "pseudo_reflections": self.reflections,
            "generated_order": self.generated_order,
        }


def check_p2(rep: Representation) -> P2Report:
    """Is the image generated by its pseudo-reflections?"""
    image = rep.image()
    refl = [MatrixElement(a) for a in sorted(image, key=repr) if is_pseudo_reflection(a)]
    ident = MatrixElement(ring.freeze(ring.identity(rep.dim)))
    generated = closure(refl, ident, cap=len(image))
    return P2Report(len(generated) == len(image), len(image), len(refl), len(generated))


def is_rank1(dist: FactorDistribution, rep: Representation) -> bool:
    """Every ratio of distinct support values differs from I by rank exactly 1."""
    mats = [rep.matrix(g) for g in dist.elements]
    for i, j in combinations(range(len(mats)), 2):
        ratio = rep.matrix(dist.elements[i] * dist.elements[j].inverse())
        if not is_pseudo_reflection(ratio):
            return False
    return len({m for m in mats}) == len(mats)


# determinant of a sum of matrices, expanded over minors


@dataclass(frozen=True)
class DetTerm:
    rows: tuple[tuple[int, ...], ...]
    cols: tuple[tuple[int, ...], ...]
    sign: int
    minors: tuple[object, ...]

    @property
    def value(self):
        v = self.sign
        for x in self.minors:
            v = v * x
        return v


@dataclass(frozen=True)
class DetOfSum:
    value: object
    direct: object
    terms: tuple[DetTerm, ...]


def _ordered_partitions(d: int, q: int):
    for labels in product(range(q), repeat=d):
        yield tuple(tuple(i for i in range(d) if labels[i] == part) for part in range(q))


def _matching_sign(rows, cols, d: int) -> int:
    tau = [0] * d
    for rs, cs in zip(rows, cols):
        for a, b in zip(rs, cs):
            tau[a] = b
    return Permutation(tuple(tau)).sign()


def det_of_sum(matrices: Sequence[Sequence[Sequence[object]]], keep_terms: bool = True) -> DetOfSum:
    """det(A_1 + ... + A_q) as a sum over row/column partitions of signed minor products.

    Each term pairs row parts R_l with column parts C_l of equal sizes; its
    sign is that of the permutation taking the i-th smallest element of R_l
    to the i-th smallest of C_l.
    """
    q = len(matrices)
    if q < 1:
        raise ValueError("need at least one matrix")
    d = len(matrices[0])
    parts = list(_ordered_partitions(d, q))
    by_sizes: dict = {}
    for p in parts:
        by_sizes.setdefault(tuple(map(len, p)), []).append(p)
    total: object = 0
    terms = []
    for rows in parts:
        for cols in by_sizes[tuple(map(len, rows))]:
            minors = tuple(
                ring.det(_minor(a, rs, cs)) if rs else Fraction(1) for a, rs, cs in zip(matrices, rows, cols)
            )
            term = DetTerm(rows, cols, _matching_sign(rows, cols, d), minors)
            total = total + term.value
            if keep_terms:
                terms.append(term)
    summed = matrices[0]
    for a in matrices[1:]:
        summed = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(summed, a)]
    return DetOfSum(total, ring.det(summed), tuple(terms))


@dataclass(frozen=True)
class PeterWeylReport:
    passed: bool
    isomorphic: bool
    expected_diagonal: float
    max_deviation: float


def coefficient_inner_products(rep1: Representation, rep2: Representation) -> np.ndarray:
    """T[i1, j1, i2, j2] = E_g[pi1(g)_{i1 j1} * conj(pi2(g)_{i2 j2})]."""
    if rep1.group is not rep2.group and rep1.group.elements != rep2.group.elements:
        raise ValueError("representations of different groups")
    total = np.zeros((rep1.dim, rep1.dim, rep2.dim, rep2.dim), dtype=complex)
    for g in rep1.group.elements:
        total += np.einsum("ab,cd->abcd", rep1.unitary(g), np.conj(rep2.unitary(g)))
    return total / rep1.group.order


def peter_weyl_check(rep1: Representation, rep2: Representation, tol: float = CHAR_TOL) -> PeterWeylReport:
    """Orthogonality of matrix coefficients of two irreducible representations.

    Non-isomorphic pairs must give all zeros.  A representation compared
    with itself must give 1/d exactly on matching index pairs.
    """
    for rep in (rep1, rep2):
        c = rep.character()
        if _rounded(character_inner(c, c), tol) != 1:
            raise ValueError(f"{rep.name} is not irreducible")
    iso = _rounded(character_inner(rep1.character(), rep2.character()), tol) == 1
    t = coefficient_inner_products(rep1, rep2)
    if not iso:
        expected = np.zeros_like(t)
        diag = 0.0
    else:
        same = all(np.allclose(rep1.unitary(g), rep2.unitary(g), atol=tol) for g in rep1.group.elements)
        if not same:
            raise ValueError("isomorphic but differently realized representations; compare one with itself")
        d = rep1.dim
        diag = 1.0 / d
        expected = np.einsum("ac,bd->abcd", np.eye(d), np.eye(d)) * diag
    dev = float(np.max(np.abs(t - expected)))
    return PeterWeylReport(dev <= tol, iso, diag, dev)


def g_m1d_factorization(m: int, d: int):
    """Swap factors for the permutation part, then one uniform phase factor per coordinate."""
    from .perm import EdgeFactorization, swap_factorization

    ident = Permutation.identity(d)
    zero = (0,) * d
    factors = []
    if d >= 2:
        for f in swap_factorization(d).factors:
            factors.append(FactorDistribution(tuple((Monomial(p, zero, m), w) for p, w in f.support)))
    for i in range(d):
        phase = []
        for k in range(m):
            a = [0] * d
            a[i] = k
            phase.append(Monomial(ident, tuple(a), m))
        factors.append(FactorDistribution.uniform(phase))
    return EdgeFactorization(tuple(factors), label=f"gm1d:{m},{d}", group_order=math.factorial(d) * m**d)

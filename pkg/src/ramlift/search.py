"""Greedy derandomized search for one-sided Ramanujan coverings.

Each edge label is a product of independent factors.  The search fixes
factors one at a time (edges in index order, factors in factorization
order) and keeps the branch whose conditional expected characteristic
polynomial has the smallest largest root.  Expectations are exact weighted
sums over the residual per-edge distributions.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Hashable, Sequence

import numpy as np

from . import poly as P
from .cover import (
    FLOAT_TOL,
    GroupLabeling,
    char_poly,
    char_poly_float,
    new_char_poly,
    twisted_adjacency,
)
from .graph import OrientedMultigraph, classify, spanning_tree_normalize, subdivide
from .matching import d_matching_poly, matching_poly
from .perm import (
    CapExceeded,
    EdgeFactorization,
    FactorDistribution,
    Permutation,
    ZMod,
    cyclic_uniform,
    env_cap,
    lazy_walk_factorization,
    swap_factorization,
)
from .poly import RatPoly, RootBracket
from .repgroup import (
    Monomial,
    Representation,
    build_cyclic,
    build_g_m1d,
    build_std,
    g_m1d_factorization,
    is_rank1,
)

EXPECTATION_CAP = 10**6
BALL_RADIUS_CAP = 40
BALL_INCREMENT = 1e-6
FLOAT_ROOT_TOL = 1e-6


class InterlacingViolation(AssertionError):
    """A conditional expectation lost real-rootedness or the objective increased."""


class LoopsNotSupported(ValueError):
    pass


def env_tol(default: Fraction = P.DEFAULT_TOL) -> Fraction:
    raw = os.environ.get("RAMLIFT_TOL")
    return parse_tol(raw) if raw else default


def parse_tol(text: str | Fraction) -> Fraction:
    """Accepts ``num/den``, decimals, or ``2^-k``."""
    if isinstance(text, Fraction):
        tol = text
    else:
        s = str(text).strip()
        if s.startswith("2^"):
            tol = Fraction(2) ** int(s[2:])
        else:
            tol = Fraction(s)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


# ---------------------------------------------------------------------------
# float polynomials for fields whose Hermitian char polys are irrational


@dataclass(frozen=True)
class FloatPoly:
    coeffs: tuple[float, ...]  # lowest degree first

    def roots(self) -> np.ndarray:
        c = np.array(self.coeffs[::-1], dtype=float)
        return np.roots(c) if len(c) > 1 else np.array([])

    def is_real_rooted(self, tol: float = FLOAT_ROOT_TOL) -> bool:
        return bool(np.all(np.abs(self.roots().imag) <= tol * (1 + np.abs(self.roots().real))))

    def largest_root(self) -> float:
        return float(np.max(self.roots().real))

    def to_json(self) -> dict:
        return {"coeffs": [repr(float(c)) for c in self.coeffs], "exact": False}


def _is_real_rooted(p) -> bool:
    return p.is_real_rooted() if isinstance(p, FloatPoly) else P.is_real_rooted(p)


def _largest_float(p) -> float:
    return p.largest_root() if isinstance(p, FloatPoly) else P.largest_root(p, Fraction(1, 2**30)).midpoint()


def _argmin_largest(polys: Sequence) -> tuple[int, list[int]]:
    """Index of the poly with the smallest largest root (first on ties), plus ranks."""
    if isinstance(polys[0], FloatPoly):
        tops = [p.largest_root() for p in polys]
        best = min(tops)
        ranks = [0 if t <= best + FLOAT_ROOT_TOL else 1 for t in tops]
        return ranks.index(0), tops
    ranks = P.joint_root_ranks(list(polys))
    tops = [r[-1] for r in ranks]
    best = min(tops)
    return tops.index(best), tops


# ---------------------------------------------------------------------------
# rho: spectral radius of the universal covering tree


@dataclass(frozen=True)
class RhoBracket:
    lower: Fraction
    upper: Fraction
    method: str  # "closed-form" or "ball-iteration"
    poly: RatPoly | None = None  # exact: rho is the largest root of poly
    upper_poly: RatPoly | None = None  # exact: upper is rounded from its largest root
    radius: int | None = None

    @property
    def exact(self) -> bool:
        return self.poly is not None

    def to_json(self) -> dict:
        out = {
            "lower": P.fraction_to_str(self.lower),
            "upper": P.fraction_to_str(self.upper),
            "method": self.method,
        }
        if self.poly is not None:
            out["poly"] = P.poly_to_json(self.poly)
        if self.radius is not None:
            out["radius"] = self.radius
        return out


def _regular_rho_poly(k: int) -> RatPoly:
    return RatPoly([-4 * (k - 1), 0, 1])


def _biregular_rho_poly(k: int, l: int) -> RatPoly:
    a, b = k - 1, l - 1
    inner = RatPoly([-(a + b), 0, 1])
    return inner * inner - RatPoly.const(4 * a * b)


def _oriented_out(g: OrientedMultigraph) -> list[list[tuple[int, int]]]:
    # oriented edge id: 2j forward (head -> tail), 2j+1 backward
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for j, (h, t) in enumerate(g.edges):
        out[h].append((2 * j, t))
        out[t].append((2 * j + 1, h))
    return out


def ball_spectral_radius(g: OrientedMultigraph, root: int, radius: int, tol: float = 1e-12) -> float:
    """Largest eigenvalue of the radius-R ball of the universal cover around root.

    A vertex's subtree depends only on the oriented edge it was reached by and
    the remaining depth, so lambda*I - A is tested for positive definiteness
    by leaf-to-root LDL^T pivots over these types, and lambda is bisected.
    """
    out = _oriented_out(g)
    arrive = {}
    for v in range(g.n):
        for eid, w in out[v]:
            arrive[eid] = w

    def positive_definite(lam: float) -> bool:
        # piv[eid] = pivot of a vertex reached by eid with `depth` levels below it
        piv = {eid: lam for eid in arrive}
        for _ in range(radius - 1):
            new = {}
            for eid, w in arrive.items():
                back = eid ^ 1
                s = lam
                for child, _ in out[w]:
                    if child != back:
                        s -= 1.0 / piv[child]
                if s <= 0:
                    return False
                new[eid] = s
            piv = new
        if radius == 0:
            return lam > 0
        s = lam - sum(1.0 / piv[eid] for eid, _ in out[root])
        return s > 0

    if radius == 0 or not out[root]:
        return 0.0
    # the ball always has an edge, so lambda_max >= 1; degrees bound it above
    lo, hi = 1.0, float(max(len(o) for o in out)) + 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if positive_definite(mid):
            hi = mid
        else:
            lo = mid
    return lo


def rho(g: OrientedMultigraph, tol: Fraction | None = None) -> RhoBracket:
    tol = env_tol() if tol is None else tol
    report = classify(g)
    if not report.connected:
        raise ValueError("rho needs a connected graph")
    if g.is_tree():
        # the universal cover of a tree is the tree itself
        p = char_poly(g.adjacency())
        b = P.largest_root(p, tol)
        return RhoBracket(b.lower, b.upper, "closed-form", p, p)
    poly = None
    if report.regular_degree is not None:
        poly = _regular_rho_poly(report.regular_degree)
    elif report.biregular_degrees is not None:
        poly = _biregular_rho_poly(*report.biregular_degrees)
    if poly is not None:
        b = P.largest_root(poly, tol)
        return RhoBracket(b.lower, b.upper, "closed-form", poly, poly)
    deg = g.degrees()
    root = deg.index(max(deg))
    upper_poly = _regular_rho_poly(report.max_degree)
    upper = P.largest_root(upper_poly, tol).upper
    prev = ball_spectral_radius(g, root, 1)
    radius = 1
    while radius < BALL_RADIUS_CAP:
        radius += 1
        cur = ball_spectral_radius(g, root, radius)
        done = cur - prev < BALL_INCREMENT
        prev = cur
        if done:
            break
    scale = 2**40
    lower = Fraction(math.floor((prev - 1e-9) * scale), scale)
    return RhoBracket(min(lower, upper), upper, "ball-iteration", None, upper_poly, radius)


# ---------------------------------------------------------------------------
# search state


def _chunk(rep: Representation) -> str:
    return "exact" if rep.exact_charpoly_field else "float"


class SearchContext:
    """Graph, representation, per-edge factorizations and a shared char-poly cache."""

    def __init__(
        self,
        g: OrientedMultigraph,
        rep: Representation,
        factorizations: Sequence[EdgeFactorization],
        cap: int | None = None,
        check_rank1: bool = True,
    ):
        if len(factorizations) != g.num_edges:
            raise ValueError("one factorization per edge")
        self.graph = g
        self.rep = rep
        self.factorizations = tuple(factorizations)
        self.cap = env_cap(EXPECTATION_CAP) if cap is None else cap
        self.mode = _chunk(rep)
        self.identity = rep.group.identity
        self.positions = [(j, i) for j, f in enumerate(self.factorizations) for i in range(len(f.factors))]
        self._suffix: dict = {}
        self._phi: dict = {}
        self._gauge = g.is_connected()
        if check_rank1:
            for j, f in enumerate(self.factorizations):
                for i, factor in enumerate(f.factors):
                    if not is_rank1(factor, rep):
                        raise InterlacingViolation(f"factor {i} of edge {j} is not rank-1 under {rep.name}")

    def suffix(self, j: int, start: int) -> FactorDistribution:
        key = (j, start)
        d = self._suffix.get(key)
        if d is None:
            factors = self.factorizations[j].factors[start:]
            d = reduce(FactorDistribution.convolve, factors) if factors else FactorDistribution.point(self.identity)
            self._suffix[key] = d
        return d

    def phi(self, labels: tuple) -> tuple:
        """Char poly coefficients of A_{labels, pi}; cached up to gauge."""
        key = labels
        if self._gauge and self.graph.num_edges:
            key = tuple(
                spanning_tree_normalize(self.graph, labels, lambda a, b: a * b, lambda a: a.inverse(), self.identity)
            )
        c = self._phi.get(key)
        if c is None:
            a = twisted_adjacency(self.graph, key, self.rep)
            if self.mode == "exact":
                c = tuple(int(x) if x.denominator == 1 else x for x in char_poly(a).coeffs)
            else:
                c = tuple(char_poly_float(a))
            self._phi[key] = c
        return c


@dataclass(frozen=True)
class SearchState:
    context: SearchContext
    fixed: tuple = ()

    @classmethod
    def initial(cls, g, rep, factorizations, cap=None, check_rank1=True) -> SearchState:
        return cls(SearchContext(g, rep, factorizations, cap, check_rank1))

    @property
    def done(self) -> bool:
        return len(self.fixed) == len(self.context.positions)

    def next_factor(self) -> FactorDistribution:
        j, i = self.context.positions[len(self.fixed)]
        return self.context.factorizations[j].factors[i]

    def with_choice(self, value) -> SearchState:
        if self.done:
            raise ValueError("every factor is already fixed")
        return SearchState(self.context, self.fixed + (value,))

    def residuals(self) -> list[FactorDistribution]:
        ctx = self.context
        prefix = [ctx.identity] * ctx.graph.num_edges
        count = [0] * ctx.graph.num_edges
        for (j, _), v in zip(ctx.positions, self.fixed):
            prefix[j] = prefix[j] * v
            count[j] += 1
        return [FactorDistribution.point(prefix[j]).convolve(ctx.suffix(j, count[j])) for j in range(ctx.graph.num_edges)]

    def labeling(self) -> tuple:
        if not self.done:
            raise ValueError("labeling is only defined once every factor is fixed")
        return tuple(d.elements[0] for d in self.residuals())


def expected_char_poly(state: SearchState):
    """Exact expectation of det(xI - A_{gamma,pi}) over the residual randomness."""
    ctx = state.context
    dists = state.residuals()
    size = math.prod(len(d) for d in dists)
    if size > ctx.cap:
        raise CapExceeded(
            f"expectation needs {size} labelings (cap {ctx.cap}); use a smaller graph or r, or raise --cap"
        )
    dens = [math.lcm(*(w.denominator for _, w in d.support)) for d in dists]
    per_edge = [[(g, int(w * den)) for g, w in d.support] for d, den in zip(dists, dens)]
    total_den = math.prod(dens)
    acc: list = []
    for combo in product(*per_edge):
        w = 1
        for _, k in combo:
            w *= k
        c = ctx.phi(tuple(g for g, _ in combo))
        if len(acc) < len(c):
            acc.extend([0] * (len(c) - len(acc)))
        for i, x in enumerate(c):
            acc[i] += w * x
    if ctx.mode == "exact":
        return RatPoly([Fraction(x) / total_den for x in acc])
    return FloatPoly(tuple(float(x) / total_den for x in acc))


@dataclass(frozen=True)
class StepResult:
    value: Hashable
    state: SearchState
    branch_polys: tuple
    mixture: object
    chosen: int


def greedy_step(state: SearchState, mixture=None) -> StepResult:
    """Fix the next factor to the support value with the smallest largest root."""
    if state.done:
        raise ValueError("no unfixed factor")
    mixture = expected_char_poly(state) if mixture is None else mixture
    if not _is_real_rooted(mixture):
        raise InterlacingViolation(f"conditional expectation {mixture} is not real rooted")
    factor = state.next_factor()
    branches = [state.with_choice(v) for v in factor.elements]
    polys = [expected_char_poly(b) for b in branches]
    for p in polys:
        if not _is_real_rooted(p):
            raise InterlacingViolation(f"branch expectation {p} is not real rooted")
    best, _ = _argmin_largest(polys)
    if isinstance(mixture, RatPoly):
        if P.compare_largest_roots(polys[best], mixture) > 0:
            raise InterlacingViolation("every branch raises the largest root")
    elif polys[best].largest_root() > mixture.largest_root() + FLOAT_ROOT_TOL:
        raise InterlacingViolation("every branch raises the largest root")
    return StepResult(factor.elements[best], branches[best], tuple(polys), mixture, best)


# ---------------------------------------------------------------------------
# certificates


VERDICTS = ("one-sided-ramanujan", "one-sided-vs-dmatching", "fail")


@dataclass
class LiftCertificate:
    graph: OrientedMultigraph
    group: str
    labeling: tuple
    new_poly: RatPoly | FloatPoly
    new_root: RootBracket | float
    dmatching_poly: RatPoly
    dmatching_root: RootBracket
    rho: RhoBracket
    verdict: str
    epsilon: Fraction = Fraction(0)
    exact: bool = True
    two_sided: bool | None = None
    r: int | None = None
    history: list = field(default_factory=list, compare=False)

    def to_json(self) -> dict:
        out = {
            "graph": self.graph.to_json(),
            "group": self.group,
            "r": self.r,
            "labeling": [_element_json(x) for x in self.labeling],
            "new_poly": self.new_poly.to_json() if isinstance(self.new_poly, FloatPoly) else P.poly_to_json(self.new_poly),
            "new_root": P.bracket_to_json(self.new_root) if isinstance(self.new_root, RootBracket) else repr(self.new_root),
            "dmatching_poly": P.poly_to_json(self.dmatching_poly),
            "dmatching_root": P.bracket_to_json(self.dmatching_root),
            "rho": self.rho.to_json(),
            "verdict": self.verdict,
            "epsilon": P.fraction_to_str(self.epsilon),
            "exact": self.exact,
            "two_sided": self.two_sided,
        }
        return out


def _element_json(x):
    return x.to_json() if hasattr(x, "to_json") else x


def _clip(bracket: RootBracket, p: RatPoly, upper: Fraction) -> RootBracket:
    # the root is known to be <= upper, so the bracket may be intersected with it
    if bracket.upper <= upper or upper < bracket.lower:
        return bracket
    return RootBracket(bracket.lower, upper, P.count_roots(p, bracket.lower, upper))


def _reflect(p: RatPoly) -> RatPoly:
    return RatPoly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)])


def certify(
    g: OrientedMultigraph,
    group: str,
    labeling: tuple,
    new_poly,
    dim: int,
    tol: Fraction,
    epsilon: Fraction = Fraction(0),
    r: int | None = None,
) -> LiftCertificate:
    """Compare the largest new root against rho and against the d-matching polynomial."""
    mpoly = d_matching_poly(g, dim) if dim > 1 else matching_poly(g)
    mroot = P.largest_root(mpoly, tol)
    rb = rho(g, tol)
    bipartite = classify(g).bipartite
    if isinstance(new_poly, FloatPoly):
        top = new_poly.largest_root()
        if top <= float(rb.lower) + FLOAT_TOL:
            verdict = "one-sided-ramanujan"
        elif top <= float(mroot.upper) + FLOAT_TOL:
            verdict = "one-sided-vs-dmatching"
        else:
            verdict = "fail"
        two = None
        if bipartite:
            two = bool(np.min(new_poly.roots().real) >= -float(rb.upper) - FLOAT_TOL)
        return LiftCertificate(g, group, labeling, new_poly, top, mpoly, mroot, rb, verdict, epsilon, False, two, r)
    if new_poly.degree < 1:
        nroot = RootBracket(Fraction(0), Fraction(0), 0)
        verdict = "one-sided-ramanujan"
        two = True if bipartite else None
        return LiftCertificate(g, group, labeling, new_poly, nroot, mpoly, mroot, rb, verdict, epsilon, True, two, r)
    nroot = P.largest_root(new_poly, tol)
    if rb.exact:
        below_rho = P.compare_largest_roots(new_poly, rb.poly) <= 0
        rho_cap = rb.upper
    else:
        below_rho = P.max_root_at_most(new_poly, rb.lower)
        rho_cap = rb.lower
    if below_rho:
        verdict = "one-sided-ramanujan"
        nroot = _clip(nroot, new_poly, rho_cap)
    elif P.compare_largest_roots(new_poly, mpoly) <= 0:
        verdict = "one-sided-vs-dmatching"
        nroot = _clip(nroot, new_poly, mroot.upper)
    else:
        verdict = "fail"
    two = None
    if bipartite:
        if not (new_poly.is_even() or new_poly.is_odd()):
            raise AssertionError("new spectrum of a bipartite base is not symmetric")
        two = P.max_root_at_most(new_poly, rb.upper) and P.max_root_at_most(_reflect(new_poly), rb.upper)
    return LiftCertificate(g, group, labeling, new_poly, nroot, mpoly, mroot, rb, verdict, epsilon, True, two, r)


# ---------------------------------------------------------------------------
# group set-up and drivers


def group_setup(desc: str, factorization: str = "exact") -> tuple[Representation, EdgeFactorization]:
    """Representation and per-edge factorization for ``std:r``, ``cyclic:m`` or ``gm1d:m,d``.

    ``factorization`` is ``exact`` or ``lazy:<steps>`` (lazy random walk).
    """
    kind, _, arg = desc.partition(":")
    try:
        nums = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise ValueError(f"bad group descriptor {desc!r}") from None
    if kind == "std" and len(nums) == 1:
        r = nums[0]
        rep = build_std(r)
        exact = swap_factorization(r)
        gens = [Permutation.transposition(r, i, i + 1) for i in range(r - 1)]
    elif kind == "cyclic" and len(nums) == 1:
        m = nums[0]
        rep = build_cyclic(m)
        exact = cyclic_uniform(m)
        gens = [ZMod(1, m)]
    elif kind == "gm1d" and len(nums) == 2:
        m, d = nums
        rep = build_g_m1d(m, d)
        exact = g_m1d_factorization(m, d)
        ident = Permutation.identity(d)
        gens = [Monomial(Permutation.transposition(d, i, i + 1), (0,) * d, m) for i in range(d - 1)]
        gens.append(Monomial(ident, (1,) + (0,) * (d - 1), m))
    elif kind in ("gmkd", "gmk"):
        raise ValueError("G(m,k,d) with 1 < k < m has no exact rank-1 factorization; not supported")
    else:
        raise ValueError(f"bad group descriptor {desc!r}; expected std:r, cyclic:m or gm1d:m,d")
    if factorization == "exact":
        return rep, exact
    if factorization.startswith("lazy:"):
        steps = int(factorization[5:])
        lazy = lazy_walk_factorization(gens, steps, rep.group.identity, rep.group.elements)
        return rep, lazy
    raise ValueError(f"unknown factorization {factorization!r}")


def _check_base(g: OrientedMultigraph, allow_loops: bool):
    if not g.is_connected():
        raise ValueError("base graph must be connected")
    if g.has_loops and not allow_loops:
        raise LoopsNotSupported("loops are not supported here; use lift_regular_with_loops for regular graphs")


def run_greedy(state: SearchState) -> tuple[SearchState, list]:
    """Run greedy steps to completion; history holds the objective per step."""
    history = []
    mixture = expected_char_poly(state)
    history.append(mixture)
    while not state.done:
        step = greedy_step(state, mixture)
        state = step.state
        mixture = step.branch_polys[step.chosen]
        history.append(mixture)
    return state, history


def find_lift_group(
    g: OrientedMultigraph,
    desc: str,
    factorization: str = "exact",
    cap: int | None = None,
    tol: Fraction | None = None,
) -> LiftCertificate:
    tol = env_tol() if tol is None else tol
    rep, fact = group_setup(desc, factorization)
    # a loop contributes pi(g) + pi(g)^-1, which is only safe to try in dimension 1
    _check_base(g, allow_loops=rep.dim == 1)
    state = SearchState.initial(g, rep, [fact] * g.num_edges, cap)
    final, history = run_greedy(state)
    if fact.exact and isinstance(history[0], RatPoly) and g.num_edges:
        expected = d_matching_poly(g, rep.dim) if rep.dim > 1 else matching_poly(g)
        if history[0] != expected:
            raise AssertionError("initial expectation differs from the d-matching polynomial")
    labeling = final.labeling()
    if final.context.mode == "exact":
        new_poly = char_poly(twisted_adjacency(g, labeling, rep))
        if desc.startswith("std:"):
            if new_poly != new_char_poly(g, labeling):
                raise AssertionError("std twist and covering quotient disagree")
    else:
        new_poly = FloatPoly(final.context.phi(labeling))
    eps = fact.tv_slack * g.num_edges
    r = int(desc.split(":")[1]) if desc.startswith("std:") else None
    cert = certify(g, desc, labeling, new_poly, rep.dim, tol, eps, r)
    cert.history = history
    return cert


def find_lift(g: OrientedMultigraph, r: int, cap: int | None = None, tol: Fraction | None = None) -> LiftCertificate:
    """One-sided Ramanujan r-covering of a connected loopless graph."""
    if r < 1:
        raise ValueError("r must be positive")
    _check_base(g, allow_loops=False)
    tol = env_tol() if tol is None else tol
    if r == 1:
        ident = tuple(Permutation.identity(1) for _ in range(g.num_edges))
        return certify(g, "std:1", ident, RatPoly.const(1), 0, tol, r=1)
    return find_lift_group(g, f"std:{r}", cap=cap, tol=tol)


def transport_subdivision_labeling(g: OrientedMultigraph, sub_labels: Sequence) -> tuple:
    """Edge j of g gets inverse(label(2j)) * label(2j+1)."""
    return tuple(sub_labels[2 * j].inverse() * sub_labels[2 * j + 1] for j in range(g.num_edges))


def lift_regular_with_loops(
    g: OrientedMultigraph, r: int, cap: int | None = None, tol: Fraction | None = None
) -> LiftCertificate:
    """r-covering of a regular graph (loops allowed) via its bipartite subdivision."""
    tol = env_tol() if tol is None else tol
    report = classify(g)
    if report.regular_degree is None:
        raise ValueError("lift_regular_with_loops needs a regular graph")
    if not report.connected:
        raise ValueError("base graph must be connected")
    k = report.regular_degree
    sub = subdivide(g)
    sub_cert = find_lift(sub, r, cap, tol)
    sigma = transport_subdivision_labeling(g, sub_cert.labeling)
    new = new_char_poly(g, sigma)
    # new spectrum of the subdivision covering is x^{(m-n)(r-1)} * new(x^2 - k)
    shifted = RatPoly([0] * ((g.num_edges - g.n) * (r - 1)) + [1]) if g.num_edges >= g.n else None
    composed = _compose_square_shift(new, k)
    if shifted is not None:
        if sub_cert.new_poly != shifted * composed:
            raise AssertionError("subdivision spectrum relation failed")
    elif sub_cert.new_poly * RatPoly([0] * ((g.n - g.num_edges) * (r - 1)) + [1]) != composed:
        raise AssertionError("subdivision spectrum relation failed")
    bound = _regular_rho_poly(k)
    rb = rho(g, tol)
    nroot = P.largest_root(new, tol)
    ok = P.compare_largest_roots(new, bound) <= 0
    if ok:
        nroot = _clip(nroot, new, rb.upper)
    mpoly = d_matching_poly(g, r - 1) if r > 2 else matching_poly(g)
    mroot = P.largest_root(mpoly, tol)
    cert = LiftCertificate(
        g, f"std:{r}", sigma, new, nroot, mpoly, mroot, rb, "one-sided-ramanujan" if ok else "fail", r=r
    )
    cert.history = sub_cert.history
    return cert


def _compose_square_shift(p: RatPoly, k: int) -> RatPoly:
    """p(x^2 - k)."""
    arg = RatPoly([-k, 0, 1])
    out = RatPoly([])
    for c in reversed(p.coeffs):
        out = out * arg + RatPoly.const(c)
    return out


# ---------------------------------------------------------------------------
# verification


def labeling_from_json(desc: str, values: list) -> tuple:
    kind, _, arg = desc.partition(":")
    nums = [int(x) for x in arg.split(",")]
    if kind == "std":
        return tuple(Permutation(tuple(v)) for v in values)
    if kind == "cyclic":
        return tuple(ZMod(int(v), nums[0]) for v in values)
    if kind == "gm1d":
        return tuple(Monomial(Permutation(tuple(v["perm"])), tuple(v["phases"]), nums[0]) for v in values)
    raise ValueError(f"bad group descriptor {desc!r}")


def recompute_certificate(obj: dict, tol: Fraction | None = None) -> LiftCertificate:
    """Rebuild a certificate from its graph, group and labeling alone."""
    tol = env_tol() if tol is None else tol
    g = OrientedMultigraph.from_json(obj["graph"])
    desc = obj["group"]
    labeling = labeling_from_json(desc, obj["labeling"])
    if len(labeling) != g.num_edges:
        raise ValueError("labeling length does not match the graph")
    kind = desc.partition(":")[0]
    if kind == "std":
        r = int(desc.split(":")[1])
        if r == 1:
            return certify(g, desc, labeling, RatPoly.const(1), 0, tol, r=1)
        new = new_char_poly(g, labeling)
        if g.has_loops:
            k = classify(g).regular_degree
            rb = rho(g, tol)
            nroot = P.largest_root(new, tol)
            ok = k is not None and P.compare_largest_roots(new, _regular_rho_poly(k)) <= 0
            if ok:
                nroot = _clip(nroot, new, rb.upper)
            mpoly = d_matching_poly(g, r - 1) if r > 2 else matching_poly(g)
            return LiftCertificate(
                g, desc, labeling, new, nroot, mpoly, P.largest_root(mpoly, tol), rb,
                "one-sided-ramanujan" if ok else "fail", r=r,
            )
        return certify(g, desc, labeling, new, r - 1, tol, r=r)
    rep, _ = group_setup(desc)
    a = twisted_adjacency(g, labeling, rep)
    new = char_poly(a) if rep.exact_charpoly_field else FloatPoly(tuple(char_poly_float(a)))
    eps = P.parse_fraction(obj.get("epsilon", "0"))
    return certify(g, desc, labeling, new, rep.dim, tol, eps)


def verify_certificate(obj: dict, tol: Fraction | None = None) -> tuple[list[str], LiftCertificate]:
    """Field names whose stored value differs from the recomputation."""
    cert = recompute_certificate(obj, tol)
    fresh = cert.to_json()
    mismatches = [k for k in fresh if k != "epsilon" and obj.get(k) != fresh[k]]
    return mismatches, cert

"""Acceptance matrix A1-A12, shared by ``ramlift corpus`` and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from . import poly as P
from .corpus import CorpusGraph, load_corpus, load_named
from .cover import build_covering, char_poly, new_char_poly, twisted_adjacency
from .graph import OrientedMultigraph, classify, k2
from .matching import d_matching_poly, d_matching_poly_oracle
from .perm import FactorDistribution, Permutation, swap_factorization, uniform_sr, xyz_s3
from .poly import RatPoly
from .repgroup import (
    build_cyclic,
    build_g_m1d,
    build_matrix_group,
    build_perm,
    build_sign,
    build_std,
    build_trivial,
    check_p1,
    check_p2,
    det_of_sum,
    is_rank1,
    peter_weyl_check,
)
from .search import (
    InterlacingViolation,
    SearchState,
    expected_char_poly,
    find_lift,
    find_lift_group,
    greedy_step,
    lift_regular_with_loops,
)

X = RatPoly.x()
A1_EXPECTED = RatPoly([4, 0, Fraction(-178, 3), 0, 180, 0, -189, 0, 81, 0, -15, 0, 1])
NON_REAL_MIXTURE = ((X**2 - 4) ** 2 + (X**2 - 1) ** 2) * Fraction(1, 2)


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    passed: bool
    seconds: float
    detail: str
    limit: float | None = None

    def to_json(self) -> dict:
        return {"id": self.cid, "passed": self.passed, "seconds": round(self.seconds, 3), "detail": self.detail}

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.cid} {status} ({self.seconds:.2f}s) {self.detail}"


def exhaustive_average_charpoly(g: OrientedMultigraph, rep) -> RatPoly:
    """Average of det(xI - A_{gamma,pi}) over every labeling, by direct enumeration."""
    els = rep.group.elements
    total = RatPoly([])
    count = 0
    for labels in product(els, repeat=g.num_edges):
        total = total + char_poly(twisted_adjacency(g, labels, rep))
        count += 1
    return total * Fraction(1, count)


def non_interlacing_state() -> SearchState:
    """Two parallel edges, std(S_3): one edge fixed at id, the other {id, 3-cycle} evenly."""
    from .perm import EdgeFactorization

    g = k2(2)
    ident = Permutation.identity(3)
    three = Permutation.cycle(3, 0, 1, 2)
    fixed = EdgeFactorization((FactorDistribution.point(ident),))
    mixed = EdgeFactorization((FactorDistribution(((ident, Fraction(1, 2)), (three, Fraction(1, 2)))),))
    return SearchState.initial(g, build_std(3), [fixed, mixed], check_rank1=False)


def a1(corpus):
    poly = d_matching_poly(load_named("k4me"), 3)
    return poly == A1_EXPECTED, str(poly)


def a2(corpus):
    checked = 0
    for cg in corpus:
        m = cg.graph.num_edges
        for d, limit in ((2, 4), (3, 3)):
            if m <= limit:
                if d_matching_poly(cg.graph, d) != d_matching_poly_oracle(cg.graph, d):
                    return False, f"{cg.name} d={d} differs"
                checked += 1
    return True, f"{checked} (graph, d) pairs"


def a3(corpus):
    checked = 0
    for rep, limit in ((build_sign(2), 5), (build_std(3), 3)):
        for cg in corpus:
            if cg.graph.num_edges <= limit:
                if exhaustive_average_charpoly(cg.graph, rep) != d_matching_poly(cg.graph, rep.dim):
                    return False, f"{cg.name} under {rep.name}"
                checked += 1
    return True, f"{checked} (graph, rep) pairs"


def a4(corpus):
    from .search import rho

    checked = 0
    for cg in corpus:
        if not cg.loopless:
            continue
        report = classify(cg.graph)
        for d in (1, 2, 3):
            m = d_matching_poly(cg.graph, d)
            if not P.is_real_rooted(m):
                return False, f"{cg.name} d={d} not real rooted"
            if report.regular_degree is not None:
                bound = rho(cg.graph).poly
                if P.compare_largest_roots(m, bound) > 0 or P.compare_largest_roots(_reflect(m), bound) > 0:
                    return False, f"{cg.name} d={d} root outside the Ramanujan interval"
            checked += 1
    return True, f"{checked} (graph, d) pairs"


def _reflect(p: RatPoly) -> RatPoly:
    return RatPoly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)])


def a5(corpus):
    checked = 0
    for cg in corpus:
        if not cg.loopless:
            continue
        for r in (2, 3):
            try:
                cert = find_lift(cg.graph, r)
            except InterlacingViolation as exc:
                return False, f"{cg.name} r={r}: {exc}"
            if P.compare_largest_roots(cert.new_poly, cert.dmatching_poly) > 0:
                return False, f"{cg.name} r={r} beats the d-matching root"
            if classify(cg.graph).bipartite and not cert.two_sided:
                return False, f"{cg.name} r={r} bipartite spectrum escapes [-rho, rho]"
            checked += 1
    return True, f"{checked} lifts"


def a6(corpus):
    state = non_interlacing_state()
    mix = expected_char_poly(state)
    if mix != NON_REAL_MIXTURE or P.is_real_rooted(mix):
        return False, f"mixture {mix}"
    try:
        greedy_step(state)
    except InterlacingViolation:
        return True, f"{mix} rejected"
    return False, "greedy step accepted a non-real-rooted state"


def a7(corpus):
    for r in range(2, 6):
        s = build_std(r)
        if not (check_p1(s).passed and check_p2(s).passed):
            return False, f"std(S{r})"
    if check_p1(build_perm(3)).passed:
        return False, "perm(S3) passed P1"
    if check_p2(build_matrix_group("+-I", [[[-1, 0], [0, -1]]])).passed:
        return False, "{+-I} passed P2"
    pairs = [build_std(r) for r in range(2, 6)]
    pairs += [build_cyclic(m) for m in (2, 3, 4, 5, 6)]
    pairs += [build_g_m1d(m, d) for m, d in ((2, 2), (2, 3), (3, 2))]
    for rep in pairs:
        if check_p2(rep).passed and not check_p1(rep).passed:
            return False, f"Steinberg consistency fails for {rep.name}"
    return True, f"{len(pairs)} P2 pairs consistent"


def a8(corpus):
    for r in range(2, 6):
        f = swap_factorization(r)
        if not f.product().same_law(uniform_sr(r)):
            return False, f"swap r={r} not uniform"
        std = build_std(r)
        if not all(is_rank1(x, std) for x in f.factors):
            return False, f"swap r={r} factor not rank-1"
    xyz = xyz_s3()
    if not xyz.product().same_law(uniform_sr(3)):
        return False, "xyz not uniform"
    if not all(is_rank1(x, build_std(3)) for x in xyz.factors):
        return False, "xyz factor not rank-1"
    return True, "r=2..5 and xyz exact"


def a9(corpus):
    worst = 0.0
    for r in (3, 4):
        reps = [build_std(r), build_sign(r)]
        reps.append(build_trivial(reps[0].group))
        for a in reps:
            for b in reps:
                rep = peter_weyl_check(a, b)
                worst = max(worst, rep.max_deviation)
                if not rep.passed:
                    return False, f"{a.name} vs {b.name}"
    diag = peter_weyl_check(build_std(3), build_std(3)).expected_diagonal
    return diag == 0.5, f"max deviation {worst:.2e}; std(S3) diagonal {diag}"


def a10(corpus, seed: int = 20240611, trials: int = 200):
    rng = random.Random(seed)
    for _ in range(trials):
        q, d = rng.randint(1, 3), rng.randint(1, 4)
        mats = [[[rng.randint(-5, 5) for _ in range(d)] for _ in range(d)] for _ in range(q)]
        res = det_of_sum(mats, keep_terms=False)
        if res.value != res.direct:
            return False, f"mismatch for {mats}"
    return True, f"{trials} tuples"


def shift(k: int, m: int) -> Permutation:
    return Permutation(tuple((i + k) % m for i in range(m)))


def a11(corpus):
    pi1, pi2 = build_cyclic(3, 1), build_cyclic(3, 2)
    checked = 0
    for cg in corpus:
        g = cg.graph
        try:
            cert = find_lift_group(g, "cyclic:3")
        except InterlacingViolation as exc:
            return False, f"{cg.name}: {exc}"
        labels = cert.labeling
        perm_new = new_char_poly(g, [shift(x.k, 3) for x in labels])
        twisted = char_poly(twisted_adjacency(g, labels, pi1)) * char_poly(twisted_adjacency(g, labels, pi2))
        if perm_new != twisted:
            return False, f"{cg.name}: covering spectrum is not the union of the twisted spectra"
        if cert.verdict != "one-sided-ramanujan":
            return False, f"{cg.name}: verdict {cert.verdict}"
        checked += 1
    return True, f"{checked} graphs"


def a12(corpus):
    g = load_named("bouquet2")
    bound = RatPoly([-12, 0, 1])
    for r in (2, 3):
        cert = lift_regular_with_loops(g, r)
        if cert.verdict != "one-sided-ramanujan" or P.compare_largest_roots(cert.new_poly, bound) > 0:
            return False, f"r={r} verdict {cert.verdict}"
        if r == 2:
            polys = {}
            for sigma in product(uniform_sr(2).elements, repeat=g.num_edges):
                polys[sigma] = new_char_poly(g, sigma)
            if polys[tuple(cert.labeling)] != cert.new_poly:
                return False, "certificate disagrees with enumeration"
            good = [s for s, p in polys.items() if P.compare_largest_roots(p, bound) <= 0]
            if tuple(cert.labeling) not in good:
                return False, "enumeration rejects the chosen labeling"
    return True, f"{len(good)}/4 labelings within 2*sqrt(3) at r=2"


CRITERIA: dict[str, tuple[Callable, float | None]] = {
    "A1": (a1, 1.0),
    "A2": (a2, 120.0),
    "A3": (a3, 300.0),
    "A4": (a4, None),
    "A5": (a5, 600.0),
    "A6": (a6, None),
    "A7": (a7, None),
    "A8": (a8, None),
    "A9": (a9, None),
    "A10": (a10, None),
    "A11": (a11, None),
    "A12": (a12, None),
}


def run_criterion(cid: str, corpus: list[CorpusGraph] | None = None) -> CriterionResult:
    if cid not in CRITERIA:
        raise KeyError(f"unknown criterion {cid}; choose from {', '.join(CRITERIA)}")
    corpus = load_corpus() if corpus is None else corpus
    fn, limit = CRITERIA[cid]
    start = time.perf_counter()
    ok, detail = fn(corpus)
    seconds = time.perf_counter() - start
    if limit is not None and seconds > limit:
        ok, detail = False, f"{detail}; took {seconds:.1f}s > {limit:.0f}s"
    return CriterionResult(cid, bool(ok), seconds, detail, limit)


def run_all(only: list[str] | None = None, corpus: list[CorpusGraph] | None = None) -> list[CriterionResult]:
    corpus = load_corpus() if corpus is None else corpus
    return [run_criterion(cid, corpus) for cid in (only or list(CRITERIA))]

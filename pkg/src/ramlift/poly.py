"""Exact rational polynomials with Sturm-based real-root machinery.

Everything here is exact: coefficients are ``Fraction`` and all root
statements are certified with Sturm sequences on square-free parts.
Roots of different polynomials are compared by isolating the roots of the
square-free part of their product, so ties are detected exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_TOL = Fraction(1, 2**40)


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


class NoRealRoot(ValueError):
    pass


class RatPoly:
    """Dense univariate polynomial over Q, coefficients lowest degree first."""

    def __init__(self, coeffs: Iterable[object] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    # construction -----------------------------------------------------
    @classmethod
    def x(cls) -> RatPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: object) -> RatPoly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[object]) -> RatPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # basic protocol -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x: object) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __neg__(self):
        return RatPoly([-a for a in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([a * other for a in self.coeffs])
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RatPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> RatPoly:
        return RatPoly([k * a for k, a in enumerate(self.coeffs)][1:])

    def monic(self) -> RatPoly:
        if not self.coeffs:
            return self
        return self * (1 / self.lead)

    def divmod(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 1)
        inv_lead = 1 / other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv_lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RatPoly(q), RatPoly(rem[:dq])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def compose_scale(self, s: object) -> RatPoly:
        """p(s*x)."""
        s = Fraction(s)
        return RatPoly([a * s**k for k, a in enumerate(self.coeffs)])

    def is_even(self) -> bool:
        return all(a == 0 for k, a in enumerate(self.coeffs) if k % 2)

    def is_odd(self) -> bool:
        return all(a == 0 for k, a in enumerate(self.coeffs) if k % 2 == 0)

    # cached real-root data ----------------------------------------------
    @cached_property
    def squarefree_factors(self) -> tuple[RatPoly, ...]:
        """Yun decomposition: self = c * prod_i f_i^(i+1), f_i square-free."""
        return tuple(_yun(self))

    @cached_property
    def squarefree_part(self) -> RatPoly:
        out = RatPoly([1])
        for f in self.squarefree_factors:
            out = out * f
        return out.monic()

    @cached_property
    def sturm(self) -> tuple[RatPoly, ...]:
        return tuple(sturm_sequence(self.squarefree_part))


def _as_poly(x: object) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RatPoly([x])
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def div_exact(f: RatPoly, g: RatPoly) -> RatPoly:
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = f.divmod(g)
    if not r.is_zero():
        raise NotDivisible(f"({f}) is not divisible by ({g}); remainder {r}")
    return q


def _yun(f: RatPoly) -> list[RatPoly]:
    if f.degree < 1:
        return []
    f = f.monic()
    fp = f.derivative()
    a = gcd(f, fp)
    b = div_exact(f, a)
    c = div_exact(fp, a)
    d = c - b.derivative()
    out = []
    while b.degree >= 1:
        a = gcd(b, d)
        out.append(a)
        b = div_exact(b, a)
        c = div_exact(d, a)
        d = c - b.derivative()
    # trailing constant factors are unit multiples; keep list length meaningful
    while out and out[-1].degree < 1:
        out.pop()
    return out


def sturm_sequence(p: RatPoly) -> list[RatPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq: Sequence[RatPoly], x: Fraction | None, side: int = 0) -> int:
    if x is None:
        # side=+1 for +infinity, -1 for -infinity
        return _variations(_sign(s.lead) * (side if s.degree % 2 else 1) for s in seq)
    return _variations(_sign(s(x)) for s in seq)


def count_distinct_roots(p: RatPoly, lo: object | None = None, hi: object | None = None) -> int:
    """Number of distinct real roots of p in (lo, hi]; None means infinite."""
    if p.degree < 1:
        return 0
    seq = p.sturm
    vlo = _var_at(seq, None, -1) if lo is None else _var_at(seq, Fraction(lo))
    vhi = _var_at(seq, None, +1) if hi is None else _var_at(seq, Fraction(hi))
    return vlo - vhi


def count_roots(p: RatPoly, lo: object | None = None, hi: object | None = None) -> int:
    """Real roots of p in (lo, hi] counted with multiplicity."""
    total = 0
    for mult, f in enumerate(p.squarefree_factors, start=1):
        total += mult * count_distinct_roots(f, lo, hi)
    return total


def is_real_rooted(p: RatPoly) -> bool:
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined roots")
    return count_roots(p) == p.degree


def cauchy_bound(p: RatPoly) -> Fraction:
    lead = abs(p.lead)
    return 1 + max((abs(a) / lead for a in p.coeffs[:-1]), default=Fraction(0))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in [lo, hi] (Stern-Brocot)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share integer part fl; recurse on reciprocals of fractional parts
    rest = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


@dataclass(frozen=True)
class RootBracket:
    lower: Fraction
    upper: Fraction
    multiplicity_count: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)


def largest_root(p: RatPoly, tol: object = DEFAULT_TOL) -> RootBracket:
    """Bracket (lower, upper] of width <= tol around the largest real root.

    Bisection on Sturm counts from the Cauchy bound; a bracket collapses to
    a point when the root is detected to be rational.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.is_zero() or count_distinct_roots(p.squarefree_part) == 0:
        raise NoRealRoot(f"{p} has no real root")
    sf = p.squarefree_part
    if sf.degree == 1:
        r = -sf.coeffs[0] / sf.coeffs[1]
        return RootBracket(r, r, count_roots(p, r - 1, r))
    b = cauchy_bound(sf)
    lo, hi = -b - 1, b
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_distinct_roots(sf, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
        if sf(hi) == 0:
            return RootBracket(hi, hi, _mult_at(p, hi))
    q = simplest_between(lo, hi)
    if q > lo and sf(q) == 0:
        return RootBracket(q, q, _mult_at(p, q))
    return RootBracket(lo, hi, count_roots(p, lo, hi))


def _mult_at(p: RatPoly, r: Fraction) -> int:
    m = 0
    q = p
    lin = RatPoly([-r, 1])
    while q(r) == 0:
        q = div_exact(q, lin)
        m += 1
    return m


def smallest_root(p: RatPoly, tol: object = DEFAULT_TOL) -> RootBracket:
    q = RatPoly([a * (-1) ** k for k, a in enumerate(p.coeffs)])
    b = largest_root(q, tol)
    return RootBracket(-b.upper, -b.lower, b.multiplicity_count)


# ---------------------------------------------------------------------------
# exact root ordering


def isolate_roots(p: RatPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], increasing, each holding one distinct root of p."""
    sf = p.squarefree_part
    if sf.degree < 1:
        return []
    b = cauchy_bound(sf)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b - 1, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_distinct_roots(sf, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def _multiplicity_in(p: RatPoly, lo: Fraction, hi: Fraction) -> int:
    return count_roots(p, lo, hi)


def joint_root_ranks(polys: Sequence[RatPoly]) -> list[list[int]]:
    """For each poly, its real roots (with multiplicity) as ranks on a common scale.

    Equal ranks mean exactly equal roots.  Ranks are increasing integers.
    """
    prod = RatPoly([1])
    for f in polys:
        if f.degree >= 1:
            prod = prod * f.squarefree_part
    intervals = isolate_roots(prod)
    out = []
    for f in polys:
        ranks = []
        for idx, (lo, hi) in enumerate(intervals):
            ranks.extend([idx] * _multiplicity_in(f, lo, hi))
        out.append(ranks)
    return out


def compare_largest_roots(f: RatPoly, g: RatPoly) -> int:
    """Sign of (largest real root of f) - (largest real root of g), exactly."""
    rf, rg = joint_root_ranks([f, g])
    if not rf or not rg:
        raise NoRealRoot("both polynomials need a real root")
    return (rf[-1] > rg[-1]) - (rf[-1] < rg[-1])


def max_root_at_most(f: RatPoly, bound: object) -> bool:
    """True iff every real root of f is <= the rational bound."""
    return count_distinct_roots(f.squarefree_part, bound, None) == 0


def interlaces(g: RatPoly, f: RatPoly) -> bool:
    """True iff the roots of g (degree n-1) interlace those of f (degree n)."""
    if g.degree != f.degree - 1:
        raise ValueError(f"degree mismatch: deg g = {g.degree}, deg f = {f.degree}")
    if not (is_real_rooted(f) and (g.degree == 0 or is_real_rooted(g))):
        raise ValueError("interlaces requires real-rooted inputs")
    if g.degree == 0:
        return True
    ra, rb = joint_root_ranks([f, g])
    a = ra[::-1]  # a[0] largest
    b = rb[::-1]
    n = f.degree
    for i in range(n - 1):
        if not (a[i + 1] <= b[i] <= a[i]):
            return False
    return True


def _pair_common_interlacing(ra: list[int], rb: list[int]) -> bool:
    a, b = ra[::-1], rb[::-1]
    for i in range(len(a) - 1):
        if a[i + 1] > b[i] or b[i + 1] > a[i]:
            return False
    return True


def common_interlacing(fs: Sequence[RatPoly]) -> bool:
    """Pairwise chain condition of a common interlacing over all pairs."""
    fs = list(fs)
    if not fs:
        return True
    n = fs[0].degree
    sgn = _sign(fs[0].lead)
    for f in fs:
        if f.degree != n:
            raise ValueError("common_interlacing requires equal degrees")
        if _sign(f.lead) != sgn:
            raise ValueError("common_interlacing requires equal leading signs")
        if not is_real_rooted(f):
            raise ValueError(f"{f} is not real rooted")
    ranks = joint_root_ranks(fs)
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if not _pair_common_interlacing(ranks[i], ranks[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# JSON form: {"coeffs": ["num/den", ...]} lowest degree first


def fraction_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: object) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not an exact rational: {s!r}")


def poly_to_json(p: RatPoly) -> dict:
    return {"coeffs": [fraction_to_str(a) for a in p.coeffs]}


def poly_from_json(obj: dict) -> RatPoly:
    return RatPoly(parse_fraction(a) for a in obj["coeffs"])


def bracket_to_json(b: RootBracket) -> dict:
    return {
        "lower": fraction_to_str(b.lower),
        "upper": fraction_to_str(b.upper),
        "multiplicity_count": b.multiplicity_count,
    }


def bracket_from_json(obj: dict) -> RootBracket:
    return RootBracket(parse_fraction(obj["lower"]), parse_fraction(obj["upper"]), int(obj["multiplicity_count"]))

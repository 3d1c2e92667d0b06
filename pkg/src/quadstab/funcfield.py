"""Quadratic maps over rational function fields F_q(t), odd characteristic:
polynomial/rational arithmetic in t, valuations, square tests, the
construction whose n-th iterate is irreducible over F_q(t) but reducible at
every finite prime, the second-iterate variant, and verification by
specializing t and factoring over extension fields.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from . import polyff
from .config import DEFAULT_CONFIG
from .errors import HypothesisViolation, QuadstabError
from .finitefield import ExtField, PrimeField


class _Infinity:
    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()  # the place at infinity (degree valuation)

NEG_INF = float("-inf")


@dataclass(frozen=True)
class FqPoly:
    """Polynomial in t over F_q; coeffs ascending, normalized."""

    field: object
    coeffs: tuple

    @staticmethod
    def make(field, coeffs: Iterable) -> "FqPoly":
        cs = [field.element(c) if isinstance(c, int) else c for c in coeffs]
        return FqPoly(field, tuple(polyff.trim(cs)))

    @staticmethod
    def zero(field) -> "FqPoly":
        return FqPoly(field, ())

    @staticmethod
    def one(field) -> "FqPoly":
        return FqPoly(field, (field.one,))

    @staticmethod
    def t(field) -> "FqPoly":
        return FqPoly(field, (field.zero, field.one))

    @staticmethod
    def constant(field, c) -> "FqPoly":
        return FqPoly.make(field, [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def _wrap(self, cs: list) -> "FqPoly":
        return FqPoly(self.field, tuple(cs))

    def __add__(self, other: "FqPoly") -> "FqPoly":
        return self._wrap(polyff.poly_add(self.field, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        return self._wrap(polyff.poly_sub(self.field, list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "FqPoly":
        return self._wrap(polyff.poly_neg(self.field, list(self.coeffs)))

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        return self._wrap(polyff.poly_mul(self.field, list(self.coeffs), list(other.coeffs)))

    def scale(self, c) -> "FqPoly":
        return self._wrap(polyff.poly_scalar(self.field, list(self.coeffs), c))

    def __pow__(self, e: int) -> "FqPoly":
        return self._wrap(polyff.poly_pow(self.field, list(self.coeffs), e))

    def __divmod__(self, other: "FqPoly"):
        q, r = polyff.poly_divmod(self.field, list(self.coeffs), list(other.coeffs))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[1]

    def gcd(self, other: "FqPoly") -> "FqPoly":
        return self._wrap(polyff.poly_gcd(self.field, list(self.coeffs), list(other.coeffs)))

    def monic(self) -> "FqPoly":
        return self._wrap(polyff.monic(self.field, list(self.coeffs)))

    def evaluate(self, x):
        return polyff.poly_eval(self.field, list(self.coeffs), x)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            cs = str(c if not isinstance(c, tuple) else list(c))
            parts.append(cs if i == 0 else (f"{cs}*t^{i}" if i > 1 else f"{cs}*t"))
        return " + ".join(reversed(parts))


@dataclass(frozen=True)
class FqRat:
    """num/den in lowest terms, den monic; the rational function field."""

    num: FqPoly
    den: FqPoly

    @staticmethod
    def make(num: FqPoly, den: FqPoly | None = None) -> "FqRat":
        field = num.field
        if den is None:
            den = FqPoly.one(field)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            return FqRat(FqPoly.zero(field), FqPoly.one(field))
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading
        if lead != field.one:
            inv = field.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        return FqRat(num, den)

    @property
    def field(self):
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other: "FqRat") -> "FqRat":
        return FqRat.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "FqRat") -> "FqRat":
        return FqRat.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "FqRat":
        return FqRat(-self.num, self.den)

    def __mul__(self, other: "FqRat") -> "FqRat":
        return FqRat.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "FqRat") -> "FqRat":
        if other.is_zero:
            raise ZeroDivisionError
        return FqRat.make(self.num * other.den, self.den * other.num)

    def scale(self, c) -> "FqRat":
        return FqRat.make(self.num.scale(c), self.den)

    def __str__(self) -> str:
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def rat(poly: FqPoly) -> FqRat:
    return FqRat.make(poly)


# ---------------------------------------------------------------------------
# valuations and square tests


def _poly_valuation(a: FqPoly, P: FqPoly) -> int:
    if a.is_zero:
        raise ValueError("valuation of 0")
    v = 0
    while True:
        q, r = divmod(a, P)
        if not r.is_zero:
            return v
        v += 1
        a = q


def valuation(x: FqRat | FqPoly, P) -> int:
    """v_P(x) for a finite prime P (monic irreducible in t) or INFINITY
    (where v = deg den - deg num)."""
    if isinstance(x, FqPoly):
        x = rat(x)
    if x.is_zero:
        raise ValueError("valuation of 0")
    if P is INFINITY:
        return x.den.degree - x.num.degree
    if not isinstance(P, FqPoly) or not P.is_monic or P.degree < 1:
        raise ValueError("P must be a monic polynomial prime or INFINITY")
    return _poly_valuation(x.num, P) - _poly_valuation(x.den, P)


def _monic_sqrt(field, w: list) -> list | None:
    """v with v*v = w for monic w of even degree, by descending coefficient
    matching (odd characteristic only); None if w is not a square."""
    d = polyff.degree(w)
    if d % 2 != 0:
        return None
    half = d // 2
    v = [field.zero] * (half + 1)
    v[half] = field.one
    inv2 = field.inv(field.add(field.one, field.one))
    for i in range(half - 1, -1, -1):
        sq = polyff.poly_mul(field, v, v)
        sq += [field.zero] * (d + 1 - len(sq))
        c = field.sub(w[half + i], sq[half + i])
        v[i] = field.mul(c, inv2)
    if polyff.poly_mul(field, v, v) == polyff.trim(list(w)):
        return v
    return None


def poly_sqrt(x: FqPoly) -> FqPoly | None:
    """Exact square root of a polynomial, or None."""
    if x.is_zero:
        return x
    field = x.field
    lead = x.leading
    if not field.is_square(lead):
        return None
    core = _monic_sqrt(field, polyff.monic(field, list(x.coeffs)))
    if core is None:
        return None
    return FqPoly(field, tuple(core)).scale(field.sqrt(lead))


def is_square_poly(x: FqPoly) -> bool:
    return x.is_zero or poly_sqrt(x) is not None


def is_square_ratfunc(x: FqRat | FqPoly) -> bool:
    """True iff x is a square in F_q(t): every finite valuation even, even
    degree at infinity, and the leading-coefficient ratio a square in F_q.
    Equivalent to num*den being a square polynomial (den is monic)."""
    if isinstance(x, FqPoly):
        x = rat(x)
    if x.is_zero:
        return True
    return is_square_poly(x.num * x.den)


def sqrt_ratfunc(x: FqRat) -> FqRat | None:
    if x.is_zero:
        return x
    rn = poly_sqrt(x.num)
    rd = poly_sqrt(x.den)
    if rn is None or rd is None:
        return None
    return FqRat.make(rn, rd)


# ---------------------------------------------------------------------------
# quadratic maps over F_q(t)


@dataclass(frozen=True)
class QuadMapFq:
    """f(x) = (x - gamma)^2 + gamma + m over F_q(t)."""

    gamma: FqRat
    m: FqRat

    @property
    def field(self):
        return self.gamma.field

    @property
    def critical_value(self) -> FqRat:
        return self.gamma + self.m

    @property
    def is_degenerate(self) -> bool:
        return self.critical_value.is_zero

    def expanded_coefficients(self) -> tuple[FqRat, FqRat]:
        """(constant, linear) of x^2 + c1*x + c0."""
        g = self.gamma
        c1 = -(g + g)
        c0 = g * g + g + self.m
        return c0, c1

    def __str__(self) -> str:
        return f"(x - ({self.gamma}))^2 + ({self.critical_value})"


def quadmap_fq(gamma: FqPoly | FqRat, m: FqPoly | FqRat) -> QuadMapFq:
    if isinstance(gamma, FqPoly):
        gamma = rat(gamma)
    if isinstance(m, FqPoly):
        m = rat(m)
    if gamma.field.char == 2:
        raise QuadstabError("odd characteristic required")
    return QuadMapFq(gamma, m)


def base_orbit(m: FqRat, depth: int) -> list[FqRat]:
    """[f0^1(0), ..., f0^depth(0)] for f0(x) = x^2 + m over F_q(t)."""
    out = []
    b = FqRat.make(FqPoly.zero(m.field))
    for _ in range(depth):
        b = b * b + m
        out.append(b)
    return out


def iterates_at_critical(f: QuadMapFq, depth: int) -> list[FqRat]:
    """[f^1(gamma), ..., f^depth(gamma)] via f^i(gamma) = f0^i(0) + gamma."""
    return [b + f.gamma for b in base_orbit(f.m, depth)]


def refined_orbit_criterion(f: QuadMapFq, n: int) -> tuple[bool, int | None]:
    """The square-chain criterion over F_q(t), with the halved elements
    rescuing square levels (division by 2 is valid: odd characteristic).
    Returns (certified, first_bad_level)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if f.field.char == 2:
        raise QuadstabError("odd characteristic required")
    iterates = iterates_at_critical(f, n)
    neg_fc = -f.critical_value
    if is_square_ratfunc(neg_fc):
        return False, 1
    half = FqRat.make(FqPoly.constant(f.field, 1)).scale(
        f.field.inv(f.field.add(f.field.one, f.field.one))
    )
    for i in range(2, n + 1):
        value = iterates[i - 1]
        if not is_square_ratfunc(value):
            continue
        root = sqrt_ratfunc(value)
        x = (neg_fc + f.gamma) if i == 2 else (iterates[i - 2] - f.gamma)
        e_plus = (x + root) * half
        e_minus = (x - root) * half
        if is_square_ratfunc(e_plus) or is_square_ratfunc(e_minus):
            return False, i
    return True, None


# ---------------------------------------------------------------------------
# constructions


def construct_everywhere_reducible(field, n: int, m: FqPoly) -> QuadMapFq:
    """gamma = m^(2^(n-1)) - f0^n(0) for odd-degree polynomial m, n >= 3:
    the n-th iterate is irreducible over F_q(t) but reducible at every
    finite prime (f^n(gamma) = m^(2^(n-1)) is a global square)."""
    if field.char == 2:
        raise HypothesisViolation("characteristic", "odd characteristic required")
    if n < 3:
        raise HypothesisViolation("n", f"n must be >= 3, got {n}")
    if m.is_zero or m.degree % 2 == 0:
        raise HypothesisViolation("degree", "m must have odd degree")
    if 2 ** (n - 1) * m.degree > 2**DEFAULT_CONFIG.orbit_depth_cap:
        raise HypothesisViolation("size", "orbit degree exceeds the cap")
    mr = rat(m)
    orbit = base_orbit(mr, n)
    gamma = FqRat.make(m ** (2 ** (n - 1))) - orbit[n - 1]
    f = QuadMapFq(gamma, mr)
    top = orbit[n - 1] + gamma
    assert top.num == m ** (2 ** (n - 1)) and top.is_polynomial
    return f


@dataclass(frozen=True)
class ValuationCertificate:
    """The two valuation witnesses behind the construction: an odd-order
    finite prime of m where every orbit value keeps the same odd valuation,
    and the infinite place where gamma has odd valuation dominating the
    orbit."""

    finite_prime: FqPoly
    v_finite_m: int
    v_finite_orbit: list[int]
    v_infinity_gamma: int
    v_infinity_orbit: list[int]


def valuation_certificates(f: QuadMapFq, n: int) -> ValuationCertificate:
    field = f.field
    m = f.m
    _, factors = polyff.factor(field, list(m.num.coeffs), random.Random(DEFAULT_CONFIG.seed))
    q1 = None
    v1 = 0
    for fac, e in factors:
        if polyff.degree(fac) >= 1 and e % 2 == 1:
            q1 = FqPoly(field, tuple(fac))
            v1 = e
            break
    if q1 is None:
        raise QuadstabError("m has no odd-multiplicity finite prime")
    orbit = base_orbit(m, n)
    v_orbit = [valuation(b, q1) for b in orbit]
    v_inf_gamma = valuation(f.gamma, INFINITY)
    v_inf_orbit = [valuation(b, INFINITY) for b in orbit]
    return ValuationCertificate(q1, v1, v_orbit, v_inf_gamma, v_inf_orbit)


def construct_second_iterate_example(field, m: FqPoly, r) -> QuadMapFq:
    """The n = 2 variant: gamma = (m + r)^2 - m^2 - m for a constant r with
    r/2 a non-residue, so f^2(gamma) = (m + r)^2 and the halved element r/2
    blocks every square in the chain."""
    if field.char == 2:
        raise HypothesisViolation("characteristic", "odd characteristic required")
    r = field.element(r) if isinstance(r, int) else r
    half_r = field.mul(r, field.inv(field.add(field.one, field.one)))
    if field.is_square(half_r):
        raise HypothesisViolation("residue", "r/2 must be a non-residue in F_q")
    if m.is_zero or m.degree % 2 == 0:
        raise HypothesisViolation("degree", "m must have odd degree")
    rp = FqPoly.constant(field, r)
    gamma = (m + rp) ** 2 - m**2 - m
    f = QuadMapFq(rat(gamma), rat(m))
    # f^2(gamma) = gamma + m^2 + m = (m + r)^2
    second = iterates_at_critical(f, 2)[1]
    assert second.is_polynomial and second.num == (m + rp) ** 2
    certified, _ = refined_orbit_criterion(f, 2)
    if not certified:
        raise QuadstabError("second-iterate criterion unexpectedly failed")
    return f


# ---------------------------------------------------------------------------
# specialization


def _embed(base_field, target_field):
    """Embedding of F_q into the specialization field, as a callable."""
    if base_field == target_field:
        return lambda a: a
    if isinstance(base_field, PrimeField):
        if target_field.char != base_field.p:
            raise QuadstabError("characteristic mismatch")
        return lambda a: target_field.element(a)
    if base_field.k and target_field.k % base_field.k != 0:
        raise QuadstabError("no embedding: extension degrees incompatible")
    # send the generator to a root of the base modulus in the target field
    base_mod = [target_field.element(c) for c in base_field.modulus]
    root_candidates = polyff.roots(target_field, base_mod)
    if not root_candidates:
        raise QuadstabError("modulus has no root in the target field")
    root = sorted(root_candidates)[0]

    def phi(a):
        acc = target_field.zero
        for c in reversed(a):
            acc = target_field.add(target_field.mul(acc, root), target_field.element(c))
        return acc

    return phi


def specialize_and_factor(f: QuadMapFq, n: int, c, target_field) -> tuple[int, ...]:
    """Substitute t = c (an element of the target field), iterate n times,
    factor over that field; returns the sorted factor-degree multiset.
    Raises on a pole of gamma or m at c."""
    base_field = f.field
    phi = _embed(base_field, target_field)

    def eval_rat(x: FqRat):
        den = polyff.poly_eval(target_field, [phi(co) for co in x.den.coeffs], c)
        if den == target_field.zero:
            raise ZeroDivisionError(f"pole at t = {c}")
        num = polyff.poly_eval(target_field, [phi(co) for co in x.num.coeffs], c)
        return target_field.mul(num, target_field.inv(den))

    g = eval_rat(f.gamma)
    mv = eval_rat(f.m)
    # expanded quadratic over the target field
    two_g = target_field.add(g, g)
    c1 = target_field.neg(two_g)
    c0 = target_field.add(target_field.add(target_field.mul(g, g), g), mv)
    h = [c0, c1, target_field.one]
    cap = DEFAULT_CONFIG.factor_degree_cap
    if 2**n > cap:
        raise QuadstabError(f"degree 2^{n} exceeds factor cap {cap}")
    cur = list(h)
    for _ in range(n - 1):
        sq = polyff.poly_mul(target_field, cur, cur)
        lin = polyff.poly_scalar(target_field, cur, c1)
        cur = polyff.poly_add(target_field, sq, lin)
        cur = polyff.poly_add(target_field, cur, [c0] if c0 != target_field.zero else [])
    _, factors = polyff.factor(target_field, cur, random.Random(DEFAULT_CONFIG.seed))
    degs = []
    for fac, e in factors:
        degs.extend([polyff.degree(fac)] * e)
    return tuple(sorted(degs))


def all_specializations(f: QuadMapFq, n: int, j: int) -> dict:
    """Factor-degree multisets of the specialization at every t = c in
    F_(p^j) (poles skipped): {c: degrees}."""
    p = f.field.char
    target = PrimeField(p) if j == 1 else ExtField(p, j)
    out = {}
    for c in target.elements():
        try:
            out[c] = specialize_and_factor(f, n, c, target)
        except ZeroDivisionError:
            continue
    return out

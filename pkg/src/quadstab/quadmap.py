"""Monic integer quadratics f(x) = (x - gamma)^2 + gamma + m: critical
orbits, irreducibility and stability criteria, and the constructor producing
maps whose n-th and later iterates are irreducible over Q yet reducible
modulo every prime.

Everything is driven by the adjusted critical values
-f(gamma), f^2(gamma), ..., f^N(gamma): the iterate f^n is irreducible over
the base field whenever none of the first n of them is a square.  The key
computational identity is f^n(gamma) = f0^n(0) + gamma with f0(x) = x^2 + m,
so one orbit of x^2 + m at 0 feeds every check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    factor,
    is_square,
    is_square_fraction,
    legendre,
    valuation,
)
from .config import DEFAULT_CONFIG
from .errors import HypothesisViolation


@dataclass(frozen=True)
class QuadMapZ:
    """f(x) = (x - gamma)^2 + gamma + m; gamma is the unique critical point."""

    gamma: int
    m: int

    def __call__(self, x: int) -> int:
        return (x - self.gamma) ** 2 + self.gamma + self.m

    @property
    def coefficients(self) -> tuple[int, int, int]:
        """(1, -2*gamma, gamma^2 + gamma + m): the expanded monic form."""
        g = self.gamma
        return (1, -2 * g, g * g + g + self.m)

    @property
    def critical_value(self) -> int:
        return self.gamma + self.m  # f(gamma)

    @property
    def is_degenerate(self) -> bool:
        """f(gamma) = 0, i.e. (x - gamma) divides every iterate."""
        return self.gamma + self.m == 0

    def __str__(self) -> str:
        return f"(x - {self.gamma})^2 + {self.gamma + self.m}"


@dataclass(frozen=True)
class CriticalOrbit:
    """base[i-1] = f0^i(0) for the companion map f0(x) = x^2 + m."""

    map: QuadMapZ
    base: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.base)

    def base_value(self, i: int) -> int:
        """f0^i(0), 1 <= i <= depth."""
        return self.base[i - 1]

    def iterate_at_critical(self, i: int) -> int:
        """f^i(gamma) = f0^i(0) + gamma."""
        return self.base[i - 1] + self.map.gamma

    def adjusted(self, n: int | None = None) -> list[int]:
        """[-f(gamma), f^2(gamma), ..., f^n(gamma)] — the criterion chain."""
        n = self.depth if n is None else n
        g = self.map.gamma
        return [-(g + self.map.m)] + [self.base[i] + g for i in range(1, n)]


def critical_orbit(f: QuadMapZ, depth: int, depth_cap: int | None = None) -> CriticalOrbit:
    """Exact orbit of x^2 + m at 0 to the given depth.

    Values square each step; the cap (config default 12) guards against
    accidental 2^depth-digit blowups and can be raised explicitly.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    cap = DEFAULT_CONFIG.orbit_depth_cap if depth_cap is None else depth_cap
    if depth > cap:
        raise ValueError(f"orbit depth {depth} exceeds cap {cap}; pass depth_cap to override")
    vals = []
    b = 0
    for _ in range(depth):
        b = b * b + f.m
        vals.append(b)
    return CriticalOrbit(f, tuple(vals))


def adjusted_values(f: QuadMapZ, n: int, depth_cap: int | None = None) -> list[int]:
    return critical_orbit(f, n, depth_cap).adjusted()


# ---------------------------------------------------------------------------
# irreducibility criteria over Q


@dataclass(frozen=True)
class CriterionResult:
    certified: bool
    square_index: int | None = None  # first chain index that is a square

    @property
    def status(self) -> str:
        return "IRREDUCIBLE_CERTIFIED" if self.certified else "INCONCLUSIVE"


def orbit_criterion(f: QuadMapZ, n: int, depth_cap: int | None = None) -> CriterionResult:
    """Certify f^n irreducible over Q if no adjusted critical value through
    level n is a square.  One-directional over Q: a square in the chain
    yields INCONCLUSIVE, never a reducibility claim."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for i, value in enumerate(adjusted_values(f, n, depth_cap), start=1):
        if is_square(value):
            return CriterionResult(False, i)
    return CriterionResult(True)


def refined_orbit_criterion(f: QuadMapZ, n: int, depth_cap: int | None = None) -> CriterionResult:
    """Sharper criterion: a square f^i(gamma) = r^2 in the chain is tolerated
    when both half-elements (x +- r)/2 are non-square rationals, where
    x = -f(gamma) + gamma at level 2 and x = f^(i-1)(gamma) - gamma above."""
    if n < 2:
        raise ValueError("n must be >= 2")
    orbit = critical_orbit(f, n, depth_cap)
    g = f.gamma
    if is_square(-f.critical_value):
        return CriterionResult(False, 1)
    for i in range(2, n + 1):
        value = orbit.iterate_at_critical(i)
        if not is_square(value):
            continue
        r = isqrt(value)
        x = (-f.critical_value + g) if i == 2 else (orbit.iterate_at_critical(i - 1) - g)
        if is_square_fraction(Fraction(x + r, 2)) or is_square_fraction(Fraction(x - r, 2)):
            return CriterionResult(False, i)
    return CriterionResult(True)


# ---------------------------------------------------------------------------
# stability certificates


@dataclass(frozen=True)
class StabilityCertificate:
    """kind PARITY: gamma + m odd and -(gamma + m) a non-square, so every
    iterate is irreducible over Q.  kind VALUATION: some prime p has v_p(m)
    odd positive and v_p(gamma) > v_p(m) (Eisenstein-flavoured).  kind NONE
    carries a note (criterion failed, or factoring budget ran out)."""

    kind: str  # PARITY | VALUATION | NONE
    evidence: dict

    def __bool__(self) -> bool:
        return self.kind != "NONE"


def stability_by_parity(f: QuadMapZ) -> StabilityCertificate:
    c = f.critical_value
    odd = c % 2 != 0
    neg_square = is_square(-c)
    if odd and not neg_square:
        return StabilityCertificate("PARITY", {"critical_value": c})
    note = "gamma + m is even" if not odd else "-(gamma + m) is a square"
    return StabilityCertificate("NONE", {"critical_value": c, "note": note})


def stability_by_valuation(
    f: QuadMapZ, budget: FactorBudget = DEFAULT_BUDGET
) -> StabilityCertificate:
    if f.m == 0:
        return StabilityCertificate("NONE", {"note": "m = 0 has no odd valuation"})
    fac = factor(f.m, budget)
    for p, e in fac.factors:
        if e % 2 == 1 and (f.gamma == 0 or valuation(f.gamma, p) > e):
            v_gamma = None if f.gamma == 0 else valuation(f.gamma, p)
            return StabilityCertificate(
                "VALUATION", {"p": p, "v_m": e, "v_gamma": v_gamma}
            )
    note = "no qualifying prime among known factors"
    if not fac.complete:
        note += " (factoring budget exhausted; cofactor unresolved)"
    return StabilityCertificate("NONE", {"note": note})


def rigid_valuation_probe(m: int, p: int, depth: int, depth_cap: int | None = None) -> bool:
    """Check the rigid-divisibility pattern of v_p along the orbit of
    x^2 + m at 0: once v_p(f0^k(0)) = e > 0, every index divisible by k has
    the same valuation e, through the probed depth."""
    orbit = critical_orbit(QuadMapZ(0, m), depth, depth_cap)
    first = None
    for k in range(1, depth + 1):
        v = orbit.base_value(k)
        if v != 0 and valuation(v, p) > 0:
            first = k
            break
    if first is None:
        raise ValueError(f"no orbit value through depth {depth} is divisible by {p}")
    e = valuation(orbit.base_value(first), p)
    for j in range(first, depth + 1, first):
        if valuation(orbit.base_value(j), p) != e:
            return False
    return True


# ---------------------------------------------------------------------------
# the constructor: irreducible over Q, reducible mod every prime


def _required_s_parity(n: int, m: int) -> int:
    """1 (odd) if m is even or n is odd, else 0 (even)."""
    return 1 if (m % 2 == 0 or n % 2 == 1) else 0


def construct_everywhere_reducible(n: int, m: int, s: int) -> QuadMapZ:
    """Build f = (x - gamma)^2 + gamma + m with gamma = s - f0^n(0).

    Requires s a perfect square exceeding f0^(n-1)(0)^2, odd when m is even
    or n is odd and even otherwise.  The result is stable over Q (all
    iterates irreducible) while f^i for every i >= n is reducible modulo
    every prime, because f^n(gamma) = s is a global square.
    """
    if n < 2:
        raise HypothesisViolation("n", f"n must be >= 2, got {n}")
    if not is_square(s):
        raise HypothesisViolation("squareness", f"s = {s} is not a perfect square")
    if s % 2 != _required_s_parity(n, m):
        want = "odd" if _required_s_parity(n, m) else "even"
        raise HypothesisViolation("parity", f"s must be {want} for n={n}, m={m}")
    orbit = critical_orbit(QuadMapZ(0, m), n, depth_cap=max(n, DEFAULT_CONFIG.orbit_depth_cap))
    prev = orbit.base_value(n - 1)
    if s <= prev * prev:
        raise HypothesisViolation("size", f"s must exceed f0^(n-1)(0)^2 = {prev * prev}")
    f = QuadMapZ(s - orbit.base_value(n), m)
    # the defining identity and the stability hypothesis, rechecked
    assert f(f.gamma) == orbit.base_value(1) + f.gamma
    cert = stability_by_parity(f)
    if not cert:
        raise HypothesisViolation("stability", f"parity certificate failed: {cert.evidence}")
    return f


def suggest_s(n: int, m: int, count: int) -> list[int]:
    """The `count` smallest valid s for construct_everywhere_reducible,
    ascending."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if n < 2:
        raise HypothesisViolation("n", f"n must be >= 2, got {n}")
    orbit = critical_orbit(QuadMapZ(0, m), n - 1, depth_cap=max(n, DEFAULT_CONFIG.orbit_depth_cap))
    prev = abs(orbit.base_value(n - 1))
    parity = _required_s_parity(n, m)
    a = prev + 1
    if a % 2 != parity:
        a += 1
    out = []
    while len(out) < count:
        out.append(a * a)
        a += 2
    return out


def reducible_mod_p(f: QuadMapZ, n: int, p: int, depth_cap: int | None = None) -> bool:
    """Certify that the n-th iterate of f mod p is reducible: true iff the
    level-n adjusted value is a square (or zero) mod p.  Over a prime field
    the chain criterion is two-directional, so a square at any level kills
    irreducibility; this checks level n alone and is therefore sufficient,
    not necessary."""
    if n < 1:
        raise ValueError("n must be >= 1")
    orbit = critical_orbit(f, n, depth_cap)
    value = -f.critical_value if n == 1 else orbit.iterate_at_critical(n)
    return legendre(value % p, p) != -1

"""Polynomials over F_p: the independent oracle that reduces an integer
quadratic mod p, composes it, and tests/factors the result directly.

This is the ground truth the criterion-based modules are validated against:
a reducibility claim for f^n mod p is only trusted once the degree-2^n
polynomial has actually been built and split here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import polyff
from .config import DEFAULT_CONFIG
from .errors import DegreeCapExceeded, InseparableModulus
from .finitefield import PrimeField
from .quadmap import QuadMapZ


@dataclass(frozen=True)
class ModPoly:
    """Coefficients ascending, all in [0, p), no trailing zeros."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError("coefficients must be reduced mod p")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else str(c))
        return " + ".join(reversed(terms)) + f"  (mod {self.p})"


def make_modpoly(p: int, coeffs: list[int]) -> ModPoly:
    return ModPoly(p, tuple(polyff.trim([c % p for c in coeffs])))


def reduce_map(f: QuadMapZ, p: int) -> ModPoly:
    """Coefficient-wise reduction of the expanded quadratic mod p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    _, b, c = f.coefficients
    return make_modpoly(p, [c, b, 1])


def iterate_map_mod(g: ModPoly, n: int, degree_cap: int | None = None) -> ModPoly:
    """n-fold composition of a quadratic g with itself, coefficients mod p."""
    if g.degree != 2:
        raise ValueError("iterate_map_mod expects a quadratic")
    if n < 1:
        raise ValueError("n must be >= 1")
    cap = DEFAULT_CONFIG.iterate_degree_cap if degree_cap is None else degree_cap
    if 2**n > cap:
        raise DegreeCapExceeded(f"degree 2^{n} exceeds cap {cap}")
    field = PrimeField(g.p)
    c0, c1, c2 = g.coeffs
    h = list(g.coeffs)
    for _ in range(n - 1):
        # g(h) = c2*h^2 + c1*h + c0
        h2 = polyff.poly_mul(field, h, h)
        term2 = polyff.poly_scalar(field, h2, c2)
        term1 = polyff.poly_scalar(field, h, c1)
        h = polyff.poly_add(field, polyff.poly_add(field, term2, term1), [c0] if c0 else [])
    return ModPoly(g.p, tuple(h))


def is_irreducible_mod(g: ModPoly) -> bool:
    if g.degree < 1:
        return False
    return polyff.is_irreducible(PrimeField(g.p), list(g.coeffs))


def factor_mod(
    g: ModPoly,
    seed: int | None = None,
    degree_cap: int | None = None,
) -> list[tuple[ModPoly, int]]:
    """Complete factorization into monic irreducibles with multiplicities.
    Equal-degree splitting is randomized; the seed (config default) makes
    runs reproducible."""
    cap = DEFAULT_CONFIG.factor_degree_cap if degree_cap is None else degree_cap
    if g.degree > cap:
        raise DegreeCapExceeded(f"degree {g.degree} exceeds factor cap {cap}")
    field = PrimeField(g.p)
    rng = random.Random(DEFAULT_CONFIG.seed if seed is None else seed)
    unit, factors = polyff.factor(field, list(g.coeffs), rng)
    out = [(ModPoly(g.p, tuple(f)), e) for f, e in factors]
    if unit != 1:
        out.insert(0, (ModPoly(g.p, (unit,)), 1))
    return out


def frobenius_cycle_type(
    f: QuadMapZ, n: int, p: int, degree_cap: int | None = None
) -> tuple[int, ...]:
    """Sorted degrees of the irreducible factors of the n-th iterate of f
    mod p — the cycle type of Frobenius acting on the level-n roots.

    Raises InseparableModulus when the reduction is inseparable (p divides a
    critical-orbit discriminant); such p must be excluded from density
    statistics.
    """
    g = iterate_map_mod(reduce_map(f, p), n, degree_cap)
    field = PrimeField(p)
    coeffs = list(g.coeffs)
    deriv = polyff.poly_derivative(field, coeffs)
    if polyff.poly_gcd(field, coeffs, deriv) != [1]:
        raise InseparableModulus(f"iterate {n} of {f} is inseparable mod {p}")
    degs: list[int] = []
    for part, d in polyff.distinct_degree_decomposition(field, coeffs):
        degs.extend([d] * (polyff.degree(part) // d))
    return tuple(sorted(degs))

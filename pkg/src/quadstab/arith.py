"""Exact integer arithmetic: square tests, quadratic symbols, primality,
bounded factorization, square classes, and prime streams.

All routines are exact.  Square tests go through math.isqrt (integer Newton
iteration), never floating point: orbit values routinely exceed double
precision by hundreds of digits.  Factorization is budgeted — trial division
up to a bound, then Pollard rho with Brent cycle detection — and reports an
explicit composite cofactor when the budget runs out instead of guessing.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator

# Deterministic Miller-Rabin base set: correct for all n < 3.3e24 > 2^64.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_ROUNDS_LARGE = 40

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_square(x: int) -> bool:
    """True iff x is the square of an integer."""
    if x < 0:
        return False
    r = isqrt(x)
    return r * r == x


def is_square_fraction(x: Fraction) -> bool:
    """True iff x is the square of a rational (x >= 0, both parts squares)."""
    if x < 0:
        return False
    return is_square(x.numerator) and is_square(x.denominator)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0, by binary quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p).  p must be an odd prime (caller's duty; only
    oddness is checked here).  Agrees with the Euler criterion a^((p-1)/2)."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    return jacobi(a, p)


def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality: deterministic below 2**64, 40 strong probable-prime rounds
    above (bases drawn from a PRNG seeded with n, so results are stable)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        bases = _MR_BASES_64
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_MR_ROUNDS_LARGE)]
    return all(_miller_rabin_round(n, a, d, s) for a in bases)


# ---------------------------------------------------------------------------
# prime streams


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p < hi, ascending (segmented sieve)."""
    from . import kernels

    return kernels.sieve_range(lo, hi)


def primes_up_to(bound: int, segment_size: int = 1 << 21) -> Iterator[int]:
    """Stream the primes <= bound, ascending.  Restartable at any segment
    boundary: primes_up_to is equivalent to chaining primes_in_range over
    consecutive segments."""
    lo = 2
    while lo <= bound:
        hi = min(lo + segment_size, bound + 1)
        yield from primes_in_range(lo, hi)
        lo = hi


def primes(start: int = 2, segment_size: int = 1 << 20) -> Iterator[int]:
    """Unbounded ascending prime stream from `start`."""
    lo = max(start, 2)
    while True:
        yield from primes_in_range(lo, lo + segment_size)
        lo += segment_size


def count_primes(bound: int) -> int:
    """Number of primes <= bound."""
    from . import kernels

    return kernels.count_range(2, bound + 1)


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = 10**6
    rho_iterations: int = 10**7
    time_cap_ms: int = 30_000

    def __post_init__(self):
        if self.trial_bound <= 0 or self.rho_iterations <= 0 or self.time_cap_ms <= 0:
            raise ValueError("budget fields must be positive")


DEFAULT_BUDGET = FactorBudget()


@dataclass(frozen=True)
class Factorization:
    """x = sign * prod(p**e) * cofactor.  Every listed p is certified prime.
    cofactor == 1 means the factorization is complete; otherwise it is a
    composite (or unresolved) remainder."""

    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def reassemble(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out * self.cofactor

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def _brent_rho(n: int, rng: random.Random, max_iters: int, deadline: float) -> int | None:
    """One factor of composite odd n, or None if the budget ran out."""
    if n % 2 == 0:
        return 2
    iters = 0
    while iters < max_iters and time.monotonic() < deadline:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and iters < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                iters += m
                g = gcd(q, n)
            r *= 2
            if time.monotonic() >= deadline:
                break
        if g == n:
            # backtrack: the gcd batch overshot
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _perfect_power(n: int) -> tuple[int, int] | None:
    """(b, k) with n = b**k and k >= 2, or None."""
    for k in range(2, n.bit_length() + 1):
        # exact k-th root by bisection; a float guess seeds the bracket when
        # it cannot overflow
        lo, hi = 1, 1 << (n.bit_length() // k + 1)
        if n.bit_length() < 900:
            b = round(n ** (1.0 / k))
            lo, hi = max(1, b - 2), b + 2
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**k < n:
                lo = mid + 1
            else:
                hi = mid
        if lo**k == n:
            return lo, k
    return None


_trial_primes: list[int] = []
_trial_primes_bound = 0


def _primes_for_trial(bound: int) -> list[int]:
    global _trial_primes, _trial_primes_bound
    if bound > _trial_primes_bound:
        _trial_primes = primes_in_range(2, bound + 1)
        _trial_primes_bound = bound
    return _trial_primes


def factor(x: int, budget: FactorBudget = DEFAULT_BUDGET) -> Factorization:
    """Budgeted factorization of x != 0.

    Trial division by primes up to budget.trial_bound, then Pollard rho
    (Brent variant) on what remains.  Budget exhaustion leaves a composite
    cofactor flagged in the result — never a wrong factor.
    """
    if x == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if x > 0 else -1
    n = abs(x)
    found: dict[int, int] = {}

    bound = min(budget.trial_bound, isqrt(n) + 1)
    for p in _primes_for_trial(bound):
        if p > bound or p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if n > 1 and (n < budget.trial_bound * budget.trial_bound or is_prime(n)):
        # below trial_bound^2 any remainder is prime
        found[n] = found.get(n, 0) + 1
        n = 1

    cofactor = 1
    if n > 1:
        rng = random.Random(x & 0xFFFFFFFF)
        deadline = time.monotonic() + budget.time_cap_ms / 1000.0
        stack = [n]
        while stack:
            c = stack.pop()
            if c == 1:
                continue
            if is_prime(c):
                found[c] = found.get(c, 0) + 1
                continue
            power = _perfect_power(c)
            if power:
                b, k = power
                for _ in range(k):
                    stack.append(b)
                continue
            d = _brent_rho(c, rng, budget.rho_iterations, deadline)
            if d is None:
                cofactor *= c
            else:
                stack.append(d)
                stack.append(c // d)

    return Factorization(sign, tuple(sorted(found.items())), cofactor)


def valuation(x: int, p: int) -> int:
    """v_p(x): the exact power of p dividing x (x != 0)."""
    if x == 0:
        raise ValueError("v_p(0) is infinite")
    v = 0
    x = abs(x)
    while x % p == 0:
        v += 1
        x //= p
    return v


# ---------------------------------------------------------------------------
# square classes


@dataclass(frozen=True)
class SquareClass:
    """An element of Q*/Q*^2: sign and the primes of odd exponent.

    When factoring stalls, the unresolved composite remainder is kept in
    `cofactor` with cofactor_known=False: the class is then only known up to
    that remainder, and consumers demanding certainty must reject it.
    """

    sign: int
    support: tuple[int, ...] = ()
    cofactor: int = 1
    cofactor_known: bool = True

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be strictly increasing")
        if self.cofactor_known and self.cofactor != 1:
            raise ValueError("known class must have cofactor 1")

    @property
    def is_identity(self) -> bool:
        return self.cofactor_known and self.sign == 1 and not self.support

    def representative(self) -> int:
        out = self.sign
        for p in self.support:
            out *= p
        return out * self.cofactor


def square_class(x: int, budget: FactorBudget = DEFAULT_BUDGET) -> SquareClass:
    """The class of x != 0 in Q*/Q*^2 (squarefree kernel), within budget."""
    fac = factor(x, budget)
    support = tuple(p for p, e in fac.factors if e % 2 == 1)
    if fac.complete:
        return SquareClass(fac.sign, support)
    if is_square(fac.cofactor):
        # an unfactored square contributes nothing to the class
        return SquareClass(fac.sign, support)
    return SquareClass(fac.sign, support, fac.cofactor, cofactor_known=False)

"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled core in _ccore.pyx; selected automatically
when the extension is unavailable.  No bounds on the inputs: Python integers
carry arbitrary gamma, m, and segment positions.
"""

from __future__ import annotations

from math import isqrt

IMPL = "pure"


def _base_primes(limit: int) -> list[int]:
    """Primes <= limit by a simple sieve (limit stays near sqrt(hi))."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if flags[i]]


def _segment_flags(lo: int, hi: int) -> bytearray:
    """Composite-marking for [lo, hi): flags[i] == 1 iff lo + i is prime."""
    n = hi - lo
    flags = bytearray([1]) * n
    if lo < 2:
        for v in range(lo, min(2, hi)):
            flags[v - lo] = 0
    for p in _base_primes(isqrt(max(hi - 1, 0))):
        start = max(p * p, (lo + p - 1) // p * p)
        if start >= hi:
            continue
        flags[start - lo :: p] = bytearray(len(range(start, hi, p)))
    return flags


def sieve_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi, ascending."""
    if hi <= lo:
        return []
    flags = _segment_flags(lo, hi)
    return [lo + i for i, f in enumerate(flags) if f]


def count_range(lo: int, hi: int) -> int:
    if hi <= lo:
        return 0
    return sum(_segment_flags(lo, hi))


def _jacobi(a: int, n: int) -> int:
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


def census_segment(
    gamma: int, m: int, lo: int, hi: int, depth: int
) -> tuple[int, list[int]]:
    """Scan the primes in [lo, hi) for depth-`depth` census survivors.

    For f(x) = (x - gamma)^2 + gamma + m, a prime p survives when every one
    of the first `depth` adjusted critical values -f(gamma), f^2(gamma), ...,
    f^depth(gamma) is a quadratic non-residue mod p.  Returns (number of
    primes in the range, list of surviving odd primes).
    """
    flags = _segment_flags(lo, hi)
    total = 0
    survivors: list[int] = []
    for i, is_p in enumerate(flags):
        if not is_p:
            continue
        total += 1
        p = lo + i
        if p == 2:
            continue
        g = gamma % p
        mm = m % p
        if _jacobi((-(g + mm)) % p, p) != -1:
            continue
        b = mm
        ok = True
        for _ in range(depth - 1):
            b = (b * b + mm) % p
            if _jacobi((b + g) % p, p) != -1:
                ok = False
                break
        if ok:
            survivors.append(p)
    return total, survivors

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census/sieve kernels.

Limits: segment positions below 2**32 and |gamma|, |m| below 2**62 (products
stay inside 64 bits because p < 2**32).  The dispatcher in
quadstab.kernels falls back to the pure implementation outside these ranges.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

IMPL = "compiled"

ctypedef unsigned long long u64
ctypedef long long i64


cdef int _jacobi_u64(u64 a, u64 n) nogil:
    # n odd > 0
    cdef int result = 1
    cdef u64 t
    a %= n
    while a:
        while (a & 1) == 0:
            a >>= 1
            t = n & 7
            if t == 3 or t == 5:
                result = -result
        t = a
        a = n
        n = t
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


cdef unsigned char* _sieve_flags(u64 lo, u64 hi) except NULL:
    """malloc'd flags for [lo, hi): flags[i] = 1 iff lo + i prime."""
    cdef u64 n = hi - lo
    cdef unsigned char* flags = <unsigned char*> malloc(n)
    if flags == NULL:
        raise MemoryError()
    memset(flags, 1, n)
    cdef u64 v
    for v in range(lo, min(2, hi)):
        flags[v - lo] = 0

    cdef u64 limit = 1
    while (limit + 1) * (limit + 1) <= hi - 1:
        limit += 1
    # simple sieve for base primes up to sqrt(hi-1)
    cdef unsigned char* base = <unsigned char*> malloc(limit + 1)
    if base == NULL:
        free(flags)
        raise MemoryError()
    memset(base, 1, limit + 1)
    base[0] = 0
    if limit >= 1:
        base[1] = 0
    cdef u64 i, j, start
    i = 2
    while i * i <= limit:
        if base[i]:
            j = i * i
            while j <= limit:
                base[j] = 0
                j += i
        i += 1
    for i in range(2, limit + 1):
        if not base[i]:
            continue
        start = i * i
        if start < lo:
            start = ((lo + i - 1) // i) * i
        j = start
        while j < hi:
            flags[j - lo] = 0
            j += i
    free(base)
    return flags


def sieve_range(lo, hi):
    """Primes p with lo <= p < hi, ascending."""
    if hi <= lo:
        return []
    cdef u64 clo = lo, chi = hi
    cdef unsigned char* flags = _sieve_flags(clo, chi)
    out = []
    cdef u64 i, n = chi - clo
    try:
        for i in range(n):
            if flags[i]:
                out.append(clo + i)
    finally:
        free(flags)
    return out


def count_range(lo, hi):
    if hi <= lo:
        return 0
    cdef u64 clo = lo, chi = hi
    cdef unsigned char* flags = _sieve_flags(clo, chi)
    cdef u64 i, n = chi - clo
    cdef u64 total = 0
    with nogil:
        for i in range(n):
            total += flags[i]
    free(flags)
    return total


def census_segment(gamma, m, lo, hi, depth):
    """Scan primes in [lo, hi) for depth-`depth` census survivors.

    Returns (number of primes in range, list of surviving odd primes); a
    prime survives when the first `depth` adjusted critical values of
    f(x) = (x - gamma)^2 + gamma + m are all non-residues mod p.
    """
    if hi <= lo:
        return 0, []
    cdef i64 cg = gamma, cm = m
    cdef u64 clo = lo, chi = hi
    cdef int cdepth = depth
    cdef unsigned char* flags = _sieve_flags(clo, chi)
    survivors = []
    cdef u64 i, n = chi - clo
    cdef u64 p, g, mm, b, e
    cdef u64 total = 0
    cdef int level, ok
    try:
        for i in range(n):
            if not flags[i]:
                continue
            total += 1
            p = clo + i
            if p == 2:
                continue
            g = <u64> (cg % <i64> p) if cg >= 0 else <u64> ((cg % <i64> p + <i64> p) % <i64> p)
            mm = <u64> (cm % <i64> p) if cm >= 0 else <u64> ((cm % <i64> p + <i64> p) % <i64> p)
            e = (2 * p - g - mm) % p  # -(gamma + m) mod p
            if _jacobi_u64(e, p) != -1:
                continue
            b = mm
            ok = 1
            for level in range(cdepth - 1):
                b = (b * b + mm) % p
                e = (b + g) % p
                if _jacobi_u64(e, p) != -1:
                    ok = 0
                    break
            if ok:
                survivors.append(p)
    finally:
        free(flags)
    return total, survivors

"""Prime fields F_p and extensions F_{p^k} in a polynomial basis.

Elements are plain values — ints in [0, p) for F_p, length-k tuples of ints
for F_{p^k} — and the field object supplies the operations.  Extension
moduli default to the numerically least monic irreducible of the requested
degree (coefficients read as a base-p integer), so independently constructed
fields agree and specialization results are reproducible.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .arith import is_prime, jacobi
from .errors import QuadstabError


def field_sqrt(field, a):
    """A square root of a (which must be a square); Tonelli-Shanks for
    general odd order, with the q = 3 mod 4 shortcut."""
    if a == field.zero:
        return field.zero
    q = field.order
    if q % 4 == 3:
        return field.pow(a, (q + 1) // 4)
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = next(e for e in field.elements() if e != field.zero and not field.is_square(e))
    m, c = s, field.pow(z, t)
    u, r = field.pow(a, t), field.pow(a, (t + 1) // 2)
    while u != field.one:
        k, sq = 0, u
        while sq != field.one:
            sq = field.mul(sq, sq)
            k += 1
        b = c
        for _ in range(m - k - 1):
            b = field.mul(b, b)
        m, c = k, field.mul(b, b)
        u, r = field.mul(u, c), field.mul(r, b)
    return r


class PrimeField:
    """F_p with int elements in [0, p).  Polynomial products go through
    Kronecker substitution (pack into one big int, multiply, unpack), which
    keeps high-degree modular arithmetic fast in pure Python."""

    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            raise QuadstabError(f"{p} is not prime")
        self.p = p
        self.k = 1
        self.order = p
        self.char = p
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def element(self, x: int) -> int:
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def is_square(self, a) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return jacobi(a, self.p) == 1

    def sqrt(self, a):
        if self.p == 2:
            return a
        return field_sqrt(self, a)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return iter(range(self.p))

    def poly_mul(self, a: list[int], b: list[int]) -> list[int]:
        if not a or not b:
            return []
        if len(a) < 8 or len(b) < 8:
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = (out[i + j] + ai * bj) % self.p
            return out
        width = (((self.p - 1) ** 2 * min(len(a), len(b))).bit_length() + 8) // 8
        pa = b"".join(c.to_bytes(width, "little") for c in a)
        pb = b"".join(c.to_bytes(width, "little") for c in b)
        prod = int.from_bytes(pa, "little") * int.from_bytes(pb, "little")
        n = len(a) + len(b) - 1
        raw = prod.to_bytes(n * width + width, "little")
        return [
            int.from_bytes(raw[i * width : (i + 1) * width], "little") % self.p
            for i in range(n)
        ]


class ExtField:
    """F_{p^k} as F_p[y]/(modulus); elements are coefficient tuples of
    length k, ascending powers of the generator."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if k < 2:
            raise QuadstabError("use PrimeField for k = 1")
        self.p = p
        self.k = k
        self.base = PrimeField(p)
        self.order = p**k
        self.char = p
        if modulus is None:
            modulus = _least_irreducible(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            from .polyff import is_irreducible

            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise QuadstabError("modulus must be monic of degree k")
            if not is_irreducible(self.base, list(modulus)):
                raise QuadstabError("modulus is reducible")
        self.modulus = modulus
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        # x^k reduced: x^k = -(modulus without leading term)
        self._xk = tuple((-c) % p for c in modulus[:-1])

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and (other.p, other.k, other.modulus) == (self.p, self.k, self.modulus)
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def element(self, coeffs) -> tuple[int, ...]:
        if isinstance(coeffs, int):
            return (coeffs % self.p,) + (0,) * (self.k - 1)
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) > self.k:
            raise QuadstabError("too many coefficients")
        return coeffs + (0,) * (self.k - len(coeffs))

    def from_base(self, c: int) -> tuple[int, ...]:
        return self.element(c)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        # fold powers x^(k+i) down using x^k = self._xk
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j, xj in enumerate(self._xk):
                    prod[i - k + j] += c * xj
            prod[i] = 0
        return tuple(c % p for c in prod[:k])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid in F_p[y] against the modulus
        from .polyff import poly_divmod, trim

        base = self.base
        r0, r1 = list(self.modulus), trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = poly_divmod(base, r0, r1)
            r0, r1 = r1, r
            from .polyff import poly_mul, poly_sub

            s0, s1 = s1, poly_sub(base, s0, poly_mul(base, q, s1))
        # r0 is a nonzero constant
        c = base.inv(r0[0])
        return self.element([base.mul(c, x) for x in s0])

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_square(self, a) -> bool:
        if a == self.zero:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a):
        return field_sqrt(self, a)

    def random_element(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def elements(self):
        for combo in itertools.product(range(self.p), repeat=self.k):
            yield combo

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != self.zero:
                for j, bj in enumerate(b):
                    out[i + j] = self.add(out[i + j], self.mul(ai, bj))
        return out


@lru_cache(maxsize=None)
def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over F_p with numerically least
    coefficient vector (base-p value of the non-leading coefficients)."""
    from .polyff import is_irreducible

    base = PrimeField(p)
    for value in range(p**k):
        coeffs = []
        v = value
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        candidate = coeffs + [1]
        if is_irreducible(base, candidate):
            return tuple(candidate)
    raise QuadstabError(f"no irreducible of degree {k} over GF({p})")  # unreachable


def GF(p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
    """Field constructor: PrimeField for k = 1, ExtField otherwise."""
    if k == 1:
        return PrimeField(p)
    return ExtField(p, k, modulus)

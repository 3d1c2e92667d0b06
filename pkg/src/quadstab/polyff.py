"""Dense univariate polynomial arithmetic and factorization over a finite
field, generic in the field object (see finitefield).

Polynomials are coefficient lists in ascending degree with no trailing
zeros; [] is the zero polynomial.  Products delegate to field.poly_mul so a
field can supply a fast routine (PrimeField packs coefficients into one big
integer).  Modular powering uses reversal+Newton division with a cached
inverse series, making x^(q^i) ladders cheap even at degree 2^10.

Factorization is the classical chain: squarefree decomposition (with p-th
root extraction in characteristic p), distinct-degree splitting, then
randomized equal-degree splitting — the quadratic-residue kind for odd
fields, the trace kind in characteristic 2.
"""

from __future__ import annotations

import random

KARATSUBA_CUTOFF = 32  # schoolbook below this degree


def trim(coeffs: list) -> list:
    while coeffs and not _is_nonzero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _is_nonzero(c) -> bool:
    return c != 0 and c != () and not (isinstance(c, tuple) and all(x == 0 for x in c))


def degree(a: list) -> int:
    return len(a) - 1


def poly_add(field, a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return trim(out)


def poly_sub(field, a: list, b: list) -> list:
    out = list(a) + [field.zero] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = field.sub(out[i], c)
    return trim(out)


def poly_neg(field, a: list) -> list:
    return [field.neg(c) for c in a]


def poly_scalar(field, a: list, c) -> list:
    if not _is_nonzero(c):
        return []
    return trim([field.mul(x, c) for x in a])


def _schoolbook_mul(field, a: list, b: list) -> list:
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if _is_nonzero(ai):
            for j, bj in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return trim(out)


def _karatsuba_mul(field, a: list, b: list) -> list:
    n = max(len(a), len(b))
    if min(len(a), len(b)) <= KARATSUBA_CUTOFF:
        return _schoolbook_mul(field, a, b)
    h = n // 2
    a0, a1 = trim(a[:h]), trim(a[h:])
    b0, b1 = trim(b[:h]), trim(b[h:])
    z0 = _karatsuba_mul(field, a0, b0) if a0 and b0 else []
    z2 = _karatsuba_mul(field, a1, b1) if a1 and b1 else []
    sa, sb = poly_add(field, a0, a1), poly_add(field, b0, b1)
    z1 = _karatsuba_mul(field, sa, sb) if sa and sb else []
    z1 = poly_sub(field, poly_sub(field, z1, z0), z2)
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = field.add(out[i], c)
    for i, c in enumerate(z1):
        out[i + h] = field.add(out[i + h], c)
    for i, c in enumerate(z2):
        out[i + 2 * h] = field.add(out[i + 2 * h], c)
    return trim(out)


def poly_mul(field, a: list, b: list) -> list:
    if not a or not b:
        return []
    fast = getattr(field, "poly_mul", None)
    if fast is not None:
        return trim(fast(a, b))
    return _karatsuba_mul(field, a, b)


def poly_pow(field, a: list, e: int) -> list:
    result = [field.one]
    while e:
        if e & 1:
            result = poly_mul(field, result, a)
        a = poly_mul(field, a, a)
        e >>= 1
    return result


def poly_divmod(field, a: list, b: list) -> tuple[list, list]:
    """Long division: a = q*b + r with deg r < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    q = [field.zero] * (len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1]
        if not _is_nonzero(c):
            continue
        c = field.mul(c, inv_lead)
        q[i] = c
        for j, bj in enumerate(b):
            r[i + j] = field.sub(r[i + j], field.mul(c, bj))
    return trim(q), trim(r)


def poly_mod(field, a: list, b: list) -> list:
    return poly_divmod(field, a, b)[1]


def monic(field, a: list) -> list:
    if not a:
        return []
    lead = a[-1]
    if lead == field.one:
        return list(a)
    return poly_scalar(field, a, field.inv(lead))


def poly_gcd(field, a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_mod(field, a, b)
    return monic(field, a)


def poly_eval(field, a: list, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_derivative(field, a: list) -> list:
    out = []
    for i in range(1, len(a)):
        out.append(field.mul(a[i], field.element(i % field.char)))
    return trim(out)


class ModContext:
    """Reduction mod a fixed monic g via reversal + Newton inverse series.
    Handles dividends of degree <= 2*deg(g) - 2 (products of reduced
    operands), falling back to long division otherwise."""

    def __init__(self, field, g: list):
        g = monic(field, g)
        if degree(g) < 1:
            raise ValueError("modulus must have degree >= 1")
        self.field = field
        self.g = g
        self.d = degree(g)
        self._rev_g = list(reversed(g))
        self._inv = self._inverse_series(self._rev_g, max(self.d - 1, 1))

    def _inverse_series(self, f: list, prec: int) -> list:
        field = self.field
        v = [field.inv(f[0])]
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            fv = poly_mul(field, f[:k], v)[:k]
            two_minus = poly_sub(field, [field.add(field.one, field.one)], fv)
            v = poly_mul(field, v, two_minus)[:k]
        return v

    def reduce(self, h: list) -> list:
        h = trim(list(h))
        if degree(h) < self.d:
            return h
        if degree(h) > 2 * self.d - 2:
            return poly_mod(self.field, h, self.g)
        field = self.field
        n, k = degree(h), degree(h) - self.d
        rev_h = list(reversed(h))
        q_rev = poly_mul(field, rev_h[: k + 1], self._inv[: k + 1])[: k + 1]
        q_rev += [field.zero] * (k + 1 - len(q_rev))
        q = trim(list(reversed(q_rev)))
        r = poly_sub(field, h, poly_mul(field, q, self.g))
        assert degree(r) < self.d
        return r

    def mul(self, a: list, b: list) -> list:
        return self.reduce(poly_mul(self.field, a, b))

    def pow(self, a: list, e: int) -> list:
        result = [self.field.one]
        a = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result


def poly_pow_mod(field, a: list, e: int, g: list) -> list:
    return ModContext(field, g).pow(a, e)


def _x(field) -> list:
    return [field.zero, field.one]


def is_irreducible(field, g: list) -> bool:
    """Rabin's test: g monic of degree d is irreducible over F_q iff
    x^(q^d) = x mod g and gcd(x^(q^(d/l)) - x, g) = 1 for every prime l
    dividing d."""
    g = monic(field, g)
    d = degree(g)
    if d < 1:
        return False
    if d == 1:
        return True
    q = field.order
    prime_divs = []
    n = d
    f = 2
    while f * f <= n:
        if n % f == 0:
            prime_divs.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        prime_divs.append(n)

    ctx = ModContext(field, g)
    x = _x(field)
    # frob[i] = x^(q^i) mod g, built incrementally
    power = x
    checkpoints = {d // l for l in prime_divs}
    for i in range(1, d + 1):
        power = ctx.pow(power, q)
        if i in checkpoints:
            if poly_gcd(field, poly_sub(field, power, x), g) != [field.one]:
                return False
    return power == x


def squarefree_decomposition(field, g: list) -> list[tuple[list, int]]:
    """[(h_i, e_i)] with g/lc = prod h_i^e_i, h_i squarefree and pairwise
    coprime.  Characteristic-p aware: when the derivative vanishes, g is a
    p-th power of a polynomial whose coefficients are q/p-th powers."""
    g = monic(field, g)
    if degree(g) < 1:
        return []
    p = field.char
    out: list[tuple[list, int]] = []

    deriv = poly_derivative(field, g)
    if not deriv:
        # g(x) = h(x^p); extract the p-th root coefficient-wise
        root = [
            field.pow(c, field.order // p) for c in g[::p]
        ]
        return [(h, e * p) for h, e in squarefree_decomposition(field, trim(root))]

    c = poly_gcd(field, g, deriv)
    w = poly_divmod(field, g, c)[0]
    i = 1
    while degree(w) > 0:
        y = poly_gcd(field, w, c)
        z = poly_divmod(field, w, y)[0]
        if degree(z) > 0:
            out.append((z, i))
        w = y
        c = poly_divmod(field, c, y)[0]
        i += 1
    if degree(c) > 0:
        inner = squarefree_decomposition(field, c)
        out.extend(inner)
    return _merge_square_parts(field, out)


def _merge_square_parts(field, parts: list[tuple[list, int]]) -> list[tuple[list, int]]:
    """Re-split entries that share irreducible factors (possible when the
    p-th-power branch overlaps the tame branch) so factors stay coprime."""
    changed = True
    while changed:
        changed = False
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                a, ea = parts[i]
                b, eb = parts[j]
                d = poly_gcd(field, a, b)
                if degree(d) > 0:
                    ra = poly_divmod(field, a, d)[0]
                    rb = poly_divmod(field, b, d)[0]
                    new = [(d, ea + eb)]
                    if degree(ra) > 0:
                        new.append((ra, ea))
                    if degree(rb) > 0:
                        new.append((rb, eb))
                    parts = [parts[k] for k in range(len(parts)) if k not in (i, j)] + new
                    changed = True
                    break
            if changed:
                break
    return parts


def distinct_degree_decomposition(field, g: list) -> list[tuple[list, int]]:
    """[(product of all irreducible factors of degree d, d)] for squarefree
    monic g."""
    out = []
    q = field.order
    ctx = ModContext(field, g) if degree(g) > 1 else None
    x = _x(field)
    h = x
    rest = list(g)
    d = 0
    while degree(rest) > 2 * d:
        d += 1
        if ctx is None or degree(rest) <= 1:
            break
        h = ctx.pow(h, q)
        part = poly_gcd(field, poly_sub(field, h, x), rest)
        if degree(part) > 0:
            out.append((part, d))
            rest = poly_divmod(field, rest, part)[0]
            if degree(rest) < 1:
                break
            # rebuild the Frobenius ladder against the smaller modulus
            ctx = ModContext(field, rest) if degree(rest) > 1 else None
            if ctx is not None:
                h = ctx.reduce(h)
    if degree(rest) > 0:
        out.append((rest, degree(rest)))
    return out


def _equal_degree_split_once(field, g: list, d: int, rng: random.Random) -> list | None:
    """One random attempt at a proper factor of g (product of same-degree-d
    irreducibles)."""
    q = field.order
    n = degree(g)
    a = trim([field.random_element(rng) for _ in range(n)])
    if degree(a) < 1:
        return None
    ctx = ModContext(field, g)
    if field.char == 2:
        # trace map: sum of a^(2^i) over the F_2-dimension of F_(q^d)
        e = d * (q.bit_length() - 1)  # q = 2^k, dimension k*d
        t = a
        acc = a
        for _ in range(e - 1):
            t = ctx.mul(t, t)
            acc = poly_add(field, acc, t)
        candidate = acc
    else:
        b = ctx.pow(a, (q**d - 1) // 2)
        candidate = poly_sub(field, b, [field.one])
    if not candidate:
        return None
    h = poly_gcd(field, candidate, g)
    if 0 < degree(h) < n:
        return h
    return None


def equal_degree_factor(field, g: list, d: int, rng: random.Random) -> list[list]:
    """All monic irreducible factors of g, given every factor has degree d."""
    if degree(g) == d:
        return [monic(field, g)]
    while True:
        h = _equal_degree_split_once(field, g, d, rng)
        if h is not None:
            rest = poly_divmod(field, g, h)[0]
            return equal_degree_factor(field, h, d, rng) + equal_degree_factor(
                field, rest, d, rng
            )


def factor(field, g: list, rng: random.Random | None = None):
    """Complete factorization of g: (leading unit, [(monic irreducible,
    multiplicity)]), factors ordered by (degree, coefficients)."""
    g = trim(list(g))
    if not g:
        raise ValueError("cannot factor the zero polynomial")
    rng = rng or random.Random(0)
    unit = g[-1]
    g = monic(field, g)
    result: list[tuple[list, int]] = []
    for sf_part, mult in squarefree_decomposition(field, g):
        for dd_part, d in distinct_degree_decomposition(field, sf_part):
            for irr in equal_degree_factor(field, dd_part, d, rng):
                result.append((irr, mult))
    result.sort(key=lambda fe: (degree(fe[0]), [_sort_key(c) for c in fe[0]]))
    return unit, result


def _sort_key(c):
    return c if isinstance(c, tuple) else (c,)


def roots(field, g: list, rng: random.Random | None = None) -> list:
    """Roots of g in the field (without multiplicity)."""
    _, factors = factor(field, g, rng)
    out = []
    for f, _ in factors:
        if degree(f) == 1:
            out.append(field.neg(f[0]))
    return out

"""Primitive examples: stable quadratics whose (n-1)-st iterate is
irreducible modulo a positive density of primes while the n-th iterate is
reducible modulo every prime.

The construction picks s = (f0^(n-1)(0) - 1)^2, i.e.
gamma = -2*f0^(n-1)(0) + 1 - m, which makes the intermediate critical
values negative; a hand-picked (m, q) pair then guarantees an auxiliary
prime q dividing -f(gamma) exactly once, and a witness prime with the whole
level-(n-1) chain of non-residues exists by quadratic reciprocity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    factor,
    is_prime,
    is_square,
    jacobi,
    legendre,
    primes,
    primes_up_to,
    valuation,
)
from .config import DEFAULT_CONFIG
from .errors import VerificationError
from .modpoly import is_irreducible_mod, iterate_map_mod, reduce_map
from .quadmap import QuadMapZ, critical_orbit, stability_by_parity

SCAN = "scan"
CRT = "crt"


@dataclass(frozen=True)
class LevelWitness:
    status: str  # WITNESS | FAILED | UNKNOWN
    prime: int | None = None
    multiplicity: int | None = None


@dataclass(frozen=True)
class WitnessChain:
    """Per-level witnesses: for each 1 <= i < n an odd prime dividing
    f^i(gamma) to odd multiplicity and dividing no earlier critical value."""

    map: QuadMapZ
    levels: dict[int, LevelWitness]

    @property
    def all_witnessed(self) -> bool:
        return all(w.status == "WITNESS" for w in self.levels.values())


def witness_chain(
    f: QuadMapZ, n: int, budget: FactorBudget = DEFAULT_BUDGET
) -> WitnessChain:
    """Search levels 1..n-1 for fresh odd-multiplicity prime divisors.

    Candidates are taken smallest-first from a budgeted factorization; a
    level reports UNKNOWN only when no known factor qualifies and the
    factorization is incomplete, FAILED when it is provably impossible.
    """
    orbit = critical_orbit(f, n, depth_cap=max(n, DEFAULT_CONFIG.orbit_depth_cap))
    values = [orbit.iterate_at_critical(i) for i in range(1, n)]
    levels: dict[int, LevelWitness] = {}
    for idx, v in enumerate(values):
        i = idx + 1
        earlier = values[:idx]
        if v == 0:
            levels[i] = LevelWitness("FAILED")
            continue
        fac = factor(v, budget)
        chosen = None
        for p, e in fac.factors:
            if p == 2 or e % 2 == 0:
                continue
            if all(w % p != 0 for w in earlier):
                chosen = (p, e)
                break
        if chosen:
            levels[i] = LevelWitness("WITNESS", chosen[0], chosen[1])
        elif fac.complete:
            levels[i] = LevelWitness("FAILED")
        else:
            levels[i] = LevelWitness("UNKNOWN")
    return WitnessChain(f, levels)


def _chain_nonresidue(f: QuadMapZ, k: int, p: int, orbit) -> bool:
    """All adjusted values through level k are non-residues mod p."""
    first = (-f.critical_value) % p
    if jacobi(first, p) != -1:
        return False
    for i in range(2, k + 1):
        if jacobi(orbit.iterate_at_critical(i) % p, p) != -1:
            return False
    return True


def _validate_witness(f: QuadMapZ, k: int, p: int) -> bool:
    """Direct validation of a chain hit: the degree-2^k reduction must be
    irreducible (the chain and the factorization are equivalent over F_p, so
    a mismatch is a bug)."""
    if not is_irreducible_mod(iterate_map_mod(reduce_map(f, p), k)):
        raise VerificationError(
            f"residue chain and direct factorization disagree at p={p}, k={k}"
        )
    return True


def find_witness_prime(
    f: QuadMapZ,
    k: int,
    strategy: str = SCAN,
    cap: int = 10**5,
    budget: FactorBudget = DEFAULT_BUDGET,
) -> int | None:
    """Smallest validated prime p with the k-th iterate of f irreducible
    mod p, or None (NOT_FOUND) after examining `cap` candidates.

    SCAN walks the odd primes in order (expected hit length ~2^k when the
    chain values are independent in Q*/Q*^2).  CRT builds a congruence class
    forcing the chain by quadratic reciprocity — the level-1 value gets
    symbol -1 through its reserved prime, every other known prime factor
    gets symbol +1, and p = 7 mod 8 fixes the signs of -1 and 2 — then scans
    that progression.  Either way each candidate is fully validated (residue
    chain and direct mod-p factorization must agree).
    """
    if k > 10:
        raise ValueError("k > 10 exceeds the direct-validation degree cap")
    orbit = critical_orbit(f, k, depth_cap=max(k, DEFAULT_CONFIG.orbit_depth_cap))
    if strategy == SCAN:
        count = 0
        for p in primes(3):
            count += 1
            if count > cap:
                return None
            if _chain_nonresidue(f, k, p, orbit) and _validate_witness(f, k, p):
                return p
        return None
    if strategy == CRT:
        return _crt_witness(f, k, cap, budget, orbit)
    raise ValueError(f"unknown strategy {strategy!r}")


def _crt_witness(f: QuadMapZ, k, cap, budget, orbit) -> int | None:
    values = [-f.critical_value] + [orbit.iterate_at_critical(i) for i in range(2, k + 1)]
    odd_primes: set[int] = set()
    complete = True
    for v in values:
        if v == 0:
            return None
        fac = factor(v, budget)
        complete = complete and fac.complete
        odd_primes.update(p for p, _ in fac.factors if p != 2)
    # reserve the smallest odd-multiplicity prime of the level-1 value to
    # carry symbol -1; all other known primes get +1
    fac1 = factor(values[0], budget)
    q = next((p for p, e in fac1.factors if p != 2 and e % 2 == 1), None)
    if q is None:
        return None
    odd_primes.discard(q)

    residues = {8: 7}  # p = 7 mod 8: (-1/p) = -1 and (2/p) = +1
    for r in sorted(odd_primes | {q}):
        want = -1 if r == q else 1
        # with p = 3 mod 4: (r/p) = (p/r) for r = 1 mod 4, -(p/r) otherwise
        target = want if r % 4 == 1 else -want
        b = next(b for b in range(1, r) if jacobi(b, r) == target)
        residues[r] = b
    modulus = 8
    rem = residues[8]
    for r, b in residues.items():
        if r == 8:
            continue
        # CRT combine
        g, x = _crt_pair(rem, modulus, b, r)
        rem, modulus = g, x
    tried = 0
    p = rem if rem > 2 else rem + modulus
    while tried < cap:
        if p > 2 and is_prime(p):
            tried += 1
            if _chain_nonresidue(f, k, p, orbit) and _validate_witness(f, k, p):
                return p
        p += modulus
    return None


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    """x = a1 mod m1, x = a2 mod m2 for coprime moduli: (x, m1*m2)."""
    m = m1 * m2
    x = (a1 * m2 * pow(m2, -1, m1) + a2 * m1 * pow(m1, -1, m2)) % m
    return x, m


# ---------------------------------------------------------------------------
# the constructions


def primitive_parameters(n: int) -> tuple[int, int]:
    """(m, q): the seed constant and auxiliary prime for level n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n == 2:
        return 3, 5
    return (4, 3) if n % 3 == 1 else (1, 3)


@dataclass(frozen=True)
class PrimitiveExample:
    n: int
    map: QuadMapZ
    aux_prime: int
    stability: object
    witness_prime: int | None
    reducibility_spot_checks: dict[int, bool]  # p -> n-th iterate reducible mod p
    witness_skipped: str | None = None


def construct_primitive(
    n: int,
    strategy: str = SCAN,
    spot_check_bound: int = 500,
    budget: FactorBudget = DEFAULT_BUDGET,
) -> PrimitiveExample:
    """Build and fully verify the level-n primitive example.

    Verified here, with hard errors on failure (a failure would be an
    implementation bug, the underlying construction is proved):
      - q divides -f(gamma) exactly once and no later critical value,
      - f^i(gamma) < 0 for 2 <= i <= n-1,
      - f^n(gamma) = (f0^(n-1)(0) - 1)^2 exactly,
      - the parity stability certificate holds,
      - a witness prime with the degree-2^(n-1) reduction irreducible
        (skipped with a note when 2^(n-1) exceeds the validation cap),
      - the n-th iterate is reducible mod every odd p <= spot_check_bound
        (the theorem covers all primes; this samples it).
    """
    m, q = primitive_parameters(n)
    orbit0 = critical_orbit(QuadMapZ(0, m), n, depth_cap=max(n, DEFAULT_CONFIG.orbit_depth_cap))
    a = orbit0.base_value(n - 1)
    f = QuadMapZ(-2 * a + 1 - m, m)
    orbit = critical_orbit(f, n, depth_cap=max(n, DEFAULT_CONFIG.orbit_depth_cap))

    if valuation(-f.critical_value, q) != 1:
        raise VerificationError(f"q={q} does not divide -f(gamma) exactly once")
    for i in range(2, n):
        value = orbit.iterate_at_critical(i)
        if value % q == 0:
            raise VerificationError(f"q={q} divides the level-{i} critical value")
        if value >= 0:
            raise VerificationError(f"level-{i} critical value is not negative")
    top = orbit.iterate_at_critical(n)
    if top != (a - 1) ** 2 or not is_square(top):
        raise VerificationError("f^n(gamma) is not the expected square")
    cert = stability_by_parity(f)
    if not cert:
        raise VerificationError(f"stability certificate failed: {cert.evidence}")

    witness = None
    skipped = None
    if 2 ** (n - 1) <= DEFAULT_CONFIG.factor_degree_cap:
        witness = find_witness_prime(f, n - 1, strategy=strategy, budget=budget)
        if witness is None:
            raise VerificationError("no witness prime found within the scan cap")
    else:
        skipped = f"degree 2^{n - 1} exceeds the direct-validation cap"

    spot: dict[int, bool] = {}
    for p in primes_up_to(spot_check_bound):
        if p == 2:
            continue
        # the level-n value is a global square, so its residue symbol is
        # never -1 and the reduction must factor
        if legendre(top % p, p) == -1:
            raise VerificationError(f"global square is a non-residue mod {p}")
        if 2**n <= DEFAULT_CONFIG.factor_degree_cap:
            spot[p] = not is_irreducible_mod(iterate_map_mod(reduce_map(f, p), n))
            if not spot[p]:
                raise VerificationError(f"n-th iterate unexpectedly irreducible mod {p}")
    return PrimitiveExample(n, f, q, cert, witness, spot, skipped)


def minimality_scan(
    n: int, m_bound: int, gamma_bound: int | None = None
) -> list[tuple[int, int]]:
    """Exhaustive scan of the admissible (m, gamma) pairs of the primitive
    shape gamma = +-2*f0^(n-1)(0) + 1 - m, |m| <= m_bound.

    Filters: m outside {-2, -1, 0} (those make the critical orbit finite),
    the parity stability certificate, and f^n(gamma) a perfect square
    (automatic for this shape; asserted).  Returns pairs sorted by |gamma|.
    """
    out: list[tuple[int, int]] = []
    for m in range(-m_bound, m_bound + 1):
        if m in (-2, -1, 0):
            continue
        orbit0 = critical_orbit(QuadMapZ(0, m), n, depth_cap=max(n, DEFAULT_CONFIG.orbit_depth_cap))
        a = orbit0.base_value(n - 1)
        for sign in (1, -1):
            gamma = sign * 2 * a + 1 - m
            if gamma_bound is not None and abs(gamma) > gamma_bound:
                continue
            f = QuadMapZ(gamma, m)
            if f.is_degenerate:
                continue
            if not stability_by_parity(f):
                continue
            top = orbit0.base_value(n) + gamma
            if not is_square(top):
                continue
            out.append((m, gamma))
    out.sort(key=lambda pair: (abs(pair[1]), pair[0]))
    return out

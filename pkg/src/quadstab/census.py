"""Census of stable primes: for which p is every iterate of f irreducible
mod p?

A prime survives the cheap prefix test when the first `prefix_depth`
adjusted critical values are all non-residues mod p (hot loop, see
quadstab.kernels).  Survivors are then resolved exactly: the orbit of the
critical point mod p is finite, so stability reduces to finitely many
Legendre symbols over the tail and cycle.  The multiplicative structure of
the critical orbit in Q*/Q*^2 (span_analysis) predicts the density of
stable primes when the affine span is finite and origin-free, and rules
them out entirely when the origin is hit.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath

from . import kernels
from .arith import DEFAULT_BUDGET, FactorBudget, SquareClass, jacobi, square_class
from .config import DEFAULT_CONFIG
from .errors import QuadstabError
from .f2 import solve_affine
from .quadmap import QuadMapZ, adjusted_values

_BRENT_THRESHOLD = 10**6  # below: dict-based cycle detection


@dataclass(frozen=True)
class OrbitModP:
    """Forward orbit of the critical point mod p: values[i] = f^i(gamma)
    mod p for 0 <= i < r, where r is minimal with values[r] = values[s]."""

    p: int
    values: tuple[int, ...]
    tail_length: int

    @property
    def cycle_length(self) -> int:
        return len(self.values) - self.tail_length

    def at_level(self, i: int) -> int:
        r = len(self.values)
        if i < r:
            return self.values[i]
        s, lam = self.tail_length, self.cycle_length
        return self.values[s + (i - s) % lam]


def orbit_mod_p(f: QuadMapZ, p: int) -> OrbitModP:
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    g = f.gamma % p
    m = f.m % p

    def step(x: int) -> int:
        d = x - g
        return (d * d + g + m) % p

    if p <= _BRENT_THRESHOLD:
        seen: dict[int, int] = {}
        vals: list[int] = []
        x = g
        while x not in seen:
            seen[x] = len(vals)
            vals.append(x)
            x = step(x)
        return OrbitModP(p, tuple(vals), seen[x])

    # Brent cycle detection for large p
    power = lam = 1
    tortoise, hare = g, step(g)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
    tortoise = hare = g
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(hare)
        mu += 1
    vals = []
    x = g
    for _ in range(mu + lam):
        vals.append(x)
        x = step(x)
    return OrbitModP(p, tuple(vals), mu)


@dataclass(frozen=True)
class StabilityVerdict:
    p: int
    stable: bool
    failing_index: int | None = None  # smallest level with a residue/zero


def is_stable_mod_p(f: QuadMapZ, p: int) -> StabilityVerdict:
    """Exact stability of f mod p: level 1 checks -f(gamma), levels >= 2
    the orbit values; the finite tail+cycle exhausts all levels.  A symbol
    of 0 (p divides a critical value) counts as a square."""
    orbit = orbit_mod_p(f, p)
    first = (-(f.gamma + f.m)) % p
    if jacobi(first, p) != -1:
        return StabilityVerdict(p, False, 1)
    horizon = orbit.tail_length + 2 * orbit.cycle_length
    for i in range(2, max(3, horizon + 1)):
        if jacobi(orbit.at_level(i), p) != -1:
            return StabilityVerdict(p, False, i)
    return StabilityVerdict(p, True)


def first_square_level(f: QuadMapZ, p: int, max_depth: int) -> int | None:
    """Smallest level i <= max_depth whose adjusted value is a residue
    (or 0) mod p; None if all are non-residues."""
    g, m = f.gamma % p, f.m % p
    if jacobi((-(g + m)) % p, p) != -1:
        return 1
    b = m
    for i in range(2, max_depth + 1):
        b = (b * b + m) % p
        if jacobi((b + g) % p, p) != -1:
            return i
    return None


# ---------------------------------------------------------------------------
# the scan


@dataclass(frozen=True)
class CandidateRecord:
    p: int
    kill_depth: int | None  # None = stable
    tail_length: int | None = None


@dataclass(frozen=True)
class CensusReport:
    gamma: int
    m: int
    bound: int
    prefix_depth: int
    kill_depth: int
    stable_primes: tuple[int, ...]
    candidates: tuple[CandidateRecord, ...]
    prime_count: int
    segments: int

    def to_json_dict(self) -> dict:
        return {
            "kind": "census",
            "map": {"gamma": str(self.gamma), "m": str(self.m)},
            "bound": str(self.bound),
            "prefix_depth": self.prefix_depth,
            "kill_depth": self.kill_depth,
            "stable_primes": [str(p) for p in self.stable_primes],
            "candidates": [
                {
                    "p": str(c.p),
                    "kill_depth": c.kill_depth,
                    "tail_length": c.tail_length,
                }
                for c in self.candidates
            ],
            "runtime_stats": {
                "prime_count": self.prime_count,
                "segments": self.segments,
                "candidates_tested": len(self.candidates),
            },
        }


def _scan_segment(args: tuple[int, int, int, int, int]) -> tuple[int, list[int]]:
    gamma, m, lo, hi, depth = args
    return kernels.census_segment(gamma, m, lo, hi, depth)


def _checkpoint_path(directory: str, lo: int, hi: int) -> str:
    return os.path.join(directory, f"seg_{lo}_{hi}.json")


def _atomic_write(path: str, payload: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def census_scan(
    f: QuadMapZ,
    bound: int,
    workers: int = 1,
    prefix_depth: int | None = None,
    kill_depth: int | None = None,
    segment_size: int | None = None,
    checkpoint_dir: str | None = None,
) -> CensusReport:
    """Scan all odd primes <= bound; p = 2 is excluded throughout (the
    reduction mod 2 is never stable — its third iterate already factors).

    Deterministic for any worker count: segments are fixed by the bound and
    segment size, workers are pure functions of their segment, and the merge
    is order-normalized.  With a checkpoint directory, completed segments
    are written atomically and skipped on resume, so interrupting the scan
    loses at most one segment of work.
    """
    if bound < 3:
        raise ValueError("bound must be >= 3")
    prefix_depth = DEFAULT_CONFIG.census_prefix_depth if prefix_depth is None else prefix_depth
    kill_depth = DEFAULT_CONFIG.census_kill_depth if kill_depth is None else kill_depth
    segment_size = DEFAULT_CONFIG.census_segment_size if segment_size is None else segment_size

    segments = []
    lo = 2
    while lo <= bound:
        hi = min(lo + segment_size, bound + 1)
        segments.append((f.gamma, f.m, lo, hi, prefix_depth))
        lo = hi

    done: dict[tuple[int, int], tuple[int, list[int]]] = {}
    if checkpoint_dir is not None:
        _load_checkpoints(checkpoint_dir, f, bound, prefix_depth, kill_depth, segment_size, done)

    pending = [seg for seg in segments if (seg[2], seg[3]) not in done]
    if pending:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_scan_segment, pending))
        else:
            results = [_scan_segment(seg) for seg in pending]
        for seg, res in zip(pending, results):
            key = (seg[2], seg[3])
            done[key] = res
            if checkpoint_dir is not None:
                _atomic_write(
                    _checkpoint_path(checkpoint_dir, *key),
                    {"lo": key[0], "hi": key[1], "prime_count": res[0], "survivors": res[1]},
                )

    prime_count = 0
    survivors: list[int] = []
    for seg in segments:
        count, surv = done[(seg[2], seg[3])]
        prime_count += count
        survivors.extend(surv)
    survivors.sort()

    stable: list[int] = []
    records: list[CandidateRecord] = []
    for p in survivors:
        kill = first_square_level(f, p, kill_depth)
        if kill is not None:
            records.append(CandidateRecord(p, kill))
            continue
        verdict = is_stable_mod_p(f, p)
        orbit = orbit_mod_p(f, p)
        if verdict.stable:
            stable.append(p)
            records.append(CandidateRecord(p, None, orbit.tail_length))
        else:
            records.append(CandidateRecord(p, verdict.failing_index, orbit.tail_length))
    return CensusReport(
        f.gamma,
        f.m,
        bound,
        prefix_depth,
        kill_depth,
        tuple(stable),
        tuple(records),
        prime_count,
        len(segments),
    )


def _load_checkpoints(directory, f, bound, prefix_depth, kill_depth, segment_size, done) -> None:
    os.makedirs(directory, exist_ok=True)
    meta_path = os.path.join(directory, "meta.json")
    meta = {
        "kind": "census_checkpoint",
        "gamma": str(f.gamma),
        "m": str(f.m),
        "bound": str(bound),
        "prefix_depth": prefix_depth,
        "kill_depth": kill_depth,
        "segment_size": segment_size,
    }
    if os.path.exists(meta_path):
        with open(meta_path, encoding="utf-8") as fh:
            existing = json.load(fh)
        if existing != meta:
            raise QuadstabError(
                "checkpoint directory was created with different parameters"
            )
    else:
        _atomic_write(meta_path, meta)
    for name in os.listdir(directory):
        if not name.startswith("seg_") or not name.endswith(".json"):
            continue
        with open(os.path.join(directory, name), encoding="utf-8") as fh:
            seg = json.load(fh)
        done[(seg["lo"], seg["hi"])] = (seg["prime_count"], list(seg["survivors"]))


# ---------------------------------------------------------------------------
# span analysis


@dataclass(frozen=True)
class SpanReport:
    k: int
    rank: int
    origin_in_affine_span: bool
    witness_levels: tuple[int, ...] | None
    affine_span_size: int | None  # 2^(rank-1) when origin-free
    predicted_density: Fraction | None  # 2^(-rank) when finite & origin-free
    unknown_cofactor_levels: tuple[int, ...]
    zero_levels: tuple[int, ...]
    prefix_based: bool  # False only when the critical orbit is finite

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "rank": self.rank,
            "origin_in_affine_span": self.origin_in_affine_span,
            "witness_levels": list(self.witness_levels) if self.witness_levels else None,
            "affine_span_size": self.affine_span_size,
            "predicted_density": (
                str(self.predicted_density) if self.predicted_density is not None else None
            ),
            "unknown_cofactor_levels": list(self.unknown_cofactor_levels),
            "zero_levels": list(self.zero_levels),
            "prefix_based": self.prefix_based,
        }


def span_analysis(
    f: QuadMapZ, k: int, budget: FactorBudget = DEFAULT_BUDGET
) -> SpanReport:
    """Square classes of the first k adjusted critical values and their span
    in Q*/Q*^2.

    Origin in the affine span (an odd subset multiplying to a square) means
    no prime is stable; a finite origin-free affine span of size 2^d
    predicts stable density 2^(-d-1).  The analysis is prefix-based — a
    bound, not the full span — unless the critical orbit is finite
    (m in {-2, -1, 0}), in which case k >= 3 sees everything.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    values = adjusted_values(f, k, depth_cap=max(k, DEFAULT_CONFIG.orbit_depth_cap))
    zero_levels = tuple(i for i, v in enumerate(values, start=1) if v == 0)
    classes: list[SquareClass] = []
    class_levels: list[int] = []
    unknown: list[int] = []
    for level, v in enumerate(values, start=1):
        if v == 0:
            continue
        cls = square_class(v, budget)
        if not cls.cofactor_known:
            unknown.append(level)
            continue
        classes.append(cls)
        class_levels.append(level)
    solution = solve_affine(classes)
    witness = (
        tuple(class_levels[i] for i in solution.witness)
        if solution.witness is not None
        else None
    )
    origin = solution.origin_in_affine_span
    affine_size = None if origin else 2 ** max(solution.rank - 1, 0)
    density = None if origin else Fraction(1, 2**solution.rank)
    exhaustive = f.m in (-2, -1, 0) and k >= 3
    return SpanReport(
        k,
        solution.rank,
        origin,
        witness,
        affine_size,
        density,
        tuple(unknown),
        zero_levels,
        not exhaustive,
    )


# ---------------------------------------------------------------------------
# the x^2 + 1 specifics


def check_tail_property(
    candidates: list[int], f: QuadMapZ = QuadMapZ(0, 1)
) -> dict[int, tuple[int, bool]]:
    """For census candidates of x^2 + 1: the orbit of 0 mod p must have tail
    length exactly 2 with pre-cycle value -1.  Returns
    {p: (tail_length, pre_cycle_is_minus_one)}."""
    out = {}
    for p in candidates:
        orbit = orbit_mod_p(f, p)
        r = len(orbit.values)
        out[p] = (orbit.tail_length, orbit.values[r - 1] == p - 1)
    return out


def prescreen_orbit_divisors(
    bound: int, depth: int = 9, m: int = 1
) -> list[tuple[int, int, int]]:
    """Primes p <= bound with f0^n(0) = -1 mod p for some n <= depth, where
    f0 = x^2 + m: the necessary condition for stability of x^2 + m at p.
    Returns (p, first such n, p mod 4) triples."""
    out = []
    for p in kernels.sieve_range(3, bound + 1):
        b = m % p
        hit = None
        for n in range(1, depth + 1):
            if b == p - 1:
                hit = n
                break
            b = (b * b + m) % p
        if hit is not None:
            out.append((p, hit, p % 4))
    return out


def heuristic_sum(bound: int, dps: int = 50):
    """Partial sum of 2^(-sqrt(p)) over primes p <= bound at fixed
    precision, plus an exact tail bound: grouping i^2 <= n < (i+1)^2 gives
    sum_(n >= I^2) 2^(-sqrt(n)) <= sum_(i >= I) (2i+1)/2^i = (4I+6)/2^I."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    from .arith import primes_up_to

    with mpmath.workdps(dps + 10):
        total = mpmath.mpf(0)
        count = 0
        for p in primes_up_to(bound):
            total += mpmath.power(2, -mpmath.sqrt(p))
            count += 1
        partial = mpmath.nstr(total, dps)
    big_i = isqrt(bound)
    tail = Fraction(4 * big_i + 6, 2**big_i)
    return {
        "kind": "heuristic",
        "bound": str(bound),
        "terms": count,
        "partial_sum": partial,
        "tail_bound": f"{tail.numerator}/{tail.denominator}",
        "tail_bound_float": float(tail),
        "precision_digits": dps,
    }

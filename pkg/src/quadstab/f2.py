"""GF(2) linear algebra on square classes, using int bitsets."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import SquareClass
from .errors import UnknownCofactorError


def _rank(rows: list[int]) -> int:
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work[0] & -work[0]
        rank += 1
        head = work[0]
        work = [r ^ head if r & pivot else r for r in work[1:]]
        work = [r for r in work if r]
    return rank


@dataclass(frozen=True)
class AffineSolution:
    rank: int
    origin_in_affine_span: bool
    witness: tuple[int, ...] | None  # indices into the input list


def solve_affine(classes: list[SquareClass]) -> AffineSolution:
    """Span rank of the classes in Q*/Q*^2, and whether some odd-sized
    subset multiplies to a square (the affine span contains the origin).

    Coordinates are the union of the supports plus one sign coordinate
    (-1 is itself a basis element of Q*/Q*^2).  Solves V x = 0 with the
    parity constraint sum(x) = 1 over GF(2); returns a witness subset when
    one exists.  Rejects classes whose cofactor is unresolved: their
    coordinates are not certain.
    """
    for i, c in enumerate(classes):
        if not c.cofactor_known:
            raise UnknownCofactorError(f"class at index {i} has unresolved cofactor")

    coords = sorted({p for c in classes for p in c.support})
    coord_index = {p: i + 1 for i, p in enumerate(coords)}  # bit 0 = sign
    vectors = []
    for c in classes:
        v = 1 if c.sign < 0 else 0
        for p in c.support:
            v |= 1 << coord_index[p]
        vectors.append(v)

    rank = _rank(vectors)

    # One equation per coordinate: sum_j x_j v_j[coord] = 0, plus parity = 1.
    # Row format: bits 0..n-1 select classes, bit n is the RHS.
    n = len(classes)
    rhs_bit = 1 << n
    equations = []
    for ci in range(len(coords) + 1):
        row = 0
        for j, v in enumerate(vectors):
            if (v >> ci) & 1:
                row |= 1 << j
        equations.append(row)
    equations.append(((1 << n) - 1) | rhs_bit)  # parity constraint

    # Gaussian elimination over the class-selection bits.  Pivot = lowest set
    # bit, so each pivot row only involves bits >= its pivot; reducing in
    # ascending pivot order keeps the invariant.
    pivot_rows: dict[int, int] = {}
    class_mask = (1 << n) - 1
    for row in equations:
        for pos in sorted(pivot_rows):
            if (row >> pos) & 1:
                row ^= pivot_rows[pos]
        if row & class_mask:
            pos = (row & -row).bit_length() - 1
            pivot_rows[pos] = row
        elif row & rhs_bit:
            return AffineSolution(rank, False, None)  # 0 = 1: inconsistent

    # Back-substitute with free variables set to 0.
    x = 0
    for pos in sorted(pivot_rows, reverse=True):
        row = pivot_rows[pos]
        val = (row >> n) & 1
        others = row & ~(1 << pos) & class_mask
        if val ^ (bin(others & x).count("1") & 1):
            x |= 1 << pos
    witness = tuple(j for j in range(n) if (x >> j) & 1)
    return AffineSolution(rank, True, witness)

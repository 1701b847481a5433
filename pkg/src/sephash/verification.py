"""Separation oracles and greedy subfamily extraction.

A matrix is {w1,...,wt}-separating when every choice of pairwise disjoint
column sets C1,...,Ct with |Ci| = wi admits a row on which the symbol sets
of the parts are pairwise disjoint.  find_violation decides this exactly
and returns a reproducible certificate when the property fails.

Everything here is pure and operates on immutable matrices; calls are safe
to run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .matrix import Matrix, normalize_weights


class PreconditionError(ValueError):
    """An operation's documented precondition does not hold for the input."""


@dataclass(frozen=True)
class ViolationWitness:
    """Pairwise disjoint column sets that no row of the matrix separates.

    Parts are sorted tuples, ordered by size then by smallest member, so a
    given matrix and type always yield the same certificate.
    """

    parts: tuple[tuple[int, ...], ...]

    def as_json_dict(self, checked_rows: int) -> dict:
        return {"parts": [list(p) for p in self.parts], "checked_rows": checked_rows}


@dataclass(frozen=True)
class SpecialColumnReport:
    """A column owning a coordinate shared by at most one other column."""

    column: int
    row: int
    sharers: int

    def __post_init__(self):
        if self.sharers > 1:
            raise ValueError("a special coordinate has at most one sharer")


def row_separates(m: Matrix, row: int, parts) -> bool:
    """True iff the symbol sets of the parts on this row are pairwise disjoint.

    This is the definitional check; certificate re-validation goes through
    it rather than through the pruned enumeration path.
    """
    if not 0 <= row < m.rows:
        raise IndexError(f"row {row} out of range")
    norm = []
    seen: set[int] = set()
    for part in parts:
        cur = tuple(part)
        for c in cur:
            if not 0 <= c < m.cols:
                raise IndexError(f"column {c} out of range")
            if c in seen:
                raise ValueError(f"parts overlap at column {c}")
            seen.add(c)
        norm.append(cur)
    symbol_sets = [{m.entries[row][c] for c in part} for part in norm]
    return all(
        a.isdisjoint(b) for a, b in combinations(symbol_sets, 2)
    )


def _pair_agreement_masks(m: Matrix) -> list[list[int]]:
    """masks[i][j] has bit r set iff columns i and j agree on row r."""
    cols = m.columns()
    n = m.cols
    masks = [[0] * n for _ in range(n)]
    for i in range(n):
        ci = cols[i]
        for j in range(i + 1, n):
            cj = cols[j]
            mask = 0
            for r in range(m.rows):
                if ci[r] == cj[r]:
                    mask |= 1 << r
            masks[i][j] = mask
            masks[j][i] = mask
    return masks


def _part_tuples(n: int, weights: tuple[int, ...]):
    """Yield disjoint part tuples in canonical lexicographic order.

    Parts are filled in ascending-size order; consecutive equal-size parts
    are forced to ascend by smallest member so each unordered choice is
    enumerated once.
    """

    def rec(parts, used):
        k = len(parts)
        if k == len(weights):
            yield tuple(parts)
            return
        w = weights[k]
        free = [c for c in range(n) if c not in used]
        for combo in combinations(free, w):
            if k > 0 and weights[k - 1] == w and combo[0] < parts[-1][0]:
                continue
            parts.append(combo)
            used.update(combo)
            yield from rec(parts, used)
            used.difference_update(combo)
            parts.pop()

    yield from rec([], set())


def find_violation(m: Matrix, weights) -> ViolationWitness | None:
    """Exact separation oracle.

    Returns None iff the matrix is {w1,...,wt}-separating.  When it is not,
    returns the first violating part tuple in the canonical enumeration
    order.  Matrices with fewer than u columns are vacuously separating.
    """
    w = normalize_weights(weights)
    if m.cols < w.u:
        return None
    masks = _pair_agreement_masks(m)
    full = (1 << m.rows) - 1
    for parts in _part_tuples(m.cols, w.weights):
        bad = 0
        for pi, pj in combinations(parts, 2):
            for x in pi:
                row_x = masks[x]
                for y in pj:
                    bad |= row_x[y]
            if bad == full:
                break
        if bad == full:
            return ViolationWitness(parts)
    return None


def is_linear_shf(m: Matrix) -> bool:
    """True iff every pair of distinct columns agrees in at most one row."""
    cols = m.columns()
    for i in range(m.cols):
        for j in range(i + 1, m.cols):
            agreements = sum(1 for a, b in zip(cols[i], cols[j]) if a == b)
            if agreements > 1:
                return False
    return True


def special_columns(m: Matrix) -> list[SpecialColumnReport]:
    """Columns having some row whose symbol is shared by at most one other.

    Reports the lowest witnessing row per column.
    """
    reports = []
    for x in range(m.cols):
        for i in range(m.rows):
            sym = m.entries[i][x]
            sharers = sum(
                1 for y in range(m.cols) if y != x and m.entries[i][y] == sym
            )
            if sharers <= 1:
                reports.append(SpecialColumnReport(x, i, sharers))
                break
    return reports


def extract_nonspecial_subfamily(m: Matrix) -> tuple[Matrix, list[int]]:
    """Greedily delete special columns until none remain.

    Always deletes the lowest-index special column with respect to the
    current subfamily.  Each deletion is chargeable to a (row, symbol) pair
    and a pair can pay for at most two columns, so at most 2*N*q columns are
    ever deleted.  Returns the surviving submatrix and the deleted original
    column indices in deletion order.
    """
    alive = list(range(m.cols))
    deleted: list[int] = []
    while alive:
        current = m.submatrix(alive)
        specials = special_columns(current)
        if not specials:
            break
        victim = alive[specials[0].column]
        alive.remove(victim)
        deleted.append(victim)
    return m.submatrix(alive), deleted


def extract_linear_subfamily(m: Matrix) -> Matrix:
    """Linear subfamily of a 4-row {2,2}-separating matrix.

    Runs the special-column greedy; for a genuine SHF(4; n, q, {2,2}) the
    survivor is guaranteed linear and loses at most 8q columns.  A
    non-linear survivor certifies that the input was not {2,2}-separating
    and raises PreconditionError carrying the offending column pair.
    """
    if m.rows != 4:
        raise PreconditionError("defined only for matrices with exactly 4 rows")
    survivor, _ = extract_nonspecial_subfamily(m)
    cols = survivor.columns()
    for i in range(survivor.cols):
        for j in range(i + 1, survivor.cols):
            agreements = sum(1 for a, b in zip(cols[i], cols[j]) if a == b)
            if agreements > 1:
                err = PreconditionError(
                    "input is not {2,2}-separating: survivor columns "
                    f"{i} and {j} agree in {agreements} rows"
                )
                err.pair = (i, j)
                raise err
    return survivor

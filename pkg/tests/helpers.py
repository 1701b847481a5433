"""Shared generators and independent oracles for the test suite.

The naive separation oracle here deliberately avoids every shortcut used by
the library (no bitmasks, no deduplication, no pruning): it enumerates all
positional part tuples and applies the definition row by row.
"""

from itertools import combinations
import random

from sephash.matrix import Matrix


def naive_row_separates(m, row, parts):
    sets = [{m.entries[row][c] for c in part} for part in parts]
    for a, b in combinations(sets, 2):
        if a & b:
            return False
    return True


def _all_part_tuples(columns, sizes):
    if not sizes:
        yield ()
        return
    for head in combinations(columns, sizes[0]):
        rest = [c for c in columns if c not in head]
        for tail in _all_part_tuples(rest, sizes[1:]):
            yield (head,) + tail


def naive_is_separating(m, weights):
    """Unpruned reference oracle: True iff the matrix is W-separating."""
    sizes = sorted(weights)
    if m.cols < sum(sizes):
        return True
    for parts in _all_part_tuples(list(range(m.cols)), sizes):
        if not any(naive_row_separates(m, r, parts) for r in range(m.rows)):
            return False
    return True


def random_matrix(rng: random.Random, n_rows, n_cols, q) -> Matrix:
    return Matrix(
        tuple(
            tuple(rng.randrange(q) for _ in range(n_cols)) for _ in range(n_rows)
        ),
        q,
    )


def random_linear_extension(rng: random.Random, base: Matrix, extra: int, attempts=400) -> Matrix:
    """Append random columns keeping all pairwise row agreements <= 1.

    Columns of the base must already be pairwise linear.  Finally shuffles
    the column order so planted structure sits at random positions.
    """
    cols = base.columns()
    for _ in range(extra):
        for _ in range(attempts):
            cand = tuple(rng.randrange(base.q) for _ in range(base.rows))
            ok = all(
                sum(1 for a, b in zip(cand, c) if a == b) <= 1 for c in cols
            )
            if ok:
                cols.append(cand)
                break
        else:
            break
    rng.shuffle(cols)
    return Matrix(tuple(zip(*cols)), base.q)


def random_binary_separating(rng: random.Random, n_rows, n_cols, w, attempts=4000):
    """Rejection-sample a binary {1,w}-separating matrix, or None."""
    from sephash.verification import find_violation

    for _ in range(attempts):
        m = random_matrix(rng, n_rows, n_cols, 2)
        if find_violation(m, [1, w]) is None:
            return m
    return None

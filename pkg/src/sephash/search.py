"""Constructive lower-bound witnesses and exact small-instance search.

Constructions self-certify: each output is re-checked by the separation
oracle before being returned (skipped only when the instance is too large
to verify at desk scale, in which case the caller is told).

exact_capacity enumerates column sets in canonical form: per-row symbol
relabeling maps some column of any family to the all-zero column, which is
then the lexicographically smallest, so searching ascending column sets
whose first member is all-zero covers every family up to relabeling.  The
branch-and-bound kernel works on per-pair row-agreement bitmasks.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from itertools import combinations, product

from .bounds import all_distinct_probability
from .hypergraph import (
    PartiteHypergraph,
    find_rainbow_cycle,
    is_linear_hypergraph,
)
from .matrix import Matrix, SeparationType, normalize_weights
from .verification import PreconditionError, find_violation

# Upper limit on enumerated part tuples for in-constructor verification.
_SELF_CHECK_TUPLE_LIMIT = 2_000_000

_DEFAULT_NODE_BUDGET = 5_000_000


def identity_construction(n_rows: int, w: int) -> Matrix:
    """N x N binary identity matrix, a verified SHF(N; N, 2, {1, w}).

    The row owned by a column shows 1 there and 0 on every other column, so
    singletons are always separated from any w-set.  Requires w <= N - 1 so
    the type is non-vacuous.
    """
    if n_rows < 2:
        raise PreconditionError("need at least 2 rows")
    if not 1 <= w <= n_rows - 1:
        raise PreconditionError(f"w must lie in [1, {n_rows - 1}]")
    m = Matrix(
        tuple(tuple(1 if i == j else 0 for j in range(n_rows)) for i in range(n_rows)),
        2,
    )
    assert find_violation(m, [1, w]) is None
    return m


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _frameproof_check_cost(n: int, w: int, rows: int) -> int:
    cost = n
    for i in range(w):
        cost = cost * (n - 1 - i) // (i + 1)
    return cost * rows


def reed_solomon_frameproof(q: int, n_rows: int, w: int) -> Matrix:
    """Polynomial evaluation code over a prime field as a {1, w}-separating family.

    Columns are the evaluations of all q**k polynomials of degree < k at the
    points 0..N-1, with k = ceil(N / w).  Two distinct columns agree in at
    most k - 1 < N/w positions, so a column can collide with w others in
    fewer than N rows and some row separates it from all of them.
    """
    if not _is_prime(q):
        raise PreconditionError(f"{q} is not prime; only prime fields are supported")
    if not 1 <= n_rows <= q:
        raise PreconditionError(f"need 1 <= N <= q, got N={n_rows}, q={q}")
    if w < 1:
        raise PreconditionError("w must be positive")
    k = -(-n_rows // w)
    points = list(range(n_rows))
    columns = []
    for coeffs in product(range(q), repeat=k):
        col = []
        for x in points:
            val = 0
            for c in reversed(coeffs):
                val = (val * x + c) % q
            col.append(val)
        columns.append(tuple(col))
    m = Matrix(tuple(zip(*columns)), q)
    assert m.cols == q**k
    if _frameproof_check_cost(m.cols, w, n_rows) <= _SELF_CHECK_TUPLE_LIMIT:
        assert find_violation(m, [1, w]) is None
    return m


def cyclic_overlap_matrix(k: int, q: int) -> Matrix:
    """k x k matrix whose k columns form a closed chain of row overlaps.

    Row i gives symbol 0 to columns i and i+1 (mod k) and distinct nonzero
    symbols to everything else, so consecutive columns agree exactly once
    and other pairs never agree.  The associated k-partite hypergraph is
    linear and carries a rainbow k-cycle; for even k = 2w no row separates
    the odd-position columns from the even-position ones.
    """
    if k < 3:
        raise ValueError("need k >= 3")
    if q < k - 1:
        raise ValueError(f"need q >= {k - 1} to keep the pattern linear")
    rows = []
    for i in range(k):
        row = [0] * k
        filler = 1
        for j in range(k):
            if j != i and j != (i + 1) % k:
                row[j] = filler
                filler += 1
        rows.append(tuple(row))
    return Matrix(tuple(rows), q)


@dataclass(frozen=True)
class CapacityResult:
    """Outcome of the exact capacity search.

    exact=True means the search ran to completion and value is the true
    maximum; otherwise the node budget tripped and value is only the best
    found (a lower bound).
    """

    rows: int
    q: int
    weights: tuple[int, ...]
    value: int
    witness: Matrix
    nodes: int
    elapsed: float
    exact: bool

    def as_json_dict(self) -> dict:
        from .matrix import write_matrix

        return {
            "N": self.rows,
            "q": self.q,
            "weights": list(self.weights),
            "value": self.value,
            "exact": self.exact,
            "nodes": self.nodes,
            "elapsed_seconds": self.elapsed,
            "witness": write_matrix(self.witness),
        }


class _CapacitySearch:
    """Branch-and-bound over canonical ascending column sets."""

    def __init__(self, n_rows, q, weights: SeparationType, node_budget):
        self.n_rows = n_rows
        self.q = q
        self.weights = weights.weights
        self.u = sum(self.weights)
        self.node_budget = node_budget
        self.nodes = 0
        self.columns = [tuple(col) for col in product(range(q), repeat=n_rows)]
        self.full_mask = (1 << n_rows) - 1
        self.best: list[int] = []
        self.exhausted = True
        n_cols = len(self.columns)
        self._agree_table: list[list[int]] | None = None
        self._agree_cache: dict[tuple[int, int], int] = {}
        if n_cols <= 512:
            self._agree_table = self._build_agree_table()

    def _build_agree_table(self):
        cols = self.columns
        n = len(cols)
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            ci = cols[i]
            for j in range(i + 1, n):
                cj = cols[j]
                mask = 0
                for r in range(self.n_rows):
                    if ci[r] == cj[r]:
                        mask |= 1 << r
                table[i][j] = mask
                table[j][i] = mask
        return table

    def agree(self, i, j):
        if self._agree_table is not None:
            return self._agree_table[i][j]
        key = (i, j) if i < j else (j, i)
        got = self._agree_cache.get(key)
        if got is None:
            ci, cj = self.columns[key[0]], self.columns[key[1]]
            got = 0
            for r in range(self.n_rows):
                if ci[r] == cj[r]:
                    got |= 1 << r
            self._agree_cache[key] = got
        return got

    def _tuples_containing(self, members, required):
        """Disjoint part tuples drawn from `members` that use all of `required`.

        Equal-size parts ascend by smallest element so each unordered tuple
        appears once.
        """
        sizes = self.weights
        req = set(required)

        def rec(parts, used, pool):
            k = len(parts)
            if k == len(sizes):
                if req <= used:
                    yield tuple(parts)
                return
            # Remaining slots must still be able to absorb required members.
            remaining_capacity = sum(sizes[k:])
            if len(req - used) > remaining_capacity:
                return
            w = sizes[k]
            for combo in combinations(pool, w):
                if k > 0 and sizes[k - 1] == w and combo[0] < parts[-1][0]:
                    continue
                new_pool = [x for x in pool if x not in combo]
                parts.append(combo)
                yield from rec(parts, used | set(combo), new_pool)
                parts.pop()

        yield from rec([], set(), sorted(members))

    def _tuple_unseparated(self, parts):
        bad = 0
        agree = self.agree
        for a in range(len(parts)):
            pa = parts[a]
            for b in range(a + 1, len(parts)):
                for x in pa:
                    for y in parts[b]:
                        bad |= agree(x, y)
            if bad == self.full_mask:
                return True
        return bad == self.full_mask

    def extend_ok(self, chosen, new_col, fresh_pair=None):
        """Can new_col join `chosen` without creating an unseparated tuple?

        fresh_pair restricts the scan to tuples through both of its members
        (used when the rest were already checked at the parent node).
        """
        if len(chosen) + 1 < self.u:
            return True
        members = chosen + [new_col]
        required = (new_col,) if fresh_pair is None else fresh_pair
        for parts in self._tuples_containing(members, required):
            if self._tuple_unseparated(parts):
                return False
        return True

    def run(self):
        n_cols = len(self.columns)
        if n_cols == 0:
            return
        chosen = [0]  # canonical: the all-zero column is index 0
        cand = list(range(1, n_cols))
        self.best = [0]
        self._dfs(chosen, cand)

    def _dfs(self, chosen, cand):
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        if len(chosen) + len(cand) <= len(self.best):
            return
        if self.nodes >= self.node_budget:
            self.exhausted = False
            return
        for idx, col in enumerate(cand):
            if len(chosen) + (len(cand) - idx) <= len(self.best):
                return
            self.nodes += 1
            if self.nodes >= self.node_budget:
                self.exhausted = False
                return
            if not self.extend_ok(chosen, col):
                continue
            chosen.append(col)
            # Survivors of the parent filter only need checks through
            # (col, d); all other tuples were vetted one level up.
            new_cand = [
                d for d in cand[idx + 1 :] if self.extend_ok(chosen, d, (col, d))
            ]
            self._dfs(chosen, new_cand)
            chosen.pop()


def exact_capacity(
    n_rows: int, q: int, weights, node_budget: int = _DEFAULT_NODE_BUDGET
) -> CapacityResult:
    """Largest n for which an N x n W-separating matrix over q symbols exists.

    Exhaustive up to per-row symbol relabeling; requires q**N <= 10_000
    candidate columns.  When the node budget trips, the best family found so
    far is returned with exact=False.
    """
    w = normalize_weights(weights)
    if w.t < 2:
        raise ValueError("need at least two parts")
    if n_rows < 1:
        raise ValueError("need N >= 1")
    if q**n_rows > 10_000:
        raise ValueError("search space too large: need q**N <= 10000")
    start = time.perf_counter()
    u = w.u
    searcher = _CapacitySearch(n_rows, q, w, node_budget)
    searcher.run()
    best = searcher.best
    elapsed = time.perf_counter() - start
    if len(best) >= u - 1 or q**n_rows >= u - 1:
        # The canonical search covers the vacuous regime whenever enough
        # distinct columns exist.
        witness = Matrix(
            tuple(
                tuple(searcher.columns[j][r] for j in best) for r in range(n_rows)
            ),
            q,
        )
        value = len(best)
    else:
        # Fewer than u-1 distinct columns exist at all; duplicates still
        # give the vacuous maximum u-1.
        witness = Matrix(tuple(tuple(0 for _ in range(u - 1)) for _ in range(n_rows)), q)
        value = u - 1
    assert find_violation(witness, w) is None
    return CapacityResult(
        rows=n_rows,
        q=q,
        weights=w.weights,
        value=value,
        witness=witness,
        nodes=searcher.nodes,
        elapsed=elapsed,
        exact=searcher.exhausted,
    )


def random_shf_alteration(
    n_rows: int, q: int, weights, seed: int, trials: int = 1
) -> Matrix:
    """Random construction with deletion: sample columns, prune violations.

    Starts from an expectation-optimal number of random columns (falls back
    to 2u when the all-distinct probability vanishes), then repeatedly asks
    the oracle for a violation and deletes that witness's highest column
    until none remains.  Deterministic for a fixed seed; with trials > 1 the
    largest verified family over per-trial seeds is returned.
    """
    w = normalize_weights(weights)
    if q < w.t:
        raise PreconditionError(
            f"need q >= t = {w.t}: fewer symbols can never separate {w.t} parts"
        )
    if n_rows < 1:
        raise ValueError("need N >= 1")
    if trials < 1:
        raise ValueError("need trials >= 1")
    u = w.u
    g = float(all_distinct_probability(q, u))
    if g > 0.0:
        optimal = (u * (1.0 - g) ** n_rows) ** (-1.0 / (u - 1))
        m_init = max(2 * u, math.ceil(optimal))
    else:
        m_init = 2 * u
    m_init = min(m_init, 4096)

    best: Matrix | None = None
    for trial in range(trials):
        rng = random.Random(seed + trial)
        cols = [
            tuple(rng.randrange(q) for _ in range(n_rows)) for _ in range(m_init)
        ]
        # Deleting a column per violation only removes tuples, so the loop
        # monotonically shrinks to a verified family (never below u-1).
        while len(cols) >= u:
            witness = find_violation(Matrix(tuple(zip(*cols)), q), w)
            if witness is None:
                break
            victim = max(c for part in witness.parts for c in part)
            cols.pop(victim)
        result = Matrix(tuple(zip(*cols)), q)
        assert find_violation(result, w) is None
        if best is None or result.cols > best.cols:
            best = result
    return best


@dataclass(frozen=True)
class RainbowFreeResult:
    """Best-found linear partite hypergraph with no rainbow cycles.

    certified=True means the subset search ran to completion, so the edge
    count is the true maximum for the given part count and part size.
    """

    edge_count: int
    hypergraph: PartiteHypergraph
    nodes: int
    certified: bool

    def as_json_dict(self) -> dict:
        return {
            "parts": self.hypergraph.parts,
            "part_size": self.hypergraph.part_size,
            "edge_count": self.edge_count,
            "edges": [list(e) for e in self.hypergraph.edges],
            "nodes": self.nodes,
            "certified": self.certified,
        }


def rainbow_free_extremal_search(
    parts: int, part_size: int, k_range, node_budget: int = 200_000
) -> RainbowFreeResult:
    """Largest linear hypergraph avoiding rainbow cycles of the given lengths.

    Exhaustive subset search over all part_size**parts candidate edges in
    lexicographic order, keeping linearity and cycle-freeness incrementally
    (a new cycle must pass through the newest edge).  The diagonal matching
    seeds the search, so the result always has at least part_size edges.
    Budget overruns return the best found, flagged uncertified.  The final
    result is re-verified from scratch before returning.
    """
    if parts > 6 or part_size > 5:
        raise ValueError("desk-scale search: need parts <= 6 and part_size <= 5")
    if parts < 1 or part_size < 1:
        raise ValueError("need at least one part and one vertex")
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("need at least one cycle length")
    for k in ks:
        if not 3 <= k <= parts:
            raise ValueError(f"cycle length {k} outside [3, {parts}]")
    candidates = [tuple(e) for e in product(range(part_size), repeat=parts)]

    # Seed: pairwise disjoint diagonal edges share no vertex, hence no cycle.
    seed_edges = [tuple(s for _ in range(parts)) for s in range(part_size)]
    state = {"best": list(seed_edges), "nodes": 0, "certified": True}

    def linear_with(edges, cand):
        for e in edges:
            if sum(1 for i in range(parts) if e[i] == cand[i]) > 1:
                return False
        return True

    def cycle_free_with(edges, cand):
        trial = PartiteHypergraph(parts, part_size, tuple(edges) + (cand,))
        new_index = len(edges)
        for k in ks:
            if find_rainbow_cycle(trial, k, require_edge=new_index) is not None:
                return False
        return True

    def dfs(edges, start):
        if len(edges) > len(state["best"]):
            state["best"] = list(edges)
        if state["nodes"] >= node_budget:
            state["certified"] = False
            return
        remaining = len(candidates) - start
        if len(edges) + remaining <= len(state["best"]):
            return
        for idx in range(start, len(candidates)):
            if len(edges) + (len(candidates) - idx) <= len(state["best"]):
                return
            cand = candidates[idx]
            state["nodes"] += 1
            if state["nodes"] >= node_budget:
                state["certified"] = False
                return
            if not linear_with(edges, cand):
                continue
            if not cycle_free_with(edges, cand):
                continue
            edges.append(cand)
            dfs(edges, idx + 1)
            edges.pop()

    dfs([], 0)
    h = PartiteHypergraph(parts, part_size, tuple(state["best"]))
    assert is_linear_hypergraph(h)
    if len(h.edges) >= 3:
        for k in ks:
            assert find_rainbow_cycle(h, k) is None
    return RainbowFreeResult(
        edge_count=len(h.edges),
        hypergraph=h,
        nodes=state["nodes"],
        certified=state["certified"],
    )

"""Capacity bounds for separating hash families.

C(N, q, W) is the largest n admitting an N x n matrix over q symbols that is
W-separating.  This module evaluates every bound the library knows about:

* exact integer bounds: the linear bounds at N = u-1, the Johnson-type
  recursion, the row-grouping compositions, and the quadratic secure-
  frameproof bound;
* real-valued asymptotic bounds: the perfect-hash-family minimum and the
  small-alphabet reduction through the simplex maximum of the row
  separation polynomial (these carry an "asymptotic-approximate" flag and
  are never the basis of an exact desk-scale claim);
* the probabilistic lower bound, flagged as a lower bound.

Integer arithmetic is arbitrary precision; real-valued results are double
precision and flagged "real-valued".  All functions are pure; the recursion
memo is idempotent, so concurrent calls are safe.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .matrix import SeparationType, normalize_weights

INF = math.inf

# Provenance labels, stable across runs for scripted consumers.
PROV_JOHNSON = "johnson-recursion"
PROV_BALANCED = "balanced-grouping"
PROV_BLACKBURN = "blackburn"
PROV_TRUNG = "bazrafshan-trung"
PROV_NIU_CAO = "niu-cao"
PROV_UNIFORM = "uniform-grouping"
PROV_PROB_LOWER = "probabilistic-lower"
PROV_PHF = "perfect-hash-min"
PROV_SMALL_ALPHABET = "small-alphabet"
PROV_VACUOUS = "vacuous-columns"

FLAG_REAL = "real-valued"
FLAG_ASYMPTOTIC = "asymptotic-approximate"
FLAG_LOWER = "lower-bound"
FLAG_UNCHECKED = "unchecked-hypothesis"
FLAG_MONOTONE_EXT = "monotonicity-extended"
FLAG_BELOW_VACUOUS = "below-vacuous-range"


@dataclass(frozen=True)
class BoundResult:
    """A numeric bound with the name of the producing formula.

    flags qualify how the value may be used; in particular a finite upper
    bound below u-1 contradicts the vacuous regime (n = u-1 always exists)
    and is marked below-vacuous-range rather than trusted.
    """

    value: float
    provenance: str
    params: dict = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def as_json_dict(self) -> dict:
        value = self.value
        if value == INF:
            value = "infinity"
        elif isinstance(value, float) and value.is_integer() and abs(value) < 2**53:
            pass
        return {
            "value": value,
            "provenance": self.provenance,
            "params": dict(self.params),
            "flags": list(self.flags),
        }


def _upper(value, provenance, weights: SeparationType, params, flags=()) -> BoundResult:
    """Build an upper-bound result, flagging values below the vacuous floor."""
    if value != INF and value < weights.u - 1:
        flags = tuple(flags) + (FLAG_BELOW_VACUOUS,)
    return BoundResult(value, provenance, params, tuple(flags))


def all_distinct_probability(q: int, j: int) -> Fraction:
    """Probability that j independent uniform q-ary symbols are all distinct.

    Falling factorial q(q-1)...(q-j+1) over q**j, exact.  Zero when j > q.
    """
    if j < 1:
        raise ValueError("j must be positive")
    if q < 1:
        raise ValueError("q must be positive")
    if j > q:
        return Fraction(0)
    num = 1
    for i in range(j):
        num *= q - i
    return Fraction(num, q**j)


def blackburn_bound(q: int, weights) -> BoundResult:
    """(w1*w2 + u - w1 - w2) * q columns at N = u - 1 rows."""
    w = normalize_weights(weights)
    if w.t < 2:
        raise ValueError("need at least two parts")
    w1, w2 = w.weights[0], w.weights[1]
    value = (w1 * w2 + w.u - w1 - w2) * q
    return _upper(value, PROV_BLACKBURN, w, {"q": q, "weights": w.weights, "N": w.u - 1})


def trung_bound(q: int, weights) -> BoundResult:
    """(u - 1) * q columns at N = u - 1 rows."""
    w = normalize_weights(weights)
    if w.t < 2:
        raise ValueError("need at least two parts")
    value = (w.u - 1) * q
    return _upper(value, PROV_TRUNG, w, {"q": q, "weights": w.weights, "N": w.u - 1})


def niu_cao_bound(q: int, w: int) -> BoundResult:
    """(q-1)**2 + 1 columns for type {w, w} at N = 2w rows.

    Quoted quadratic bound for secure frameproof families.  Caution: the
    published form carries small-alphabet hypotheses this quote drops; at
    q = 3, w = 2 exhaustive search exhibits a 9-column family, exceeding
    the formula's 5.  Treat small-q values as advisory.
    """
    if w < 2:
        raise ValueError("need w >= 2")
    wt = SeparationType.of([w, w])
    value = (q - 1) ** 2 + 1
    return _upper(value, PROV_NIU_CAO, wt, {"q": q, "w": w, "N": 2 * w})


def balanced_grouping_bound(n_rows: int, q: int, weights) -> BoundResult:
    """Split the rows into u-1 nearly equal groups and bound per group.

    With N = r (mod u-1), 1 <= r <= u-1, the bound is
    r * q**ceil(N/(u-1)) + (u-1-r) * q**floor(N/(u-1)).  The derivation
    assumes the floor-size instance still admits u columns; that hypothesis
    is not checked here, so results carry an assumption flag.
    """
    w = normalize_weights(weights)
    if w.u < 2:
        raise ValueError("need u >= 2")
    if n_rows < 1:
        raise ValueError("need N >= 1")
    span = w.u - 1
    r = n_rows % span
    if r == 0:
        r = span
    hi = -(-n_rows // span)
    lo = n_rows // span
    value = r * q**hi + (span - r) * q**lo
    return _upper(
        value,
        PROV_BALANCED,
        w,
        {"q": q, "weights": w.weights, "N": n_rows, "r": r},
        flags=(FLAG_UNCHECKED,),
    )


def grouping_composition_bound(n_rows: int, q: int, weights) -> BoundResult:
    """(u-1) * q**ceil(N/(u-1)): group rows, then apply the linear bound."""
    w = normalize_weights(weights)
    if w.u < 2:
        raise ValueError("need u >= 2")
    if n_rows < 1:
        raise ValueError("need N >= 1")
    value = (w.u - 1) * q ** (-(-n_rows // (w.u - 1)))
    return _upper(value, PROV_UNIFORM, w, {"q": q, "weights": w.weights, "N": n_rows})


def _decrement_weight(weights: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Decrease the i-th (1-based) weight; weights hitting zero drop out."""
    if not 1 <= i <= len(weights):
        raise ValueError(f"weight position {i} out of range")
    reduced = list(weights)
    reduced[i - 1] -= 1
    if reduced[i - 1] == 0:
        reduced.pop(i - 1)
    return tuple(sorted(reduced))


@lru_cache(maxsize=None)
def _johnson_value(n_rows: int, q: int, weights: tuple[int, ...]):
    """Dynamic program behind the Johnson-type recursion.

    Base cases (each forced by the definition of separation):
      * t = 1: no second part to separate from, so n is unbounded;
      * W = {1,1}: distinct columns are necessary and sufficient, n = q**N;
      * N <= 0: nothing is ever separated, n = u - 1;
      * N = 1: all u tuple symbols must differ on the single row, so
        n = q when q >= u, else the vacuous u - 1;
      * N <= u - 1: the linear bound (u-1)q, extended below u-1 by row
        monotonicity.
    """
    t = len(weights)
    u = sum(weights)
    if t == 1:
        return INF
    if weights == (1, 1):
        return q**n_rows
    if n_rows <= 0:
        return u - 1
    if n_rows == 1:
        return max(q, u - 1)
    if n_rows <= u - 1:
        return (u - 1) * q
    best = INF
    for i in sorted(set(weights)):
        pos = weights.index(i) + 1
        reduced = _decrement_weight(weights, pos)
        for length in range(1, n_rows + 1):
            tail = _johnson_value(n_rows - length, q, reduced)
            step = q**length + max(u - 1, tail)
            if step < best:
                best = step
    return best


def johnson_step(n_rows: int, q: int, weights, length: int, i: int) -> BoundResult:
    """One application of the recursive inequality.

    C(N, q, W) <= q**l + max(u - 1, C(N - l, q, W with wi lowered by one)).
    `i` is the 1-based position in the ascending weight list; a weight
    lowered to zero leaves the type, and a type reduced to a single part
    makes the tail unbounded.
    """
    w = normalize_weights(weights)
    if not 1 <= length <= n_rows:
        raise ValueError(f"step length must lie in [1, {n_rows}]")
    reduced = _decrement_weight(w.weights, i)
    tail = _johnson_value(n_rows - length, q, reduced)
    value = INF if tail == INF else q**length + max(w.u - 1, tail)
    return _upper(
        value,
        PROV_JOHNSON,
        w,
        {
            "q": q,
            "weights": w.weights,
            "N": n_rows,
            "l": length,
            "i": i,
            "reduced": reduced,
        },
    )


def johnson_recursive_bound(n_rows: int, q: int, weights) -> BoundResult:
    """Best bound reachable by iterating the recursive inequality."""
    w = normalize_weights(weights)
    if w.t < 2:
        raise ValueError("need at least two parts")
    if n_rows < 1:
        raise ValueError("need N >= 1")
    flags = (FLAG_MONOTONE_EXT,) if n_rows < w.u - 1 else ()
    value = _johnson_value(n_rows, q, w.weights)
    return _upper(value, PROV_JOHNSON, w, {"q": q, "weights": w.weights, "N": n_rows}, flags)


def prob_lower_bound(n_rows: int, q: int, weights) -> BoundResult:
    """Random-construction lower bound 2**-u * (1 - g)**(-N/(u-1)).

    g is the all-distinct probability of u symbols; for q < u it vanishes
    and the bound degenerates to 2**-u.  This is a LOWER bound on capacity.
    """
    w = normalize_weights(weights)
    if w.u < 2:
        raise ValueError("need u >= 2")
    g = float(all_distinct_probability(q, w.u))
    value = 2.0**-w.u * (1.0 - g) ** (-n_rows / (w.u - 1))
    return BoundResult(
        value,
        PROV_PROB_LOWER,
        {"q": q, "weights": w.weights, "N": n_rows, "g": g},
        (FLAG_LOWER, FLAG_REAL),
    )


def perfect_hash_upper_bound(n_rows: float, q: int, t: int) -> BoundResult:
    """Minimum over j of (t-j-1) * ((q-j)/(t-j-1)) ** (g(q, j+1) * N).

    Upper bound for type {1,...,1} with t parts; the row count may be real
    because reductions feed scaled row counts in.  The asymptotic correction
    factor is taken as 1, hence the asymptotic-approximate flag.  For t = 2
    the only term is q**N, which is exact.
    """
    if t < 2:
        raise ValueError("need t >= 2")
    if q < t:
        raise ValueError("need q >= t")
    if n_rows < 0:
        raise ValueError("need N >= 0")
    best = INF
    best_j = 0
    for j in range(t - 1):
        g = float(all_distinct_probability(q, j + 1))
        value = (t - j - 1) * ((q - j) / (t - j - 1)) ** (g * n_rows)
        if value < best:
            best = value
            best_j = j
    wt = SeparationType.of([1] * t)
    return _upper(
        best,
        PROV_PHF,
        wt,
        {"q": q, "t": t, "N": n_rows, "j": best_j},
        flags=(FLAG_REAL, FLAG_ASYMPTOTIC),
    )


@lru_cache(maxsize=16)
def _perm_list(t: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(t)))


def separation_rate(weights, point) -> float:
    """Row separation polynomial: sum over permutations of prod p_pi(i)**(wi-1).

    The asymptotic probability that a row whose symbol fractions are `point`
    separates randomly drawn parts of sizes w1-1, ..., wt-1.  Weight-one
    parts contribute a factor of 1 (0**0 == 1 convention).
    """
    w = normalize_weights(weights)
    exps = [wi - 1 for wi in w.weights]
    if len(point) != w.t:
        raise ValueError("point length must match the number of parts")
    return _rate_value(tuple(exps), tuple(point))


def _rate_value(exps, point) -> float:
    total = 0.0
    for perm in _perm_list(len(exps)):
        prod = 1.0
        for i, e in enumerate(exps):
            prod *= point[perm[i]] ** e
        total += prod
    return total


def _separation_rate_grad(exps, point) -> list[float]:
    t = len(exps)
    grad = [0.0] * t
    for perm in _perm_list(t):
        vals = [point[perm[i]] ** exps[i] for i in range(t)]
        for i, e in enumerate(exps):
            if e == 0:
                continue
            rest = 1.0
            for k in range(t):
                if k != i:
                    rest *= vals[k]
            grad[perm[i]] += e * point[perm[i]] ** (e - 1) * rest
    return grad


def _project_simplex(v) -> list[float]:
    """Euclidean projection onto {p : p >= 0, sum p = 1}."""
    sorted_v = sorted(v, reverse=True)
    cumulative = 0.0
    theta = 0.0
    for i, val in enumerate(sorted_v):
        cumulative += val
        candidate = (cumulative - 1.0) / (i + 1)
        if val - candidate > 0:
            theta = candidate
    return [max(x - theta, 0.0) for x in v]


@dataclass(frozen=True)
class SimplexMax:
    """Maximizer of the separation polynomial over the probability simplex."""

    point: tuple[float, ...]
    value: float
    starts: int
    iterations: int
    converged: bool


def equal_weight_max_rate(t: int, w: int) -> float:
    """Closed-form simplex maximum for t equal weights w: t! * (1/t)**(t(w-1))."""
    if t < 2:
        raise ValueError("need t >= 2")
    if w < 2:
        raise ValueError("need w >= 2")
    return math.factorial(t) * (1.0 / t) ** (t * (w - 1))


def max_separation_rate(weights, tolerance: float = 1e-9, max_iterations: int = 10_000) -> SimplexMax:
    """Maximize the separation polynomial over the probability simplex.

    Multi-start projected gradient ascent with backtracking: the barycenter,
    perturbed vertices, edge blends, and seeded Dirichlet draws, 10*t starts
    in total.  Converges when the projected-gradient step shrinks below
    tolerance.  The returned point is sorted ascending (the polynomial is
    invariant under permuting equal weights).  Limited to t <= 8 because the
    objective sums t! terms.
    """
    w = normalize_weights(weights)
    t = w.t
    if not 2 <= t <= 8:
        raise ValueError("supported for 2 <= t <= 8 parts")
    exps = tuple(wi - 1 for wi in w.weights)

    def objective(p):
        return _rate_value(exps, tuple(p))

    rng = random.Random(24862)
    starts: list[list[float]] = [[1.0 / t] * t]
    for v in range(t):
        starts.append([0.9 if i == v else 0.1 / (t - 1) for i in range(t)])
    while len(starts) < 10 * t:
        draw = [rng.gammavariate(1.0, 1.0) for _ in range(t)]
        total = sum(draw)
        starts.append([x / total for x in draw])

    best_point = starts[0]
    best_value = objective(best_point)
    total_iters = 0
    converged = False
    for start in starts:
        p = list(start)
        fp = objective(p)
        step = 1.0
        anchor = fp
        since_progress = 0
        last_move: list[float] | None = None
        for _ in range(max_iterations):
            total_iters += 1
            grad = _separation_rate_grad(exps, p)
            gmax = max(abs(g) for g in grad)
            if gmax == 0.0:
                converged = True
                break
            # Scale-free ascent: unit-sup-norm direction keeps the step
            # geometry independent of the objective's magnitude.
            direction = [g / gmax for g in grad]
            moved = _project_simplex([p[i] + direction[i] for i in range(t)])
            gap = max(abs(moved[i] - p[i]) for i in range(t))
            if gap < tolerance:
                converged = True
                break
            # Oscillation damping: a gradient opposing the last move means
            # the step overshot the ridge, so shrink before moving again.
            if last_move is not None:
                if sum(g * mv for g, mv in zip(grad, last_move)) < 0.0:
                    step *= 0.25
            cand = _project_simplex([p[i] + step * direction[i] for i in range(t)])
            fc = objective(cand)
            if fc > fp:
                last_move = [cand[i] - p[i] for i in range(t)]
                p, fp = cand, fc
                step = min(step * 1.3, 1.0)
            else:
                step *= 0.5
            # Stop once no cumulatively significant improvement shows up.
            if fp - anchor > 1e-12 * max(abs(anchor), 1e-30):
                anchor = fp
                since_progress = 0
            else:
                since_progress += 1
                if since_progress >= 50:
                    converged = True
                    break
            if step < 1e-11:
                converged = True
                break
        if fp > best_value:
            best_value = fp
            best_point = p
    point = tuple(sorted(max(x, 0.0) for x in best_point))
    total = sum(point)
    point = tuple(x / total for x in point)
    return SimplexMax(point, best_value, len(starts), total_iters, converged)


def small_alphabet_bound(n_rows: int, t: int, weights) -> BoundResult:
    """Reduction bound for q = t and every weight at least 2.

    Scales the row count by the simplex maximum of the separation
    polynomial and falls through to the perfect-hash-family bound:
    C(N, t, W) <= phf(p* N, t, t) + u - t.  For equal weights the closed
    form of the scaled exponents is also evaluated and the smaller value is
    reported; params note which route won.
    """
    w = normalize_weights(weights)
    if w.t != t:
        raise ValueError("weight count must equal t")
    if t < 2:
        raise ValueError("need t >= 2")
    if min(w.weights) < 2:
        raise ValueError("every weight must be at least 2")
    u = w.u
    equal = len(set(w.weights)) == 1
    if equal:
        rate = equal_weight_max_rate(t, w.weights[0])
        rate_route = "closed-form"
    else:
        rate = max_separation_rate(w).value
        rate_route = "optimizer"
    phf = perfect_hash_upper_bound(rate * n_rows, t, t)
    value = phf.value + (u - t)
    route = "reduction"
    if equal:
        wv = w.weights[0]
        tf = math.factorial(t)
        alt = min(
            2.0 ** (tf * tf * n_rows / t ** (t * wv - 1)),
            (t - 1) * (t / (t - 1)) ** (tf * n_rows / t ** (t * wv - t)),
        ) + (u - t)
        if alt < value:
            value = alt
            route = "equal-weight-closed-form"
    return _upper(
        value,
        PROV_SMALL_ALPHABET,
        w,
        {
            "t": t,
            "weights": w.weights,
            "N": n_rows,
            "rate": rate,
            "rate_route": rate_route,
            "route": route,
            "phf_j": phf.params["j"],
        },
        flags=(FLAG_REAL, FLAG_ASYMPTOTIC),
    )


def vacuous_lower_bound(weights) -> BoundResult:
    """C >= u - 1 always: any u-1 columns are separating for lack of tuples."""
    w = normalize_weights(weights)
    return BoundResult(
        w.u - 1, PROV_VACUOUS, {"weights": w.weights}, (FLAG_LOWER,)
    )


def applicable_upper_bounds(n_rows: int, q: int, weights) -> list[BoundResult]:
    """Every upper bound whose hypotheses hold at (N, q, W)."""
    w = normalize_weights(weights)
    if w.t < 2:
        raise ValueError("need at least two parts")
    results = []
    if n_rows <= w.u - 1:
        ext = () if n_rows == w.u - 1 else (FLAG_MONOTONE_EXT,)
        tb = trung_bound(q, w)
        bb = blackburn_bound(q, w)
        results.append(BoundResult(tb.value, tb.provenance, {**tb.params, "N": n_rows}, tb.flags + ext))
        results.append(BoundResult(bb.value, bb.provenance, {**bb.params, "N": n_rows}, bb.flags + ext))
    if w.t == 2 and w.weights[0] == w.weights[1] and w.weights[0] >= 2 and n_rows == 2 * w.weights[0]:
        results.append(niu_cao_bound(q, w.weights[0]))
    if q == w.t and min(w.weights) >= 2:
        results.append(small_alphabet_bound(n_rows, w.t, w))
    results.append(balanced_grouping_bound(n_rows, q, w))
    results.append(johnson_recursive_bound(n_rows, q, w))
    results.append(grouping_composition_bound(n_rows, q, w))
    return results


def best_upper_bound(n_rows: int, q: int, weights) -> BoundResult:
    """Minimum over all applicable upper bounds.

    Results flagged below-vacuous-range (a formula evaluated outside its
    sensible parameter range) cannot be correct upper bounds and are
    skipped.  The winner is checked against the probabilistic lower bound.
    """
    w = normalize_weights(weights)
    candidates = [
        b for b in applicable_upper_bounds(n_rows, q, w) if FLAG_BELOW_VACUOUS not in b.flags
    ]
    winner = min(candidates, key=lambda b: b.value)
    lower = prob_lower_bound(n_rows, q, w)
    assert winner.value >= lower.value, "upper bound fell below the probabilistic lower bound"
    return winner

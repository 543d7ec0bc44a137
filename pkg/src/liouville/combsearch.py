"""Multiset-intersection objectives for the 3- and n-point problems, and search.

Every objective is a list of *terms*.  A term turns one row into a key, and
the objective intersects the resulting multisets (key-wise minimum count) and
divides the intersection size by the number of rows.  Keys from different
terms need not come from the same row; ``semantics="matched"`` gives the
stricter reading in which a row counts only if every term maps it to the same
key.
"""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Sequence

from .errors import BadDimension, BudgetExceeded, LiouvilleError, TooShort
from .textio import fraction_to_text

log = logging.getLogger(__name__)

# A term is a tuple of half-open index ranges; the key is the tuple of range sums.
Term = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Objective:
    id: str
    n: int  # row dimension; for SEQUENCE, the minimum sequence length
    terms: tuple[tuple[int, Term], ...]  # (window length, term)

    @property
    def name(self) -> str:
        return self.id if self.id in ("PAIR3", "SEQUENCE") else f"{self.id}({self.n})"

    def __call__(self, V, semantics: str = "weak") -> Fraction:
        return evaluate(self, V, semantics)


def _pair(i: int, k: int, m: int) -> Term:
    # 1-based (i..k, k+1..m) -> 0-based half-open ranges
    return ((i - 1, k), (k, m))


def pair3() -> Objective:
    terms = [_pair(1, 1, 2), _pair(2, 2, 3), _pair(1, 2, 3), _pair(1, 1, 3)]
    return Objective("PAIR3", 3, tuple((3, t) for t in terms))


def general(n: int) -> Objective:
    """Terms ``(p_i + .. + p_k, p_{k+1} + .. + p_m)`` for ``1 <= i <= k < m <= n``."""
    if n < 2:
        raise BadDimension("general objective needs n >= 2")
    terms = [_pair(i, k, m) for k in range(1, n) for i in range(1, k + 1)
             for m in range(k + 1, n + 1)]
    return Objective("GENERAL", n, tuple((n, t) for t in terms))


def chain(d: int) -> Objective:
    """Single-integer terms ``p_i + .. + p_j`` for ``1 <= i <= j <= d``."""
    if d < 1:
        raise BadDimension("chain objective needs d >= 1")
    terms = [((i, j + 1),) for i in range(d) for j in range(i, d)]
    return Objective("CHAIN", d, tuple((d, t) for t in terms))


def sequence() -> Objective:
    # windows of a_1..a_n: (a_i, a_{i+1}), (a_j + a_{j+1}, a_{j+2}), (a_k, a_{k+1} + a_{k+2})
    terms = [(2, ((0, 1), (1, 2))), (3, ((0, 2), (2, 3))), (3, ((0, 1), (1, 3)))]
    return Objective("SEQUENCE", 3, tuple(terms))


def get_objective(name: str, n: int | None = None) -> Objective:
    name = name.lower()
    if name == "pair3":
        return pair3()
    if name == "general":
        return general(n if n is not None else 3)
    if name == "chain":
        return chain(n if n is not None else 2)
    if name == "sequence":
        return sequence()
    raise ValueError(f"unknown objective {name!r}")


def _key(row, term: Term):
    return tuple(sum(row[a:b]) for a, b in term)


def term_multisets(obj: Objective, V) -> list[Counter]:
    if obj.id == "SEQUENCE":
        a = list(V)
        return [Counter(_key(a[s:s + w], t) for s in range(len(a) - w + 1))
                for w, t in obj.terms]
    return [Counter(_key(row, t) for row in V) for _, t in obj.terms]


def _check(obj: Objective, V):
    rows = list(V.rows if hasattr(V, "rows") else V)
    if obj.id == "SEQUENCE":
        if len(rows) < 3:
            raise TooShort("sequence objective needs length >= 3")
        return rows
    if not rows:
        raise LiouvilleError("candidate set is empty")
    for row in rows:
        if len(row) != obj.n:
            raise BadDimension(f"{obj.name} expects rows of dimension {obj.n}, got {len(row)}")
    return rows


def intersection_size(obj: Objective, rows, semantics: str = "weak") -> int:
    if semantics == "weak":
        ms = term_multisets(obj, rows)
        out = ms[0]
        for m in ms[1:]:
            out = out & m
        return out.total()
    if semantics == "matched":
        if obj.id == "SEQUENCE":
            # window starting at s must give one key under all three terms
            count = 0
            for s in range(len(rows) - 2):
                keys = {_key(rows[s:s + w], t) for w, t in obj.terms}
                count += len(keys) == 1
            return count
        return sum(1 for row in rows if len({_key(row, t) for _, t in obj.terms}) == 1)
    raise ValueError(f"unknown semantics {semantics!r}")


def evaluate(obj: Objective, V, semantics: str = "weak") -> Fraction:
    rows = _check(obj, V)
    return Fraction(intersection_size(obj, rows, semantics), len(rows))


def objective_pair3(V) -> Fraction:
    return evaluate(pair3(), V)


def objective_general(n: int, V) -> Fraction:
    return evaluate(general(n), V)


def objective_chain(W) -> Fraction:
    rows = list(W.rows if hasattr(W, "rows") else W)
    d = len(rows[0]) if rows else 1
    return evaluate(chain(d), rows)


def objective_sequence(a: Sequence[int]) -> Fraction:
    return evaluate(sequence(), list(a))


# -- search -----------------------------------------------------------------

@dataclass
class SearchResult:
    objective: str
    bounds: dict
    best_ratio: Fraction
    best_set: list[tuple[int, ...]] | list[int]
    method: str
    seed: int | None = None
    evaluated: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        best = [list(r) for r in self.best_set] if self.best_set and \
            isinstance(self.best_set[0], tuple) else list(self.best_set)
        return {
            "objective": self.objective,
            "bounds": self.bounds,
            "best_ratio": fraction_to_text(self.best_ratio),
            "best_set": best,
            "method": self.method,
            "seed": self.seed,
        }


def row_pool(obj: Objective, B: int, diagonal: bool = False) -> list[tuple[int, ...]]:
    """All rows in ``[1..B]^d`` in lexicographic order (or only constant rows)."""
    if diagonal:
        return [(a,) * obj.n for a in range(1, B + 1)]
    return list(product(range(1, B + 1), repeat=obj.n))


def search_space_size(obj: Objective, B: int, k: int, pool_size: int | None = None) -> int:
    if obj.id == "SEQUENCE":
        return sum(B ** n for n in range(3, k + 1))
    p = pool_size if pool_size is not None else B ** obj.n
    # multisets of size 1..k drawn from p rows
    return sum(math.comb(p + s - 1, s) for s in range(1, k + 1))


def _better(r1, w1, r2, w2) -> bool:
    # larger ratio wins; ties go to the lexicographically smallest witness
    return r1 > r2 or (r1 == r2 and w1 < w2)


def _scan_prefix(args):
    obj, semantics, pool, k, first = args
    best_r, best_w, count = Fraction(-1), None, 0
    rest = pool[first:]
    for size in range(0, k):
        for tail in combinations_with_replacement(range(len(rest)), size):
            rows = [pool[first]] + [rest[t] for t in tail]
            r = Fraction(intersection_size(obj, rows, semantics), len(rows))
            count += 1
            w = tuple(rows)
            if best_w is None or _better(r, w, best_r, best_w):
                best_r, best_w = r, w
    return best_r, best_w, count


def _scan_sequences(args):
    obj, semantics, B, n, first = args
    best_r, best_w, count = Fraction(-1), None, 0
    for tail in product(range(1, B + 1), repeat=n - 1):
        a = (first, *tail)
        r = Fraction(intersection_size(obj, list(a), semantics), n)
        count += 1
        if best_w is None or _better(r, a, best_r, best_w):
            best_r, best_w = r, a
    return best_r, best_w, count


def _map(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return list(map(fn, tasks))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))


def exhaustive_search(obj: Objective, B: int, k: int, rows: Sequence | None = None,
                      budget: int = 5_000_000, workers: int = 1,
                      semantics: str = "weak") -> SearchResult:
    """Exact maximum over all multisets of at most ``k`` rows from the pool.

    The pool defaults to ``[1..B]^d``; ``rows`` restricts it.  For SEQUENCE the
    space is every sequence in ``[1..B]^n`` with ``3 <= n <= k``.  The space is
    partitioned by its first (smallest) row, scanned per class and reduced
    with a deterministic max, so the answer does not depend on ``workers``.
    """
    if k < 1 or B < 1:
        raise LiouvilleError("B and k must be positive")
    pool = sorted(set(map(tuple, rows))) if rows is not None else row_pool(obj, B)
    total = search_space_size(obj, B, k, None if obj.id == "SEQUENCE" else len(pool))
    if total > budget:
        raise BudgetExceeded(f"search space has {total} candidates, budget is {budget}")
    if obj.id == "SEQUENCE":
        if k < 3:
            raise TooShort("sequence search needs k >= 3")
        tasks = [(obj, semantics, B, n, a) for n in range(3, k + 1) for a in range(1, B + 1)]
        parts = _map(_scan_sequences, tasks, workers)
    else:
        tasks = [(obj, semantics, pool, k, i) for i in range(len(pool))]
        parts = _map(_scan_prefix, tasks, workers)
    best_r, best_w, count = Fraction(-1), None, 0
    for r, w, c in parts:
        count += c
        if w is not None and (best_w is None or _better(r, w, best_r, best_w)):
            best_r, best_w = r, w
    d = obj.n if obj.id != "SEQUENCE" else None
    return SearchResult(obj.name, {"B": B, "k": k, "d": d}, best_r, list(best_w),
                        "EXHAUSTIVE", None, count)


def _neighbor(obj: Objective, state: list, B: int, k: int, rng: random.Random) -> list:
    s = list(state)
    if obj.id == "SEQUENCE":
        moves = ["mutate"]
        if len(s) < k:
            moves.append("insert")
        if len(s) > 3:
            moves.append("delete")
        mv = rng.choice(moves)
        if mv == "mutate":
            s[rng.randrange(len(s))] = rng.randint(1, B)
        elif mv == "insert":
            s.insert(rng.randrange(len(s) + 1), rng.randint(1, B))
        else:
            del s[rng.randrange(len(s))]
        return s
    moves = ["mutate"]
    if len(s) < k:
        moves.append("insert")
    if len(s) > 1:
        moves.append("delete")
    mv = rng.choice(moves)
    if mv == "insert":
        s.append(tuple(rng.randint(1, B) for _ in range(obj.n)))
    elif mv == "delete":
        del s[rng.randrange(len(s))]
    else:
        i = rng.randrange(len(s))
        row = list(s[i])
        row[rng.randrange(obj.n)] = rng.randint(1, B)
        s[i] = tuple(row)
    return s


def anneal_search(obj: Objective, B: int, k: int, steps: int = 10_000, t0: float = 0.5,
                  t1: float = 0.01, seed: int = 0, initial: Sequence | None = None,
                  semantics: str = "weak") -> SearchResult:
    """Simulated annealing over candidate sets, reproducible from ``seed``.

    Temperature decays geometrically from ``t0`` to ``t1``.  The best set seen
    is re-evaluated exactly before it is returned.
    """
    rng = random.Random(seed)
    if initial is not None:
        state = [tuple(r) for r in initial] if obj.id != "SEQUENCE" else list(initial)
    elif obj.id == "SEQUENCE":
        state = [rng.randint(1, B) for _ in range(3)]
    else:
        state = [tuple(rng.randint(1, B) for _ in range(obj.n))]
    cur = evaluate(obj, state, semantics)
    best, best_state = cur, list(state)
    for step in range(steps):
        t = t0 * (t1 / t0) ** (step / max(steps - 1, 1))
        cand = _neighbor(obj, state, B, k, rng)
        val = evaluate(obj, cand, semantics)
        delta = float(val - cur)
        if delta >= 0 or rng.random() < math.exp(delta / t):
            state, cur = cand, val
            if cur > best:
                best, best_state = cur, list(state)
    if obj.id != "SEQUENCE":
        best_state = sorted(best_state)
    check = evaluate(obj, best_state, semantics)
    if check != best:
        raise AssertionError("annealer reported a ratio its evaluator rejects")
    d = obj.n if obj.id != "SEQUENCE" else None
    return SearchResult(obj.name, {"B": B, "k": k, "d": d}, best, best_state, "ANNEAL", seed,
                        steps + 1, {"t0": t0, "t1": t1})


def sweep(obj: Objective, Bs: Sequence[int], ks: Sequence[int], **kw) -> list[dict]:
    """Exhaustive best ratio for each ``(B, k)`` cell, for CSV output."""
    out = []
    for B in Bs:
        for k in ks:
            res = exhaustive_search(obj, B, k, **kw)
            out.append({"B": B, "k": k, "best_ratio": fraction_to_text(res.best_ratio)})
    return out

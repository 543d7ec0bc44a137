"""Random walks induced on point sets by a measure on F_R.

A walk of length ``k`` from ``x`` is ``g_k ... g_1 x`` with the increments
``g_i`` drawn independently from the measure, so each new increment acts on
the left and the walk on point sets is a Markov chain with kernel
``p(x, y) = sum of mu(g) over g with g x = y``.

Sampling uses a Philox counter-based generator.  Trials are cut into blocks
of fixed size and block ``b`` always draws from the stream keyed by
``(seed, b)``, which makes the counts independent of how blocks are spread
over workers.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

import numpy as np

from .action import PointSet, act_set, l1_distance
from .plgroup import ProbMeasure, measure_to_json

BLOCK = 4096


@dataclass
class FunctionTable:
    """Finitely supported perturbation of a constant function on point sets."""

    values: Mapping[PointSet, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(0)

    def __call__(self, x: PointSet) -> Fraction:
        return Fraction(self.values.get(x, self.default))


@dataclass
class EmpiricalDistribution:
    counts: Counter
    trials: int
    step: int
    start: PointSet
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    def frequency(self, x: PointSet) -> Fraction:
        return Fraction(self.counts.get(x, 0), self.trials)

    def to_json(self) -> dict:
        return {
            "counts": {" ".join(x.to_json()): c for x, c in sorted(self.counts.items())},
            "trials": self.trials,
            "step": self.step,
            "start": self.start.to_json(),
            "seed": self.seed,
            "meta": self.meta,
        }


def one_step(mu: ProbMeasure, x: PointSet) -> Counter:
    """Exact one-step law from ``x`` as a mapping to Fraction weights."""
    law = Counter()
    for g, w in mu.atoms:
        law[act_set(g, x)] += w
    return law


def transition_probability(mu: ProbMeasure, x: PointSet, y: PointSet) -> Fraction:
    return sum((w for g, w in mu.atoms if act_set(g, x) == y), Fraction(0))


def harmonicity_residual(f: FunctionTable, mu: ProbMeasure, x: PointSet) -> Fraction:
    """``|f(x) - sum_y f(y) p(x, y)|``; the sum has one term per atom."""
    mean = sum((w * f(act_set(g, x)) for g, w in mu.atoms), Fraction(0))
    return abs(f(x) - mean)


def exact_law(mu: ProbMeasure, start: PointSet, k: int) -> dict[PointSet, Fraction]:
    """Law of the walk after ``k`` steps, by repeated one-step convolution."""
    law = {start: Fraction(1)}
    for _ in range(k):
        nxt = Counter()
        for x, p in law.items():
            for y in law_keys(mu, x):
                nxt[y] += p * transition_probability(mu, x, y)
        law = dict(nxt)
    return law


def law_keys(mu: ProbMeasure, x: PointSet) -> set[PointSet]:
    return {act_set(g, x) for g in mu.elements}


def _integer_translations(mu: ProbMeasure) -> list[int] | None:
    """Offsets if every atom is a translation by an integer, else None."""
    out = []
    for g in mu.elements:
        if len(g.xs) != 1 or g.left_exp or g.right_exp or g.xs[0].num:
            return None
        y = g.ys[0]
        if not y.is_integer():
            return None
        out.append(int(y))
    return out


def _block_indices(mu: ProbMeasure, seed: int, block: int, size: int, k: int) -> np.ndarray:
    """Atom indices of shape (size, k) for one block, drawn with exact weights."""
    D = lcm(*(w.denominator for w in mu.weights))
    cum = np.cumsum([int(w * D) for w in mu.weights])
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))
    u = rng.integers(0, D, size=(size, k), dtype=np.int64)
    return np.searchsorted(cum, u, side="right")


def _run_block(args) -> Counter:
    mu, start, k, seed, block, size = args
    idx = _block_indices(mu, seed, block, size, k)
    offsets = _integer_translations(mu)
    if offsets is not None and all(p.is_integer() for p in start.points):
        # translations commute with each other: endpoint = start + sum of offsets
        shift = np.asarray(offsets, dtype=np.int64)[idx].sum(axis=1)
        counts = Counter()
        vals, cnt = np.unique(shift, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            counts[PointSet._sorted(tuple(p + v for p in start.points))] = c
        return counts
    elems = mu.elements
    counts = Counter()
    for row in idx:
        x = start
        for j in row:
            x = act_set(elems[j], x)
        counts[x] += 1
    return counts


def simulate(mu: ProbMeasure, start: PointSet, k: int, trials: int, seed: int = 0,
             workers: int = 1) -> EmpiricalDistribution:
    if k < 0 or trials < 1:
        raise ValueError("need k >= 0 and trials >= 1")
    start = start if isinstance(start, PointSet) else PointSet(start)
    if k == 0:
        counts = Counter({start: trials})
    else:
        tasks = []
        for b, lo in enumerate(range(0, trials, BLOCK)):
            tasks.append((mu, start, k, seed, b, min(BLOCK, trials - lo)))
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_run_block, tasks))
        else:
            parts = [_run_block(t) for t in tasks]
        counts = Counter()
        for p in parts:
            counts.update(p)
    meta = {"convention": "left increments: g_k ... g_1 x",
            "generator": "Philox, stream (seed, block)", "block": BLOCK,
            "measure": mu.description or measure_to_json(mu)}
    return EmpiricalDistribution(counts, trials, k, start, seed, meta)


def empirical_tv(d1: EmpiricalDistribution, d2: EmpiricalDistribution) -> Fraction:
    """Half the l1 distance between the two empirical frequency vectors."""
    n1, n2 = d1.trials, d2.trials
    a = Counter({x: c * n2 for x, c in d1.counts.items()})
    b = Counter({x: c * n1 for x, c in d2.counts.items()})
    return Fraction(l1_distance(a, b), 2 * n1 * n2)


def exact_tv(p: Mapping, q: Mapping) -> Fraction:
    keys = set(p) | set(q)
    return sum((abs(Fraction(p.get(z, 0)) - Fraction(q.get(z, 0))) for z in keys),
               Fraction(0)) / 2

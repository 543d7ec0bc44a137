"""
Searching for sets with many common sums
========================================

Evaluate the intersection objectives on small candidate sets and look for
the best one, both exhaustively (a certified maximum within the bounds) and
by simulated annealing.
"""

from liouville import (anneal_search, exhaustive_search, objective_pair3,
                       objective_sequence, pair3, sequence)

# %% A hand-made candidate set of rows (a, b, c).
rows = [(1, 1, 2), (2, 1, 1), (2, 2, 2)]
print("PAIR3 on", rows, "=", objective_pair3(rows))

# %% Exhaustive search over all 3-row sets with entries up to 3.
best = exhaustive_search(pair3(), B=3, k=3)
print("exhaustive best", best.best_ratio, "at", best.best_set, "after", best.evaluated, "sets")

# %% Annealing is seeded and reproducible; it never claims optimality.
ann = anneal_search(pair3(), B=4, k=4, steps=5000, seed=0)
print("anneal best", ann.best_ratio, "at", ann.best_set)

# %% The one-dimensional variant works on sequences.
seq = exhaustive_search(sequence(), B=3, k=5)
print("exhaustive SEQUENCE:", seq.best_ratio, "at", seq.best_set)
print("re-evaluated:", objective_sequence(seq.best_set))

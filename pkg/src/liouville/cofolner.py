"""Co-Folner sets for the action of F_R on pairs (and single points) of dyadics.

Pipeline, for a finite support ``s_1 < ... < s_m``:

1. translate and rescale the support onto non-negative integers;
2. for pairs, build a multiplicative box ``A`` almost invariant under every
   consecutive sum ``r_i + ... + r_j`` of the multipliers, form the rows
   ``w_a = (r_1 a, ..., r_{m-1} a)`` and lift each row to a group element
   sending ``s_1 -> 0`` and ``s_j -> w_1 + ... + w_{j-1}``;
3. average over the translates ``T, T^2, ..., T^N``;
4. verify the resulting family exactly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .action import (CoFolnerCertificate, PointSet, act_set, scale_to_naturals,
                     verify_cofolner)
from .dyadic import ZERO, Dyadic
from .errors import DimensionMismatch, LiouvilleError
from .plgroup import (PLMap, apply, compose, scale_pow2_map,
                      transitivity_witness, translation)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiplicativeBox:
    generators: tuple[int, ...]
    side: int
    elements: tuple[int, ...]  # sorted, distinct

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return a in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def invariance(self, g: int) -> Fraction:
        """``|gA & A| / |A|``."""
        s = self._set
        return Fraction(sum(1 for a in self.elements if g * a in s), len(self.elements))


@dataclass(frozen=True)
class CandidateSet:
    """Rows of positive integers, kept with multiplicity."""

    rows: tuple[tuple[int, ...], ...]
    dimension: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        dims = {len(r) for r in rows}
        d = self.dimension
        if d < 0:
            d = dims.pop() if len(dims) == 1 else (0 if not rows else -1)
        if d < 0 or dims - {d}:
            raise DimensionMismatch("rows have inconsistent dimension")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "dimension", d)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def consecutive_sums(r: Sequence[int]) -> list[int]:
    """All ``r_i + ... + r_j`` for ``i <= j``, in order of appearance."""
    return [sum(r[i:j + 1]) for i in range(len(r)) for j in range(i, len(r))]


def build_box(factors: Sequence[int], L: int) -> MultiplicativeBox:
    if L < 1:
        raise LiouvilleError("box side must be at least 1")
    gens = tuple(sorted({int(f) for f in factors if f > 1}))
    elements = {1}
    for g in gens:
        powers = [g ** e for e in range(L)]
        elements = {a * p for a in elements for p in powers}
    return MultiplicativeBox(gens, L, tuple(sorted(elements)))


def build_W(r: Sequence[int], A) -> CandidateSet:
    r = tuple(int(v) for v in r)
    if any(v < 1 for v in r):
        raise LiouvilleError("multipliers must be positive")
    return CandidateSet(tuple(tuple(ri * a for ri in r) for a in A), len(r))


def lift_to_group(W: CandidateSet, support: PointSet, check: bool = True) -> list[PLMap]:
    """One element per row ``w``: ``support[0] -> 0`` and ``support[j] -> w_1 + ... + w_j``."""
    support = support if isinstance(support, PointSet) else PointSet(support)
    if len(support) != W.dimension + 1:
        raise DimensionMismatch(f"support has {len(support)} points, rows have "
                                f"dimension {W.dimension}")
    out = []
    for w in W.rows:
        target = [ZERO]
        for v in w:
            target.append(target[-1] + v)
        g = transitivity_witness(support.points, target, "F_R")
        if check and [apply(g, p) for p in support.points] != target:
            raise AssertionError(f"lift of {w} missed its targets")
        out.append(g)
    return out


def shift_average(E: Sequence[PLMap], N: int) -> list[PLMap]:
    """``T^k o e`` for ``k = 1..N`` and ``e`` in ``E``, rows in input order, ``k`` ascending."""
    if N < 1:
        raise LiouvilleError("N must be at least 1")
    out = []
    for e in E:
        for k in range(1, N + 1):
            out.append(compose(translation(k), e))
    return out


def default_N(n: int, span: Dyadic | int, box_max: int, r: Sequence[int], epsilon) -> int:
    """Number of translates used when the caller does not fix ``N``.

    Matched images differ by an offset of at most ``max(A) * sum(r)`` for
    pairs and by the support span for singletons; ``N`` is chosen so that
    this offset costs at most a quarter of ``epsilon``.
    """
    epsilon = Fraction(epsilon)
    if n == 1:
        return max(1, math.ceil(2 * Fraction(max(int(span), 1)) / epsilon))
    return max(1, math.ceil(4 * box_max * sum(r) / epsilon))


@dataclass
class Normalization:
    """Affine change of coordinates taking the support to non-negative integers."""

    shift: Dyadic
    i_scale: int
    element: PLMap

    @classmethod
    def for_support(cls, points: Sequence[Dyadic]) -> Normalization:
        lo = min(points, default=ZERO)
        shift = -lo if lo.sign() < 0 else ZERO
        shifted = PointSet(p + shift for p in points)
        i, _ = scale_to_naturals([shifted])
        return cls(shift, i, compose(scale_pow2_map(i), translation(shift)))


def _family(support: PointSet, n: int, r, L: int, N: int, norm: Normalization):
    scaled = act_set(norm.element, support)
    if n == 1:
        base = [norm.element]
    else:
        A = build_box(consecutive_sums(r), L)
        W = build_W(r, A)
        base = [compose(g, norm.element) for g in lift_to_group(W, scaled)]
    return shift_average(base, N)


def build_cofolner(support, n: int, epsilon, L: int | None = None, N: int | None = None,
                   r: Sequence[int] | None = None, escalate: bool = True,
                   max_steps: int = 4, max_size: int = 2_000_000) -> CoFolnerCertificate:
    """Build and verify a co-Folner family for all ``n``-subsets of ``support``.

    With ``escalate`` set, an unverified run is repeated with ``L`` doubled and
    ``N`` at least doubled (raised to the default for the new box when that is
    larger), for at most ``max_steps`` runs or until ``|E|`` would exceed
    ``max_size``.  The last certificate is returned either way, and
    ``pipeline["history"]`` lists every ``(L, N, achieved)`` tried.
    """
    support = support if isinstance(support, PointSet) else PointSet(support)
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise LiouvilleError("epsilon must be positive")
    if n not in (1, 2):
        raise LiouvilleError("only n = 1 and n = 2 have a construction")
    F = [PointSet(c) for c in combinations(support.points, n)]
    if len(support) < n:
        raise LiouvilleError(f"support has fewer than {n} points")

    norm = Normalization.for_support(support.points)
    scaled = act_set(norm.element, support)
    span = scaled[-1] - scaled[0]
    m = len(support)
    r = tuple(r) if r is not None else (1,) * (m - 1)
    if n == 2 and len(r) != m - 1:
        raise DimensionMismatch(f"need {m - 1} multipliers, got {len(r)}")
    factors = consecutive_sums(r)

    def box_max(L):
        return max(build_box(factors, L).elements) if n == 2 else 1

    if n == 1:
        L = 1
    elif L is None:
        L = 2
    auto_N = N is None
    if auto_N:
        N = default_N(n, span, box_max(L), r, epsilon)

    history = []
    cert = None
    for step in range(max_steps if escalate else 1):
        size = N * (len(build_box(factors, L)) if n == 2 else 1)
        if size > max_size:
            log.warning("stopping escalation: |E| = %d exceeds budget %d", size, max_size)
            break
        E = _family(support, n, r, L, N, norm)
        cert = verify_cofolner(E, F, epsilon)
        history.append({"L": L, "N": N, "achieved": str(cert.achieved)})
        log.info("L=%d N=%d achieved=%s", L, N, cert.achieved)
        if cert.verified or n == 1:
            break
        L, N = 2 * L, 2 * N
        if auto_N:
            N = max(N, default_N(n, span, box_max(L), r, epsilon))
    if cert is None:
        raise LiouvilleError(f"initial family of size {size} already exceeds budget")
    cert.pipeline = {
        "n": n,
        "i_scale": norm.i_scale,
        "shift": str(norm.shift),
        "L": history[-1]["L"],
        "N": history[-1]["N"],
        "r": list(r),
        "history": history,
    }
    return cert


def restrict_to_F(cert: CoFolnerCertificate) -> CoFolnerCertificate:
    """Re-express a certificate with elements of F instead of F_R.

    Only the images of the support matter, so each element is replaced by an
    element of F that agrees, after one common order-preserving map into
    ``(0, 1)``, on the support.  The support itself must lie inside ``(0, 1)``.
    """
    support = sorted({p for x in cert.F for p in x.points})
    cols = [[apply(g, p) for p in support] for g in cert.E]
    lo = min(min(c) for c in cols)
    hi = max(max(c) for c in cols)
    k = 0
    while Dyadic(1, 0).mul_pow2(k) <= hi - lo + 2:
        k += 1
    squeeze = compose(scale_pow2_map(-k), translation(1 - lo))
    E = [transitivity_witness(support, [apply(squeeze, v) for v in c], "F") for c in cols]
    out = verify_cofolner(E, cert.F, cert.epsilon, cert.semantics)
    out.pipeline = dict(cert.pipeline, group="F", squeeze_exp=k)
    return out


def gap_aligned_rows(A: MultiplicativeBox, c_x: int, c_y: int) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` in ``A`` with ``c_x a == c_y b``."""
    s = set(A.elements)
    out = []
    for a in A.elements:
        if (c_x * a) % c_y == 0 and c_x * a // c_y in s:
            out.append((a, c_x * a // c_y))
    return out

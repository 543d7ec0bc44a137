"""Piecewise-linear homeomorphisms of the line with power-of-two slopes.

A :class:`PLMap` is stored as its breakpoints ``(x_i, y_i)`` together with the
slope exponent of every piece, so the slope on each piece is ``2**e``.  The
canonical form keeps only genuine slope changes; an affine map is stored with
a single anchor at ``x = 0``.  These maps form the group F_R, and the ones that
are the identity off ``[0, 1]`` form Thompson's group F.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .dyadic import ONE, ZERO, Dyadic, dyadic, log2_ratio, parse
from .errors import (BadSlope, DuplicateX, LiouvilleError, NonMonotone,
                     OutOfUnitInterval, SizeMismatch)
from .textio import fraction_to_text, parse_fraction


@dataclass(frozen=True)
class PLMap:
    xs: tuple[Dyadic, ...]
    ys: tuple[Dyadic, ...]
    exps: tuple[int, ...]  # slope exponent of each bounded piece
    left_exp: int
    right_exp: int

    @property
    def anchors(self) -> list[tuple[Dyadic, Dyadic]]:
        return list(zip(self.xs, self.ys))

    def __call__(self, x) -> Dyadic:
        return apply(self, x)

    def __matmul__(self, other: PLMap) -> PLMap:
        return compose(self, other)

    def slopes(self) -> list[int]:
        return [self.left_exp, *self.exps, self.right_exp]

    def breakpoints(self) -> list[Dyadic]:
        if len(self.xs) == 1 and self.left_exp == self.right_exp:
            return []
        return list(self.xs)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PLMap([{pts}], {self.left_exp}, {self.right_exp})"


def _canonical(xs, ys, exps, left, right) -> PLMap:
    slopes = [left, *exps, right]
    keep = [i for i in range(len(xs)) if slopes[i] != slopes[i + 1]]
    if not keep:
        # affine: y = y0 + 2^left (x - x0), re-anchored at 0
        y = ys[0] + (-xs[0]).mul_pow2(left)
        return PLMap((ZERO,), (y,), (), left, left)
    if len(keep) == len(xs):
        return PLMap(tuple(xs), tuple(ys), tuple(exps), left, right)
    nx = tuple(xs[i] for i in keep)
    ny = tuple(ys[i] for i in keep)
    ne = tuple(slopes[i + 1] for i in keep[:-1])
    return PLMap(nx, ny, ne, left, right)


def make_pl(anchors: Iterable, left_exp: int = 0, right_exp: int = 0) -> PLMap:
    """Validate anchors and tail exponents and return the canonical map.

    Raises DuplicateX for a repeated x, NonMonotone when y fails to increase,
    and BadSlope when a piece has a slope that is not a power of two.
    """
    pts = sorted((dyadic(x), dyadic(y)) for x, y in anchors)
    if not pts:
        raise LiouvilleError("a PL map needs at least one anchor")
    exps = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x0 == x1:
            raise DuplicateX(f"repeated anchor x = {x0}")
        if not y0 < y1:
            raise NonMonotone(f"y does not increase between x = {x0} and x = {x1}")
        e = log2_ratio(y1 - y0, x1 - x0)
        if e is None:
            raise BadSlope(f"slope {(y1 - y0).to_fraction() / (x1 - x0).to_fraction()} "
                           f"on [{x0}, {x1}] is not a power of 2")
        exps.append(e)
    xs, ys = zip(*pts)
    return _canonical(xs, ys, exps, int(left_exp), int(right_exp))


def apply(g: PLMap, x) -> Dyadic:
    x = dyadic(x)
    xs = g.xs
    i = bisect_right(xs, x)
    if i == 0:
        return g.ys[0] + (x - xs[0]).mul_pow2(g.left_exp)
    j = i - 1
    e = g.exps[j] if j < len(g.exps) else g.right_exp
    return g.ys[j] + (x - xs[j]).mul_pow2(e)


def apply_inverse(g: PLMap, y) -> Dyadic:
    y = dyadic(y)
    ys = g.ys
    i = bisect_right(ys, y)
    if i == 0:
        return g.xs[0] + (y - ys[0]).mul_pow2(-g.left_exp)
    j = i - 1
    e = g.exps[j] if j < len(g.exps) else g.right_exp
    return g.xs[j] + (y - ys[j]).mul_pow2(-e)


def invert(f: PLMap) -> PLMap:
    if len(f.xs) == 1 and f.left_exp == f.right_exp:
        # affine: the swapped anchor is no longer at x = 0
        return _canonical(f.ys, f.xs, (), -f.left_exp, -f.left_exp)
    return PLMap(f.ys, f.xs, tuple(-e for e in f.exps), -f.left_exp, -f.right_exp)


def compose(g: PLMap, f: PLMap) -> PLMap:
    """Return ``g o f``, i.e. ``x -> g(f(x))``."""
    cand = set(f.breakpoints())
    cand.update(apply_inverse(f, y) for y in g.breakpoints())
    if not cand:
        cand = {ZERO}
    xs = sorted(cand)
    ys = [apply(g, apply(f, x)) for x in xs]
    exps = []
    for i in range(len(xs) - 1):
        e = log2_ratio(ys[i + 1] - ys[i], xs[i + 1] - xs[i])
        assert e is not None, "composition left the group"
        exps.append(e)
    return _canonical(xs, ys, exps, f.left_exp + g.left_exp, f.right_exp + g.right_exp)


def is_in_F(g: PLMap) -> bool:
    """True iff ``g`` is the identity on ``(-inf, 0]`` and on ``[1, inf)``."""
    if g.left_exp or g.right_exp:
        return False
    if g.is_identity():
        return True
    if not (ZERO <= g.xs[0] and g.xs[-1] <= ONE):
        return False
    return apply(g, ZERO) == ZERO and apply(g, ONE) == ONE


def translation(d) -> PLMap:
    return PLMap((ZERO,), (dyadic(d),), (), 0, 0)


def scale_pow2_map(i: int) -> PLMap:
    return PLMap((ZERO,), (ZERO,), (), int(i), int(i))


IDENTITY = translation(0)


def power(g: PLMap, k: int) -> PLMap:
    if k < 0:
        g, k = invert(g), -k
    out = IDENTITY
    base = g
    while k:
        if k & 1:
            out = compose(out, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return out


# standard generators of F: x0 halves [0,1/2], x1 is x0 conjugated onto [1/2,1]
X0 = make_pl([(0, 0), ("1/2^1", "1/2^2"), ("3/2^2", "1/2^1"), (1, 1)])
X1 = make_pl([("1/2^1", "1/2^1"), ("3/2^2", "5/2^3"), ("7/2^3", "3/2^2"), (1, 1)])
T = translation(1)


# -- strong transitivity ---------------------------------------------------

def _pieces(length: Dyadic) -> list[int]:
    """Exponents of the binary expansion of a positive dyadic, largest first."""
    n, e = length.num, length.exp
    out = []
    bit = n.bit_length() - 1
    while n:
        if n >> bit & 1:
            out.append(bit - e)
            n ^= 1 << bit
        bit -= 1
    return out


def _split_to(pieces: list[int], count: int) -> list[int]:
    pieces = list(pieces)
    while len(pieces) < count:
        i = pieces.index(max(pieces))
        pieces[i:i + 1] = [pieces[i] - 1, pieces[i] - 1]
    return pieces


def _interval_anchors(a: Dyadic, b: Dyadic, c: Dyadic, d: Dyadic):
    """Interior anchors of a power-of-two-sloped bijection [a, b] -> [c, d]."""
    p = _pieces(b - a)
    q = _pieces(d - c)
    m = max(len(p), len(q))
    p, q = _split_to(p, m), _split_to(q, m)
    out = []
    x, y = a, c
    for ep, eq in zip(p[:-1], q[:-1]):
        x = x + ONE.mul_pow2(ep)
        y = y + ONE.mul_pow2(eq)
        out.append((x, y))
    return out


def transitivity_witness(src: Sequence, dst: Sequence, mode: str = "F_R") -> PLMap:
    """Return some ``g`` carrying the sorted points of ``src`` onto those of ``dst``.

    Each gap between consecutive points is mapped to the matching gap by
    cutting both into power-of-two pieces and pairing them off in order.  In
    mode ``"F"`` the points must lie in the open unit interval and the result
    belongs to F; in mode ``"F_R"`` the tails are translations.
    """
    src = sorted(set(map(dyadic, getattr(src, "points", src))))
    dst = sorted(set(map(dyadic, getattr(dst, "points", dst))))
    if len(src) != len(dst):
        raise SizeMismatch(f"|src| = {len(src)} but |dst| = {len(dst)}")
    if mode == "F":
        for p in src + dst:
            if not ZERO < p < ONE:
                raise OutOfUnitInterval(f"point {p} is not inside (0, 1)")
        src = [ZERO, *src, ONE]
        dst = [ZERO, *dst, ONE]
    elif mode != "F_R":
        raise ValueError(f"unknown mode {mode!r}")
    if not src:
        return IDENTITY
    anchors = [(src[0], dst[0])]
    for i in range(len(src) - 1):
        anchors += _interval_anchors(src[i], src[i + 1], dst[i], dst[i + 1])
        anchors.append((src[i + 1], dst[i + 1]))
    return make_pl(anchors, 0, 0)


# -- measures ---------------------------------------------------------------

@dataclass(frozen=True)
class ProbMeasure:
    """Finitely supported probability measure on F_R with exact weights.

    ``non_degenerate`` records the caller's claim that the support generates
    the group as a semigroup; it is not checked.
    """

    atoms: tuple[tuple[PLMap, Fraction], ...]
    symmetric: bool = False
    non_degenerate: bool = False
    description: str = field(default="", compare=False)

    def __post_init__(self):
        atoms = tuple((g, Fraction(w)) for g, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise LiouvilleError("measure has no atoms")
        if any(w <= 0 for _, w in atoms):
            raise LiouvilleError("atom weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise LiouvilleError("atom weights must sum to 1")
        if self.symmetric:
            mass = {}
            for g, w in atoms:
                mass[g] = mass.get(g, 0) + w
            for g, w in mass.items():
                if mass.get(invert(g)) != w:
                    raise LiouvilleError(f"measure is not symmetric at {g!r}")

    @property
    def elements(self) -> list[PLMap]:
        return [g for g, _ in self.atoms]

    @property
    def weights(self) -> list[Fraction]:
        return [w for _, w in self.atoms]


def lazy_symmetric(gens: Sequence[PLMap], laziness=Fraction(1, 2), description="") -> ProbMeasure:
    """``laziness`` at the identity, the rest spread evenly over ``gens`` and inverses."""
    laziness = Fraction(laziness)
    share = (1 - laziness) / (2 * len(gens))
    atoms = [(IDENTITY, laziness)] if laziness else []
    for g in gens:
        atoms += [(g, share), (invert(g), share)]
    return ProbMeasure(tuple(atoms), symmetric=True, non_degenerate=True,
                       description=description)


def default_measure(group: str = "F") -> ProbMeasure:
    if group == "F":
        return lazy_symmetric([X0, X1], description="lazy uniform on x0^±1, x1^±1")
    if group == "F_R":
        return lazy_symmetric([X0, X1, T], description="lazy uniform on x0^±1, x1^±1, T^±1")
    raise ValueError(f"unknown group {group!r}")


# -- JSON -------------------------------------------------------------------

def plmap_to_json(g: PLMap) -> dict:
    return {
        "anchors": [[str(x), str(y)] for x, y in zip(g.xs, g.ys)],
        "left_exp": g.left_exp,
        "right_exp": g.right_exp,
    }


def plmap_from_json(obj: dict) -> PLMap:
    anchors = [(parse(x), parse(y)) for x, y in obj["anchors"]]
    return make_pl(anchors, obj["left_exp"], obj["right_exp"])


def measure_to_json(mu: ProbMeasure) -> dict:
    return {
        "atoms": [[plmap_to_json(g), fraction_to_text(w)] for g, w in mu.atoms],
        "symmetric": mu.symmetric,
        "non_degenerate": mu.non_degenerate,
        "description": mu.description,
    }


def measure_from_json(obj: dict) -> ProbMeasure:
    atoms = tuple((plmap_from_json(g), parse_fraction(w)) for g, w in obj["atoms"])
    return ProbMeasure(atoms, obj.get("symmetric", False), obj.get("non_degenerate", False),
                       obj.get("description", ""))

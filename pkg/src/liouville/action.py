"""The action of F_R on finite point sets and the co-Folner verifier.

``E`` is always a list of group elements with multiplicity, and the image
``Ex`` is a :class:`collections.Counter` keyed by :class:`PointSet`.  The
verifier measures ``|Ex - Ey|`` as the l1 distance between the two image
counters, divided by ``|E|``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .dyadic import Dyadic, dyadic, parse
from .errors import LiouvilleError, SizeMismatch, TooSmall
from .plgroup import PLMap, apply, plmap_from_json, plmap_to_json
from .textio import fraction_to_text, parse_fraction

Multiset = Counter


@dataclass(frozen=True, order=True)
class PointSet:
    """A finite set of dyadics, stored sorted."""

    points: tuple[Dyadic, ...]

    def __init__(self, points: Iterable = ()):
        pts = tuple(sorted(set(map(dyadic, points))))
        object.__setattr__(self, "points", pts)

    @classmethod
    def _sorted(cls, pts: tuple) -> PointSet:
        ps = object.__new__(cls)
        object.__setattr__(ps, "points", pts)
        return ps

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self.points)) + "}"

    def to_json(self) -> list[str]:
        return [str(p) for p in self.points]

    @classmethod
    def from_json(cls, obj) -> PointSet:
        return cls(parse(p) if isinstance(p, str) else p for p in obj)


def point_set(*points) -> PointSet:
    return PointSet(points)


def act_set(g: PLMap, x: PointSet) -> PointSet:
    # g is increasing, so the image is already sorted
    return PointSet._sorted(tuple(apply(g, p) for p in x.points))


def gap_vector(x: PointSet) -> tuple[Dyadic, ...]:
    if len(x) < 2:
        raise TooSmall("gap vector needs at least two points")
    p = x.points
    return tuple(b - a for a, b in zip(p, p[1:]))


def multiset_image(E: Sequence[PLMap], x: PointSet) -> Counter:
    if not E:
        raise LiouvilleError("E must be non-empty")
    return Counter(act_set(g, x) for g in E)


def multiset_intersect(ms: Sequence[Counter]) -> Counter:
    """Key-wise minimum of counts."""
    if not ms:
        raise LiouvilleError("nothing to intersect")
    out = Counter(ms[0])
    for m in ms[1:]:
        out &= m
    return out


def l1_distance(a: Counter, b: Counter) -> int:
    return ((a - b) + (b - a)).total()


def _image_distance(ex: Counter, ey: Counter, semantics: str) -> int:
    if semantics == "multiset":
        return l1_distance(ex, ey)
    if semantics == "set":
        return len(ex.keys() ^ ey.keys())
    raise ValueError(f"unknown semantics {semantics!r}")


def sym_diff_ratio(E: Sequence[PLMap], x: PointSet, y: PointSet,
                   semantics: str = "multiset") -> Fraction:
    """``|Ex (sym diff) Ey| / |E|`` as an exact fraction."""
    if len(x) != len(y):
        raise SizeMismatch(f"|x| = {len(x)} but |y| = {len(y)}")
    ex, ey = multiset_image(E, x), multiset_image(E, y)
    return Fraction(_image_distance(ex, ey, semantics), len(E))


@dataclass
class CoFolnerCertificate:
    E: list[PLMap]
    F: list[PointSet]
    epsilon: Fraction
    achieved: Fraction
    verified: bool
    worst_pair: tuple[int, int] | None = None
    semantics: str = "multiset"
    pipeline: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        obj = {
            "E": [plmap_to_json(g) for g in self.E],
            "F": [x.to_json() for x in self.F],
            "epsilon": fraction_to_text(self.epsilon),
            "achieved": fraction_to_text(self.achieved),
            "verified": self.verified,
        }
        if self.semantics != "multiset":
            obj["semantics"] = self.semantics
        if self.pipeline:
            obj["pipeline"] = self.pipeline
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> CoFolnerCertificate:
        return cls(
            E=[plmap_from_json(g) for g in obj["E"]],
            F=[PointSet.from_json(x) for x in obj["F"]],
            epsilon=parse_fraction(obj["epsilon"]),
            achieved=parse_fraction(obj["achieved"]),
            verified=bool(obj["verified"]),
            semantics=obj.get("semantics", "multiset"),
            pipeline=obj.get("pipeline", {}),
        )


def images(E: Sequence[PLMap], F: Sequence[PointSet]) -> list[Counter]:
    """Image multisets ``Ex`` for each ``x`` in ``F``, evaluating only support points.

    Each distinct support point is pushed through every element once, so large
    families cost ``|E| * |union F|`` point evaluations.
    """
    support = sorted({p for x in F for p in x.points})
    cols = {p: [apply(g, p) for g in E] for p in support}
    out = []
    for x in F:
        rows = zip(*(cols[p] for p in x.points))
        out.append(Counter(PointSet._sorted(r) for r in rows))
    return out


def verify_cofolner(E: Sequence[PLMap], F: Sequence[PointSet], epsilon,
                    semantics: str = "multiset") -> CoFolnerCertificate:
    """Check ``|Ex - Ey| <= epsilon |E|`` for every pair in ``F``.

    ``achieved`` is the worst ratio over unordered pairs; a family with fewer
    than two members achieves 0.
    """
    E = list(E)
    F = [x if isinstance(x, PointSet) else PointSet(x) for x in F]
    epsilon = Fraction(epsilon)
    if not E:
        raise LiouvilleError("E must be non-empty")
    if len({len(x) for x in F}) > 1:
        raise SizeMismatch("all point sets in F must have the same size")
    ims = images(E, F)
    worst, where = 0, None
    for i, j in combinations(range(len(F)), 2):
        dist = _image_distance(ims[i], ims[j], semantics)
        if dist > worst:
            worst, where = dist, (i, j)
    achieved = Fraction(worst, len(E))
    return CoFolnerCertificate(E, F, epsilon, achieved, achieved <= epsilon, where, semantics)


def recheck(cert: CoFolnerCertificate) -> CoFolnerCertificate:
    """Recompute a certificate from its ``E``, ``F`` and ``epsilon`` alone."""
    out = verify_cofolner(cert.E, cert.F, cert.epsilon, cert.semantics)
    out.pipeline = cert.pipeline
    return out


def scale_to_naturals(F: Sequence[PointSet]) -> tuple[int, list[PointSet]]:
    """Smallest ``i >= 0`` making every point times ``2**i`` an integer."""
    F = [x if isinstance(x, PointSet) else PointSet(x) for x in F]
    pts = [p for x in F for p in x.points]
    if any(p.sign() < 0 for p in pts):
        raise LiouvilleError("scale_to_naturals needs non-negative points; translate first")
    i = max((p.exp for p in pts), default=0)
    return i, [PointSet._sorted(tuple(p.mul_pow2(i) for p in x.points)) for x in F]

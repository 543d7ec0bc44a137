import random
from fractions import Fraction

import pytest

from liouville.dyadic import Dyadic
from liouville.plgroup import make_pl

CRITERIA = {}


def random_dyadic(rng: random.Random, bits: int = 64, max_exp: int = 32) -> Dyadic:
    return Dyadic(rng.randint(-(1 << bits), 1 << bits), rng.randint(0, max_exp))


def random_plmap(rng: random.Random, max_anchors: int = 12, bits: int = 64, max_exp: int = 32,
                 slope_range: int = 4):
    n = rng.randint(1, max_anchors)
    xs = sorted({random_dyadic(rng, bits, max_exp) for _ in range(n)})
    y = random_dyadic(rng, bits, max_exp)
    anchors = [(xs[0], y)]
    for a, b in zip(xs, xs[1:]):
        y = y + (b - a).mul_pow2(rng.randint(-slope_range, slope_range))
        anchors.append((b, y))
    return make_pl(anchors, rng.randint(-slope_range, slope_range),
                   rng.randint(-slope_range, slope_range))


def fraction_apply(g, x) -> Fraction:
    """Evaluate a PL map with plain Fractions, straight from its anchors."""
    x = Fraction(x.num, 1 << x.exp)
    pts = [(Fraction(a.num, 1 << a.exp), Fraction(b.num, 1 << b.exp)) for a, b in g.anchors]
    if x <= pts[0][0]:
        return pts[0][1] + (x - pts[0][0]) * Fraction(2) ** g.left_exp
    if x >= pts[-1][0]:
        return pts[-1][1] + (x - pts[-1][0]) * Fraction(2) ** g.right_exp
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x0 <= x <= x1:
            return y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    raise AssertionError("unreachable")


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        if name.startswith("test_criterion_"):
            CRITERIA[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA, key=lambda s: int(s.split("_")[2])):
        outcome, dur = CRITERIA[name]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({dur:.1f}s)")

import random
from collections import Counter
from fractions import Fraction

import pytest

from conftest import random_plmap
from oracle import naive_sym_diff
from liouville.action import (CoFolnerCertificate, PointSet, act_set, gap_vector,
                              multiset_image, multiset_intersect, recheck, scale_to_naturals,
                              sym_diff_ratio, verify_cofolner)
from liouville.dyadic import Dyadic, parse
from liouville.errors import SizeMismatch, TooSmall
from liouville.plgroup import IDENTITY, T, apply, compose, power, transitivity_witness

P = PointSet


def translates(N):
    return [power(T, k) for k in range(1, N + 1)]


def test_point_set_sorted_unique():
    assert P([3, 1, 2]).points == (Dyadic(1), Dyadic(2), Dyadic(3))
    assert P([1, 1]) == P([1])


def test_act_set():
    assert act_set(T, P([0, 1])) == P([1, 2])
    x = P([5, parse("1/2^3")])
    assert act_set(IDENTITY, x) == x
    w = transitivity_witness([0, 1], [0, 2])
    assert act_set(w, P([0, parse("1/2^1")])) == P([0, 1])


def test_gap_vector():
    assert gap_vector(P([3, 7])) == (Dyadic(4),)
    assert gap_vector(P([1, 4, 9])) == (Dyadic(3), Dyadic(5))
    assert gap_vector(P([0, 1])) == (Dyadic(1),)
    with pytest.raises(TooSmall):
        gap_vector(P([0]))


def test_multiset_image():
    T2 = power(T, 2)
    assert multiset_image([T, T2], P([0])) == Counter({P([1]): 1, P([2]): 1})
    assert multiset_image([T, T], P([0])) == Counter({P([1]): 2})
    assert multiset_image([IDENTITY, T], P([0, 1])) == Counter({P([0, 1]): 1, P([1, 2]): 1})


def test_multiset_intersect():
    assert multiset_intersect([Counter(a=2, b=1), Counter(a=1, c=1)]) == Counter(a=1)
    m = Counter(a=3, b=1)
    assert multiset_intersect([m]) == m
    assert multiset_intersect([Counter(a=1), Counter(b=1)]) == Counter()


def test_sym_diff_ratio_examples():
    assert sym_diff_ratio([T, power(T, 2)], P([0]), P([1])) == 1
    assert sym_diff_ratio([T, power(T, 3)], P([0, 4]), P([0, 4])) == 0
    for N in (1, 5, 37):
        # translates of {0} and {1} overlap in N - 1 places
        assert sym_diff_ratio(translates(N), P([0]), P([1])) == Fraction(2, N)
    with pytest.raises(SizeMismatch):
        sym_diff_ratio([T], P([0]), P([0, 1]))


def test_set_semantics_differs_on_collisions():
    E = [T, T, power(T, 2)]
    # Ex = {1:2, 2:1}, Ey = {2:2, 3:1}
    assert sym_diff_ratio(E, P([0]), P([1])) == Fraction(4, 3)
    assert sym_diff_ratio(E, P([0]), P([1]), semantics="set") == Fraction(2, 3)


def test_verify_cofolner_examples():
    c = verify_cofolner(translates(100), [P([0]), P([1])], Fraction(1, 10))
    assert c.achieved == Fraction(2, 100) and c.verified
    c = verify_cofolner([IDENTITY], [P([0]), P([1])], Fraction(1, 10))
    assert c.achieved == 2 and not c.verified
    c = verify_cofolner([IDENTITY], [P([0])], Fraction(1, 10))
    assert c.achieved == 0 and c.verified
    with pytest.raises(SizeMismatch):
        verify_cofolner([T], [P([0]), P([0, 1])], 1)


def test_scale_to_naturals():
    assert scale_to_naturals([P(["1/2^1", "3/2^2"])]) == (2, [P([2, 3])])
    assert scale_to_naturals([P([1, 2])]) == (0, [P([1, 2])])
    assert scale_to_naturals([P([0, "5/2^3"])]) == (3, [P([0, 5])])


def _random_instance(rng):
    E = [random_plmap(rng, 4, 6, 3, 2) for _ in range(rng.randint(1, 6))]
    # a few exact repeats so multiplicities matter
    E += rng.sample(E, min(2, len(E)))
    n = rng.randint(1, 3)
    pts = lambda: P(Dyadic(rng.randint(-20, 20), rng.randint(0, 2)) for _ in range(n))
    xs = []
    while len(xs) < 3:
        p = pts()
        if len(p) == n:
            xs.append(p)
    return E, xs


@pytest.mark.parametrize("seed", range(25))
def test_sym_diff_properties(seed):
    rng = random.Random(seed)
    E, (x, y, z) = _random_instance(rng)
    dxy = sym_diff_ratio(E, x, y)
    assert dxy == sym_diff_ratio(E, y, x)
    assert 0 <= dxy <= 2
    assert sym_diff_ratio(E, x, z) <= dxy + sym_diff_ratio(E, y, z)
    assert (dxy == 0) == (multiset_image(E, x) == multiset_image(E, y))
    # independent count with plain lists
    ix = [tuple(apply(g, p) for p in x) for g in E]
    iy = [tuple(apply(g, p) for p in y) for g in E]
    assert dxy == Fraction(naive_sym_diff(ix, iy), len(E))
    # right-invariance: (E h) x vs E (h x)
    hh = random_plmap(rng, 4, 6, 3, 2)
    Eh = [compose(g, hh) for g in E]
    assert sym_diff_ratio(Eh, x, y) == sym_diff_ratio(E, act_set(hh, x), act_set(hh, y))


def test_certificate_recomputes_bit_exactly():
    rng = random.Random(9)
    E, F = _random_instance(rng)
    c = verify_cofolner(E, F, Fraction(1, 2))
    c2 = CoFolnerCertificate.from_json(c.to_json())
    assert recheck(c2).to_json() == c.to_json()

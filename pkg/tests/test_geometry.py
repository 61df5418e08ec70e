import itertools
import random
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from invmilp.geometry import ConeClass, ConeQuery, in_D, in_K, kstar_classify, kstar_margin
from invmilp.rational import Norm, dot, sub

from _corpus import rand_rational

DESK = dict(c=(2, -1), x0=(0, 3))


def q(gamma, which=Norm.LINF, **kw):
    args = dict(DESK, **kw)
    return ConeQuery.create(args["c"], args["x0"], gamma, which)


def test_classify_examples():
    assert kstar_classify((3, 0), q(1)) is ConeClass.INTERIOR
    assert kstar_classify((3, 0), q(F(3, 2))) is ConeClass.BOUNDARY
    assert kstar_classify((0, 3), q(1)) is ConeClass.APEX
    assert kstar_classify((0, 4), q(1)) is ConeClass.OUTSIDE


def test_in_K_examples():
    assert in_K((2, -1), q(0))
    assert in_K((F(1, 2), F(1, 2)), q(F(3, 2)))
    assert not in_K((F(1, 2), F(1, 2)), q(1))


def test_in_D_examples(desk_forward):
    assert in_D((0, 3), (F(2, 5), F(3, 5)), desk_forward)
    assert not in_D((0, 3), (2, -1), desk_forward)
    assert in_D((0, 3), (0, 0), desk_forward)


def _ball_vertices(c, gamma, which):
    n = len(c)
    if which is Norm.LINF:
        for signs in itertools.product((-1, 1), repeat=n):
            yield tuple(ci + s * gamma for ci, s in zip(c, signs))
    else:
        for i in range(n):
            for s in (-1, 1):
                d = list(c)
                d[i] += s * gamma
                yield tuple(d)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**9), st.sampled_from([Norm.LINF, Norm.L1]))
def test_closed_form_equals_min_over_ball_vertices(seed, which):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    c = [rand_rational(rng, -4, 4) for _ in range(n)]
    x0 = [rand_rational(rng, -4, 4) for _ in range(n)]
    x = [rand_rational(rng, -4, 4) for _ in range(n)]
    gamma = abs(rand_rational(rng, -3, 3))
    cq = ConeQuery.create(c, x0, gamma, which)
    v = sub(tuple(F(t) for t in x), cq.x0)
    sampled = min(dot(d, v) for d in _ball_vertices(cq.c, cq.gamma, which))
    assert kstar_margin(x, cq) == sampled


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_gamma_zero_is_halfspace_and_monotone(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    c = [rand_rational(rng, -4, 4) for _ in range(n)]
    x0 = [rand_rational(rng, -4, 4) for _ in range(n)]
    x = tuple(rand_rational(rng, -4, 4) for _ in range(n))
    which = rng.choice([Norm.L1, Norm.LINF])
    q0 = ConeQuery.create(c, x0, 0, which)
    in_half = dot(q0.c, x) >= dot(q0.c, q0.x0)
    assert (kstar_classify(x, q0) is not ConeClass.OUTSIDE) == in_half
    g1 = abs(rand_rational(rng, -3, 3))
    g2 = g1 + abs(rand_rational(rng, -3, 3))
    inside = lambda g: kstar_classify(x, ConeQuery.create(c, x0, g, which)) is not ConeClass.OUTSIDE
    assert not inside(g2) or inside(g1)

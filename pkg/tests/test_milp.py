import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from _corpus import random_forward, rand_rational
from invmilp.bruteforce import brute_forward_opt, enumerate_region
from invmilp.errors import DimensionError
from invmilp.instance import MilpInstance
from invmilp.milp import INFEASIBLE, OPTIMAL, UNBOUNDED, is_feasible_objective, solve_milp


def test_desk_forward(desk_forward):
    out = solve_milp(desk_forward, (2, -1))
    assert out.tag == OPTIMAL and out.argmax == (3, 0) and out.value == 6
    out = solve_milp(desk_forward, (F(1, 2), F(1, 2)))
    assert out.argmax == (3, 1) and out.value == 2


def test_zero_objective_picks_lex_max(desk_forward):
    out = solve_milp(desk_forward, (0, 0))
    assert out.argmax == (3, 1) and out.value == 0


def test_fractional_relaxation_needs_branching():
    # max x1 + x2 s.t. 2x1 + 2x2 <= 3: LP gives 3/2, integers give 1
    inst = MilpInstance.create(2, [(2, 2)], [3], lower=[0, 0])
    out = solve_milp(inst, (1, 1))
    assert out.value == 1 and out.argmax == (1, 0)
    assert out.nodes > 1


def test_mixed_integer():
    # x1 integer, x2 continuous: max x1 + x2, x1 + 2 x2 <= 7/2, x2 <= 1
    inst = MilpInstance.create(2, [(1, 2)], [F(7, 2)], r=1, lower=[0, 0], upper=[None, 1])
    out = solve_milp(inst, (1, 1))
    assert out.value == F(13, 4) and out.argmax == (3, F(1, 4))


def test_unbounded_and_infeasible():
    inst = MilpInstance.create(2, lower=[0, 0])
    out = solve_milp(inst, (1, 1))
    assert out.tag == UNBOUNDED and out.ray is not None
    assert all(r >= 0 for r in out.ray) and sum(out.ray) > 0
    empty = MilpInstance.create(1, [(2,)], [1], lower=[1])
    assert solve_milp(empty, (1,)).tag == INFEASIBLE
    # integer-infeasible although the relaxation is not
    gap = MilpInstance.create(1, [(2,), (-2,)], [1, 0])
    assert solve_milp(gap, (1,)).tag == OPTIMAL
    hole = MilpInstance.create(1, [(3,), (-3,)], [2, -1])
    assert solve_milp(hole, (1,)).tag == INFEASIBLE


def test_dimension_checked(desk_forward):
    with pytest.raises(DimensionError):
        solve_milp(desk_forward, (1,))


def test_is_feasible_objective(desk):
    assert is_feasible_objective(desk, (F(2, 5), F(3, 5))) == (True, None)
    ok, x = is_feasible_objective(desk, (2, -1))
    assert not ok and x == (3, 0)
    assert is_feasible_objective(desk, (0, 0))[0]


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_matches_brute_force(seed):
    rng = random.Random(seed)
    inst = random_forward(rng)
    d = [rand_rational(rng, -4, 4) for _ in range(inst.n)]
    ref = brute_forward_opt(enumerate_region(inst), d)
    out = solve_milp(inst, d)
    assert out.tag == ref.tag
    if ref.tag == OPTIMAL:
        assert out.value == ref.value and out.argmax == ref.argmax

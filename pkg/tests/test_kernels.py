import random
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from invmilp import kernels
from invmilp._pivot_py import pivot as py_pivot, ratio_test as py_ratio
from invmilp.lp import LpProblem, check_lp_certificate, solve_lp


def _fraction_pivot(T, r, s):
    """Textbook pivot on a Fraction tableau for comparison."""
    p = T[r][s]
    out = []
    for i, row in enumerate(T):
        if i == r:
            out.append([x / p if j != s else 1 / p for j, x in enumerate(row)])
        else:
            f = row[s]
            out.append([x - f * T[r][j] / p if j != s else -f / p for j, x in enumerate(row)])
    return out


def _random_tableau(rng, m, n, big=False):
    hi = 10**25 if big else 9
    return [[rng.randint(-hi, hi) for _ in range(n + 1)] for _ in range(m + 1)]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_pivot_matches_fraction_tableau(backend):
    rng = random.Random(5)
    for trial in range(60):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        T = _random_tableau(rng, m, n, big=trial % 3 == 0)
        D = 1
        ref = [[F(x) for x in row] for row in T]
        for _ in range(4):
            r, s = rng.randrange(m), rng.randrange(n)
            if T[r][s] == 0:
                continue
            D = kernels.pivot(T, r, s, D)
            ref = _fraction_pivot(ref, r, s)
            for i in range(m + 1):
                for j in range(n + 1):
                    assert F(T[i][j], D) == ref[i][j]


def test_backends_agree_bitwise():
    try:
        from invmilp import _pivot
    except ImportError:
        return
    rng = random.Random(9)
    for _ in range(100):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        T1 = _random_tableau(rng, m, n, big=rng.random() < 0.3)
        T2 = [row[:] for row in T1]
        D1 = D2 = 1
        # chained pivots starting from det 1 keep every division exact
        for _ in range(5):
            r, s = rng.randrange(m), rng.randrange(n)
            if T1[r][s] == 0:
                continue
            D1 = _pivot.pivot(T1, r, s, D1)
            D2 = py_pivot(T2, r, s, D2)
            assert D1 == D2 and T1 == T2
            basis = list(range(m))
            assert _pivot.ratio_test(T1, m, s, basis) == py_ratio(T2, m, s, basis)


def test_ratio_test_ties_go_to_lower_basic_index():
    # rows 0 and 1 both have ratio 1; row 1 holds the lower basic variable
    T = [[2, 2], [3, 3], [0, 0]]
    assert py_ratio(T, 2, 0, [5, 2]) == 1
    assert py_ratio(T, 2, 0, [1, 2]) == 0
    assert py_ratio([[-1, 4], [0, 1], [0, 0]], 2, 0, [0, 1]) == -1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_lp_solutions_identical_across_backends(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    rows = []
    for _ in range(rng.randint(1, 5)):
        a = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
        rows.append((a, rng.choice(["<=", ">=", "="]), F(rng.randint(-5, 5))))
    obj = [F(rng.randint(-5, 5)) for _ in range(n)]
    p = LpProblem.create("max", obj, rows, lower=[-3] * n, upper=[3] * n)
    saved = kernels.pivot, kernels.ratio_test
    try:
        o1 = solve_lp(p)
        kernels.pivot, kernels.ratio_test = py_pivot, py_ratio
        o2 = solve_lp(p)
    finally:
        kernels.pivot, kernels.ratio_test = saved
    assert o1 == o2
    assert check_lp_certificate(p, o1)


def test_fast_path_boundary_values():
    try:
        from invmilp import _pivot
    except ImportError:
        return
    rng = random.Random(13)
    edges = [2**62 - 1, 2**62, 2**62 + 1, 2**31, 2**63, 3]
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        T1 = [[rng.choice(edges) * rng.choice((-1, 1)) for _ in range(n + 1)] for _ in range(m + 1)]
        T2 = [row[:] for row in T1]
        r, s = rng.randrange(m), rng.randrange(n)
        assert _pivot.pivot(T1, r, s, 1) == py_pivot(T2, r, s, 1)
        assert T1 == T2

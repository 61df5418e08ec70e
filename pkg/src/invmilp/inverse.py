"""Cutting-plane solver for the inverse MILP under l1 / l-infinity distance.

The master LP keeps one optimality row d.(x - x0) <= 0 per point found so
far; the forward oracle either certifies that the master's d makes x0
optimal or returns a point whose row is violated. The same loop with a
violation-maximising master and a box normalisation on d separates a
point from conv(S) (Fenchel cuts).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import DomainError, SolverError
from .instance import InverseInstance, MilpInstance, Point, is_member_S
from .lp import OPTIMAL, LpProblem, solve_lp
from .milp import INFEASIBLE, UNBOUNDED, solve_milp
from .rational import Norm, RationalVector, as_norm, dot, norm, sub, vec, zeros

CONVERGED = "Converged"
UNBOUNDED_FORWARD = "UnboundedForward"


@dataclass(frozen=True)
class Master:
    """Master LP plus the layout of its variables."""

    lp: LpProblem
    n: int

    def d_of(self, primal) -> RationalVector:
        return tuple(primal[: self.n])

    def theta_of(self, primal) -> Fraction:
        return primal[-1]


def _optimality_rows(E, x0, width):
    n = len(x0)
    rows = []
    for x in E:
        diff = sub(x, x0)
        rows.append((diff + (Fraction(0),) * (width - n), "<=", Fraction(0)))
    return rows


def build_master_linf(E: Sequence[Point], c, x0) -> LpProblem:
    """min theta s.t. |c_i - d_i| <= theta, d.x <= d.x0 for x in E; vars (d, theta)."""
    return _master_linf(E, vec(c), vec(x0)).lp


def build_master_l1(E: Sequence[Point], c, x0) -> LpProblem:
    """min theta s.t. theta = sum y, |c_i - d_i| <= y_i, optimality rows; vars (d, y, theta)."""
    return _master_l1(E, vec(c), vec(x0)).lp


def _master_linf(E, c, x0) -> Master:
    n = len(c)
    w = n + 1
    rows = []
    for i in range(n):
        a = [Fraction(0)] * w
        a[i], a[n] = Fraction(1), Fraction(1)
        rows.append((tuple(a), ">=", c[i]))
        a = [Fraction(0)] * w
        a[i], a[n] = Fraction(-1), Fraction(1)
        rows.append((tuple(a), ">=", -c[i]))
    rows.extend(_optimality_rows(E, x0, w))
    obj = (Fraction(0),) * n + (Fraction(1),)
    return Master(LpProblem("min", obj, tuple(rows), (None,) * w, (None,) * w), n)


def _master_l1(E, c, x0) -> Master:
    n = len(c)
    w = 2 * n + 1
    rows = []
    link = [Fraction(0)] * w
    link[-1] = Fraction(1)
    for i in range(n):
        link[n + i] = Fraction(-1)
    rows.append((tuple(link), "=", Fraction(0)))
    for i in range(n):
        a = [Fraction(0)] * w
        a[i], a[n + i] = Fraction(1), Fraction(1)
        rows.append((tuple(a), ">=", c[i]))
        a = [Fraction(0)] * w
        a[i], a[n + i] = Fraction(-1), Fraction(1)
        rows.append((tuple(a), ">=", -c[i]))
    rows.extend(_optimality_rows(E, x0, w))
    obj = (Fraction(0),) * (w - 1) + (Fraction(1),)
    return Master(LpProblem("min", obj, tuple(rows), (None,) * w, (None,) * w), n)


def build_master(E, c, x0, which=Norm.LINF) -> Master:
    which = as_norm(which)
    return _master_linf(E, c, x0) if which is Norm.LINF else _master_l1(E, c, x0)


@dataclass(frozen=True)
class Iteration:
    k: int
    E: Tuple[Point, ...]  # points in the master at this iteration
    d: RationalVector
    theta: Fraction
    x: Optional[Point]  # oracle answer; None when the oracle was unbounded


@dataclass(frozen=True)
class SolveTrace:
    iterations: Tuple[Iteration, ...]
    E_final: Tuple[Point, ...]
    outcome: str


@dataclass(frozen=True)
class InverseSolution:
    d_star: RationalVector
    theta_star: Fraction
    trace: SolveTrace = field(compare=False)


def solve_inverse(inv: InverseInstance, max_iter: Optional[int] = None) -> InverseSolution:
    """Nearest objective to ``inv.c`` (in ``inv.norm``) making ``inv.x0`` optimal."""
    c, x0, which = inv.c, inv.x0, inv.norm
    if not any(c):
        raise DomainError("estimate c = 0: distance to the feasible objectives is undefined here")
    E: List[Point] = []
    seen = set()
    iters = []
    k = 0
    while True:
        k += 1
        if max_iter is not None and k > max_iter:
            raise SolverError(f"no convergence within {max_iter} iterations")
        master = build_master(E, c, x0, which)
        o = solve_lp(master.lp)
        if o.tag != OPTIMAL:
            raise SolverError(f"master LP is {o.tag}; it should always be bounded and feasible")
        d = master.d_of(o.primal)
        theta = master.theta_of(o.primal)
        fwd = solve_milp(inv.forward, d)
        if fwd.tag == INFEASIBLE:
            raise DomainError("empty S: every objective is feasible, inverse problem is vacuous")
        if fwd.tag == UNBOUNDED:
            iters.append(Iteration(k, tuple(E), d, theta, None))
            if k != 1:
                raise SolverError(
                    f"forward problem unbounded at iteration {k} for d = {d}; "
                    "ray cuts are not generated"
                )
            trace = SolveTrace(tuple(iters), tuple(E), UNBOUNDED_FORWARD)
            return InverseSolution(zeros(len(c)), norm(c, which), trace)
        xk = fwd.argmax
        iters.append(Iteration(k, tuple(E), d, theta, xk))
        if dot(d, sub(xk, x0)) <= 0:
            break
        if xk in seen:
            raise SolverError(f"oracle repeated point {xk} with positive violation")
        seen.add(xk)
        E.append(xk)
    trace = SolveTrace(tuple(iters), tuple(E), CONVERGED)
    return InverseSolution(d, norm(sub(c, d), which), trace)


# -- Fenchel cuts -------------------------------------------------------------

@dataclass(frozen=True)
class InHull:
    weights: Tuple[Tuple[Point, Fraction], ...]

    @property
    def point(self) -> RationalVector:
        n = len(self.weights[0][0])
        return tuple(sum((w * p[i] for p, w in self.weights), Fraction(0)) for i in range(n))


@dataclass(frozen=True)
class Cut:
    d: RationalVector
    beta: Fraction
    points: Tuple[Point, ...] = field(default=(), compare=False)


def _fenchel_master(E, x0) -> LpProblem:
    """max d.x0 - beta  s.t.  d.x <= beta (x in E), -1 <= d_i <= 1; vars (d, beta)."""
    n = len(x0)
    rows = []
    for x in E:
        rows.append((tuple(x) + (Fraction(-1),), "<=", Fraction(0)))
    obj = tuple(x0) + (Fraction(-1),)
    return LpProblem(
        "max", obj, tuple(rows), (Fraction(-1),) * n + (None,), (Fraction(1),) * n + (None,)
    )


def fenchel_separate(inst: MilpInstance, x0) -> Union[InHull, Cut]:
    """Separate ``x0`` from conv(S) or express it as a convex combination of S."""
    from .bruteforce import in_convex_hull

    x0 = vec(x0)
    if is_member_S(x0, inst):
        return InHull(((x0, Fraction(1)),))
    seed = solve_milp(inst, zeros(inst.n))
    if seed.tag == INFEASIBLE:
        raise DomainError("empty S: nothing to separate from")
    E = [seed.argmax]
    while True:
        o = solve_lp(_fenchel_master(E, x0))
        if o.tag != OPTIMAL:
            raise SolverError(f"Fenchel master is {o.tag}")
        d, beta = tuple(o.primal[:-1]), o.primal[-1]
        if o.value <= 0:
            lam = in_convex_hull(x0, E)
            if lam is None:
                raise SolverError("zero violation but x0 not in conv(E)")
            return InHull(tuple((p, w) for p, w in zip(E, lam) if w))
        fwd = solve_milp(inst, d)
        if fwd.tag == UNBOUNDED:
            raise DomainError(f"forward problem unbounded in direction {d}")
        if fwd.value <= beta:
            return Cut(d, fwd.value, tuple(E))
        E.append(fwd.argmax)

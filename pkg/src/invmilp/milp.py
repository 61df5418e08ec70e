"""Branch-and-bound oracle for max d.x over S.

Branching picks the lowest-index integer variable with a fractional LP
value and explores the down branch first; open nodes are processed in
best-bound order with ties broken by insertion order. Among all optimal
solutions the lexicographically largest one is returned, found by one
extra search per coordinate with the optimal value fixed.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import DimensionError, SolverError
from .instance import InverseInstance, MilpInstance, Point
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, solve_lp
from .rational import RationalVector, dot, vec

NODE_LIMIT = 200_000


@dataclass(frozen=True)
class MilpOutcome:
    tag: str
    argmax: Optional[Point] = None
    value: Optional[Fraction] = None
    ray: Optional[RationalVector] = None
    nodes: int = field(default=0, compare=False)


def _relaxation(inst, d, lower, upper, extra):
    rows = [(a, "<=", b) for a, b in zip(inst.A, inst.b)]
    rows.extend(extra)
    return solve_lp(LpProblem("max", tuple(d), tuple(rows), tuple(lower), tuple(upper)))


def _first_fractional(inst, x):
    for i in range(inst.r):
        if x[i].denominator != 1:
            return i
    return -1


def _intersect_bounds(lo, hi):
    return lo is None or hi is None or lo <= hi


def _branch_and_bound(inst, d, lower, upper, extra=()):
    """Return (tag, x, value, ray, nodes) of plain B&B without tie-breaking."""
    root = _relaxation(inst, d, lower, upper, extra)
    if root.tag == INFEASIBLE:
        return INFEASIBLE, None, None, None, 1
    if root.tag == UNBOUNDED:
        zero = tuple(Fraction(0) for _ in d)
        tag, x, _, _, nodes = _branch_and_bound(inst, zero, lower, upper, extra)
        if tag == INFEASIBLE:
            return INFEASIBLE, None, None, None, nodes + 1
        return UNBOUNDED, x, None, root.ray, nodes + 1

    counter = itertools.count()
    heap = [(-root.value, next(counter), tuple(lower), tuple(upper), root.primal)]
    nodes = 1
    while heap:
        negb, _, lo, hi, x = heapq.heappop(heap)
        i = _first_fractional(inst, x)
        if i < 0:
            return OPTIMAL, x, -negb, None, nodes
        down_hi = list(hi)
        down_hi[i] = Fraction(math.floor(x[i]))
        up_lo = list(lo)
        up_lo[i] = Fraction(math.ceil(x[i]))
        for clo, chi in ((lo, tuple(down_hi)), (tuple(up_lo), hi)):
            if not _intersect_bounds(clo[i], chi[i]):
                continue
            nodes += 1
            if nodes > NODE_LIMIT:
                raise SolverError(f"branch-and-bound exceeded {NODE_LIMIT} nodes")
            o = _relaxation(inst, d, clo, chi, extra)
            if o.tag == INFEASIBLE:
                continue
            if o.tag == UNBOUNDED:  # cannot happen below a bounded root
                raise SolverError("node relaxation unbounded below a bounded root")
            heapq.heappush(heap, (-o.value, next(counter), clo, chi, o.primal))
    return INFEASIBLE, None, None, None, nodes


def solve_milp(inst: MilpInstance, d) -> MilpOutcome:
    """Maximise d.x over S; the lexicographically largest optimum is returned."""
    d = vec(d)
    if len(d) != inst.n:
        raise DimensionError(f"objective has length {len(d)}, expected {inst.n}")
    tag, x, value, ray, nodes = _branch_and_bound(inst, d, inst.lower, inst.upper)
    if tag == INFEASIBLE:
        return MilpOutcome(INFEASIBLE, nodes=nodes)
    if tag == UNBOUNDED:
        return MilpOutcome(UNBOUNDED, ray=ray, nodes=nodes)

    # lexicographic tie-break over the optimal face
    extra = []
    if any(d):
        extra.append((d, ">=", value))
    lower, upper = list(inst.lower), list(inst.upper)
    for i in range(inst.n):
        if upper[i] is not None and x[i] == upper[i]:
            lower[i] = x[i]
            continue
        e = tuple(Fraction(int(j == i)) for j in range(inst.n))
        t, xi, _, _, k = _branch_and_bound(inst, e, lower, upper, extra)
        nodes += k
        if t == OPTIMAL:
            x = xi
        elif t == INFEASIBLE:
            raise SolverError("optimal face became empty during tie-breaking")
        # unbounded face in this coordinate: keep the current point's value
        lower[i] = upper[i] = x[i]
    return MilpOutcome(OPTIMAL, argmax=x, value=dot(d, x), nodes=nodes)


def is_feasible_objective(inv: InverseInstance, d) -> Tuple[bool, Optional[RationalVector]]:
    """Whether d in D(x0); otherwise a violating point (or improving ray)."""
    d = vec(d)
    out = solve_milp(inv.forward, d)
    if out.tag == INFEASIBLE:
        return True, None
    if out.tag == UNBOUNDED:
        return False, out.ray
    if out.value <= dot(d, inv.x0):
        return True, None
    return False, out.argmax

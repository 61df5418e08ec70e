"""Reference answers by exhaustive enumeration of bounded pure-integer sets.

Everything here is deliberately naive: points are listed box by box,
optima are found by scanning, and the inverse optimum comes from a single
LP whose rows are *all* enumerated points. These routines serve as
oracles for the cutting-plane and branch-and-bound code paths.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DomainError, UnsupportedError
from .instance import MilpInstance, Point
from .lp import INFEASIBLE, OPTIMAL, LpProblem, solve_lp
from .milp import MilpOutcome
from .rational import Norm, RationalVector, as_norm, dot, vec

MAX_BOX_POINTS = 10**6


@dataclass(frozen=True)
class EnumeratedRegion:
    points: Tuple[Point, ...]
    hull_vertices: Tuple[Point, ...]


def box_points(inst: MilpInstance):
    if not inst.is_pure_integer:
        raise UnsupportedError("enumeration needs a pure-integer instance (r = n)")
    if not inst.is_boxed:
        raise UnsupportedError("enumeration needs finite bounds on every variable")
    ranges = []
    volume = 1
    for lo, hi in zip(inst.lower, inst.upper):
        a, b = math.ceil(lo), math.floor(hi)
        ranges.append(range(a, b + 1))
        volume *= max(0, b - a + 1)
    if volume > MAX_BOX_POINTS:
        raise UnsupportedError(f"box holds {volume} points (limit {MAX_BOX_POINTS})")
    return volume, ranges


def in_convex_hull(x: Sequence[Fraction], pts: Sequence[Point]) -> Optional[RationalVector]:
    """Convex weights over ``pts`` reproducing ``x``, or None if x is outside."""
    if not pts:
        return None
    n = len(x)
    k = len(pts)
    rows = [(tuple(p[i] for p in pts), "=", x[i]) for i in range(n)]
    rows.append(((Fraction(1),) * k, "=", Fraction(1)))
    o = solve_lp(LpProblem.create("min", [0] * k, rows, lower=[0] * k))
    return o.primal if o.tag == OPTIMAL else None


def hull_vertices(points: Sequence[Point]) -> Tuple[Point, ...]:
    """Vertices of conv(points), in the order given.

    A point with both lattice neighbours p +- e_i present is a midpoint and
    cannot be a vertex; the rest are tested with one membership LP each
    against the other candidates.
    """
    pset = set(points)
    cands = []
    for p in points:
        mid = False
        for i in range(len(p)):
            lo = p[:i] + (p[i] - 1,) + p[i + 1:]
            hi = p[:i] + (p[i] + 1,) + p[i + 1:]
            if lo in pset and hi in pset:
                mid = True
                break
        if not mid:
            cands.append(p)
    out = []
    for p in cands:
        others = [q for q in cands if q != p]
        if in_convex_hull(p, others) is None:
            out.append(p)
    return tuple(out)


def enumerate_region(inst: MilpInstance, x0: Optional[Sequence] = None) -> EnumeratedRegion:
    """All points of S in lexicographic order, plus vertices of conv(S) or conv(S+)."""
    return _enumerate_cached(inst, None if x0 is None else vec(x0))


@functools.lru_cache(maxsize=512)
def _enumerate_cached(inst: MilpInstance, x0) -> EnumeratedRegion:
    _, ranges = box_points(inst)
    pts = []
    for t in itertools.product(*ranges):
        x = tuple(Fraction(v) for v in t)
        if all(dot(a, x) <= b for a, b in zip(inst.A, inst.b)):
            pts.append(x)
    pts = tuple(pts)
    hull_input = list(pts)
    if x0 is not None:
        if x0 not in set(pts):
            hull_input.append(x0)
    verts = hull_vertices(hull_input)
    return EnumeratedRegion(pts, tuple(sorted(verts)))


# short public alias; ``enumerate`` itself would shadow the builtin
enumerate_ = enumerate_region


def brute_forward_opt(region: EnumeratedRegion, d) -> MilpOutcome:
    d = vec(d)
    if not region.points:
        return MilpOutcome(INFEASIBLE)
    best = max(region.points, key=lambda x: (dot(d, x), x))
    return MilpOutcome(OPTIMAL, argmax=best, value=dot(d, best))


def brute_inverse_opt(region: EnumeratedRegion, c, x0, norm=Norm.LINF):
    """(theta*, d*) from one master LP over every enumerated point."""
    from .inverse import build_master

    if not region.points:
        raise DomainError("empty S: the inverse problem is vacuous")
    master = build_master(list(region.points), vec(c), vec(x0), as_norm(norm))
    o = solve_lp(master.lp)
    if o.tag != OPTIMAL:
        raise DomainError(f"full master LP is {o.tag}")
    return o.value, master.d_of(o.primal)

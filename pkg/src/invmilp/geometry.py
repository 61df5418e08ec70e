"""Membership tests for K(gamma), K*(gamma) and D(x0).

K*(gamma) is tested through the closed form

    min_{||d - c|| <= gamma} d.(x - x0) = c.(x - x0) - gamma * ||x - x0||_dual

with the l1 / l-infinity norms dual to each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .instance import MilpInstance
from .milp import is_feasible_objective
from .rational import Norm, RationalVector, as_norm, dot, norm, sub, to_rational, vec


class ConeClass(str, Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"
    APEX = "Apex"


@dataclass(frozen=True)
class ConeQuery:
    c: RationalVector
    x0: RationalVector
    gamma: Fraction
    norm: Norm = Norm.LINF

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        object.__setattr__(self, "norm", as_norm(self.norm))

    @classmethod
    def create(cls, c, x0, gamma, which=Norm.LINF):
        return cls(vec(c), vec(x0), to_rational(gamma), as_norm(which))


def kstar_margin(x, q: ConeQuery) -> Fraction:
    """Smallest value of d.(x - x0) over the ball K(gamma)."""
    v = sub(vec(x), q.x0)
    return dot(q.c, v) - q.gamma * norm(v, q.norm.dual)


def kstar_classify(x, q: ConeQuery) -> ConeClass:
    x = vec(x)
    if x == q.x0:
        return ConeClass.APEX
    m = kstar_margin(x, q)
    if m > 0:
        return ConeClass.INTERIOR
    if m == 0:
        return ConeClass.BOUNDARY
    return ConeClass.OUTSIDE


def in_K(d, q: ConeQuery) -> bool:
    return norm(sub(q.c, vec(d)), q.norm) <= q.gamma


def in_D(x0, d, inst: MilpInstance) -> bool:
    from .instance import InverseInstance

    x0 = vec(x0)
    probe = InverseInstance(inst, x0, tuple(Fraction(0) for _ in x0))
    return is_feasible_objective(probe, d)[0]

"""Forward MILP feasible sets and inverse-problem inputs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DimensionError
from .rational import Norm, RationalVector, as_norm, dot, to_rational, vec

Point = RationalVector
Bound = Optional[Fraction]


@dataclass(frozen=True)
class MilpInstance:
    """S = {x : Ax <= b, lower <= x <= upper} with x_1..x_r integer.

    Bounds are kept apart from ``A`` but mean exactly the same as rows.
    ``objective`` is optional forward-problem data carried along by the
    file format.
    """

    A: Tuple[RationalVector, ...]
    b: RationalVector
    r: int
    lower: Tuple[Bound, ...]
    upper: Tuple[Bound, ...]
    objective: Optional[RationalVector] = None

    def __post_init__(self):
        n = len(self.lower)
        if len(self.upper) != n:
            raise DimensionError("lower and upper bounds differ in length")
        if len(self.A) != len(self.b):
            raise DimensionError(f"A has {len(self.A)} rows but b has {len(self.b)} entries")
        for i, row in enumerate(self.A):
            if len(row) != n:
                raise DimensionError(f"row {i} has {len(row)} coefficients, expected {n}")
        if not 0 <= self.r <= n:
            raise DimensionError(f"integer count r={self.r} outside [0, {n}]")
        if self.objective is not None and len(self.objective) != n:
            raise DimensionError("objective length does not match dimension")

    @classmethod
    def create(cls, n, A=(), b=(), r=None, lower=None, upper=None, objective=None):
        """Build an instance from ints/strings/Fractions; ``r`` defaults to n."""
        lo = tuple(None if x is None else to_rational(x) for x in (lower or [None] * n))
        hi = tuple(None if x is None else to_rational(x) for x in (upper or [None] * n))
        if len(lo) != n or len(hi) != n:
            raise DimensionError("bounds must have one entry per variable")
        return cls(
            A=tuple(vec(row) for row in A),
            b=vec(b),
            r=n if r is None else r,
            lower=lo,
            upper=hi,
            objective=None if objective is None else vec(objective),
        )

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def is_pure_integer(self) -> bool:
        return self.r == self.n

    @property
    def is_boxed(self) -> bool:
        return all(x is not None for x in self.lower) and all(x is not None for x in self.upper)

    def all_rows(self):
        """Rows of S as (a, b) pairs for a.x <= b, bound rows appended."""
        rows = list(zip(self.A, self.b))
        n = self.n
        for i in range(n):
            e = tuple(Fraction(int(j == i)) for j in range(n))
            if self.lower[i] is not None:
                rows.append((tuple(-x for x in e), -self.lower[i]))
            if self.upper[i] is not None:
                rows.append((e, self.upper[i]))
        return rows

    def with_bounds(self, lower, upper) -> "MilpInstance":
        return MilpInstance(self.A, self.b, self.r, tuple(lower), tuple(upper), self.objective)


@dataclass(frozen=True)
class InverseInstance:
    """Forward set plus target x0, estimate c and the distance norm.

    x0 need not lie in S. c = 0 is representable; operations that need
    c != 0 raise DomainError themselves.
    """

    forward: MilpInstance
    x0: Point
    c: RationalVector
    norm: Norm = Norm.LINF

    def __post_init__(self):
        n = self.forward.n
        if len(self.x0) != n:
            raise DimensionError(f"target has length {len(self.x0)}, expected {n}")
        if len(self.c) != n:
            raise DimensionError(f"estimate has length {len(self.c)}, expected {n}")
        object.__setattr__(self, "norm", as_norm(self.norm))

    @classmethod
    def create(cls, forward: MilpInstance, x0, c, norm=Norm.LINF):
        return cls(forward, vec(x0), vec(c), as_norm(norm))

    @property
    def n(self) -> int:
        return self.forward.n

    def with_target(self, x0) -> "InverseInstance":
        return InverseInstance(self.forward, vec(x0), self.c, self.norm)


def _check_len(x: Sequence, n: int):
    if len(x) != n:
        raise DimensionError(f"point has length {len(x)}, expected {n}")


def is_member_S(x: Sequence, inst: MilpInstance) -> bool:
    _check_len(x, inst.n)
    x = vec(x)
    for i in range(inst.r):
        if x[i].denominator != 1:
            return False
    for i, xi in enumerate(x):
        lo, hi = inst.lower[i], inst.upper[i]
        if lo is not None and xi < lo:
            return False
        if hi is not None and xi > hi:
            return False
    return all(dot(a, x) <= bi for a, bi in zip(inst.A, inst.b))


def is_member_S_plus(x: Sequence, inv: InverseInstance) -> bool:
    _check_len(x, inv.n)
    return tuple(vec(x)) == inv.x0 or is_member_S(x, inv.forward)

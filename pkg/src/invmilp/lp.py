"""Exact two-phase simplex with Bland's rule.

The solver works on a condensed (nonbasic-columns-only) tableau kept in
fraction-free integer form: every row is scaled to integers once, and
pivots preserve integrality by exact division with the previous pivot
element. Fractions are only materialised when results are read off.

Every outcome carries a certificate expressed in the *canonical form* of
the problem (see :func:`canonical_form`):

* Optimal: primal point and dual multipliers with equal objective values.
* Unbounded: a feasible point and an improving recession direction.
* Infeasible: Farkas multipliers proving the constraint system empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

from . import kernels
from .errors import DimensionError, SolverError
from .rational import RationalVector, dot, to_rational, vec

OPTIMAL = "Optimal"
UNBOUNDED = "Unbounded"
INFEASIBLE = "Infeasible"

_RELATIONS = ("<=", ">=", "=")

Row = Tuple[RationalVector, str, Fraction]


@dataclass(frozen=True)
class LpProblem:
    """Optimise ``objective . x`` subject to rows and optional bounds.

    Variables without bounds are free. ``sense`` is ``"min"`` or ``"max"``.
    """

    sense: str
    objective: RationalVector
    rows: Tuple[Row, ...]
    lower: Tuple[Optional[Fraction], ...]
    upper: Tuple[Optional[Fraction], ...]

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(self.lower) != n or len(self.upper) != n:
            raise DimensionError("bounds must have one entry per variable")
        for i, (a, rel, _) in enumerate(self.rows):
            if len(a) != n:
                raise DimensionError(f"row {i} has {len(a)} coefficients, expected {n}")
            if rel not in _RELATIONS:
                raise ValueError(f"row {i}: unknown relation {rel!r}")

    @classmethod
    def create(cls, sense, objective, rows=(), lower=None, upper=None):
        n = len(objective)
        lo = tuple(None if x is None else to_rational(x) for x in (lower or [None] * n))
        hi = tuple(None if x is None else to_rational(x) for x in (upper or [None] * n))
        return cls(
            sense,
            vec(objective),
            tuple((vec(a), rel, to_rational(b)) for a, rel, b in rows),
            lo,
            hi,
        )

    @property
    def n(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    tag: str
    primal: Optional[RationalVector] = None
    value: Optional[Fraction] = None
    dual: Optional[RationalVector] = None
    ray: Optional[RationalVector] = None
    farkas: Optional[RationalVector] = None
    pivots: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.tag == OPTIMAL


def canonical_form(p: LpProblem):
    """Return ``(cost, constraints)`` for ``min cost.x`` over free x.

    ``constraints`` lists ``(g, kind, h)`` with kind ``">="`` or ``"="``:
    the problem rows in order (``<=`` rows negated), then one ``x_j >= lo``
    row per finite lower bound, then one ``-x_j >= -hi`` row per finite
    upper bound. Dual and Farkas vectors are indexed by this list.
    """
    n = p.n
    cost = p.objective if p.sense == "min" else tuple(-c for c in p.objective)
    cons = []
    for a, rel, b in p.rows:
        if rel == "<=":
            cons.append((tuple(-x for x in a), ">=", -b))
        else:
            cons.append((a, rel, b))
    for j in range(n):
        if p.lower[j] is not None:
            cons.append((_unit(n, j, 1), ">=", p.lower[j]))
    for j in range(n):
        if p.upper[j] is not None:
            cons.append((_unit(n, j, -1), ">=", -p.upper[j]))
    return cost, cons


_ZERO, _ONE, _MINUS_ONE = Fraction(0), Fraction(1), Fraction(-1)


def _unit(n, j, s):
    e = [_ZERO] * n
    e[j] = _ONE if s > 0 else _MINUS_ONE
    return tuple(e)


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        if v.denominator != 1:
            out = lcm(out, v.denominator)
    return out


class _Tableau:
    """One solve's working state; never shared between calls."""

    def __init__(self, p: LpProblem):
        self.p = p
        n = p.n
        cost, cons = canonical_form(p)
        self.cost = cost
        self.ncanon = len(cons)
        nrows_user = len(p.rows)

        # structural columns: (variable j, sign) with x_j = shift_j + sign * x'
        cols: List[Tuple[int, int]] = []
        shift = [Fraction(0)] * n
        self.kind = [""] * n
        self.col_of = [[] for _ in range(n)]
        for j in range(n):
            lo, hi = p.lower[j], p.upper[j]
            if lo is not None:
                self.kind[j], shift[j] = "lo", lo
                self.col_of[j].append(len(cols))
                cols.append((j, 1))
            elif hi is not None:
                self.kind[j], shift[j] = "hi", hi
                self.col_of[j].append(len(cols))
                cols.append((j, -1))
            else:
                self.kind[j] = "free"
                self.col_of[j].append(len(cols))
                cols.append((j, 1))
                self.col_of[j].append(len(cols))
                cols.append((j, -1))
        self.cols = cols
        self.shift = shift
        N = len(cols)
        self.N = N

        # index of each bound row inside the canonical constraint list
        lo_idx, hi_idx = {}, {}
        k = nrows_user
        for j in range(n):
            if p.lower[j] is not None:
                lo_idx[j] = k
                k += 1
        for j in range(n):
            if p.upper[j] is not None:
                hi_idx[j] = k
                k += 1
        self.lo_idx, self.hi_idx = lo_idx, hi_idx

        # internal rows over x': (coefs, kind, rhs, canonical index)
        internal = []
        shifted = [j for j in range(n) if shift[j]]
        for i, (g, kind, h) in enumerate(cons[:nrows_user]):
            coefs = [g[j] if s > 0 else -g[j] for (j, s) in cols]
            rhs = h - sum((g[j] * shift[j] for j in shifted), Fraction(0)) if shifted else h
            internal.append((coefs, kind, rhs, i))
        for j in range(n):
            if self.kind[j] == "lo" and p.upper[j] is not None:
                (c0,) = self.col_of[j]
                coefs = [_ZERO] * N
                coefs[c0] = _MINUS_ONE
                internal.append((coefs, ">=", -(p.upper[j] - p.lower[j]), hi_idx[j]))

        m = len(internal)
        self.m = m
        self.art_base = N + m
        self.row_canon = []
        self.row_mult = []  # lambda_i * sigma_i
        self.identity = []  # var index of each row's initial basic column
        nb = list(range(N))
        slack_cols = []
        int_rows = []
        for i, (coefs, kind, rhs, ci) in enumerate(internal):
            if kind == ">=":
                if rhs <= 0:
                    sigma, ident, extra_slack = -1, N + i, False
                else:
                    sigma, ident, extra_slack = 1, N + m + i, True
            else:
                sigma = 1 if rhs >= 0 else -1
                ident, extra_slack = N + m + i, False
            vals = coefs + [rhs]
            lam = _lcm_den(vals)
            irow = [sigma * v.numerator * (lam // v.denominator) for v in vals]
            int_rows.append((irow, extra_slack))
            self.row_canon.append(ci)
            self.row_mult.append(lam * sigma)
            self.identity.append(ident)
            if extra_slack:
                slack_cols.append(i)
        nb.extend(N + i for i in slack_cols)
        col_pos = {v: t for t, v in enumerate(nb)}
        ncols = len(nb)
        rows = []
        for i, (irow, extra_slack) in enumerate(int_rows):
            row = irow[:N] + [0] * (ncols - N) + [irow[N]]
            if extra_slack:
                row[col_pos[N + i]] = -1
            rows.append(row)
        self.nb = nb
        self.basis = list(self.identity)
        self.rows = rows
        self.det = 1
        self.pivots = 0

        self.has_phase1 = any(v >= self.art_base for v in self.basis)
        if self.has_phase1:
            obj1 = [0] * (ncols + 1)
            for i in range(m):
                if self.basis[i] >= self.art_base:
                    for t, a in enumerate(rows[i]):
                        obj1[t] += a
            rows.append(obj1)
        self.k2 = _lcm_den(cost)
        obj2 = [0] * (ncols + 1)
        for t in range(N):
            j, s = cols[t]
            obj2[t] = -int(cost[j] * s * self.k2)
        rows.append(obj2)

    # -- pivoting -------------------------------------------------------------

    def _is_art(self, v):
        return v >= self.art_base

    def _pivot(self, r, s):
        self.det = kernels.pivot(self.rows, r, s, self.det)
        self.basis[r], self.nb[s] = self.nb[s], self.basis[r]
        self.pivots += 1

    def _entering(self, obj):
        best, bvar = -1, None
        for s, v in enumerate(self.nb):
            if obj[s] > 0 and not self._is_art(v) and (bvar is None or v < bvar):
                best, bvar = s, v
        return best

    def _run(self, obj_row_index):
        m = self.m
        while True:
            s = self._entering(self.rows[obj_row_index])
            if s < 0:
                return -1
            r = kernels.ratio_test(self.rows, m, s, self.basis)
            if r < 0:
                return s
            self._pivot(r, s)

    # -- reading results ------------------------------------------------------

    def _rc(self, obj, var, scale):
        """Reduced cost of ``var`` in true units (0 when basic)."""
        try:
            t = self.nb.index(var)
        except ValueError:
            return Fraction(0)
        return Fraction(-obj[t], self.det * scale)

    def _primal(self):
        xp = [Fraction(0)] * self.N
        for i, v in enumerate(self.basis):
            if v < self.N:
                xp[v] = Fraction(self.rows[i][-1], self.det)
        return self._to_x(xp, use_shift=True)

    def _to_x(self, xp, use_shift):
        n = self.p.n
        x = list(self.shift) if use_shift else [Fraction(0)] * n
        for t, (j, s) in enumerate(self.cols):
            x[j] += s * xp[t]
        return tuple(x)

    def _multipliers(self, obj, phase1):
        scale = 1 if phase1 else self.k2
        y = [Fraction(0)] * self.ncanon
        for i in range(self.m):
            ident = self.identity[i]
            cost = 1 if (phase1 and self._is_art(ident)) else 0
            u = cost - self._rc(obj, ident, scale)
            y[self.row_canon[i]] += self.row_mult[i] * u
        for j in range(self.p.n):
            if self.kind[j] == "lo":
                y[self.lo_idx[j]] = self._rc(obj, self.col_of[j][0], scale)
            elif self.kind[j] == "hi":
                y[self.hi_idx[j]] = self._rc(obj, self.col_of[j][0], scale)
        return tuple(y)

    def solve(self) -> LpOutcome:
        m = self.m
        if self.has_phase1:
            s = self._run(m)
            if s >= 0:
                raise SolverError("phase I reported unbounded; tableau is corrupt")
            if self.rows[m][-1] > 0:
                farkas = self._multipliers(self.rows[m], phase1=True)
                return LpOutcome(INFEASIBLE, farkas=farkas, pivots=self.pivots)
            self._drive_out_artificials()
            del self.rows[m]
        s = self._run(m)
        x = self._primal()
        value = dot(self.p.objective, x)
        if s >= 0:
            dxp = [Fraction(0)] * self.N
            v = self.nb[s]
            if v < self.N:
                dxp[v] = Fraction(1)
            for i, b in enumerate(self.basis):
                if b < self.N:
                    dxp[b] = Fraction(-self.rows[i][s], self.det)
            ray = self._to_x(dxp, use_shift=False)
            return LpOutcome(UNBOUNDED, primal=x, ray=ray, pivots=self.pivots)
        dual = self._multipliers(self.rows[m], phase1=False)
        return LpOutcome(OPTIMAL, primal=x, value=value, dual=dual, pivots=self.pivots)

    def _drive_out_artificials(self):
        for i in range(self.m):
            if not self._is_art(self.basis[i]):
                continue
            row = self.rows[i]
            best, bvar = -1, None
            for s, v in enumerate(self.nb):
                if row[s] != 0 and not self._is_art(v) and (bvar is None or v < bvar):
                    best, bvar = s, v
            if best >= 0:
                self._pivot(i, best)
            # otherwise the row is redundant and its artificial stays at zero


def solve_lp(p: LpProblem) -> LpOutcome:
    """Solve ``p`` exactly; the returned vertex is the one Bland's rule reaches."""
    return _Tableau(p).solve()


# -- certificate checking -----------------------------------------------------

def _feasible(cons, x) -> bool:
    for g, kind, h in cons:
        v = dot(g, x)
        if kind == ">=" and v < h:
            return False
        if kind == "=" and v != h:
            return False
    return True


def _signs_ok(cons, y) -> bool:
    return all(kind == "=" or yi >= 0 for (_, kind, _), yi in zip(cons, y))


def _combine(cons, y, n):
    out = [Fraction(0)] * n
    for (g, _, _), yi in zip(cons, y):
        if yi:
            for j in range(n):
                out[j] += yi * g[j]
    return tuple(out)


def check_lp_certificate(p: LpProblem, o: LpOutcome) -> bool:
    """Re-verify ``o`` against ``p`` by direct substitution; never raises."""
    try:
        cost, cons = canonical_form(p)
        n = p.n
        if o.tag == OPTIMAL:
            x, y = o.primal, o.dual
            if x is None or y is None or len(x) != n or len(y) != len(cons):
                return False
            if not _feasible(cons, x) or not _signs_ok(cons, y):
                return False
            if _combine(cons, y, n) != tuple(cost):
                return False
            dual_value = sum((yi * h for (_, _, h), yi in zip(cons, y)), Fraction(0))
            if dual_value != dot(cost, x):
                return False
            return o.value == dot(p.objective, x)
        if o.tag == UNBOUNDED:
            x, d = o.primal, o.ray
            if x is None or d is None or len(d) != n:
                return False
            if not _feasible(cons, x):
                return False
            for g, kind, _ in cons:
                v = dot(g, d)
                if (kind == ">=" and v < 0) or (kind == "=" and v != 0):
                    return False
            return dot(cost, d) < 0
        if o.tag == INFEASIBLE:
            y = o.farkas
            if y is None or len(y) != len(cons) or not _signs_ok(cons, y):
                return False
            if any(_combine(cons, y, n)):
                return False
            return sum((yi * h for (_, _, h), yi in zip(cons, y)), Fraction(0)) > 0
        return False
    except Exception:  # noqa: BLE001 - malformed outcome means "not certified"
        return False

"""Decision versions of the forward and inverse problems, the reductions
between them, and short certificates for inverse answers.

Every decider solves its optimisation problem to optimality and compares
exactly; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .bruteforce import enumerate_region, in_convex_hull
from .errors import DomainError, UnsupportedError
from .geometry import ConeClass, ConeQuery, kstar_classify
from .instance import InverseInstance, MilpInstance, Point, is_member_S_plus
from .inverse import InverseSolution, solve_inverse
from .lp import OPTIMAL, LpProblem, solve_lp
from .milp import INFEASIBLE, UNBOUNDED, solve_milp
from .rational import (
    Norm,
    RationalVector,
    as_norm,
    dot,
    encoding_length_rat,
    encoding_length_vec,
    l2_norm_squared,
    norm,
    scale,
    sub,
    to_rational,
    vec,
    zeros,
)


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"

    def __bool__(self):
        return self is Answer.YES

    @classmethod
    def of(cls, flag: bool) -> "Answer":
        return cls.YES if flag else cls.NO


# -- forward problems ---------------------------------------------------------

def forward_max(inst: MilpInstance, d) -> Tuple[str, Optional[Fraction]]:
    out = solve_milp(inst, d)
    return out.tag, out.value


def decide_mpvp(alpha, inst: MilpInstance, d) -> Answer:
    """Is some x in S with d.x >= alpha? Unbounded S answers YES."""
    tag, value = forward_max(inst, d)
    if tag == UNBOUNDED:
        return Answer.YES
    if tag == INFEASIBLE:
        return Answer.NO
    return Answer.of(value >= to_rational(alpha))


def decide_mdvp(alpha, inst: MilpInstance, d) -> Answer:
    """Is d.x <= alpha on all of S? Empty S answers YES, unbounded NO."""
    tag, value = forward_max(inst, d)
    if tag == UNBOUNDED:
        return Answer.NO
    if tag == INFEASIBLE:
        return Answer.YES
    return Answer.of(value <= to_rational(alpha))


def decide_movp(alpha, inst: MilpInstance, d) -> Answer:
    return Answer.of(bool(decide_mpvp(alpha, inst, d)) and bool(decide_mdvp(alpha, inst, d)))


# -- inverse problems ---------------------------------------------------------

def inverse_value(inv: InverseInstance, solution: Optional[InverseSolution] = None) -> Fraction:
    """theta*; zero when c = 0 or S is empty (then d = c is feasible)."""
    if solution is not None:
        return solution.theta_star
    if not any(inv.c):
        return Fraction(0)
    if solve_milp(inv.forward, zeros(inv.n)).tag == INFEASIBLE:
        return Fraction(0)
    return solve_inverse(inv).theta_star


def decide_impvp(gamma, inv: InverseInstance, solution=None) -> Answer:
    return Answer.of(inverse_value(inv, solution) <= to_rational(gamma))


def decide_imdvp(gamma, inv: InverseInstance, solution=None) -> Answer:
    return Answer.of(inverse_value(inv, solution) >= to_rational(gamma))


def decide_imovp(gamma, inv: InverseInstance, solution=None) -> Answer:
    return Answer.of(inverse_value(inv, solution) == to_rational(gamma))


# -- reductions ---------------------------------------------------------------

@dataclass(frozen=True)
class ReductionArtifacts:
    x_target: RationalVector
    epsilon: Optional[Fraction]
    delta: Optional[Fraction]
    nu: Optional[int]
    gamma_out: Fraction

    def inverse_instance(self, inst: MilpInstance, c, which=Norm.LINF) -> InverseInstance:
        return InverseInstance(inst, self.x_target, vec(c), as_norm(which))


def _level_point(level: Fraction, c: RationalVector) -> RationalVector:
    # the point on the ray of c with c.x = level
    return scale(level / l2_norm_squared(c), c)


def _nonzero(c) -> RationalVector:
    c = vec(c)
    if not any(c):
        raise DomainError("estimate c = 0 cannot encode an objective bound")
    return c


def reduce_mdvp_to_impvp(alpha, inst: MilpInstance, c) -> ReductionArtifacts:
    """MDVP(alpha, c) == IMPVP(0) with target alpha c / |c|_2^2."""
    c = _nonzero(c)
    x = _level_point(to_rational(alpha), c)
    return ReductionArtifacts(x, None, None, None, Fraction(0))


def vertex_complexity(inst: MilpInstance, x0=None, nu: Optional[int] = None) -> int:
    """Vertex complexity of conv(S) (or conv(S+) when x0 is given).

    Exact for bounded pure-integer sets; for r = 0 the facet bound 4 n^2 phi
    is used. Anything else needs an explicit ``nu``.
    """
    if nu is not None:
        if nu < 0:
            raise ValueError("nu must be nonnegative")
        return int(nu)
    if inst.is_pure_integer and inst.is_boxed:
        verts = enumerate_region(inst, x0).hull_vertices
        return max((encoding_length_vec(v) for v in verts), default=0)
    if inst.r == 0:
        rows = inst.all_rows()
        if not rows:
            raise UnsupportedError("polyhedron without rows has no vertices")
        phi = max(encoding_length_vec(tuple(a) + (b,)) for a, b in rows)
        return 4 * inst.n * inst.n * phi
    raise UnsupportedError("vertex complexity of a general mixed-integer hull: pass nu explicitly")


def _pow2(e: int) -> Fraction:
    return Fraction(1, 2**e)


def lemma3_constants(alpha, c, x0_target=None, nu: int = 0) -> Tuple[Fraction, Fraction]:
    """(epsilon, delta). Without ``x0_target`` the target x^(alpha - eps) is built here."""
    alpha, c = to_rational(alpha), vec(c)
    eps = _pow2(max(encoding_length_vec(c) + nu, encoding_length_rat(alpha)) + 1)
    if x0_target is None:
        x0_target = _level_point(alpha - eps, _nonzero(c))
    delta = _pow2(encoding_length_vec(x0_target) + nu + 1)
    return eps, delta


def reduce_mpvp_to_imdvp(alpha, inst: MilpInstance, c, nu: Optional[int] = None) -> ReductionArtifacts:
    """MPVP(alpha, c) == IMDVP(eps delta) with target (alpha - eps) c / |c|_2^2."""
    c = _nonzero(c)
    alpha = to_rational(alpha)
    nu = vertex_complexity(inst, None, nu)
    eps, _ = lemma3_constants(alpha, c, zeros(len(c)), nu)
    x = _level_point(alpha - eps, c)
    _, delta = lemma3_constants(alpha, c, x, nu)
    return ReductionArtifacts(x, eps, delta, nu, eps * delta)


# -- certificates -------------------------------------------------------------

IMPVP_NO = "ImpvpNo"
IMDVP_YES = "ImdvpYes"
CLAIMS = (IMPVP_NO, IMDVP_YES)


@dataclass(frozen=True)
class Certificate:
    points: Tuple[Point, ...]
    weights: Tuple[Fraction, ...]
    claim: str
    gamma: Fraction

    @property
    def point(self) -> RationalVector:
        n = len(self.points[0])
        return tuple(
            sum((w * p[i] for p, w in zip(self.points, self.weights)), Fraction(0)) for i in range(n)
        )


def _margin_lp(dirs: Sequence[RationalVector], c, gamma, which: Norm, objective=None):
    """LP over mu >= 0, sum mu <= 1, w = sum mu_j dirs_j, t >= |w| (dual norm).

    Default objective is the K*-margin c.w - gamma * |w|_dual; with
    ``objective=(i, s)`` it maximises s * w_i subject to margin >= 0.
    """
    n, k = len(c), len(dirs)
    dual = which.dual
    nt = n if dual is Norm.L1 else 1
    width = k + nt
    zero = Fraction(0)
    rows = [((Fraction(1),) * k + (zero,) * nt, "<=", Fraction(1))]
    for i in range(n):
        ti = i if nt == n else 0
        for s in (1, -1):
            a = [zero] * width
            for j, v in enumerate(dirs):
                a[j] = -s * v[i]
            a[k + ti] = Fraction(1)
            rows.append((tuple(a), ">=", zero))
    margin = tuple(dot(c, v) for v in dirs) + (-gamma,) * nt
    if objective is None:
        obj = margin
    else:
        i, s = objective
        rows.append((margin, ">=", zero))
        obj = tuple(s * v[i] for v in dirs) + (zero,) * nt
    lower = (zero,) * width
    return solve_lp(LpProblem("max", obj, tuple(rows), lower, (None,) * width))


def _support(points, mu, x0):
    pairs = [(p, w) for p, w in zip(points, mu) if w]
    rest = 1 - sum(mu, Fraction(0))
    if rest:
        pairs.append((x0, rest))
    return pairs


def _caratheodory(pairs, n):
    """Reduce a convex combination to a basic one with at most n + 1 points."""
    pts = [p for p, _ in pairs]
    xbar = tuple(sum((w * p[i] for p, w in pairs), Fraction(0)) for i in range(n))
    lam = in_convex_hull(xbar, pts)
    return tuple((p, w) for p, w in zip(pts, lam) if w)


def _check_gamma(inv: InverseInstance, gamma: Fraction, claim: str):
    if gamma < 0:
        raise DomainError("gamma must be nonnegative")
    if claim == IMDVP_YES:
        if gamma == 0:
            raise DomainError("gamma = 0: IMDVP is trivially YES, nothing to certify")
        if gamma >= norm(inv.c, inv.norm):
            raise DomainError("gamma >= |c|: the cone characterisation needs gamma < |c|")


def kstar_witness(inv: InverseInstance, gamma, claim: str = IMPVP_NO):
    """A convex combination over S+ lying in K*(gamma), or None.

    IMPVP_NO asks for an interior point; IMDVP_YES for any point of
    K*(gamma) other than x0.
    """
    gamma = to_rational(gamma)
    n, x0, c = inv.n, inv.x0, inv.c
    region = enumerate_region(inv.forward, x0)
    verts = [v for v in region.hull_vertices if v != x0]
    if not verts:
        return None
    dirs = [sub(v, x0) for v in verts]
    o = _margin_lp(dirs, c, gamma, inv.norm)
    if o.tag != OPTIMAL:
        raise DomainError(f"margin LP is {o.tag}")
    k = len(verts)
    if o.value > 0:
        return _support(verts, o.primal[:k], x0)
    if claim == IMPVP_NO:
        return None
    for i in range(n):
        for s in (1, -1):
            o = _margin_lp(dirs, c, gamma, inv.norm, objective=(i, s))
            if o.tag == OPTIMAL and o.value > 0:
                return _support(verts, o.primal[:k], x0)
    return None


def build_certificate(inv: InverseInstance, gamma, claim: str = IMPVP_NO) -> Optional[Certificate]:
    """Short proof that theta* > gamma (IMPVP_NO) or theta* >= gamma (IMDVP_YES)."""
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}")
    gamma = to_rational(gamma)
    _check_gamma(inv, gamma, claim)
    pairs = kstar_witness(inv, gamma, claim)
    if pairs is None:
        return None
    pairs = _caratheodory(pairs, inv.n)
    return Certificate(tuple(p for p, _ in pairs), tuple(w for _, w in pairs), claim, gamma)


def verify_certificate(cert: Certificate, inv: InverseInstance) -> bool:
    """Check a certificate by arithmetic alone; never calls an optimiser."""
    try:
        n = inv.n
        if cert.claim not in CLAIMS:
            return False
        pts, ws = tuple(map(vec, cert.points)), tuple(map(to_rational, cert.weights))
        if not pts or len(pts) != len(ws) or len(pts) > n + 1:
            return False
        if any(w < 0 for w in ws) or sum(ws, Fraction(0)) != 1:
            return False
        if not all(len(p) == n and is_member_S_plus(p, inv) for p in pts):
            return False
        gamma = to_rational(cert.gamma)
        if gamma < 0:
            return False
        if cert.claim == IMDVP_YES and not (0 < gamma < norm(inv.c, inv.norm)):
            return False
        xbar = tuple(sum((w * p[i] for p, w in zip(pts, ws)), Fraction(0)) for i in range(n))
        cls = kstar_classify(xbar, ConeQuery(inv.c, inv.x0, gamma, inv.norm))
        if cert.claim == IMPVP_NO:
            return cls is ConeClass.INTERIOR
        return cls in (ConeClass.INTERIOR, ConeClass.BOUNDARY)
    except (TypeError, ValueError, ZeroDivisionError):
        return False

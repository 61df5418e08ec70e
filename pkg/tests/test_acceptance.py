"""Acceptance criteria 1-7, one PASS/FAIL line each.

The report lines are repeated in an "acceptance criteria" section at the
end of every pytest run that includes this module.
"""

import contextlib
import io
import json
import time
from fractions import Fraction as F

import pytest

import invmilp.bruteforce as bf
import invmilp.decision as dec
import invmilp.inverse as inverse_mod
import invmilp.lp as lp_mod
import invmilp.milp as milp_mod
from _corpus import corpus
from invmilp.bruteforce import brute_forward_opt, brute_inverse_opt, enumerate_region
from invmilp.cli import main as cli_main
from invmilp.decision import (
    IMDVP_YES,
    IMPVP_NO,
    Certificate,
    build_certificate,
    decide_imdvp,
    decide_imovp,
    decide_impvp,
    decide_mdvp,
    decide_mpvp,
    kstar_witness,
    reduce_mdvp_to_impvp,
    reduce_mpvp_to_imdvp,
    verify_certificate,
)
from invmilp.instance import InverseInstance
from invmilp.inverse import Cut, fenchel_separate, solve_inverse
from invmilp.milp import solve_milp
from invmilp.rational import Norm, dot, norm, sub

CORPUS_SIZE = 200
SEED = 20240917
NORMS = (Norm.LINF, Norm.L1)
TINY = F(1, 2**40)


def report(n, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} -- {detail}"
    print(line)
    _LINES.append(line)
    assert ok, line


_LINES = []


@pytest.fixture(scope="module")
def shared():
    """Corpus, regions and both-norm inverse solutions, computed once."""
    insts = corpus(CORPUS_SIZE, SEED)
    t = time.perf_counter()
    sols = {}
    for i, inv in enumerate(insts):
        for w in NORMS:
            sols[i, w] = solve_inverse(InverseInstance(inv.forward, inv.x0, inv.c, w))
    solve_time = time.perf_counter() - t
    return {"insts": insts, "sols": sols, "solve_time": solve_time}


def _with_norm(inv, w):
    return InverseInstance(inv.forward, inv.x0, inv.c, w)


def test_criterion_1_table_reproduction(tmp_path, desk_text, capsys):
    path = tmp_path / "desk.txt"
    path.write_text(desk_text)
    t = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["solve-inverse", "--instance", str(path)])
    elapsed = time.perf_counter() - t
    doc = json.loads(buf.getvalue())
    rows = doc["trace"]
    expected = [
        (["2", "-1"], ["3", "0"]),
        (["1/2", "1/2"], ["3", "1"]),
        (["2/5", "3/5"], ["3", "1"]),
    ]
    got = [(r["d_k"], r["x_k"]) for r in rows]
    ok = (code == 0 and got == expected and doc["outcome"]["theta_star"] == "8/5"
          and doc["outcome"]["status"] == "Converged" and elapsed < 1.0)
    report(1, "desk trace reproduction", ok,
           f"d^k={[r['d_k'] for r in rows]}, theta*={doc['outcome']['theta_star']}, "
           f"{elapsed * 1000:.1f} ms")


def test_criterion_2_oracle_equivalence(shared):
    t = time.perf_counter()
    bad = []
    for i, inv in enumerate(shared["insts"]):
        reg = enumerate_region(inv.forward)
        for w in NORMS:
            theta = shared["sols"][i, w].theta_star
            if theta != brute_inverse_opt(reg, inv.c, inv.x0, w)[0]:
                bad.append(("inverse", i, w.value))
        for d in (inv.c, inv.x0, tuple(-x for x in inv.c)):
            a, b = solve_milp(inv.forward, d), brute_forward_opt(reg, d)
            if (a.tag, a.value, a.argmax) != (b.tag, b.value, b.argmax):
                bad.append(("forward", i))
    elapsed = time.perf_counter() - t + shared["solve_time"]
    total = len(shared["insts"])
    ok = not bad and total >= 200 and elapsed < 60
    report(2, "oracle equivalence", ok,
           f"{total} instances x 2 norms, {len(bad)} disagreements, {elapsed:.1f} s")


def test_criterion_3_cone_characterisations(shared):
    bad, checks = [], 0
    for i, inv in enumerate(shared["insts"]):
        for w in NORMS:
            inv_w = _with_norm(inv, w)
            theta, cn = shared["sols"][i, w].theta_star, norm(inv.c, w)
            for g in sorted({F(0), theta / 2, theta, (theta + cn) / 2}):
                checks += 1
                if (kstar_witness(inv_w, g, IMPVP_NO) is not None) != (theta > g):
                    bad.append(("strict", i, w.value, g))
                if g > 0:
                    checks += 1
                    if (kstar_witness(inv_w, g, IMDVP_YES) is not None) != (theta >= g):
                        bad.append(("weak", i, w.value, g))
    report(3, "strict and weak dual-bound characterisations", not bad, f"{checks} checks, {len(bad)} disagreements {bad[:3]}")


def test_criterion_4_reduction_soundness(shared):
    bad, checks = [], 0
    for inv in shared["insts"]:
        S, c = inv.forward, inv.c
        mx = solve_milp(S, c).value
        for alpha in (mx - 1, mx, mx + TINY, mx + 1):
            art = reduce_mdvp_to_impvp(alpha, S, c)
            checks += 1
            if decide_mdvp(alpha, S, c) != decide_impvp(art.gamma_out, art.inverse_instance(S, c, inv.norm)):
                bad.append(("mdvp", alpha))
            art = reduce_mpvp_to_imdvp(alpha, S, c)
            checks += 1
            if decide_mpvp(alpha, S, c) != decide_imdvp(art.gamma_out, art.inverse_instance(S, c, inv.norm)):
                bad.append(("mpvp", alpha))
    report(4, "reduction soundness", not bad, f"{checks} reductions, {len(bad)} disagreements")


class _Counter:
    def __init__(self):
        self.calls = 0

    def wrap(self, fn):
        def inner(*a, **k):
            self.calls += 1
            return fn(*a, **k)
        return inner


def _outside_point(inv, p):
    # first coordinate pushed past both the box and the target
    hi = max(inv.forward.upper[0], inv.x0[0])
    return (F(int(hi) + 1),) + tuple(p[1:])


def test_criterion_5_certificates(shared, monkeypatch):
    counter = _Counter()
    targets = [
        (milp_mod, "solve_milp"), (dec, "solve_milp"), (inverse_mod, "solve_milp"),
        (lp_mod, "solve_lp"), (dec, "solve_lp"), (bf, "solve_lp"), (milp_mod, "solve_lp"),
        (dec, "solve_inverse"), (dec, "enumerate_region"), (dec, "kstar_witness"),
    ]
    built = verified = rejected = 0
    bad = []
    for i, inv in enumerate(shared["insts"]):
        for w in NORMS:
            inv_w = _with_norm(inv, w)
            theta, cn = shared["sols"][i, w].theta_star, norm(inv.c, w)
            for g in sorted({F(0), theta / 2}):
                if not g < theta:
                    continue
                cert = build_certificate(inv_w, g)
                if cert is None:
                    bad.append(("build", i, w.value, g))
                    continue
                built += 1
                muts = [
                    Certificate(cert.points, (cert.weights[0] + F(1, 7),) + cert.weights[1:],
                                cert.claim, cert.gamma),
                    Certificate((_outside_point(inv, cert.points[0]),) + cert.points[1:],
                                cert.weights, cert.claim, cert.gamma),
                    Certificate((inv.x0,), (F(1),), cert.claim, cert.gamma),
                ]
                if theta < cn:
                    muts.append(Certificate(cert.points, cert.weights, cert.claim, (theta + cn) / 2))
                with monkeypatch.context() as m:
                    for mod, name in targets:
                        m.setattr(mod, name, counter.wrap(getattr(mod, name)))
                    if verify_certificate(cert, inv_w):
                        verified += 1
                    else:
                        bad.append(("verify", i, w.value, g))
                    for k, mc in enumerate(muts):
                        if verify_certificate(mc, inv_w):
                            bad.append(("mutation", k, i, w.value, g))
                        else:
                            rejected += 1
    ok = not bad and counter.calls == 0 and built > 0
    report(5, "certificate round-trip", ok,
           f"{built} built, {verified} verified, {rejected} mutations rejected, "
           f"{counter.calls} optimiser calls during verification, {len(bad)} failures")


def test_criterion_6_monotonicity_and_validity(shared):
    bad, cuts = [], 0
    for i, inv in enumerate(shared["insts"]):
        reg = enumerate_region(inv.forward)
        for w in NORMS:
            sol = shared["sols"][i, w]
            thetas = [it.theta for it in sol.trace.iterations]
            if any(b < a for a, b in zip(thetas, thetas[1:])):
                bad.append(("monotone", i, w.value))
            if any(dot(sol.d_star, sub(x, inv.x0)) > 0 for x in reg.points):
                bad.append(("valid", i, w.value))
        res = fenchel_separate(inv.forward, inv.x0)
        if isinstance(res, Cut):
            cuts += 1
            if any(dot(res.d, x) > res.beta for x in reg.points) or not dot(res.d, inv.x0) > res.beta:
                bad.append(("cut", i))
        elif res.point != inv.x0:
            bad.append(("inhull", i))
    report(6, "monotonicity and validity", not bad,
           f"{2 * len(shared['insts'])} traces, {cuts} Fenchel cuts checked, {len(bad)} failures")


def test_criterion_7_imovp_composition(shared):
    bad, checks = [], 0
    for i, inv in enumerate(shared["insts"]):
        for w in NORMS:
            inv_w, sol = _with_norm(inv, w), shared["sols"][i, w]
            theta, cn = sol.theta_star, norm(inv.c, w)
            grid = {F(0), theta / 4, theta / 2, theta, theta + F(1, 1000), cn, (theta + cn) / 2,
                    max(F(0), theta - F(1, 1000)), cn + 1}
            for g in grid:
                checks += 1
                lhs = bool(decide_imovp(g, inv_w, sol))
                rhs = bool(decide_impvp(g, inv_w, sol)) and bool(decide_imdvp(g, inv_w, sol))
                if lhs != rhs or lhs != (g == theta):
                    bad.append((i, w.value, g))
    report(7, "IMOVP composition", not bad, f"{checks} grid points, {len(bad)} disagreements")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))

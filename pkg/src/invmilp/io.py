"""Text instance format, JSON results and certificate files.

Instance files are line oriented::

    # comment
    dim 2              # also accepted: dim n 2
    ints 2             # number of leading integer variables (default: all)
    row 1 1 <= 3       # also >= and =
    bound 1 0 3        # 1-based index, lo hi; "-inf" / "inf" for none
    estimate 2 -1
    target 0 3
    norm linf

Rationals are written ``p`` or ``p/q``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .errors import InvMilpError
from .instance import InverseInstance, MilpInstance
from .rational import RATIONAL_RE, Norm, format_rational, parse_rational


class ParseError(InvMilpError, ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg, self.line, self.col = msg, line, col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + msg)


@dataclass(frozen=True)
class InstanceDoc:
    forward: MilpInstance
    c: Optional[Tuple[Fraction, ...]]
    x0: Optional[Tuple[Fraction, ...]]
    norm: Norm

    def inverse(self) -> InverseInstance:
        if self.x0 is None:
            raise ParseError("target required for inverse commands")
        if self.c is None:
            raise ParseError("estimate required for inverse commands")
        return InverseInstance(self.forward, self.x0, self.c, self.norm)


_INF = {"inf": None, "+inf": None, "-inf": None, "none": None}


def _tokens(line: str):
    """(token, 1-based column) pairs, stopping at '#'."""
    out, i = [], 0
    while i < len(line):
        if line[i] == "#":
            break
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace() and line[j] != "#":
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _rat(tok, lineno, col):
    try:
        return parse_rational(tok)
    except (ValueError, ZeroDivisionError) as e:
        msg = "zero denominator" if "zero denominator" in str(e) else f"malformed rational {tok!r}"
        raise ParseError(msg, lineno, col) from None


def _int(tok, lineno, col, what):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno, col) from None
    if v < 0:
        raise ParseError(f"{what} must be nonnegative", lineno, col)
    return v


def parse_document(text: str) -> InstanceDoc:
    n = None
    r = None
    rows: List[Tuple[Tuple[Fraction, ...], Fraction]] = []
    bounds: Dict[int, Tuple[Optional[Fraction], Optional[Fraction]]] = {}
    c = x0 = None
    which = Norm.LINF

    def need_dim(lineno, col):
        if n is None:
            raise ParseError("'dim' must come before this line", lineno, col)

    def vector(toks, lineno, key):
        need_dim(lineno, toks[0][1])
        vals = toks[1:]
        if len(vals) != n:
            raise ParseError(f"'{key}' needs {n} entries, got {len(vals)}", lineno, toks[0][1])
        return tuple(_rat(t, lineno, col) for t, col in vals)

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]
        if key == "dim":
            if args and args[0][0] == "n":
                args = args[1:]
            if len(args) != 1:
                raise ParseError("expected 'dim <int>'", lineno, kcol)
            if n is not None:
                raise ParseError("duplicate 'dim'", lineno, kcol)
            n = _int(args[0][0], lineno, args[0][1], "dim")
        elif key == "ints":
            if args and args[0][0] == "r":
                args = args[1:]
            if len(args) != 1:
                raise ParseError("expected 'ints <int>'", lineno, kcol)
            r = _int(args[0][0], lineno, args[0][1], "ints")
        elif key == "row":
            need_dim(lineno, kcol)
            rel_at = [i for i, (t, _) in enumerate(args) if t in ("<=", ">=", "=")]
            if len(rel_at) != 1:
                raise ParseError("row needs exactly one of <=, >=, =", lineno, kcol)
            k = rel_at[0]
            if k != n or len(args) != n + 2:
                raise ParseError(f"row needs {n} coefficients, a relation and a right-hand side",
                                 lineno, kcol)
            a = tuple(_rat(t, lineno, col) for t, col in args[:n])
            rel = args[n][0]
            b = _rat(args[n + 1][0], lineno, args[n + 1][1])
            if rel in ("<=", "="):
                rows.append((a, b))
            if rel in (">=", "="):
                rows.append((tuple(-x for x in a), -b))
        elif key == "bound":
            need_dim(lineno, kcol)
            if len(args) != 3:
                raise ParseError("expected 'bound <index> <lo> <hi>'", lineno, kcol)
            i = _int(args[0][0], lineno, args[0][1], "bound index")
            if not 1 <= i <= n:
                raise ParseError(f"bound index {i} out of range 1..{n}", lineno, args[0][1])
            lo_hi = []
            for t, col in args[1:]:
                lo_hi.append(None if t.lower() in _INF else _rat(t, lineno, col))
            bounds[i - 1] = (lo_hi[0], lo_hi[1])
        elif key == "estimate":
            c = vector(toks, lineno, key)
        elif key == "target":
            x0 = vector(toks, lineno, key)
        elif key == "norm":
            if len(args) != 1 or args[0][0] not in ("l1", "linf"):
                raise ParseError("expected 'norm l1' or 'norm linf'", lineno, kcol)
            which = Norm(args[0][0])
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, kcol)
    if n is None:
        raise ParseError("missing 'dim'")
    if r is None:
        r = n
    if r > n:
        raise ParseError(f"ints {r} exceeds dim {n}")
    lower = [bounds.get(i, (None, None))[0] for i in range(n)]
    upper = [bounds.get(i, (None, None))[1] for i in range(n)]
    try:
        fwd = MilpInstance(tuple(a for a, _ in rows), tuple(b for _, b in rows), r,
                           tuple(lower), tuple(upper))
    except ValueError as e:
        raise ParseError(str(e)) from None
    return InstanceDoc(fwd, c, x0, which)


def parse_instance(text: str) -> InverseInstance:
    return parse_document(text).inverse()


def format_instance(inst: MilpInstance, c=None, x0=None, which=None) -> str:
    f = format_rational
    lines = [f"dim {inst.n}", f"ints {inst.r}"]
    for a, b in zip(inst.A, inst.b):
        lines.append("row " + " ".join(f(x) for x in a) + " <= " + f(b))
    for i, (lo, hi) in enumerate(zip(inst.lower, inst.upper), start=1):
        if lo is not None or hi is not None:
            lo_s = "-inf" if lo is None else f(lo)
            hi_s = "inf" if hi is None else f(hi)
            lines.append(f"bound {i} {lo_s} {hi_s}")
    if c is not None:
        lines.append("estimate " + " ".join(f(x) for x in c))
    if x0 is not None:
        lines.append("target " + " ".join(f(x) for x in x0))
    if which is not None:
        lines.append(f"norm {Norm(which).value}")
    return "\n".join(lines) + "\n"


def format_inverse(inv: InverseInstance) -> str:
    return format_instance(inv.forward, inv.c, inv.x0, inv.norm)


# -- results ------------------------------------------------------------------

def _freeze(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, Fraction)):
        return v
    if isinstance(v, dict):
        return {str(k): _freeze(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return tuple(_freeze(x) for x in v)
    if hasattr(v, "value") and isinstance(v.value, str):  # enums
        return v.value
    raise TypeError(f"cannot serialise {type(v).__name__}")


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _thaw(v):
    if isinstance(v, str) and RATIONAL_RE.match(v):
        return parse_rational(v)
    if isinstance(v, dict):
        return {k: _thaw(x) for k, x in v.items()}
    if isinstance(v, list):
        return tuple(_thaw(x) for x in v)
    if isinstance(v, (bool, int)) or v is None:
        return v
    if isinstance(v, float):
        raise ValueError(f"bare JSON number {v!r}; rationals are encoded as strings")
    return v


@dataclass
class RunResult:
    command: str
    args: Dict[str, Any] = field(default_factory=dict)
    outcome: Dict[str, Any] = field(default_factory=dict)
    trace: Optional[Tuple[Dict[str, Any], ...]] = None

    def __post_init__(self):
        self.args = _freeze(self.args)
        self.outcome = _freeze(self.outcome)
        if self.trace is not None:
            self.trace = _freeze(tuple(self.trace))


def emit_result(r: RunResult) -> str:
    doc = {"command": r.command, "args": _jsonable(r.args), "outcome": _jsonable(r.outcome)}
    if r.trace is not None:
        doc["trace"] = _jsonable(r.trace)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_result(text: str) -> RunResult:
    doc = json.loads(text)
    trace = doc.get("trace")
    return RunResult(doc["command"], _thaw(doc.get("args", {})), _thaw(doc.get("outcome", {})),
                     None if trace is None else _thaw(trace))


def trace_rows(trace, c, which) -> Tuple[Dict[str, Any], ...]:
    """Iteration table: k, E_k, d^k, x^k and |c - d^k|."""
    from .rational import norm, sub

    rows = []
    for it in trace.iterations:
        rows.append({
            "k": it.k,
            "E_k": tuple(it.E),
            "d_k": it.d,
            "x_k": it.x,
            "theta_k": it.theta,
            "dist_c_d_k": norm(sub(c, it.d), which),
        })
    return tuple(rows)


def format_trace_table(rows) -> str:
    def vs(v):
        return "-" if v is None else "(" + ", ".join(format_rational(Fraction(x)) for x in v) + ")"

    head = ["k", "E_k", "d^k", "x^k", "|c - d^k|"]
    body = []
    for r in rows:
        E = "{" + ", ".join(vs(p) for p in r["E_k"]) + "}"
        body.append([str(r["k"]), E, vs(r["d_k"]), vs(r["x_k"]), format_rational(r["dist_c_d_k"])])
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    return "\n".join(fmt.format(*row).rstrip() for row in [head] + body) + "\n"


# -- certificates -------------------------------------------------------------

def certificate_to_json(cert) -> str:
    doc = {
        "claim": cert.claim,
        "gamma": format_rational(cert.gamma),
        "points": [[format_rational(x) for x in p] for p in cert.points],
        "weights": [format_rational(w) for w in cert.weights],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def certificate_from_json(text: str):
    from .decision import Certificate

    try:
        doc = json.loads(text)
        return Certificate(
            tuple(tuple(parse_rational(x) for x in p) for p in doc["points"]),
            tuple(parse_rational(w) for w in doc["weights"]),
            str(doc["claim"]),
            parse_rational(doc["gamma"]),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"malformed certificate: {e}") from None

"""A small term language over one analytic model.

Terms name the based/approximate operations at a chosen scale and can
take scale limits:

    Delta(0.1, (3,0), (1,0))        approximate difference of two arrows
    lim(eps -> 0, Delta(eps, (3,0), (1,0)))
    let(g, (3,0), d(g))             bind a name, take the arrow's norm
    circ(1/2, (0,0,0), (1,0,0))     based dilatation of a point

Numbers are exact rationals ("0.1" means 1/10, "3/4" is allowed).  A
tuple of scalars is a point of the model's dimension — except in the
one-dimensional Euclidean default, where a 2-tuple is an arrow written
(target, source).  A 2-tuple of points is an arrow.  Operations applied
to arrows act fiberwise; applied to points they act at the context's
base point (default: the group identity).

Errors carry 1-based line:column positions, both at parse time (unknown
name, wrong arity, malformed syntax) and at evaluation time (type
mismatches), so a caller can point at the offending spot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import emergent
from .limits import LimitEstimate, limit_of_values
from .scales import Scale, as_scale, dyadic_grid


class TermError(ValueError):
    """Positioned error in a term: parse- or type-level."""

    def __init__(self, message, line, col):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


# the operation table: name -> (min arity, max arity)
ARITY = {
    "delta": (2, 2),   # delta(s, a): dilate an arrow (or a point, at base)
    "dilat": (3, 3),   # dilat(s, base, a): dilate at an explicit base
    "Delta": (3, 3),   # Delta(s, a, b): approximate difference
    "Sigma": (3, 3),   # Sigma(s, a, b): approximate sum
    "inv": (2, 2),     # inv(s, a): approximate inverse
    "circ": (3, 3),    # circ(s, x, u): the based binary operation on points
    "d": (1, 2),       # d(a) arrow norm; d(a, b) distance
    "lim": (2, 2),     # lim(eps -> 0, term)
    "let": (3, 3),     # let(name, value, body)
}

# where each name lands in the library (arrow route, point route); the
# test suite walks this to keep the term language honest
COUNTERPARTS = {
    "delta": ("PairModel.delta", "PairModel.point_dilatation"),
    "dilat": ("emergent.arrow_dilatation", "PairModel.point_dilatation"),
    "Delta": ("emergent.Delta_eps", "emergent.Delta3"),
    "Sigma": ("emergent.Sigma_eps", "emergent.Sigma3"),
    "inv": ("emergent.inv_eps", "emergent.inv3"),
    "circ": ("emergent.circ", "emergent.circ"),
    "d": ("PairModel.norm / PairModel.dtilde", "PairModel.pdist"),
    "lim": ("limits.limit_of_values", "limits.limit_of_values"),
    "let": ("(binding form)", "(binding form)"),
}


# ---------------------------------------------------------------------------
# lexing


_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<arrow>->)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
      | (?P<lp>\()
      | (?P<rp>\))
      | (?P<comma>,)
      | (?P<minus>-)
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None:
            raise TermError(f"unexpected character {src[i]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            toks.append(Token(kind, text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        i = m.end()
    toks.append(Token("end", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# syntax trees


@dataclass
class Num:
    value: Fraction
    line: int
    col: int


@dataclass
class Var:
    name: str
    line: int
    col: int


@dataclass
class Tup:
    items: list
    line: int
    col: int


@dataclass
class Call:
    name: str
    args: list
    line: int
    col: int
    var: str = ""  # bound name, for lim/let


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, kind, what) -> Token:
        t = self.toks[self.i]
        if t.kind != kind:
            got = t.text or "end of input"
            raise TermError(f"expected {what}, found {got!r}", t.line, t.col)
        self.i += 1
        return t

    def parse(self):
        node = self.term()
        t = self.peek()
        if t.kind != "end":
            raise TermError(
                f"unexpected {t.text!r} after the end of the term",
                t.line, t.col,
            )
        return node

    def term(self):
        t = self.peek()
        if t.kind == "minus":
            self.i += 1
            inner = self.term()
            return Call("neg", [inner], t.line, t.col)
        if t.kind == "num":
            self.i += 1
            return Num(Fraction(t.text), t.line, t.col)
        if t.kind == "lp":
            return self.tuple_or_group()
        if t.kind == "name":
            self.i += 1
            if self.peek().kind == "lp":
                return self.call(t)
            return Var(t.text, t.line, t.col)
        got = t.text or "end of input"
        raise TermError(f"expected a term, found {got!r}", t.line, t.col)

    def tuple_or_group(self):
        lp = self.take("lp", "'('")
        items = [self.term()]
        while self.peek().kind == "comma":
            self.i += 1
            items.append(self.term())
        self.take("rp", "',' or ')'")
        if len(items) == 1:
            return items[0]  # just grouping
        return Tup(items, lp.line, lp.col)

    def call(self, name_tok: Token):
        name = name_tok.text
        if name not in ARITY:
            raise TermError(
                f"unknown operation {name!r} (have: "
                f"{', '.join(sorted(ARITY))})",
                name_tok.line, name_tok.col,
            )
        self.take("lp", "'('")
        node = Call(name, [], name_tok.line, name_tok.col)

        if name == "lim":
            v = self.take("name", "a scale variable (like eps)")
            self.take("arrow", "'->'")
            z = self.take("num", "the limit point 0")
            if Fraction(z.text) != 0:
                raise TermError(
                    "limits here go to 0 (scale limits only)", z.line, z.col
                )
            node.var = v.text
            self.take("comma", "','")
            node.args.append(self.term())
        elif name == "let":
            v = self.take("name", "a name to bind")
            node.var = v.text
            self.take("comma", "','")
            node.args.append(self.term())
            self.take("comma", "','")
            node.args.append(self.term())
        else:
            node.args.append(self.term())
            while self.peek().kind == "comma":
                self.i += 1
                node.args.append(self.term())

        t = self.peek()
        lo, hi = ARITY[name]
        have = len(node.args) + (1 if name in ("lim", "let") else 0)
        if t.kind == "rp" and have < lo:
            raise TermError(
                f"{name} takes {lo}{'' if lo == hi else f'..{hi}'} "
                f"arguments, got {have}",
                t.line, t.col,
            )
        if have > hi:
            a = node.args[hi - (1 if name in ("lim", "let") else 0)]
            raise TermError(
                f"{name} takes at most {hi} arguments", a.line, a.col
            )
        self.take("rp", "',' or ')'")
        return node


def parse(src: str):
    """Parse one term; raises TermError with a 1-based position."""
    return _Parser(tokenize(src)).parse()


def to_text(node) -> str:
    """Print a term back to source.  parse(to_text(parse(s))) is
    parse(s) up to positions."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Tup):
        return "(" + ", ".join(to_text(x) for x in node.items) + ")"
    if isinstance(node, Call):
        if node.name == "neg":
            return "-" + to_text(node.args[0])
        if node.name == "lim":
            return f"lim({node.var} -> 0, {to_text(node.args[0])})"
        if node.name == "let":
            return (f"let({node.var}, {to_text(node.args[0])}, "
                    f"{to_text(node.args[1])})")
        return node.name + "(" + ", ".join(
            to_text(a) for a in node.args
        ) + ")"
    raise TypeError(f"not a term node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class EvalContext:
    """Where a term is evaluated: the model, the base point for
    point-level operations, the scale grid for limits, and the
    environment of bound names."""

    model: object
    base: object = None
    eps_grid: list = None
    tol: float = 1e-8
    env: dict = field(default_factory=dict)
    estimates: list = field(default_factory=list)  # LimitEstimates from lim

    def __post_init__(self):
        if self.base is None:
            self.base = self.model.e()
        if self.eps_grid is None:
            # deep enough that an order-1 successive-difference trace
            # clears the default tolerance over its whole last quarter;
            # fine at the identity base, where the model operations only
            # make relative errors.  Pass a shallower grid for far-out
            # explicit bases.
            self.eps_grid = dyadic_grid(kmax=36)


def _kind(v) -> str:
    if isinstance(v, (Fraction, int, float)):
        return "scalar"
    v = np.asarray(v)
    if v.ndim == 1:
        return "point"
    if v.ndim == 2 and v.shape[0] == 2:
        return "arrow"
    return "other"


def _as_point(v, ctx, node):
    if _kind(v) == "scalar" and ctx.model.dim == 1:
        return np.array([float(v)])
    if _kind(v) == "point":
        p = np.asarray(v, dtype=float)
        if p.shape[-1] != ctx.model.dim:
            raise TermError(
                f"point has {p.shape[-1]} coordinates, model has "
                f"{ctx.model.dim}", node.line, node.col,
            )
        return p
    raise TermError(f"expected a point, got {_kind(v)}", node.line, node.col)


def _as_scale(v, node):
    if _kind(v) != "scalar":
        raise TermError(
            f"expected a scale (a nonzero rational), got {_kind(v)}",
            node.line, node.col,
        )
    try:
        return as_scale(v if isinstance(v, Fraction) else Fraction(v))
    except (ValueError, ZeroDivisionError) as e:
        raise TermError(str(e), node.line, node.col) from None


def evaluate(node, ctx: EvalContext):
    """Evaluate a term.  Returns a Fraction/float (scalar), a point
    array, or an arrow array.  lim(...) estimates are appended to
    ctx.estimates as a side record."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        if node.name in ctx.env:
            return ctx.env[node.name]
        if node.name == "e":
            return ctx.model.e()
        raise TermError(f"unbound name {node.name!r}", node.line, node.col)
    if isinstance(node, Tup):
        vals = [evaluate(x, ctx) for x in node.items]
        kinds = [_kind(v) for v in vals]
        if all(k == "scalar" for k in kinds):
            dim = ctx.model.dim
            if len(vals) == dim:
                return np.array([float(v) for v in vals])
            if len(vals) == 2 and dim == 1:
                # 1d special case: (target, source) is an arrow
                return ctx.model.arrow([float(vals[0])], [float(vals[1])])
            raise TermError(
                f"a {len(vals)}-tuple of scalars fits neither a point "
                f"(dim {dim}) nor a 1d arrow", node.line, node.col,
            )
        if len(vals) == 2 and all(k == "point" for k in kinds):
            return ctx.model.arrow(vals[0], vals[1])
        raise TermError(
            "tuples hold scalars (a point) or two points (an arrow)",
            node.line, node.col,
        )
    if isinstance(node, Call):
        return _apply(node, ctx)
    raise TypeError(f"not a term node: {node!r}")


def _apply(node: Call, ctx: EvalContext):
    name = node.name
    m = ctx.model

    if name == "neg":
        v = evaluate(node.args[0], ctx)
        return -v if _kind(v) == "scalar" else -np.asarray(v, dtype=float)

    if name == "let":
        bound = dict(ctx.env)
        bound[node.var] = evaluate(node.args[0], ctx)
        inner = EvalContext(m, ctx.base, ctx.eps_grid, ctx.tol, bound,
                            ctx.estimates)
        return evaluate(node.args[1], inner)

    if name == "lim":
        body = node.args[0]
        values, moduli = [], []
        for s in ctx.eps_grid:
            bound = dict(ctx.env)
            bound[node.var] = Fraction(s.modulus)
            inner = EvalContext(m, ctx.base, ctx.eps_grid, ctx.tol, bound,
                                ctx.estimates)
            v = evaluate(body, inner)
            values.append(float(v) if _kind(v) == "scalar" else
                          np.asarray(v, dtype=float))
            moduli.append(float(s.modulus))
        est = limit_of_values(
            f"lim {node.var}->0 of {to_text(body)}", moduli, values,
            tol=ctx.tol,
        )
        ctx.estimates.append(est)
        return est.value

    args = [evaluate(a, ctx) for a in node.args]

    if name == "d":
        if len(args) == 1:
            if _kind(args[0]) != "arrow":
                raise TermError(
                    "d(a) takes an arrow; for points use d(x, y)",
                    node.line, node.col,
                )
            return float(m.norm(args[0]))
        ka, kb = _kind(args[0]), _kind(args[1])
        if ka == "arrow" and kb == "arrow":
            return float(m.dtilde(args[0], args[1]))
        pa = _as_point(args[0], ctx, node.args[0])
        pb = _as_point(args[1], ctx, node.args[1])
        return float(m.pdist(pa, pb))

    if name == "delta":
        s = _as_scale(args[0], node.args[0])
        v = args[1]
        if _kind(v) == "arrow":
            return m.delta(s, v)
        return m.point_dilatation(s, ctx.base,
                                  _as_point(v, ctx, node.args[1]))

    if name == "dilat":
        s = _as_scale(args[0], node.args[0])
        b, v = args[1], args[2]
        if _kind(b) == "arrow" and _kind(v) == "arrow":
            return emergent.arrow_dilatation(m, s, b, v)
        return m.point_dilatation(
            s, _as_point(b, ctx, node.args[1]),
            _as_point(v, ctx, node.args[2]),
        )

    if name == "circ":
        s = _as_scale(args[0], node.args[0])
        return emergent.circ(
            m, s, _as_point(args[1], ctx, node.args[1]),
            _as_point(args[2], ctx, node.args[2]),
        )

    if name in ("Delta", "Sigma"):
        s = _as_scale(args[0], node.args[0])
        a, b = args[1], args[2]
        ka, kb = _kind(a), _kind(b)
        if ka == "arrow" and kb == "arrow":
            op = emergent.Delta_eps if name == "Delta" else emergent.Sigma_eps
            return op(m, s, a, b)
        if "arrow" in (ka, kb):
            raise TermError(
                f"{name} wants two arrows or two points, got {ka} and {kb}",
                node.line, node.col,
            )
        op = emergent.Delta3 if name == "Delta" else emergent.Sigma3
        return op(m, s, ctx.base,
                  _as_point(a, ctx, node.args[1]),
                  _as_point(b, ctx, node.args[2]))

    if name == "inv":
        s = _as_scale(args[0], node.args[0])
        v = args[1]
        if _kind(v) == "arrow":
            return emergent.inv_eps(m, s, v)
        return emergent.inv3(m, s, ctx.base,
                             _as_point(v, ctx, node.args[1]))

    raise TermError(f"unknown operation {name!r}", node.line, node.col)


def _fmt_float(x: float) -> str:
    out = f"{x:.12g}"
    return "0" if out in ("-0", "-0.0") else out


def format_value(v, model) -> str:
    """Render an evaluation result the way the examples in the docs are
    written: exact rationals as fractions, floats trimmed, 1d arrows as
    (target, source) scalars."""
    if isinstance(v, Fraction):
        return str(v)
    if _kind(v) == "scalar":
        return _fmt_float(float(v))
    a = np.asarray(v, dtype=float)
    if a.ndim == 1:
        if a.shape[0] == 1:
            return _fmt_float(a[0])
        return "(" + ", ".join(_fmt_float(x) for x in a) + ")"
    if a.ndim == 2 and a.shape[0] == 2:
        if a.shape[1] == 1:
            return f"({_fmt_float(a[0, 0])}, {_fmt_float(a[1, 0])})"
        t = format_value(a[0], model)
        s = format_value(a[1], model)
        return f"({t}, {s})"
    return repr(a)


def run(src: str, ctx: EvalContext):
    """parse + evaluate; returns (value, rendered string, estimates)."""
    node = parse(src)
    value = evaluate(node, ctx)
    return value, format_value(value, ctx.model), list(ctx.estimates)

"""Monadic first-order sentences with difference constraints over time points.

Besides the Boolean connectives and quantifiers, the only non-monadic
predicates are the difference atoms ``t1 <={d} t2`` meaning t1 - t2 <= d,
with d an integer or the unbounded bound ``w`` (always true).  Sentences are
evaluated in static-domain here-and-there interpretations whose domain is a
finite set of naturals containing 0.  Metric formulas translate into this
fragment structurally, one quantified variable per temporal operator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, count
from typing import Iterable

from . import syntax as mf
from .traces import TimedHTTrace


# --------------------------------------------------------------------------
# Terms and formulas

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Point:
    value: int

    def __str__(self) -> str:
        return str(self.value)


Term = Var | Point


class FOMFormula:
    __slots__ = ()

    def __str__(self) -> str:
        return format_fom(self)


@dataclass(frozen=True)
class Top(FOMFormula):
    pass


@dataclass(frozen=True)
class Bot(FOMFormula):
    pass


@dataclass(frozen=True)
class Pred(FOMFormula):
    name: str
    arg: Term


@dataclass(frozen=True)
class Diff(FOMFormula):
    """left - right <= delta; delta is an integer or None for the unbounded bound."""

    left: Term
    delta: int | None
    right: Term


@dataclass(frozen=True)
class And(FOMFormula):
    lhs: FOMFormula
    rhs: FOMFormula


@dataclass(frozen=True)
class Or(FOMFormula):
    lhs: FOMFormula
    rhs: FOMFormula


@dataclass(frozen=True)
class Implies(FOMFormula):
    lhs: FOMFormula
    rhs: FOMFormula


@dataclass(frozen=True)
class Forall(FOMFormula):
    var: Var
    body: FOMFormula


@dataclass(frozen=True)
class Exists(FOMFormula):
    var: Var
    body: FOMFormula


TOP = Top()
BOT = Bot()


def fneg(phi: FOMFormula) -> FOMFormula:
    return Implies(phi, BOT)


def conj(parts: Iterable[FOMFormula]) -> FOMFormula:
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# Comparison abbreviations.  le/lt/eq/ne expand into difference atoms; the
# strict bound lt_bound(t1, d, t2) renders "t1 - t2 < d" and is truth for the
# unbounded d, the one comparison the difference atoms cannot spell directly.

def le(a: Term, b: Term) -> FOMFormula:
    return Diff(a, 0, b)


def eq(a: Term, b: Term) -> FOMFormula:
    return And(le(a, b), le(b, a))


def ne(a: Term, b: Term) -> FOMFormula:
    return fneg(eq(a, b))


def lt(a: Term, b: Term) -> FOMFormula:
    return And(le(a, b), ne(a, b))


def lt_bound(a: Term, d: int | None, b: Term) -> FOMFormula:
    if d is None:
        return TOP
    return fneg(Diff(b, -d, a))


# --------------------------------------------------------------------------
# Translation of metric formulas

def translate(phi: mf.Formula, at: int | Term) -> FOMFormula:
    """Structural translation of phi anchored at the given time point.

    Every interval must be non-empty; run the empty-interval collapses of
    rewrite.unfold_next first if the input may contain them.  Each temporal
    operator introduces a fresh main variable y<k> and, where needed, an
    auxiliary z<k>.
    """
    x = Point(at) if isinstance(at, int) else at
    return _tr(phi, x, count())


def _bounds(iv: mf.Interval, x: Term, y: Term, future: bool) -> list[FOMFormula]:
    if iv.is_empty():
        raise ValueError(f"translation requires non-empty intervals, got {iv}")
    if future:
        return [Diff(x, -iv.lower, y), lt_bound(y, iv.upper, x)]
    return [lt_bound(x, iv.upper, y), Diff(y, -iv.lower, x)]


def _tr(phi: mf.Formula, x: Term, fresh) -> FOMFormula:
    if isinstance(phi, mf.Bottom):
        return BOT
    if isinstance(phi, mf.Atom):
        return Pred(phi.name, x)
    if isinstance(phi, (mf.And, mf.Or, mf.Implies)):
        cls = {mf.And: And, mf.Or: Or, mf.Implies: Implies}[type(phi)]
        return cls(_tr(phi.lhs, x, fresh), _tr(phi.rhs, x, fresh))

    k = next(fresh)
    y, z = Var(f"y{k}"), Var(f"z{k}")
    future = isinstance(phi, (mf.Next, mf.Until, mf.Release))

    if isinstance(phi, (mf.Next, mf.Prev)):
        adjacent = [lt(x, y), fneg(Exists(z, And(lt(x, z), lt(z, y))))] if future \
            else [lt(y, x), fneg(Exists(z, And(lt(y, z), lt(z, x))))]
        return Exists(y, conj(adjacent + _bounds(phi.interval, x, y, future)
                              + [_tr(phi.arg, y, fresh)]))
    if isinstance(phi, mf.Until):
        guard = [le(x, y)] + _bounds(phi.interval, x, y, True)
        chain = Forall(z, Implies(And(le(x, z), lt(z, y)), _tr(phi.lhs, z, fresh)))
        return Exists(y, conj(guard + [_tr(phi.rhs, y, fresh), chain]))
    if isinstance(phi, mf.Release):
        guard = [le(x, y)] + _bounds(phi.interval, x, y, True)
        escape = Exists(z, And(And(le(x, z), lt(z, y)), _tr(phi.lhs, z, fresh)))
        return Forall(y, Implies(conj(guard), Or(_tr(phi.rhs, y, fresh), escape)))
    if isinstance(phi, mf.Since):
        guard = [le(y, x)] + _bounds(phi.interval, x, y, False)
        chain = Forall(z, Implies(And(lt(y, z), le(z, x)), _tr(phi.lhs, z, fresh)))
        return Exists(y, conj(guard + [_tr(phi.rhs, y, fresh), chain]))
    if isinstance(phi, mf.Trigger):
        guard = [le(y, x)] + _bounds(phi.interval, x, y, False)
        escape = Exists(z, And(And(lt(y, z), le(z, x)), _tr(phi.lhs, z, fresh)))
        return Forall(y, Implies(conj(guard), Or(_tr(phi.rhs, y, fresh), escape)))
    raise TypeError(f"not a formula node: {phi!r}")


# --------------------------------------------------------------------------
# Simplification.  Sound on every interpretation (property-tested):
#   * unbounded difference atoms are truth,
#   * negated difference atoms flip: ~(t1 <={d} t2)  ==  t2 <={-d-1} t1,
#   * truth/falsum absorption in the connectives and under quantifiers,
#   * currying a -> (b -> c)  ==  a & b -> c,
#   * duplicate and subsumed difference conjuncts collapse.
# Bound variables are finally renamed x, y, z, x1, ... in traversal order.

def simplify_fom(phi: FOMFormula) -> FOMFormula:
    prev, cur = None, phi
    while cur != prev:
        prev, cur = cur, _simp(cur)
    return _rename(cur)


def _conjuncts(phi: FOMFormula) -> list[FOMFormula]:
    if isinstance(phi, And):
        return _conjuncts(phi.lhs) + _conjuncts(phi.rhs)
    return [phi]


def _simp(phi: FOMFormula) -> FOMFormula:
    if isinstance(phi, Diff):
        return TOP if phi.delta is None else phi
    if isinstance(phi, And):
        parts, diffs = [], {}
        for part in map(_simp, _conjuncts(phi)):
            if isinstance(part, Bot):
                return BOT
            if isinstance(part, Top) or part in parts:
                continue
            if isinstance(part, Diff):
                key = (part.left, part.right)
                if key in diffs:
                    old = diffs[key]
                    if part.delta < old.delta:
                        parts[parts.index(old)] = part
                        diffs[key] = part
                    continue
                diffs[key] = part
            parts.append(part)
        return conj(parts) if parts else TOP
    if isinstance(phi, Or):
        lhs, rhs = _simp(phi.lhs), _simp(phi.rhs)
        if isinstance(lhs, Top) or isinstance(rhs, Top):
            return TOP
        if isinstance(lhs, Bot):
            return rhs
        if isinstance(rhs, Bot):
            return lhs
        return Or(lhs, rhs)
    if isinstance(phi, Implies):
        lhs, rhs = _simp(phi.lhs), _simp(phi.rhs)
        if isinstance(rhs, Top) or isinstance(lhs, Bot):
            return TOP
        if isinstance(lhs, Top):
            return rhs
        if isinstance(lhs, Diff) and isinstance(rhs, Bot):
            return Diff(lhs.right, -lhs.delta - 1, lhs.left)
        if isinstance(rhs, Implies):
            return Implies(And(lhs, rhs.lhs), rhs.rhs)
        return Implies(lhs, rhs)
    if isinstance(phi, (Forall, Exists)):
        body = _simp(phi.body)
        if isinstance(body, (Top, Bot)):
            return body
        return type(phi)(phi.var, body)
    return phi


_NAME_CYCLE = ("x", "y", "z")


def _free_names(phi: FOMFormula, bound: frozenset[str] = frozenset()) -> set[str]:
    if isinstance(phi, Pred):
        return {phi.arg.name} - bound if isinstance(phi.arg, Var) else set()
    if isinstance(phi, Diff):
        return {t.name for t in (phi.left, phi.right) if isinstance(t, Var)} - bound
    if isinstance(phi, (And, Or, Implies)):
        return _free_names(phi.lhs, bound) | _free_names(phi.rhs, bound)
    if isinstance(phi, (Forall, Exists)):
        return _free_names(phi.body, bound | {phi.var.name})
    return set()


def _rename(phi: FOMFormula) -> FOMFormula:
    counter = count()
    taken = _free_names(phi)

    def fresh() -> Var:
        while True:
            i = next(counter)
            name = _NAME_CYCLE[i % 3] + ("" if i < 3 else str(i // 3))
            if name not in taken:
                return Var(name)

    def walk(node: FOMFormula, env: dict[Var, Var]) -> FOMFormula:
        if isinstance(node, (Top, Bot)):
            return node
        if isinstance(node, Pred):
            return Pred(node.name, env.get(node.arg, node.arg))
        if isinstance(node, Diff):
            return Diff(env.get(node.left, node.left), node.delta,
                        env.get(node.right, node.right))
        if isinstance(node, (And, Or, Implies)):
            return type(node)(walk(node.lhs, env), walk(node.rhs, env))
        new = fresh()
        return type(node)(new, walk(node.body, {**env, node.var: new}))

    return walk(phi, {})


# --------------------------------------------------------------------------
# Interpretations and satisfaction

@dataclass(frozen=True)
class QHTInterpretation:
    domain: tuple[int, ...]
    here: frozenset[tuple[str, int]]
    there: frozenset[tuple[str, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", tuple(sorted(set(self.domain))))
        object.__setattr__(self, "here", frozenset(self.here))
        object.__setattr__(self, "there", frozenset(self.there))
        if 0 not in self.domain:
            raise ValueError("the domain must contain 0")
        if not self.here <= self.there:
            raise ValueError("the here-atoms must be included in the there-atoms")
        for _, point in self.there:
            if point not in self.domain:
                raise ValueError(f"atom argument {point} lies outside the domain")

    def is_total(self) -> bool:
        return self.here == self.there


def induced_interpretation(trace: TimedHTTrace) -> QHTInterpretation:
    """Time points as domain, atoms stamped with their state's time."""
    if not trace.is_strict():
        raise ValueError("only strict traces induce interpretations")
    here = frozenset((p, t) for state, t in zip(trace.here, trace.times) for p in state)
    there = frozenset((p, t) for state, t in zip(trace.there, trace.times) for p in state)
    return QHTInterpretation(trace.times, here, there)


def qht_sat(interp: QHTInterpretation, phi: FOMFormula) -> bool:
    """Satisfaction in the here-world; implication consults both worlds."""
    return _ev(interp, phi, {}, here=True)


def _term(interp: QHTInterpretation, t: Term, env: dict[str, int]) -> int:
    value = env[t.name] if isinstance(t, Var) else t.value
    if value not in interp.domain:
        raise ValueError(f"time point {value} lies outside the domain")
    return value


def _ev(I: QHTInterpretation, phi: FOMFormula, env: dict[str, int], here: bool) -> bool:
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Pred):
        atom = (phi.name, _term(I, phi.arg, env))
        return atom in (I.here if here else I.there)
    if isinstance(phi, Diff):
        left, right = _term(I, phi.left, env), _term(I, phi.right, env)
        return True if phi.delta is None else left - right <= phi.delta
    if isinstance(phi, And):
        return _ev(I, phi.lhs, env, here) and _ev(I, phi.rhs, env, here)
    if isinstance(phi, Or):
        return _ev(I, phi.lhs, env, here) or _ev(I, phi.rhs, env, here)
    if isinstance(phi, Implies):
        ok = not _ev(I, phi.lhs, env, here) or _ev(I, phi.rhs, env, here)
        if not here:
            return ok
        return ok and (not _ev(I, phi.lhs, env, False) or _ev(I, phi.rhs, env, False))
    if isinstance(phi, Forall):
        return all(_ev(I, phi.body, {**env, phi.var.name: t}, here) for t in I.domain)
    if isinstance(phi, Exists):
        return any(_ev(I, phi.body, {**env, phi.var.name: t}, here) for t in I.domain)
    raise TypeError(f"not a FOM node: {phi!r}")


def first_smaller_model(domain: Iterable[int], there: Iterable[tuple[str, int]],
                        phi: FOMFormula, max_atoms: int = 20) -> frozenset | None:
    """The first proper subset of `there` still satisfying phi, if any.

    Subsets are scanned by ascending size, lexicographically within a size.
    """
    atoms = sorted(set(there))
    if len(atoms) > max_atoms:
        raise ValueError(f"subset search capped at {max_atoms} atoms, got {len(atoms)}")
    dom = tuple(domain)
    full = frozenset(atoms)
    for size in range(len(atoms)):
        for combo in combinations(atoms, size):
            candidate = QHTInterpretation(dom, frozenset(combo), full)
            if qht_sat(candidate, phi):
                return frozenset(combo)
    return None


def is_qel_model(domain: Iterable[int], there: Iterable[tuple[str, int]],
                 phi: FOMFormula, max_atoms: int = 20) -> bool:
    """Is <D,T,T> a model of phi with no strictly smaller here-world model?"""
    dom, full = tuple(domain), frozenset(there)
    total = QHTInterpretation(dom, full, full)
    if not qht_sat(total, phi):
        return False
    return first_smaller_model(dom, full, phi, max_atoms) is None


# --------------------------------------------------------------------------
# Text format:  !x / ?x quantifiers, p(t) atoms, t1 <={d} t2 difference
# atoms, & | -> connectives, #true / #false.  Precedence and associativity
# mirror the metric formula syntax; quantifier bodies are parenthesized
# unless atomic.

_PREC_ATOM, _PREC_QUANT, _PREC_AND, _PREC_OR, _PREC_IMPL = 5, 4, 3, 2, 1


def format_fom(phi: FOMFormula) -> str:
    return _fmt(phi)[0]


def _fmt(phi: FOMFormula) -> tuple[str, int]:
    if isinstance(phi, Top):
        return "#true", _PREC_ATOM
    if isinstance(phi, Bot):
        return "#false", _PREC_ATOM
    if isinstance(phi, Pred):
        return f"{phi.name}({phi.arg})", _PREC_ATOM
    if isinstance(phi, Diff):
        d = "w" if phi.delta is None else str(phi.delta)
        return f"{phi.left} <={{{d}}} {phi.right}", _PREC_ATOM
    if isinstance(phi, (Forall, Exists)):
        mark = "!" if isinstance(phi, Forall) else "?"
        body, p = _fmt(phi.body)
        return (f"{mark}{phi.var} {body}" if p >= _PREC_QUANT
                else f"{mark}{phi.var} ({body})"), _PREC_QUANT
    if isinstance(phi, And):
        return f"{_child(phi.lhs, _PREC_AND)} & {_child(phi.rhs, _PREC_QUANT)}", _PREC_AND
    if isinstance(phi, Or):
        return f"{_child(phi.lhs, _PREC_OR)} | {_child(phi.rhs, _PREC_QUANT)}", _PREC_OR
    if isinstance(phi, Implies):
        return f"{_child(phi.lhs, _PREC_OR)} -> {_child(phi.rhs, _PREC_IMPL)}", _PREC_IMPL
    raise TypeError(f"not a FOM node: {phi!r}")


def _child(phi: FOMFormula, min_prec: int) -> str:
    s, p = _fmt(phi)
    return s if p >= min_prec else f"({s})"


# --------------------------------------------------------------------------
# Parsing the text format back

class FOMParseError(ValueError):
    pass


_FOM_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<hash>\#(?:true|false))
      | (?P<diff><=\{(?:-?\d+|w)\})
      | (?P<arrow>->)
      | (?P<name>[A-Za-z][A-Za-z0-9_]*)
      | (?P<num>\d+)
      | (?P<punct>[()&|!?])
    """,
    re.VERBOSE,
)


def _fom_tokens(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    while pos < len(text):
        m = _FOM_TOKEN_RE.match(text, pos)
        if m is None:
            raise FOMParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group()))
        pos = m.end()
    out.append(("eof", ""))
    return out


class _FOMParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead=0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise FOMParseError(f"expected {kind}, found {tok[1]!r}")
        return tok

    def formula(self):
        lhs = self.disjunction()
        if self.peek()[0] == "arrow":
            self.next()
            return Implies(lhs, self.formula())
        return lhs

    def disjunction(self):
        lhs = self.conjunction()
        while self.peek()[1] == "|":
            self.next()
            lhs = Or(lhs, self.conjunction())
        return lhs

    def conjunction(self):
        lhs = self.unary()
        while self.peek()[1] == "&":
            self.next()
            lhs = And(lhs, self.unary())
        return lhs

    def term(self) -> Term:
        kind, text = self.next()
        if kind == "num":
            return Point(int(text))
        if kind == "name":
            return Var(text)
        raise FOMParseError(f"expected a term, found {text!r}")

    def close_paren(self):
        tok = self.next()
        if tok[1] != ")":
            raise FOMParseError(f"expected ')', found {tok[1]!r}")

    def unary(self):
        kind, text = self.peek()
        if text in ("!", "?"):
            self.next()
            var = Var(self.expect("name")[1])
            cls = Forall if text == "!" else Exists
            return cls(var, self.unary())
        if text == "(":
            self.next()
            phi = self.formula()
            self.close_paren()
            return phi
        if kind == "hash":
            self.next()
            return TOP if text == "#true" else BOT
        if kind == "name" and self.peek(1)[1] == "(":
            self.next()
            self.next()
            arg = self.term()
            self.close_paren()
            return Pred(text, arg)
        first = self.term()
        tok = self.next()
        if tok[0] != "diff":
            raise FOMParseError(f"expected a difference bound, found {tok[1]!r}")
        raw = tok[1][3:-1]
        delta = None if raw == "w" else int(raw)
        return Diff(first, delta, self.term())


def parse_fom(text: str) -> FOMFormula:
    parser = _FOMParser(_fom_tokens(text))
    phi = parser.formula()
    if parser.peek()[0] != "eof":
        raise FOMParseError(f"unexpected trailing input {parser.peek()[1]!r}")
    return phi


# Interpretation JSON: {"domain": [0, 5, 12], "here": ["red(0)"],
#                       "there": ["red(0)", "push(5)"]}
# "here" may be omitted when it equals "there".

_GROUND_ATOM_RE = re.compile(r"^([a-z][A-Za-z0-9_]*)\((\d+)\)$")


def _ground_atoms(entries: Iterable[str]) -> frozenset[tuple[str, int]]:
    out = set()
    for entry in entries:
        m = _GROUND_ATOM_RE.match(entry.strip())
        if m is None:
            raise ValueError(f"malformed ground atom {entry!r}")
        out.add((m.group(1), int(m.group(2))))
    return frozenset(out)


def interpretation_from_json(data: dict) -> QHTInterpretation:
    if not isinstance(data, dict) or "domain" not in data:
        raise ValueError("interpretation JSON must be an object with a 'domain' list")
    there = _ground_atoms(data.get("there", []))
    here = _ground_atoms(data["here"]) if "here" in data else there
    return QHTInterpretation(tuple(data["domain"]), here, there)


def interpretation_to_json(interp: QHTInterpretation) -> dict:
    data: dict = {"domain": list(interp.domain)}
    if not interp.is_total():
        data["here"] = sorted(f"{p}({t})" for p, t in interp.here)
    data["there"] = sorted(f"{p}({t})" for p, t in interp.there)
    return data

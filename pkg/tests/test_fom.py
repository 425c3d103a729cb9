import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from conftest import gen_formula, gen_interval, gen_trace
from metricht import fom
from metricht.fom import (
    Diff, Exists, Forall, Implies, Point, Pred, QHTInterpretation, Var,
    first_smaller_model, format_fom, induced_interpretation,
    interpretation_from_json, interpretation_to_json, is_qel_model, parse_fom,
    qht_sat, simplify_fom, translate,
)
from metricht.parser import parse_formula, parse_theory
from metricht.semantics import mht_sat, strictness_axiom
from metricht.equilibrium import is_equilibrium, enumerate_equilibrium
from metricht.traces import EnumerationBounds, make_trace, total_part, total_trace

PUSH_RULE = parse_formula("G (push -> F[1..15) G[0..30] green)")
PUSH_SENTENCE = ("!x (0 <={0} x & push(x) -> "
                 "?y (x <={-1} y & y <={14} x & "
                 "!z (y <={0} z & z <={30} y -> green(z))))")


# ------------------------------------------------------------------ translation

def test_translate_atom():
    assert translate(parse_formula("p"), 0) == Pred("p", Point(0))
    assert format_fom(translate(parse_formula("p"), 0)) == "p(0)"


def test_translate_eventually_raw_shape():
    raw = translate(parse_formula("F[1..15) green"), Var("x"))
    assert isinstance(raw, Exists)
    x, y = Var("x"), Var("y0")
    conjuncts = []
    node = raw.body
    while isinstance(node, fom.And):
        conjuncts.append(node.rhs)
        node = node.lhs
    conjuncts.append(node)
    conjuncts.reverse()
    assert conjuncts[0] == Diff(x, 0, y)
    assert conjuncts[1] == Diff(x, -1, y)
    assert conjuncts[2] == fom.fneg(Diff(x, -15, y))
    assert conjuncts[3] == Pred("green", y)
    assert isinstance(conjuncts[4], Forall)


def test_translate_rejects_empty_intervals():
    with pytest.raises(ValueError, match="non-empty"):
        translate(parse_formula("F[0..0) p"), 0)


def test_push_rule_translates_to_golden_sentence():
    simplified = simplify_fom(translate(PUSH_RULE, 0))
    assert format_fom(simplified) == PUSH_SENTENCE
    assert parse_fom(PUSH_SENTENCE) == simplified


# ------------------------------------------------------------------ simplification

def test_simplify_examples():
    top = fom.TOP
    assert simplify_fom(Diff(Var("x"), None, Var("y"))) == top
    assert simplify_fom(fom.And(Pred("p", Point(0)), top)) == Pred("p", Point(0))
    assert simplify_fom(Forall(Var("v"), Implies(Pred("p", Var("v")), top))) == top


def test_simplify_negated_difference_flip():
    flipped = simplify_fom(fom.fneg(Diff(Var("x"), -15, Var("y"))))
    assert flipped == Diff(Var("y"), 14, Var("x"))


def test_simplify_preserves_satisfaction():
    rng = random.Random(41)
    nonempty = lambda r: gen_interval(r, nonempty_only=True)
    for _ in range(500):
        trace = gen_trace(rng, strict=True)
        phi = gen_formula(rng, rng.randint(0, 3), interval=nonempty)
        interp = induced_interpretation(trace)
        sentence = translate(phi, trace.times[rng.randrange(trace.length)])
        assert qht_sat(interp, sentence) == qht_sat(interp, simplify_fom(sentence))


# ------------------------------------------------------------------ satisfaction

def test_qht_sat_difference_atoms():
    interp = QHTInterpretation((0, 4, 7), frozenset(), frozenset())
    assert qht_sat(interp, Diff(Point(4), 0, Point(4)))
    assert not qht_sat(interp, Diff(Point(7), -1, Point(4)))
    assert qht_sat(interp, Diff(Point(0), None, Point(7)))


def test_qht_sat_point_outside_domain():
    interp = QHTInterpretation((0,), frozenset(), frozenset())
    with pytest.raises(ValueError, match="outside"):
        qht_sat(interp, Pred("p", Point(3)))
    with pytest.raises(ValueError, match="outside"):
        qht_sat(interp, Diff(Point(0), 0, Point(9)))


def test_qht_sat_two_worlds():
    interp = QHTInterpretation((0,), frozenset(), frozenset([("p", 0)]))
    p0 = Pred("p", Point(0))
    assert not qht_sat(interp, p0)
    assert not qht_sat(interp, fom.fneg(p0))
    assert qht_sat(interp, fom.fneg(fom.fneg(p0)))


def test_difference_excluded_middle():
    rng = random.Random(42)
    for _ in range(300):
        domain = tuple(sorted({0} | {rng.randint(0, 9) for _ in range(3)}))
        atoms = frozenset(("p", d) for d in domain if rng.random() < 0.4)
        interp = QHTInterpretation(domain, atoms, atoms)
        delta = rng.choice([None, rng.randint(-5, 5)])
        d = Diff(Var("a"), delta, Var("b"))
        em = Forall(Var("a"), Forall(Var("b"), fom.Or(d, fom.fneg(d))))
        assert qht_sat(interp, em)


# ------------------------------------------------------------------ induced interpretations

def test_induced_interpretation_examples():
    t = total_trace([{"red"}, {"red"}], [0, 3])
    interp = induced_interpretation(t)
    assert interp.domain == (0, 3)
    assert interp.here == interp.there == frozenset([("red", 0), ("red", 3)])

    ht = make_trace([(set(), {"p"})], [0])
    interp = induced_interpretation(ht)
    assert interp.domain == (0,) and interp.here == frozenset() \
        and interp.there == frozenset([("p", 0)])

    member = total_trace([{"red"}, {"push", "red"}, {"green"}], [0, 5, 12])
    interp = induced_interpretation(member)
    assert interp.domain == (0, 5, 12)
    assert interp.there == frozenset(
        [("red", 0), ("push", 5), ("red", 5), ("green", 12)])


def test_induced_interpretation_requires_strict():
    with pytest.raises(ValueError, match="strict"):
        induced_interpretation(total_trace([set(), set()], [0, 0]))


# ------------------------------------------------------------------ model correspondence

def test_model_correspondence():
    rng = random.Random(43)
    nonempty = lambda r: gen_interval(r, nonempty_only=True, max_lo=3, max_width=3)
    for _ in range(600):
        trace = gen_trace(rng, strict=True)
        phi = gen_formula(rng, rng.randint(0, 3), interval=nonempty)
        k = rng.randrange(trace.length)
        sentence = translate(phi, trace.times[k])
        assert mht_sat(trace, k, phi) == qht_sat(induced_interpretation(trace), sentence)
        total = total_part(trace)
        assert mht_sat(total, k, phi) == qht_sat(induced_interpretation(total), sentence)


# ------------------------------------------------------------------ equilibrium over sentences

def test_is_qel_model_examples():
    assert is_qel_model((0,), [("p", 0)], Pred("p", Point(0)))
    assert not is_qel_model((0,), [("p", 0)], fom.TOP)
    assert first_smaller_model((0,), [("p", 0)], fom.TOP) == frozenset()


def test_is_qel_model_cap():
    atoms = [(f"a{i}", 0) for i in range(21)]
    with pytest.raises(ValueError, match="capped"):
        first_smaller_model((0,), atoms, fom.TOP, max_atoms=20)


def test_equilibrium_transfer_on_traffic_suite():
    theory = parse_theory(
        "G (red & green -> #false)\n"
        "G (~green -> red)\n"
        "G (push -> F[1..15) G[0..30] green)\n"
        "X[5] push\n")
    from metricht.syntax import Theory
    checked = list(theory.formulas) + [strictness_axiom()]
    sentence = fom.conj([translate(phi, 0) for phi in checked])
    bounds = EnumerationBounds(("green", "push", "red"), 3, 20, exact_len=True)
    models = enumerate_equilibrium(theory, bounds)
    assert len(models) == 14
    full = Theory(tuple(checked))
    for model in models:
        interp = induced_interpretation(model)
        assert is_qel_model(interp.domain, interp.there, sentence)
        assert is_equilibrium(model, full).is_equilibrium
    # a non-equilibrium model of the rules maps to a non-equilibrium interpretation
    lazy = total_trace([{"green"}], [0])
    rules = parse_theory("G (~green -> red)")
    interp = induced_interpretation(lazy)
    rule_sentence = fom.conj([translate(phi, 0) for phi in rules.formulas])
    assert not is_qel_model(interp.domain, interp.there, rule_sentence)


# ------------------------------------------------------------------ text formats

def test_fom_roundtrip_on_translations():
    rng = random.Random(44)
    nonempty = lambda r: gen_interval(r, nonempty_only=True)
    for _ in range(400):
        phi = gen_formula(rng, rng.randint(0, 3), interval=nonempty)
        sentence = translate(phi, 0)
        assert parse_fom(format_fom(sentence)) == sentence
        simplified = simplify_fom(sentence)
        assert parse_fom(format_fom(simplified)) == simplified


def test_fom_parse_errors():
    with pytest.raises(fom.FOMParseError):
        parse_fom("p(0")
    with pytest.raises(fom.FOMParseError):
        parse_fom("x <= y")
    with pytest.raises(fom.FOMParseError):
        parse_fom("p(0)) ")


def test_interpretation_json_roundtrip():
    interp = QHTInterpretation((0, 5, 12), frozenset([("red", 0)]),
                               frozenset([("red", 0), ("push", 5)]))
    data = interpretation_to_json(interp)
    assert data == {"domain": [0, 5, 12], "here": ["red(0)"],
                    "there": ["push(5)", "red(0)"]}
    assert interpretation_from_json(data) == interp
    total = QHTInterpretation((0,), frozenset([("p", 0)]), frozenset([("p", 0)]))
    assert "here" not in interpretation_to_json(total)
    assert interpretation_from_json(interpretation_to_json(total)) == total


def test_interpretation_json_errors():
    with pytest.raises(ValueError):
        interpretation_from_json({"domain": [1], "there": []})
    with pytest.raises(ValueError, match="malformed"):
        interpretation_from_json({"domain": [0], "there": ["Bad Atom"]})
    with pytest.raises(ValueError, match="outside"):
        interpretation_from_json({"domain": [0], "there": ["p(7)"]})


@settings(max_examples=200, deadline=None)
@given(st.integers(-8, 8), st.integers(0, 8), st.integers(0, 8))
def test_diff_atom_is_plain_arithmetic(delta, a, b):
    interp = QHTInterpretation((0, a, b), frozenset(), frozenset())
    assert qht_sat(interp, Diff(Point(a), delta, Point(b))) == (a - b <= delta)

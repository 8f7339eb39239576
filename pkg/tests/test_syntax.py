import pytest
from hypothesis import given

from strategies import formulas, sequents
from twoint.syntax import (PLUS, And, Atom, Bot, Coimp, Imp, Or, ParseError, Top, atoms,
                           depth, dualize_formula, dualize_sequent, parse_formula, parse_sequent,
                           print_formula, print_sequent, subformula_closure)

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize("text, expected", [
    ("p & q | r", Or(And(p, q), r)),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("p -< q -< r", Coimp(Coimp(p, q), r)),
    ("~p", Imp(p, Bot())),
    ("-p", Coimp(Top(), p)),
    ("~~p & q", And(Imp(Imp(p, Bot()), Bot()), q)),
    ("p &'' q", And(p, q, copy=2)),
    ("top'", Top(copy=1)),
    ("(p -> q) -< r", Coimp(Imp(p, q), r)),
    ("-p -< q", Coimp(Coimp(Top(), p), q)),
])
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", ["p -> q -< r", "p -< q -> r", "(p", "p)", "p &", "", "p'",
                                  "top q", "P", "p ; q"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_mixing_allowed_with_parens():
    assert parse_formula("p -> (q -< r)") == Imp(p, Coimp(q, r))


def test_keywords_are_not_atoms():
    assert parse_formula("top") == Top()
    assert parse_formula("topic") == Atom("topic")


def test_sequent_parse_and_print():
    s = parse_sequent("p & q, r ; =>+ p &' q")
    assert s.gamma == (And(p, q), r) and s.delta == () and s.mode is PLUS
    assert print_sequent(parse_sequent("; p =>- p")) == "; p =>- p"
    assert print_sequent(parse_sequent("p ; q =>- r"), "unicode") == "(p; q) ⊢⁻ r"
    assert print_sequent(parse_sequent(" ; =>+ top"), "unicode") == "(∅; ∅) ⊢⁺ ⊤"


@pytest.mark.parametrize("text", ["p =>+ p", "p ; q ; r =>+ p", "p ; =>+", "; =>* p",
                                  "p ;, =>+ p", "p ; =>+ p =>- q"])
def test_sequent_errors(text):
    with pytest.raises(ParseError):
        parse_sequent(text)


def test_multiset_equality():
    assert parse_sequent("p, q ; =>+ p") == parse_sequent("q, p ; =>+ p")
    assert parse_sequent("p, p ; =>+ p") != parse_sequent("p ; =>+ p")
    assert parse_sequent("p, p ; =>+ p").normalized() == parse_sequent("p ; =>+ p")


def test_sugar_printing():
    f = parse_formula("~p & -q")
    assert print_formula(f) == "(p -> bot) & (top -< q)"
    assert print_formula(f, sugar=True) == "~p & -q"
    assert print_formula(parse_formula("p -> q"), "unicode") == "p → q"
    assert print_formula(parse_formula("p -< q &' r"), "latex") == r"p \prec q \wedge' r"


def test_depth_convention():
    assert depth(p) == 1 and depth(Top()) == 1
    assert depth(parse_formula("(p & q) -> r")) == 3


@given(formulas(copies=2))
def test_roundtrip(f):
    assert parse_formula(print_formula(f)) == f
    assert parse_formula(print_formula(f, sugar=True)) == f


@given(sequents())
def test_sequent_roundtrip(s):
    assert parse_sequent(print_sequent(s)) == s


@given(formulas(copies=1))
def test_dualize_involution(f):
    assert dualize_formula(dualize_formula(f)) == f
    assert atoms(dualize_formula(f)) == atoms(f)


@given(sequents())
def test_dualize_sequent_involution(s):
    assert dualize_sequent(dualize_sequent(s)) == s


@given(formulas(), formulas())
def test_closure_idempotent_monotone(f, g):
    c = subformula_closure([f])
    assert subformula_closure(c) == c
    assert c <= subformula_closure([f, g])


@given(formulas())
def test_no_primitive_negations(f):
    text = print_formula(f)
    assert "~" not in text
    assert not any(tok == "-" for tok in text.split())


def test_worked_examples():
    assert parse_formula("~(p -> q)") == Imp(Imp(p, q), Bot())
    assert print_formula(Coimp(p, q, copy=1)) == "p -<' q"
    assert print_formula(Imp(p, Imp(q, r))) == "p -> q -> r"
    s = parse_sequent("p, p ; q =>+ p")
    assert s.gamma.count(p) == 2
    assert parse_sequent("; p & q =>- p &'' q").succedent == And(p, q, copy=2)
    assert subformula_closure([parse_formula("p -> (q -< r)")]) == {
        parse_formula("p -> (q -< r)"), p, Coimp(q, r), q, r}
    assert subformula_closure([]) == set()
    assert dualize_formula(parse_formula("p -> q")) == parse_formula("q -< p")
    assert dualize_formula(Top()) == Bot()


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_formula("p & & q")
    assert e.value.position == 4

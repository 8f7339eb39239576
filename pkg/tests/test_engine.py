import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import formulas, sequents
from twoint import ipc
from twoint.calculus import RuleId, instance
from twoint.engine import (BackwardProver, Derivation, DerivationError, DerivationFormatError,
                           Limits, ResourceLimitExceeded, Saturation, check, decide,
                           decide_backward, dumps, from_json, loads, render_latex, render_tree,
                           saturate_forward, to_json)
from twoint.signature import BASE
from twoint.syntax import (MINUS, PLUS, Sequent, coneg, dualize_sequent, make, neg,
                           parse_formula, parse_sequent)

f, s = parse_formula, parse_sequent
FULL = BASE.extend("and", "full")
DUAL_ONLY = BASE.extend("and", "full").extend("and", "dual-only")
PROOF_ONLY = BASE.extend("and", "proof-only")

# the AndLc derivation of ; p & q =>- p &'' q with And''R- branches over Rf-
PAPER_TREE = {
    "sequent": "; p & q =>- p &'' q", "rule": "AndLc", "principal": "p & q",
    "premises": [
        {"sequent": "; p =>- p &'' q", "rule": "And''R-1", "principal": "p &'' q",
         "premises": [{"sequent": "; p =>- p", "rule": "Rf-", "principal": None, "premises": []}]},
        {"sequent": "; q =>- p &'' q", "rule": "And''R-2", "principal": "p &'' q",
         "premises": [{"sequent": "; q =>- q", "rule": "Rf-", "principal": None, "premises": []}]},
    ],
}


@pytest.mark.parametrize("goal, sig, want", [
    ("p & q ; =>+ p &' q", FULL, True),
    ("p & q ; =>+ p &'' q", DUAL_ONLY, False),
    ("; =>+ ((p -> q) -> p) -> p", BASE, False),
    ("p ; q =>+ p -< q", BASE, True),
    ("; =>+ bot", BASE, False),
    ("p ; =>- p -> bot", BASE, True),
    ("; p & q =>- p &' q", PROOF_ONLY, False),
    ("p ; =>+ p & p", BASE, True),
    ("; =>- top", BASE, False),
    ("; =>+ ~~(p | ~p)", BASE, True),
    ("; =>+ p | ~p", BASE, False),
    ("; =>- p & -p", BASE, False),
])
@pytest.mark.parametrize("procedure", ["backward", "forward"])
def test_examples(goal, sig, want, procedure):
    res = decide(s(goal), sig, procedure=procedure, oracle=True)
    assert bool(res) is want
    if want:
        check(res.proof, sig)
        assert res.proof.conclusion == s(goal)


def test_check_examples():
    check(Derivation(s("p ; =>+ p"), instance(RuleId.RF_PLUS, f("p"))))
    check(from_json(PAPER_TREE), DUAL_ONLY)
    with pytest.raises(DerivationError) as e:
        check(Derivation(s("p ; =>+ q"), instance(RuleId.RF_PLUS, f("p"))))
    assert e.value.path == () and "axiom mismatch" in e.value.reason


def test_check_errors_point_at_node():
    bad = json.loads(json.dumps(PAPER_TREE))
    bad["premises"][1]["premises"][0]["rule"] = "Rf+"
    with pytest.raises(DerivationError) as e:
        check(from_json(bad))
    assert e.value.path == (1, 0) and "axiom mismatch" in e.value.reason
    bad["premises"][1]["premises"][0]["rule"] = "Rf-"
    bad["premises"][1]["premises"][0]["sequent"] = "; q =>- p"
    with pytest.raises(DerivationError) as e:
        check(from_json(bad))
    assert e.value.path == (1,)
    bad = json.loads(json.dumps(PAPER_TREE))
    bad["premises"][0]["sequent"] = "; p =>+ p &'' q"
    with pytest.raises(DerivationError, match="mode clash|premise"):
        check(from_json(bad))
    with pytest.raises(DerivationError, match="not available"):
        check(from_json(PAPER_TREE), PROOF_ONLY.extend("and", "proof-only"))
    with pytest.raises(DerivationError, match="unknown tag"):
        check(from_json(PAPER_TREE), BASE)


def test_check_multiplicity():
    # Rf+ may absorb extra context, but AndLa must consume exactly one occurrence
    d = Derivation(s("p & q ; =>+ p"), instance(RuleId.AND_LA, f("p & q"), PLUS),
                   (Derivation(s("p, q, p & q ; =>+ p"), instance(RuleId.RF_PLUS, f("p"))),))
    with pytest.raises(DerivationError, match="premise shape"):
        check(d)


def test_json_roundtrip_and_format_errors():
    d = decide(s("p & q ; =>+ p &' q"), FULL).proof
    assert loads(dumps(d)) == d
    assert to_json(loads(dumps(d))) == to_json(d)
    for broken in ["[]", "{}", '{"sequent": "p =>+", "rule": "Rf+"}',
                   '{"sequent": "p ; =>+ p", "rule": "Nope"}', "not json",
                   '{"sequent": "p & q ; =>+ p", "rule": "AndLa", "premises": []}']:
        with pytest.raises(DerivationFormatError):
            loads(broken)


def test_rendering():
    d = decide(s("p ; q =>+ p -< q")).proof
    tree = render_tree(d)
    assert tree.splitlines()[0] == "(p; q) ⊢⁺ p ≺ q   [CoimpR+]"
    assert "[Rf-]" in tree
    assert "|- " in render_tree(d, "ascii") or "`- " in render_tree(d, "ascii")
    tex = render_latex(d)
    assert tex.startswith(r"\begin{prooftree}") and r"\BinaryInfC" in tex
    assert render_latex(d) == tex


def test_limits():
    goal = s("; =>+ ((p -> q) -> p) -> p")
    with pytest.raises(ResourceLimitExceeded):
        decide_backward(goal, limits=Limits(max_sequents=3))
    with pytest.raises(ResourceLimitExceeded):
        saturate_forward(goal, limits=Limits(max_sequents=10))
    with pytest.raises(ResourceLimitExceeded):
        saturate_forward(goal, limits=Limits(max_universe=3))


def test_limits_from_env(monkeypatch):
    monkeypatch.setenv("TWOINT_MAX_SEQUENTS", "17")
    assert Limits.from_env().max_sequents == 17
    assert Limits.from_env(max_sequents=5).max_sequents == 5


def test_underivable_stats():
    res = saturate_forward(s("; =>+ p | ~p"))
    assert not res and res.stats.universe == 4 and res.stats.generated > 0


def test_shared_prover_tables():
    prover = BackwardProver()
    goals = [s("; =>+ (p -> q) -> (q -> r) -> p -> r"), s("; =>+ p -> q"), s("p, q ; =>+ p & q")]
    fresh = [bool(decide_backward(g)) for g in goals]
    assert [bool(prover.decide(g)) for g in goals] == fresh
    assert [bool(prover.decide(g)) for g in goals] == fresh


def test_saturation_reuse():
    seed = f("(p -> q) -< (p & r)")
    sat = Saturation([seed])
    sat.run()
    for text in ["p -> q, p ; p & r =>- (p -> q) -< (p & r)", "p -> q ; =>+ q"]:
        goal = s(text)
        assert (sat.find(goal) is not None) == bool(decide_backward(goal))


POOL = formulas(max_leaves=5)
SEQS = sequents(POOL)


@settings(max_examples=200, suppress_health_check=[HealthCheck.too_slow])
@given(SEQS)
def test_procedures_agree(goal):
    b, fw = decide_backward(goal), saturate_forward(goal)
    assert bool(b) == bool(fw)
    for r in (b, fw):
        if r:
            check(r.proof)
            assert r.proof.conclusion == goal


@settings(max_examples=150)
@given(SEQS)
def test_duality(goal):
    assert bool(decide(goal)) == bool(decide(dualize_sequent(goal)))


@settings(max_examples=100)
@given(SEQS, st.data())
def test_multiset_robustness(goal, data):
    v = bool(decide(goal))
    assert bool(decide(goal.normalized())) == v
    if goal.gamma:
        assert bool(decide(goal.add([data.draw(st.sampled_from(goal.gamma))]))) == v
    if goal.delta:
        assert bool(decide(goal.add((), [data.draw(st.sampled_from(goal.delta))]))) == v


@settings(max_examples=100)
@given(POOL, POOL)
def test_internalization(a, b):
    assert bool(decide(Sequent([a], [], PLUS, b))) == bool(decide(Sequent([], [], PLUS, make("imp", (a, b)))))
    assert bool(decide(Sequent([], [a], MINUS, b))) == bool(decide(Sequent([], [], MINUS, make("coimp", (b, a)))))


@settings(max_examples=100)
@given(SEQS)
def test_negation_toggles(goal):
    g, d, c = goal.gamma, goal.delta, goal.succedent
    assert bool(decide(Sequent(g, d, PLUS, c))) == bool(decide(Sequent(g, d, MINUS, neg(c))))
    assert bool(decide(Sequent(g, d, MINUS, c))) == bool(decide(Sequent(g, d, PLUS, coneg(c))))


@settings(max_examples=200)
@given(formulas(max_leaves=7, constants=False, connectives=("and", "or", "imp")) |
       formulas(max_leaves=6, connectives=("and", "or", "imp")).filter(lambda x: "top" not in x.text))
def test_conservativity(x):
    assert bool(decide(Sequent([], [], PLUS, x))) == ipc.provable(x)

"""Acceptance criteria 1 to 11, each at its stated tolerance and time budget.

Each test records a one-line verdict that is printed at the end of the run
(and by ``python3 tests/test_acceptance.py``).
"""
import itertools
import random
import time


from conftest import ACCEPTANCE
from twoint import ipc, nd
from twoint.calculus import DUAL_RULE, SCHEMA, RuleId, backward_expansions, dualize_rule, expected_premises
from twoint.engine import BackwardProver, Saturation, check, decide, decide_backward, saturate_forward
from twoint.sampling import (IPC_BINARY, enumerate_formulas, random_compound, random_formula,
                             random_sequent)
from twoint.signature import BASE
from twoint.structural import contract, cut_check, general_identity, weaken
from twoint.syntax import (MINUS, PLUS, Sequent, coneg, dualize_sequent, make, neg, parse_formula,
                           parse_sequent, subformula_closure)
from twoint.uniqueness import congruentiality_witness, definitional_sequents, uniqueness_report

# every Derivable verdict produced below, re-checked for criterion 10
PROOFS: list = []


def _decide(goal, sig=BASE, **kw):
    res = decide(goal, sig, **kw)
    if res:
        PROOFS.append((res.proof, sig))
    return res


def _record(n, ok, detail, start):
    ACCEPTANCE[n] = (ok, detail, time.perf_counter() - start)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def _pool(seed=7, n=400):
    rng = random.Random(seed)
    return sorted({random_formula(rng, 3) for _ in range(n)}, key=lambda f: f.text)


def _sequents(count=500, seed=11):
    rng = random.Random(seed)
    pool = _pool()
    return [random_sequent(rng, pool) for _ in range(count)]


def test_criterion_1_bilateral_uniqueness():
    start = time.perf_counter()
    rng = random.Random(1)
    pairs = [(random_compound(rng, 3), random_compound(rng, 3)) for _ in range(10)]
    total = ok = 0
    for conn in ("and", "or", "imp", "coimp", "top", "bot"):
        sig = BASE.extend(conn, "full")
        comps = [(parse_formula("p"), parse_formula("q"))]
        if conn not in ("top", "bot"):
            comps += pairs
        for a, b in comps:
            for goal in definitional_sequents(conn, 0, 1, a, b):
                total += 1
                ok += bool(_decide(goal, sig))
    elapsed = time.perf_counter() - start
    passed = ok == total and elapsed < 10
    _record(1, passed, f"{ok}/{total} definitional sequents derivable", start)
    assert passed


def test_criterion_2_overdetermination_pattern():
    start = time.perf_counter()
    want = [True] * 8 + [False] * 4
    results = {}
    for proc in ("backward", "forward"):
        report = uniqueness_report("and", "partial", procedure=proc)
        results[proc] = [e.derivable for e in report.entries]
        for e in report.entries:
            if e.derivable:
                PROOFS.append((e.decision.proof, report.signature))
    matches = sum(a == b for proc in results for a, b in zip(results[proc], want))
    passed = matches == 24 and time.perf_counter() - start < 5
    _record(2, passed, f"backward {sum(a == b for a, b in zip(results['backward'], want))}/12, "
                       f"forward {sum(a == b for a, b in zip(results['forward'], want))}/12", start)
    assert passed


def test_criterion_3_non_congruentiality():
    start = time.perf_counter()
    w = congruentiality_witness(oracle=True)
    d = w["derivable"]
    passed = d["plus_lr"] and d["plus_rl"] and bool(w["minus_failures"]) \
        and time.perf_counter() - start < 2
    detail = ", ".join(f"{w['sequents'][k]}: {'D' if v else 'U'}" for k, v in d.items())
    _record(3, passed, detail, start)
    assert passed, ("~(p->q) ; =>+ p & ~q is underivable: intuitionistically ~(p->q) does not "
                    "entail p, and the calculus is conservative over intuitionistic logic")


def test_criterion_4_internalization():
    start = time.perf_counter()
    rng = random.Random(4)
    kw = dict(atoms=("p", "q", "r"), constants=())
    agree = 0
    for _ in range(50):
        a, b = random_formula(rng, 3, **kw), random_formula(rng, 3, **kw)
        i1 = bool(_decide(Sequent([a], [], PLUS, b))) == bool(_decide(Sequent([], [], PLUS, make("imp", (a, b)))))
        i2 = bool(_decide(Sequent([], [a], MINUS, b))) == bool(_decide(Sequent([], [], MINUS, make("coimp", (b, a)))))
        agree += i1 and i2
    passed = agree == 50 and time.perf_counter() - start < 30
    _record(4, passed, f"{agree}/50 pairs agree on both equivalences", start)
    assert passed


def test_criterion_5_negation_toggles():
    start = time.perf_counter()
    agree = 0
    for s in _sequents(50, seed=5):
        g, d, c = s.gamma, s.delta, s.succedent
        t1 = bool(_decide(Sequent(g, d, PLUS, c))) == bool(_decide(Sequent(g, d, MINUS, neg(c))))
        t2 = bool(_decide(Sequent(g, d, MINUS, c))) == bool(_decide(Sequent(g, d, PLUS, coneg(c))))
        agree += t1 and t2
    passed = agree == 50
    _record(5, passed, f"{agree}/50 sequents agree on both toggles", start)
    assert passed


def test_criterion_6_conservativity():
    start = time.perf_counter()
    pool = enumerate_formulas(3, ("p", "q"), ("bot",), IPC_BINARY)
    agree = sum(bool(_decide(Sequent([], [], PLUS, f))) == ipc.provable(f) for f in pool)
    passed = agree == len(pool) and time.perf_counter() - start < 300
    _record(6, passed, f"{agree}/{len(pool)} formulas agree with the IPC oracle", start)
    assert passed


def test_criterion_7_cross_validation():
    start = time.perf_counter()
    seqs = _sequents()
    agree = 0
    for s in seqs:
        b, f = decide_backward(s), saturate_forward(s)
        agree += bool(b) == bool(f)
        for r in (b, f):
            if r:
                PROOFS.append((r.proof, BASE))
    seed = parse_formula("(p -> q) -< (p & r)")
    universe = sorted(subformula_closure([seed]), key=lambda f: f.text)
    sat = Saturation([seed])
    sat.run()
    prover = BackwardProver()
    n = ex_agree = 0
    subsets = [[u for i, u in enumerate(universe) if m >> i & 1] for m in range(1 << len(universe))]
    for g, d in itertools.product(subsets, subsets):
        for c in universe:
            for mode in (PLUS, MINUS):
                goal = Sequent(g, d, mode, c)
                n += 1
                ex_agree += bool(prover.decide(goal)) == (sat.find(goal) is not None)
    passed = agree == 500 and ex_agree == n and len(universe) == 6
    _record(7, passed, f"random {agree}/500, exhaustive |U|={len(universe)} {ex_agree}/{n}", start)
    assert passed


def test_criterion_8_duality():
    start = time.perf_counter()
    seqs = _sequents()
    agree = sum(bool(_decide(s)) == bool(_decide(dualize_sequent(s))) for s in seqs)
    # rule level: every instance arising from the pool dualizes to a partner instance
    rule_ok = all(DUAL_RULE[DUAL_RULE[r]] is r for r in RuleId) and set(DUAL_RULE) == set(RuleId)
    seen = set()
    frontier = list(seqs)
    for level in range(2):      # the goals and their premises, so axioms show up too
        nxt = []
        for s in frontier:
            for inst, prems in backward_expansions(s):
                d = dualize_rule(inst)
                seen.add(inst.rule)
                dual_prems = expected_premises(d, dualize_sequent(s))
                rule_ok &= sorted(map(str, dual_prems)) == sorted(str(dualize_sequent(p)) for p in prems)
                rule_ok &= SCHEMA[d.rule].connective == d.principal.kind
                nxt.extend(prems)
        frontier = nxt
    rule_ok &= seen == set(RuleId)
    passed = agree == 500 and rule_ok
    _record(8, passed, f"sequent level {agree}/500; rule level "
                       f"{'ok' if rule_ok else 'broken'} over {len(seen)}/24 schemas", start)
    assert passed


def test_criterion_9_structural_admissibility():
    start = time.perf_counter()
    rng = random.Random(9)
    pool = _pool(seed=9)
    small = [f for f in pool if f.text.count(" ") <= 4]
    weak_ok = weak_n = 0
    while weak_n < 200:
        s = random_sequent(rng, small)
        res = _decide(s)
        if not res:
            continue
        weak_n += 1
        try:
            check(weaken(res.proof, rng.choice(pool), rng.choice("GD")))
            weak_ok += 1
        except Exception:
            pass
    cut_ok = cut_n = 0
    attempts = 0
    while cut_n < 200 and attempts < 100_000:
        attempts += 1
        kind = "a" if cut_n % 2 == 0 else "c"
        d = rng.choice(small)
        left_ctx = random_sequent(rng, small, 1)
        right = random_sequent(rng, small, 2)
        left = Sequent(left_ctx.gamma, left_ctx.delta, PLUS if kind == "a" else MINUS, d)
        right = right.add([d], []) if kind == "a" else right.add([], [d])
        if not (_decide(left) and _decide(right)):
            continue
        cut_n += 1
        cut_ok += bool(cut_check(left, right, kind))
    con_ok = con_n = 0
    while con_n < 200:
        s = random_sequent(rng, small, 2)
        if not (s.gamma or s.delta):
            continue
        side = "G" if s.gamma and (not s.delta or rng.random() < 0.5) else "D"
        dup = rng.choice(s.gamma if side == "G" else s.delta)
        doubled = s.add([dup], []) if side == "G" else s.add([], [dup])
        con_n += 1
        con_ok += bool(_decide(doubled)) == bool(_decide(contract(doubled, dup, side)))
    passed = (weak_ok, cut_ok, con_ok) == (200, 200, 200)
    _record(9, passed, f"weakening {weak_ok}/200, cut {cut_ok}/{cut_n}, contraction {con_ok}/200", start)
    assert passed


def test_criterion_10_identity_and_proofs():
    start = time.perf_counter()
    pool = enumerate_formulas(3, ("p", "q"), ("top", "bot"))
    ident_ok = 0
    for f in pool:
        for mode in (PLUS, MINUS):
            d = general_identity(f, mode)
            check(d)
            ident_ok += 1
    proofs_ok = 0
    for proof, sig in PROOFS:
        check(proof, sig)
        proofs_ok += 1
    passed = ident_ok == 2 * len(pool) and proofs_ok == len(PROOFS)
    _record(10, passed, f"identity {ident_ok}/{2 * len(pool)}; "
                        f"proofs from criteria 1-9 accepted {proofs_ok}/{len(PROOFS)}", start)
    assert passed


def test_criterion_11_nd_corpus():
    start = time.perf_counter()
    sig = nd.corpus_signature()
    ok = 0
    corpus = nd.load_corpus()
    for name, root in corpus.items():
        res = nd.nd_check(root, sig)
        expected = nd.CORPUS[name]
        ok += res.sequent() == parse_sequent(expected) and bool(_decide(res.sequent(), sig))
    sound = nd.local_soundness()
    passed = ok == len(corpus) == 4 and all(sound.values())
    _record(11, passed, f"{ok}/{len(corpus)} derivations check with the expected open pairs and "
                        f"decide derivable; rule table {sum(sound.values())}/{len(sound)} locally sound",
            start)
    assert passed


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass

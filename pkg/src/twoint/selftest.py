"""The bundled self-test corpus: worked examples plus small invariant sweeps."""
from __future__ import annotations

import random
import time
from typing import Callable

from . import ipc, nd
from .calculus import DUAL_RULE, RuleId
from .engine import check, decide, decide_backward, saturate_forward, weaken
from .sampling import IPC_BINARY, enumerate_formulas, random_formula, random_sequent
from .signature import BASE, Signature
from .structural import general_identity
from .syntax import (MINUS, PLUS, Sequent, coneg, dualize_sequent, make, neg, parse_formula,
                     parse_sequent, print_sequent)
from .uniqueness import congruentiality_witness, synonymy_spotcheck, uniqueness_report

FULL_AND = BASE.extend("and", "full")

# (sequent, signature, expected derivable)
EXAMPLES: list[tuple[str, Signature, bool]] = [
    ("p & q ; =>+ p &' q", FULL_AND, True),
    ("p & q ; =>+ p &'' q", BASE.extend("and", "full").extend("and", "dual-only"), False),
    ("; =>+ ((p -> q) -> p) -> p", BASE, False),
    ("; p & q =>- p &' q", BASE.extend("and", "proof-only"), False),
    ("p ; =>+ p & p", BASE, True),
    ("; =>- top", BASE, False),
    ("p ; q =>+ p -< q", BASE, True),
    ("; =>+ bot", BASE, False),
    ("p ; =>- p -> bot", BASE, True),
]


def _examples():
    for text, sig, want in EXAMPLES:
        goal = parse_sequent(text)
        got = decide(goal, sig, oracle=True)
        yield f"decide {text}", bool(got) == want, "derivable" if got else "underivable"


def _uniqueness():
    for conn in ("and", "or", "imp", "coimp", "top", "bot"):
        r = uniqueness_report(conn, oracle=True)
        yield f"unique {conn} (full copy)", r.unique, f"{r.counts()[0]}/4 derivable"
    want = [True] * 8 + [False] * 4
    for proc in ("backward", "forward"):
        r = uniqueness_report("and", "partial", procedure=proc)
        got = [e.derivable for e in r.entries]
        yield f"unique and --partial ({proc})", got == want, "%d derivable / %d underivable" % r.counts()


def _congruentiality():
    w = congruentiality_witness(oracle=True)
    ok = w["plus_interderivable"] and bool(w["minus_failures"])
    detail = ", ".join(f"{k}={'D' if v else 'U'}" for k, v in w["derivable"].items())
    yield "non-congruentiality witness", ok, detail


def _synonymy():
    f = parse_formula
    r = synonymy_spotcheck(f("p & q"), f("q & p"), ["r -> _", "_ -< r", "~_"])
    yield "synonymy p&q / q&p", r.holds, "bilateral and preserved in 3 templates (evidence, not a proof)"
    r = synonymy_spotcheck(f("~(p -> q)"), f("p & ~q"), ["r -> _"])
    yield "synonymy ~(p->q) / p&~q declines", not r.bilateral, "not bilaterally equivalent"


def _identity():
    for text in ("p", "p -< q", "(p -> q) & (q -< p)"):
        for mode in (PLUS, MINUS):
            d = general_identity(parse_formula(text), mode)
            check(d)
            ok = bool(decide(d.conclusion))
            yield f"identity {text} {mode.value}", ok, f"{d.size} nodes"


def _nd():
    sig = nd.corpus_signature()
    for name, node in nd.load_corpus().items():
        res = nd.nd_check(node, sig)
        want = parse_sequent(nd.CORPUS[name])
        ok = res.sequent() == want and bool(decide(want, sig))
        yield f"nd {name}", ok, print_sequent(res.sequent())
    sound = nd.local_soundness()
    yield "nd rule table local soundness", all(sound.values()), f"{sum(sound.values())}/{len(sound)}"


def _invariants(n: int):
    rng = random.Random(20240601)
    pool = sorted({random_formula(rng, 3) for _ in range(300)}, key=lambda f: f.text)
    seqs = [random_sequent(rng, pool) for _ in range(n)]
    agree = sum(bool(decide_backward(s)) == bool(saturate_forward(s)) for s in seqs)
    yield "backward/forward agreement", agree == n, f"{agree}/{n}"
    dual = sum(bool(decide(s)) == bool(decide(dualize_sequent(s))) for s in seqs)
    yield "sequent duality", dual == n, f"{dual}/{n}"
    ok = 0
    for s in seqs[: n // 2]:
        a, b = s.succedent, rng.choice(pool)
        i1 = bool(decide(Sequent([a], [], PLUS, b))) == bool(decide(Sequent([], [], PLUS, make("imp", (a, b)))))
        i2 = bool(decide(Sequent([], [a], MINUS, b))) == bool(decide(Sequent([], [], MINUS, make("coimp", (b, a)))))
        ok += i1 and i2
    yield "internalization", ok == n // 2, f"{ok}/{n // 2}"
    ok = 0
    for s in seqs[: n // 2]:
        c = s.succedent
        t = Sequent(s.gamma, s.delta, PLUS, c), Sequent(s.gamma, s.delta, MINUS, neg(c))
        u = Sequent(s.gamma, s.delta, MINUS, c), Sequent(s.gamma, s.delta, PLUS, coneg(c))
        ok += bool(decide(t[0])) == bool(decide(t[1])) and bool(decide(u[0])) == bool(decide(u[1]))
    yield "negation toggles", ok == n // 2, f"{ok}/{n // 2}"
    ipc_pool = enumerate_formulas(3, ("p", "q"), ("bot",), IPC_BINARY)
    sample = rng.sample(ipc_pool, min(len(ipc_pool), 4 * n))
    ok = sum(bool(decide(Sequent([], [], PLUS, f))) == ipc.provable(f) for f in sample)
    yield "conservativity over IPC", ok == len(sample), f"{ok}/{len(sample)}"
    dual_ok = all(DUAL_RULE[DUAL_RULE[r]] is r for r in RuleId)
    yield "rule dual bijection", dual_ok, f"{len(DUAL_RULE)} schemas"
    ok = 0
    derived = [s for s in seqs if decide(s)][:20]
    for s in derived:
        d = weaken(decide(s).proof, rng.choice(pool), rng.choice("GD"))
        ok += _valid(d)
    yield "weakening preserves checkability", ok == len(derived), f"{ok}/{len(derived)}"


def _valid(d) -> bool:
    try:
        check(d)
    except Exception:
        return False
    return True


SECTIONS: list[tuple[str, Callable]] = [
    ("worked examples", _examples),
    ("uniqueness", _uniqueness),
    ("congruentiality", _congruentiality),
    ("synonymy", _synonymy),
    ("identity", _identity),
    ("natural deduction", _nd),
]


def run(quick: bool = False, style: str = "unicode", out=print) -> bool:
    """Print a pass/fail table; True iff every check passed."""
    rows = []
    start = time.perf_counter()
    sections = SECTIONS + [("invariants", lambda: _invariants(40 if quick else 150))]
    for title, fn in sections:
        try:
            for name, ok, detail in fn():
                rows.append((title, name, ok, detail))
        except Exception as e:      # a crash is a failed check, not a crashed runner
            rows.append((title, f"{title} (crashed)", False, f"{type(e).__name__}: {e}"))
    width = max(len(r[1]) for r in rows)
    for title, name, ok, detail in rows:
        out(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}")
    failed = sum(not r[2] for r in rows)
    out(f"{len(rows) - failed}/{len(rows)} checks passed in {time.perf_counter() - start:.1f}s")
    return failed == 0

"""Goal-directed backward proof search with set contexts, loop checking and tabling.

Search states are set-normalized sequents.  A branch whose state repeats an
ancestor is cut off.  Successes are tabled unconditionally; a failure is
tabled only when none of the loop cut-offs below it pointed strictly above
it, since such a failure depends on the path that led there.
"""
from __future__ import annotations

import sys
from collections import Counter

from ..calculus import RuleId, RuleInstance, SCHEMA, _L_SCHEMAS, _R_SCHEMAS
from ..signature import BASE, Signature
from ..syntax import MINUS, PLUS, Atom, Formula, Mode, Sequent, size
from .decision import Derivable, Limits, ResourceLimitExceeded, Stats, Underivable
from .derivation import Derivation, weaken_many

INF = float("inf")
_Key = tuple  # (frozenset gamma, frozenset delta, Mode, Formula)


def _key(s: Sequent) -> _Key:
    return (frozenset(s.gamma), frozenset(s.delta), s.mode, s.succedent)


def _ordered(fs) -> list[Formula]:
    return sorted(fs, key=lambda f: (size(f), f.text))


class BackwardProver:
    """Backward search with a table that may be shared across goals.

    Sharing is sound: tabled successes carry complete proofs and tabled
    failures are path independent.  Not safe for concurrent writers.
    """

    def __init__(self, sig: Signature = BASE, limits: Limits | None = None):
        self.sig = sig
        self.limits = limits or Limits()
        self.proved: dict[_Key, Derivation] = {}
        self.failed: set[_Key] = set()
        self._path: dict[_Key, int] = {}
        self._budget = 0
        self.stats = Stats(procedure="backward")

    def decide(self, goal: Sequent):
        self.sig.validate(goal.formulas())
        self._budget = self.limits.max_sequents
        self.stats = Stats(procedure="backward")
        self._path = {}
        limit = max(sys.getrecursionlimit(), 50_000)
        sys.setrecursionlimit(limit)
        proof, _ = self._prove(_key(goal), 0)
        if proof is None:
            return Underivable(self.stats)
        extra_g = Counter(goal.gamma) - Counter(set(goal.gamma))
        extra_d = Counter(goal.delta) - Counter(set(goal.delta))
        proof = weaken_many(proof, extra_g.elements(), extra_d.elements())
        return Derivable(proof, self.stats)

    # -- search -----------------------------------------------------------

    def _prove(self, key: _Key, depth: int):
        hit = self.proved.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit, INF
        if key in self.failed:
            self.stats.memo_hits += 1
            return None, INF
        anc = self._path.get(key)
        if anc is not None:
            self.stats.loop_cutoffs += 1
            return None, anc
        self._budget -= 1
        if self._budget < 0:
            raise ResourceLimitExceeded(
                f"backward search exceeded {self.limits.max_sequents} sequents")
        self.stats.expanded += 1
        self._path[key] = depth
        low = INF
        try:
            for inst, prems in self._expansions(key):
                subproofs = []
                for pkey, extra_g, extra_d in prems:
                    proof, lo = self._prove(pkey, depth + 1)
                    if lo < low:
                        low = lo
                    if proof is None:
                        break
                    subproofs.append(weaken_many(proof, extra_g, extra_d))
                else:
                    gamma, delta, mode, succ = key
                    d = Derivation(Sequent.canonical(gamma, delta, mode, succ), inst,
                                   tuple(subproofs))
                    self.proved[key] = d
                    return d, INF
        finally:
            del self._path[key]
        if low >= depth:
            self.failed.add(key)
            return None, INF
        return None, low

    def _expansions(self, key: _Key):
        """Rule instances for a set sequent, with set-normalized premises and
        the duplicate occurrences each exact premise carries on top of them."""
        gamma, delta, mode, c = key
        sig = self.sig
        if isinstance(c, Atom):
            if mode is PLUS and c in gamma:
                yield RuleInstance(RuleId.RF_PLUS, c), ()
                return
            if mode is MINUS and c in delta:
                yield RuleInstance(RuleId.RF_MINUS, c), ()
                return
        else:
            for schema in _R_SCHEMAS.get((c.kind, mode.value), ()):
                if sig.allows(c.kind, c.copy, schema.group):
                    inst = RuleInstance(schema.rule, c, None, c.children)
                    yield inst, self._premises(inst, gamma, delta, mode, c)
        for f in _ordered(gamma | delta):
            if isinstance(f, Atom):
                continue
            for side, ctx in (("G", gamma), ("D", delta)):
                if f not in ctx:
                    continue
                for schema in _L_SCHEMAS.get((f.kind, side), ()):
                    if sig.allows(f.kind, f.copy, schema.group):
                        inst = RuleInstance(schema.rule, f, mode, f.children)
                        yield inst, self._premises(inst, gamma, delta, mode, c)

    @staticmethod
    def _premises(inst: RuleInstance, gamma, delta, mode: Mode, c: Formula):
        schema = SCHEMA[inst.rule]
        p = inst.principal
        if schema.side == "G":
            gamma = gamma - {p}
        elif schema.side == "D":
            delta = delta - {p}
        out = []
        for shape in schema.premises:
            add_g = [_ref(r, p, c) for r in shape.gamma]
            add_d = [_ref(r, p, c) for r in shape.delta]
            pmode = PLUS if shape.mode == "+" else MINUS if shape.mode == "-" else mode
            psucc = _ref(shape.succ, p, c)
            out.append((
                (gamma.union(add_g), delta.union(add_d), pmode, psucc),
                _extra(gamma, add_g), _extra(delta, add_d),
            ))
        return out


def _ref(r: str, p: Formula, c: Formula) -> Formula:
    if r == "A":
        return p.children[0]
    if r == "B":
        return p.children[1]
    if r == "P":
        return p
    return c


def _extra(base: frozenset, added: list) -> list:
    """Occurrences in ``base + added`` beyond the first of each formula."""
    out = []
    seen = set(base)
    for f in added:
        if f in seen:
            out.append(f)
        else:
            seen.add(f)
    return out


def decide_backward(goal: Sequent, sig: Signature = BASE, limits: Limits | None = None):
    return BackwardProver(sig, limits).decide(goal)

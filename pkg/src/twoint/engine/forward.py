"""Forward saturation (inverse method) over the subformula universe of a goal.

Facts are set-context sequents whose contexts are bitmasks over the universe
``U``.  Zero-premise rules seed the database with minimal contexts; the
remaining rules are applied forward, taking the union of side contexts when
two premises meet.  A fact ``s1`` subsumes ``s2`` when both have the same
mode and succedent and ``s1``'s contexts are subsets of ``s2``'s; subsumed
facts are discarded (forward) or retired (backward).

A non-retaining left rule only fires when its principal formula is absent
from the corresponding premise context, so every fact can be replayed as an
exact multiset derivation with weakening alone.
"""
from __future__ import annotations

from collections import Counter, deque

from ..calculus import RuleId, RuleInstance, SCHEMA, expected_premises
from ..signature import BASE, Signature
from ..syntax import MINUS, PLUS, Formula, Sequent, size, subformula_closure
from .decision import Derivable, Limits, ResourceLimitExceeded, Stats, Underivable
from .derivation import Derivation, weaken_many

_MODES = (PLUS, MINUS)


class Fact:
    __slots__ = ("g", "d", "mode", "c", "rule", "principal", "premises", "dead")

    def __init__(self, g: int, d: int, mode: int, c: int, rule: RuleId, principal: int,
                 premises: tuple = ()):
        self.g = g
        self.d = d
        self.mode = mode        # 0 = plus, 1 = minus
        self.c = c
        self.rule = rule
        self.principal = principal
        self.premises = premises
        self.dead = False

    def subsumes(self, g: int, d: int) -> bool:
        return not (self.g & ~g) and not (self.d & ~d)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Saturation:
    """The saturated fact database for one universe and signature."""

    def __init__(self, formulas, sig: Signature = BASE, limits: Limits | None = None):
        self.sig = sig
        self.limits = limits or Limits()
        universe = sorted(subformula_closure(formulas), key=lambda f: (size(f), f.text))
        sig.validate(universe)
        if len(universe) > self.limits.max_universe:
            raise ResourceLimitExceeded(
                f"subformula universe has {len(universe)} formulas "
                f"(limit {self.limits.max_universe})")
        self.universe: list[Formula] = universe
        self.index = {f: i for i, f in enumerate(universe)}
        n = len(universe)
        self.kind = [f.kind for f in universe]
        self.kids = [tuple(self.index[c] for c in f.children) for f in universe]
        self.groups = [sig.groups(f.kind, f.copy) if f.kind != "atom" else frozenset()
                       for f in universe]
        self.parents: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, ks in enumerate(self.kids):
            for pos, k in enumerate(ks):
                self.parents[k].append((i, pos))
        self.stats = Stats(procedure="forward", universe=n)
        self._all: dict[tuple[int, int], list[Fact]] = {}
        self._active: dict[tuple[int, int], list[Fact]] = {}
        self._member: dict[tuple[str, int], set[Fact]] = {}
        self._queue: deque[Fact] = deque()
        self._seeded = False
        self.saturated = False
        self._proofs: dict[int, Derivation] = {}

    # -- database ---------------------------------------------------------

    def _add(self, fact: Fact) -> bool:
        self.stats.generated += 1
        if self.stats.generated > self.limits.max_sequents:
            raise ResourceLimitExceeded(
                f"saturation exceeded {self.limits.max_sequents} generated sequents")
        bucket = self._all.setdefault((fact.mode, fact.c), [])
        g, d = fact.g, fact.d
        for other in bucket:
            if not (other.g & ~g) and not (other.d & ~d):
                self.stats.subsumed += 1
                return False
        keep = []
        for other in bucket:
            if not (g & ~other.g) and not (d & ~other.d):
                other.dead = True
                self.stats.subsumed += 1
                self._retire(other)
            else:
                keep.append(other)
        keep.append(fact)
        self._all[(fact.mode, fact.c)] = keep
        self._queue.append(fact)
        return True

    def _retire(self, fact: Fact) -> None:
        active = self._active.get((fact.mode, fact.c))
        if active and fact in active:
            active.remove(fact)
            for j in _bits(fact.g):
                self._member[("G", j)].discard(fact)
            for j in _bits(fact.d):
                self._member[("D", j)].discard(fact)

    def _activate(self, fact: Fact) -> None:
        self._active.setdefault((fact.mode, fact.c), []).append(fact)
        for j in _bits(fact.g):
            self._member.setdefault(("G", j), set()).add(fact)
        for j in _bits(fact.d):
            self._member.setdefault(("D", j), set()).add(fact)

    def find(self, goal: Sequent) -> Fact | None:
        """A live fact subsuming the set-normalized ``goal``, if any."""
        try:
            g = sum(1 << self.index[f] for f in set(goal.gamma))
            d = sum(1 << self.index[f] for f in set(goal.delta))
            c = self.index[goal.succedent]
        except KeyError:
            raise ValueError("goal mentions formulas outside the universe") from None
        mode = 0 if goal.mode is PLUS else 1
        for fact in self._all.get((mode, c), ()):
            if fact.subsumes(g, d):
                return fact
        return None

    # -- saturation loop --------------------------------------------------

    def run(self, goal: Sequent | None = None) -> Fact | None:
        """Saturate (stopping early once ``goal`` is subsumed)."""
        if not self._seeded:
            self._seed()
            self._seeded = True
        if goal is not None:
            hit = self.find(goal)
            if hit is not None:
                return hit
        while self._queue:
            fact = self._queue.popleft()
            if fact.dead:
                continue
            self._activate(fact)
            self._consequences(fact)
            if goal is not None:
                hit = self.find(goal)
                if hit is not None:
                    return hit
        self.saturated = True
        self.stats.kept = sum(len(b) for b in self._all.values())
        return self.find(goal) if goal is not None else None

    def _seed(self) -> None:
        n = len(self.universe)
        for i, f in enumerate(self.universe):
            bit = 1 << i
            if f.kind == "atom":
                self._add(Fact(bit, 0, 0, i, RuleId.RF_PLUS, i))
                self._add(Fact(0, bit, 1, i, RuleId.RF_MINUS, i))
            elif f.kind == "bot":
                if "R-" in self.groups[i]:
                    self._add(Fact(0, 0, 1, i, RuleId.BOT_R_MINUS, i))
                if "La" in self.groups[i]:
                    for c in range(n):
                        for m in (0, 1):
                            self._add(Fact(bit, 0, m, c, RuleId.BOT_LA, i))
            elif f.kind == "top":
                if "R+" in self.groups[i]:
                    self._add(Fact(0, 0, 0, i, RuleId.TOP_R_PLUS, i))
                if "Lc" in self.groups[i]:
                    for c in range(n):
                        for m in (0, 1):
                            self._add(Fact(0, bit, m, c, RuleId.TOP_LC, i))

    def _partners(self, mode: int, c: int) -> list[Fact]:
        return list(self._active.get((mode, c), ()))

    def _consequences(self, F: Fact) -> None:
        add = self._add
        kind, kids, groups = self.kind, self.kids, self.groups
        m, c, g, d = F.mode, F.c, F.g, F.d

        # right rules: F proves a component of the new succedent
        for P, pos in self.parents[c]:
            k = kind[P]
            grp = groups[P]
            A, B = kids[P]
            if k == "and":
                if m == 0 and "R+" in grp:
                    other = kids[P][1 - pos]
                    for Q in self._partners(0, other):
                        prem = (F, Q) if pos == 0 else (Q, F)
                        add(Fact(g | Q.g, d | Q.d, 0, P, RuleId.AND_R_PLUS, P, prem))
                if m == 1 and "R-" in grp:
                    rule = RuleId.AND_R_MINUS_1 if pos == 0 else RuleId.AND_R_MINUS_2
                    add(Fact(g, d, 1, P, rule, P, (F,)))
            elif k == "or":
                if m == 0 and "R+" in grp:
                    rule = RuleId.OR_R_PLUS_1 if pos == 0 else RuleId.OR_R_PLUS_2
                    add(Fact(g, d, 0, P, rule, P, (F,)))
                if m == 1 and "R-" in grp:
                    other = kids[P][1 - pos]
                    for Q in self._partners(1, other):
                        prem = (F, Q) if pos == 0 else (Q, F)
                        add(Fact(g | Q.g, d | Q.d, 1, P, RuleId.OR_R_MINUS, P, prem))
            elif k in ("imp", "coimp"):
                # ImpR- and CoimpR+ both take (+A, -B)
                rule2, grp2 = ((RuleId.IMP_R_MINUS, "R-") if k == "imp"
                               else (RuleId.COIMP_R_PLUS, "R+"))
                mode2 = 1 if k == "imp" else 0
                if grp2 in grp:
                    if pos == 0 and m == 0:
                        for Q in self._partners(1, B):
                            add(Fact(g | Q.g, d | Q.d, mode2, P, rule2, P, (F, Q)))
                    elif pos == 1 and m == 1:
                        for Q in self._partners(0, A):
                            add(Fact(g | Q.g, d | Q.d, mode2, P, rule2, P, (Q, F)))
                if k == "imp" and pos == 1 and m == 0 and "R+" in grp:
                    add(Fact(g & ~(1 << A), d, 0, P, RuleId.IMP_R_PLUS, P, (F,)))
                if k == "coimp" and pos == 0 and m == 1 and "R-" in grp:
                    add(Fact(g, d & ~(1 << B), 1, P, RuleId.COIMP_R_MINUS, P, (F,)))

        # left rules: F has an active formula in its context
        seen: set[tuple[RuleId, int]] = set()
        for side, mask in (("G", g), ("D", d)):
            for j in _bits(mask):
                for P, pos in self.parents[j]:
                    self._left(F, side, P, pos, seen)

        # ImpLa / CoimpLc with F as the first (retaining) premise
        for P, pos in self.parents[c]:
            k = kind[P]
            A, B = kids[P]
            bitP = 1 << P
            if k == "imp" and pos == 0 and m == 0 and "La" in groups[P]:
                for Q in list(self._member.get(("G", B), ())):
                    if Q.g & bitP:
                        continue
                    add(Fact((g & ~bitP) | (Q.g & ~(1 << B)) | bitP, d | Q.d, Q.mode, Q.c,
                             RuleId.IMP_LA, P, (F, Q)))
            if k == "coimp" and pos == 1 and m == 1 and "Lc" in groups[P]:
                for Q in list(self._member.get(("D", A), ())):
                    if Q.d & bitP:
                        continue
                    add(Fact(g | Q.g, (d & ~bitP) | (Q.d & ~(1 << A)) | bitP, Q.mode, Q.c,
                             RuleId.COIMP_LC, P, (F, Q)))

    def _left(self, F: Fact, side: str, P: int, pos: int, seen: set) -> None:
        k = self.kind[P]
        grp = self.groups[P]
        A, B = self.kids[P]
        bitA, bitB, bitP = 1 << A, 1 << B, 1 << P
        m, c, g, d = F.mode, F.c, F.g, F.d
        add = self._add
        if side == "G":
            if k == "and" and "La" in grp and not g & bitP and (RuleId.AND_LA, P) not in seen:
                seen.add((RuleId.AND_LA, P))
                add(Fact((g & ~bitA & ~bitB) | bitP, d, m, c, RuleId.AND_LA, P, (F,)))
            elif k == "or" and "La" in grp and not g & bitP:
                other = B if pos == 0 else A
                for Q in self._partners(m, c):
                    if not Q.g & (1 << other) or Q.g & bitP:
                        continue
                    prem = (F, Q) if pos == 0 else (Q, F)
                    add(Fact((prem[0].g & ~bitA) | (prem[1].g & ~bitB) | bitP,
                             prem[0].d | prem[1].d, m, c, RuleId.OR_LA, P, prem))
            elif k == "imp" and pos == 0 and "Lc" in grp and not d & bitP \
                    and (RuleId.IMP_LC, P) not in seen:
                seen.add((RuleId.IMP_LC, P))
                add(Fact(g & ~bitA, (d & ~bitB) | bitP, m, c, RuleId.IMP_LC, P, (F,)))
            elif k == "imp" and pos == 1 and "La" in grp and not g & bitP:
                for Q in self._partners(0, A):
                    add(Fact((Q.g & ~bitP) | (g & ~bitB) | bitP, Q.d | d, m, c,
                             RuleId.IMP_LA, P, (Q, F)))
            elif k == "coimp" and pos == 0 and "La" in grp and not g & bitP \
                    and (RuleId.COIMP_LA, P) not in seen:
                seen.add((RuleId.COIMP_LA, P))
                add(Fact((g & ~bitA) | bitP, d & ~bitB, m, c, RuleId.COIMP_LA, P, (F,)))
        else:
            if k == "or" and "Lc" in grp and not d & bitP and (RuleId.OR_LC, P) not in seen:
                seen.add((RuleId.OR_LC, P))
                add(Fact(g, (d & ~bitA & ~bitB) | bitP, m, c, RuleId.OR_LC, P, (F,)))
            elif k == "and" and "Lc" in grp and not d & bitP:
                other = B if pos == 0 else A
                for Q in self._partners(m, c):
                    if not Q.d & (1 << other) or Q.d & bitP:
                        continue
                    prem = (F, Q) if pos == 0 else (Q, F)
                    add(Fact(prem[0].g | prem[1].g,
                             (prem[0].d & ~bitA) | (prem[1].d & ~bitB) | bitP,
                             m, c, RuleId.AND_LC, P, prem))
            elif k == "imp" and pos == 1 and "Lc" in grp and not d & bitP \
                    and (RuleId.IMP_LC, P) not in seen:
                seen.add((RuleId.IMP_LC, P))
                add(Fact(g & ~bitA, (d & ~bitB) | bitP, m, c, RuleId.IMP_LC, P, (F,)))
            elif k == "coimp" and pos == 1 and "La" in grp and not g & bitP \
                    and (RuleId.COIMP_LA, P) not in seen:
                seen.add((RuleId.COIMP_LA, P))
                add(Fact((g & ~bitA) | bitP, d & ~bitB, m, c, RuleId.COIMP_LA, P, (F,)))
            elif k == "coimp" and pos == 0 and "Lc" in grp and not d & bitP:
                for Q in self._partners(1, B):
                    add(Fact(Q.g | g, (Q.d & ~bitP) | (d & ~bitA) | bitP, m, c,
                             RuleId.COIMP_LC, P, (Q, F)))

    # -- proof reconstruction ---------------------------------------------

    def sequent_of(self, fact: Fact) -> Sequent:
        u = self.universe
        return Sequent.canonical([u[j] for j in _bits(fact.g)], [u[j] for j in _bits(fact.d)],
                                 _MODES[fact.mode], u[fact.c])

    def proof(self, fact: Fact, goal: Sequent | None = None) -> Derivation:
        """A derivation of ``fact`` (weakened up to ``goal`` when given)."""
        d = self._build(fact)
        if goal is None:
            return d
        extra_g = Counter(goal.gamma) - Counter(d.conclusion.gamma)
        extra_d = Counter(goal.delta) - Counter(d.conclusion.delta)
        return weaken_many(d, extra_g.elements(), extra_d.elements())

    def _build(self, fact: Fact) -> Derivation:
        key = id(fact)
        hit = self._proofs.get(key)
        if hit is not None:
            return hit
        concl = self.sequent_of(fact)
        principal = self.universe[fact.principal]
        schema = SCHEMA[fact.rule]
        star = concl.mode if schema.mode == "*" else None
        inst = RuleInstance(fact.rule, principal, star, principal.children)
        subs = []
        for want, prem in zip(expected_premises(inst, concl), fact.premises):
            sub = self._build(prem)
            extra_g = Counter(want.gamma) - Counter(sub.conclusion.gamma)
            extra_d = Counter(want.delta) - Counter(sub.conclusion.delta)
            subs.append(weaken_many(sub, extra_g.elements(), extra_d.elements()))
        d = Derivation(concl, inst, tuple(subs))
        self._proofs[key] = d
        return d


def saturate_forward(goal: Sequent, sig: Signature = BASE, limits: Limits | None = None):
    sat = Saturation(goal.formulas(), sig, limits)
    fact = sat.run(goal)
    if fact is None:
        return Underivable(sat.stats)
    sat.stats.kept = sum(len(b) for b in sat._all.values())
    return Derivable(sat.proof(fact, goal), sat.stats)

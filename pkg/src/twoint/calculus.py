"""The SC2Int rule schemas as data, read bottom-up and top-down.

A schema describes its conclusion by the position of the principal formula
(``R``: the succedent, ``G``: the assumptions, ``D``: the counterassumptions)
and each premise by what it adds to the shared context.  Formula references
inside a schema are ``A``/``B`` (left/right component of the principal),
``P`` (the principal itself) and ``C`` (the conclusion's succedent); modes are
``+``, ``-`` or ``*`` (same as the conclusion).
"""
from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .signature import BASE, Signature
from .syntax import (MINUS, PLUS, Atom, Formula, Mode, Sequent, dualize_formula,
                     print_formula)


class RuleId(str, enum.Enum):
    RF_PLUS = "Rf+"
    RF_MINUS = "Rf-"
    BOT_R_MINUS = "BotR-"
    BOT_LA = "BotLa"
    TOP_R_PLUS = "TopR+"
    TOP_LC = "TopLc"
    AND_R_PLUS = "AndR+"
    AND_LA = "AndLa"
    AND_R_MINUS_1 = "AndR-1"
    AND_R_MINUS_2 = "AndR-2"
    AND_LC = "AndLc"
    OR_R_PLUS_1 = "OrR+1"
    OR_R_PLUS_2 = "OrR+2"
    OR_LA = "OrLa"
    OR_R_MINUS = "OrR-"
    OR_LC = "OrLc"
    IMP_R_PLUS = "ImpR+"
    IMP_LA = "ImpLa"
    IMP_R_MINUS = "ImpR-"
    IMP_LC = "ImpLc"
    COIMP_R_PLUS = "CoimpR+"
    COIMP_LA = "CoimpLa"
    COIMP_R_MINUS = "CoimpR-"
    COIMP_LC = "CoimpLc"

    def __str__(self) -> str:
        return self.value


class RuleMismatch(ValueError):
    """A rule instance does not fit the sequents it is applied to."""


@dataclass(frozen=True)
class PremiseShape:
    gamma: tuple[str, ...]
    delta: tuple[str, ...]
    mode: str
    succ: str


@dataclass(frozen=True)
class RuleSchema:
    rule: RuleId
    connective: str          # 'atom' for Rf+/Rf-
    group: str               # 'R+', 'R-', 'La', 'Lc'
    side: str                # 'R', 'G', 'D'
    mode: str                # '+', '-', '*'
    premises: tuple[PremiseShape, ...] = ()
    retains: int | None = None   # premise that keeps the principal formula

    @property
    def is_axiom(self) -> bool:
        return self.connective == "atom"


def _p(gamma="", delta="", mode="*", succ="C") -> PremiseShape:
    return PremiseShape(tuple(gamma), tuple(delta), mode, succ)


_R = RuleId
SCHEMAS: tuple[RuleSchema, ...] = (
    RuleSchema(_R.RF_PLUS, "atom", "R+", "R", "+"),
    RuleSchema(_R.RF_MINUS, "atom", "R-", "R", "-"),
    RuleSchema(_R.BOT_R_MINUS, "bot", "R-", "R", "-"),
    RuleSchema(_R.BOT_LA, "bot", "La", "G", "*"),
    RuleSchema(_R.TOP_R_PLUS, "top", "R+", "R", "+"),
    RuleSchema(_R.TOP_LC, "top", "Lc", "D", "*"),
    RuleSchema(_R.AND_R_PLUS, "and", "R+", "R", "+", (_p(mode="+", succ="A"), _p(mode="+", succ="B"))),
    RuleSchema(_R.AND_LA, "and", "La", "G", "*", (_p(gamma="AB"),)),
    RuleSchema(_R.AND_R_MINUS_1, "and", "R-", "R", "-", (_p(mode="-", succ="A"),)),
    RuleSchema(_R.AND_R_MINUS_2, "and", "R-", "R", "-", (_p(mode="-", succ="B"),)),
    RuleSchema(_R.AND_LC, "and", "Lc", "D", "*", (_p(delta="A"), _p(delta="B"))),
    RuleSchema(_R.OR_R_PLUS_1, "or", "R+", "R", "+", (_p(mode="+", succ="A"),)),
    RuleSchema(_R.OR_R_PLUS_2, "or", "R+", "R", "+", (_p(mode="+", succ="B"),)),
    RuleSchema(_R.OR_LA, "or", "La", "G", "*", (_p(gamma="A"), _p(gamma="B"))),
    RuleSchema(_R.OR_R_MINUS, "or", "R-", "R", "-", (_p(mode="-", succ="A"), _p(mode="-", succ="B"))),
    RuleSchema(_R.OR_LC, "or", "Lc", "D", "*", (_p(delta="AB"),)),
    RuleSchema(_R.IMP_R_PLUS, "imp", "R+", "R", "+", (_p(gamma="A", mode="+", succ="B"),)),
    RuleSchema(_R.IMP_LA, "imp", "La", "G", "*", (_p(gamma="P", mode="+", succ="A"), _p(gamma="B")),
               retains=0),
    RuleSchema(_R.IMP_R_MINUS, "imp", "R-", "R", "-", (_p(mode="+", succ="A"), _p(mode="-", succ="B"))),
    RuleSchema(_R.IMP_LC, "imp", "Lc", "D", "*", (_p(gamma="A", delta="B"),)),
    RuleSchema(_R.COIMP_R_PLUS, "coimp", "R+", "R", "+", (_p(mode="+", succ="A"), _p(mode="-", succ="B"))),
    RuleSchema(_R.COIMP_LA, "coimp", "La", "G", "*", (_p(gamma="A", delta="B"),)),
    RuleSchema(_R.COIMP_R_MINUS, "coimp", "R-", "R", "-", (_p(delta="B", mode="-", succ="A"),)),
    RuleSchema(_R.COIMP_LC, "coimp", "Lc", "D", "*", (_p(delta="P", mode="-", succ="B"), _p(delta="A")),
               retains=0),
)

SCHEMA: dict[RuleId, RuleSchema] = {s.rule: s for s in SCHEMAS}

DUAL_RULE: dict[RuleId, RuleId] = {}
for _a, _b in [
    (_R.RF_PLUS, _R.RF_MINUS), (_R.TOP_R_PLUS, _R.BOT_R_MINUS), (_R.BOT_LA, _R.TOP_LC),
    (_R.AND_R_PLUS, _R.OR_R_MINUS), (_R.AND_LA, _R.OR_LC),
    (_R.AND_R_MINUS_1, _R.OR_R_PLUS_1), (_R.AND_R_MINUS_2, _R.OR_R_PLUS_2),
    (_R.AND_LC, _R.OR_LA), (_R.IMP_R_PLUS, _R.COIMP_R_MINUS), (_R.IMP_LA, _R.COIMP_LC),
    (_R.IMP_R_MINUS, _R.COIMP_R_PLUS), (_R.IMP_LC, _R.COIMP_LA),
]:
    DUAL_RULE[_a] = _b
    DUAL_RULE[_b] = _a

_R_SCHEMAS: dict[tuple[str, str], list[RuleSchema]] = {}
_L_SCHEMAS: dict[tuple[str, str], list[RuleSchema]] = {}
for _s in SCHEMAS:
    if _s.is_axiom:
        continue
    if _s.side == "R":
        _R_SCHEMAS.setdefault((_s.connective, _s.mode), []).append(_s)
    else:
        _L_SCHEMAS.setdefault((_s.connective, _s.side), []).append(_s)

_LABEL = {"bot": "Bot", "top": "Top", "and": "And", "or": "Or", "imp": "Imp", "coimp": "Coimp"}


def rule_name(rule: RuleId, copy: int = 0) -> str:
    """ASCII name of a (possibly copied) rule, e.g. ``And''R-1``."""
    schema = SCHEMA[rule]
    if schema.is_axiom:
        return rule.value
    label = _LABEL[schema.connective]
    return label + "'" * copy + rule.value[len(label):]


_NAME_RE = re.compile(r"^(Bot|Top|And|Or|Imp|Coimp)('*)(.+)$")


def parse_rule_name(name: str) -> tuple[RuleId, int]:
    """Inverse of :func:`rule_name`."""
    if name in ("Rf+", "Rf-"):
        return RuleId(name), 0
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"unknown rule name {name!r}")
    try:
        rule = RuleId(m.group(1) + m.group(3))
    except ValueError:
        raise ValueError(f"unknown rule name {name!r}") from None
    return rule, len(m.group(2))


@dataclass(frozen=True)
class RuleInstance:
    """A schema instantiated at a principal formula (and mode, for ``*`` rules)."""

    rule: RuleId
    principal: Formula
    mode_star: Mode | None = None
    components: tuple[Formula, ...] = field(default=(), compare=False)

    @property
    def schema(self) -> RuleSchema:
        return SCHEMA[self.rule]

    @property
    def side(self) -> str:
        return self.schema.side

    @property
    def copy(self) -> int:
        return self.principal.copy

    @property
    def name(self) -> str:
        return rule_name(self.rule, self.copy)

    def __str__(self) -> str:
        return f"{self.name}[{print_formula(self.principal)}]"


def instance(rule: RuleId | str, principal: Formula, mode_star: Mode | None = None
             ) -> RuleInstance:
    """Build a rule instance, validating the principal's connective."""
    rule = RuleId(rule)
    schema = SCHEMA[rule]
    if schema.is_axiom:
        if not isinstance(principal, Atom):
            raise RuleMismatch(f"{rule.value} needs an atomic principal formula")
    elif principal.kind != schema.connective:
        raise RuleMismatch(f"{rule.value} cannot have principal formula {principal}")
    if schema.mode == "*":
        if mode_star is None:
            raise RuleMismatch(f"{rule.value} needs a mode instantiation")
    else:
        mode_star = None
    return RuleInstance(rule, principal, mode_star, principal.children)


def _resolve(ref: str, inst: RuleInstance, succ: Formula | None) -> Formula:
    if ref == "A":
        return inst.principal.children[0]
    if ref == "B":
        return inst.principal.children[1]
    if ref == "P":
        return inst.principal
    return succ


def _mode(m: str, star: Mode | None) -> Mode:
    if m == "+":
        return PLUS
    if m == "-":
        return MINUS
    return star


def _remove_one(ctx: tuple[Formula, ...], f: Formula) -> tuple[Formula, ...] | None:
    for i, g in enumerate(ctx):
        if g == f:
            return ctx[:i] + ctx[i + 1:]
    return None


def conclusion_mode(inst: RuleInstance) -> Mode:
    return _mode(inst.schema.mode, inst.mode_star)


def expected_premises(inst: RuleInstance, conclusion: Sequent) -> list[Sequent]:
    """Premises the schema demands for ``conclusion`` (read bottom-up).

    Raises :class:`RuleMismatch` when ``conclusion`` is not an instance of
    the rule's conclusion shape.
    """
    schema = inst.schema
    p = inst.principal
    if schema.is_axiom:
        ctx = conclusion.gamma if schema.rule is RuleId.RF_PLUS else conclusion.delta
        if conclusion.mode is not _mode(schema.mode, None):
            raise RuleMismatch("axiom mismatch: wrong mode")
        if conclusion.succedent != p or p not in ctx:
            raise RuleMismatch("axiom mismatch")
        return []
    if schema.mode == "*":
        if inst.mode_star is None or conclusion.mode is not inst.mode_star:
            raise RuleMismatch("mode clash")
    elif conclusion.mode is not _mode(schema.mode, None):
        raise RuleMismatch("mode clash")
    gamma, delta = conclusion.gamma, conclusion.delta
    if schema.side == "R":
        if conclusion.succedent != p:
            raise RuleMismatch("bad principal: succedent does not match")
    elif schema.side == "G":
        gamma = _remove_one(gamma, p)
        if gamma is None:
            raise RuleMismatch("bad principal: not among the assumptions")
    else:
        delta = _remove_one(delta, p)
        if delta is None:
            raise RuleMismatch("bad principal: not among the counterassumptions")
    out = []
    for shape in schema.premises:
        out.append(Sequent(
            gamma + tuple(_resolve(r, inst, None) for r in shape.gamma),
            delta + tuple(_resolve(r, inst, None) for r in shape.delta),
            _mode(shape.mode, inst.mode_star),
            _resolve(shape.succ, inst, conclusion.succedent)))
    return out


def _order_key(f: Formula):
    from .syntax import size
    return (size(f), f.text)


def backward_expansions(goal: Sequent, sig: Signature = BASE
                        ) -> list[tuple[RuleInstance, list[Sequent]]]:
    """Every rule instance whose conclusion is ``goal``, with its premises.

    R-rules come first, then L-rules on smaller principal formulas first.
    L-rules are enumerated once per distinct formula, not per occurrence.
    """
    sig.validate(goal.formulas())
    out: list[tuple[RuleInstance, list[Sequent]]] = []
    c = goal.succedent
    mode = goal.mode
    if isinstance(c, Atom):
        if mode is PLUS and c in goal.gamma:
            out.append((RuleInstance(RuleId.RF_PLUS, c), []))
        if mode is MINUS and c in goal.delta:
            out.append((RuleInstance(RuleId.RF_MINUS, c), []))
    else:
        for schema in _R_SCHEMAS.get((c.kind, mode.value), ()):
            if sig.allows(c.kind, c.copy, schema.group):
                inst = RuleInstance(schema.rule, c, None, c.children)
                out.append((inst, expected_premises(inst, goal)))
    lefts = []
    for side, ctx in (("G", goal.gamma), ("D", goal.delta)):
        for f in set(ctx):
            if isinstance(f, Atom):
                continue
            for schema in _L_SCHEMAS.get((f.kind, side), ()):
                if sig.allows(f.kind, f.copy, schema.group):
                    lefts.append((_order_key(f), side, schema.rule.value, f, schema))
    lefts.sort(key=lambda t: t[:3])
    for _, _, _, f, schema in lefts:
        inst = RuleInstance(schema.rule, f, mode, f.children)
        out.append((inst, expected_premises(inst, goal)))
    return out


def _subtract(ctx: Sequence[Formula], remove: Iterable[Formula], what: str) -> Counter:
    counts = Counter(ctx)
    for f in remove:
        if counts[f] <= 0:
            raise RuleMismatch(f"shape mismatch: premise lacks active formula {f} in {what}")
        counts[f] -= 1
    return +counts


def _expand(counts: Counter) -> tuple[Formula, ...]:
    return tuple(f for f in sorted(counts, key=lambda g: g.text) for _ in range(counts[f]))


def apply_forward(inst: RuleInstance, premises: Sequence[Sequent],
                  context: tuple[Iterable[Formula], Iterable[Formula]] | None = None,
                  mode: Mode | None = None, succedent: Formula | None = None) -> Sequent:
    """Conclusion of ``inst`` applied (top-down) to ``premises``.

    ``context`` is the schema's side context (Γ; Δ), excluding the principal
    formula; it is required for zero-premise rules and checked otherwise.
    ``mode`` and ``succedent`` instantiate ``*`` and ``C`` for BotLa/TopLc.
    """
    schema = inst.schema
    if len(premises) != len(schema.premises):
        raise RuleMismatch(f"shape mismatch: {inst.name} takes {len(schema.premises)} premises")
    star = inst.mode_star if schema.mode == "*" else None
    if schema.mode == "*":
        seen = {premises[i].mode for i, sh in enumerate(schema.premises) if sh.mode == "*"}
        if mode is not None:
            seen.add(mode)
        if star is not None:
            seen.add(star)
        if len(seen) > 1:
            raise RuleMismatch("mode clash: '*' instantiated inconsistently")
        if not seen:
            raise RuleMismatch("mode of '*' undetermined")
        star = seen.pop()
    concl_mode = _mode(schema.mode, star)
    base: tuple[Counter, Counter] | None = None
    for prem, shape in zip(premises, schema.premises):
        if prem.mode is not _mode(shape.mode, star):
            raise RuleMismatch("mode clash in premise")
        want = _resolve(shape.succ, inst, None)
        if want is not None and prem.succedent != want:
            raise RuleMismatch("shape mismatch: wrong premise succedent")
        g = _subtract(prem.gamma, [_resolve(r, inst, None) for r in shape.gamma], "assumptions")
        d = _subtract(prem.delta, [_resolve(r, inst, None) for r in shape.delta],
                      "counterassumptions")
        if base is None:
            base = (g, d)
        elif base != (g, d):
            raise RuleMismatch("shape mismatch: premises have different contexts")
    succ_ref = [p.succedent for p, sh in zip(premises, schema.premises) if sh.succ == "C"]
    if len(set(succ_ref)) > 1:
        raise RuleMismatch("shape mismatch: premises disagree on the succedent")
    if context is not None:
        cg, cd = Counter(context[0]), Counter(context[1])
        if base is not None and base != (cg, cd):
            raise RuleMismatch("shape mismatch: premises do not fit the given context")
        base = (cg, cd)
    if base is None:
        raise RuleMismatch(f"{inst.name} needs an explicit context")
    g, d = _expand(base[0]), _expand(base[1])
    p = inst.principal
    if schema.is_axiom:
        if schema.rule is RuleId.RF_PLUS:
            return Sequent(g + (p,), d, PLUS, p)
        return Sequent(g, d + (p,), MINUS, p)
    if schema.side == "R":
        return Sequent(g, d, concl_mode, p)
    if succ_ref:
        succ = succ_ref[0]
        if succedent is not None and succedent != succ:
            raise RuleMismatch("shape mismatch: premises disagree on the succedent")
    elif succedent is not None:
        succ = succedent
    else:
        raise RuleMismatch(f"{inst.name} needs a succedent")
    if schema.side == "G":
        return Sequent(g + (p,), d, concl_mode, succ)
    return Sequent(g, d + (p,), concl_mode, succ)


def dualize_rule(inst: RuleInstance) -> RuleInstance:
    """The partner instance under Γ/Δ swap, mode flip and formula dualization."""
    dp = dualize_formula(inst.principal)
    star = inst.mode_star.flip() if inst.mode_star is not None else None
    return RuleInstance(DUAL_RULE[inst.rule], dp, star, dp.children)

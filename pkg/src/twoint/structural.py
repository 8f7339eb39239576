"""Admissible structural rules as operations.

Weakening is a tree transformation.  Contraction and cut are checked by
re-deriving the conclusion, which tests admissibility without an
elimination procedure.  :func:`general_identity` builds ``A |- A`` for
arbitrary ``A`` from atomic axioms.
"""
from __future__ import annotations

from collections import Counter
from typing import Callable

from .calculus import RuleId as R, RuleInstance, SCHEMA, expected_premises
from .engine import Decision, Derivation, decide, weaken, weaken_many
from .signature import BASE, Signature
from .syntax import MINUS, PLUS, Formula, Mode, Sequent

__all__ = ["weaken", "contract", "contract_check", "cut_conclusion", "cut_check",
           "general_identity", "StructuralError"]


class StructuralError(ValueError):
    """Precondition of a structural check is not met."""


# -- contraction -------------------------------------------------------------

def contract(goal: Sequent, formula: Formula, side: str) -> Sequent:
    """Remove one occurrence of a duplicated ``formula`` from ``side`` ('G' or 'D')."""
    if side not in ("G", "D"):
        raise StructuralError("side must be 'G' or 'D'")
    ctx = list(goal.gamma if side == "G" else goal.delta)
    if ctx.count(formula) < 2:
        raise StructuralError(f"{formula} does not occur twice on side {side}")
    ctx.remove(formula)
    if side == "G":
        return Sequent(ctx, goal.delta, goal.mode, goal.succedent)
    return Sequent(goal.gamma, ctx, goal.mode, goal.succedent)


def contract_check(goal: Sequent, formula: Formula, side: str, sig: Signature = BASE,
                   **options) -> Decision:
    """Decide the contracted sequent (admissibility predicts the original's verdict)."""
    return decide(contract(goal, formula, side), sig, **options)


# -- cut ---------------------------------------------------------------------

def cut_conclusion(left: Sequent, right: Sequent, kind: str = "a") -> Sequent:
    """The conclusion of cut^a (``kind='a'``) or cut^c (``kind='c'``)."""
    cut = left.succedent
    if kind == "a":
        if left.mode is not PLUS:
            raise StructuralError("cut^a needs a left premise proving its cut formula")
        if cut not in right.gamma:
            raise StructuralError(f"cut formula {cut} is not an assumption of the right premise")
        rest = list(right.gamma)
        rest.remove(cut)
        return Sequent(left.gamma + tuple(rest), left.delta + right.delta, right.mode,
                       right.succedent)
    if kind == "c":
        if left.mode is not MINUS:
            raise StructuralError("cut^c needs a left premise dually proving its cut formula")
        if cut not in right.delta:
            raise StructuralError(
                f"cut formula {cut} is not a counterassumption of the right premise")
        rest = list(right.delta)
        rest.remove(cut)
        return Sequent(left.gamma + right.gamma, left.delta + tuple(rest), right.mode,
                       right.succedent)
    raise StructuralError("cut kind must be 'a' or 'c'")


def cut_check(left: Sequent, right: Sequent, kind: str = "a", sig: Signature = BASE,
              **options) -> Decision:
    """Decide the conclusion of a cut whose premises are both derivable."""
    concl = cut_conclusion(left, right, kind)
    for name, s in (("left", left), ("right", right)):
        if not decide(s, sig, **options):
            raise StructuralError(f"{name} premise {s} is not derivable")
    return decide(concl, sig, **options)


# -- identity ----------------------------------------------------------------

Solver = Callable[[Sequent], Derivation]


def _step(concl: Sequent, rule: R, principal: Formula, *solvers: Solver) -> Derivation:
    star = concl.mode if SCHEMA[rule].mode == "*" else None
    inst = RuleInstance(rule, principal, star, principal.children)
    prems = expected_premises(inst, concl)
    return Derivation(concl, inst, tuple(solve(p) for p, solve in zip(prems, solvers)))


def _ident(f: Formula, mode: Mode) -> Solver:
    """Solve a premise ``(.., f ..) |-mode f`` by a weakened identity on ``f``."""
    def solve(target: Sequent) -> Derivation:
        core = general_identity(f, mode)
        extra_g = Counter(target.gamma) - Counter(core.conclusion.gamma)
        extra_d = Counter(target.delta) - Counter(core.conclusion.delta)
        return weaken_many(core, extra_g.elements(), extra_d.elements())
    return solve


def _then(rule: R, principal: Formula, *solvers: Solver) -> Solver:
    return lambda target: _step(target, rule, principal, *solvers)


def general_identity(f: Formula, mode: Mode) -> Derivation:
    """A derivation of ``(f; ) |-+ f`` (mode PLUS) or ``(; f) |-- f`` (MINUS)."""
    plus = mode is PLUS
    concl = Sequent([f], [], PLUS, f) if plus else Sequent([], [f], MINUS, f)
    k = f.kind
    if k == "atom":
        rule = R.RF_PLUS if plus else R.RF_MINUS
        return Derivation(concl, RuleInstance(rule, f))
    if k == "top":
        return _step(concl, R.TOP_R_PLUS if plus else R.TOP_LC, f)
    if k == "bot":
        return _step(concl, R.BOT_LA if plus else R.BOT_R_MINUS, f)
    a, b = f.children
    if k == "and":
        if plus:
            return _step(concl, R.AND_LA, f, _then(R.AND_R_PLUS, f, _ident(a, PLUS), _ident(b, PLUS)))
        return _step(concl, R.AND_LC, f, _then(R.AND_R_MINUS_1, f, _ident(a, MINUS)),
                     _then(R.AND_R_MINUS_2, f, _ident(b, MINUS)))
    if k == "or":
        if plus:
            return _step(concl, R.OR_LA, f, _then(R.OR_R_PLUS_1, f, _ident(a, PLUS)),
                         _then(R.OR_R_PLUS_2, f, _ident(b, PLUS)))
        return _step(concl, R.OR_LC, f, _then(R.OR_R_MINUS, f, _ident(a, MINUS), _ident(b, MINUS)))
    if k == "imp":
        if plus:
            return _step(concl, R.IMP_R_PLUS, f,
                         _then(R.IMP_LA, f, _ident(a, PLUS), _ident(b, PLUS)))
        return _step(concl, R.IMP_LC, f, _then(R.IMP_R_MINUS, f, _ident(a, PLUS), _ident(b, MINUS)))
    if k == "coimp":
        if plus:
            return _step(concl, R.COIMP_LA, f,
                         _then(R.COIMP_R_PLUS, f, _ident(a, PLUS), _ident(b, MINUS)))
        return _step(concl, R.COIMP_R_MINUS, f,
                     _then(R.COIMP_LC, f, _ident(b, MINUS), _ident(a, MINUS)))
    raise ValueError(f"unknown formula kind {k!r}")

"""Bilateral uniqueness of connectives, partial duplication, and synonymy checks.

A connective ``#`` is unique when, for a copy ``#'`` governed by the same
rules, ``A # B`` and ``A #' B`` are interderivable under ``|-+`` and dually
interderivable under ``|--``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .engine import Decision, Limits, decide, render_latex, to_json
from .signature import BASE, Signature, Subset, connective_name, extend_signature
from .syntax import (HOLE, MINUS, PLUS, Atom, Formula, Sequent, make, neg, parse_formula,
                     print_sequent, substitute)

__all__ = ["extend_signature", "definitional_sequents", "uniqueness_report", "UniquenessReport",
           "Entry", "congruentiality_witness", "synonymy_spotcheck", "SynonymyReport"]

P, Q = Atom("p"), Atom("q")


@dataclass
class Entry:
    group: str          # 'definitional', 'same' or 'cross'
    sequent: Sequent
    decision: Decision

    @property
    def derivable(self) -> bool:
        return bool(self.decision)

    def to_json(self) -> dict:
        out = {"group": self.group, "sequent": print_sequent(self.sequent),
               "verdict": "derivable" if self.derivable else "underivable"}
        if self.derivable:
            out["proof"] = to_json(self.decision.proof)
        else:
            out["stats"] = self.decision.stats.as_dict()
        return out


@dataclass
class UniquenessReport:
    connective: str
    config: str
    signature: Signature
    components: tuple[Formula, Formula]
    entries: list[Entry] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return all(e.derivable for e in self.entries if e.group == "definitional")

    def counts(self) -> tuple[int, int]:
        yes = sum(e.derivable for e in self.entries)
        return yes, len(self.entries) - yes

    def to_json(self) -> dict:
        return {"connective": self.connective, "config": self.config,
                "signature": self.signature.describe(),
                "components": [c.text for c in self.components], "unique": self.unique,
                "entries": [e.to_json() for e in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def table(self, style: str = "unicode") -> str:
        rows = [(e.group, print_sequent(e.sequent, style),
                 "DERIVABLE" if e.derivable else "UNDERIVABLE") for e in self.entries]
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        lines = [f"{self.connective} ({self.config}; {self.signature.describe()})"]
        lines += [f"  {g:<{w0}}  {s:<{w1}}  {v}" for g, s, v in rows]
        yes, no = self.counts()
        lines.append(f"  {yes} derivable / {no} underivable; unique: {'yes' if self.unique else 'no'}")
        return "\n".join(lines)

    def latex(self) -> str:
        return "\n\n".join(f"% {print_sequent(e.sequent)}\n{render_latex(e.decision.proof)}"
                           for e in self.entries if e.derivable)


def _build(kind: str, copy: int, a: Formula, b: Formula) -> Formula:
    if kind in ("top", "bot"):
        return make(kind, (), copy)
    return make(kind, (a, b), copy)


def definitional_sequents(kind: str, c1: int, c2: int, a: Formula = P, b: Formula = Q
                          ) -> list[Sequent]:
    """The four sequents of the uniqueness definition for copies ``c1`` and ``c2``."""
    x, y = _build(kind, c1, a, b), _build(kind, c2, a, b)
    return [Sequent([x], [], PLUS, y), Sequent([y], [], PLUS, x),
            Sequent([], [x], MINUS, y), Sequent([], [y], MINUS, x)]


def uniqueness_report(connective: str, config: str = "full",
                      components: tuple[Formula, Formula] = (P, Q), *,
                      procedure: str = "backward", oracle: bool = False,
                      limits: Limits | None = None) -> UniquenessReport:
    """Decide the definitional sequents for ``connective`` against a copy.

    ``config='full'`` adds one full copy.  ``config='partial'`` adds a
    proof-only copy ``#'``, a dual-only copy ``#''`` and a full copy
    ``#'''``: the definitional four use the full copy, then the four
    same-relation sequents (``#'`` under ``|-+``, ``#''`` under ``|--``) and
    the four crossed ones follow.
    """
    kind = connective_name(connective)
    a, b = components
    opts = dict(procedure=procedure, oracle=oracle, limits=limits)
    if config == "full":
        sig = extend_signature(BASE, kind, Subset.FULL)
        full = 1
    elif config == "partial":
        sig = BASE.extend(kind, Subset.PROOF_ONLY).extend(kind, Subset.DUAL_ONLY) \
                  .extend(kind, Subset.FULL)
        full = 3
    else:
        raise ValueError("config must be 'full' or 'partial'")
    report = UniquenessReport(kind, config, sig, (a, b))
    for s in definitional_sequents(kind, 0, full, a, b):
        report.entries.append(Entry("definitional", s, decide(s, sig, **opts)))
    if config == "partial":
        base, pr, du = (_build(kind, c, a, b) for c in (0, 1, 2))
        same = [Sequent([base], [], PLUS, pr), Sequent([pr], [], PLUS, base),
                Sequent([], [base], MINUS, du), Sequent([], [du], MINUS, base)]
        cross = [Sequent([base], [], PLUS, du), Sequent([], [base], MINUS, pr),
                 Sequent([du], [], PLUS, base), Sequent([], [pr], MINUS, base)]
        for group, seqs in (("same", same), ("cross", cross)):
            for s in seqs:
                report.entries.append(Entry(group, s, decide(s, sig, **opts)))
    return report


def congruentiality_witness(*, oracle: bool = False) -> dict:
    """Compare ``~(p->q)`` with ``p & ~q`` under both consequence relations."""
    x = neg(make("imp", (P, Q)))
    y = make("and", (P, neg(Q)))
    rows = {
        "plus_lr": Sequent([x], [], PLUS, y), "plus_rl": Sequent([y], [], PLUS, x),
        "minus_lr": Sequent([], [x], MINUS, y), "minus_rl": Sequent([], [y], MINUS, x),
    }
    verdicts = {k: decide(s, oracle=oracle) for k, s in rows.items()}
    return {
        "sequents": {k: print_sequent(s) for k, s in rows.items()},
        "derivable": {k: bool(v) for k, v in verdicts.items()},
        "plus_interderivable": bool(verdicts["plus_lr"]) and bool(verdicts["plus_rl"]),
        "minus_failures": [k for k in ("minus_lr", "minus_rl") if not verdicts[k]],
    }


# -- synonymy ----------------------------------------------------------------

def _bilateral(a: Formula, b: Formula, sig: Signature, oracle: bool) -> dict[str, bool]:
    seqs = {"plus_lr": Sequent([a], [], PLUS, b), "plus_rl": Sequent([b], [], PLUS, a),
            "minus_lr": Sequent([], [a], MINUS, b), "minus_rl": Sequent([], [b], MINUS, a)}
    return {k: bool(decide(s, sig, oracle=oracle)) for k, s in seqs.items()}


def _holes(f: Formula) -> int:
    if isinstance(f, Atom):
        return int(f.name == HOLE)
    return sum(_holes(c) for c in f.children)


@dataclass
class SynonymyReport:
    a: Formula
    b: Formula
    equivalent: dict[str, bool]
    contexts: list[tuple[Formula, dict[str, bool]]]

    @property
    def bilateral(self) -> bool:
        return all(self.equivalent.values())

    @property
    def holds(self) -> bool:
        """Replaceability evidence: True when equivalence persists in every
        template (vacuously False when A and B are not bilaterally equivalent)."""
        return self.bilateral and all(all(v.values()) for _, v in self.contexts)

    def to_json(self) -> dict:
        return {"a": self.a.text, "b": self.b.text, "bilateral": self.bilateral,
                "equivalent": self.equivalent,
                "contexts": [{"template": t.text.replace(HOLE, "_"), "equivalent": v}
                             for t, v in self.contexts],
                "holds": self.holds, "note": "spot-check evidence, not a proof"}


def synonymy_spotcheck(a: Formula, b: Formula, templates: Sequence[Formula | str], *,
                       sig: Signature | None = None, oracle: bool = False) -> SynonymyReport:
    """Check bilateral equivalence of ``a`` and ``b`` and, if it holds, that
    it survives plugging both into each one-hole template (``_`` marks the hole)."""
    temps = [parse_formula(t, allow_hole=True) if isinstance(t, str) else t for t in templates]
    for t in temps:
        if _holes(t) != 1:
            raise ValueError(f"template {t.text} must contain exactly one hole")
    if sig is None:
        sig = Signature.covering([a, b, *temps])
    eq = _bilateral(a, b, sig, oracle)
    report = SynonymyReport(a, b, eq, [])
    if report.bilateral:
        for t in temps:
            report.contexts.append(
                (t, _bilateral(substitute(t, HOLE, a), substitute(t, HOLE, b), sig, oracle)))
    return report

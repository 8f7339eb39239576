"""Checker for N2Int natural deduction derivations.

Nodes carry a line type: ``proof`` (single line) or ``dual`` (double line).
Leaves are assumptions (proof line, open on the Γ side) or
counterassumptions (dual line, open on the Δ side).  Discharge is by label:
a rule node lists the labels it closes, and every leaf with that label in a
premise designated by the rule is removed from the open pair.  Leaves that
share a label form one assumption class and count once in the open pair;
unlabelled leaves count individually.

The rule table is data.  :func:`local_soundness` replays every rule against
the sequent engine by internalizing each premise as a hypothesis formula.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from .engine import decide
from .signature import BASE, Signature, UnknownTagError
from .syntax import (MINUS, PLUS, Atom, Bot, Formula, ParseError, Sequent, Top, coneg, make, neg,
                     parse_formula, print_formula)

PROOF, DUAL = "proof", "dual"
ASSUMPTION, COUNTER = "assumption", "counter"
LEAF_RULES = {"Assumption": PROOF, "Counterassumption": DUAL}


@dataclass(frozen=True)
class NdPremise:
    line: str                  # 'proof', 'dual' or '*' (same as the conclusion)
    ref: str                   # 'A', 'B', 'P' (principal) or 'C' (conclusion formula)
    discharge: tuple[tuple[str, str], ...] = ()   # (kind, ref)


@dataclass(frozen=True)
class NdRule:
    name: str
    connective: str
    line: str                  # conclusion line, '*' for either
    concl: str                 # conclusion ref
    premises: tuple[NdPremise, ...]

    @property
    def dual_rule(self) -> bool:
        return self.name.endswith(("Id", "Id1", "Id2", "Ed", "Ed1", "Ed2"))

    @property
    def major(self) -> int | None:
        """Index of the premise carrying the principal formula (elimination rules)."""
        for i, p in enumerate(self.premises):
            if p.ref == "P":
                return i
        return None


def _r(name, conn, line, concl, *prems) -> NdRule:
    return NdRule(name, conn, line, concl, tuple(NdPremise(*p) for p in prems))


_A, _C = ASSUMPTION, COUNTER
RULES: dict[str, NdRule] = {r.name: r for r in (
    _r("botE", "bot", PROOF, "C", (PROOF, "P")),
    _r("topEd", "top", DUAL, "C", (DUAL, "P")),
    _r("andI", "and", PROOF, "P", (PROOF, "A"), (PROOF, "B")),
    _r("andE1", "and", PROOF, "A", (PROOF, "P")),
    _r("andE2", "and", PROOF, "B", (PROOF, "P")),
    _r("andId1", "and", DUAL, "P", (DUAL, "A")),
    _r("andId2", "and", DUAL, "P", (DUAL, "B")),
    _r("andEd", "and", "*", "C", (DUAL, "P"), ("*", "C", ((_C, "A"),)), ("*", "C", ((_C, "B"),))),
    _r("orI1", "or", PROOF, "P", (PROOF, "A")),
    _r("orI2", "or", PROOF, "P", (PROOF, "B")),
    _r("orE", "or", "*", "C", (PROOF, "P"), ("*", "C", ((_A, "A"),)), ("*", "C", ((_A, "B"),))),
    _r("orId", "or", DUAL, "P", (DUAL, "A"), (DUAL, "B")),
    _r("orEd1", "or", DUAL, "A", (DUAL, "P")),
    _r("orEd2", "or", DUAL, "B", (DUAL, "P")),
    _r("impI", "imp", PROOF, "P", (PROOF, "B", ((_A, "A"),))),
    _r("impE", "imp", PROOF, "B", (PROOF, "P"), (PROOF, "A")),
    _r("impId", "imp", DUAL, "P", (PROOF, "A"), (DUAL, "B")),
    _r("impEd1", "imp", PROOF, "A", (DUAL, "P")),
    _r("impEd2", "imp", DUAL, "B", (DUAL, "P")),
    _r("coimpI", "coimp", PROOF, "P", (PROOF, "A"), (DUAL, "B")),
    _r("coimpE1", "coimp", PROOF, "A", (PROOF, "P")),
    _r("coimpE2", "coimp", DUAL, "B", (PROOF, "P")),
    _r("coimpId", "coimp", DUAL, "P", (DUAL, "A", ((_C, "B"),))),
    _r("coimpEd", "coimp", DUAL, "A", (DUAL, "P"), (DUAL, "B")),
)}

_NAME_RE = re.compile(r"^(bot|top|and|or|imp|coimp)('*)(.+)$")


def parse_nd_rule(name: str) -> tuple[NdRule, int]:
    """``"and''Id1"`` -> (the andId1 rule, copy 2)."""
    m = _NAME_RE.match(name)
    if not m or (m.group(1) + m.group(3)) not in RULES:
        raise NdError((), f"unknown rule {name!r}")
    return RULES[m.group(1) + m.group(3)], len(m.group(2))


def nd_rule_name(rule: NdRule, copy: int = 0) -> str:
    return rule.connective + "'" * copy + rule.name[len(rule.connective):]


# -- tree type ---------------------------------------------------------------

@dataclass(frozen=True)
class NdNode:
    formula: Formula
    line: str
    rule: str
    premises: tuple["NdNode", ...] = ()
    discharges: tuple[tuple[str, str], ...] = ()   # (label, kind)
    label: str | None = None

    @property
    def is_leaf(self) -> bool:
        return self.rule in LEAF_RULES


class NdError(ValueError):
    def __init__(self, path: tuple[int, ...], reason: str):
        self.path = path
        self.reason = reason
        where = "root" if not path else "root." + ".".join(map(str, path))
        super().__init__(f"{where}: {reason}")


@dataclass
class NdResult:
    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]
    formula: Formula
    line: str
    warnings: list[str] = field(default_factory=list)

    def sequent(self) -> Sequent:
        """The sequent this derivation corresponds to."""
        return Sequent(self.gamma, self.delta, PLUS if self.line == PROOF else MINUS,
                       self.formula)


# -- checking ----------------------------------------------------------------

_Open = Counter  # (label | None, kind, formula) -> multiplicity


def nd_check(root: NdNode, sig: Signature | None = None) -> NdResult:
    """Validate ``root``; return its open pair, conclusion and line.

    ``sig=None`` treats every copy as full.  Raises :class:`NdError` with the
    pre-order path of the first offending node.
    """
    if sig is None:
        sig = Signature.covering(_formulas(root))
    labels: dict[str, tuple[str, Formula]] = {}
    warnings: list[str] = []
    opened = _check(root, sig, (), labels, warnings)
    # leaves sharing a label form one assumption class and count once
    opened = Counter({k: (1 if k[0] is not None else n) for k, n in opened.items()})
    gamma = tuple(f for (_, k, f), n in sorted(opened.items(), key=_okey) if k == ASSUMPTION
                  for _ in range(n))
    delta = tuple(f for (_, k, f), n in sorted(opened.items(), key=_okey) if k == COUNTER
                  for _ in range(n))
    return NdResult(gamma, delta, root.formula, root.line, warnings)


def _okey(item):
    (label, kind, f), _ = item
    return (kind, f.text, label or "")


def _formulas(node: NdNode):
    yield node.formula
    for p in node.premises:
        yield from _formulas(p)


def _check(node: NdNode, sig: Signature, path, labels, warnings) -> _Open:
    if node.line not in (PROOF, DUAL):
        raise NdError(path, f"unknown line type {node.line!r}")
    try:
        sig.validate([node.formula])
    except UnknownTagError as e:
        raise NdError(path, f"unknown tag: {e}") from None

    if node.is_leaf:
        kind = ASSUMPTION if node.rule == "Assumption" else COUNTER
        if node.line != LEAF_RULES[node.rule]:
            raise NdError(path, f"premise line type: {node.rule} must be a {LEAF_RULES[node.rule]} line")
        if node.premises:
            raise NdError(path, "a leaf has no premises")
        if node.label is not None:
            seen = labels.setdefault(node.label, (kind, node.formula))
            if seen != (kind, node.formula):
                raise NdError(path, f"label {node.label!r} is used for different leaves")
        return Counter({(node.label, kind, node.formula): 1})

    try:
        rule, copy = parse_nd_rule(node.rule)
    except NdError as e:
        raise NdError(path, e.reason) from None
    if rule.line != "*" and node.line != rule.line:
        raise NdError(path, f"premise line type: {node.rule} concludes a {rule.line} line")
    if len(node.premises) != len(rule.premises):
        raise NdError(path, f"{node.rule} takes {len(rule.premises)} premises")

    # identify the principal formula
    major = rule.major
    principal = node.formula if major is None else node.premises[major].formula
    if principal.kind != rule.connective or principal.copy != copy:
        where = "conclusion" if major is None else f"premise {major}"
        tag = rule.connective + "'" * copy
        raise NdError(path, f"rule/formula mismatch: {where} of {node.rule} "
                            f"must be a {tag} formula")
    group = "R-" if rule.dual_rule else "R+"
    if not sig.allows(principal.kind, principal.copy, group):
        raise NdError(path, f"rule {node.rule} is not available for this copy")

    def ref(r: str) -> Formula:
        if r == "P":
            return principal
        if r == "C":
            return node.formula
        return principal.children[0 if r == "A" else 1]

    if node.formula != ref(rule.concl):
        raise NdError(path, f"rule/formula mismatch: {node.rule} cannot conclude "
                            f"{print_formula(node.formula)}")

    opens = []
    for i, (prem, spec) in enumerate(zip(node.premises, rule.premises)):
        want_line = node.line if spec.line == "*" else spec.line
        if prem.line != want_line:
            raise NdError(path, f"premise line type: premise {i} of {node.rule} "
                                f"must be a {want_line} line")
        if prem.formula != ref(spec.ref):
            raise NdError(path, f"rule/formula mismatch: premise {i} of {node.rule} must be "
                                f"{print_formula(ref(spec.ref))}")
        opens.append(_check(prem, sig, path + (i,), labels, warnings))

    for label, kind in node.discharges:
        slots = [(i, ref(r)) for i, spec in enumerate(rule.premises)
                 for k, r in spec.discharge if k == kind]
        if not slots:
            raise NdError(path, f"undischargeable label {label!r}: {node.rule} discharges no {kind}")
        hit = 0
        for i, target in slots:
            for (lab, k, f), n in list(opens[i].items()):
                if lab != label or k != kind:
                    continue
                if f != target:
                    raise NdError(path, f"undischargeable label {label!r}: marks "
                                        f"{print_formula(f)} but {node.rule} discharges "
                                        f"{print_formula(target)} there")
                del opens[i][(lab, k, f)]
                hit += n
        if not hit:
            warnings.append(f"{_where(path)}: vacuous discharge of {label!r} by {node.rule}")

    total: Counter = Counter()
    for o in opens:
        total.update(o)
    return total


def _where(path):
    return "root" if not path else "root." + ".".join(map(str, path))


# -- JSON --------------------------------------------------------------------

def to_json(node: NdNode) -> dict[str, Any]:
    out: dict[str, Any] = {"formula": print_formula(node.formula), "line": node.line,
                           "rule": node.rule}
    if node.is_leaf:
        if node.label is not None:
            out["label"] = node.label
    else:
        out["discharges"] = [{"label": l, "kind": k} for l, k in node.discharges]
        out["premises"] = [to_json(p) for p in node.premises]
    return out


def from_json(obj: Any, path: tuple[int, ...] = ()) -> NdNode:
    if not isinstance(obj, dict):
        raise NdError(path, "node must be an object")
    for key in ("formula", "line", "rule"):
        if not isinstance(obj.get(key), str):
            raise NdError(path, f"missing string field {key!r}")
    try:
        formula = parse_formula(obj["formula"])
    except ParseError as e:
        raise NdError(path, f"formula: {e}") from None
    discharges = []
    for d in obj.get("discharges", []):
        if not isinstance(d, dict) or d.get("kind") not in (ASSUMPTION, COUNTER) \
                or not isinstance(d.get("label"), str):
            raise NdError(path, "discharges must be {label, kind: assumption|counter} objects")
        discharges.append((d["label"], d["kind"]))
    premises = obj.get("premises", [])
    if not isinstance(premises, list):
        raise NdError(path, "'premises' must be a list")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise NdError(path, "'label' must be a string")
    return NdNode(formula, obj["line"], obj["rule"],
                  tuple(from_json(p, path + (i,)) for i, p in enumerate(premises)),
                  tuple(discharges), label)


def loads(text: str) -> NdNode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise NdError((), f"invalid JSON: {e}") from None
    return from_json(obj)


def dumps(node: NdNode, indent: int | None = 2) -> str:
    return json.dumps(to_json(node), indent=indent, ensure_ascii=False)


# -- local soundness ---------------------------------------------------------

def internalize(line: str, formula: Formula, discharge: tuple[tuple[str, Formula], ...] = ()
                ) -> tuple[str, Formula]:
    """Turn a premise (line, formula, discharged hypotheses) into one
    hypothesis formula and the side ('G' or 'D') it belongs on."""
    side, h = ("G", formula) if line == PROOF else ("D", formula)
    for kind, a in discharge:
        if kind == ASSUMPTION:
            h = make("imp", (a, h if side == "G" else coneg(h)))
        else:
            h = make("coimp", (h if side == "D" else neg(h), a))
        side = "G" if kind == ASSUMPTION else "D"
    return side, h


def rule_sequents(rule: NdRule) -> list[Sequent]:
    """One sequent per conclusion line: the internalized premises entail the conclusion."""
    principal = Top() if rule.connective == "top" else Bot() if rule.connective == "bot" \
        else make(rule.connective, (Atom("p"), Atom("q")))
    refs = {"P": principal, "C": Atom("r")}
    if principal.children:
        refs["A"], refs["B"] = principal.children
    out = []
    for line in ((PROOF, DUAL) if rule.line == "*" else (rule.line,)):
        gamma, delta = [], []
        for spec in rule.premises:
            pline = line if spec.line == "*" else spec.line
            side, h = internalize(pline, refs[spec.ref],
                                  tuple((k, refs[r]) for k, r in spec.discharge))
            (gamma if side == "G" else delta).append(h)
        out.append(Sequent(gamma, delta, PLUS if line == PROOF else MINUS, refs[rule.concl]))
    return out


def validate_rule(rule: NdRule) -> bool:
    return all(decide(s) for s in rule_sequents(rule))


def local_soundness(rules: dict[str, NdRule] | None = None) -> dict[str, bool]:
    """Check every rule of the table (default: the built-in one)."""
    return {name: validate_rule(r) for name, r in (rules or RULES).items()}


# -- bundled corpus ----------------------------------------------------------

# name -> the sequent its open pair and conclusion correspond to
CORPUS = {
    "and_prime_to_and": "p &' q ; =>+ p & q",
    "and_to_and_prime": "p & q ; =>+ p &' q",
    "dual_and_to_and_dprime": "; p & q =>- p &'' q",
    "dual_and_dprime_to_and": "; p &'' q =>- p & q",
}


def corpus_signature() -> Signature:
    """``&'`` proof-only and ``&''`` dual-only, as the corpus assumes."""
    return BASE.extend("and", "proof-only").extend("and", "dual-only")


def load_corpus() -> dict[str, NdNode]:
    from importlib.resources import files
    data = files("twoint") / "data"
    return {name: loads((data / f"{name}.json").read_text(encoding="utf-8")) for name in CORPUS}

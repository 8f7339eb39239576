"""Sequent derivations: the tree type, the checker, JSON and text/LaTeX output."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterator

from ..calculus import (RuleInstance, RuleMismatch, SCHEMA, expected_premises,
                        parse_rule_name)
from ..signature import Signature, UnknownTagError
from ..syntax import (Atom, Formula, ParseError, Sequent, parse_formula, parse_sequent,
                      print_formula, print_sequent)


@dataclass(frozen=True)
class Derivation:
    conclusion: Sequent
    rule: RuleInstance
    premises: tuple["Derivation", ...] = ()

    def nodes(self) -> Iterator["Derivation"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    @property
    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)


class DerivationError(ValueError):
    """Raised by :func:`check`; ``path`` lists premise indices from the root."""

    def __init__(self, path: tuple[int, ...], reason: str):
        self.path = path
        self.reason = reason
        where = "root" if not path else "root." + ".".join(map(str, path))
        super().__init__(f"{where}: {reason}")


def check(d: Derivation, sig: Signature | None = None) -> None:
    """Validate every node of ``d`` against its schema; raise on the first
    offending node in pre-order.  ``sig=None`` accepts any copy as full."""
    if sig is None:
        sig = Signature.covering(f for node in d.nodes() for f in node.conclusion.formulas())
    _check(d, sig, ())


def is_valid(d: Derivation, sig: Signature | None = None) -> bool:
    try:
        check(d, sig)
    except DerivationError:
        return False
    return True


def _check(d: Derivation, sig: Signature, path: tuple[int, ...]) -> None:
    inst = d.rule
    schema = SCHEMA[inst.rule]
    try:
        sig.validate(d.conclusion.formulas())
    except UnknownTagError as e:
        raise DerivationError(path, f"unknown tag: {e}") from None
    if not schema.is_axiom:
        p = inst.principal
        if p.kind != schema.connective:
            raise DerivationError(path, f"bad principal: {inst.name} cannot act on {p}")
        if not sig.allows(p.kind, p.copy, schema.group):
            raise DerivationError(path, f"rule {inst.name} is not available for this copy")
    elif not isinstance(inst.principal, Atom):
        raise DerivationError(path, "axiom mismatch: principal is not atomic")
    if len(d.premises) != len(schema.premises):
        raise DerivationError(path, f"wrong premise count for {inst.name}")
    try:
        want = expected_premises(inst, d.conclusion)
    except RuleMismatch as e:
        raise DerivationError(path, str(e)) from None
    got = [p.conclusion for p in d.premises]
    if Counter(want) != Counter(got):
        raise DerivationError(path, "wrong premise shape: expected "
                              + " | ".join(print_sequent(s) for s in want))
    for i, p in enumerate(d.premises):
        _check(p, sig, path + (i,))


def weaken(d: Derivation, f: Formula, side: str) -> Derivation:
    """Add ``f`` to the assumptions (``side='G'``) or counterassumptions
    (``side='D'``) of every sequent in ``d``.  Every schema is closed under
    uniform context extension, so the result checks whenever ``d`` does."""
    if side not in ("G", "D"):
        raise ValueError("side must be 'G' or 'D'")
    return _weaken(d, (f,) if side == "G" else (), (f,) if side == "D" else ())


def weaken_many(d: Derivation, gamma=(), delta=()) -> Derivation:
    gamma, delta = tuple(gamma), tuple(delta)
    if not gamma and not delta:
        return d
    return _weaken(d, gamma, delta)


def _weaken(d: Derivation, gamma: tuple, delta: tuple) -> Derivation:
    return Derivation(d.conclusion.add(gamma, delta), d.rule,
                      tuple(_weaken(p, gamma, delta) for p in d.premises))


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def to_json(d: Derivation) -> dict[str, Any]:
    schema = SCHEMA[d.rule.rule]
    principal = None if schema.is_axiom else print_formula(d.rule.principal)
    return {
        "sequent": print_sequent(d.conclusion),
        "rule": d.rule.name,
        "principal": principal,
        "premises": [to_json(p) for p in d.premises],
    }


def dumps(d: Derivation, indent: int | None = 2) -> str:
    return json.dumps(to_json(d), indent=indent, ensure_ascii=False)


class DerivationFormatError(ValueError):
    """The JSON document does not describe a derivation."""


def from_json(obj: Any, path: tuple[int, ...] = ()) -> Derivation:
    if not isinstance(obj, dict):
        raise DerivationFormatError(f"{_where(path)}: node must be an object")
    for key in ("sequent", "rule"):
        if not isinstance(obj.get(key), str):
            raise DerivationFormatError(f"{_where(path)}: missing string field {key!r}")
    premises = obj.get("premises", [])
    if not isinstance(premises, list):
        raise DerivationFormatError(f"{_where(path)}: 'premises' must be a list")
    try:
        seq = parse_sequent(obj["sequent"])
        rule, copy = parse_rule_name(obj["rule"])
    except (ParseError, ValueError) as e:
        raise DerivationFormatError(f"{_where(path)}: {e}") from None
    schema = SCHEMA[rule]
    raw = obj.get("principal")
    if raw is None:
        if schema.is_axiom or schema.side == "R":
            principal = seq.succedent
        else:
            raise DerivationFormatError(f"{_where(path)}: {obj['rule']} needs a principal")
    else:
        try:
            principal = parse_formula(raw)
        except ParseError as e:
            raise DerivationFormatError(f"{_where(path)}: principal: {e}") from None
    if not schema.is_axiom and principal.copy != copy:
        raise DerivationFormatError(
            f"{_where(path)}: rule name {obj['rule']!r} does not match principal copy")
    star = seq.mode if schema.mode == "*" else None
    inst = RuleInstance(rule, principal, star, principal.children)
    return Derivation(seq, inst, tuple(from_json(p, path + (i,)) for i, p in enumerate(premises)))


def loads(text: str) -> Derivation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DerivationFormatError(f"invalid JSON: {e}") from None
    return from_json(obj)


def _where(path):
    return "root" if not path else "root." + ".".join(map(str, path))


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def render_tree(d: Derivation, style: str = "unicode") -> str:
    """Indented tree, conclusion first, premises nested below."""
    lines: list[str] = []

    def walk(node: Derivation, prefix: str, last: bool, top: bool):
        label = f"{print_sequent(node.conclusion, style)}   [{node.rule.name}]"
        if top:
            lines.append(label)
            child_prefix = ""
        else:
            lines.append(prefix + ("└─ " if last else "├─ ") + label if style != "ascii"
                         else prefix + ("`- " if last else "|- ") + label)
            child_prefix = prefix + ("   " if last else ("│  " if style != "ascii" else "|  "))
        for i, p in enumerate(node.premises):
            walk(p, child_prefix, i == len(node.premises) - 1, False)

    walk(d, "", True, True)
    return "\n".join(lines)


_LATEX_INFER = {0: r"\AxiomC", 1: r"\UnaryInfC", 2: r"\BinaryInfC", 3: r"\TrinaryInfC"}


def _latex_rule(name: str) -> str:
    rule, copy = parse_rule_name(name)
    ticks = "'" * copy
    base = rule.value
    if base.startswith("Rf"):
        return rf"\mathrm{{Rf}}^{{{base[2]}}}"
    for label, sym in (("Coimp", r"\prec"), ("Imp", r"\rightarrow"), ("And", r"\wedge"),
                       ("Or", r"\vee"), ("Top", r"\top"), ("Bot", r"\bot")):
        if base.startswith(label):
            rest = base[len(label):]
            side = rest[0]
            sup = rest[1] if len(rest) > 1 else ""
            sub = rest[2:] if len(rest) > 2 else ""
            if side == "L":
                return rf"{sym}{ticks}\mathrm{{L}}^{{{sup}}}"
            out = rf"{sym}{ticks}\mathrm{{R}}"
            if sub:
                out += rf"_{{{sub}}}"
            return out + rf"^{{{sup}}}"
    return name


def render_latex(d: Derivation) -> str:
    """bussproofs source for ``d``."""
    lines = [r"\begin{prooftree}"]

    def walk(node: Derivation):
        for p in node.premises:
            walk(p)
        seq = print_sequent(node.conclusion, "latex")
        label = rf"\RightLabel{{$\scriptstyle {_latex_rule(node.rule.name)}$}}"
        if not node.premises:
            lines.append(r"\AxiomC{}")
            lines.append(label)
            lines.append(rf"\UnaryInfC{{${seq}$}}")
        else:
            lines.append(label)
            lines.append(rf"{_LATEX_INFER[len(node.premises)]}{{${seq}$}}")

    walk(d)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines)

"""Signatures: which copies of each connective exist and which rules they obey."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .syntax import CONNECTIVES, Formula, tags


class Subset(enum.Enum):
    FULL = "full"
    PROOF_ONLY = "proof-only"
    DUAL_ONLY = "dual-only"


class UnknownTagError(ValueError):
    """A formula uses a connective copy that the signature does not declare."""


@dataclass(frozen=True)
class ConnTag:
    copy: int
    subset: Subset = Subset.FULL

    def __post_init__(self):
        if self.copy < 0:
            raise ValueError("copy index must be non-negative")
        if self.copy == 0 and self.subset is not Subset.FULL:
            raise ValueError("the base connective (copy 0) always has the full rule set")


# Rule groups: R+ / La are proof rules, R- / Lc are dual proof rules.
DUAL_KIND = {"and": "or", "or": "and", "imp": "coimp", "coimp": "imp", "top": "bot", "bot": "top"}

PROOF_GROUPS = frozenset({"R+", "La"})
DUAL_GROUPS = frozenset({"R-", "Lc"})
ALL_GROUPS = PROOF_GROUPS | DUAL_GROUPS

_GROUPS = {Subset.FULL: ALL_GROUPS, Subset.PROOF_ONLY: PROOF_GROUPS,
           Subset.DUAL_ONLY: DUAL_GROUPS}

_ALIASES = {
    "and": "and", "&": "and", "∧": "and",
    "or": "or", "|": "or", "∨": "or",
    "imp": "imp", "->": "imp", "→": "imp",
    "coimp": "coimp", "-<": "coimp", "≺": "coimp",
    "top": "top", "⊤": "top",
    "bot": "bot", "⊥": "bot",
}


def connective_name(token: str) -> str:
    """Normalize a connective token (``&``, ``and``, ``∧`` ...) to its kind."""
    try:
        return _ALIASES[token.strip()]
    except KeyError:
        raise ValueError(f"unknown connective {token!r}") from None


@dataclass(frozen=True)
class Signature:
    """Enabled copies per base connective.  Copy 0 is implicit and full."""

    copies: tuple[tuple[str, tuple[ConnTag, ...]], ...] = field(default=())

    def __post_init__(self):
        for kind, tags_ in self.copies:
            if kind not in CONNECTIVES:
                raise ValueError(f"unknown connective {kind!r}")
            for i, t in enumerate(tags_, start=1):
                if t.copy != i:
                    raise ValueError("copies must be numbered 1, 2, ... in order")

    def tags_for(self, kind: str) -> tuple[ConnTag, ...]:
        for k, ts in self.copies:
            if k == kind:
                return (ConnTag(0),) + ts
        return (ConnTag(0),)

    def lookup(self, kind: str, copy: int) -> ConnTag:
        if copy == 0:
            return ConnTag(0)
        for t in self.tags_for(kind):
            if t.copy == copy:
                return t
        raise UnknownTagError(f"connective {kind!r} has no copy {copy} in this signature")

    def groups(self, kind: str, copy: int) -> frozenset[str]:
        """Rule groups ({'R+', 'R-', 'La', 'Lc'}) available to this copy."""
        return _GROUPS[self.lookup(kind, copy).subset]

    def allows(self, kind: str, copy: int, group: str) -> bool:
        return group in self.groups(kind, copy)

    def extend(self, kind: str, subset: Subset | str = Subset.FULL) -> "Signature":
        """Append the next copy of ``kind`` with the given rule subset."""
        kind = connective_name(kind)
        subset = Subset(subset)
        table = dict(self.copies)
        current = table.get(kind, ())
        table[kind] = current + (ConnTag(len(current) + 1, subset),)
        return Signature(tuple((k, table[k]) for k in CONNECTIVES if k in table))

    def validate(self, formulas: Iterable[Formula]) -> None:
        for f in formulas:
            for kind, copy in tags(f):
                self.lookup(kind, copy)

    @classmethod
    def covering(cls, formulas: Iterable[Formula]) -> "Signature":
        """Smallest signature declaring every copy used in ``formulas`` as full."""
        needed: dict[str, int] = {}
        for f in formulas:
            for kind, copy in tags(f):
                needed[kind] = max(needed.get(kind, 0), copy)
        sig = cls()
        for kind in CONNECTIVES:
            for _ in range(needed.get(kind, 0)):
                sig = sig.extend(kind, Subset.FULL)
        return sig

    def dual(self) -> "Signature":
        """The signature of dualized formulas: each copy moves to the dual
        connective and proof-only/dual-only swap."""
        swap = {Subset.FULL: Subset.FULL, Subset.PROOF_ONLY: Subset.DUAL_ONLY,
                Subset.DUAL_ONLY: Subset.PROOF_ONLY}
        table = {DUAL_KIND[k]: tuple(ConnTag(t.copy, swap[t.subset]) for t in ts)
                 for k, ts in self.copies}
        return Signature(tuple((k, table[k]) for k in CONNECTIVES if k in table))

    def describe(self) -> str:
        parts = []
        for kind, ts in self.copies:
            for t in ts:
                parts.append(f"{kind}{chr(39) * t.copy}:{t.subset.value}")
        return ", ".join(parts) or "base"


BASE = Signature()


def extend_signature(base: Signature, connective: str, subset: Subset | str = Subset.FULL
                     ) -> Signature:
    return base.extend(connective, subset)

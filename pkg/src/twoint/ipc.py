"""Intuitionistic propositional logic decided by Dyckhoff's contraction-free G4ip.

Kept deliberately separate from the 2Int engine: it works on its own tuple
encoding (``('atom', name)``, ``('bot',)``, ``('and', a, b)``, ``('or', a, b)``,
``('imp', a, b)``) and shares no search code, so it can serve as an
independent oracle for the engine on co-implication-free input.

G4ip terminates without loop checks because every backward step decreases a
multiset ordering on formula weights.
"""
from __future__ import annotations

from functools import lru_cache

from .syntax import And, Atom, Bot, Formula, Imp, Or, Top

BOT = ("bot",)


def encode(f: Formula) -> tuple:
    """Translate a 2Int formula; ``top`` is encoded as ``bot -> bot``."""
    if isinstance(f, Atom):
        return ("atom", f.name)
    if isinstance(f, Bot):
        return BOT
    if isinstance(f, Top):
        return ("imp", BOT, BOT)
    if isinstance(f, And):
        return ("and", encode(f.left), encode(f.right))
    if isinstance(f, Or):
        return ("or", encode(f.left), encode(f.right))
    if isinstance(f, Imp):
        return ("imp", encode(f.left), encode(f.right))
    raise ValueError(f"not an intuitionistic formula: {f}")


def provable(f: Formula, assumptions=()) -> bool:
    """Is ``assumptions |- f`` intuitionistically valid?"""
    return _prove(frozenset(encode(a) for a in assumptions), encode(f))


@lru_cache(maxsize=None)
def _prove(gamma: frozenset, goal: tuple) -> bool:
    if BOT in gamma or goal in gamma:
        return True

    # invertible left rules
    for a in gamma:
        tag = a[0]
        if tag == "and":
            return _prove(gamma - {a} | {a[1], a[2]}, goal)
        if tag == "or":
            rest = gamma - {a}
            return _prove(rest | {a[1]}, goal) and _prove(rest | {a[2]}, goal)
        if tag == "imp":
            ante, cons = a[1], a[2]
            if ante[0] == "atom" and ante in gamma:
                return _prove(gamma - {a} | {cons}, goal)
            if ante == BOT:
                return _prove(gamma - {a}, goal)
            if ante[0] == "and":
                return _prove(gamma - {a} | {("imp", ante[1], ("imp", ante[2], cons))}, goal)
            if ante[0] == "or":
                return _prove(gamma - {a} | {("imp", ante[1], cons), ("imp", ante[2], cons)},
                              goal)

    # invertible right rules
    if goal[0] == "and":
        return _prove(gamma, goal[1]) and _prove(gamma, goal[2])
    if goal[0] == "imp":
        return _prove(gamma | {goal[1]}, goal[2])

    # non-invertible choices
    if goal[0] == "or" and (_prove(gamma, goal[1]) or _prove(gamma, goal[2])):
        return True
    for a in gamma:
        if a[0] == "imp" and a[1][0] == "imp":
            (_, (_, c, d), b) = a
            rest = gamma - {a}
            if _prove(rest | {("imp", d, b)}, ("imp", c, d)) and _prove(rest | {b}, goal):
                return True
    return False


def clear_cache() -> None:
    _prove.cache_clear()

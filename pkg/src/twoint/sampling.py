"""Formula enumeration and seeded random sampling for the property suites."""
from __future__ import annotations

import random
from typing import Sequence

from .syntax import BINARY, MINUS, PLUS, Atom, Bot, Formula, Sequent, Top, depth, make

ALL_BINARY = tuple(BINARY)           # and, or, imp, coimp
IPC_BINARY = ("and", "or", "imp")


def leaves(atoms: Sequence[str], constants: Sequence[str] = ()) -> list[Formula]:
    out: list[Formula] = [Atom(a) for a in atoms]
    out += [Top() if c == "top" else Bot() for c in constants]
    return out


def enumerate_formulas(max_depth: int, atoms: Sequence[str] = ("p", "q"),
                       constants: Sequence[str] = (), connectives: Sequence[str] = ALL_BINARY
                       ) -> list[Formula]:
    """Every formula of depth at most ``max_depth`` (atoms have depth 1),
    without duplicates, in a deterministic order."""
    levels = [leaves(atoms, constants)]
    seen = set(levels[0])
    for _ in range(max_depth - 1):
        prev = [f for level in levels for f in level]
        newest = set(levels[-1])
        fresh = []
        for kind in connectives:
            for a in prev:
                for b in prev:
                    if a in newest or b in newest:
                        f = make(kind, (a, b))
                        if f not in seen:
                            seen.add(f)
                            fresh.append(f)
        levels.append(fresh)
    return [f for level in levels for f in level]


def random_formula(rng: random.Random, max_depth: int, atoms: Sequence[str] = ("p", "q", "r"),
                   constants: Sequence[str] = ("top", "bot"),
                   connectives: Sequence[str] = ALL_BINARY, leaf_bias: float = 0.3) -> Formula:
    base = leaves(atoms, constants)
    if max_depth <= 1 or rng.random() < leaf_bias:
        return rng.choice(base)
    kind = rng.choice(tuple(connectives))
    return make(kind, (random_formula(rng, max_depth - 1, atoms, constants, connectives, leaf_bias),
                       random_formula(rng, max_depth - 1, atoms, constants, connectives, leaf_bias)))


def random_compound(rng: random.Random, max_depth: int, **kw) -> Formula:
    while True:
        f = random_formula(rng, max_depth, **kw)
        if depth(f) > 1:
            return f


def random_sequent(rng: random.Random, pool: Sequence[Formula], max_context: int = 2) -> Sequent:
    gamma = [rng.choice(pool) for _ in range(rng.randint(0, max_context))]
    delta = [rng.choice(pool) for _ in range(rng.randint(0, max_context))]
    return Sequent(gamma, delta, rng.choice((PLUS, MINUS)), rng.choice(pool))

"""Formulas and sequents of 2Int: representation, parsing, printing, dualization.

Formulas are immutable trees.  Every connective node carries a *copy index*
(``0`` for the base connective, ``k`` for the k-th duplicate, written with
``k`` apostrophes after the connective token).  Which rule groups a copy
answers to is a property of the :class:`~twoint.signature.Signature`, not of
the formula.

ASCII grammar (tightest binding first)::

    atom     [a-z][a-zA-Z0-9_]*   (except ``top``/``bot``)
    prefix   ~A   ==> A -> bot          -A   ==> top -< A
    and      A & B                      (left associative)
    or       A | B                      (left associative)
    arrows   A -> B  (right assoc.)     A -< B  (left assoc.)

``->`` and ``-<`` may not be mixed at one level without parentheses.
"""
from __future__ import annotations

import enum
import re
from collections import Counter
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Raised for malformed formula or sequent text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class Mode(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def flip(self) -> "Mode":
        return Mode.MINUS if self is Mode.PLUS else Mode.PLUS

    @property
    def unicode(self) -> str:
        return "⊢⁺" if self is Mode.PLUS else "⊢⁻"

    def __repr__(self) -> str:
        return f"Mode.{self.name}"


PLUS = Mode.PLUS
MINUS = Mode.MINUS


# --------------------------------------------------------------------------
# formulas
# --------------------------------------------------------------------------

class Formula:
    """Base class of formula nodes.

    Equality is structural (copy indices included) and hashes are cached,
    since formulas are used heavily as dict/set keys by the provers.
    """

    __slots__ = ("_key", "_hash", "_text")
    kind: str = ""
    arity: int = 0

    def __init__(self, key: tuple):
        self._key = key
        self._hash = hash(key)
        self._text = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.text}>"

    def __str__(self) -> str:
        return self.text

    @property
    def text(self) -> str:
        """Cached ASCII rendering, also used as a canonical sort key."""
        if self._text is None:
            self._text = print_formula(self)
        return self._text

    @property
    def children(self) -> tuple["Formula", ...]:
        return ()

    @property
    def copy(self) -> int:
        return 0


class Atom(Formula):
    __slots__ = ()
    kind = "atom"
    __match_args__ = ("name",)

    def __init__(self, name: str):
        super().__init__(("atom", name))

    @property
    def name(self) -> str:
        return self._key[1]


class _Constant(Formula):
    __slots__ = ()
    __match_args__ = ("copy",)

    def __init__(self, copy: int = 0):
        if copy < 0:
            raise ValueError("copy index must be non-negative")
        super().__init__((self.kind, copy))

    @property
    def copy(self) -> int:
        return self._key[1]


class Top(_Constant):
    __slots__ = ()
    kind = "top"


class Bot(_Constant):
    __slots__ = ()
    kind = "bot"


class _Binary(Formula):
    __slots__ = ()
    arity = 2
    __match_args__ = ("left", "right", "copy")

    def __init__(self, left: Formula, right: Formula, copy: int = 0):
        if copy < 0:
            raise ValueError("copy index must be non-negative")
        super().__init__((self.kind, copy, left, right))

    @property
    def copy(self) -> int:
        return self._key[1]

    @property
    def left(self) -> Formula:
        return self._key[2]

    @property
    def right(self) -> Formula:
        return self._key[3]

    @property
    def children(self) -> tuple[Formula, ...]:
        return (self._key[2], self._key[3])


class And(_Binary):
    __slots__ = ()
    kind = "and"


class Or(_Binary):
    __slots__ = ()
    kind = "or"


class Imp(_Binary):
    __slots__ = ()
    kind = "imp"


class Coimp(_Binary):
    __slots__ = ()
    kind = "coimp"


CONNECTIVES = ("and", "or", "imp", "coimp", "top", "bot")
BINARY = {"and": And, "or": Or, "imp": Imp, "coimp": Coimp}
CONSTANTS = {"top": Top, "bot": Bot}


def make(kind: str, children: tuple = (), copy: int = 0) -> Formula:
    """Build a connective node of ``kind`` with the given children."""
    if kind in BINARY:
        return BINARY[kind](children[0], children[1], copy)
    if kind in CONSTANTS:
        return CONSTANTS[kind](copy)
    raise ValueError(f"unknown connective {kind!r}")


def neg(f: Formula) -> Formula:
    """Intuitionistic negation ``f -> bot``."""
    return Imp(f, Bot())


def coneg(f: Formula) -> Formula:
    """Co-negation ``top -< f``."""
    return Coimp(Top(), f)


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


def depth(f: Formula) -> int:
    """Height of the formula tree; atoms and constants have depth 1."""
    if not f.children:
        return 1
    return 1 + max(depth(c) for c in f.children)


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in f.children)


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    out: set[str] = set()
    for c in f.children:
        out |= atoms(c)
    return out


def tags(f: Formula) -> set[tuple[str, int]]:
    """The (connective, copy) pairs occurring in ``f``."""
    if isinstance(f, Atom):
        return set()
    out = {(f.kind, f.copy)}
    for c in f.children:
        out |= tags(c)
    return out


def subformula_closure(fs: Iterable[Formula]) -> set[Formula]:
    """Smallest superset of ``fs`` closed under immediate subformulas."""
    seen: set[Formula] = set()
    stack = list(fs)
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        stack.extend(f.children)
    return seen


def dualize_formula(f: Formula) -> Formula:
    """Syntactic dual: swap top/bot and and/or, turn ``A -> B`` into
    ``dual(B) -< dual(A)`` and back.  Copy indices are preserved."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Top):
        return Bot(f.copy)
    if isinstance(f, Bot):
        return Top(f.copy)
    if isinstance(f, And):
        return Or(dualize_formula(f.left), dualize_formula(f.right), f.copy)
    if isinstance(f, Or):
        return And(dualize_formula(f.left), dualize_formula(f.right), f.copy)
    if isinstance(f, Imp):
        return Coimp(dualize_formula(f.right), dualize_formula(f.left), f.copy)
    if isinstance(f, Coimp):
        return Imp(dualize_formula(f.right), dualize_formula(f.left), f.copy)
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, name: str, by: Formula) -> Formula:
    """Replace every occurrence of atom ``name`` in ``f`` by ``by``."""
    if isinstance(f, Atom):
        return by if f.name == name else f
    if not f.children:
        return f
    return make(f.kind, tuple(substitute(c, name, by) for c in f.children), f.copy)


# --------------------------------------------------------------------------
# lexer / parser
# --------------------------------------------------------------------------

_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
KEYWORDS = ("top", "bot")
HOLE = "□"  # reserved atom name for one-hole templates; not lexable as an atom


class _Tok:
    __slots__ = ("kind", "value", "copy", "pos")

    def __init__(self, kind, value, pos, copy=0):
        self.kind = kind
        self.value = value
        self.copy = copy
        self.pos = pos

    def __repr__(self):
        return f"_Tok({self.kind}, {self.value!r}, copy={self.copy})"


def _ticks(text: str, i: int) -> tuple[int, int]:
    n = 0
    while i < len(text) and text[i] == "'":
        n += 1
        i += 1
    return n, i


def _lex(text: str, allow_hole: bool = False) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch == "(" or ch == ")":
            toks.append(_Tok(ch, ch, start))
            i += 1
        elif ch == "&" or ch == "|":
            copy, i = _ticks(text, i + 1)
            toks.append(_Tok("and" if ch == "&" else "or", ch, start, copy))
        elif ch == "-":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == ">":
                copy, i = _ticks(text, i + 2)
                toks.append(_Tok("imp", "->", start, copy))
            elif nxt == "<":
                copy, i = _ticks(text, i + 2)
                toks.append(_Tok("coimp", "-<", start, copy))
            else:
                toks.append(_Tok("coneg", "-", start))
                i += 1
        elif ch == "~":
            toks.append(_Tok("neg", "~", start))
            i += 1
        elif ch == "_" and allow_hole:
            toks.append(_Tok("hole", "_", start))
            i += 1
        else:
            m = _ATOM_RE.match(text, i)
            if not m:
                raise ParseError(f"unknown token {ch!r}", start)
            word = m.group(0)
            i = m.end()
            if word in KEYWORDS:
                copy, i = _ticks(text, i)
                toks.append(_Tok(word, word, start, copy))
            else:
                if i < n and text[i] == "'":
                    raise ParseError("copy ticks are not allowed on atoms", i)
                toks.append(_Tok("atom", word, start))
    toks.append(_Tok("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, allow_hole: bool = False):
        self.text = text
        self.toks = _lex(text, allow_hole)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.arrows()
        tok = self.peek()
        if tok.kind == ")":
            raise ParseError("unbalanced parentheses: unexpected ')'", tok.pos)
        if tok.kind != "eof":
            raise ParseError(f"unexpected token {tok.value!r}", tok.pos)
        return f

    def arrows(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok.kind == "imp":
            self.take()
            return Imp(left, self.arrows(), tok.copy)
        f = left
        while self.peek().kind == "coimp":
            t = self.take()
            f = Coimp(f, self.disj(), t.copy)
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "or":
            t = self.take()
            f = Or(f, self.conj(), t.copy)
        return f

    def conj(self) -> Formula:
        f = self.prefix()
        while self.peek().kind == "and":
            t = self.take()
            f = And(f, self.prefix(), t.copy)
        return f

    def prefix(self) -> Formula:
        tok = self.peek()
        if tok.kind == "neg":
            self.take()
            return neg(self.prefix())
        if tok.kind == "coneg":
            self.take()
            return coneg(self.prefix())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.take()
        if tok.kind == "atom":
            return Atom(tok.value)
        if tok.kind == "hole":
            return Atom(HOLE)
        if tok.kind == "top":
            return Top(tok.copy)
        if tok.kind == "bot":
            return Bot(tok.copy)
        if tok.kind == "(":
            f = self.arrows()
            close = self.take()
            if close.kind != ")":
                raise ParseError("unbalanced parentheses: missing ')'", close.pos)
            return f
        if tok.kind == "eof":
            raise ParseError("unexpected end of input", tok.pos)
        if tok.kind == ")":
            raise ParseError("unbalanced parentheses: unexpected ')'", tok.pos)
        raise ParseError(f"unexpected token {tok.value!r}", tok.pos)


def _check_mixing(p: _Parser) -> None:
    """Reject ``a -> b -< c`` style mixtures at a single level."""
    level_kinds: list[set[str]] = [set()]
    for tok in p.toks:
        if tok.kind == "(":
            level_kinds.append(set())
        elif tok.kind == ")":
            level_kinds.pop()
        elif tok.kind in ("imp", "coimp"):
            level_kinds[-1].add(tok.kind)
            if len(level_kinds[-1]) == 2:
                raise ParseError("mixing '->' and '-<' requires parentheses", tok.pos)


def parse_formula(text: str, *, allow_hole: bool = False) -> Formula:
    """Parse an ASCII formula.  ``~``/``-`` desugar to ``-> bot`` / ``top -<``."""
    p = _Parser(text, allow_hole)
    depth_ = 0
    for tok in p.toks:
        if tok.kind == "(":
            depth_ += 1
        elif tok.kind == ")":
            depth_ -= 1
            if depth_ < 0:
                raise ParseError("unbalanced parentheses: unexpected ')'", tok.pos)
    if depth_ > 0:
        raise ParseError("unbalanced parentheses: missing ')'", len(text))
    _check_mixing(p)
    return p.parse()


# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------

_PREC = {"atom": 4, "top": 4, "bot": 4, "and": 3, "or": 2, "imp": 1, "coimp": 1}

_SYMBOLS = {
    "ascii": {"and": "&", "or": "|", "imp": "->", "coimp": "-<", "top": "top", "bot": "bot",
              "neg": "~", "coneg": "-", "tick": "'"},
    "unicode": {"and": "∧", "or": "∨", "imp": "→", "coimp": "≺", "top": "⊤", "bot": "⊥",
                "neg": "¬", "coneg": "−", "tick": "′"},
    "latex": {"and": r"\wedge", "or": r"\vee", "imp": r"\rightarrow", "coimp": r"\prec",
              "top": r"\top", "bot": r"\bot", "neg": r"\neg ", "coneg": "-", "tick": "'"},
}


def _sym(kind: str, copy: int, style: str) -> str:
    table = _SYMBOLS[style]
    return table[kind] + table["tick"] * copy


def _needs_parens(child: Formula, parent: Formula, side: str) -> bool:
    cp, pp = _PREC[child.kind], _PREC[parent.kind]
    if cp > pp:
        return False
    if cp < pp:
        return True
    # equal precedence
    if parent.kind in ("and", "or"):
        return side == "right"
    if parent.kind == "imp":
        return side == "left" or child.kind == "coimp"
    # coimp
    return side == "right" or child.kind == "imp"


def _is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and f.copy == 0 and isinstance(f.right, Bot) and f.right.copy == 0


def _is_coneg(f: Formula) -> bool:
    return isinstance(f, Coimp) and f.copy == 0 and isinstance(f.left, Top) and f.left.copy == 0


def print_formula(f: Formula, style: str = "ascii", *, sugar: bool = False) -> str:
    """Render ``f`` with minimal parentheses.

    ``style`` is ``ascii``, ``unicode`` or ``latex``.  With ``sugar=True``
    the negation macros are re-folded (``A -> bot`` prints as ``~A``).
    """
    if style not in _SYMBOLS:
        raise ValueError(f"unknown style {style!r}")
    return _render(f, style, sugar)


def _render(f: Formula, style: str, sugar: bool) -> str:
    if isinstance(f, Atom):
        if f.name == HOLE:
            return "_" if style == "ascii" else "□"
        return f.name
    if isinstance(f, (Top, Bot)):
        return _sym(f.kind, f.copy, style)
    if sugar and (_is_neg(f) or _is_coneg(f)):
        operand = f.left if _is_neg(f) else f.right
        inner = _render(operand, style, sugar)
        if operand.children and not (sugar and (_is_neg(operand) or _is_coneg(operand))):
            inner = f"({inner})"
        return _SYMBOLS[style]["neg" if _is_neg(f) else "coneg"] + inner
    left, right = f.children
    ls = _render(left, style, sugar)
    rs = _render(right, style, sugar)
    if _needs_parens(left, f, "left") and not (sugar and (_is_neg(left) or _is_coneg(left))):
        ls = f"({ls})"
    if _needs_parens(right, f, "right") and not (sugar and (_is_neg(right) or _is_coneg(right))):
        rs = f"({rs})"
    return f"{ls} {_sym(f.kind, f.copy, style)} {rs}"


# --------------------------------------------------------------------------
# sequents
# --------------------------------------------------------------------------

def _sorted(fs: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(fs, key=lambda f: f.text))


class Sequent:
    """``(gamma; delta) |-mode succedent`` with multiset contexts.

    Contexts are stored as tuples in their given order (for display) and
    compared as multisets.
    """

    __slots__ = ("gamma", "delta", "mode", "succedent", "_hash", "_counts")

    def __init__(self, gamma: Iterable[Formula], delta: Iterable[Formula], mode: Mode,
                 succedent: Formula):
        self.gamma = tuple(gamma)
        self.delta = tuple(delta)
        self.mode = mode
        self.succedent = succedent
        self._counts = None
        self._hash = None

    @classmethod
    def canonical(cls, gamma: Iterable[Formula], delta: Iterable[Formula], mode: Mode,
                  succedent: Formula) -> "Sequent":
        """Build a sequent with contexts in a deterministic order."""
        return cls(_sorted(gamma), _sorted(delta), mode, succedent)

    def counts(self) -> tuple[Counter, Counter]:
        if self._counts is None:
            self._counts = (Counter(self.gamma), Counter(self.delta))
        return self._counts

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return (self.mode == other.mode and self.succedent == other.succedent
                and self.counts() == other.counts())

    def __hash__(self):
        if self._hash is None:
            g, d = self.counts()
            self._hash = hash((frozenset(g.items()), frozenset(d.items()), self.mode,
                               self.succedent))
        return self._hash

    def __repr__(self):
        return f"Sequent({print_sequent(self)!r})"

    def __str__(self):
        return print_sequent(self)

    def formulas(self) -> Iterator[Formula]:
        yield from self.gamma
        yield from self.delta
        yield self.succedent

    def normalized(self) -> "Sequent":
        """Set-normalized copy: duplicate context occurrences collapsed."""
        return Sequent.canonical(set(self.gamma), set(self.delta), self.mode, self.succedent)

    def with_context(self, gamma: Iterable[Formula], delta: Iterable[Formula]) -> "Sequent":
        return Sequent(gamma, delta, self.mode, self.succedent)

    def add(self, gamma: Iterable[Formula] = (), delta: Iterable[Formula] = ()) -> "Sequent":
        return Sequent(self.gamma + tuple(gamma), self.delta + tuple(delta), self.mode,
                       self.succedent)


def dualize_sequent(s: Sequent) -> Sequent:
    """``(G; D) |-* C``  becomes  ``(dual D; dual G) |-*op dual C``."""
    return Sequent(tuple(dualize_formula(f) for f in s.delta),
                   tuple(dualize_formula(f) for f in s.gamma),
                   s.mode.flip(), dualize_formula(s.succedent))


_ARROW_RE = re.compile(r"=>([+-])")


def parse_sequent(text: str) -> Sequent:
    """Parse ``G1, G2 ; D1 =>+ C`` (or ``=>-``).  Lists may be empty."""
    arrows = list(_ARROW_RE.finditer(text))
    if not arrows:
        raise ParseError("missing sequent arrow '=>+' or '=>-'")
    if len(arrows) > 1:
        raise ParseError("more than one sequent arrow", arrows[1].start())
    arrow = arrows[0]
    mode = Mode(arrow.group(1))
    lhs, rhs = text[: arrow.start()], text[arrow.end():]
    if lhs.count(";") != 1:
        raise ParseError("expected exactly one ';' separating assumptions and counterassumptions")
    g_text, d_text = lhs.split(";")
    offset_d = lhs.index(";") + 1

    def items(part: str, offset: int) -> list[Formula]:
        if not part.strip():
            return []
        out = []
        pos = offset
        for chunk in part.split(","):
            if not chunk.strip():
                raise ParseError("empty formula in context list", pos)
            try:
                out.append(parse_formula(chunk))
            except ParseError as e:
                raise ParseError(str(e).split(" (at position")[0],
                                 None if e.position is None else pos + e.position) from None
            pos += len(chunk) + 1
        return out

    gamma = items(g_text, 0)
    delta = items(d_text, offset_d)
    if not rhs.strip():
        raise ParseError("missing succedent", arrow.end())
    try:
        succ = parse_formula(rhs)
    except ParseError as e:
        raise ParseError(str(e).split(" (at position")[0],
                         None if e.position is None else arrow.end() + e.position) from None
    return Sequent(gamma, delta, mode, succ)


def print_sequent(s: Sequent, style: str = "ascii") -> str:
    if style == "ascii":
        g = ", ".join(print_formula(f) for f in s.gamma)
        d = ", ".join(print_formula(f) for f in s.delta)
        left = f"{g} ; {d}" if g else f"; {d}"
        left = left.rstrip()
        return f"{left} =>{s.mode.value} {print_formula(s.succedent)}"
    empty = "∅" if style == "unicode" else r"\emptyset"
    g = ", ".join(print_formula(f, style) for f in s.gamma) or empty
    d = ", ".join(print_formula(f, style) for f in s.delta) or empty
    if style == "unicode":
        return f"({g}; {d}) {s.mode.unicode} {print_formula(s.succedent, style)}"
    return f"({g}; {d}) \\vdash^{s.mode.value} {print_formula(s.succedent, style)}"

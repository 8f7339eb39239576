"""2Int: bi-intuitionistic logic with proofs and dual proofs.

Formula syntax, the sequent calculus, a decision procedure with proof
objects, structural-property checkers, the uniqueness/synonymy toolkit and
a natural deduction checker.
"""
from .signature import BASE, ConnTag, Signature, Subset, extend_signature
from .syntax import (MINUS, PLUS, Formula, Mode, ParseError, Sequent, dualize_formula,
                     dualize_sequent, parse_formula, parse_sequent, print_formula, print_sequent)
from .engine import Derivable, Derivation, Underivable, check, decide

__version__ = "0.1.0"

__all__ = [
    "BASE", "ConnTag", "Derivable", "Derivation", "Formula", "MINUS", "Mode", "PLUS",
    "ParseError", "Sequent", "Signature", "Subset", "Underivable", "check", "decide",
    "dualize_formula", "dualize_sequent", "extend_signature", "parse_formula", "parse_sequent",
    "print_formula", "print_sequent",
]

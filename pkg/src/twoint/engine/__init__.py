"""Decision procedures for 2Int sequents.

:func:`decide` runs goal-directed backward search.  With ``oracle=True`` it
also runs forward saturation on the same goal and raises
:class:`OracleDisagreement` if the two verdicts differ.
"""
from __future__ import annotations

from ..signature import BASE, Signature
from ..syntax import Sequent
from .backward import BackwardProver, decide_backward
from .decision import (Decision, Derivable, Limits, OracleDisagreement, ResourceLimitExceeded,
                       Stats, Underivable)
from .derivation import (Derivation, DerivationError, DerivationFormatError, check, dumps,
                         from_json, is_valid, loads, render_latex, render_tree, to_json, weaken,
                         weaken_many)
from .forward import Saturation, saturate_forward


def decide(goal: Sequent, sig: Signature = BASE, *, oracle: bool = False,
           limits: Limits | None = None, procedure: str = "backward") -> Decision:
    """Decide ``goal`` under ``sig``.

    ``procedure`` picks the primary search ("backward" or "forward").  The
    returned proof, if any, has been run through :func:`check`.
    """
    limits = limits or Limits.from_env()
    if procedure == "backward":
        result = decide_backward(goal, sig, limits)
        other = saturate_forward if oracle else None
    elif procedure == "forward":
        result = saturate_forward(goal, sig, limits)
        other = decide_backward if oracle else None
    else:
        raise ValueError(f"unknown procedure {procedure!r}")
    if result:
        check(result.proof, sig)
    if other is not None:
        second = other(goal, sig, limits)
        if bool(second) != bool(result):
            raise OracleDisagreement(
                f"{result.stats.procedure} says {'derivable' if result else 'underivable'}, "
                f"{second.stats.procedure} disagrees")
        if second:
            check(second.proof, sig)
    return result


__all__ = [
    "BackwardProver", "Decision", "Derivable", "Derivation", "DerivationError",
    "DerivationFormatError", "Limits", "OracleDisagreement", "ResourceLimitExceeded",
    "Saturation", "Stats", "Underivable", "check", "decide", "decide_backward", "dumps",
    "from_json", "is_valid", "loads", "render_latex", "render_tree", "saturate_forward",
    "to_json", "weaken", "weaken_many",
]

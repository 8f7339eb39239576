from __future__ import annotations

import os
from dataclasses import dataclass, field

from .derivation import Derivation


class ResourceLimitExceeded(RuntimeError):
    """A search hit its configured bound; this is not an underivability verdict."""


class OracleDisagreement(AssertionError):
    """Backward search and forward saturation returned different verdicts."""


@dataclass(frozen=True)
class Limits:
    max_universe: int = 24
    max_sequents: int = 1_000_000

    @classmethod
    def from_env(cls, **overrides) -> "Limits":
        kw = {}
        if "TWOINT_MAX_SEQUENTS" in os.environ:
            kw["max_sequents"] = int(os.environ["TWOINT_MAX_SEQUENTS"])
        if "TWOINT_MAX_UNIVERSE" in os.environ:
            kw["max_universe"] = int(os.environ["TWOINT_MAX_UNIVERSE"])
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


@dataclass
class Stats:
    procedure: str = ""
    universe: int = 0
    generated: int = 0
    subsumed: int = 0
    kept: int = 0
    expanded: int = 0
    memo_hits: int = 0
    loop_cutoffs: int = 0

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v or k == "procedure"}


@dataclass(frozen=True)
class Derivable:
    proof: Derivation
    stats: Stats = field(default_factory=Stats, compare=False)
    derivable = True

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Derivable({self.proof.conclusion}, {self.proof.size} nodes)"


@dataclass(frozen=True)
class Underivable:
    stats: Stats = field(default_factory=Stats, compare=False)
    derivable = False

    def __bool__(self):
        return False

    def __repr__(self):
        return f"Underivable({self.stats.procedure or 'unknown'})"


Decision = Derivable | Underivable

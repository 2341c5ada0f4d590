"""Frame functions: probability assignments on effects, and the exact
reconstruction of the unique state a consistent assignment defines.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import QVec, as_fraction, solve_exact
from .observables import Observable
from .systems import GptSystem


class InconsistentSamplesError(ValueError):
    """The sampled values admit no exact linear extension."""


class NotAStateError(ValueError):
    """A linear extension exists but is not a recoverable state."""

    def __init__(self, msg: str, vector: QVec):
        super().__init__(msg)
        self.vector = vector


class UnderDeterminedError(ValueError):
    """The sampled effects do not span the ambient space."""


class MissingSampleError(KeyError):
    pass


@dataclass(frozen=True)
class FrameSamples:
    """Finite list of (effect, value) pairs with values in [0, 1]."""

    pairs: tuple[tuple[QVec, Fraction], ...]

    def __init__(self, pairs: Sequence[tuple[Sequence, object]]):
        norm = tuple((QVec(e), as_fraction(v)) for e, v in pairs)
        for e, v in norm:
            if v < 0 or v > 1:
                raise ValueError(f"frame-function value {v} for {e} outside [0, 1]")
        object.__setattr__(self, "pairs", norm)

    @classmethod
    def from_state(cls, sys: GptSystem, state) -> "FrameSamples":
        """Sample the linear frame function of a state on all extremal effects."""
        w = QVec(state)
        return cls([(e, e.dot(w)) for e in sys.effects.polytope.vertices])

    def value_of(self, effect: QVec) -> Fraction:
        for e, v in self.pairs:
            if e == effect:
                return v
        raise MissingSampleError(f"no sample for effect {effect}")

    def __len__(self) -> int:
        return len(self.pairs)


def recover_state(samples: FrameSamples, sys: GptSystem) -> QVec:
    """The unique vector reproducing every sampled value, verified to be a
    mathematically valid state for the system's effect space.

    This is the constructive direction of the frame-function/state
    correspondence: solve e_i . w = v_i exactly over a spanning sample set,
    then check nonnegativity on all effects and unit normalization.
    """
    rows = [e for e, _ in samples.pairs]
    rhs = [v for _, v in samples.pairs]
    status, solution = solve_exact(rows, rhs)
    if status == "underdetermined":
        raise UnderDeterminedError("sampled effects do not span the space")
    if status == "inconsistent":
        raise InconsistentSamplesError("samples admit no linear frame function")
    w = solution
    if sys.unit.dot(w) != 1:
        raise NotAStateError(f"recovered vector has unit weight {sys.unit.dot(w)} != 1", w)
    for e in sys.effects.polytope.vertices:
        if e.dot(w) < 0:
            raise NotAStateError(f"recovered vector gives negative value on {e}", w)
    return w


def frame_check(samples: FrameSamples, observables: Sequence[Observable]) -> bool:
    """Do the sampled values satisfy the frame-function axioms on the given
    observables?  Values must lie in [0, 1] (guaranteed at construction)
    and sum to exactly one along every observable."""
    for obs in observables:
        total = Fraction(0)
        for e in obs.outcomes:
            total += samples.value_of(e)  # raises MissingSampleError
        if total != 1:
            return False
    return True

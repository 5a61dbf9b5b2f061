from __future__ import annotations

from dataclasses import dataclass, field

from .surface import SegreValue

BIG_NEF = "big_nef_predicted"
NOT_COVERED = "not_covered"


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of checking one theorem's numeric hypotheses.

    ``flags`` are the numeric hypotheses; the conclusion is ``big_nef_predicted``
    exactly when all of them hold. ``side_conditions`` are reported but do not
    enter the conclusion, and ``assumptions`` name the cohomological inputs
    (very ampleness, stability, ...) that no numeric check can certify.
    """

    criterion: str
    flags: dict
    segre: SegreValue
    side_conditions: dict = field(default_factory=dict)
    assumptions: tuple = ()
    conjectural: bool = False

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.flags.values())

    @property
    def conclusion(self) -> str:
        return BIG_NEF if self.hypotheses_hold else NOT_COVERED

    @property
    def contradicts(self) -> bool:
        """True when the hypotheses hold but the Segre integral is not positive."""
        return self.hypotheses_hold and not self.segre.positive

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "flags": dict(self.flags),
            "side_conditions": dict(self.side_conditions),
            "segre": str(self.segre),
            "sign": self.segre.sign,
            "conclusion": self.conclusion,
            "assumptions": list(self.assumptions),
            "conjectural": self.conjectural,
        }

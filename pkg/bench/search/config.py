import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Tuple

from django.conf import settings

from cube.dyadic import parse_exact
from cube.exceptions import PreconditionError

logger = logging.getLogger(__name__)

DEFAULTS = {
    "JOBS": 1,
    "SEED": 0,
    "EXHAUSTIVE_MAX_N": 4,
    "ORBIT_MAX_SIZE": 8,
    "SAMPLES": {5: 2000, 6: 10000},
    "C1_GRID": ["1/64", "1/32", "1/16", "1/8", "1/4", "1/2", "1"],
    "ORDER2_C": "1/6",
    "CONJECTURE_C": 2,
    "ORDER1_LOG_DEN": 8,
    "ORDER2_LOG_DEN": 6,
    "MAX_FINDINGS": 100,
    "UNIT_SIZE": 4096,
}


def _positive(name: str, value) -> Fraction:
    value = parse_exact(value) if isinstance(value, str) else Fraction(value)
    if value <= 0:
        raise PreconditionError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class VerifierConfig:
    """Tunables of the verification runs; constants are exact rationals."""

    jobs: int = 1
    seed: int = 0
    exhaustive_max_n: int = 4
    orbit_max_size: int = 8
    samples: Dict[int, int] = field(default_factory=lambda: dict(DEFAULTS["SAMPLES"]))
    c1_grid: Tuple[Fraction, ...] = tuple(Fraction(x) for x in DEFAULTS["C1_GRID"])
    order2_c: Fraction = Fraction(1, 6)
    conjecture_c: Fraction = Fraction(2)
    order1_log_den: int = 8
    order2_log_den: int = 6
    max_findings: int = 100
    unit_size: int = 4096

    @classmethod
    def from_settings(cls, **overrides) -> "VerifierConfig":
        """Built-in defaults, then settings.CUBE_ISO, then explicit overrides."""
        values = dict(DEFAULTS)
        values.update(getattr(settings, "CUBE_ISO", {}))
        config = cls(
            jobs=max(1, int(values["JOBS"])),
            seed=int(values["SEED"]),
            exhaustive_max_n=int(values["EXHAUSTIVE_MAX_N"]),
            orbit_max_size=int(values["ORBIT_MAX_SIZE"]),
            samples={int(n): int(k) for n, k in values["SAMPLES"].items()},
            c1_grid=tuple(sorted(_positive("C1_GRID entry", c) for c in values["C1_GRID"])),
            order2_c=_positive("ORDER2_C", values["ORDER2_C"]),
            conjecture_c=_positive("CONJECTURE_C", values["CONJECTURE_C"]),
            order1_log_den=int(values["ORDER1_LOG_DEN"]),
            order2_log_den=int(values["ORDER2_LOG_DEN"]),
            max_findings=int(values["MAX_FINDINGS"]),
            unit_size=max(1, int(values["UNIT_SIZE"])),
        )
        overrides = {key: value for key, value in overrides.items() if value is not None}
        if overrides:
            logger.debug(f"Config overrides: {sorted(overrides)}")
            config = replace(config, **overrides)
        return config

    def samples_for(self, n: int) -> int:
        if n not in self.samples:
            raise PreconditionError(f"no sample count configured for n={n}")
        return self.samples[n]

    def to_dict(self) -> dict:
        """Everything that shapes a report; jobs is left out so reports match across worker counts."""
        return {
            "seed": self.seed,
            "exhaustive_max_n": self.exhaustive_max_n,
            "orbit_max_size": self.orbit_max_size,
            "samples": {str(n): k for n, k in sorted(self.samples.items())},
            "c1_grid": list(self.c1_grid),
            "order2_c": self.order2_c,
            "conjecture_c": self.conjecture_c,
            "order1_log_den": self.order1_log_den,
            "order2_log_den": self.order2_log_den,
            "max_findings": self.max_findings,
        }

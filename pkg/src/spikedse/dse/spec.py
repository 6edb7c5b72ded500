# stdlib
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

# third party
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

# spikedse absolute
from spikedse.exceptions import ConfigError
from spikedse.hwsim.config import HwConfig
from spikedse.surrogates import surrogate_type
from spikedse.surrogates.spec import SurrogateKind, SurrogateSpec
from spikedse.training.config import NeuronType, TrainConfig
from spikedse.utils.numeric import discretize
from spikedse.utils.serialization import load_json


class Phase(str, Enum):
    surrogate = "surrogate"
    neuron = "neuron"


BETA_GRID = discretize(0.1, 1.0, 0.2)
THRESHOLD_GRID = discretize(0.1, 2.0, 0.2)


class SweepSpec(BaseModel):
    """Grid of trials to explore.

    The surrogate phase crosses surrogate kinds with slopes; the neuron phase
    crosses neuron models with leak factors and thresholds. Every grid point
    runs once per seed on top of `base`.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "sweep"
    phase: Phase = Phase.surrogate
    surrogates: List[SurrogateKind] = [SurrogateKind.FS, SurrogateKind.ATAN, SurrogateKind.SRE]
    slopes: Optional[List[float]] = None
    neuron_types: List[NeuronType] = [NeuronType.lif, NeuronType.lapicque]
    betas: List[float] = BETA_GRID
    thresholds: List[float] = THRESHOLD_GRID
    seeds: List[int] = [0]
    base: TrainConfig = TrainConfig()
    hw: HwConfig = HwConfig()
    sim_samples: int = Field(default=4, ge=1)
    strict_ranges: bool = True

    @model_validator(mode="after")
    def _check_grid(self) -> "SweepSpec":
        if not self.seeds:
            raise ValueError("seeds must not be empty")
        if not self.name or "/" in self.name:
            raise ValueError(f"invalid sweep name '{self.name}'")
        if self.phase == Phase.surrogate:
            if not self.surrogates or (self.slopes is not None and not self.slopes):
                raise ValueError("surrogate phase needs surrogates and slopes")
            if self.strict_ranges and self.slopes is not None:
                for kind in self.surrogates:
                    if kind == SurrogateKind.SSO:
                        continue
                    (domain,) = surrogate_type(SurrogateSpec(kind=kind)).hyperparameter_space()
                    outside = [s for s in self.slopes if not domain.contains(s)]
                    if outside:
                        raise ValueError(f"{kind.value} slopes {outside} outside [{domain.low:g}, {domain.high:g}]")
        else:
            if not (self.neuron_types and self.betas and self.thresholds):
                raise ValueError("neuron phase needs neuron types, betas and thresholds")
            if self.strict_ranges:
                if any(not 0.1 <= b <= 1.0 for b in self.betas):
                    raise ValueError("betas must lie in [0.1, 1.0]")
                if any(not 0.1 <= t <= 2.0 for t in self.thresholds):
                    raise ValueError("thresholds must lie in [0.1, 2.0]")
        return self

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SweepSpec":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"sweep spec {path} not found")
        try:
            data = load_json(path)
        except ValueError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e
        return cls.parse(data)

    @classmethod
    def parse(cls, data: Dict[str, Any]) -> "SweepSpec":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def slopes_for(self, kind: SurrogateKind) -> List[float]:
        if self.slopes is not None:
            return list(self.slopes)
        plugin = surrogate_type(SurrogateSpec(kind=kind))
        return plugin.hyperparameter_grid()["slope"]


class TrialSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: TrainConfig
    group: str


def expand_grid(spec: SweepSpec) -> List[TrialSpec]:
    """All (grid point, seed) combinations, in a fixed order."""
    base = spec.base.to_dict()
    points: List[Dict[str, Any]] = []
    if spec.phase == Phase.surrogate:
        for kind in spec.surrogates:
            for slope in spec.slopes_for(kind):
                points.append({"surrogate_type": kind.value, "slope": slope, "_group": kind.value})
    else:
        for neuron_type in spec.neuron_types:
            for beta in spec.betas:
                for threshold in spec.thresholds:
                    points.append(
                        {
                            "neuron_type": neuron_type.value,
                            "beta": beta,
                            "threshold": threshold,
                            "_group": neuron_type.value,
                        }
                    )

    trials = []
    for point in points:
        group = point.pop("_group")
        for seed in spec.seeds:
            config = TrainConfig.parse({**base, **point, "seed": seed})
            trials.append(TrialSpec(config=config, group=group))
    return trials

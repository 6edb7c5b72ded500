# stdlib
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

# third party
from pydantic import BaseModel, ConfigDict, Field, ValidationError

# spikedse absolute
from spikedse.core.neurons import LapParams, LifParams, NeuronParams, ResetMode
from spikedse.core.topology import Topology
from spikedse.events.datasets import DatasetConfig
from spikedse.exceptions import ConfigError
from spikedse.surrogates.spec import SurrogateKind, SurrogateSpec
from spikedse.utils.serialization import load_json


class NeuronType(str, Enum):
    lif = "lif"
    lapicque = "lapicque"


class TrainConfig(BaseModel):
    """Everything that determines a training run.

    The keys `beta`, `threshold`, `slope`, `surrogate_type` and `neuron_type`
    are the ones used by existing experiment config files.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    topology: str = "8C3-MP2-16C3-MP2-FC32-FC4"
    neuron_type: NeuronType = NeuronType.lif
    beta: float = Field(default=0.5, gt=0, le=1)
    threshold: float = Field(default=1.0, gt=0)
    reset_mode: ResetMode = ResetMode.subtract
    surrogate_type: SurrogateKind = SurrogateKind.FS
    slope: float = Field(default=5.0, ge=0)
    sso_mu: float = 0.0
    timesteps: int = Field(default=8, ge=1)
    epochs: int = Field(default=50, ge=0)
    batch_size: int = Field(default=16, ge=1)
    lr0: float = Field(default=0.05, gt=0)
    lr_min: float = Field(default=0.0, ge=0)
    momentum: float = Field(default=0.9, ge=0, lt=1)
    patience: int = Field(default=20, ge=1)
    detach_reset: bool = True
    seed: int = 0
    dataset: DatasetConfig = DatasetConfig()

    @classmethod
    def load(cls, path: Union[str, Path], **overrides: Any) -> "TrainConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file {path} not found")
        try:
            data = load_json(path)
        except ValueError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.parse(data)

    @classmethod
    def parse(cls, data: Dict[str, Any]) -> "TrainConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def surrogate(self) -> SurrogateSpec:
        kwargs: Dict[str, Any] = {"u_thr": self.threshold, "rng_seed": self.seed}
        if self.surrogate_type == SurrogateKind.SSO:
            kwargs["sso_mu"] = self.sso_mu
        try:
            return SurrogateSpec.from_slope(self.surrogate_type, self.slope, **kwargs)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def neuron_params(self) -> NeuronParams:
        if self.neuron_type == NeuronType.lif:
            return LifParams(beta=self.beta, theta=self.threshold, reset_mode=self.reset_mode)
        return LapParams.from_beta(self.beta, self.threshold, reset_mode=self.reset_mode)

    def build_topology(self, input_shape: Tuple[int, int, int]) -> Topology:
        return Topology.parse(self.topology, input_shape, self.timesteps)

    def layer_params(self, topology: Topology) -> List[Optional[NeuronParams]]:
        params = self.neuron_params()
        return [params if layer.has_neurons else None for layer in topology.layers]

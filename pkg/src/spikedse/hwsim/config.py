# stdlib
from pathlib import Path
from typing import Any, Dict, Optional, Union

# third party
from pydantic import BaseModel, ConfigDict, Field, ValidationError

# spikedse absolute
from spikedse.core.fixed_point import FixedNeuron, FixedPointFormat
from spikedse.exceptions import ConfigError
from spikedse.metrics.energy import EnergyModel
from spikedse.utils.serialization import load_json


class OpCosts(BaseModel):
    """Cycles per primitive operation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    shift: int = Field(default=1, ge=0)
    add: int = Field(default=1, ge=0)
    compare: int = Field(default=1, ge=0)
    mul: int = Field(default=2, ge=0)


class HwConfig(BaseModel):
    """Accelerator parameters.

    Per layer and timestep the simulator charges
    C_ovHD + penc_cycles_per_active * N_active
    + ceil(accumulates * T_accum / P) + ceil(updates * update_cycles / P).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    P: int = Field(default=1, ge=1)
    C_ovHD: int = Field(default=10, ge=0)
    penc_cycles_per_active: int = Field(default=1, ge=0)
    T_accum: int = Field(default=1, ge=0)
    op_costs: OpCosts = OpCosts()
    lif_update_cycles: Optional[int] = Field(default=None, ge=0)
    lapicque_update_cycles: Optional[int] = Field(default=None, ge=0)
    freq_mhz: float = Field(default=100.0, gt=0)
    fixed_point: FixedPointFormat = FixedPointFormat()
    energy: EnergyModel = EnergyModel()

    @classmethod
    def load(cls, path: Union[str, Path]) -> "HwConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"hardware config {path} not found")
        try:
            data = load_json(path)
        except ValueError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e
        return cls.parse(data)

    @classmethod
    def parse(cls, data: Dict[str, Any]) -> "HwConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def update_ops(self, neuron: FixedNeuron) -> Dict[str, int]:
        """Primitive operations of one membrane update.

        LIF decays with a shift when the leak is a power of two and with a
        multiply otherwise; Lapicque needs two multiplies (decay and gain).
        """
        if neuron.kind == "lif":
            decay = "shift" if neuron.uses_shift else "mul"
            return {decay: 1, "add": 1, "compare": 1}
        return {"mul": 2, "add": 1, "compare": 1}

    def update_cycles(self, neuron: FixedNeuron) -> int:
        override = self.lif_update_cycles if neuron.kind == "lif" else self.lapicque_update_cycles
        if override is not None:
            return override
        costs = self.op_costs
        return sum(n * getattr(costs, op) for op, n in self.update_ops(neuron).items())

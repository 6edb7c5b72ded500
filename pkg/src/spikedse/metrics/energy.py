# stdlib
from typing import Any, Dict, Mapping, Union

# third party
from pydantic import BaseModel, ConfigDict, Field

OP_CLASSES = ("add", "shift", "compare", "mul", "mem")


class EnergyModel(BaseModel):
    """Constant energy per primitive, in arbitrary units.

    These are relative weights for comparing configurations, not a physical
    power model. `mj_per_unit` converts units to millijoules.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    add: float = Field(default=1.0, ge=0)
    shift: float = Field(default=1.0, ge=0)
    compare: float = Field(default=1.0, ge=0)
    mul: float = Field(default=3.0, ge=0)
    mem: float = Field(default=5.0, ge=0)
    mj_per_unit: float = Field(default=1e-9, ge=0)

    def cost(self, op: str) -> float:
        return float(getattr(self, op))


def estimate_energy(
    sim: Union[Mapping[str, int], Any], energy_model: EnergyModel = EnergyModel()
) -> float:
    """Sum of op counts times per-op energy, in mJ.

    `sim` is a report exposing `op_counts` or the op-count mapping itself.
    """
    counts: Dict[str, int] = dict(getattr(sim, "op_counts", sim))
    units = sum(counts.get(op, 0) * energy_model.cost(op) for op in OP_CLASSES)
    return units * energy_model.mj_per_unit

# stdlib
from enum import Enum
from typing import Any, Dict, Optional

# third party
from pydantic import BaseModel, ConfigDict, Field, model_validator


class TrialStatus(str, Enum):
    ok = "ok"
    diverged = "diverged"
    failed = "failed"


class TrialRecord(BaseModel):
    """Outcome of one train -> quantize -> simulate trial.

    `config` holds the training configuration under "train" and the hardware
    configuration under "hw".
    `timestamp` is the only field that differs between identical reruns.
    """

    model_config = ConfigDict(frozen=True)

    trial_hash: str
    config: Dict[str, Any]
    status: TrialStatus = TrialStatus.ok
    group: str = ""
    seed: int = 0
    accuracy: Optional[float] = Field(default=None, ge=0, le=1)
    float_accuracy: Optional[float] = Field(default=None, ge=0, le=1)
    total_cycles: Optional[int] = Field(default=None, ge=0)
    latency_ms: Optional[float] = Field(default=None, ge=0)
    activity_density: Optional[float] = Field(default=None, ge=0, le=1)
    energy_mj: Optional[float] = Field(default=None, ge=0)
    edp: Optional[float] = Field(default=None, ge=0)
    epochs_run: Optional[int] = None
    error: Optional[str] = None
    timestamp: Optional[str] = None

    @model_validator(mode="after")
    def _check_complete(self) -> "TrialRecord":
        if self.status != TrialStatus.ok:
            return self
        missing = [
            name
            for name in ("accuracy", "total_cycles", "latency_ms", "activity_density", "energy_mj", "edp")
            if getattr(self, name) is None
        ]
        if missing:
            raise ValueError(f"completed trial without {missing}")
        if self.edp != self.energy_mj * self.latency_ms:
            raise ValueError("edp must equal energy_mj * latency_ms")
        return self

    @classmethod
    def completed(
        cls, energy_mj: float, latency_ms: float, **kwargs: Any
    ) -> "TrialRecord":
        return cls(
            energy_mj=energy_mj,
            latency_ms=latency_ms,
            edp=energy_mj * latency_ms,
            status=TrialStatus.ok,
            **kwargs,
        )

    @property
    def ok(self) -> bool:
        return self.status == TrialStatus.ok

    @property
    def train_config(self) -> Dict[str, Any]:
        return self.config.get("train", {})

    @property
    def hw_config(self) -> Dict[str, Any]:
        return self.config.get("hw", {})

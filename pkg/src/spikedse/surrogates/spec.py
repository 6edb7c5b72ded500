# stdlib
from enum import Enum
from typing import Any

# third party
from pydantic import BaseModel, ConfigDict, Field


class SurrogateKind(str, Enum):
    FS = "fast_sigmoid"
    ATAN = "atan"
    SRE = "spike_rate_escape"
    SSO = "SSO"


class SurrogateSpec(BaseModel):
    """Backward approximation of the spike function and its shape parameters.

    Only the fields of the selected `kind` are consulted.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: SurrogateKind = SurrogateKind.FS
    fs_k: float = Field(default=25.0, gt=0)
    atan_alpha: float = Field(default=2.0, gt=0)
    sre_k: float = Field(default=1.0, gt=0)
    sre_beta: float = Field(default=1.0, gt=0)
    u_thr: float = 1.0
    sso_mu: float = 0.0
    sso_sigma2: float = Field(default=1.0, ge=0)
    rng_seed: int = 0

    @classmethod
    def from_slope(cls, kind: Any, slope: float, **kwargs: Any) -> "SurrogateSpec":
        """Map the single `slope` knob of a training config onto the kind's
        shape parameter. For the escape-rate surrogate the peak scale is tied
        to the decay rate."""
        kind = SurrogateKind(kind)
        if kind == SurrogateKind.FS:
            kwargs["fs_k"] = slope
        elif kind == SurrogateKind.ATAN:
            kwargs["atan_alpha"] = slope
        elif kind == SurrogateKind.SRE:
            kwargs["sre_beta"] = slope
            kwargs["sre_k"] = slope
        else:
            kwargs["sso_sigma2"] = slope
        return cls(kind=kind, **kwargs)

    @classmethod
    def sre_tied(cls, beta: float, u_thr: float = 1.0) -> "SurrogateSpec":
        return cls(kind=SurrogateKind.SRE, sre_k=beta, sre_beta=beta, u_thr=u_thr)

    @property
    def slope(self) -> float:
        if self.kind == SurrogateKind.FS:
            return self.fs_k
        if self.kind == SurrogateKind.ATAN:
            return self.atan_alpha
        if self.kind == SurrogateKind.SRE:
            return self.sre_beta
        return self.sso_sigma2

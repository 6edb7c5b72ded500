"""Leaky integrate-and-fire and Lapicque (RC) neuron dynamics.

Both models integrate, compare against the threshold and reset within the
same step. A neuron fires when its membrane reaches the threshold (``u >= theta``).
"""
# stdlib
from enum import Enum
import math
from typing import Tuple, Union

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# spikedse absolute
from spikedse.exceptions import DomainError, NumericError, ShapeError


class ResetMode(str, Enum):
    subtract = "subtract"
    zero = "zero"


class LifParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float = Field(gt=0, le=1)
    theta: float = Field(gt=0)
    reset_mode: ResetMode = ResetMode.subtract

    @property
    def decay(self) -> float:
        return self.beta

    @property
    def gain(self) -> float:
        return 1.0


class LapParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    R: float = Field(gt=0)
    C: float = Field(gt=0)
    T_step: float = Field(gt=0)
    theta: float = Field(gt=0)
    reset_mode: ResetMode = ResetMode.subtract

    @model_validator(mode="after")
    def _check_decay(self) -> "LapParams":
        ratio = self.T_step / (self.R * self.C)
        if not 0 < ratio < 1:
            raise ValueError(f"T/(R*C) must lie in (0, 1), got {ratio}")
        return self

    @property
    def decay(self) -> float:
        return 1.0 - self.T_step / (self.R * self.C)

    @property
    def gain(self) -> float:
        return self.T_step / self.C

    @classmethod
    def from_beta(
        cls,
        beta: float,
        theta: float,
        reset_mode: ResetMode = ResetMode.subtract,
    ) -> "LapParams":
        """RC parameters for a leak factor: C from the capacitance mapping,
        T_step = 1 and R chosen so the RC decay equals `beta`.
        The input gain is then T_step/C = -ln(beta).
        """
        capacitance = beta_to_capacitance(beta)
        resistance = 1.0 / (capacitance * (1.0 - beta))
        return cls(R=resistance, C=capacitance, T_step=1.0, theta=theta, reset_mode=reset_mode)


NeuronParams = Union[LifParams, LapParams]


class NeuronState(BaseModel):
    """Membrane potentials of one layer, shaped like the layer's out_shape."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    u: np.ndarray

    @classmethod
    def zeros(cls, shape: Tuple[int, ...], dtype: type = np.float64) -> "NeuronState":
        return cls(u=np.zeros(shape, dtype=dtype))

    @model_validator(mode="after")
    def _check_finite(self) -> "NeuronState":
        if np.issubdtype(self.u.dtype, np.floating) and not np.all(np.isfinite(self.u)):
            raise NumericError("non-finite membrane potential")
        return self


def beta_to_capacitance(beta: float) -> float:
    """Equivalent capacitance C = -1 / ln(beta) of a leak factor in (0, 1)."""
    if not 0 < beta < 1:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    return -1.0 / math.log(beta)


def _check_inputs(u: np.ndarray, syn: np.ndarray) -> None:
    if np.shape(u) != np.shape(syn):
        raise ShapeError(f"membrane shape {np.shape(u)} != synaptic shape {np.shape(syn)}")
    if not np.all(np.isfinite(syn)):
        raise NumericError("non-finite synaptic input")


def _fire_and_reset(
    u: np.ndarray, theta: float, reset_mode: ResetMode
) -> Tuple[np.ndarray, np.ndarray]:
    spikes = u >= theta
    if reset_mode == ResetMode.subtract:
        u = np.where(spikes, u - theta, u)
    else:
        u = np.where(spikes, 0.0, u)
    return u, spikes.astype(np.uint8)


def lif_step(
    u: np.ndarray, syn: np.ndarray, p: LifParams
) -> Tuple[np.ndarray, np.ndarray]:
    _check_inputs(u, syn)
    u_next = p.beta * np.asarray(u, dtype=np.float64) + syn
    return _fire_and_reset(u_next, p.theta, p.reset_mode)


def lapicque_step(
    u: np.ndarray, syn: np.ndarray, p: LapParams
) -> Tuple[np.ndarray, np.ndarray]:
    _check_inputs(u, syn)
    u_next = p.decay * np.asarray(u, dtype=np.float64) + syn * p.gain
    return _fire_and_reset(u_next, p.theta, p.reset_mode)


def neuron_step(
    u: np.ndarray, syn: np.ndarray, p: NeuronParams
) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(p, LifParams):
        return lif_step(u, syn, p)
    if isinstance(p, LapParams):
        return lapicque_step(u, syn, p)
    raise DomainError(f"unsupported neuron params {type(p).__name__}")

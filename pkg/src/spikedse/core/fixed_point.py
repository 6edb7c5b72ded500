"""Fixed-point deployment reference.

Membranes, thresholds and weights are signed integers with `frac_bits`
fractional bits. The accelerator model must reproduce these results bit
for bit, so every rounding and shift is defined here once.
"""
# stdlib
import math
from typing import List, Optional, Sequence, Tuple

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# spikedse absolute
from spikedse.exceptions import DomainError, FixedPointOverflowError
from spikedse.utils.numeric import round_half_away

# spikedse relative
from .network import NetworkTrace, check_network_args
from .neurons import LapParams, LifParams, NeuronParams, NeuronState, ResetMode
from .ops import conv_forward_dense, maxpool_spikes
from .spikes import SpikeTrain
from .topology import LayerKind, Topology


class FixedPointFormat(BaseModel):
    model_config = ConfigDict(frozen=True)

    total_bits: int = Field(default=16, ge=2, le=32)
    frac_bits: int = Field(default=8, ge=0)
    saturate: bool = True

    @model_validator(mode="after")
    def _check_bits(self) -> "FixedPointFormat":
        if self.frac_bits >= self.total_bits:
            raise ValueError("frac_bits must be smaller than total_bits")
        return self

    @property
    def one(self) -> int:
        return 1 << self.frac_bits

    @property
    def qmin(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def qmax(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    def clip(self, values: np.ndarray) -> Tuple[np.ndarray, int]:
        """Saturate to the representable range; returns the clipped values and
        how many elements were clipped."""
        values = np.asarray(values, dtype=np.int64)
        n_sat = int(np.count_nonzero((values < self.qmin) | (values > self.qmax)))
        if n_sat and not self.saturate:
            raise FixedPointOverflowError(
                f"{n_sat} values outside [{self.qmin}, {self.qmax}]"
            )
        return np.clip(values, self.qmin, self.qmax), n_sat

    def to_fixed(self, values: np.ndarray) -> Tuple[np.ndarray, int]:
        scaled = round_half_away(np.asarray(values, dtype=np.float64) * self.one)
        return self.clip(scaled.astype(np.int64))

    def to_float(self, values: np.ndarray) -> np.ndarray:
        return np.asarray(values, dtype=np.float64) / self.one


def decay_shift(beta: float) -> Optional[int]:
    """k when beta == 2**-k exactly (k >= 0), otherwise None."""
    if beta <= 0 or beta > 1:
        return None
    k = -math.log2(beta)
    if k != int(k) or 2.0 ** -int(k) != beta:
        return None
    return int(k)


class FixedNeuron(BaseModel):
    """Integer constants of one neuron layer in a given format."""

    model_config = ConfigDict(frozen=True)

    kind: str
    theta: int
    reset_mode: ResetMode
    frac_bits: int
    shift: Optional[int] = None
    decay: int = 0
    gain: int = 0

    @classmethod
    def from_params(cls, p: NeuronParams, fmt: FixedPointFormat) -> "FixedNeuron":
        theta = int(round_half_away(p.theta * fmt.one))
        theta = min(max(theta, 1), fmt.qmax)
        if isinstance(p, LifParams):
            shift = decay_shift(p.beta)
            decay = 0 if shift is not None else int(round_half_away(p.beta * fmt.one))
            return cls(
                kind="lif",
                theta=theta,
                reset_mode=p.reset_mode,
                frac_bits=fmt.frac_bits,
                shift=shift,
                decay=decay,
            )
        if isinstance(p, LapParams):
            return cls(
                kind="lapicque",
                theta=theta,
                reset_mode=p.reset_mode,
                frac_bits=fmt.frac_bits,
                decay=int(round_half_away(p.decay * fmt.one)),
                gain=int(round_half_away(p.gain * fmt.one)),
            )
        raise DomainError(f"unsupported neuron params {type(p).__name__}")

    @property
    def uses_shift(self) -> bool:
        return self.shift is not None

    def integrate(self, u: np.ndarray, syn: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        syn = np.asarray(syn, dtype=np.int64)
        f = self.frac_bits
        if self.kind == "lif":
            decayed = u >> self.shift if self.uses_shift else (self.decay * u) >> f
            return decayed + syn
        return ((self.decay * u) >> f) + ((self.gain * syn) >> f)

    def step(
        self, u: np.ndarray, syn: np.ndarray, fmt: FixedPointFormat
    ) -> Tuple[np.ndarray, np.ndarray, int]:
        u_next, n_sat = fmt.clip(self.integrate(u, syn))
        spikes = u_next >= self.theta
        if self.reset_mode == ResetMode.subtract:
            u_next = np.where(spikes, u_next - self.theta, u_next)
        else:
            u_next = np.where(spikes, 0, u_next)
        return u_next.astype(np.int64), spikes.astype(np.uint8), n_sat


def lif_step_fixed(
    u: np.ndarray, syn: np.ndarray, p: LifParams, fmt: FixedPointFormat = FixedPointFormat()
) -> Tuple[np.ndarray, np.ndarray, int]:
    return FixedNeuron.from_params(p, fmt).step(u, syn, fmt)


def lapicque_step_fixed(
    u: np.ndarray, syn: np.ndarray, p: LapParams, fmt: FixedPointFormat = FixedPointFormat()
) -> Tuple[np.ndarray, np.ndarray, int]:
    return FixedNeuron.from_params(p, fmt).step(u, syn, fmt)


def to_fixed_weights(
    q: np.ndarray, scale: float, fmt: FixedPointFormat
) -> Tuple[np.ndarray, int]:
    """Dequantised weights q*scale in the membrane format."""
    return fmt.to_fixed(np.asarray(q, dtype=np.float64) * float(scale))


def forward_network_fixed(
    topology: Topology,
    inputs: SpikeTrain,
    fixed_weights: Sequence[Optional[np.ndarray]],
    params: Sequence[Optional[NeuronParams]],
    fmt: FixedPointFormat = FixedPointFormat(),
) -> NetworkTrace:
    """Dense integer forward pass, the oracle for the event-driven simulator."""
    check_network_args(topology, inputs, fixed_weights, params)

    neurons: List[Optional[FixedNeuron]] = [
        FixedNeuron.from_params(p, fmt) if p is not None else None for p in params
    ]
    states = [
        np.zeros(layer.out_shape, dtype=np.int64) if layer.has_neurons else None
        for layer in topology.layers
    ]
    outputs = [
        np.zeros((inputs.timesteps, *layer.out_shape), dtype=np.uint8)
        for layer in topology.layers
    ]
    saturations = 0

    for t in range(inputs.timesteps):
        x = inputs[t]
        for idx, layer in enumerate(topology.layers):
            if layer.kind == LayerKind.maxpool:
                x = maxpool_spikes(x, layer.window)
            else:
                syn = conv_forward_dense(
                    x, np.asarray(fixed_weights[idx], dtype=np.int64), layer
                )
                states[idx], x, n_sat = neurons[idx].step(states[idx], syn, fmt)
                saturations += n_sat
            outputs[idx][t] = x

    return NetworkTrace(
        spikes=[SpikeTrain(out) for out in outputs],
        states=[NeuronState(u=u) if u is not None else None for u in states],
        saturations=saturations,
    )

# stdlib
import math
from typing import Any, List, Optional, Sequence, Tuple

# third party
import numpy as np
import torch
import torch.nn as nn
import torch.nn.functional as F

# spikedse absolute
from spikedse.core.neurons import NeuronParams, ResetMode
from spikedse.core.topology import LayerKind, Topology
from spikedse.surrogates import heaviside, normalization, relaxed_forward, surrogate_grad
from spikedse.surrogates.spec import SurrogateSpec


class SpikeFunction(torch.autograd.Function):
    """Spike nonlinearity with a surrogate derivative.

    Forward is the Heaviside step of x = U - theta (or the relaxed primitive
    when `relaxed`); backward multiplies the incoming gradient by the
    surrogate (scaled by the primitive's normalization when relaxed).
    """

    @staticmethod
    def forward(
        ctx: Any,
        x: torch.Tensor,
        spec: SurrogateSpec,
        layer: int,
        timestep: int,
        relaxed: bool,
    ) -> torch.Tensor:
        ctx.save_for_backward(x)
        ctx.spec = spec
        ctx.layer = layer
        ctx.timestep = timestep
        ctx.relaxed = relaxed
        if relaxed:
            return relaxed_forward(spec, x)
        return heaviside(x)

    @staticmethod
    def backward(ctx: Any, grad_output: torch.Tensor) -> Tuple:
        (x,) = ctx.saved_tensors
        sg = surrogate_grad(ctx.spec, x, layer=ctx.layer, timestep=ctx.timestep)
        if ctx.relaxed:
            sg = sg * normalization(ctx.spec)
        return grad_output * sg, None, None, None, None


def kaiming_uniform(shape: Sequence[int], fan_in: int, generator: torch.Generator) -> torch.Tensor:
    """He-uniform init: U(-sqrt(6/fan_in), sqrt(6/fan_in))."""
    bound = math.sqrt(6.0 / fan_in)
    return (torch.rand(tuple(shape), generator=generator, dtype=torch.float64) * 2 - 1) * bound


class SpikingNet(nn.Module):
    """Unrolled spiking network for training with BPTT.

    Pooling layers are max-pools over spikes; convolution and linear layers
    have no bias and feed spiking neurons of the given model.

    Args:
        topology: layer structure.
        params: neuron parameters shared by every spiking layer.
        surrogate: surrogate derivative used in the backward pass.
        relaxed: use the smooth primitive in the forward pass as well.
        detach_reset: stop gradients through the reset term.
        generator: source of the initial weights.
        dtype: parameter dtype.
    """

    def __init__(
        self,
        topology: Topology,
        params: NeuronParams,
        surrogate: SurrogateSpec,
        relaxed: bool = False,
        detach_reset: bool = True,
        generator: Optional[torch.Generator] = None,
        dtype: torch.dtype = torch.float32,
    ) -> None:
        super().__init__()
        self.topology = topology
        self.params = params
        self.surrogate = surrogate
        self.relaxed = relaxed
        self.detach_reset = detach_reset

        if generator is None:
            generator = torch.Generator().manual_seed(0)

        weights = []
        for layer in topology.layers:
            shape = layer.weight_shape()
            if shape is None:
                weights.append(None)
                continue
            fan_in = int(np.prod(shape[1:]))
            weights.append(nn.Parameter(kaiming_uniform(shape, fan_in, generator).to(dtype)))
        self.weights = nn.ParameterList([w for w in weights if w is not None])
        self._slots = [w is not None for w in weights]

        self.last_spike_counts: List[Optional[torch.Tensor]] = []
        self.first_non_finite: Optional[Tuple[int, int]] = None

    def layer_weights(self) -> List[Optional[nn.Parameter]]:
        it = iter(self.weights)
        return [next(it) if slot else None for slot in self._slots]

    def set_weights(self, weights: Sequence[Optional[np.ndarray]]) -> "SpikingNet":
        with torch.no_grad():
            for param, w in zip(self.layer_weights(), weights):
                if param is None:
                    continue
                param.copy_(torch.as_tensor(np.asarray(w), dtype=param.dtype))
        return self

    def numpy_weights(self) -> List[Optional[np.ndarray]]:
        return [
            None if p is None else p.detach().cpu().numpy().astype(np.float32)
            for p in self.layer_weights()
        ]

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        """x: [B, T, C, H, W] spikes. Returns the per-class spike counts [B, classes]."""
        batch, timesteps = x.shape[0], x.shape[1]
        decay, gain, theta = self.params.decay, self.params.gain, self.params.theta
        weights = self.layer_weights()
        dtype = self.weights[0].dtype if len(self.weights) else x.dtype

        mem: List[Optional[torch.Tensor]] = [None] * len(self.topology.layers)
        counts: List[Optional[torch.Tensor]] = [
            None if not layer.has_neurons else torch.zeros((), dtype=dtype)
            for layer in self.topology.layers
        ]
        out_sum = torch.zeros((batch, self.topology.num_classes), dtype=dtype)
        self.first_non_finite = None

        for t in range(timesteps):
            s = x[:, t].to(dtype)
            for idx, layer in enumerate(self.topology.layers):
                if layer.kind == LayerKind.maxpool:
                    s = F.max_pool2d(s, layer.window)
                    continue
                if layer.kind == LayerKind.conv:
                    syn = F.conv2d(s, weights[idx], stride=layer.stride, padding=layer.padding)
                else:
                    syn = F.linear(s.reshape(batch, -1), weights[idx])

                u = syn * gain if mem[idx] is None else decay * mem[idx] + syn * gain
                if self.first_non_finite is None and not torch.isfinite(u).all():
                    self.first_non_finite = (idx, t)

                s = SpikeFunction.apply(u - theta, self.surrogate, idx, t, self.relaxed)
                reset = s.detach() if self.detach_reset else s
                if self.params.reset_mode == ResetMode.subtract:
                    mem[idx] = u - reset * theta
                else:
                    mem[idx] = u * (1 - reset)

                counts[idx] = counts[idx] + s.detach().sum()
                if layer.kind == LayerKind.fc:
                    s = s.reshape(batch, *layer.out_shape)

            out_sum = out_sum + s.reshape(batch, -1)

        self.last_spike_counts = counts
        return out_sum

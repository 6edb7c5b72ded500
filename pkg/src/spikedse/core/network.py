# stdlib
from typing import List, Optional, Sequence

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict

# spikedse absolute
from spikedse.exceptions import ShapeError

# spikedse relative
from .neurons import NeuronParams, NeuronState, neuron_step
from .ops import conv_forward_dense, maxpool_spikes
from .spikes import SpikeTrain
from .topology import LayerKind, Topology


class NetworkTrace(BaseModel):
    """Output of a forward pass: the spike train of every layer and the
    final membrane state of every neuron layer (None for pooling layers).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    spikes: List[SpikeTrain]
    states: List[Optional[NeuronState]]
    saturations: int = 0

    @property
    def output(self) -> SpikeTrain:
        return self.spikes[-1]

    def output_counts(self) -> np.ndarray:
        """Spike count per output neuron accumulated over all timesteps."""
        return self.output.data.reshape(self.output.timesteps, -1).sum(axis=0)


def check_network_args(
    topology: Topology,
    inputs: SpikeTrain,
    weights: Sequence[Optional[np.ndarray]],
    params: Sequence[Optional[NeuronParams]],
) -> None:
    n_layers = len(topology.layers)
    if len(weights) != n_layers or len(params) != n_layers:
        raise ShapeError(
            f"expected {n_layers} weight/param entries, got {len(weights)}/{len(params)}"
        )
    if tuple(inputs.shape) != tuple(topology.input_shape):
        raise ShapeError(f"input shape {inputs.shape} != topology input {topology.input_shape}")
    for idx, layer in enumerate(topology.layers):
        if layer.has_neurons and (weights[idx] is None or params[idx] is None):
            raise ShapeError(f"layer {idx} ({layer.token()}) needs weights and neuron params")


def forward_network(
    topology: Topology,
    inputs: SpikeTrain,
    weights: Sequence[Optional[np.ndarray]],
    params: Sequence[Optional[NeuronParams]],
) -> NetworkTrace:
    """Float forward pass over all timesteps, layer after layer.

    `weights[i]` and `params[i]` are None for pooling layers.
    """
    check_network_args(topology, inputs, weights, params)

    states = [
        np.zeros(layer.out_shape) if layer.has_neurons else None for layer in topology.layers
    ]
    outputs = [
        np.zeros((inputs.timesteps, *layer.out_shape), dtype=np.uint8)
        for layer in topology.layers
    ]

    for t in range(inputs.timesteps):
        x = inputs[t]
        for idx, layer in enumerate(topology.layers):
            if layer.kind == LayerKind.maxpool:
                x = maxpool_spikes(x, layer.window)
            else:
                syn = conv_forward_dense(x, weights[idx], layer)
                states[idx], x = neuron_step(states[idx], syn, params[idx])
            outputs[idx][t] = x

    return NetworkTrace(
        spikes=[SpikeTrain(out) for out in outputs],
        states=[NeuronState(u=u) if u is not None else None for u in states],
    )

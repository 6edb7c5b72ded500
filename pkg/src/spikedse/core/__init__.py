# spikedse relative
from .fixed_point import (  # noqa: F401
    FixedNeuron,
    FixedPointFormat,
    decay_shift,
    forward_network_fixed,
    lapicque_step_fixed,
    lif_step_fixed,
    to_fixed_weights,
)
from .network import NetworkTrace, forward_network  # noqa: F401
from .neurons import (  # noqa: F401
    LapParams,
    LifParams,
    NeuronParams,
    NeuronState,
    ResetMode,
    beta_to_capacitance,
    lapicque_step,
    lif_step,
    neuron_step,
)
from .ops import conv_forward_dense, maxpool_spikes  # noqa: F401
from .spikes import SpikeTrain  # noqa: F401
from .topology import LayerKind, LayerSpec, Topology  # noqa: F401

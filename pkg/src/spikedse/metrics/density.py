# stdlib
from typing import Iterable, Optional, Union

# third party
import numpy as np

# spikedse absolute
from spikedse.core.spikes import SpikeTrain
from spikedse.exceptions import DomainError

SpikeLike = Union[SpikeTrain, np.ndarray]


def activity_density(
    spike_trains: Iterable[SpikeLike],
    timesteps: Optional[int] = None,
    n_neurons: Optional[int] = None,
) -> float:
    """Average spike rate per neuron per timestep, A = sum_t sum_i S_i[t] / (T * N).

    `spike_trains` holds one [T, ...] train per layer. T and N default to the
    trains' own timestep count and total neuron count.
    """
    total = 0
    neurons = 0
    steps = None
    for train in spike_trains:
        data = train.data if isinstance(train, SpikeTrain) else np.asarray(train)
        total += int(data.sum(dtype=np.int64))
        neurons += int(np.prod(data.shape[1:]))
        steps = data.shape[0] if steps is None else steps

    timesteps = steps if timesteps is None else timesteps
    n_neurons = neurons if n_neurons is None else n_neurons
    if not timesteps or not n_neurons:
        raise DomainError("activity density needs T >= 1 and N >= 1")
    return total / (timesteps * n_neurons)


def density_from_totals(
    total_spikes: int, timesteps: int, n_neurons: int, samples: int = 1
) -> float:
    """Density of a batch of `samples` inputs from the summed spike count."""
    if timesteps < 1 or n_neurons < 1 or samples < 1:
        raise DomainError("activity density needs T, N and samples >= 1")
    return float(total_spikes) / (timesteps * n_neurons * samples)

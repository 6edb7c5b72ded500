# stdlib
from functools import cached_property

# third party
import numpy as np

# spikedse absolute
from spikedse.exceptions import ShapeError


class SpikeTrain:
    """Binary activations s[t, c, h, w] over T timesteps.

    `counts[t, c]` caches the per-channel spike count S_c[t].
    """

    def __init__(self, data: np.ndarray) -> None:
        arr = np.asarray(data)
        if arr.ndim != 4:
            raise ShapeError(f"spike train must be [T, C, H, W], got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("spike train values must be binary")
        self._data = arr.astype(np.uint8)
        self._data.setflags(write=False)

    @classmethod
    def zeros(cls, timesteps: int, shape: tuple) -> "SpikeTrain":
        return cls(np.zeros((timesteps, *shape), dtype=np.uint8))

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def timesteps(self) -> int:
        return self._data.shape[0]

    @property
    def shape(self) -> tuple:
        """Per-timestep shape (C, H, W)."""
        return tuple(self._data.shape[1:])

    @property
    def n_neurons(self) -> int:
        return int(np.prod(self.shape))

    @cached_property
    def counts(self) -> np.ndarray:
        return self._data.sum(axis=(2, 3), dtype=np.int64)

    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, t: int) -> np.ndarray:
        return self._data[t]

    def __len__(self) -> int:
        return self.timesteps

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpikeTrain):
            return NotImplemented
        return self._data.shape == other._data.shape and bool(
            np.array_equal(self._data, other._data)
        )

    def __repr__(self) -> str:
        return f"SpikeTrain(T={self.timesteps}, shape={self.shape}, spikes={self.total()})"

# stdlib
from typing import Tuple

# third party
import numpy as np
from pydantic import validate_call

# spikedse absolute
from spikedse.core.spikes import SpikeTrain
from spikedse.exceptions import DomainError

# spikedse relative
from .stream import EventStream

# class id -> (axis, direction); axis 0 sweeps along x, 1 along y
DIRECTIONS = {
    0: (0, 1),  # left to right
    1: (0, -1),  # right to left
    2: (1, 1),  # top to bottom
    3: (1, -1),  # bottom to top
}


@validate_call
def gen_moving_bar(
    class_id: int,
    dims: Tuple[int, int] = (18, 18),
    duration: int = 100_000,
    rate: float = 2.0,
    seed: int = 0,
    bar_width: int = 2,
) -> EventStream:
    """A bar crossing the sensor in the direction given by `class_id`.

    The bar advances one pixel per step. Every pixel the leading edge enters
    emits Poisson(`rate`) ON events and every pixel the trailing edge leaves
    emits Poisson(`rate`) OFF events, with timestamps jittered uniformly
    inside the step.

    Args:
        class_id: 0 rightwards, 1 leftwards, 2 downwards, 3 upwards.
        dims: sensor (width, height), at least 8x8.
        duration: recording length in microseconds.
        rate: expected events per edge pixel crossing.
        seed: random seed.
        bar_width: bar thickness in pixels.
    """
    if class_id not in DIRECTIONS:
        raise DomainError(f"class_id must be one of {sorted(DIRECTIONS)}, got {class_id}")
    width, height = dims
    if width < 8 or height < 8:
        raise DomainError(f"sensor must be at least 8x8, got {width}x{height}")
    if rate < 0 or duration < 1:
        raise DomainError("rate must be >= 0 and duration >= 1")

    axis, direction = DIRECTIONS[class_id]
    extent, span = (width, height) if axis == 0 else (height, width)
    n_steps = extent + bar_width
    step_us = duration / n_steps
    rng = np.random.default_rng(seed)

    records = []
    for step in range(n_steps):
        # position along the sweep axis, counted in the direction of motion
        lead, trail = step, step - bar_width
        for pos, polarity in ((lead, 1), (trail, 0)):
            if not 0 <= pos < extent:
                continue
            coord = pos if direction > 0 else extent - 1 - pos
            counts = rng.poisson(rate, size=span)
            for other in np.flatnonzero(counts):
                n = int(counts[other])
                ts = np.floor((step + rng.random(n)) * step_us).astype(np.int64)
                x, y = (coord, int(other)) if axis == 0 else (int(other), coord)
                records.extend((int(t), x, y, polarity) for t in ts)

    if not records:
        return EventStream.empty(width, height, duration=duration, label=class_id)

    arr = np.array(sorted(records), dtype=np.int64)
    return EventStream.from_arrays(
        arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3],
        width=width, height=height, duration=duration, label=class_id,
    )


@validate_call(config=dict(arbitrary_types_allowed=True))
def poisson_encode(image: np.ndarray, timesteps: int, max_rate: float = 1.0, seed: int = 0) -> SpikeTrain:
    """Bernoulli spikes with per-bin probability pixel * max_rate.

    A 2-D image becomes a single-channel train.
    """
    img = np.asarray(image, dtype=np.float64)
    if img.ndim == 2:
        img = img[None]
    if img.ndim != 3:
        raise DomainError(f"image must be [H, W] or [C, H, W], got shape {img.shape}")
    if img.size and (img.min() < 0 or img.max() > 1):
        raise DomainError("pixel values must lie in [0, 1]")
    if not 0 <= max_rate <= 1:
        raise DomainError(f"max_rate must lie in [0, 1], got {max_rate}")
    if timesteps < 1:
        raise DomainError("timesteps must be >= 1")

    rng = np.random.default_rng(seed)
    draws = rng.random((timesteps, *img.shape))
    return SpikeTrain((draws < img * max_rate).astype(np.uint8))

# stdlib
from enum import Enum

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# spikedse absolute
from spikedse.core.spikes import SpikeTrain
from spikedse.exceptions import DomainError

# spikedse relative
from .stream import EventStream


class PolarityMode(str, Enum):
    two_channel = "two_channel"
    merged = "merged"


class RasterConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    timesteps: int = Field(default=8, ge=1)
    downsample: int = Field(default=1, ge=1)
    polarity: PolarityMode = PolarityMode.two_channel

    @property
    def channels(self) -> int:
        return 2 if self.polarity == PolarityMode.two_channel else 1

    def frame_shape(self, width: int, height: int) -> tuple:
        ds = self.downsample
        return (self.channels, -(-height // ds), -(-width // ds))


def rasterize(stream: EventStream, cfg: RasterConfig) -> SpikeTrain:
    """Bin events into binary frames [T, C, H, W].

    Event (t, x, y, p) lands in bin floor(t*T/duration), channel p (0 when
    polarities are merged), pixel (y, x); events at or past `duration` go to
    the last bin. Several events in one cell still give a single spike.
    """
    frames = np.zeros((cfg.timesteps, *cfg.frame_shape(stream.width, stream.height)), dtype=np.uint8)
    if len(stream) == 0:
        return SpikeTrain(frames)
    if stream.duration <= 0:
        raise DomainError("cannot bin events of a zero-duration stream")

    bins = np.minimum(stream.t * cfg.timesteps // stream.duration, cfg.timesteps - 1)
    channels = stream.p if cfg.polarity == PolarityMode.two_channel else np.zeros_like(stream.p)
    frames[bins, channels, stream.y // cfg.downsample, stream.x // cfg.downsample] = 1
    return SpikeTrain(frames)

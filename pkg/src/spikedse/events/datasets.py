# stdlib
from typing import Dict, Optional, Tuple

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
import torch

# spikedse absolute
from spikedse.exceptions import EmptyInputError, ShapeError
import spikedse.logger as log
from spikedse.utils.decorators import benchmark

# spikedse relative
from .raster import PolarityMode, RasterConfig, rasterize
from .synthetic import DIRECTIONS, gen_moving_bar

SPLITS = ("train", "val", "test")


class DatasetConfig(BaseModel):
    """Synthetic moving-bar task: four classes, one per sweep direction."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: str = "moving_bar"
    width: int = Field(default=18, ge=8)
    height: int = Field(default=18, ge=8)
    duration_us: int = Field(default=100_000, ge=1)
    rate: float = Field(default=2.0, ge=0)
    n_per_class: int = Field(default=40, ge=1)
    val_fraction: float = Field(default=0.2, ge=0, lt=1)
    test_fraction: float = Field(default=0.2, ge=0, lt=1)
    polarity: PolarityMode = PolarityMode.two_channel
    downsample: int = Field(default=1, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def _check_kind(self) -> "DatasetConfig":
        if self.kind != "moving_bar":
            raise ValueError(f"unknown dataset kind '{self.kind}'")
        if self.val_fraction + self.test_fraction >= 1:
            raise ValueError("val_fraction + test_fraction must stay below 1")
        return self

    def raster(self, timesteps: int) -> RasterConfig:
        return RasterConfig(timesteps=timesteps, downsample=self.downsample, polarity=self.polarity)


class SpikeDataset:
    """Rasterised samples x[n, T, C, H, W] with labels y[n] and named
    index splits."""

    def __init__(
        self,
        x: np.ndarray,
        y: np.ndarray,
        splits: Optional[Dict[str, np.ndarray]] = None,
        num_classes: Optional[int] = None,
    ) -> None:
        x = np.asarray(x, dtype=np.uint8)
        y = np.asarray(y, dtype=np.int64)
        if x.ndim != 5:
            raise ShapeError(f"samples must be [N, T, C, H, W], got shape {x.shape}")
        if len(x) != len(y):
            raise ShapeError(f"{len(x)} samples but {len(y)} labels")
        self.x = x
        self.y = y
        self.num_classes = int(num_classes if num_classes is not None else (y.max() + 1 if len(y) else 0))
        self.splits = splits if splits is not None else {"train": np.arange(len(y))}

    def __len__(self) -> int:
        return len(self.y)

    @property
    def timesteps(self) -> int:
        return self.x.shape[1]

    @property
    def input_shape(self) -> Tuple[int, int, int]:
        return tuple(int(v) for v in self.x.shape[2:])

    def split(self, name: str) -> "SpikeDataset":
        idx = self.splits.get(name)
        if idx is None:
            raise KeyError(f"unknown split '{name}'")
        return SpikeDataset(self.x[idx], self.y[idx], num_classes=self.num_classes)

    def has_split(self, name: str) -> bool:
        return name in self.splits and len(self.splits[name]) > 0

    def tensors(self, dtype: torch.dtype = torch.float32) -> Tuple[torch.Tensor, torch.Tensor]:
        if len(self) == 0:
            raise EmptyInputError("empty dataset")
        return torch.as_tensor(self.x).to(dtype), torch.as_tensor(self.y)


def split_indices(
    y: np.ndarray, val_fraction: float, test_fraction: float, seed: int
) -> Dict[str, np.ndarray]:
    """Stratified, seeded split of sample indices."""
    rng = np.random.default_rng(seed)
    parts: Dict[str, list] = {name: [] for name in SPLITS}
    for label in np.unique(y):
        idx = rng.permutation(np.flatnonzero(y == label))
        n_test = int(round(len(idx) * test_fraction))
        n_val = int(round(len(idx) * val_fraction))
        parts["test"].extend(idx[:n_test])
        parts["val"].extend(idx[n_test : n_test + n_val])
        parts["train"].extend(idx[n_test + n_val :])
    return {name: np.sort(np.asarray(v, dtype=np.int64)) for name, v in parts.items()}


@benchmark
def make_moving_bar_dataset(cfg: DatasetConfig, timesteps: int) -> SpikeDataset:
    raster = cfg.raster(timesteps)
    samples, labels = [], []
    for class_id in sorted(DIRECTIONS):
        for i in range(cfg.n_per_class):
            seed = cfg.seed * 1_000_003 + class_id * 10_007 + i
            stream = gen_moving_bar(
                class_id,
                dims=(cfg.width, cfg.height),
                duration=cfg.duration_us,
                rate=cfg.rate,
                seed=seed,
            )
            samples.append(rasterize(stream, raster).data)
            labels.append(class_id)

    y = np.asarray(labels, dtype=np.int64)
    splits = split_indices(y, cfg.val_fraction, cfg.test_fraction, cfg.seed)
    log.debug(
        f"moving bar dataset: {len(y)} samples, "
        + ", ".join(f"{k}={len(v)}" for k, v in splits.items())
    )
    return SpikeDataset(np.stack(samples), y, splits=splits, num_classes=len(DIRECTIONS))

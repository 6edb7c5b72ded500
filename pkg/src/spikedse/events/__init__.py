# spikedse relative
from .datasets import (  # noqa: F401
    DatasetConfig,
    SpikeDataset,
    make_moving_bar_dataset,
    split_indices,
)
from .raster import PolarityMode, RasterConfig, rasterize  # noqa: F401
from .stream import EventStream, load_events, save_events  # noqa: F401
from .synthetic import gen_moving_bar, poisson_encode  # noqa: F401

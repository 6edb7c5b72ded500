# stdlib
from typing import Sequence

# third party
import numpy as np

# spikedse absolute
from spikedse.exceptions import DomainError
from spikedse.utils.numeric import ceil_div

# spikedse relative
from .config import HwConfig


def analytic_latency(n_active: int, hw: HwConfig = HwConfig()) -> int:
    """Coarse layer latency: ceil((C_ovHD + N_active * T_accum) / P) cycles."""
    if n_active < 0:
        raise DomainError(f"N_active must be >= 0, got {n_active}")
    return ceil_div(hw.C_ovHD + n_active * hw.T_accum, hw.P)


def conv_workload(kernel_area: int, out_channels: int, spike_counts: Sequence[int]) -> int:
    """Accumulations of a convolution: W = F * C_out * sum_i S_i."""
    counts = np.asarray(spike_counts, dtype=np.int64)
    if counts.size and counts.min() < 0:
        raise DomainError("spike counts must be >= 0")
    return int(kernel_area) * int(out_channels) * int(counts.sum())

# stdlib
import math
from typing import Any

# third party
import torch
import torch.nn.functional as F


def rate_loss(counts: Any, labels: Any) -> torch.Tensor:
    """Cross-entropy of softmax over the per-class output spike counts."""
    counts = torch.as_tensor(counts)
    if not counts.is_floating_point():
        counts = counts.to(torch.float64)
    labels = torch.as_tensor(labels, dtype=torch.long)
    if counts.ndim == 1:
        counts = counts.unsqueeze(0)
        labels = labels.reshape(1)
    return F.cross_entropy(counts, labels)


def cosine_lr(epoch: int, total_epochs: int, lr0: float, lr_min: float) -> float:
    if total_epochs <= 0:
        return lr0
    return lr_min + 0.5 * (lr0 - lr_min) * (1 + math.cos(math.pi * epoch / total_epochs))

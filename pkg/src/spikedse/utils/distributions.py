# stdlib
import random

# third party
import numpy as np
import torch

SEED_MASK = 0xFFFFFFFF


def enable_reproducible_results(seed: int = 0) -> None:
    """Seed python, numpy and torch and pin torch to deterministic kernels."""
    random.seed(seed)
    np.random.seed(seed & SEED_MASK)
    torch.manual_seed(seed)
    torch.use_deterministic_algorithms(True, warn_only=True)


def torch_generator(seed: int) -> torch.Generator:
    """A private torch generator, so weight init and shuffling do not share state."""
    return torch.Generator().manual_seed(int(seed))


def keyed_rng(*key: int) -> np.random.Generator:
    """A numpy generator fully determined by an integer key tuple."""
    return np.random.default_rng([int(k) & SEED_MASK for k in key])

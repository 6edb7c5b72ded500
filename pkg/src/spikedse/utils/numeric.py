# third party
import numpy as np


def round_half_away(x: np.ndarray) -> np.ndarray:
    """Round to nearest, ties away from zero (np.round rounds ties to even)."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def ceil_div(a: int, b: int) -> int:
    return -(-int(a) // int(b))


def discretize(low: float, high: float, step: float, decimals: int = 6) -> list:
    """Grid from `low` to `high` with `step`, both endpoints included."""
    n = int(np.floor((high - low) / step + 1e-9))
    values = [round(low + i * step, decimals) for i in range(n + 1)]
    if abs(values[-1] - high) > 10 ** (-decimals):
        values.append(round(high, decimals))
    return values

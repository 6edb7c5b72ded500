# third party
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# spikedse absolute
from spikedse.exceptions import ShapeError

# spikedse relative
from .topology import LayerKind, LayerSpec


def _check_weights(weights: np.ndarray, spec: LayerSpec) -> None:
    expected = spec.weight_shape()
    if expected is None:
        raise ShapeError(f"{spec.kind.value} layer has no weights")
    if tuple(np.shape(weights)) != expected:
        raise ShapeError(f"weights shape {np.shape(weights)} != expected {expected}")


def conv_forward_dense(
    spikes_in: np.ndarray, weights: np.ndarray, spec: LayerSpec
) -> np.ndarray:
    """Synaptic currents of one timestep: dense convolution (or matrix
    product for FC layers) of the binary input with the weights.

    Integer weights give exact integer currents.
    """
    _check_weights(weights, spec)
    x = np.asarray(spikes_in)
    if tuple(x.shape) != tuple(spec.in_shape):
        raise ShapeError(f"input shape {x.shape} != layer in_shape {spec.in_shape}")

    w = np.asarray(weights)
    dtype = np.int64 if np.issubdtype(w.dtype, np.integer) else np.float64
    x = x.astype(dtype)
    w = w.astype(dtype)

    if spec.kind == LayerKind.fc:
        return (w @ x.reshape(-1)).reshape(spec.out_shape)

    pad = spec.padding
    if pad:
        x = np.pad(x, ((0, 0), (pad, pad), (pad, pad)))
    k, s = spec.kernel_size, spec.stride
    windows = sliding_window_view(x, (k, k), axis=(1, 2))[:, ::s, ::s]
    _, h_out, w_out = spec.out_shape
    windows = windows[:, :h_out, :w_out]
    return np.einsum("chwij,ocij->ohw", windows, w)


def maxpool_spikes(spikes_in: np.ndarray, window: int) -> np.ndarray:
    """Binary OR over non-overlapping window x window blocks of the trailing
    two (spatial) axes.
    """
    x = np.asarray(spikes_in)
    h, w = x.shape[-2:]
    if window < 1 or h % window or w % window:
        raise ShapeError(f"spatial dims {h}x{w} not divisible by pooling window {window}")
    blocks = x.reshape(*x.shape[:-2], h // window, window, w // window, window)
    return blocks.max(axis=(-3, -1)).astype(np.uint8)

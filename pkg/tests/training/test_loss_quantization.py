# stdlib
import math

# third party
import numpy as np
import pytest
import torch

# spikedse absolute
from spikedse.exceptions import DomainError
from spikedse.training import QuantizedWeights, cosine_lr, quantize_weights, rate_loss
from spikedse.training.quantization import quantize_tensor


def test_rate_loss() -> None:
    assert float(rate_loss([3.0, 1.0], 0)) == pytest.approx(0.1269, abs=1e-4)
    assert float(rate_loss([2.0, 2.0, 2.0, 2.0], 1)) == pytest.approx(math.log(4))
    assert float(rate_loss([100.0, 0.0, 0.0], 0)) < 1e-12

    batch = torch.tensor([[3.0, 1.0], [1.0, 3.0]])
    assert float(rate_loss(batch, torch.tensor([0, 1]))) == pytest.approx(0.1269, abs=1e-4)


def test_cosine_lr() -> None:
    assert cosine_lr(0, 50, 0.05, 0.001) == pytest.approx(0.05)
    assert cosine_lr(50, 50, 0.05, 0.001) == pytest.approx(0.001)
    assert cosine_lr(25, 50, 0.05, 0.001) == pytest.approx((0.05 + 0.001) / 2)
    lrs = [cosine_lr(e, 10, 0.1, 0.0) for e in range(11)]
    assert all(a >= b for a, b in zip(lrs, lrs[1:]))


def test_quantize_example() -> None:
    q, scale = quantize_tensor(np.array([-1.0, 0.5]))

    assert q.tolist() == [-7, 4]
    assert scale == pytest.approx(1 / 7)


def test_quantize_all_zero() -> None:
    q, scale = quantize_tensor(np.zeros((2, 3)))

    assert not q.any()
    assert scale == 1.0


def test_dequantization_error_bound() -> None:
    rng = np.random.default_rng(0)
    w = rng.normal(size=100_000)
    q, scale = quantize_tensor(w)

    assert q.min() >= -7 and q.max() <= 7
    assert np.all(np.abs(q * scale - w) <= scale / 2 + 1e-12)


@pytest.mark.parametrize("factor", [0.25, 2.0, 8.0])
def test_scale_equivariance(factor: float) -> None:
    rng = np.random.default_rng(1)
    w = rng.normal(size=(4, 3, 3, 3))
    q, scale = quantize_tensor(w)
    q2, scale2 = quantize_tensor(factor * w)

    np.testing.assert_array_equal(q, q2)
    assert scale2 == pytest.approx(factor * scale)


def test_quantize_weights_layers() -> None:
    qw = quantize_weights([np.ones((2, 2)), None, -np.ones(3)])

    assert qw.ints[1] is None and qw.scales[1] is None
    assert qw.ints[0].tolist() == [[7, 7], [7, 7]]
    deq = qw.dequantize()
    np.testing.assert_allclose(deq[2], -np.ones(3))
    with pytest.raises(DomainError):
        quantize_tensor(np.ones(2), bits=8)
    with pytest.raises(ValueError):
        QuantizedWeights(ints=[np.array([9], dtype=np.int8)], scales=[1.0])

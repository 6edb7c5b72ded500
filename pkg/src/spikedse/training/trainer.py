# stdlib
import copy
from typing import List, Optional, Tuple

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict
from sklearn.metrics import accuracy_score
import torch

# spikedse absolute
from spikedse.events.datasets import SpikeDataset
from spikedse.exceptions import NumericError
from spikedse.hooks import DefaultHooks, Hooks
import spikedse.logger as log
from spikedse.metrics.density import density_from_totals
from spikedse.surrogates.spec import SurrogateSpec
from spikedse.utils.decorators import benchmark
from spikedse.utils.distributions import enable_reproducible_results, torch_generator

# spikedse relative
from .checkpoint import Checkpoint, TrainMetadata
from .config import TrainConfig
from .loss import cosine_lr, rate_loss
from .model import SpikingNet
from .quantization import quantize_weights

Batch = Tuple[torch.Tensor, torch.Tensor]


class EvalResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    accuracy: float
    activity_density: float
    n_samples: int


def _backward(net: SpikingNet, x: torch.Tensor, y: torch.Tensor) -> Tuple[float, torch.Tensor]:
    net.zero_grad()
    counts = net(x)
    loss = rate_loss(counts, y)
    if not torch.isfinite(loss):
        layer, t = net.first_non_finite or (len(net.topology.layers) - 1, x.shape[1] - 1)
        raise NumericError("non-finite loss", layer=layer, timestep=t)
    loss.backward()
    return float(loss.detach()), counts.detach()


def bptt_gradients(
    net: SpikingNet, batch: Batch, surrogate: Optional[SurrogateSpec] = None
) -> List[Optional[np.ndarray]]:
    """Per-layer weight gradients of the rate loss, backpropagated through
    all timesteps with the surrogate derivative (None for pooling layers)."""
    if surrogate is not None:
        net.surrogate = surrogate
    _backward(net, *batch)
    return [
        None
        if p is None
        else (np.zeros(tuple(p.shape)) if p.grad is None else p.grad.detach().cpu().numpy().copy())
        for p in net.layer_weights()
    ]


def build_net(
    config: TrainConfig, input_shape: Tuple[int, int, int], generator: Optional[torch.Generator] = None
) -> SpikingNet:
    topology = config.build_topology(input_shape)
    return SpikingNet(
        topology,
        config.neuron_params(),
        config.surrogate(),
        detach_reset=config.detach_reset,
        generator=generator if generator is not None else torch_generator(config.seed),
    )


def _accuracy(net: SpikingNet, dataset: SpikeDataset, batch_size: int) -> Tuple[float, float]:
    x, y = dataset.tensors()
    preds, spikes = [], 0.0
    with torch.no_grad():
        for start in range(0, len(y), batch_size):
            counts = net(x[start : start + batch_size])
            preds.append(counts.argmax(dim=1))
            spikes += sum(float(c) for c in net.last_spike_counts if c is not None)
    pred = torch.cat(preds).numpy()
    density = density_from_totals(spikes, net.topology.timesteps, net.topology.n_neurons(), len(y))
    return float(accuracy_score(y.numpy(), pred)), density


@benchmark
def train(
    config: TrainConfig, dataset: SpikeDataset, hooks: Hooks = DefaultHooks()
) -> Checkpoint:
    """Train with BPTT, SGD + momentum and a cosine learning-rate schedule,
    then quantize the weights to 4 bits.

    The best weights on the validation split are kept (early stopping after
    `patience` epochs without improvement). A non-finite loss stops training;
    the checkpoint then holds the best weights seen so far and is flagged
    diverged.
    """
    enable_reproducible_results(config.seed)
    if dataset.timesteps != config.timesteps:
        log.warning(f"dataset has {dataset.timesteps} timesteps, config asks for {config.timesteps}")
    net = build_net(config, dataset.input_shape)

    train_set = dataset.split("train") if "train" in dataset.splits else dataset
    val_set = dataset.split("val") if dataset.has_split("val") else None
    x, y = train_set.tensors()
    shuffle = torch_generator(config.seed + 1)

    optimizer = torch.optim.SGD(net.parameters(), lr=config.lr0, momentum=config.momentum)
    history = []
    best_state = copy.deepcopy(net.state_dict())
    best_val, best_epoch, stale = -1.0, None, 0
    diverged: Optional[str] = None
    epochs_run = 0

    for epoch in range(config.epochs):
        lr = cosine_lr(epoch, config.epochs, config.lr0, config.lr_min)
        for group in optimizer.param_groups:
            group["lr"] = lr

        order = torch.randperm(len(y), generator=shuffle)
        losses, correct, spikes = [], 0, 0.0
        for start in range(0, len(y), config.batch_size):
            idx = order[start : start + config.batch_size]
            try:
                loss, counts = _backward(net, x[idx], y[idx])
            except NumericError as e:
                diverged = str(e)
                break
            losses.append(loss)
            correct += int((counts.argmax(dim=1) == y[idx]).sum())
            spikes += sum(float(c) for c in net.last_spike_counts if c is not None)
            optimizer.step()

        if diverged is not None:
            log.error(f"training diverged at epoch {epoch}: {diverged}")
            break

        epochs_run = epoch + 1
        density = density_from_totals(spikes, config.timesteps, net.topology.n_neurons(), len(y))
        record = {
            "epoch": epoch,
            "loss": float(np.mean(losses)) if losses else float("nan"),
            "train_accuracy": correct / len(y),
            "activity_density": density,
            "lr": lr,
        }
        if val_set is not None:
            record["val_accuracy"], _ = _accuracy(net, val_set, config.batch_size)
        history.append(record)
        log.info(
            f"epoch {epoch}: loss={record['loss']:.4f} acc={record['train_accuracy']:.3f} "
            f"density={density:.4f} lr={lr:.5f}"
        )
        hooks.heartbeat(topic="train", subtopic="epoch", event_type="end", **record)

        score = record.get("val_accuracy", record["train_accuracy"])
        if score > best_val:
            best_val, best_epoch, stale = score, epoch, 0
            best_state = copy.deepcopy(net.state_dict())
        else:
            stale += 1
            if stale >= config.patience:
                log.info(f"early stopping at epoch {epoch}, best epoch {best_epoch}")
                break

    net.load_state_dict(best_state)
    weights = net.numpy_weights()

    last = history[best_epoch] if best_epoch is not None else {}
    metadata = TrainMetadata(
        seed=config.seed,
        epochs_run=epochs_run,
        best_epoch=best_epoch,
        train_accuracy=last.get("train_accuracy"),
        val_accuracy=last.get("val_accuracy"),
        activity_density=last.get("activity_density"),
        diverged=diverged is not None,
        divergence=diverged,
    )
    return Checkpoint(
        config=config,
        input_shape=dataset.input_shape,
        weights=weights,
        quantized=quantize_weights(weights),
        metadata=metadata,
        history=history,
    )


def evaluate(
    checkpoint: Checkpoint, dataset: SpikeDataset, use_quantized: bool = False, batch_size: int = 64
) -> EvalResult:
    """Accuracy (argmax of output spike counts) and mean activity density of
    the float or the dequantized 4-bit weights."""
    net = build_net(checkpoint.config, checkpoint.input_shape)
    weights = checkpoint.dequantized_weights() if use_quantized else checkpoint.weights
    net.set_weights(weights)
    net.eval()
    accuracy, density = _accuracy(net, dataset, batch_size)
    log.debug(f"evaluate quantized={use_quantized}: acc={accuracy:.4f} density={density:.4f}")
    return EvalResult(accuracy=accuracy, activity_density=density, n_samples=len(dataset))

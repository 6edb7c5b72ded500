# stdlib
from pathlib import Path
from statistics import mean, median

# third party
import numpy as np
import pytest
from sklearn.linear_model import LogisticRegression
import torch

# spikedse absolute
from spikedse.core import LifParams, Topology
from spikedse.dse import simulate_samples
from spikedse.events import DatasetConfig, make_moving_bar_dataset
from spikedse.exceptions import ConfigError
from spikedse.hwsim import HwConfig
from spikedse.surrogates import SurrogateKind, SurrogateSpec
from spikedse.training import (
    SpikeFunction,
    SpikingNet,
    TrainConfig,
    bptt_gradients,
    build_net,
    evaluate,
    load_checkpoint,
    rate_loss,
    save_checkpoint,
    train,
)
from spikedse.utils.distributions import torch_generator

TINY_DATA = DatasetConfig(width=8, height=8, n_per_class=4, seed=1)


def tiny_config(**kwargs: object) -> TrainConfig:
    base = dict(topology="4C3-MP2-FC4", timesteps=4, epochs=2, batch_size=8, dataset=TINY_DATA)
    base.update(kwargs)
    return TrainConfig(**base)


def _relaxed_net(kind: SurrogateKind) -> SpikingNet:
    topology = Topology.parse("FC6-FC3", (1, 3, 3), 3)
    return SpikingNet(
        topology,
        LifParams(beta=0.5, theta=1.0),
        SurrogateSpec.from_slope(kind, 2.0),
        relaxed=True,
        detach_reset=False,
        generator=torch_generator(3),
        dtype=torch.float64,
    )


@pytest.mark.parametrize("kind", [SurrogateKind.FS, SurrogateKind.ATAN, SurrogateKind.SRE])
def test_gradient_check(kind: SurrogateKind) -> None:
    net = _relaxed_net(kind)
    gen = torch_generator(11)
    x = (torch.rand((4, 3, 1, 3, 3), generator=gen) < 0.5).to(torch.float64)
    y = torch.tensor([0, 1, 2, 1])

    grads = bptt_gradients(net, (x, y))

    h = 1e-4
    agree, total = 0, 0
    for param, grad in zip(net.layer_weights(), grads):
        flat = param.data.view(-1)
        for i in range(flat.numel()):
            orig = float(flat[i])
            with torch.no_grad():
                flat[i] = orig + h
                up = float(_loss(net, x, y))
                flat[i] = orig - h
                down = float(_loss(net, x, y))
                flat[i] = orig
            numeric = (up - down) / (2 * h)
            analytic = float(grad.reshape(-1)[i])
            total += 1
            agree += abs(analytic - numeric) <= 1e-4 * abs(numeric) + 1e-9
    assert agree / total >= 0.95


def _loss(net: SpikingNet, x: torch.Tensor, y: torch.Tensor) -> torch.Tensor:
    return rate_loss(net(x), y)


def test_zero_weights_zero_gradients() -> None:
    config = tiny_config()
    net = build_net(config, (2, 8, 8))
    net.set_weights([None if w is None else np.zeros_like(w) for w in net.numpy_weights()])
    x = torch.zeros((2, 4, 2, 8, 8))

    grads = bptt_gradients(net, (x, torch.tensor([0, 1])))

    assert all(g is None or not np.any(g) for g in grads)
    assert grads[1] is None


def test_sso_zero_variance_gradient() -> None:
    spec = SurrogateSpec(kind=SurrogateKind.SSO, sso_sigma2=0.0)
    x = torch.tensor([-1.0, -0.2, 0.0, 0.5], requires_grad=True)

    SpikeFunction.apply(x, spec, 0, 0, False).sum().backward()

    assert x.grad.tolist() == [0.0, 0.0, 1.0, 1.0]


def test_train_is_deterministic() -> None:
    config = tiny_config()
    dataset = make_moving_bar_dataset(config.dataset, config.timesteps)

    a = train(config, dataset)
    b = train(config, dataset)

    for wa, wb in zip(a.weights, b.weights):
        if wa is None:
            assert wb is None
            continue
        np.testing.assert_array_equal(wa, wb)
    assert a.history == b.history
    assert a.metadata.epochs_run == 2
    assert set(a.history[0]) == {"epoch", "loss", "train_accuracy", "activity_density", "lr", "val_accuracy"}


def test_zero_epochs_keeps_initialization() -> None:
    config = tiny_config(epochs=0)
    dataset = make_moving_bar_dataset(config.dataset, config.timesteps)

    ckpt = train(config, dataset)
    init = build_net(config, dataset.input_shape).numpy_weights()

    for w, w0 in zip(ckpt.weights, init):
        if w is not None:
            np.testing.assert_array_equal(w, w0)
    assert ckpt.metadata.epochs_run == 0
    assert ckpt.history == []


def test_checkpoint_roundtrip(tmp_path: Path) -> None:
    config = tiny_config(epochs=1)
    dataset = make_moving_bar_dataset(config.dataset, config.timesteps)
    ckpt = train(config, dataset)

    save_checkpoint(ckpt, tmp_path)
    loaded = load_checkpoint(tmp_path)

    assert loaded.config == ckpt.config
    assert loaded.input_shape == ckpt.input_shape
    assert loaded.metadata == ckpt.metadata
    for a, b in zip(loaded.weights, ckpt.weights):
        if a is not None:
            np.testing.assert_array_equal(a, b)
    for a, b in zip(loaded.quantized.ints, ckpt.quantized.ints):
        if a is not None:
            np.testing.assert_array_equal(a, b)
    assert loaded.quantized.scales == ckpt.quantized.scales
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "checkpoint.json",
        "checkpoint.w0.f32",
        "checkpoint.w0.q4",
        "checkpoint.w2.f32",
        "checkpoint.w2.q4",
    ]
    for a, b in zip(loaded.dequantized_weights(), loaded.weights):
        if a is not None:
            assert np.all(np.abs(a - b) <= max(np.abs(b).max() / 7, 1e-12) / 2 + 1e-6)


def test_load_checkpoint_missing(tmp_path: Path) -> None:
    with pytest.raises(ConfigError):
        load_checkpoint(tmp_path)


def test_evaluate_random_net_is_near_chance() -> None:
    config = tiny_config(epochs=0, dataset=DatasetConfig(n_per_class=20, seed=2))
    dataset = make_moving_bar_dataset(config.dataset, config.timesteps)
    ckpt = train(config, dataset)

    result = evaluate(ckpt, dataset)

    assert 0.0 <= result.accuracy <= 0.6
    assert 0.0 <= result.activity_density <= 1.0
    assert result.n_samples == len(dataset)


def test_train_config_load(tmp_path: Path) -> None:
    path = tmp_path / "config.json"
    path.write_text(
        '{"beta": 0.7, "threshold": 0.5, "slope": 10, "surrogate_type": "atan", "neuron_type": "lapicque"}'
    )
    config = TrainConfig.load(path, seed=3)

    assert (config.beta, config.threshold, config.slope, config.seed) == (0.7, 0.5, 10, 3)
    assert config.surrogate().atan_alpha == 10
    assert config.neuron_params().decay == pytest.approx(0.7)

    path.write_text('{"betta": 0.7}')
    with pytest.raises(ConfigError):
        TrainConfig.load(path)
    with pytest.raises(ConfigError):
        TrainConfig.load(tmp_path / "missing.json")


def test_task_is_separable() -> None:
    dataset = make_moving_bar_dataset(DatasetConfig(n_per_class=20), 8)
    n = len(dataset)
    # per-timestep column and row profiles
    columns = dataset.x.sum(axis=(2, 3)).reshape(n, -1)
    rows = dataset.x.sum(axis=(2, 4)).reshape(n, -1)
    features = np.concatenate([columns, rows], axis=1).astype(np.float64)
    train_idx, test_idx = dataset.splits["train"], dataset.splits["test"]

    clf = LogisticRegression(max_iter=2000).fit(features[train_idx], dataset.y[train_idx])

    assert clf.score(features[test_idx], dataset.y[test_idx]) >= 0.9


@pytest.mark.slow
def test_learns_moving_bar_task() -> None:
    accuracies = []
    for seed in range(3):
        config = TrainConfig(seed=seed, dataset=DatasetConfig(seed=seed))
        dataset = make_moving_bar_dataset(config.dataset, config.timesteps)
        ckpt = train(config, dataset)
        accuracies.append(evaluate(ckpt, dataset.split("test")).accuracy)

    assert median(accuracies) >= 0.9


@pytest.mark.slow
def test_loss_decreases() -> None:
    config = TrainConfig(epochs=12, patience=50)
    dataset = make_moving_bar_dataset(config.dataset, config.timesteps)
    ckpt = train(config, dataset)

    assert ckpt.history[10]["loss"] < ckpt.history[0]["loss"]


@pytest.mark.slow
def test_sre_is_sparser_than_fs() -> None:
    densities = {SurrogateKind.FS: [], SurrogateKind.SRE: []}
    cycles = {SurrogateKind.FS: [], SurrogateKind.SRE: []}
    for seed in range(3):
        for kind in densities:
            config = TrainConfig(surrogate_type=kind, slope=5.0, seed=seed, dataset=DatasetConfig(seed=seed))
            dataset = make_moving_bar_dataset(config.dataset, config.timesteps)
            ckpt = train(config, dataset)
            test = dataset.split("test")
            densities[kind].append(evaluate(ckpt, test).activity_density)
            reports = simulate_samples(ckpt, test, HwConfig(), 8)
            cycles[kind].append(mean(r.total_cycles for r in reports))

    assert median(densities[SurrogateKind.SRE]) <= median(densities[SurrogateKind.FS])
    assert median(cycles[SurrogateKind.SRE]) <= median(cycles[SurrogateKind.FS])

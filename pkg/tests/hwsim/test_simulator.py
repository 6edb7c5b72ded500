# stdlib
from pathlib import Path

# third party
import numpy as np
import pandas as pd
import pytest

# spikedse absolute
from spikedse.core import (
    FixedNeuron,
    FixedPointFormat,
    LapParams,
    LayerSpec,
    LifParams,
    SpikeTrain,
    Topology,
    forward_network_fixed,
    to_fixed_weights,
)
from spikedse.exceptions import ConfigError, DomainError, ShapeError
from spikedse.hwsim import (
    HwConfig,
    agu_targets,
    analytic_latency,
    conv_workload,
    penc_scan,
    simulate_layer,
    simulate_network,
    simulate_quantized,
    write_report,
)
from spikedse.hwsim.reports import CSV_COLUMNS
from spikedse.training import Checkpoint, TrainConfig, quantize_weights

LIF = LifParams(beta=0.5, theta=1.0)


def _one_spike(shape: tuple, index: tuple, timesteps: int = 1) -> SpikeTrain:
    data = np.zeros((timesteps, *shape), dtype=np.uint8)
    data[(0, *index)] = 1
    return SpikeTrain(data)


def test_penc_scan() -> None:
    assert penc_scan(np.array([[0, 1], [1, 0]])).tolist() == [1, 2]
    assert penc_scan(np.zeros((2, 3, 3))).tolist() == []


def test_agu_targets() -> None:
    spec = LayerSpec.conv((1, 10, 10), 4, 3)

    interior = agu_targets(55, spec)
    assert interior.count == 36
    assert interior.rows.tolist() == [3, 4, 5]
    assert interior.krows.tolist() == [2, 1, 0]

    corner = agu_targets(0, spec)
    assert corner.count == 4
    assert corner.krows.tolist() == [0] and corner.kcols.tolist() == [0]

    fc = agu_targets(7, LayerSpec.fc((2, 3, 3), 5))
    assert fc.count == 5 and fc.channel == 7

    with pytest.raises(ShapeError):
        agu_targets(100, spec)


def test_single_interior_spike_cycles() -> None:
    spec = LayerSpec.conv((1, 10, 10), 4, 3)
    q = np.ones(spec.weight_shape(), dtype=np.int8)
    inputs = _one_spike((1, 10, 10), (0, 5, 5), timesteps=2)

    report = simulate_layer(spec, inputs, q, 0.1, LIF)

    # C_ovHD + one PENC cycle + 36 accumulates + 36 updates of 3 cycles
    assert report.cycles_per_t == [155, 10]
    assert report.accumulates == [36, 0]
    assert report.updates == [36, 0]
    assert report.cycles == 165

    parallel = simulate_layer(spec, inputs, q, 0.1, LIF, HwConfig(P=2))
    assert parallel.cycles_per_t[0] == 10 + 1 + 18 + 54


def test_zero_input_costs_overhead_only() -> None:
    topo = Topology.parse("4C3-MP2-FC3", (2, 10, 10), 5)
    rng = np.random.default_rng(0)
    qw = quantize_weights([rng.normal(size=topo.layers[0].weight_shape()), None, rng.normal(size=(3, 64))])

    report = simulate_quantized(topo, SpikeTrain.zeros(5, (2, 10, 10)), qw, [LIF, None, LIF])

    assert report.total_cycles == 5 * 10 * 3
    assert all(layer.cycles_per_t == [10] * 5 for layer in report.layers)
    assert report.activity_density == 0.0
    assert report.output_counts == [0, 0, 0]


def test_latency_is_affine_in_active_inputs() -> None:
    spec = LayerSpec.fc((8, 1, 1), 3)
    q = np.zeros((3, 8), dtype=np.int8)
    cycles = []
    for n in range(1, 6):
        data = np.zeros((1, 8, 1, 1), dtype=np.uint8)
        data[0, :n] = 1
        cycles.append(simulate_layer(spec, SpikeTrain(data), q, 1.0, LIF).cycles)

    # C_ovHD + n PENC + 3n accumulates + 3 updates of 3 cycles
    assert cycles == [19 + 4 * n for n in range(1, 6)]


# interior pixels of a 12x12 input, 3 apart so 3x3 receptive fields never overlap
SPREAD = [(y, x) for y in (2, 5, 8) for x in (2, 5, 8)]


def _interior_spikes(n: int) -> SpikeTrain:
    data = np.zeros((1, 1, 12, 12), dtype=np.uint8)
    for y, x in SPREAD[:n]:
        data[0, 0, y, x] = 1
    return SpikeTrain(data)


def test_conv_latency_fits_analytic_model() -> None:
    spec = LayerSpec.conv((1, 12, 12), 2, 3)
    q = np.zeros(spec.weight_shape(), dtype=np.int8)
    counts = np.arange(1, len(SPREAD) + 1)
    cycles = np.array([simulate_layer(spec, _interior_spikes(int(n)), q, 1.0, LIF).cycles for n in counts])

    slope, intercept = np.polyfit(counts, cycles, 1)
    fitted = HwConfig(C_ovHD=int(round(intercept)), T_accum=int(round(slope)))

    assert fitted.C_ovHD == HwConfig().C_ovHD
    # PENC + 18 accumulates + 18 updates of 3 cycles per input spike
    assert fitted.T_accum == 1 + 18 + 18 * 3
    assert [analytic_latency(int(n), fitted) for n in counts] == cycles.tolist()


def test_accumulates_match_conv_workload() -> None:
    spec = LayerSpec.conv((2, 10, 10), 3, 3)
    rng = np.random.default_rng(5)
    data = np.zeros((4, 2, 10, 10), dtype=np.uint8)
    # rows and columns 2..7 keep every 3x3 receptive field inside the 8x8 output
    data[:, :, 2:8, 2:8] = rng.random((4, 2, 6, 6)) < 0.3
    inputs = SpikeTrain(data)
    q = rng.integers(-7, 8, size=spec.weight_shape()).astype(np.int8)

    report = simulate_layer(spec, inputs, q, 0.05, LIF)

    per_t = inputs.counts.sum(axis=1).tolist()
    assert report.accumulates == [conv_workload(spec.kernel_area, spec.out_channels, [n]) for n in per_t]
    assert sum(report.accumulates) == conv_workload(spec.kernel_area, spec.out_channels, per_t)


def test_inhibitory_spike_does_not_lower_cycles() -> None:
    spec = LayerSpec.fc((2, 1, 1), 1)
    q = np.array([[7, -7]], dtype=np.int8)
    params = LifParams(beta=1.0, theta=1.0)
    excite = np.zeros((5, 2, 1, 1), dtype=np.uint8)
    excite[0, 0] = 1
    both = excite.copy()
    both[0, 1] = 1

    alone = simulate_layer(spec, SpikeTrain(excite), q, 0.5, params)
    mixed = simulate_layer(spec, SpikeTrain(both), q, 0.5, params)

    # u = 3.5 fires three times, the re-checks at t=1,2 are free
    assert alone.output_spikes_per_t == [1, 1, 1, 0, 0]
    assert alone.armed_updates == [0, 1, 1, 0, 0]
    assert alone.cycles_per_t == [15, 10, 10, 10, 10]
    assert mixed.cycles_per_t == [17, 10, 10, 10, 10]
    assert mixed.cycles >= alone.cycles


@pytest.mark.parametrize("grammar", ["4C3p1", "3C3s2", "FC5"])
def test_more_input_spikes_never_fewer_cycles(grammar: str) -> None:
    rng = np.random.default_rng(11)
    topo = Topology.parse(grammar, (2, 6, 6), 6)
    spec = topo.layers[0]
    params = LifParams(beta=0.5, theta=0.5)
    for _ in range(20):
        q = rng.integers(-7, 8, size=spec.weight_shape()).astype(np.int8)
        sparse = rng.random((6, 2, 6, 6)) < 0.2
        dense = sparse | (rng.random((6, 2, 6, 6)) < 0.2)

        low = simulate_layer(spec, SpikeTrain(sparse.astype(np.uint8)), q, 0.2, params)
        high = simulate_layer(spec, SpikeTrain(dense.astype(np.uint8)), q, 0.2, params)

        assert high.cycles >= low.cycles
        assert all(h >= lo for h, lo in zip(high.cycles_per_t, low.cycles_per_t))


def test_memory_traffic_follows_activity() -> None:
    spec = LayerSpec.conv((3, 6, 6), 4, 3)
    q = np.zeros(spec.weight_shape(), dtype=np.int8)
    data = np.zeros((3, 3, 6, 6), dtype=np.uint8)
    data[0, 1, 2, 2] = data[0, 1, 3, 4] = data[2, 1, 1, 1] = 1

    report = simulate_layer(spec, SpikeTrain(data), q, 1.0, LIF)
    idle = simulate_layer(spec, SpikeTrain.zeros(3, (3, 6, 6)), q, 1.0, LIF)

    assert report.membrane_reads + report.membrane_writes <= 2 * report.neurons_touched
    # only channel 1 is active, in two of the three timesteps
    assert report.weight_fetches == 2 * spec.kernel_area * spec.out_channels
    assert (idle.weight_fetches, idle.membrane_reads, idle.membrane_writes) == (0, 0, 0)


def test_lapicque_wins_below_three_quarters_activity() -> None:
    spec = LayerSpec.conv((1, 12, 12), 2, 3)
    q = np.zeros(spec.weight_shape(), dtype=np.int8)
    hw = HwConfig(lapicque_update_cycles=4)
    lap = LapParams.from_beta(0.5, 1.0)

    lif_report = simulate_layer(spec, _interior_spikes(8), q, 1.0, LIF, hw)
    lap_report = simulate_layer(spec, _interior_spikes(5), q, 1.0, lap, hw)
    lap_same = simulate_layer(spec, _interior_spikes(8), q, 1.0, lap, hw)

    assert (lif_report.update_cycles, lap_report.update_cycles) == (3, 4)
    assert lap_report.neurons_touched < 0.75 * lif_report.neurons_touched
    assert lap_report.cycles < lif_report.cycles
    assert lap_same.cycles > lif_report.cycles


def test_update_costs_per_neuron_model() -> None:
    fmt = FixedPointFormat()
    hw = HwConfig()

    assert hw.update_cycles(FixedNeuron.from_params(LifParams(beta=0.5, theta=1.0), fmt)) == 3
    assert hw.update_cycles(FixedNeuron.from_params(LifParams(beta=0.3, theta=1.0), fmt)) == 4
    assert hw.update_cycles(FixedNeuron.from_params(LapParams.from_beta(0.5, 1.0), fmt)) == 6
    assert HwConfig(lif_update_cycles=7).update_cycles(
        FixedNeuron.from_params(LifParams(beta=0.5, theta=1.0), fmt)
    ) == 7


@pytest.mark.parametrize(
    "params",
    [
        LifParams(beta=0.5, theta=1.0),
        LifParams(beta=0.3, theta=0.8),
        LifParams(beta=0.9, theta=1.0, reset_mode="zero"),
        LapParams.from_beta(0.7, 1.0),
    ],
)
@pytest.mark.parametrize("seed", [0, 1])
def test_matches_dense_fixed_point(params: object, seed: int) -> None:
    topo = Topology.parse("4C3-MP2-8C3p1-FC5", (2, 10, 10), 6)
    rng = np.random.default_rng(seed)
    floats = [
        None if layer.weight_shape() is None else rng.normal(0, 0.6, size=layer.weight_shape())
        for layer in topo.layers
    ]
    qw = quantize_weights(floats)
    layer_params = [params if layer.has_neurons else None for layer in topo.layers]
    inputs = SpikeTrain((rng.random((6, 2, 10, 10)) < 0.3).astype(np.uint8))
    fmt = FixedPointFormat()

    report = simulate_quantized(topo, inputs, qw, layer_params)
    fixed = [None if q is None else to_fixed_weights(q, s, fmt)[0] for q, s in zip(qw.ints, qw.scales)]
    trace = forward_network_fixed(topo, inputs, fixed, layer_params, fmt)

    assert sum(train.total() for train in trace.spikes) > 0
    for sim_train, ref_train in zip(report.spikes, trace.spikes):
        assert sim_train == ref_train
    for sim_state, ref_state in zip(report.states, trace.states):
        if ref_state is None:
            assert sim_state is None
        else:
            np.testing.assert_array_equal(sim_state.u, ref_state.u)
    assert report.output_counts == trace.output_counts().tolist()


def test_analytic_model() -> None:
    assert analytic_latency(300) == 310
    assert analytic_latency(300, HwConfig(P=4)) == 78
    assert analytic_latency(0) == 10
    assert conv_workload(9, 4, [10, 20]) == 1080
    with pytest.raises(DomainError):
        analytic_latency(-1)


def _checkpoint() -> Checkpoint:
    rng = np.random.default_rng(0)
    weights = [rng.normal(size=(4, 128)).astype(np.float32)]
    return Checkpoint(
        config=TrainConfig(topology="FC4", timesteps=3),
        input_shape=(2, 8, 8),
        weights=weights,
        quantized=quantize_weights(weights),
    )


def test_simulate_network_and_report(tmp_path: Path) -> None:
    ckpt = _checkpoint()
    rng = np.random.default_rng(1)
    inputs = SpikeTrain((rng.random((3, 2, 8, 8)) < 0.2).astype(np.uint8))

    report = simulate_network(Topology.parse("FC4", (2, 8, 8), 3), inputs, ckpt)
    paths = write_report(report, tmp_path)

    frame = pd.read_csv(paths["csv"])
    assert frame.columns.tolist() == CSV_COLUMNS
    assert len(frame) == 3
    assert frame["cycles"].sum() == report.total_cycles
    assert report.latency_ms == pytest.approx(report.total_cycles / 1e5)
    assert report.energy_mj > 0
    assert paths["json"].read_text().endswith("\n")

    with pytest.raises(ShapeError):
        simulate_network(Topology.parse("FC3", (2, 8, 8), 3), inputs, ckpt)


def test_hw_config_load(tmp_path: Path) -> None:
    path = tmp_path / "hw.json"
    path.write_text('{"P": 4, "C_ovHD": 12, "op_costs": {"mul": 3}}')
    hw = HwConfig.load(path)
    assert (hw.P, hw.C_ovHD, hw.op_costs.mul) == (4, 12, 3)

    path.write_text('{"P": 0}')
    with pytest.raises(ConfigError):
        HwConfig.load(path)
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        HwConfig.load(path)


def _random_topology(rng: np.random.Generator) -> Topology:
    channels = int(rng.integers(1, 3))
    size = int(rng.choice([4, 6, 8]))
    tokens = []
    h, pooled = size, True
    for _ in range(int(rng.integers(0, 3))):
        if not pooled and h % 2 == 0 and rng.random() < 0.4:
            tokens.append("MP2")
            h, pooled = h // 2, True
            continue
        pad = int(rng.integers(0, 2))
        if h + 2 * pad < 3:
            break
        stride = int(rng.choice([1, 1, 2]))
        suffix = (f"s{stride}" if stride > 1 else "") + ("p1" if pad else "")
        tokens.append(f"{int(rng.integers(1, 5))}C3{suffix}")
        h, pooled = (h + 2 * pad - 3) // stride + 1, False
    tokens.append(f"FC{int(rng.integers(2, 6))}")
    return Topology.parse("-".join(tokens), (channels, size, size), int(rng.integers(1, 9)))


def _random_neuron(rng: np.random.Generator) -> object:
    beta = float(rng.choice([0.25, 0.5, 0.6, 0.9]))
    theta = float(rng.uniform(0.3, 1.2))
    reset = str(rng.choice(["subtract", "zero"]))
    if rng.random() < 0.5:
        return LapParams.from_beta(beta, theta, reset_mode=reset)
    return LifParams(beta=beta, theta=theta, reset_mode=reset)


def test_matches_dense_fixed_point_random_cases() -> None:
    rng = np.random.default_rng(2024)
    fmt = FixedPointFormat()
    seen: set = set()
    for _ in range(50):
        topo = _random_topology(rng)
        neuron = _random_neuron(rng)
        seen.add((type(neuron).__name__, neuron.reset_mode.value))
        seen.update(layer.stride for layer in topo.layers)
        params = [neuron if layer.has_neurons else None for layer in topo.layers]
        qw = quantize_weights(
            [None if layer.weight_shape() is None else rng.normal(0, 0.5, size=layer.weight_shape())
             for layer in topo.layers]
        )
        inputs = SpikeTrain((rng.random((topo.timesteps, *topo.input_shape)) < 0.4).astype(np.uint8))

        report = simulate_quantized(topo, inputs, qw, params)
        fixed = [None if q is None else to_fixed_weights(q, s, fmt)[0] for q, s in zip(qw.ints, qw.scales)]
        trace = forward_network_fixed(topo, inputs, fixed, params, fmt)

        for sim_train, ref_train in zip(report.spikes, trace.spikes):
            assert sim_train == ref_train, topo.render()

    assert {(kind, reset) for kind in ("LifParams", "LapParams") for reset in ("subtract", "zero")} <= seen
    assert 2 in seen

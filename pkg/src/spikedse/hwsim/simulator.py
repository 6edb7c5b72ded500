"""Cycle-level model of the event-driven accelerator.

Per timestep, each layer scans its input spikes with the priority encoder,
generates the addresses of the affected output neurons, accumulates their
fixed-point weights and updates only the neurons that need it. Layers run
one after the other within a timestep.

Membranes decay lazily: a neuron that receives no input keeps its stored
potential and catches up on the missed zero-input steps the next time it is
updated (or at the end of the run). Neurons left at or above threshold by a
subtract reset are re-checked every step until they fall below it; the
re-checks are reported as `armed_updates` and cost no update cycles, so the
latency only counts neurons that received an accumulate. The spikes and
final membranes are bit-identical to the dense fixed-point reference.
"""
# stdlib
from collections import Counter
from typing import Dict, List, Optional, Sequence

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# spikedse absolute
from spikedse.core.fixed_point import FixedNeuron, FixedPointFormat, to_fixed_weights
from spikedse.core.neurons import NeuronParams, NeuronState
from spikedse.core.ops import maxpool_spikes
from spikedse.core.spikes import SpikeTrain
from spikedse.core.topology import LayerKind, LayerSpec, Topology
from spikedse.exceptions import ShapeError
import spikedse.logger as log
from spikedse.metrics.density import activity_density
from spikedse.metrics.energy import estimate_energy
from spikedse.training.checkpoint import Checkpoint
from spikedse.training.quantization import QuantizedWeights
from spikedse.utils.decorators import benchmark
from spikedse.utils.numeric import ceil_div

# spikedse relative
from .config import HwConfig
from .units import agu_targets, penc_scan


class LayerSimReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: int
    token: str
    kind: str
    cycles: int = 0
    cycles_per_t: List[int] = Field(default_factory=list)
    penc_cycles: List[int] = Field(default_factory=list)
    n_active: List[int] = Field(default_factory=list)
    accumulates: List[int] = Field(default_factory=list)
    updates: List[int] = Field(default_factory=list)
    armed_updates: List[int] = Field(default_factory=list)
    output_spikes_per_t: List[int] = Field(default_factory=list)
    membrane_reads: int = 0
    membrane_writes: int = 0
    weight_fetches: int = 0
    update_cycles: int = 0
    output_spikes: List[int] = Field(default_factory=list)
    saturations: int = 0
    op_counts: Dict[str, int] = Field(default_factory=dict)

    # not serialized
    spikes: Optional[SpikeTrain] = Field(default=None, exclude=True)
    state: Optional[NeuronState] = Field(default=None, exclude=True)

    @property
    def neurons_touched(self) -> int:
        return int(sum(self.updates))


class SimReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    layers: List[LayerSimReport]
    timesteps: int
    total_cycles: int
    freq_mhz: float
    latency_ms: float
    activity_density: float
    energy_mj: float
    op_counts: Dict[str, int]
    output_counts: List[int]
    prediction: int

    @property
    def spikes(self) -> List[SpikeTrain]:
        return [layer.spikes for layer in self.layers]

    @property
    def states(self) -> List[Optional[NeuronState]]:
        return [layer.state for layer in self.layers]


def _simulate_pool(spec: LayerSpec, inputs: SpikeTrain, hw: HwConfig, index: int) -> LayerSimReport:
    report = LayerSimReport(index=index, token=spec.token(), kind=spec.kind.value)
    out = np.zeros((inputs.timesteps, *spec.out_shape), dtype=np.uint8)
    for t in range(inputs.timesteps):
        n_active = len(penc_scan(inputs[t]))
        out[t] = maxpool_spikes(inputs[t], spec.window)
        penc = hw.penc_cycles_per_active * n_active
        cycles = hw.C_ovHD + penc
        report.cycles_per_t.append(cycles)
        report.penc_cycles.append(penc)
        report.n_active.append(n_active)
        report.accumulates.append(0)
        report.updates.append(0)
        report.armed_updates.append(0)
        report.output_spikes_per_t.append(int(out[t].sum()))
    report.cycles = sum(report.cycles_per_t)
    report.spikes = SpikeTrain(out)
    report.output_spikes = report.spikes.counts.sum(axis=0).tolist()
    return report


def simulate_layer(
    spec: LayerSpec,
    inputs: SpikeTrain,
    q: Optional[np.ndarray],
    scale: Optional[float],
    params: Optional[NeuronParams],
    hw: HwConfig = HwConfig(),
    index: int = 0,
) -> LayerSimReport:
    """Event-driven execution of one layer over all timesteps.

    Args:
        spec: the layer.
        inputs: input spike train shaped like spec.in_shape.
        q: 4-bit weights of the layer (None for pooling).
        scale: their quantization scale.
        params: neuron parameters (None for pooling).
        hw: accelerator parameters.
        index: position of the layer, for reporting.
    """
    if tuple(inputs.shape) != tuple(spec.in_shape):
        raise ShapeError(f"layer {index}: input shape {inputs.shape} != {spec.in_shape}")
    if spec.kind == LayerKind.maxpool:
        return _simulate_pool(spec, inputs, hw, index)
    if q is None or params is None or scale is None:
        raise ShapeError(f"layer {index} ({spec.token()}) needs weights and neuron params")
    if tuple(np.shape(q)) != spec.weight_shape():
        raise ShapeError(f"layer {index}: weights shape {np.shape(q)} != {spec.weight_shape()}")

    fmt: FixedPointFormat = hw.fixed_point
    w_fx, saturations = to_fixed_weights(q, scale, fmt)
    neuron = FixedNeuron.from_params(params, fmt)
    update_cycles = hw.update_cycles(neuron)
    update_ops = hw.update_ops(neuron)

    n_out = spec.n_neurons
    u = np.zeros(n_out, dtype=np.int64)
    last = np.full(n_out, -1, dtype=np.int64)
    out = np.zeros((inputs.timesteps, n_out), dtype=np.uint8)
    report = LayerSimReport(index=index, token=spec.token(), kind=spec.kind.value)
    report.update_cycles = update_cycles
    ops: Counter = Counter()

    def catch_up(sel: np.ndarray, until: int) -> None:
        # apply the zero-input steps each neuron missed, up to timestep `until`
        missed = until - last[sel]
        for k in range(int(missed.max()) if len(sel) else 0):
            lagging = sel[missed > k]
            u[lagging], _ = fmt.clip(neuron.integrate(u[lagging], 0))
        last[sel] = until

    for t in range(inputs.timesteps):
        frame = inputs[t]
        active = penc_scan(frame)
        acc = np.zeros(spec.out_shape, dtype=np.int64)
        touched = np.zeros(spec.out_shape, dtype=bool)
        work = 0

        if spec.kind == LayerKind.fc:
            for idx in active:
                acc.reshape(-1)[:] += w_fx[:, idx]
                work += spec.out_features
            if len(active):
                touched[:] = True
            report.weight_fetches += spec.out_features * len(active)
        else:
            for idx in active:
                tg = agu_targets(int(idx), spec)
                if tg.count == 0:
                    continue
                block = w_fx[:, tg.channel][:, tg.krows[:, None], tg.kcols[None, :]]
                acc[:, tg.rows[:, None], tg.cols[None, :]] += block
                touched[:, tg.rows[:, None], tg.cols[None, :]] = True
                work += tg.count
            c_in, h, w = spec.in_shape
            active_channels = len(np.unique(active // (h * w)))
            report.weight_fetches += active_channels * spec.kernel_area * spec.out_channels

        touched_flat = touched.reshape(-1)
        sel = np.flatnonzero(touched_flat | (u >= neuron.theta))
        catch_up(sel, t - 1)
        u_sel, spikes, n_sat = neuron.step(u[sel], acc.reshape(-1)[sel], fmt)
        u[sel] = u_sel
        last[sel] = t
        out[t, sel] = spikes
        saturations += n_sat

        updates = int(touched_flat.sum())
        penc = hw.penc_cycles_per_active * len(active)
        cycles = (
            hw.C_ovHD
            + penc
            + ceil_div(work * hw.T_accum, hw.P)
            + ceil_div(updates * update_cycles, hw.P)
        )
        report.cycles_per_t.append(cycles)
        report.penc_cycles.append(penc)
        report.n_active.append(len(active))
        report.accumulates.append(work)
        report.updates.append(updates)
        report.armed_updates.append(len(sel) - updates)
        report.output_spikes_per_t.append(int(spikes.sum()))
        ops["add"] += work
        for op, n in update_ops.items():
            ops[op] += n * len(sel)

    catch_up(np.arange(n_out), inputs.timesteps - 1)

    report.cycles = sum(report.cycles_per_t)
    report.membrane_reads = report.neurons_touched
    report.membrane_writes = report.neurons_touched
    report.saturations = saturations
    ops["mem"] += report.membrane_reads + report.membrane_writes + report.weight_fetches
    report.op_counts = {op: int(ops.get(op, 0)) for op in ("add", "shift", "compare", "mul", "mem")}
    report.spikes = SpikeTrain(out.reshape(inputs.timesteps, *spec.out_shape))
    report.state = NeuronState(u=u.reshape(spec.out_shape))
    report.output_spikes = report.spikes.counts.sum(axis=0).tolist()
    if saturations:
        log.warning(f"layer {index} ({spec.token()}): {saturations} fixed-point saturations")
    return report


def simulate_quantized(
    topology: Topology,
    inputs: SpikeTrain,
    weights: QuantizedWeights,
    params: Sequence[Optional[NeuronParams]],
    hw: HwConfig = HwConfig(),
) -> SimReport:
    """Run every layer in order; the output train of a layer feeds the next."""
    n_layers = len(topology.layers)
    if len(weights.ints) != n_layers or len(params) != n_layers:
        raise ShapeError(f"expected {n_layers} weight/param entries")
    if tuple(inputs.shape) != tuple(topology.input_shape):
        raise ShapeError(f"input shape {inputs.shape} != topology input {topology.input_shape}")

    layers: List[LayerSimReport] = []
    x = inputs
    for idx, spec in enumerate(topology.layers):
        rep = simulate_layer(spec, x, weights.ints[idx], weights.scales[idx], params[idx], hw, index=idx)
        log.debug(
            f"layer {idx} {spec.token()}: cycles={rep.cycles} spikes={sum(rep.output_spikes)} "
            f"updates={rep.neurons_touched}"
        )
        layers.append(rep)
        x = rep.spikes

    total = sum(layer.cycles for layer in layers)
    ops: Counter = Counter()
    for layer in layers:
        ops.update(layer.op_counts)
    op_counts = {op: int(ops.get(op, 0)) for op in ("add", "shift", "compare", "mul", "mem")}
    spiking = [layer.spikes for layer, spec in zip(layers, topology.layers) if spec.has_neurons]
    output_counts = x.data.reshape(x.timesteps, -1).sum(axis=0)

    return SimReport(
        layers=layers,
        timesteps=inputs.timesteps,
        total_cycles=total,
        freq_mhz=hw.freq_mhz,
        latency_ms=total / (hw.freq_mhz * 1e3),
        activity_density=activity_density(spiking),
        energy_mj=estimate_energy(op_counts, hw.energy),
        op_counts=op_counts,
        output_counts=output_counts.tolist(),
        prediction=int(np.argmax(output_counts)),
    )


@benchmark
def simulate_network(
    topology: Topology, inputs: SpikeTrain, checkpoint: Checkpoint, hw: HwConfig = HwConfig()
) -> SimReport:
    """Simulate a trained checkpoint on one input spike train."""
    expected = checkpoint.topology()
    if expected.render() != topology.render() or tuple(expected.input_shape) != tuple(topology.input_shape):
        raise ShapeError(
            f"checkpoint topology {expected.render()} {expected.input_shape} does not match "
            f"{topology.render()} {topology.input_shape}"
        )
    return simulate_quantized(topology, inputs, checkpoint.quantized, checkpoint.layer_params(), hw)

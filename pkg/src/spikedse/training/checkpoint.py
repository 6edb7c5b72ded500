# stdlib
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

# third party
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# spikedse absolute
from spikedse.core.neurons import NeuronParams
from spikedse.core.topology import Topology
from spikedse.exceptions import ConfigError, ShapeError
from spikedse.utils.serialization import load_blob, load_json, save_blob, save_json

# spikedse relative
from .config import TrainConfig
from .quantization import QuantizedWeights

FORMAT = "spikedse-checkpoint"
FORMAT_VERSION = 1
MANIFEST = "checkpoint.json"


class TrainMetadata(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int = 0
    epochs_run: int = 0
    best_epoch: Optional[int] = None
    train_accuracy: Optional[float] = None
    val_accuracy: Optional[float] = None
    activity_density: Optional[float] = None
    diverged: bool = False
    divergence: Optional[str] = None


class Checkpoint(BaseModel):
    """Trained network: float weights, their 4-bit quantization and the
    configuration they were trained with."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: TrainConfig
    input_shape: Tuple[int, int, int]
    weights: List[Optional[np.ndarray]]
    quantized: QuantizedWeights
    metadata: TrainMetadata = TrainMetadata()
    history: List[Dict[str, Any]] = Field(default_factory=list)

    def topology(self) -> Topology:
        return self.config.build_topology(self.input_shape)

    def layer_params(self) -> List[Optional[NeuronParams]]:
        return self.config.layer_params(self.topology())

    def dequantized_weights(self) -> List[Optional[np.ndarray]]:
        return self.quantized.dequantize()

    def manifest(self) -> Dict[str, Any]:
        topology = self.topology()
        layers = []
        for idx, (layer, w, scale) in enumerate(
            zip(topology.layers, self.weights, self.quantized.scales)
        ):
            entry: Dict[str, Any] = {"index": idx, "token": layer.token(), "kind": layer.kind.value}
            if w is not None:
                entry.update(
                    {
                        "shape": list(w.shape),
                        "float_blob": f"checkpoint.w{idx}.f32",
                        "quant_blob": f"checkpoint.w{idx}.q4",
                        "scale": float(scale),
                    }
                )
            layers.append(entry)
        params = self.config.neuron_params()
        return {
            "format": FORMAT,
            "version": FORMAT_VERSION,
            "topology": topology.render(),
            "input_shape": list(self.input_shape),
            "timesteps": topology.timesteps,
            "neuron": {
                "type": self.config.neuron_type.value,
                "beta": self.config.beta,
                "threshold": self.config.threshold,
                "reset_mode": self.config.reset_mode.value,
                "decay": params.decay,
                "gain": params.gain,
            },
            "config": self.config.to_dict(),
            "metadata": self.metadata.model_dump(mode="json"),
            "layers": layers,
        }


def save_checkpoint(ckpt: Checkpoint, out_dir: Union[str, Path]) -> Path:
    """Write checkpoint.json plus little-endian weight blobs into `out_dir`."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = ckpt.manifest()
    for entry in manifest["layers"]:
        if "float_blob" not in entry:
            continue
        idx = entry["index"]
        save_blob(out_dir / entry["float_blob"], ckpt.weights[idx], "<f4")
        save_blob(out_dir / entry["quant_blob"], ckpt.quantized.ints[idx], "i1")
    save_json(out_dir / MANIFEST, manifest)
    return out_dir / MANIFEST


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    """Load from a checkpoint directory or its checkpoint.json."""
    path = Path(path)
    manifest_path = path / MANIFEST if path.is_dir() else path
    if not manifest_path.exists():
        raise ConfigError(f"checkpoint manifest {manifest_path} not found")
    manifest = load_json(manifest_path)
    if manifest.get("format") != FORMAT:
        raise ConfigError(f"{manifest_path} is not a {FORMAT} manifest")

    root = manifest_path.parent
    config = TrainConfig.parse(manifest["config"])
    input_shape = tuple(manifest["input_shape"])
    topology = config.build_topology(input_shape)
    if len(manifest["layers"]) != len(topology.layers):
        raise ShapeError("checkpoint layer list does not match its topology")

    weights: List[Optional[np.ndarray]] = []
    ints: List[Optional[np.ndarray]] = []
    scales: List[Optional[float]] = []
    for layer, entry in zip(topology.layers, manifest["layers"]):
        if "float_blob" not in entry:
            weights.append(None)
            ints.append(None)
            scales.append(None)
            continue
        shape = tuple(entry["shape"])
        if shape != layer.weight_shape():
            raise ShapeError(f"layer {entry['index']}: blob shape {shape} != {layer.weight_shape()}")
        weights.append(load_blob(root / entry["float_blob"], "<f4", shape).astype(np.float32))
        ints.append(load_blob(root / entry["quant_blob"], "i1", shape).astype(np.int8))
        scales.append(float(entry["scale"]))

    return Checkpoint(
        config=config,
        input_shape=input_shape,
        weights=weights,
        quantized=QuantizedWeights(ints=ints, scales=scales),
        metadata=TrainMetadata(**manifest.get("metadata", {})),
    )

# stdlib
from enum import Enum
import re
from typing import List, Optional, Tuple

# third party
from pydantic import BaseModel, ConfigDict, Field

# spikedse absolute
from spikedse.exceptions import ConfigError, ShapeError

Shape = Tuple[int, int, int]

_CONV = re.compile(r"^(\d+)C(\d+)(?:s(\d+))?(?:p(\d+))?$")
_POOL = re.compile(r"^MP(\d+)$")
_FC = re.compile(r"^FC(\d+)$")


class LayerKind(str, Enum):
    conv = "conv"
    maxpool = "maxpool"
    fc = "fc"


class LayerSpec(BaseModel):
    """One layer of the network. Shapes are always (channels, height, width);
    a fully-connected layer produces (out_features, 1, 1).
    """

    model_config = ConfigDict(frozen=True)

    kind: LayerKind
    in_shape: Shape
    out_shape: Shape
    out_channels: int = 0
    kernel_size: int = 0
    stride: int = 1
    padding: int = 0
    window: int = 0
    out_features: int = 0

    @classmethod
    def conv(
        cls,
        in_shape: Shape,
        out_channels: int,
        kernel_size: int,
        stride: int = 1,
        padding: int = 0,
    ) -> "LayerSpec":
        if out_channels < 1 or kernel_size < 1 or stride < 1 or padding < 0:
            raise ConfigError(
                f"invalid conv layer C_out={out_channels} F={kernel_size} s={stride} p={padding}"
            )
        c, h, w = in_shape
        h_pad, w_pad = h + 2 * padding, w + 2 * padding
        if h_pad < kernel_size or w_pad < kernel_size:
            raise ShapeError(
                f"kernel {kernel_size} larger than padded input {h_pad}x{w_pad}"
            )
        out_shape = (
            out_channels,
            (h_pad - kernel_size) // stride + 1,
            (w_pad - kernel_size) // stride + 1,
        )
        return cls(
            kind=LayerKind.conv,
            in_shape=tuple(in_shape),
            out_shape=out_shape,
            out_channels=out_channels,
            kernel_size=kernel_size,
            stride=stride,
            padding=padding,
        )

    @classmethod
    def maxpool(cls, in_shape: Shape, window: int) -> "LayerSpec":
        if window < 1:
            raise ConfigError(f"invalid pooling window {window}")
        c, h, w = in_shape
        if h % window or w % window:
            raise ShapeError(f"MP{window} needs spatial dims divisible by {window}, got {h}x{w}")
        return cls(
            kind=LayerKind.maxpool,
            in_shape=tuple(in_shape),
            out_shape=(c, h // window, w // window),
            window=window,
        )

    @classmethod
    def fc(cls, in_shape: Shape, out_features: int) -> "LayerSpec":
        if out_features < 1:
            raise ConfigError(f"invalid FC width {out_features}")
        return cls(
            kind=LayerKind.fc,
            in_shape=tuple(in_shape),
            out_shape=(out_features, 1, 1),
            out_features=out_features,
        )

    @property
    def has_neurons(self) -> bool:
        return self.kind != LayerKind.maxpool

    @property
    def kernel_area(self) -> int:
        """F of the workload model."""
        return self.kernel_size * self.kernel_size

    @property
    def in_features(self) -> int:
        c, h, w = self.in_shape
        return c * h * w

    @property
    def n_neurons(self) -> int:
        c, h, w = self.out_shape
        return c * h * w

    def weight_shape(self) -> Optional[Tuple[int, ...]]:
        if self.kind == LayerKind.conv:
            return (self.out_channels, self.in_shape[0], self.kernel_size, self.kernel_size)
        if self.kind == LayerKind.fc:
            return (self.out_features, self.in_features)
        return None

    def token(self) -> str:
        if self.kind == LayerKind.conv:
            tok = f"{self.out_channels}C{self.kernel_size}"
            if self.stride != 1:
                tok += f"s{self.stride}"
            if self.padding != 0:
                tok += f"p{self.padding}"
            return tok
        if self.kind == LayerKind.maxpool:
            return f"MP{self.window}"
        return f"FC{self.out_features}"


class Topology(BaseModel):
    """Ordered layers plus the input shape and the number of timesteps.

    The grammar is a dash-separated token list: ``XCY`` is X filters of size
    YxY (optional ``s<stride>`` and ``p<padding>`` suffixes), ``MPZ`` is a ZxZ
    max-pool, ``FCn`` a fully-connected layer with n outputs.
    """

    model_config = ConfigDict(frozen=True)

    layers: Tuple[LayerSpec, ...]
    input_shape: Shape
    timesteps: int = Field(ge=1)

    @classmethod
    def parse(cls, grammar: str, input_shape: Shape, timesteps: int) -> "Topology":
        if timesteps < 1:
            raise ConfigError(f"timesteps must be >= 1, got {timesteps}")
        tokens = [tok.strip() for tok in grammar.strip().split("-") if tok.strip()]
        if not tokens:
            raise ConfigError("empty topology grammar")

        layers: List[LayerSpec] = []
        shape = tuple(int(v) for v in input_shape)
        if len(shape) != 3 or min(shape) < 1:
            raise ShapeError(f"input shape must be (C, H, W) with positive dims, got {input_shape}")

        for tok in tokens:
            if m := _CONV.match(tok):
                layer = LayerSpec.conv(
                    shape,
                    out_channels=int(m.group(1)),
                    kernel_size=int(m.group(2)),
                    stride=int(m.group(3) or 1),
                    padding=int(m.group(4) or 0),
                )
            elif m := _POOL.match(tok):
                layer = LayerSpec.maxpool(shape, int(m.group(1)))
            elif m := _FC.match(tok):
                layer = LayerSpec.fc(shape, int(m.group(1)))
            else:
                raise ConfigError(f"unknown layer token '{tok}' in '{grammar}'")
            layers.append(layer)
            shape = layer.out_shape

        return cls(layers=tuple(layers), input_shape=tuple(input_shape), timesteps=timesteps)

    def render(self) -> str:
        return "-".join(layer.token() for layer in self.layers)

    @property
    def grammar(self) -> str:
        return self.render()

    @property
    def output_shape(self) -> Shape:
        return self.layers[-1].out_shape

    @property
    def num_classes(self) -> int:
        return self.layers[-1].n_neurons

    def neuron_layers(self) -> List[int]:
        return [idx for idx, layer in enumerate(self.layers) if layer.has_neurons]

    def n_neurons(self) -> int:
        return sum(layer.n_neurons for layer in self.layers if layer.has_neurons)

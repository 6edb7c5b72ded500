# spikedse relative
from .checkpoint import (  # noqa: F401
    Checkpoint,
    TrainMetadata,
    load_checkpoint,
    save_checkpoint,
)
from .config import NeuronType, TrainConfig  # noqa: F401
from .loss import cosine_lr, rate_loss  # noqa: F401
from .model import SpikeFunction, SpikingNet  # noqa: F401
from .quantization import QuantizedWeights, quantize_weights  # noqa: F401
from .trainer import EvalResult, bptt_gradients, build_net, evaluate, train  # noqa: F401

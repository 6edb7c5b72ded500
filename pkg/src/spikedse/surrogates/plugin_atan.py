# stdlib
import math
from typing import Any, List

# spikedse absolute
import spikedse.surrogates.base as base
import spikedse.surrogates.core.params as params
from spikedse.surrogates.spec import SurrogateSpec


class ArctanPlugin(base.SurrogatePlugin):
    """Arctangent surrogate, (1/pi) / (1 + (pi*alpha*x/2)^2).

    Smooth and symmetric with Cauchy-like tails; peak 1/pi at the threshold.

    Relaxed primitive: 1/2 + arctan(pi*alpha*x/2) / pi, normalization pi*alpha/2.
    """

    @staticmethod
    def name() -> str:
        return "atan"

    @staticmethod
    def hyperparameter_space(*args: Any, **kwargs: Any) -> List[params.Params]:
        return [params.Float("slope", 1, 48, 4)]

    @staticmethod
    def grad(x: Any, spec: SurrogateSpec, layer: int = 0, timestep: int = 0) -> Any:
        z = math.pi * spec.atan_alpha * x / 2.0
        return (1.0 / math.pi) / (1.0 + z * z)

    @staticmethod
    def primitive(x: Any, spec: SurrogateSpec) -> Any:
        xp = base.array_module(x)
        return 0.5 + xp.arctan(math.pi * spec.atan_alpha * x / 2.0) / math.pi

    @staticmethod
    def normalization(spec: SurrogateSpec) -> float:
        return math.pi * spec.atan_alpha / 2.0


plugin = ArctanPlugin

# stdlib
from typing import Any, List

# spikedse absolute
import spikedse.surrogates.base as base
import spikedse.surrogates.core.params as params
from spikedse.surrogates.spec import SurrogateSpec


class FastSigmoidPlugin(base.SurrogatePlugin):
    """Fast sigmoid surrogate, 1 / (1 + k|x|)^2.

    Cheap to evaluate, with a sharp peak of 1 at the threshold. Larger `k`
    narrows the peak.

    Relaxed primitive: (1 + kx / (1 + k|x|)) / 2, normalization k/2.
    """

    @staticmethod
    def name() -> str:
        return "fast_sigmoid"

    @staticmethod
    def hyperparameter_space(*args: Any, **kwargs: Any) -> List[params.Params]:
        return [params.Float("slope", 1, 48, 4)]

    @staticmethod
    def grad(x: Any, spec: SurrogateSpec, layer: int = 0, timestep: int = 0) -> Any:
        return 1.0 / (1.0 + spec.fs_k * abs(x)) ** 2

    @staticmethod
    def primitive(x: Any, spec: SurrogateSpec) -> Any:
        k = spec.fs_k
        return 0.5 * (1.0 + k * x / (1.0 + k * abs(x)))

    @staticmethod
    def normalization(spec: SurrogateSpec) -> float:
        return spec.fs_k / 2.0


plugin = FastSigmoidPlugin

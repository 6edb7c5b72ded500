# stdlib
from typing import Any, List

# spikedse absolute
import spikedse.surrogates.base as base
import spikedse.surrogates.core.params as params
from spikedse.surrogates.spec import SurrogateSpec


class SpikeRateEscapePlugin(base.SurrogatePlugin):
    """Escape-rate surrogate, k * exp(-beta * |x + U_thr - 1|).

    Exponential (Boltzmann-like) tails make gradients vanish quickly away
    from the peak, which sits at x = 1 - U_thr with height k.

    Relaxed primitive: (1 + sign(z) * (1 - exp(-beta*|z|))) / 2 with
    z = x + U_thr - 1, normalization beta / (2k).
    """

    @staticmethod
    def name() -> str:
        return "spike_rate_escape"

    @staticmethod
    def hyperparameter_space(*args: Any, **kwargs: Any) -> List[params.Params]:
        return [params.Float("slope", 1, 48, 4)]

    @staticmethod
    def grad(x: Any, spec: SurrogateSpec, layer: int = 0, timestep: int = 0) -> Any:
        xp = base.array_module(x)
        z = x + (spec.u_thr - 1.0)
        return spec.sre_k * xp.exp(-spec.sre_beta * abs(z))

    @staticmethod
    def primitive(x: Any, spec: SurrogateSpec) -> Any:
        xp = base.array_module(x)
        z = x + (spec.u_thr - 1.0)
        return 0.5 * (1.0 + xp.sign(z) * (1.0 - xp.exp(-spec.sre_beta * abs(z))))

    @staticmethod
    def normalization(spec: SurrogateSpec) -> float:
        return spec.sre_beta / (2.0 * spec.sre_k)


plugin = SpikeRateEscapePlugin

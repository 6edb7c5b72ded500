# spikedse relative
from .base import Hooks  # noqa: F401
from .default import DefaultHooks  # noqa: F401

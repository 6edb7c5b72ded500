# spikedse relative
from .analytic import analytic_latency, conv_workload  # noqa: F401
from .config import HwConfig, OpCosts  # noqa: F401
from .reports import report_frame, write_report  # noqa: F401
from .simulator import (  # noqa: F401
    LayerSimReport,
    SimReport,
    simulate_layer,
    simulate_network,
    simulate_quantized,
)
from .units import AguTargets, agu_targets, penc_scan  # noqa: F401

# spikedse relative
from .density import activity_density, density_from_totals  # noqa: F401
from .energy import EnergyModel, estimate_energy  # noqa: F401
from .pareto import dominates, pareto_front  # noqa: F401
from .records import TrialRecord, TrialStatus  # noqa: F401

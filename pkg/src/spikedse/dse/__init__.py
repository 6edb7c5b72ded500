# spikedse relative
from .pipeline import load_trial, run_trial, save_trial, simulate_samples, trial_hash  # noqa: F401
from .ranking import RankPolicy, rank_trials, top_k_per_group  # noqa: F401
from .spec import Phase, SweepSpec, TrialSpec, expand_grid  # noqa: F401
from .sweep import (  # noqa: F401
    INDEX_COLUMNS,
    load_results,
    records_frame,
    run_sweep,
    sweep_dir,
    write_index,
)

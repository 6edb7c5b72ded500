# stdlib
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

# third party
from joblib import Parallel, delayed
import pandas as pd

# spikedse absolute
from spikedse.exceptions import SweepCancelled
from spikedse.hooks import DefaultHooks, Hooks
import spikedse.logger as log
from spikedse.metrics.records import TrialRecord
from spikedse.utils.decorators import benchmark
from spikedse.utils.parallel import n_sweep_jobs

# spikedse relative
from .pipeline import TRIAL_FILE, load_trial, run_trial, trial_hash
from .spec import SweepSpec, expand_grid

INDEX_FILE = "index.csv"
CONFIG_COLUMNS = ["surrogate_type", "slope", "neuron_type", "beta", "threshold"]
INDEX_COLUMNS = [
    "trial_hash",
    "group",
    "status",
    "seed",
    *CONFIG_COLUMNS,
    "accuracy",
    "float_accuracy",
    "total_cycles",
    "latency_ms",
    "activity_density",
    "energy_mj",
    "edp",
    "epochs_run",
    "error",
]


def records_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """One row per trial, sorted by trial hash. Timestamps are left out so
    identical sweeps give identical tables."""
    rows = []
    for record in sorted(records, key=lambda r: r.trial_hash):
        row = record.model_dump(mode="json", exclude={"config", "timestamp"})
        row.update({key: record.train_config.get(key) for key in CONFIG_COLUMNS})
        rows.append(row)
    return pd.DataFrame(rows, columns=INDEX_COLUMNS)


def write_index(records: Sequence[TrialRecord], path: Union[str, Path]) -> Path:
    path = Path(path)
    records_frame(records).to_csv(path, index=False, lineterminator="\n")
    return path


def load_results(results_dir: Union[str, Path]) -> List[TrialRecord]:
    """Every trial.json below `results_dir`, ordered by trial hash."""
    records = [load_trial(p.parent) for p in sorted(Path(results_dir).rglob(TRIAL_FILE))]
    return sorted((r for r in records if r is not None), key=lambda r: r.trial_hash)


def sweep_dir(spec: SweepSpec, out_dir: Union[str, Path]) -> Path:
    return Path(out_dir) / "results" / spec.name


@benchmark
def run_sweep(
    spec: SweepSpec,
    out_dir: Union[str, Path],
    n_jobs: Optional[int] = None,
    hooks: Hooks = DefaultHooks(),
) -> List[TrialRecord]:
    """Run every grid point for every seed and return the completed trials.

    Each trial writes into results/<sweep-name>/<trial-hash>/. Trials whose
    trial.json already exists are loaded instead of recomputed. index.csv is
    rewritten by this process after every finished trial; workers never
    touch it. Failed and diverged trials are recorded but not returned.
    """
    root = sweep_dir(spec, out_dir)
    root.mkdir(parents=True, exist_ok=True)
    trials = expand_grid(spec)
    n_jobs = n_sweep_jobs() if n_jobs is None else n_jobs
    log.info(f"sweep {spec.name}: {len(trials)} trials, phase {spec.phase.value}, {n_jobs} jobs")

    done: Dict[str, TrialRecord] = {}
    pending = []
    queued = set()
    for trial in trials:
        key = trial_hash(trial.config, spec.hw)
        if key in done or key in queued:
            continue
        existing = load_trial(root / key)
        if existing is not None:
            log.info(f"trial {key} already recorded, skipping")
            done[key] = existing
        else:
            pending.append((key, trial))
            queued.add(key)

    index_path = root / INDEX_FILE
    write_index(list(done.values()), index_path)

    if hooks.cancel():
        raise SweepCancelled("sweep cancelled")

    dispatcher = Parallel(max_nbytes=None, backend="loky", n_jobs=n_jobs, return_as="generator")
    results = dispatcher(
        delayed(run_trial)(trial.config, spec.hw, root / key, trial.group, spec.sim_samples)
        for key, trial in pending
    )
    for record in results:
        done[record.trial_hash] = record
        write_index(list(done.values()), index_path)
        log.info(f"trial {record.trial_hash} [{record.group}] {record.status.value}")
        hooks.heartbeat(
            topic="sweep",
            subtopic="trial",
            event_type="end",
            name=spec.name,
            trial_hash=record.trial_hash,
            status=record.status.value,
            accuracy=record.accuracy,
            latency_ms=record.latency_ms,
        )
        if hooks.cancel():
            raise SweepCancelled(f"sweep cancelled after {len(done)} trials")

    hooks.finish()
    ordered = []
    seen = set()
    for trial in trials:
        key = trial_hash(trial.config, spec.hw)
        if key not in seen and done[key].ok:
            ordered.append(done[key])
        seen.add(key)
    return ordered

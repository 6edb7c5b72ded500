# stdlib
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Union

# third party
import numpy as np
import pandas as pd

# spikedse absolute
from spikedse.core.spikes import SpikeTrain
from spikedse.events.datasets import SpikeDataset, make_moving_bar_dataset
from spikedse.exceptions import SpikeDSEError
from spikedse.hooks import DefaultHooks, Hooks
from spikedse.hwsim.config import HwConfig
from spikedse.hwsim.reports import report_frame
from spikedse.hwsim.simulator import SimReport, simulate_network
import spikedse.logger as log
from spikedse.metrics.records import TrialRecord, TrialStatus
from spikedse.training.checkpoint import Checkpoint, save_checkpoint
from spikedse.training.config import TrainConfig
from spikedse.training.trainer import evaluate, train
from spikedse.utils.numeric import round_half_away
from spikedse.utils.serialization import load_json, save_json, stable_hash

TRIAL_FILE = "trial.json"
REPORT_FILE = "report.csv"


def trial_hash(config: TrainConfig, hw: HwConfig) -> str:
    """Identity of a trial: everything that can change its outcome."""
    return stable_hash({"train": config.to_dict(), "hw": hw.model_dump(mode="json")})


def load_trial(trial_dir: Union[str, Path]) -> Optional[TrialRecord]:
    path = Path(trial_dir) / TRIAL_FILE
    if not path.exists():
        return None
    return TrialRecord.model_validate(load_json(path))


def save_trial(record: TrialRecord, trial_dir: Union[str, Path]) -> Path:
    path = Path(trial_dir) / TRIAL_FILE
    save_json(path, record.model_dump(mode="json"))
    return path


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def simulate_samples(
    checkpoint: Checkpoint, dataset: SpikeDataset, hw: HwConfig, n_samples: int
) -> List[SimReport]:
    topology = checkpoint.topology()
    n = min(n_samples, len(dataset))
    return [
        simulate_network(topology, SpikeTrain(dataset.x[i]), checkpoint, hw) for i in range(n)
    ]


def run_trial(
    config: TrainConfig,
    hw: HwConfig,
    trial_dir: Union[str, Path],
    group: str = "",
    sim_samples: int = 4,
    hooks: Hooks = DefaultHooks(),
) -> TrialRecord:
    """Train, quantize, simulate and record one configuration.

    Accuracy is measured with the quantized weights on the test split;
    cycles, latency, density and energy are means over the first
    `sim_samples` test inputs run through the simulator. Failures are
    recorded instead of raised; unexpected ones also log their traceback.
    """
    trial_dir = Path(trial_dir)
    trial_dir.mkdir(parents=True, exist_ok=True)
    key = trial_hash(config, hw)
    common = dict(
        trial_hash=key,
        config={"train": config.to_dict(), "hw": hw.model_dump(mode="json")},
        group=group,
        seed=config.seed,
    )

    try:
        dataset = make_moving_bar_dataset(config.dataset, config.timesteps)
        checkpoint = train(config, dataset, hooks=hooks)
        save_checkpoint(checkpoint, trial_dir)
        if checkpoint.metadata.diverged:
            record = TrialRecord(
                status=TrialStatus.diverged,
                error=checkpoint.metadata.divergence,
                epochs_run=checkpoint.metadata.epochs_run,
                timestamp=_now(),
                **common,
            )
            save_trial(record, trial_dir)
            return record

        test = dataset.split("test") if dataset.has_split("test") else dataset
        accuracy = evaluate(checkpoint, test, use_quantized=True).accuracy
        float_accuracy = evaluate(checkpoint, test).accuracy

        reports = simulate_samples(checkpoint, test, hw, sim_samples)
        frames = []
        for i, report in enumerate(reports):
            frame = report_frame(report)
            frame.insert(0, "sample", i)
            frames.append(frame)
        pd.concat(frames, ignore_index=True).to_csv(
            trial_dir / REPORT_FILE, index=False, lineterminator="\n"
        )

        cycles = float(np.mean([r.total_cycles for r in reports]))
        record = TrialRecord.completed(
            energy_mj=float(np.mean([r.energy_mj for r in reports])),
            latency_ms=cycles / (hw.freq_mhz * 1e3),
            accuracy=accuracy,
            float_accuracy=float_accuracy,
            total_cycles=int(round_half_away(cycles)),
            activity_density=float(np.mean([r.activity_density for r in reports])),
            epochs_run=checkpoint.metadata.epochs_run,
            timestamp=_now(),
            **common,
        )
    except Exception as e:
        if not isinstance(e, SpikeDSEError):
            log.traceback(e)
        log.error(f"trial {key} failed: {e}")
        record = TrialRecord(status=TrialStatus.failed, error=str(e), timestamp=_now(), **common)

    save_trial(record, trial_dir)
    return record

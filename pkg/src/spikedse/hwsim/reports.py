# stdlib
from pathlib import Path
from typing import Any, Dict, Union

# third party
import pandas as pd

# spikedse absolute
from spikedse.utils.serialization import save_json

# spikedse relative
from .simulator import SimReport

CSV_COLUMNS = [
    "layer",
    "token",
    "kind",
    "t",
    "n_active",
    "penc_cycles",
    "accumulates",
    "updates",
    "cycles",
    "output_spikes",
]


def report_dict(report: SimReport) -> Dict[str, Any]:
    data = report.model_dump(mode="json")
    data["layers"] = [
        {**layer, "neurons_touched": rep.neurons_touched}
        for layer, rep in zip(data["layers"], report.layers)
    ]
    return data


def report_frame(report: SimReport) -> pd.DataFrame:
    """One row per layer per timestep."""
    rows = []
    for layer in report.layers:
        for t in range(report.timesteps):
            rows.append(
                {
                    "layer": layer.index,
                    "token": layer.token,
                    "kind": layer.kind,
                    "t": t,
                    "n_active": layer.n_active[t],
                    "penc_cycles": layer.penc_cycles[t],
                    "accumulates": layer.accumulates[t],
                    "updates": layer.updates[t],
                    "cycles": layer.cycles_per_t[t],
                    "output_spikes": layer.output_spikes_per_t[t],
                }
            )
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_report(report: SimReport, out_dir: Union[str, Path], stem: str = "report") -> Dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / f"{stem}.json"
    csv_path = out_dir / f"{stem}.csv"
    save_json(json_path, report_dict(report))
    report_frame(report).to_csv(csv_path, index=False, lineterminator="\n")
    return {"json": json_path, "csv": csv_path}

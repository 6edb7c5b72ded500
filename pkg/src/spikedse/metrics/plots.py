# stdlib
from pathlib import Path
from typing import Any, Sequence, Union

# third party
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# spikedse relative
from .pareto import pareto_front  # noqa: E402

FRONT_COLOR = "#d62728"
TRIAL_COLOR = "#7f7f7f"


def plot_pareto(records: Sequence[Any], path: Union[str, Path]) -> Path:
    """Accuracy vs latency scatter with the Pareto front highlighted, saved as SVG.

    Every trial is drawn as its own element with id ``trial-<hash>``; front
    members carry the ``front`` class colour and are joined by a step line.
    The file is byte-stable for identical records.
    """
    path = Path(path)
    front = pareto_front(records)
    front_ids = {id(r) for r in front}

    with matplotlib.rc_context({"svg.hashsalt": "spikedse", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for rec in sorted(records, key=lambda r: r.trial_hash):
            on_front = id(rec) in front_ids
            ax.plot(
                [rec.latency_ms],
                [rec.accuracy * 100],
                marker="o",
                markersize=7 if on_front else 5,
                color=FRONT_COLOR if on_front else TRIAL_COLOR,
                linestyle="none",
                gid=f"trial-{rec.trial_hash}",
            )

        steps = sorted(front, key=lambda r: (r.latency_ms, -r.accuracy))
        if len(steps) > 1:
            ax.step(
                [r.latency_ms for r in steps],
                [r.accuracy * 100 for r in steps],
                where="post",
                color=FRONT_COLOR,
                linewidth=1,
                gid="pareto-front",
            )

        ax.set_xlabel("Latency [ms]")
        ax.set_ylabel("Accuracy [%]")
        ax.set_title("Accuracy vs latency")
        ax.grid(True, linewidth=0.3)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    return path

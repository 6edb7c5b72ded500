# stdlib
import functools
from pathlib import Path
import sys
from typing import Any, Callable, List, Optional

# third party
import click
import pandas as pd

# spikedse absolute
from spikedse.dse import SweepSpec, load_results, records_frame, run_sweep
from spikedse.events import make_moving_bar_dataset, load_events, rasterize
from spikedse.exceptions import DivergenceError, EmptyInputError, SpikeDSEError
from spikedse.hwsim import HwConfig, simulate_network, write_report
import spikedse.logger as log
from spikedse.metrics.pareto import pareto_front
from spikedse.metrics.plots import plot_pareto
from spikedse.training import TrainConfig, evaluate, load_checkpoint, save_checkpoint, train
from spikedse.utils.serialization import save_json
from spikedse.version import __version__

LOG_FILE = "spikedse.log"
TRAINING_LOG = "training_log.csv"
TRAINING_LOG_COLUMNS = ["epoch", "loss", "train_accuracy", "val_accuracy", "activity_density", "lr"]


def _configure_logging(verbose: int, out: Path) -> List[int]:
    level = log.level_for_verbosity(verbose)
    if level is None:
        return []
    out.mkdir(parents=True, exist_ok=True)
    return [log.add(sys.stderr, level=level), log.add(out / LOG_FILE, level=level)]


def common_options(func: Callable) -> Callable:
    """--out, --seed and --verbose, shared by every subcommand, plus the
    mapping of errors to exit codes."""

    @click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True)
    @click.option("--seed", type=int, default=None, help="Overrides the seed of the config file.")
    @click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG; also logs to <out>/spikedse.log.")
    @functools.wraps(func)
    def wrapper(out: Path, seed: Optional[int], verbose: int, **kwargs: Any) -> None:
        handlers = _configure_logging(verbose, out)
        try:
            func(out=out, seed=seed, **kwargs)
        except SpikeDSEError as e:
            log.error(f"{func.__name__}: {e}")
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)
        except Exception as e:
            log.traceback(e)
            click.echo(f"unexpected error: {e}", err=True)
            sys.exit(1)
        finally:
            for handler in handlers:
                log.remove(handler)

    return wrapper


def _train_config(config: Optional[Path], seed: Optional[int]) -> TrainConfig:
    if config is None:
        return TrainConfig.parse({} if seed is None else {"seed": seed})
    return TrainConfig.load(config, seed=seed)


@click.group()
@click.version_option(__version__, prog_name="spikedse")
def cli() -> None:
    """Train spiking networks, simulate them on the event-driven accelerator
    model and explore the design space."""


@cli.command("train")
@click.option("--config", type=click.Path(dir_okay=False, path_type=Path), default=None)
@common_options
def cmd_train(config: Optional[Path], out: Path, seed: Optional[int]) -> None:
    """Train a network and write its checkpoint and training log to --out."""
    cfg = _train_config(config, seed)
    dataset = make_moving_bar_dataset(cfg.dataset, cfg.timesteps)
    checkpoint = train(cfg, dataset)
    save_checkpoint(checkpoint, out)
    pd.DataFrame(checkpoint.history, columns=TRAINING_LOG_COLUMNS).to_csv(
        out / TRAINING_LOG, index=False, lineterminator="\n"
    )
    meta = checkpoint.metadata
    if meta.diverged:
        raise DivergenceError(f"training diverged: {meta.divergence}")
    click.echo(
        f"trained {meta.epochs_run} epochs, best epoch {meta.best_epoch}, "
        f"val accuracy {meta.val_accuracy}"
    )


@cli.command("eval")
@click.option("--checkpoint", type=click.Path(path_type=Path), required=True)
@click.option("--split", type=click.Choice(["train", "val", "test"]), default="test", show_default=True)
@common_options
def cmd_eval(checkpoint: Path, split: str, out: Path, seed: Optional[int]) -> None:
    """Accuracy of the float and quantized weights on a split of the
    checkpoint's dataset; --seed regenerates the dataset with another seed."""
    ckpt = load_checkpoint(checkpoint)
    data_cfg = ckpt.config.dataset
    if seed is not None:
        data_cfg = data_cfg.model_copy(update={"seed": seed})
    dataset = make_moving_bar_dataset(data_cfg, ckpt.config.timesteps)
    if not dataset.has_split(split):
        raise EmptyInputError(f"split '{split}' is empty")
    subset = dataset.split(split)

    result = {
        "split": split,
        "n_samples": len(subset),
        "float": evaluate(ckpt, subset).model_dump(),
        "quantized": evaluate(ckpt, subset, use_quantized=True).model_dump(),
    }
    out.mkdir(parents=True, exist_ok=True)
    save_json(out / "eval.json", result)
    click.echo(
        f"{split}: float accuracy {result['float']['accuracy']:.4f}, "
        f"quantized accuracy {result['quantized']['accuracy']:.4f}"
    )


@cli.command("simulate")
@click.option("--checkpoint", type=click.Path(path_type=Path), required=True)
@click.option("--events", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option("--config", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Hardware config.")
@common_options
def cmd_simulate(
    checkpoint: Path, events: Path, config: Optional[Path], out: Path, seed: Optional[int]
) -> None:
    """Run one event recording through the accelerator model and write
    report.json and report.csv."""
    ckpt = load_checkpoint(checkpoint)
    hw = HwConfig() if config is None else HwConfig.load(config)
    stream = load_events(events)
    inputs = rasterize(stream, ckpt.config.dataset.raster(ckpt.config.timesteps))
    report = simulate_network(ckpt.topology(), inputs, ckpt, hw)
    write_report(report, out)
    click.echo(
        f"{report.total_cycles} cycles ({report.latency_ms:.6f} ms), "
        f"density {report.activity_density:.4f}, prediction {report.prediction}"
    )


@cli.command("sweep")
@click.option("--config", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Sweep spec.")
@click.option("--jobs", type=int, default=None, help="Worker processes; N_SWEEP_JOBS when unset.")
@common_options
def cmd_sweep(config: Path, jobs: Optional[int], out: Path, seed: Optional[int]) -> None:
    """Run a sweep into <out>/results/<name>/, skipping finished trials."""
    spec = SweepSpec.load(config)
    if seed is not None:
        spec = spec.model_copy(update={"seeds": [seed]})
    records = run_sweep(spec, out, n_jobs=jobs)
    click.echo(f"{len(records)} completed trials")


@cli.command("report")
@click.option("--results", type=click.Path(file_okay=False, path_type=Path), required=True)
@common_options
def cmd_report(results: Path, out: Path, seed: Optional[int]) -> None:
    """Aggregate trial records into trials.csv, pareto.csv and pareto.svg."""
    records = load_results(results)
    completed = [r for r in records if r.ok]
    if not completed:
        raise EmptyInputError(f"no completed trials under {results}")

    out.mkdir(parents=True, exist_ok=True)
    records_frame(records).to_csv(out / "trials.csv", index=False, lineterminator="\n")
    front = pareto_front(completed)
    records_frame(front).to_csv(out / "pareto.csv", index=False, lineterminator="\n")
    plot_pareto(completed, out / "pareto.svg")
    click.echo(f"{len(completed)} trials, {len(front)} on the Pareto front")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()

# stdlib
import os

# spikedse absolute
import spikedse.logger as log

ENV_JOBS = "N_SWEEP_JOBS"
DEFAULT_JOBS = 2


def n_sweep_jobs() -> int:
    """Worker count for sweeps, read from $N_SWEEP_JOBS (default 2).

    Values that are not positive integers fall back to the default.
    """
    raw = os.environ.get(ENV_JOBS)
    if raw is None:
        return DEFAULT_JOBS
    try:
        n_jobs = int(raw)
    except ValueError:
        n_jobs = 0
    if n_jobs < 1:
        log.warning(f"ignoring {ENV_JOBS}={raw!r}, using {DEFAULT_JOBS} workers")
        return DEFAULT_JOBS
    log.debug(f"{ENV_JOBS}={n_jobs}")
    return n_jobs

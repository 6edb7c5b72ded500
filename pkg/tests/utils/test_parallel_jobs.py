# third party
import pytest

# spikedse absolute
from spikedse.utils.parallel import n_sweep_jobs


def test_n_sweep_jobs(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("N_SWEEP_JOBS", "1")
    assert n_sweep_jobs() == 1

    monkeypatch.delenv("N_SWEEP_JOBS")
    assert n_sweep_jobs() == 2


@pytest.mark.parametrize("raw", ["zero", "0", "-3", ""])
def test_n_sweep_jobs_invalid(monkeypatch: pytest.MonkeyPatch, raw: str) -> None:
    monkeypatch.setenv("N_SWEEP_JOBS", raw)

    assert n_sweep_jobs() == 2

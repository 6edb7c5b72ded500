# stdlib
from pathlib import Path
from typing import List

# third party
import numpy as np
import pytest

# spikedse absolute
from spikedse.core import SpikeTrain
from spikedse.exceptions import DomainError
from spikedse.metrics import (
    EnergyModel,
    TrialRecord,
    TrialStatus,
    activity_density,
    density_from_totals,
    dominates,
    estimate_energy,
    pareto_front,
)
from spikedse.metrics.plots import plot_pareto


def _record(idx: int, accuracy: float, latency: float) -> TrialRecord:
    return TrialRecord.completed(
        energy_mj=1e-6,
        latency_ms=latency,
        trial_hash=f"{idx:016x}",
        config={},
        accuracy=accuracy,
        total_cycles=int(latency * 1e5),
        activity_density=0.1,
    )


def _random_records(seed: int, n: int) -> List[TrialRecord]:
    rng = np.random.default_rng(seed)
    # coarse grids so that ties happen
    acc = rng.integers(0, 10, size=n) / 10
    lat = rng.integers(1, 10, size=n) / 100
    return [_record(i, float(a), float(t)) for i, (a, t) in enumerate(zip(acc, lat))]


def test_activity_density() -> None:
    train = np.array([[1, 0], [0, 0]], dtype=np.uint8)
    assert activity_density([train]) == 0.25
    two_layers = [np.array([[1, 0], [0, 0]]), np.array([[0, 0], [0, 1]])]
    assert activity_density(two_layers) == 0.25
    assert activity_density([SpikeTrain(np.ones((2, 1, 2, 2)))]) == 1.0
    assert density_from_totals(10, 4, 5, samples=2) == 0.25
    with pytest.raises(DomainError):
        density_from_totals(1, 0, 5)
    with pytest.raises(DomainError):
        activity_density([])


def test_estimate_energy() -> None:
    counts = {"add": 10, "mul": 2, "mem": 1}
    assert estimate_energy(counts) == pytest.approx(21e-9)
    assert estimate_energy(counts, EnergyModel(mul=0, mem=0, mj_per_unit=1.0)) == 10.0
    assert estimate_energy({}) == 0.0


def test_dominates() -> None:
    a, b, c = _record(0, 0.9, 0.1), _record(1, 0.8, 0.2), _record(2, 0.9, 0.1)
    assert dominates(a, b)
    assert not dominates(b, a)
    assert not dominates(a, c) and not dominates(c, a)


@pytest.mark.parametrize("seed", range(5))
def test_pareto_front_matches_pairwise_check(seed: int) -> None:
    records = _random_records(seed, 200)

    front = pareto_front(records)
    expected = [r for r in records if not any(dominates(o, r) for o in records)]

    assert {r.trial_hash for r in front} == {r.trial_hash for r in expected}
    assert [r.trial_hash for r in front] == sorted(r.trial_hash for r in front)


def test_pareto_front_edges() -> None:
    assert pareto_front([]) == []
    single = [_record(0, 0.5, 0.5)]
    assert pareto_front(single) == single
    tied = [_record(0, 0.5, 0.5), _record(1, 0.5, 0.5)]
    assert len(pareto_front(tied)) == 2


def test_trial_record_edp() -> None:
    rec = _record(0, 0.9, 0.25)
    assert rec.edp == rec.energy_mj * rec.latency_ms
    assert rec.ok

    with pytest.raises(ValueError):
        TrialRecord(
            trial_hash="0",
            config={},
            accuracy=0.5,
            total_cycles=1,
            latency_ms=1.0,
            activity_density=0.1,
            energy_mj=1.0,
            edp=2.0,
        )
    with pytest.raises(ValueError):
        TrialRecord(trial_hash="0", config={}, accuracy=0.5)

    failed = TrialRecord(trial_hash="0", config={}, status=TrialStatus.failed, error="boom")
    assert not failed.ok


def test_plot_pareto(tmp_path: Path) -> None:
    records = _random_records(0, 12)

    first = plot_pareto(records, tmp_path / "a.svg").read_text()
    second = plot_pareto(records, tmp_path / "b.svg").read_text()

    assert first == second
    assert first.lstrip().startswith("<?xml")
    for rec in records:
        assert f'id="trial-{rec.trial_hash}"' in first

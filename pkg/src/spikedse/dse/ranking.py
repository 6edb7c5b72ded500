# stdlib
from collections import defaultdict
from enum import Enum
from typing import Dict, List, Sequence, Union

# spikedse absolute
from spikedse.exceptions import EmptyInputError
from spikedse.metrics.pareto import pareto_front
from spikedse.metrics.records import TrialRecord


class RankPolicy(str, Enum):
    best_accuracy = "best-accuracy"
    best_latency = "best-latency"
    best_edp = "best-edp"
    pareto = "pareto"


def rank_trials(
    records: Sequence[TrialRecord], policy: Union[RankPolicy, str] = RankPolicy.best_accuracy
) -> List[TrialRecord]:
    """Order completed trials by a policy.

    best-accuracy: accuracy descending, then latency, then trial hash.
    best-latency: latency ascending, then accuracy, then trial hash.
    best-edp: energy-delay product ascending, then accuracy, then trial hash.
    pareto: the non-dominated trials only.
    """
    policy = RankPolicy(policy)
    completed = [r for r in records if r.ok]
    if not completed:
        raise EmptyInputError("no completed trials to rank")

    if policy == RankPolicy.best_accuracy:
        return sorted(completed, key=lambda r: (-r.accuracy, r.latency_ms, r.trial_hash))
    if policy == RankPolicy.best_latency:
        return sorted(completed, key=lambda r: (r.latency_ms, -r.accuracy, r.trial_hash))
    if policy == RankPolicy.best_edp:
        return sorted(completed, key=lambda r: (r.edp, -r.accuracy, r.trial_hash))
    return pareto_front(completed)


def top_k_per_group(
    records: Sequence[TrialRecord],
    k: int = 2,
    policy: Union[RankPolicy, str] = RankPolicy.best_accuracy,
) -> Dict[str, List[TrialRecord]]:
    """The k best trials of every group (surrogate kind or neuron model)."""
    groups: Dict[str, List[TrialRecord]] = defaultdict(list)
    for record in records:
        if record.ok:
            groups[record.group].append(record)
    return {name: rank_trials(group, policy)[:k] for name, group in sorted(groups.items())}

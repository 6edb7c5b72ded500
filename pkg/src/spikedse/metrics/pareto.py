# stdlib
from typing import Any, Callable, List, Sequence

# third party
import numpy as np


def _acc(r: Any) -> float:
    return r.accuracy


def _lat(r: Any) -> float:
    return r.latency_ms


def _hash(r: Any) -> str:
    return getattr(r, "trial_hash", "")


def dominates(
    a: Any,
    b: Any,
    accuracy: Callable[[Any], float] = _acc,
    latency: Callable[[Any], float] = _lat,
) -> bool:
    """a dominates b: no worse on both axes and strictly better on one."""
    no_worse = accuracy(a) >= accuracy(b) and latency(a) <= latency(b)
    better = accuracy(a) > accuracy(b) or latency(a) < latency(b)
    return no_worse and better


def pareto_front(
    records: Sequence[Any],
    accuracy: Callable[[Any], float] = _acc,
    latency: Callable[[Any], float] = _lat,
) -> List[Any]:
    """Records not dominated in (accuracy up, latency down).

    Points tied on both axes are all kept. The result is ordered by trial
    hash, then accuracy and latency.
    """
    if not records:
        return []
    acc = np.array([accuracy(r) for r in records], dtype=np.float64)
    lat = np.array([latency(r) for r in records], dtype=np.float64)

    order = np.lexsort((-acc, lat))
    front = []
    best_faster = -np.inf
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and lat[order[j]] == lat[order[i]]:
            j += 1
        group = order[i:j]
        top = acc[group].max()
        if top > best_faster:
            front.extend(int(k) for k in group if acc[k] == top)
        best_faster = max(best_faster, top)
        i = j

    return sorted(
        (records[k] for k in front),
        key=lambda r: (_hash(r), -accuracy(r), latency(r)),
    )

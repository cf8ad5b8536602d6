"""Sort-merge join of sorted interval lists."""

from __future__ import annotations

from collections.abc import Sequence

from metricdl.temporal import ALWAYS, Interval, coalesce_all, intersect

__all__ = ["join_intervals"]


def join_intervals(lists: Sequence[Sequence[Interval]]) -> list[Interval]:
    """Maximal intervals on which every list holds.

    Each input must be sorted and coalesced. One cursor per list; after each
    probe the cursor whose interval ends first moves on.
    """
    if not lists:
        return [ALWAYS]
    if any(not intervals for intervals in lists):
        return []
    if len(lists) == 1:
        return list(lists[0])

    cursors = [0] * len(lists)
    joined: list[Interval] = []
    while True:
        current: Interval | None = lists[0][cursors[0]]
        for index in range(1, len(lists)):
            if current is None:
                break
            current = intersect(current, lists[index][cursors[index]])
        if current is not None:
            joined.append(current)

        earliest = min(range(len(lists)), key=lambda i: lists[i][cursors[i]].end_key)
        cursors[earliest] += 1
        if cursors[earliest] == len(lists[earliest]):
            break
    return coalesce_all(joined)

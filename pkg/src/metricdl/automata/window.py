"""Windows: labelled runs of consecutive cells, the states of the automata."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import NamedTuple, Union

from metricdl.syntax.ast import TOP, MetricAtom, Relational
from metricdl.syntax.mirror import mirror_atom
from metricdl.syntax.printer import format_atom
from metricdl.types import AuxKind

__all__ = [
    "Aux",
    "CellLabel",
    "Label",
    "Window",
    "WindowSink",
    "format_label",
    "format_window",
    "mirror_label",
    "mirror_window",
    "sorted_labels",
]


class Aux(NamedTuple):
    """Truth of an unbounded operator's one-step unfolding at a cell.

    ``since(A, B)`` holds at cell k iff B held at some cell i <= k (with A
    also holding in i when i is open) and A held on every cell after i up to
    k. ``historically(A)`` holds iff A held on every cell up to k. The future
    kinds mirror these to the right.
    """

    kind: AuxKind
    left: MetricAtom
    right: MetricAtom = TOP


Label = Union[Relational, Aux]
CellLabel = frozenset[Label]

_MIRRORED_KIND = {
    AuxKind.SINCE: AuxKind.UNTIL,
    AuxKind.UNTIL: AuxKind.SINCE,
    AuxKind.HISTORICALLY: AuxKind.HENCEFORTH,
    AuxKind.HENCEFORTH: AuxKind.HISTORICALLY,
}


class Window(NamedTuple):
    labels: tuple[CellLabel, ...]
    first_punctual: bool

    def punctual(self, j: int) -> bool:
        return (j % 2 == 0) == self.first_punctual

    def label(self, j: int) -> CellLabel:
        if not 0 <= j < len(self.labels):
            raise IndexError(f"cell {j} lies outside a window of {len(self.labels)} cells")
        return self.labels[j]

    def shifted(self, label: CellLabel) -> Window:
        """Drop the leftmost cell and append ``label`` on the right."""
        return Window(self.labels[1:] + (label,), not self.first_punctual)


WindowSink = Callable[[Window], None]


def mirror_label(label: Label) -> Label:
    if isinstance(label, Aux):
        return Aux(_MIRRORED_KIND[label.kind], mirror_atom(label.left), mirror_atom(label.right))
    return label


def mirror_window(window: Window) -> Window:
    """The same cells read from right to left, with past and future swapped."""
    labels = tuple(frozenset(mirror_label(item) for item in cell) for cell in reversed(window.labels))
    return Window(labels, window.punctual(len(window.labels) - 1))


def format_label(label: Label) -> str:
    if isinstance(label, Aux):
        return f"{label.kind}({format_atom(label.left)}, {format_atom(label.right)})"
    return format_atom(label)


def sorted_labels(labels: Iterable[Label]) -> list[Label]:
    return sorted(labels, key=format_label)


def format_window(window: Window) -> str:
    """One line per cell: position, cell kind and the sorted labels."""
    lines = []
    for j, cell in enumerate(window.labels):
        kind = "point" if window.punctual(j) else "open"
        lines.append(f"{j:>3} {kind:<5} " + " ".join(format_label(item) for item in sorted_labels(cell)))
    return "\n".join(line.rstrip() for line in lines)

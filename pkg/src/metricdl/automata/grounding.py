"""Grounding restricted to rule instances that can ever fire."""

from __future__ import annotations

from metricdl.evaluation import bindings, evaluate
from metricdl.logging import get_logger
from metricdl.store import FactStore
from metricdl.syntax.ast import Dataset, Fact, Program, Relational, Rule, relational_leaves, substitute
from metricdl.temporal import ALWAYS

__all__ = ["relevant_grounding"]

_logger = get_logger("automata.grounding")


def relevant_grounding(program: Program, dataset: Dataset) -> tuple[list[Rule], frozenset[Relational]]:
    """Ground instances of ``program`` whose bodies hold somewhere, and the atoms they can derive.

    An atom is possible if it occurs in ``dataset`` or heads an instance whose
    body holds when every possible atom holds always. The least model of a
    Horn program only contains possible atoms, so other instances never fire.
    """
    domain = program.constants() | dataset.constants()
    possible = {fact.atom for fact in dataset}
    instances: dict[tuple[str | None, object, tuple], Rule] = {}
    while True:
        store = FactStore.from_facts(Fact(atom, ALWAYS) for atom in possible)
        added = False
        for rule in program:
            for binding in bindings(rule.body, store, domain):
                body = tuple(substitute(atom, binding) for atom in rule.body)
                if not all(evaluate(store, atom) for atom in body):
                    continue
                head = substitute(rule.head, binding)
                instance = Rule(head, body, rule.name)
                instances.setdefault((rule.name, head, body), instance)
                for leaf in relational_leaves(head):
                    if leaf not in possible:
                        possible.add(leaf)
                        added = True
        if not added:
            break
    _logger.debug("Relevant grounding: %d instances over %d atoms", len(instances), len(possible))
    return list(instances.values()), frozenset(possible)

"""The coalesced temporal fact store."""

from __future__ import annotations

from metricdl.store.fact_store import AtomKey, FactStore, InsertOutcome, atom_key

__all__ = ["AtomKey", "FactStore", "InsertOutcome", "atom_key"]

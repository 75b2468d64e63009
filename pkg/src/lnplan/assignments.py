"""Range tables for fluent values under partial argument bindings.

For a function symbol F and a state, the table maps each partial binding of
up to `degree` argument positions to the hull of the values of all ground
terms of F that agree with the binding. Fixing more positions never widens
the interval, and at full arity the entry collapses to the exact value (or to
EMPTY when no such ground term exists).

Only bindings witnessed by some ground term are stored; a missing key reads
as EMPTY, which is equivalent to initializing every binding to the empty
interval up front.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from .intervals import EMPTY, Interval
from .model import FunctionSymbol, Object, State

PosBinding = Mapping[int, Object]  # argument position -> object


class AssignmentSet:
    """Per-symbol map from partial position bindings to value intervals."""

    __slots__ = ("function", "degree", "table")

    def __init__(self, function: FunctionSymbol, degree: int, table: dict):
        self.function = function
        self.degree = degree
        self.table = table

    def lookup(self, binding: PosBinding) -> Interval:
        """Interval for the binding; EMPTY when no ground term matches.

        Querying more than `degree` fixed positions violates the table's
        construction contract and raises.
        """
        if len(binding) > self.degree:
            raise ValueError(
                f"lookup with {len(binding)} fixed positions exceeds degree {self.degree}"
            )
        key = tuple(sorted(binding.items()))
        return self.table.get(key, EMPTY)


def build_assignment_set(
    function: FunctionSymbol,
    state: State,
    degree: int,
    fluent_items=None,
) -> AssignmentSet:
    """Scan the state's ground terms of `function` and fold values per binding.

    One pass over the n ground terms; each contributes to every subset of at
    most `degree` of its positions, so construction is O(n * k^degree) with
    k = ar(function).
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if fluent_items is None:
        fluent_items = [
            (term, value)
            for term, value in state.fluents.items()
            if term.function.name == function.name
        ]
    bounds: dict[tuple, list[float]] = {}
    top = min(degree, function.arity)
    for term, value in fluent_items:
        args = term.args
        for size in range(top + 1):
            for positions in itertools.combinations(range(function.arity), size):
                key = tuple((i, args[i]) for i in positions)
                cur = bounds.get(key)
                if cur is None:
                    bounds[key] = [value, value]
                else:
                    if value < cur[0]:
                        cur[0] = value
                    if value > cur[1]:
                        cur[1] = value
    table = {key: Interval(lo, hi) for key, (lo, hi) in bounds.items()}
    return AssignmentSet(function, degree, table)


class AssignmentCache:
    """Lazy per-state cache of assignment sets, one per function symbol.

    Buckets the state's fluents by symbol once, then builds each table on
    first use. Concurrent first uses are safe: setdefault keeps a single
    winner and the loser's table is discarded.
    """

    def __init__(self, state: State, degree: int = 2):
        self.state = state
        self.degree = degree
        self._sets: dict[str, AssignmentSet] = {}
        self._buckets: dict[str, list] | None = None

    def _bucket(self, name: str) -> list:
        if self._buckets is None:
            buckets: dict[str, list] = {}
            for term, value in self.state.fluents.items():
                buckets.setdefault(term.function.name, []).append((term, value))
            self._buckets = buckets
        return self._buckets.get(name, [])

    def get(self, function: FunctionSymbol) -> AssignmentSet:
        cached = self._sets.get(function.name)
        if cached is not None:
            return cached
        built = build_assignment_set(
            function, self.state, self.degree, self._bucket(function.name)
        )
        return self._sets.setdefault(function.name, built)

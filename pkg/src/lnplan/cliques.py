"""Enumeration of one-vertex-per-partition cliques in a partitioned graph.

Depth-first search over partitions ordered by ascending surviving-vertex
count, maintaining the candidate set as a bitset intersection of the chosen
vertices' neighborhoods. Output is a lazy stream; each clique is reported as
a vertex-id tuple ordered by partition index, and the emission order is
deterministic for a fixed graph.
"""

from __future__ import annotations

from typing import Iterator

from .consistency import ConsistencyGraph


def iter_cliques(graph: ConsistencyGraph) -> Iterator[tuple[int, ...]]:
    """All k-cliques of the graph, each exactly once."""
    k = graph.k
    if graph.empty or k == 0:
        return
    if any(mask == 0 for mask in graph.alive):
        return
    n = graph.n_objects
    if k == 1:
        for oi in graph.iter_alive(0):
            yield (oi,)
        return

    order = sorted(range(k), key=lambda p: (graph.alive[p].bit_count(), p))
    partition_masks = [graph.alive[p] << (p * n) for p in order]
    adjacency = graph.adjacency
    chosen = [0] * k

    def extend(depth: int, candidates: int) -> Iterator[tuple[int, ...]]:
        pool = candidates & partition_masks[depth]
        while pool:
            low = pool & -pool
            pool ^= low
            v = low.bit_length() - 1
            chosen[order[depth]] = v
            if depth + 1 == k:
                yield tuple(chosen)
            else:
                narrowed = candidates & adjacency[v]
                if narrowed:
                    yield from extend(depth + 1, narrowed)

    full = (1 << (k * n)) - 1
    yield from extend(0, full)

"""Bipartite graphs on zero-divisors and units, plus closed-form predictions.

The graph of a ring R has left part Z(R)*, right part U(R), and an edge z-u
exactly when z + u is not a unit (0 counts: it is a zero-divisor by the
convention used throughout).  Adjacency is one bit-vector per left vertex
over right indices; bit-parallel intersection is what the subgraph searches
and the common-neighbor counts run on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .polynomials import prime_power
from .rings import DEFAULT_MAX_ORDER, ElementClass, get_ring
from .specs import RingSpec


@dataclass(frozen=True)
class PartSizePrediction:
    unit_count: int
    zstar_count: int


@dataclass(frozen=True, eq=False)
class BZUGraph:
    left_labels: tuple
    right_labels: tuple
    adjacency: tuple[int, ...]  # adjacency[i] bit j set <=> left i ~ right j
    edge_count: int
    spec: RingSpec | None = None

    @property
    def n_left(self) -> int:
        return len(self.left_labels)

    @property
    def n_right(self) -> int:
        return len(self.right_labels)

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    @cached_property
    def right_masks(self) -> tuple[int, ...]:
        """Transpose: per-right-vertex bit-vector over left indices."""
        masks = [0] * self.n_right
        for i, row in enumerate(self.adjacency):
            bit = 1 << i
            rest = row
            while rest:
                j = (rest & -rest).bit_length() - 1
                masks[j] |= bit
                rest &= rest - 1
        return tuple(masks)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree_left(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def degree_right(self, j: int) -> int:
        return self.right_masks[j].bit_count()

    @cached_property
    def combined_adjacency(self) -> tuple[int, ...]:
        """One bitset per vertex in the unified order (left block, then right)."""
        L = self.n_left
        out = [row << L for row in self.adjacency]
        out.extend(self.right_masks)
        return tuple(out)

    def edges(self) -> list[tuple[int, int]]:
        """(left index, right index) pairs, sorted."""
        out = []
        for i, row in enumerate(self.adjacency):
            rest = row
            while rest:
                j = (rest & -rest).bit_length() - 1
                out.append((i, j))
                rest &= rest - 1
        return out

    def is_complete_bipartite(self) -> bool:
        return (self.n_left > 0 and self.n_right > 0
                and self.edge_count == self.n_left * self.n_right)


def bipartite_graph(left_labels: Sequence, right_labels: Sequence,
                    edges: Iterable[tuple[int, int]],
                    spec: RingSpec | None = None) -> BZUGraph:
    """Assemble a graph from explicit index pairs (left, right)."""
    rows = [0] * len(left_labels)
    count = 0
    seen = set()
    for i, j in edges:
        if not (0 <= i < len(left_labels) and 0 <= j < len(right_labels)):
            raise ValueError(f"edge ({i},{j}) out of range")
        if (i, j) in seen:
            continue
        seen.add((i, j))
        rows[i] |= 1 << j
        count += 1
    return BZUGraph(tuple(left_labels), tuple(right_labels), tuple(rows), count, spec)


def build_graph(spec: RingSpec, max_order: int = DEFAULT_MAX_ORDER) -> BZUGraph:
    ring = get_ring(spec, max_order)
    classes = ring.classes()
    left = [e for e, c in zip(ring.elements, classes) if c is ElementClass.ZERO_DIVISOR]
    right = [e for e, c in zip(ring.elements, classes) if c is ElementClass.UNIT]

    k = len(ring.comps)
    add_idx = [c.add_index for c in ring.comps]
    unit_masks = ring.unit_masks()
    left_t = [ring.comp_indices(e) for e in left]
    right_t = [ring.comp_indices(e) for e in right]

    rows = []
    edge_count = 0
    crange = range(k)
    for zt in left_t:
        bits = 0
        for j, ut in enumerate(right_t):
            for c in crange:
                if not unit_masks[c][add_idx[c](zt[c], ut[c])]:
                    bits |= 1 << j
                    edge_count += 1
                    break
        rows.append(bits)
    return BZUGraph(tuple(left), tuple(right), tuple(rows), edge_count, spec)


def predicted_part_sizes(qs: Sequence[int]) -> PartSizePrediction:
    """Closed forms for a product of fields of the given orders."""
    if not qs:
        raise ValueError("empty field-order multiset")
    for q in qs:
        if prime_power(q) is None:
            raise ValueError(f"{q} is not a prime power")
    units = math.prod(q - 1 for q in qs)
    total = math.prod(qs)
    return PartSizePrediction(unit_count=units, zstar_count=total - units - 1)


def predicted_single_support_degree(qs: Sequence[int], i: int) -> int:
    """Predicted degree of a zero-divisor supported on coordinate i alone."""
    if not 0 <= i < len(qs):
        raise IndexError(f"coordinate {i} out of range for {len(qs)} factors")
    for q in qs:
        if prime_power(q) is None:
            raise ValueError(f"{q} is not a prime power")
    return math.prod(q - 1 for j, q in enumerate(qs) if j != i)

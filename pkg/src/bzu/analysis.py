"""Connectivity, diameter, girth, coloring bounds, and K_{3,3} search.

Vertices are addressed in the unified order: left block first, then right.
All traversals run on the per-vertex bitsets; a BFS frontier is a single
integer, so levels advance word-parallel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graphs import BZUGraph


@dataclass(frozen=True)
class Diameter:
    kind: str  # "Finite" | "Infinite" | "Degenerate"
    value: int | None = None

    def __str__(self) -> str:
        return f"Finite({self.value})" if self.kind == "Finite" else self.kind


@dataclass(frozen=True)
class Girth:
    kind: str  # "Finite" | "Acyclic"
    value: int | None = None

    def __str__(self) -> str:
        return f"Finite({self.value})" if self.kind == "Finite" else self.kind


@dataclass(frozen=True)
class GraphStats:
    component_count: int
    is_connected: bool
    diameter: Diameter
    girth: Girth
    girth_witness: tuple[int, ...] | None
    chromatic: int
    clique: int
    is_complete_bipartite: bool
    is_forest: bool
    degree_multiset_left: tuple[int, ...]
    degree_multiset_right: tuple[int, ...]


@dataclass(frozen=True)
class K33Witness:
    left_triple: tuple[int, int, int]
    right_triple: tuple[int, int, int]


# ---------------------------------------------------------------------------
# bitset traversal helpers
# ---------------------------------------------------------------------------

def bits_of(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def components_of(adj: tuple[int, ...]) -> list[int]:
    """Connected components as vertex bitmasks, each led by its least vertex."""
    n = len(adj)
    unseen = (1 << n) - 1
    out = []
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        out.append(comp)
        unseen &= ~comp
    return out


def _eccentricity(adj: tuple[int, ...], root: int, within: int) -> int:
    seen = 1 << root
    frontier = seen
    dist = 0
    while True:
        nxt = 0
        for v in bits_of(frontier):
            nxt |= adj[v]
        nxt &= within & ~seen
        if not nxt:
            return dist
        seen |= nxt
        frontier = nxt
        dist += 1


def bfs_distances(adj: tuple[int, ...], root: int) -> list[int]:
    """-1 for unreachable vertices."""
    n = len(adj)
    dist = [-1] * n
    dist[root] = 0
    frontier = 1 << root
    seen = frontier
    d = 0
    while frontier:
        nxt = 0
        for v in bits_of(frontier):
            nxt |= adj[v]
        nxt &= ~seen
        d += 1
        for v in bits_of(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# girth
# ---------------------------------------------------------------------------

def _shortest_cycle_bound(adj: tuple[int, ...], root: int, best: int) -> int:
    """Length of some cycle found from root, or best if nothing shorter.

    Standard BFS bound: the first non-tree edge closing two branches gives a
    cycle; minimized over all roots this equals the girth.
    """
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    dist[root] = 0
    q = deque([root])
    while q:
        v = q.popleft()
        if 2 * dist[v] + 1 >= best:
            break
        for w in bits_of(adj[v]):
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                parent[w] = v
                q.append(w)
            elif w != parent[v] and parent[w] != v:
                # walk both branches to their meeting point for the true length
                pa, pb = v, w
                da, db = dist[pa], dist[pb]
                length = da + db + 1
                seen_a = {}
                x = pa
                while x != -1:
                    seen_a[x] = dist[pa] - dist[x]
                    x = parent[x]
                x = pb
                while x != -1:
                    if x in seen_a:
                        length = seen_a[x] + (dist[pb] - dist[x]) + 1
                        break
                    x = parent[x]
                if length < best and length >= 3:
                    best = length
    return best


def _lex_least_cycle(adj: tuple[int, ...], g: int) -> tuple[int, ...]:
    """Lexicographically least vertex sequence of a length-g cycle."""
    n = len(adj)
    for start in range(n):
        dist = bfs_distances(adj, start)
        path = [start]
        on_path = 1 << start

        def rec() -> tuple[int, ...] | None:
            nonlocal on_path
            depth = len(path)
            if depth == g:
                return tuple(path) if adj[path[-1]] >> start & 1 else None
            last = path[-1]
            for w in bits_of(adj[last]):
                if on_path >> w & 1:
                    continue
                if w < start:
                    continue  # cycles through smaller vertices were already tried
                d = dist[w]
                if d == -1 or d > g - depth:
                    continue  # cannot return to start in the remaining budget
                if depth == g - 1 and not (adj[w] >> start & 1):
                    continue
                path.append(w)
                on_path |= 1 << w
                got = rec()
                if got is not None:
                    return got  # DFS in ascending order: first hit is lex-least
                path.pop()
                on_path &= ~(1 << w)
            return None

        found = rec()
        if found is not None:
            return found
    raise AssertionError(f"no cycle of length {g} found, girth computation inconsistent")


def girth_of(adj: tuple[int, ...]) -> tuple[Girth, tuple[int, ...] | None]:
    n = len(adj)
    best = n + 1
    for root in range(n):
        best = _shortest_cycle_bound(adj, root, best)
        if best == 3:
            break
    if best > n:
        return Girth("Acyclic"), None
    return Girth("Finite", best), _lex_least_cycle(adj, best)


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def analyze(g: BZUGraph) -> GraphStats:
    adj = g.combined_adjacency
    n = len(adj)
    comps = components_of(adj)
    comp_count = len(comps)
    connected = comp_count == 1 and n > 0

    if n <= 1:
        diameter = Diameter("Degenerate")
    elif comp_count > 1:
        diameter = Diameter("Infinite")
    else:
        full = (1 << n) - 1
        diameter = Diameter("Finite", max(_eccentricity(adj, v, full) for v in range(n)))

    girth, witness = girth_of(adj)
    edgy = g.edge_count >= 1
    chromatic = 0 if n == 0 else (2 if edgy else 1)
    clique = chromatic
    return GraphStats(
        component_count=comp_count,
        is_connected=connected,
        diameter=diameter,
        girth=girth,
        girth_witness=witness,
        chromatic=chromatic,
        clique=clique,
        is_complete_bipartite=g.is_complete_bipartite(),
        is_forest=girth.kind == "Acyclic",
        degree_multiset_left=tuple(sorted(g.degree_left(i) for i in range(g.n_left))),
        degree_multiset_right=tuple(sorted(g.degree_right(j) for j in range(g.n_right))),
    )


# ---------------------------------------------------------------------------
# K_{3,3} subgraph search
# ---------------------------------------------------------------------------

def find_k33(g: BZUGraph) -> K33Witness | None:
    rows = g.adjacency
    eligible = [i for i in range(g.n_left) if rows[i].bit_count() >= 3]
    for a, b, c in combinations(eligible, 3):
        common = rows[a] & rows[b] & rows[c]
        if common.bit_count() >= 3:
            it = bits_of(common)
            right = (next(it), next(it), next(it))
            return K33Witness(left_triple=(a, b, c), right_triple=right)
    return None


def verify_k33(g: BZUGraph, w: K33Witness) -> bool:
    if len(set(w.left_triple)) != 3 or len(set(w.right_triple)) != 3:
        return False
    return all(g.has_edge(i, j) for i in w.left_triple for j in w.right_triple)

"""Planarity with re-verifiable certificates.

The decision procedure is a left-right (path-addition) planarity test.  Its
answer is never trusted bare:

* Planar comes with a rotation system, checked by face tracing against
  Euler's formula on every connected component (a rotation system has genus 0
  exactly when V - E + F = 2 per component, so the check is complete).
* NonPlanar comes with either a K_{3,3} subgraph witness or a Kuratowski
  subdivision found by greedy edge deletion, re-verified by suppressing
  degree-2 vertices and checking the core is K_5 or K_{3,3}.

planarity() raises if its own certificate fails verification, so a defect in
the decision procedure cannot turn into a silently wrong verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import K33Witness, bits_of, components_of, find_k33, verify_k33
from .graphs import BZUGraph

Edge = tuple[int, int]


@dataclass(frozen=True)
class PlanarEmbedding:
    rotation: tuple[tuple[int, ...], ...]  # clockwise neighbor order per vertex
    face_count: int


@dataclass(frozen=True)
class KuratowskiSubdivision:
    edges: tuple[Edge, ...]
    kind: str  # "K5" | "K33"


@dataclass(frozen=True)
class PlanarityResult:
    verdict: str  # "Planar" | "NonPlanar"
    embedding: PlanarEmbedding | None = None
    k33: K33Witness | None = None
    subdivision: KuratowskiSubdivision | None = None


class _NonPlanar(Exception):
    pass


# ---------------------------------------------------------------------------
# left-right planarity test with embedding extraction
# ---------------------------------------------------------------------------

class _Interval:
    __slots__ = ("high", "low")

    def __init__(self, high=None, low=None):
        self.high = high
        self.low = low

    def empty(self):
        return self.high is None and self.low is None


class _ConflictPair:
    __slots__ = ("L", "R")

    def __init__(self, left=None, right=None):
        self.L = left if left is not None else _Interval()
        self.R = right if right is not None else _Interval()

    def swap(self):
        self.L, self.R = self.R, self.L


class _LRPlanarity:
    """Left-right test on a simple undirected graph given as neighbor lists.

    run() returns a clockwise rotation system, or None when nonplanar.
    All DFS passes are iterative so deep graphs cannot overflow the stack.
    """

    def __init__(self, adj_lists: list[list[int]]):
        self.adj = adj_lists
        n = len(adj_lists)
        self.n = n
        self.height: list[int | None] = [None] * n
        self.parent_edge: list[Edge | None] = [None] * n
        self.oriented: list[list[int]] = [[] for _ in range(n)]
        self.lowpt: dict[Edge, int] = {}
        self.lowpt2: dict[Edge, int] = {}
        self.nesting_depth: dict[Edge, int] = {}
        self.ref: dict[Edge, Edge | None] = {}
        self.side: dict[Edge, int] = {}
        self.S: list[_ConflictPair] = []
        self.stack_bottom: dict[Edge, _ConflictPair | None] = {}
        self.lowpt_edge: dict[Edge, Edge] = {}
        self.roots: list[int] = []
        self.ordered_adj: list[list[int]] = []

    # -- phase 1: orientation ------------------------------------------------
    def _dfs_orient(self, root: int):
        visited_edge: set[frozenset] = set()
        stack = [(root, iter(self.adj[root]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                key = frozenset((v, w))
                if key in visited_edge:
                    continue
                visited_edge.add(key)
                e = (v, w)
                self.oriented[v].append(w)
                self.lowpt[e] = self.height[v]
                self.lowpt2[e] = self.height[v]
                if self.height[w] is None:  # tree edge
                    self.parent_edge[w] = e
                    self.height[w] = self.height[v] + 1
                    stack.append((w, iter(self.adj[w])))
                    advanced = True
                    break
                self.lowpt[e] = self.height[w]  # back edge
                self._finish_edge(e)
            if not advanced:
                stack.pop()
                pe = self.parent_edge[v]
                if pe is not None:
                    self._finish_edge(pe)

    def _finish_edge(self, e: Edge):
        v = e[0]
        self.nesting_depth[e] = 2 * self.lowpt[e]
        if self.lowpt2[e] < self.height[v]:
            self.nesting_depth[e] += 1  # chordal edges nest inside
        pe = self.parent_edge[v]
        if pe is not None:
            if self.lowpt[e] < self.lowpt[pe]:
                self.lowpt2[pe] = min(self.lowpt[pe], self.lowpt2[e])
                self.lowpt[pe] = self.lowpt[e]
            elif self.lowpt[e] > self.lowpt[pe]:
                self.lowpt2[pe] = min(self.lowpt2[pe], self.lowpt[e])
            else:
                self.lowpt2[pe] = min(self.lowpt2[pe], self.lowpt2[e])

    # -- phase 2: testing ------------------------------------------------------
    def _lowest(self, P: _ConflictPair) -> int:
        if P.L.empty():
            return self.lowpt[P.R.low]
        if P.R.empty():
            return self.lowpt[P.L.low]
        return min(self.lowpt[P.L.low], self.lowpt[P.R.low])

    def _top(self):
        return self.S[-1] if self.S else None

    def _dfs_test(self, root: int):
        stack: list[tuple[int, int]] = [(root, 0)]
        while stack:
            v, i = stack.pop()
            oadj = self.ordered_adj[v]
            descended = False
            while i < len(oadj):
                w = oadj[i]
                ei = (v, w)
                self.stack_bottom[ei] = self._top()
                if ei == self.parent_edge[w]:  # tree edge: descend
                    stack.append((v, i + 1))
                    stack.append((w, 0))
                    descended = True
                    break
                self.lowpt_edge[ei] = ei  # back edge
                self.S.append(_ConflictPair(right=_Interval(ei, ei)))
                self._integrate(v, ei, i)
                i += 1
            if descended:
                continue
            e = self.parent_edge[v]
            if e is not None:
                u = e[0]
                self._remove_back_edges(e)
                if self.lowpt[e] < self.height[u]:  # e has a return edge
                    top = self.S[-1]
                    hl, hr = top.L.high, top.R.high
                    if hl is not None and (hr is None or self.lowpt[hl] > self.lowpt[hr]):
                        self.ref[e] = hl
                    else:
                        self.ref[e] = hr
                # perform the parent's post-edge integration for this tree edge
                self._integrate(u, e, self.ordered_adj[u].index(v))

    def _integrate(self, v: int, ei: Edge, i: int):
        """Parent-side bookkeeping once edge ei out of v is fully explored."""
        if self.lowpt[ei] < self.height[v]:  # ei has a return edge
            e = self.parent_edge[v]
            if i == 0:
                if e is not None:
                    self.lowpt_edge[e] = self.lowpt_edge[ei]
            else:
                self._add_constraints(ei, e)

    def _add_constraints(self, ei: Edge, e: Edge):
        P = _ConflictPair()
        # merge return edges of ei into P.R
        while True:
            Q = self.S.pop()
            if not Q.L.empty():
                Q.swap()
            if not Q.L.empty():
                raise _NonPlanar()
            if Q.R.low is not None and self.lowpt[Q.R.low] > self.lowpt[e]:
                if P.R.empty():
                    P.R.high = Q.R.high
                else:
                    self.ref[P.R.low] = Q.R.high
                P.R.low = Q.R.low
            else:  # align with the parent's lowpoint edge
                self.ref[Q.R.low] = self.lowpt_edge[e]
            if self._top() is self.stack_bottom[ei]:
                break

        def conflicting(I: _Interval, b: Edge) -> bool:
            return not I.empty() and self.lowpt[I.high] > self.lowpt[b]

        # merge conflicting return edges of earlier siblings into P.L
        while conflicting(self._top().L, ei) or conflicting(self._top().R, ei):
            Q = self.S.pop()
            if conflicting(Q.R, ei):
                Q.swap()
            if conflicting(Q.R, ei):
                raise _NonPlanar()
            self.ref[P.R.low] = Q.R.high  # interval below lowpt(ei) joins P.R
            if Q.R.low is not None:
                P.R.low = Q.R.low
            if P.L.empty():
                P.L.high = Q.L.high
            else:
                self.ref[P.L.low] = Q.L.high
            P.L.low = Q.L.low
        if not (P.L.empty() and P.R.empty()):
            self.S.append(P)

    def _remove_back_edges(self, e: Edge):
        u = e[0]
        hu = self.height[u]
        # drop conflict pairs whose lowest return point is u
        while self.S and self._lowest(self.S[-1]) == hu:
            P = self.S.pop()
            if P.L.low is not None:
                self.side[P.L.low] = -1
        if self.S:  # trim the top pair's intervals of edges returning to u
            P = self.S.pop()
            while P.L.high is not None and P.L.high[1] == u:
                P.L.high = self.ref[P.L.high]
            if P.L.high is None and P.L.low is not None:
                self.ref[P.L.low] = P.R.low
                self.side[P.L.low] = -1
                P.L.low = None
            while P.R.high is not None and P.R.high[1] == u:
                P.R.high = self.ref[P.R.high]
            if P.R.high is None and P.R.low is not None:
                self.ref[P.R.low] = P.L.low
                self.side[P.R.low] = -1
                P.R.low = None
            self.S.append(P)

    # -- phase 3: embedding ----------------------------------------------------
    def _resolve_sign(self, e: Edge) -> int:
        chain = []
        while self.ref[e] is not None:
            chain.append(e)
            e = self.ref[e]
        sign = self.side[e]
        for x in reversed(chain):
            sign = self.side[x] * sign
            self.side[x] = sign
            self.ref[x] = None
        return sign

    def run(self) -> list[list[int]] | None:
        n = self.n
        m = sum(len(a) for a in self.adj) // 2
        if n > 4 and m > 3 * n - 6:
            return None
        for v in range(n):
            if self.height[v] is None:
                self.height[v] = 0
                self.roots.append(v)
                self._dfs_orient(v)
        for e in self.lowpt:
            self.ref.setdefault(e, None)
            self.side.setdefault(e, 1)
        self.ordered_adj = [sorted(self.oriented[v], key=lambda w, v=v: self.nesting_depth[(v, w)])
                            for v in range(n)]
        try:
            for r in self.roots:
                self._dfs_test(r)
        except _NonPlanar:
            return None

        for e in list(self.nesting_depth):
            self.nesting_depth[e] *= self._resolve_sign(e)
        self.ordered_adj = [sorted(self.oriented[v], key=lambda w, v=v: self.nesting_depth[(v, w)])
                            for v in range(n)]

        rotation: list[list[int]] = [list(self.ordered_adj[v]) for v in range(n)]
        left_ref: dict[int, int] = {}
        right_ref: dict[int, int] = {}
        for r in self.roots:
            stack = [(r, 0)]
            while stack:
                v, i = stack.pop()
                oadj = self.ordered_adj[v]
                while i < len(oadj):
                    w = oadj[i]
                    ei = (v, w)
                    i += 1
                    if ei == self.parent_edge[w]:  # tree edge: dart w->v first
                        rotation[w].insert(0, v)
                        left_ref[v] = w
                        right_ref[v] = w
                        stack.append((v, i))
                        stack.append((w, 0))
                        break
                    # back edge: dart w->v beside the reference dart
                    if self.side.get(ei, 1) == 1:
                        pos = rotation[w].index(right_ref[w]) + 1
                        rotation[w].insert(pos, v)
                    else:
                        pos = rotation[w].index(left_ref[w])
                        rotation[w].insert(pos, v)
                        left_ref[w] = v
        return rotation


def lr_is_planar(adj_lists: list[list[int]]) -> bool:
    return _LRPlanarity(adj_lists).run() is not None


# ---------------------------------------------------------------------------
# certificate verification
# ---------------------------------------------------------------------------

def trace_faces(rotation) -> int:
    """Face orbits of a rotation system; an isolated vertex contributes 1."""
    succ = []
    for order in rotation:
        k = len(order)
        succ.append({w: order[(idx + 1) % k] for idx, w in enumerate(order)})
    unused = {(v, w) for v, order in enumerate(rotation) for w in order}
    faces = 0
    while unused:
        d = unused.pop()
        faces += 1
        v, w = d
        cur = (w, succ[w][v])
        while cur != d:
            unused.discard(cur)
            v, w = cur
            cur = (w, succ[w][v])
    faces += sum(1 for order in rotation if not order)
    return faces


def normalized_face_count(adj, rotation) -> int:
    """Faces with the components' unbounded faces merged into one."""
    if not len(adj):
        return 0
    return trace_faces(rotation) - (len(components_of(adj)) - 1)


def verify_embedding(g: BZUGraph, emb: PlanarEmbedding) -> bool:
    adj = g.combined_adjacency
    n = len(adj)
    if len(emb.rotation) != n:
        return False
    for v in range(n):
        if sorted(emb.rotation[v]) != list(bits_of(adj[v])):
            return False
    comps = components_of(adj)
    total = 0
    for comp in comps:
        vset = set(bits_of(comp))
        rot = [tuple(emb.rotation[v]) if v in vset else () for v in range(n)]
        f_comp = trace_faces(rot) - (n - len(vset))
        e_comp = sum(adj[v].bit_count() for v in vset) // 2
        if len(vset) - e_comp + f_comp != 2:
            return False
        total += f_comp
    return emb.face_count == total - (len(comps) - 1)


def _suppress_degree_two(edges: set[frozenset]) -> tuple[set[frozenset], bool]:
    """Contract through degree-2 vertices; False if a loop or multi-edge forms."""
    adj: dict[int, set[int]] = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v in adj and len(adj[v]) == 2:
                a, b = tuple(adj[v])
                if b in adj[a]:
                    return set(), False  # would create a multi-edge or loop
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    out = {frozenset((a, b)) for a, nbrs in adj.items() for b in nbrs}
    return out, True


def verify_subdivision(g: BZUGraph, cert: KuratowskiSubdivision) -> bool:
    adj = g.combined_adjacency
    n = len(adj)
    eset = set()
    for a, b in cert.edges:
        if not (0 <= a < n and 0 <= b < n) or not (adj[a] >> b & 1):
            return False
        eset.add(frozenset((a, b)))
    core, ok = _suppress_degree_two(eset)
    if not ok:
        return False
    verts = sorted({v for e in core for v in e})
    deg = {v: sum(1 for e in core if v in e) for v in verts}
    if cert.kind == "K5":
        return (len(verts) == 5 and len(core) == 10
                and all(d == 4 for d in deg.values()))
    if cert.kind == "K33":
        if len(verts) != 6 or len(core) != 9 or any(d != 3 for d in deg.values()):
            return False
        first = verts[0]
        side_b = {v for v in verts if frozenset((first, v)) in core}
        side_a = set(verts) - side_b
        return (len(side_a) == 3 and len(side_b) == 3
                and all(frozenset((a, b)) in core for a in side_a for b in side_b))
    return False


# ---------------------------------------------------------------------------
# certificate extraction
# ---------------------------------------------------------------------------

def _adj_lists_from_edges(n: int, edges: list[Edge]) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        out[a].append(b)
        out[b].append(a)
    return out


def kuratowski_by_deletion(n: int, edges: list[Edge]) -> KuratowskiSubdivision:
    """One greedy deletion pass leaves only critical edges.

    Nonplanarity is monotone under edge addition, so an edge kept because
    deleting it gave a planar graph stays critical to the very end; the
    survivors are therefore a single K_5 or K_{3,3} subdivision.
    """
    current = list(edges)
    if lr_is_planar(_adj_lists_from_edges(n, current)):
        raise ValueError("graph is planar, no Kuratowski subdivision exists")
    i = 0
    while i < len(current):
        trial = current[:i] + current[i + 1:]
        if not lr_is_planar(_adj_lists_from_edges(n, trial)):
            current = trial
        else:
            i += 1
    core, ok = _suppress_degree_two({frozenset(e) for e in current})
    if not ok:
        raise AssertionError("minimal nonplanar edge set failed suppression")
    kind = "K5" if len({v for e in core for v in e}) == 5 else "K33"
    return KuratowskiSubdivision(
        edges=tuple(sorted(tuple(sorted(e)) for e in current)), kind=kind)


# ---------------------------------------------------------------------------
# public entry point
# ---------------------------------------------------------------------------

def planarity(g: BZUGraph) -> PlanarityResult:
    adj = g.combined_adjacency
    n = len(adj)

    # bipartite density bound: planar + girth >= 4 forces e <= 2v - 4
    dense_nonplanar = n >= 3 and g.edge_count > 2 * n - 4

    if not dense_nonplanar:
        rotation = _LRPlanarity([list(bits_of(row)) for row in adj]).run()
        if rotation is not None:
            rot = tuple(tuple(r) for r in rotation)
            emb = PlanarEmbedding(rotation=rot,
                                  face_count=normalized_face_count(adj, rot))
            if not verify_embedding(g, emb):
                raise AssertionError("planar embedding failed Euler verification")
            return PlanarityResult(verdict="Planar", embedding=emb)

    w = find_k33(g)
    if w is not None:
        if not verify_k33(g, w):
            raise AssertionError("K33 witness failed re-verification")
        return PlanarityResult(verdict="NonPlanar", k33=w)
    edges = [(i, g.n_left + j) for i, j in g.edges()]
    cert = kuratowski_by_deletion(n, edges)
    if not verify_subdivision(g, cert):
        raise AssertionError("Kuratowski subdivision failed re-verification")
    return PlanarityResult(verdict="NonPlanar", subdivision=cert)

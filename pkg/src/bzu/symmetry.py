"""Canonical forms, isomorphism, graph automorphisms, and the ring-to-graph
automorphism comparison.

The engine folds forced symmetry out of the graph before searching:

  * twin folding      -- vertices with identical colored neighborhoods and
                         only plain edges collapse to one vertex;
  * pendant folding   -- degree-1 vertices are absorbed into their support
                         vertex, which accumulates a rooted-shape color;
  * chain folding     -- maximal paths of plain degree-2 vertices become
                         edge colors on their two anchor vertices, with
                         parallel same-shape chains bundled together.

Each fold multiplies an exact factor into the automorphism order (class
factorials and repeated-branch factorials), so the full order is the product
of fold factors times the automorphism order of the folded core.  The core
is canonicalized by iterated color refinement with individualization and
backtracking; automorphisms discovered at equal-bytes leaves prune sibling
branches orbit-by-orbit, and a branch is abandoned as soon as one of its
leaves is identified with an already-explored leaf.

Fold colors are nested structural tokens.  Every ordering decision sorts by
a token's serialized form, never by internal ids, so the pipeline does not
depend on the input labeling.  The final canonical bytes encode the complete
original adjacency matrix, which keeps byte equality sound for isomorphism
independently of how much folding happened.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .analysis import bits_of
from .graphs import BZUGraph, build_graph
from .rings import get_ring
from .ring_aut import aut_group_elements, ring_aut_group
from .specs import RingSpec

MAX_CANONICAL_VERTICES = 4096
MAX_GENERATOR_VERTICES = 256


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CanonicalForm:
    bytes: bytes
    relabeling: tuple[int, ...]  # relabeling[new_position] = original vertex


@dataclass(frozen=True)
class GraphAutReport:
    full_order: int
    part_preserving_order: int
    generators: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PhiReport:
    ring_aut_order: int
    graph_aut_order: int  # part-preserving
    injective: bool
    surjective: bool
    iso: bool


# ---------------------------------------------------------------------------
# twin partition (public, whole-graph view)
# ---------------------------------------------------------------------------

def twin_partition(g: BZUGraph) -> TwinPartition:
    return TwinPartition(_twin_classes(g.combined_adjacency))


def _twin_classes(adj) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for v, mask in enumerate(adj):
        groups.setdefault(mask, []).append(v)
    return tuple(tuple(c) for c in sorted(groups.values(), key=lambda c: c[0]))


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# structural tokens
# ---------------------------------------------------------------------------

class _Tokens:
    """Interned vertex and edge shape tokens.

    factor = automorphism order of the structure a token absorbs, and
    size = how many original vertices it stands for.  Both are functions of
    the token alone, which keeps the fold algebra compositional.
    """

    def __init__(self):
        self._vid: dict[tuple, int] = {}
        self.v_ser: list[bytes] = []
        self.v_fac: list[int] = []
        self.v_size: list[int] = []
        self._eid: dict[tuple, int] = {}
        self.e_ser: list[bytes] = []
        self.e_fac: list[int] = []
        self.e_size: list[int] = []
        self.e_rev: list[int] = []
        self.plain = self._intern_e(("m", 1, ()), b"M(1;)", 1, 0)
        if self.plain == len(self.e_rev):
            self.e_rev.append(self.plain)

    def _intern_v(self, tok: tuple, ser: bytes, fac: int, size: int) -> int:
        got = self._vid.get(tok)
        if got is not None:
            return got
        vid = len(self.v_ser)
        self._vid[tok] = vid
        self.v_ser.append(ser)
        self.v_fac.append(fac)
        self.v_size.append(size)
        return vid

    def _intern_e(self, tok: tuple, ser: bytes, fac: int, size: int) -> int:
        got = self._eid.get(tok)
        if got is not None:
            return got
        eid = len(self.e_ser)
        self._eid[tok] = eid
        self.e_ser.append(ser)
        self.e_fac.append(fac)
        self.e_size.append(size)
        return eid

    def base_v(self, color: int) -> int:
        return self._intern_v(("b", color), b"B%d" % color, 1, 1)

    def twin_v(self, sub: int, count: int) -> int:
        # a class of `count` interchangeable copies; plain edges only, so no
        # edge structure folds in with them
        tok = ("t", sub, count)
        ser = b"T(%d;" % count + self.v_ser[sub] + b")"
        fac = _factorial(count) * self.v_fac[sub] ** count
        return self._intern_v(tok, ser, fac, count * self.v_size[sub])

    def pend_v(self, sub: int, groups: tuple[tuple[int, int, int], ...]) -> int:
        # groups: (edge_token_toward_child, child_vertex_token, count)
        groups = tuple(sorted(
            groups, key=lambda g: (self.e_ser[g[0]], self.v_ser[g[1]])))
        tok = ("p", sub, groups)
        fac = self.v_fac[sub]
        size = self.v_size[sub]
        parts = []
        for e, c, k in groups:
            fac *= _factorial(k) * (self.v_fac[c] * self.e_fac[e]) ** k
            size += k * (self.v_size[c] + self.e_size[e])
            parts.append(b"%d*" % k + self.e_ser[e] + b"~" + self.v_ser[c])
        ser = b"P(" + self.v_ser[sub] + b";" + b",".join(parts) + b")"
        return self._intern_v(tok, ser, fac, size)

    def chain_ser(self, shape: tuple[int, ...]) -> bytes:
        return b"-".join(self.v_ser[v] for v in shape)

    def edge_e(self, plain: int,
               groups: tuple[tuple[tuple[int, ...], int], ...]) -> int:
        """Directed bundle token: optional plain edge plus parallel chains.

        Each group is (interior vertex tokens in near-to-far order, count).
        The reversed direction is interned alongside and cross-linked.
        """
        groups = tuple(sorted(groups, key=lambda g: self.chain_ser(g[0])))
        tok = ("m", plain, groups)
        got = self._eid.get(tok)
        if got is not None:
            return got
        fac = 1
        size = 0
        for shape, k in groups:
            inner = 1
            for v in shape:
                inner *= self.v_fac[v]
                size += self.v_size[v] * k
            fac *= _factorial(k) * inner ** k

        def ser_of(gs):
            return (b"M(%d;" % plain
                    + b",".join(b"%d*" % k + self.chain_ser(s) for s, k in gs)
                    + b")")

        eid = self._intern_e(tok, ser_of(groups), fac, size)
        rgroups = tuple(sorted(
            ((tuple(reversed(s)), k) for s, k in groups),
            key=lambda g: self.chain_ser(g[0])))
        rtok = ("m", plain, rgroups)
        if rtok == tok:
            self.e_rev.append(eid)
        else:
            rid = self._intern_e(rtok, ser_of(rgroups), fac, size)
            self.e_rev.append(rid)
            self.e_rev.append(eid)
        return eid


# ---------------------------------------------------------------------------
# expansion records
# ---------------------------------------------------------------------------
#
# xnode (how a folded vertex unpacks to original vertices):
#   ("b", orig)                             a plain original vertex
#   ("t", [member xnodes])                  a folded twin class
#   ("p", sub, [(eid, cvid, copies)])       pendant groups aligned with the
#                                           token's group order; each copy is
#                                           (bundle exp toward child, child)
#
# bundle exp (contents of one edge, oriented): (plain, [(shape, [copies])])
# where each copy is the list of interior xnodes in near-to-far order.


def _rev_bundle_exp(tokens: _Tokens, exp):
    plain, groups = exp
    out = [(tuple(reversed(shape)), [list(reversed(c)) for c in copies])
           for shape, copies in groups]
    out.sort(key=lambda g: tokens.chain_ser(g[0]))
    return (plain, out)


def _emit_xnode(x, out: list[int]) -> None:
    kind = x[0]
    if kind == "b":
        out.append(x[1])
    elif kind == "t":
        for m in x[1]:
            _emit_xnode(m, out)
    else:
        _emit_xnode(x[1], out)
        for _eid, _cvid, copies in x[2]:
            for bexp, child in copies:
                _emit_bundle_exp(bexp, out)
                _emit_xnode(child, out)


def _emit_bundle_exp(exp, out: list[int]) -> None:
    for _shape, copies in exp[1]:
        for copy in copies:
            for x in copy:
                _emit_xnode(x, out)


def _xnode_list(x) -> list[int]:
    out: list[int] = []
    _emit_xnode(x, out)
    return out


def _bundle_list(exp) -> list[int]:
    out: list[int] = []
    _emit_bundle_exp(exp, out)
    return out


# ---------------------------------------------------------------------------
# the reducer
# ---------------------------------------------------------------------------

class _Reduction:
    """Iterated twin/pendant/chain folding of a simple graph.

    After folding: `core_ids` lists the surviving vertices, `adj` maps each
    survivor to {neighbor: directed edge token}, `fold_factor` is the product
    of all fold automorphism factors, and the xv/xe records say how survivors
    and surviving edges unpack into original vertices.
    """

    def __init__(self, adj_masks, base_colors):
        n = len(adj_masks)
        self.n = n
        T = self.tokens = _Tokens()
        self.vtok: dict[int, int] = {}
        self.adj: dict[int, dict[int, int]] = {}
        self.xv: dict[int, tuple] = {}
        self.xe: dict[tuple[int, int], tuple] = {}  # (a, b) a < b, exp a -> b
        for v in range(n):
            self.vtok[v] = T.base_v(base_colors[v])
            self.adj[v] = {w: T.plain for w in bits_of(adj_masks[v])}
            self.xv[v] = ("b", v)
            for w in bits_of(adj_masks[v]):
                if v < w:
                    self.xe[(v, w)] = (1, [])
        while True:
            if self._twin_pass():
                continue
            if self._pendant_pass():
                continue
            if self._chain_pass():
                continue
            break
        self._finish()

    # -- live-edge helpers ----------------------------------------------------

    def _bundle_exp(self, a: int, b: int):
        exp = self.xe[(a, b) if a < b else (b, a)]
        return exp if a < b else _rev_bundle_exp(self.tokens, exp)

    def _drop_edge(self, a: int, b: int):
        del self.adj[a][b]
        del self.adj[b][a]
        return self.xe.pop((a, b) if a < b else (b, a))

    def _drop_vertex(self, v: int) -> None:
        assert not self.adj[v], "dropping a vertex that still has edges"
        del self.adj[v]
        del self.vtok[v]
        del self.xv[v]

    # -- folds ------------------------------------------------------------------

    def _twin_pass(self) -> bool:
        plain = self.tokens.plain
        groups: dict[tuple, list[int]] = {}
        for v in self.adj:
            nbrs = self.adj[v]
            if any(e != plain for e in nbrs.values()):
                continue  # only plain-edged classes fold with no capture
            key = (self.vtok[v], frozenset(nbrs))
            groups.setdefault(key, []).append(v)
        did = False
        for (vtok, _nbrs), members in sorted(
                groups.items(), key=lambda kv: min(kv[1])):
            if len(members) < 2:
                continue
            members.sort()
            survivor = members[0]
            self.xv[survivor] = ("t", [self.xv[m] for m in members])
            for m in members[1:]:
                for w in list(self.adj[m]):
                    self._drop_edge(m, w)
                self._drop_vertex(m)
            self.vtok[survivor] = self.tokens.twin_v(vtok, len(members))
            did = True
            # fold one class at a time: removing a class can change the
            # neighborhoods, hence the class structure, of everything else
            break
        return did

    def _pendant_pass(self) -> bool:
        pend_of: dict[int, list[int]] = {}
        for v in self.adj:
            if len(self.adj[v]) != 1:
                continue
            (p,) = self.adj[v]
            if len(self.adj[p]) == 1:
                continue  # a bare 2-vertex component stays in the core
            pend_of.setdefault(p, []).append(v)
        for p, kids in pend_of.items():
            grouped: dict[tuple[int, int], list] = {}
            for v in sorted(kids):
                key = (self.adj[p][v], self.vtok[v])
                bexp = self._bundle_exp(p, v)
                grouped.setdefault(key, []).append((bexp, self.xv[v]))
                self._drop_edge(p, v)
                self._drop_vertex(v)
            tok_groups = tuple((e, c, len(copies))
                               for (e, c), copies in grouped.items())
            new_tok = self.tokens.pend_v(self.vtok[p], tok_groups)
            order = sorted(grouped, key=lambda g: (
                self.tokens.e_ser[g[0]], self.tokens.v_ser[g[1]]))
            self.xv[p] = ("p", self.xv[p],
                          [(e, c, grouped[(e, c)]) for e, c in order])
            self.vtok[p] = new_tok
        return bool(pend_of)

    def _chain_pass(self) -> bool:
        plain = self.tokens.plain

        def foldable(v: int) -> bool:
            d = self.adj[v]
            return len(d) == 2 and all(e == plain for e in d.values())

        visited: set[int] = set()
        folds: list[tuple[int, int, list[int]]] = []
        for v0 in sorted(self.adj):
            if v0 in visited or not foldable(v0):
                continue
            chain = [v0]
            nbrs = sorted(self.adj[v0])
            prev, cur = v0, nbrs[0]
            while foldable(cur) and cur != v0:
                chain.append(cur)
                prev, cur = cur, next(u for u in self.adj[cur] if u != prev)
            if cur == v0:
                visited.update(chain)  # an isolated cycle: leave it whole
                continue
            end_b = cur
            head: list[int] = []
            prev, cur = v0, nbrs[1]
            while foldable(cur):
                head.append(cur)
                prev, cur = cur, next(u for u in self.adj[cur] if u != prev)
            end_a = cur
            interior = list(reversed(head)) + chain  # ordered end_a -> end_b
            visited.update(interior)
            if end_a == end_b:
                continue  # both ends anchor on one vertex: leave it whole
            folds.append((end_a, end_b, interior))
        for a, b, interior in folds:
            shape = tuple(self.vtok[v] for v in interior)
            copy = [self.xv[v] for v in interior]
            self._drop_edge(a, interior[0])
            for u, w in zip(interior, interior[1:]):
                self._drop_edge(u, w)
            self._drop_edge(interior[-1], b)
            for u in interior:
                self._drop_vertex(u)
            self._absorb_chain(a, b, shape, copy)
        return bool(folds)

    def _absorb_chain(self, a: int, b: int, shape, copy) -> None:
        if b < a:
            a, b = b, a
            shape = tuple(reversed(shape))
            copy = list(reversed(copy))
        T = self.tokens
        if b in self.adj[a]:
            plain_flag, groups = self.xe[(a, b)]
            groups = [(s, list(copies)) for s, copies in groups]
        else:
            plain_flag, groups = 0, []
            self.adj[a][b] = T.plain  # placeholder, replaced below
            self.adj[b][a] = T.plain
        for i, (s, copies) in enumerate(groups):
            if s == shape:
                copies.append(copy)
                break
        else:
            groups.append((shape, [copy]))
        groups.sort(key=lambda g: T.chain_ser(g[0]))
        eid = T.edge_e(plain_flag, tuple((s, len(c)) for s, c in groups))
        self.adj[a][b] = eid
        self.adj[b][a] = T.e_rev[eid]
        self.xe[(a, b)] = (plain_flag, groups)

    def _finish(self) -> None:
        T = self.tokens
        live = sorted(self.adj)
        self.core_ids = live
        self.core_index = {v: i for i, v in enumerate(live)}
        total = 0
        factor = 1
        for v in live:
            total += T.v_size[self.vtok[v]]
            factor *= T.v_fac[self.vtok[v]]
        for (a, b) in self.xe:
            e = self.adj[a][b]
            total += T.e_size[e]
            factor *= T.e_fac[e]
        assert total == self.n, "reduction lost or duplicated vertices"
        self.fold_factor = factor


# ---------------------------------------------------------------------------
# individualization-refinement search on the folded core
# ---------------------------------------------------------------------------

class _OrbitTracker:
    """Union-find over vertex orbits, fed lazily from a growing generator
    list.  One tracker lives per search node; each generator is applied at
    most once."""

    __slots__ = ("parent", "applied")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.applied = 0

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def absorb(self, gens, prefix) -> None:
        parent = self.parent
        for g in gens[self.applied:]:
            if all(g[p] == p for p in prefix):
                for v in range(len(parent)):
                    a, b = self.find(v), self.find(g[v])
                    if a != b:
                        parent[a] = b
        self.applied = len(gens)


class _CoreSearch:
    """Exact canonical order and automorphism group of a colored core.

    adj[v] maps neighbor -> directed edge color.  Only orbit pruning and
    abandon-on-rediscovered-leaf cuts are used; both preserve the canonical
    minimum and the completeness of the generator set.
    """

    def __init__(self, n: int, colors, adj):
        self.n = n
        self.colors = list(colors)
        self.adj = adj
        self.items = [sorted(adj[v].items()) for v in range(n)]
        self.first_order: list[int] | None = None
        self.first_bytes: bytes | None = None
        self.first_path: list[int] = []
        self.best_order: list[int] | None = None
        self.best_bytes: bytes | None = None
        self.gens: list[tuple[int, ...]] = []
        self._gen_set: set[tuple[int, ...]] = set()

    def _refine(self, cells: list[list[int]]) -> list[list[int]]:
        n = self.n
        cid = [0] * n
        while True:
            for i, cell in enumerate(cells):
                for v in cell:
                    cid[v] = i
            out: list[list[int]] = []
            did = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                sigs: dict[tuple, list[int]] = {}
                for v in cell:
                    key = tuple(sorted((cid[u], e) for u, e in self.items[v]))
                    sigs.setdefault(key, []).append(v)
                if len(sigs) > 1:
                    did = True
                for key in sorted(sigs):
                    out.append(sigs[key])
            cells = out
            if not did:
                return cells

    def _leaf_bytes(self, order: list[int]) -> bytes:
        pos = {v: i for i, v in enumerate(order)}
        out = bytearray(self.n.to_bytes(4, "big"))
        for v in order:
            out += self.colors[v].to_bytes(4, "big")
        for v in order:
            row = sorted((pos[u], e) for u, e in self.items[v])
            out += len(row).to_bytes(4, "big")
            for p, e in row:
                out += p.to_bytes(4, "big") + e.to_bytes(4, "big")
        return bytes(out)

    def _record_leaf(self, cells, prefix) -> bool:
        order = [c[0] for c in cells]
        b = self._leaf_bytes(order)
        if self.first_bytes is None:
            self.first_order = order
            self.first_bytes = b
            self.first_path = list(prefix)
            self.best_order = order
            self.best_bytes = b
            return False
        matched = False
        for a_order, a_bytes in ((self.first_order, self.first_bytes),
                                 (self.best_order, self.best_bytes)):
            if b == a_bytes:
                perm = [0] * self.n
                for i in range(self.n):
                    perm[a_order[i]] = order[i]
                tperm = tuple(perm)
                if tperm != tuple(range(self.n)) and tperm not in self._gen_set:
                    self._gen_set.add(tperm)
                    self.gens.append(tperm)
                matched = True
                break
        if b < self.best_bytes:
            self.best_order = order
            self.best_bytes = b
            return False
        return matched

    def _dfs(self, cells, prefix: list[int], on_first: bool) -> bool:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            return self._record_leaf(cells, prefix)
        cell = cells[target]
        head = cells[:target]
        rest = cells[target + 1:]
        tracker = _OrbitTracker(self.n)
        explored: list[int] = []
        for v in cell:
            tracker.absorb(self.gens, prefix)
            root = tracker.find(v)
            if any(tracker.find(u) == root for u in explored):
                continue
            first_child = not explored
            explored.append(v)
            nxt = head + [[v], [u for u in cell if u != v]] + rest
            prefix.append(v)
            redundant = self._dfs(self._refine(nxt), prefix, on_first and first_child)
            prefix.pop()
            if redundant and first_child and not on_first:
                # this whole node maps into already-explored territory
                return True
        return False

    def run(self):
        if self.n == 0:
            return [], 1, []
        by_color: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            by_color.setdefault(c, []).append(v)
        cells = self._refine([by_color[c] for c in sorted(by_color)])
        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, 4 * self.n + 1000))
        try:
            self._dfs(cells, [], True)
        finally:
            sys.setrecursionlimit(old_limit)
        aut_order = 1
        for i, v in enumerate(self.first_path):
            tracker = _OrbitTracker(self.n)
            tracker.absorb(self.gens, self.first_path[:i])
            root = tracker.find(v)
            aut_order *= sum(1 for u in range(self.n) if tracker.find(u) == root)
        return self.best_order, aut_order, self.gens


# ---------------------------------------------------------------------------
# assembling reductions with the core search
# ---------------------------------------------------------------------------

def _analyze_colored(adj_masks, base_colors):
    """Fold, rank the surviving tokens label-freely, and search the core.

    Returns (reduction, core canonical order as core indices, core aut order,
    core generators as core-index permutations).
    """
    red = _Reduction(adj_masks, base_colors)
    T = red.tokens
    live = red.core_ids
    vranks = {vid: i for i, vid in enumerate(sorted(
        {red.vtok[v] for v in live}, key=lambda vid: T.v_ser[vid]))}
    used_e = {e for v in live for e in red.adj[v].values()}
    eranks = {eid: i for i, eid in enumerate(sorted(
        used_e, key=lambda eid: T.e_ser[eid]))}
    idx = red.core_index
    core_adj = [{idx[w]: eranks[e] for w, e in red.adj[v].items()}
                for v in live]
    search = _CoreSearch(len(live), [vranks[red.vtok[v]] for v in live],
                         core_adj)
    corder, caut, cgens = search.run()
    return red, corder, caut, cgens


def _expansion_order(red: _Reduction, corder) -> list[int]:
    """Original-vertex order realizing the core's canonical order."""
    live = red.core_ids
    out: list[int] = []
    for ci in corder:
        _emit_xnode(red.xv[live[ci]], out)
    pos = {live[ci]: i for i, ci in enumerate(corder)}
    for i, ci in enumerate(corder):
        a = live[ci]
        for b in sorted(red.adj[a], key=lambda w: pos[w]):
            if pos[b] > i:
                _emit_bundle_exp(red._bundle_exp(a, b), out)
    assert sorted(out) == list(range(red.n)), "expansion must cover all vertices"
    return out


def _serialize(adj, order: list[int]) -> bytes:
    n = len(adj)
    pos = {v: i for i, v in enumerate(order)}
    out = bytearray(n.to_bytes(4, "big"))
    row_len = (n + 7) // 8
    for v in order:
        rowbits = 0
        for w in bits_of(adj[v]):
            rowbits |= 1 << pos[w]
        out += rowbits.to_bytes(row_len, "big")
    return bytes(out)


def canonical_form(g: BZUGraph) -> CanonicalForm:
    adj = g.combined_adjacency
    if len(adj) > MAX_CANONICAL_VERTICES:
        raise ValueError(f"canonical form capped at {MAX_CANONICAL_VERTICES} vertices")
    red, corder, _, _ = _analyze_colored(adj, [0] * len(adj))
    order = _expansion_order(red, corder)
    return CanonicalForm(bytes=_serialize(adj, order), relabeling=tuple(order))


def graphs_isomorphic(g1: BZUGraph, g2: BZUGraph) -> tuple[int, ...] | None:
    """Vertex mapping (unified index of g1 -> unified index of g2), or None."""
    f1 = canonical_form(g1)
    f2 = canonical_form(g2)
    if f1.bytes != f2.bytes:
        return None
    n = len(f1.relabeling)
    mapping = [0] * n
    for p in range(n):
        mapping[f1.relabeling[p]] = f2.relabeling[p]
    adj1 = g1.combined_adjacency
    adj2 = g2.combined_adjacency
    for v in range(n):
        image_mask = 0
        for w in bits_of(adj1[v]):
            image_mask |= 1 << mapping[w]
        if image_mask != adj2[mapping[v]]:
            raise AssertionError("isomorphism mapping failed edge verification")
    return tuple(mapping)


# ---------------------------------------------------------------------------
# automorphism generators: swaps inside folds, plus lifted core generators
# ---------------------------------------------------------------------------

def _swap_blocks(n: int, block_a: list[int], block_b: list[int]) -> tuple[int, ...]:
    assert len(block_a) == len(block_b)
    perm = list(range(n))
    for x, y in zip(block_a, block_b):
        perm[x] = y
        perm[y] = x
    return tuple(perm)


def _collect_xnode_swaps(n: int, x, gens: list[tuple[int, ...]]) -> None:
    kind = x[0]
    if kind == "b":
        return
    if kind == "t":
        members = x[1]
        for m in members:
            _collect_xnode_swaps(n, m, gens)
        for a, b in zip(members, members[1:]):
            gens.append(_swap_blocks(n, _xnode_list(a), _xnode_list(b)))
        return
    _collect_xnode_swaps(n, x[1], gens)
    for _eid, _cvid, copies in x[2]:
        for bexp, child in copies:
            _collect_bundle_swaps(n, bexp, gens)
            _collect_xnode_swaps(n, child, gens)
        for (ea, ca), (eb, cb) in zip(copies, copies[1:]):
            gens.append(_swap_blocks(
                n, _bundle_list(ea) + _xnode_list(ca),
                _bundle_list(eb) + _xnode_list(cb)))


def _collect_bundle_swaps(n: int, exp, gens: list[tuple[int, ...]]) -> None:
    for _shape, copies in exp[1]:
        for copy in copies:
            for x in copy:
                _collect_xnode_swaps(n, x, gens)
        for ca, cb in zip(copies, copies[1:]):
            la: list[int] = []
            lb: list[int] = []
            for x in ca:
                _emit_xnode(x, la)
            for x in cb:
                _emit_xnode(x, lb)
            gens.append(_swap_blocks(n, la, lb))


def _pair_xnode(x, y, perm: list[int]) -> None:
    kind = x[0]
    assert kind == y[0], "core generator maps differently shaped folds"
    if kind == "b":
        perm[x[1]] = y[1]
        return
    if kind == "t":
        for mx, my in zip(x[1], y[1]):
            _pair_xnode(mx, my, perm)
        return
    _pair_xnode(x[1], y[1], perm)
    for (ex, cx, copies_x), (ey, cy, copies_y) in zip(x[2], y[2]):
        assert (ex, cx, len(copies_x)) == (ey, cy, len(copies_y))
        for (bx, chx), (by, chy) in zip(copies_x, copies_y):
            _pair_bundle(bx, by, perm)
            _pair_xnode(chx, chy, perm)


def _pair_bundle(ex, ey, perm: list[int]) -> None:
    assert ex[0] == ey[0], "core generator maps differently shaped bundles"
    for (sx, copies_x), (sy, copies_y) in zip(ex[1], ey[1]):
        assert sx == sy and len(copies_x) == len(copies_y)
        for cx, cy in zip(copies_x, copies_y):
            for xx, yy in zip(cx, cy):
                _pair_xnode(xx, yy, perm)


def _lift_core_gen(red: _Reduction, cg) -> tuple[int, ...]:
    live = red.core_ids
    perm = list(range(red.n))
    image = {live[i]: live[cg[i]] for i in range(len(live))}
    for v in live:
        _pair_xnode(red.xv[v], red.xv[image[v]], perm)
    for (a, b) in red.xe:
        ia, ib = image[a], image[b]
        assert red.adj[a][b] == red.adj[ia][ib], \
            "core generator does not preserve edge tokens"
        _pair_bundle(red._bundle_exp(a, b), red._bundle_exp(ia, ib), perm)
    return tuple(perm)


def is_graph_automorphism(adj, perm) -> bool:
    n = len(adj)
    if sorted(perm) != list(range(n)):
        return False
    for v in range(n):
        image_mask = 0
        for w in bits_of(adj[v]):
            image_mask |= 1 << perm[w]
        if image_mask != adj[perm[v]]:
            return False
    return True


def graph_aut(g: BZUGraph) -> GraphAutReport:
    adj = g.combined_adjacency
    n = len(adj)
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"automorphism search capped at {MAX_CANONICAL_VERTICES} vertices")

    red, _corder, caut, cgens = _analyze_colored(adj, [0] * n)
    full = red.fold_factor * caut

    part_colors = [0 if v < g.n_left else 1 for v in range(n)]
    red_p, _corder_p, caut_p, _ = _analyze_colored(adj, part_colors)
    pp = red_p.fold_factor * caut_p
    assert full % pp == 0, "part-preserving order must divide the full order"

    generators: list[tuple[int, ...]] = []
    if n <= MAX_GENERATOR_VERTICES:
        for v in red.core_ids:
            _collect_xnode_swaps(n, red.xv[v], generators)
        for (a, b) in sorted(red.xe):
            _collect_bundle_swaps(n, red.xe[(a, b)], generators)
        for cg in cgens:
            generators.append(_lift_core_gen(red, cg))
        identity = tuple(range(n))
        seen: set[tuple[int, ...]] = set()
        kept: list[tuple[int, ...]] = []
        for p in generators:
            if p != identity and p not in seen:
                seen.add(p)
                kept.append(p)
        generators = kept
        for p in generators:
            if not is_graph_automorphism(adj, p):
                raise AssertionError("generated permutation failed edge verification")
    return GraphAutReport(full_order=full, part_preserving_order=pp,
                          generators=tuple(generators))


# ---------------------------------------------------------------------------
# ring automorphisms acting on the graph
# ---------------------------------------------------------------------------

def phi_vertex_perms(spec: RingSpec) -> list[tuple[int, ...]]:
    """Each ring automorphism restricted to the graph's vertex set."""
    ring = get_ring(spec)
    g = build_graph(spec)
    n_left = g.n_left
    unified_index: dict = {}
    for i, z in enumerate(g.left_labels):
        unified_index[z] = i
    for j, u in enumerate(g.right_labels):
        unified_index[u] = n_left + j
    vertices = list(g.left_labels) + list(g.right_labels)

    adj = g.combined_adjacency
    perms = []
    for elem_perm in aut_group_elements(spec):
        perm = []
        for v in vertices:
            image = ring.elements[elem_perm[ring.index_of[v]]]
            perm.append(unified_index[image])  # ring auts preserve the classes
        tperm = tuple(perm)
        if not is_graph_automorphism(adj, tperm):
            raise AssertionError(
                "ring automorphism does not preserve graph adjacency")
        perms.append(tperm)
    return perms


def phi_analysis(spec: RingSpec) -> PhiReport:
    desc = ring_aut_group(spec)
    g = build_graph(spec)
    report = graph_aut(g)
    perms = phi_vertex_perms(spec)
    distinct = len(set(perms))
    injective = distinct == desc.order
    surjective = distinct == report.part_preserving_order
    return PhiReport(
        ring_aut_order=desc.order,
        graph_aut_order=report.part_preserving_order,
        injective=injective,
        surjective=surjective,
        iso=injective and surjective,
    )

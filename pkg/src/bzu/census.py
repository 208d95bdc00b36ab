"""Ring catalogs, per-ring structural reports, and claim audits.

The census runs three passes.  First it enumerates a deterministic catalog
of ring presentations: every multiset of finite-field orders up to a bound,
plus a non-reduced family (prime-power modular rings, truncated polynomial
rings, non-squarefree modular rings, and local-times-field products).
Second it computes a structural report per ring: ring invariants, part
sizes, edge count, connectivity, diameter, girth, coloring bounds, K33
content, planarity, automorphism orders, and the image of the ring
automorphism action on the graph.  Third it grades a fixed registry of
structural claims against those reports, attaching to every verdict a
certificate that can be rechecked from ring arithmetic alone; isomorphism
claims over pairs of rings are graded by the separate rigidity audit.

A claim whose hypothesis a ring does not meet is reported NOT_APPLICABLE
rather than skipped, so the hypothesis boundary of every claim stays
visible in the output table.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .analysis import (
    GraphStats,
    K33Witness,
    analyze,
    bfs_distances,
    components_of,
    find_k33,
    verify_k33,
)
from .graphs import (
    BZUGraph,
    build_graph,
    predicted_part_sizes,
    predicted_single_support_degree,
)
from .planarity import KuratowskiSubdivision, planarity, verify_subdivision
from .rings import Element, ElementClass, Ring, RingInvariants, get_ring
from .specs import RingSpec, gf, parse_ring_spec, poly_quotient, product, zmod
from .symmetry import (
    GraphAutReport,
    PhiReport,
    canonical_form,
    graph_aut,
    graphs_isomorphic,
    phi_analysis,
)

DEFAULT_REDUCED_MAX = 200
DEFAULT_NON_REDUCED_MAX = 64
DEFAULT_RIGIDITY_MAX = 64
DEFAULT_PHI_MAX = 32

HOLDS = "HOLDS"
FAILS = "FAILS"
NOT_APPLICABLE = "NOT_APPLICABLE"

#: Registry of audited claims, keyed by stable id.  The wording states what
#: is asserted about every ring in the claim's scope; the per-ring verdict
#: says whether the assertion survived recomputation.
CLAIMS = {
    "C1": "local rings produce edgeless graphs",
    "C2": "among reduced rings, the graph is edgeless exactly for fields",
    "C3": "reduced non-fields produce connected graphs of diameter at most 4",
    "C4": "every graph has girth 4 or is acyclic",
    "C5": "chromatic and clique numbers equal 2 exactly when an edge exists",
    "C6": "nonempty complete bipartite graphs arise exactly from products of "
          "two or more order-2 fields",
    "C7": "no graph contains K33 as a subgraph",
    "C8": "graphs of rings in the asserted families are planar",
    "C9": "reduced rings have isomorphic graphs exactly when the rings are "
          "isomorphic",
    "C10": "the ring-automorphism action is an isomorphism onto the graph "
           "automorphism group exactly for the three catalogued rings",
    "C11": "part sizes and single-support degrees follow the product "
           "formulas",
}

PER_RING_CLAIMS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C10",
                   "C11")


# ---------------------------------------------------------------------------
# report types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphSummary:
    zstar_count: int
    unit_count: int
    edge_count: int
    stats: GraphStats
    k33: K33Witness | None
    planarity_verdict: str  # "Planar" | "NonPlanar"
    face_count: int | None
    subdivision: KuratowskiSubdivision | None


@dataclass(frozen=True)
class RingReport:
    spec_text: str
    invariants: RingInvariants
    decomposition: tuple[int, ...] | None  # field orders when reduced
    graph_summary: GraphSummary
    aut: GraphAutReport
    phi: PhiReport | None
    canonical_form_digest: bytes


@dataclass(frozen=True)
class ClaimVerdict:
    claim_id: str
    ring: str  # spec text, or "A | B" for pair claims
    verdict: str  # HOLDS | FAILS | NOT_APPLICABLE
    certificate: dict


@dataclass(frozen=True)
class RigidityRow:
    spec_a: str
    spec_b: str
    ring_order: int
    reduced_pair: bool
    graphs_isomorphic: bool
    rings_isomorphic: bool | None  # None: not decided by coarse invariants
    mapping: tuple[int, ...] | None  # vertex map a->b when graphs match
    detail: dict


@dataclass(frozen=True)
class CensusResult:
    reports: tuple[RingReport, ...]
    verdicts: tuple[ClaimVerdict, ...]
    rigidity_rows: tuple[RigidityRow, ...]
    bounds: dict


# ---------------------------------------------------------------------------
# catalog enumeration
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_powers_upto(bound: int) -> list[int]:
    out = []
    for p in range(2, bound + 1):
        if not _is_prime(p):
            continue
        q = p
        while q <= bound:
            out.append(q)
            q *= p
    return sorted(out)


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # n itself is prime


def enumerate_reduced_specs(max_order: int) -> list[RingSpec]:
    """One spec per multiset of field orders with product <= max_order.

    Output order: by factor count, then by the sorted order tuple.  Every
    decomposition multiset appears exactly once.
    """
    pps = _prime_powers_upto(max_order)
    found: list[tuple[int, ...]] = []

    def descend(start: int, budget: int, acc: list[int]) -> None:
        for idx in range(start, len(pps)):
            q = pps[idx]
            if q > budget:
                break
            acc.append(q)
            found.append(tuple(acc))
            descend(idx, budget // q, acc)
            acc.pop()

    descend(0, max_order, [])
    found.sort(key=lambda t: (len(t), t))
    assert len(set(found)) == len(found)
    return [product(*(gf(q) for q in t)) for t in found]


def enumerate_non_reduced_specs(max_order: int) -> list[RingSpec]:
    """Deterministic non-reduced catalog up to max_order.

    Families: modular rings of prime-power order (exponent >= 2), truncated
    polynomial rings over a field, modular rings of non-squarefree composite
    order, and products of one such local ring with one field.
    """
    locals_: list[RingSpec] = []
    for p in range(2, max_order + 1):
        if not _is_prime(p):
            continue
        q = p * p
        while q <= max_order:
            locals_.append(product(zmod(q)))
            q *= p
    for q in _prime_powers_upto(max_order):
        m = 2
        while q ** m <= max_order:
            coeffs = (0,) * m + (1,)
            locals_.append(product(poly_quotient(gf(q), coeffs)))
            m += 1

    specs = list(locals_)
    for n in range(2, max_order + 1):
        if not _squarefree(n) and not _is_prime_power(n):
            specs.append(product(zmod(n)))
    for loc in locals_:
        for r in _prime_powers_upto(max_order):
            if loc.order * r <= max_order:
                specs.append(product(loc.components[0], gf(r)))

    seen = set()
    unique = []
    for s in sorted(specs, key=lambda s: (s.order, s.text)):
        if s.text not in seen:
            seen.add(s.text)
            unique.append(s)
    return unique


def enumerate_test_rings(max_order: int) -> list[RingSpec]:
    """Reduced catalog followed by the non-reduced catalog, deduplicated."""
    out = list(enumerate_reduced_specs(max_order))
    seen = {s.text for s in out}
    for s in enumerate_non_reduced_specs(max_order):
        if s.text not in seen:
            seen.add(s.text)
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# per-ring analysis
# ---------------------------------------------------------------------------

def analyze_ring(spec: RingSpec, phi_max_order: int = DEFAULT_PHI_MAX
                 ) -> RingReport:
    """Full structural report for one ring; deterministic for a given spec."""
    ring = get_ring(spec)
    inv = ring.invariants()
    dec = ring.reduced_decomposition().field_orders if inv.is_reduced else None

    g = build_graph(spec)
    stats = analyze(g)
    k33 = find_k33(g)
    pl = planarity(g)
    aut = graph_aut(g)
    phi = phi_analysis(spec) if inv.order <= phi_max_order else None
    digest = hashlib.sha256(canonical_form(g).bytes).digest()

    # cross-checks tying the graph back to the ring invariants
    assert g.n_left == inv.zstar_count and g.n_right == inv.unit_count
    assert (g.edge_count == 0) == (stats.chromatic <= 1)
    assert sum(stats.degree_multiset_left) == g.edge_count

    summary = GraphSummary(
        zstar_count=g.n_left,
        unit_count=g.n_right,
        edge_count=g.edge_count,
        stats=stats,
        k33=k33,
        planarity_verdict=pl.verdict,
        face_count=pl.embedding.face_count if pl.embedding else None,
        subdivision=pl.subdivision,
    )
    return RingReport(spec_text=spec.text, invariants=inv, decomposition=dec,
                      graph_summary=summary, aut=aut, phi=phi,
                      canonical_form_digest=digest)


def _analysis_worker(args: tuple[str, int]) -> RingReport:
    text, phi_max = args
    return analyze_ring(parse_ring_spec(text), phi_max_order=phi_max)


# ---------------------------------------------------------------------------
# certificate helpers (raw ring arithmetic only)
# ---------------------------------------------------------------------------

def _elem_json(e):
    return [_elem_json(x) for x in e] if isinstance(e, tuple) else e


def _prod(xs) -> int:
    return reduce(lambda a, b: a * b, xs, 1)


class _Auditor:
    """Grades the per-ring claims for one report.

    Every FAILS certificate is rechecked here against sums computed directly
    by the ring before it is emitted; a recheck failure is a bug and raises.
    """

    def __init__(self, report: RingReport):
        self.rep = report
        self.spec = parse_ring_spec(report.spec_text)
        self.ring = get_ring(self.spec)
        self.graph = build_graph(self.spec)
        self.adj = self.graph.combined_adjacency
        self._left_index = {lab: i
                            for i, lab in enumerate(self.graph.left_labels)}

    # -- raw arithmetic ----------------------------------------------------

    def _class_of(self, e: Element) -> str:
        return self.ring.classify_scan(e).value

    def _label(self, v: int):
        g = self.graph
        return g.left_labels[v] if v < g.n_left else g.right_labels[v - g.n_left]

    def _check_edge(self, a: Element, b: Element) -> dict:
        """Recheck adjacency of an unordered vertex pair from sums alone."""
        ca, cb = self._class_of(a), self._class_of(b)
        assert {ca, cb} == {ElementClass.UNIT.value,
                            ElementClass.ZERO_DIVISOR.value}
        s = self.ring.add(a, b)
        cs = self._class_of(s)
        assert cs != ElementClass.UNIT.value
        return {"sum": _elem_json(s), "sum_class": cs}

    def _check_non_edge(self, z: Element, u: Element) -> dict:
        s = self.ring.add(z, u)
        cs = self._class_of(s)
        assert cs == ElementClass.UNIT.value
        return {"sum": _elem_json(s), "sum_class": cs}

    def _checked_path(self, verts: Sequence[int]) -> list:
        labels = [self._label(v) for v in verts]
        for a, b in zip(labels, labels[1:]):
            self._check_edge(a, b)
        return [_elem_json(x) for x in labels]

    def _checked_cycle(self, verts: Sequence[int]) -> list:
        assert len(set(verts)) == len(verts) and len(verts) >= 4
        labels = [self._label(v) for v in verts]
        for a, b in zip(labels, labels[1:] + labels[:1]):
            self._check_edge(a, b)
        return [_elem_json(x) for x in labels]

    def _first_edge_cert(self) -> dict:
        i, j = self.graph.edges()[0]
        z = self.graph.left_labels[i]
        u = self.graph.right_labels[j]
        cert = {"zero_divisor": _elem_json(z), "unit": _elem_json(u)}
        cert.update(self._check_edge(z, u))
        return cert

    def _eccentric_pair(self) -> tuple[int, int, int]:
        """(vertex, vertex, distance) realizing the diameter; connected only."""
        n = len(self.adj)
        best = (0, 0, 0)
        for v in range(n):
            dist = bfs_distances(self.adj, v)
            w = max(range(n), key=lambda x: dist[x])
            if dist[w] > best[2]:
                best = (v, w, dist[w])
        return best

    def _bfs_path(self, src: int, dst: int) -> list[int]:
        parent = {src: -1}
        frontier = [src]
        while frontier and dst not in parent:
            nxt = []
            for v in frontier:
                m = self.adj[v]
                while m:
                    w = (m & -m).bit_length() - 1
                    m &= m - 1
                    if w not in parent:
                        parent[w] = v
                        nxt.append(w)
            frontier = nxt
        path = [dst]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        return path[::-1]

    # -- claims ------------------------------------------------------------

    def run(self) -> list[ClaimVerdict]:
        return [getattr(self, "_" + cid.lower())() for cid in PER_RING_CLAIMS]

    def _emit(self, cid: str, verdict: str, cert: dict) -> ClaimVerdict:
        return ClaimVerdict(claim_id=cid, ring=self.rep.spec_text,
                            verdict=verdict, certificate=cert)

    def _c1(self) -> ClaimVerdict:
        inv = self.rep.invariants
        if not inv.is_local:
            return self._emit("C1", NOT_APPLICABLE, {"is_local": False})
        e = self.rep.graph_summary.edge_count
        if e == 0:
            cert = {"is_local": True, "edge_count": 0,
                    "zstar_count": inv.zstar_count,
                    "unit_count": inv.unit_count}
            return self._emit("C1", HOLDS, cert)
        return self._emit("C1", FAILS,
                          {"is_local": True, "edge": self._first_edge_cert()})

    def _c2(self) -> ClaimVerdict:
        inv = self.rep.invariants
        if not inv.is_reduced:
            return self._emit("C2", NOT_APPLICABLE, {"is_reduced": False})
        edgeless = self.rep.graph_summary.edge_count == 0
        cert = {"is_field": inv.is_field, "edge_count":
                self.rep.graph_summary.edge_count}
        if edgeless == inv.is_field:
            if not edgeless:
                cert["edge"] = self._first_edge_cert()
            return self._emit("C2", HOLDS, cert)
        if not edgeless:
            cert["edge"] = self._first_edge_cert()
        else:
            cert["zstar_count"] = inv.zstar_count
            cert["unit_count"] = inv.unit_count
        return self._emit("C2", FAILS, cert)

    def _c3(self) -> ClaimVerdict:
        inv = self.rep.invariants
        if not inv.is_reduced or inv.is_field:
            return self._emit("C3", NOT_APPLICABLE,
                              {"is_reduced": inv.is_reduced,
                               "is_field": inv.is_field})
        stats = self.rep.graph_summary.stats
        if not stats.is_connected:
            comp_reps = self._component_representatives()
            return self._emit("C3", FAILS,
                              {"connected": False,
                               "vertices_in_distinct_components": comp_reps})
        v, w, d = self._eccentric_pair()
        path = self._checked_path(self._bfs_path(v, w))
        cert = {"connected": True, "diameter": d, "witness_path": path}
        assert stats.diameter.kind == "Finite" and stats.diameter.value == d
        if d <= 4:
            return self._emit("C3", HOLDS, cert)
        return self._emit("C3", FAILS, cert)

    def _component_representatives(self) -> list:
        reps = []
        for comp in components_of(self.adj)[:2]:
            v = (comp & -comp).bit_length() - 1
            reps.append(_elem_json(self._label(v)))
        return reps

    def _c4(self) -> ClaimVerdict:
        stats = self.rep.graph_summary.stats
        if stats.girth.kind == "Acyclic":
            return self._emit("C4", HOLDS, {"girth": "Acyclic",
                                            "is_forest": stats.is_forest})
        cycle = self._checked_cycle(stats.girth_witness)
        assert len(cycle) == stats.girth.value
        cert = {"girth": stats.girth.value, "shortest_cycle": cycle}
        verdict = HOLDS if stats.girth.value == 4 else FAILS
        return self._emit("C4", verdict, cert)

    def _c5(self) -> ClaimVerdict:
        g = self.graph
        stats = self.rep.graph_summary.stats
        if g.n_vertices == 0:
            expected = 0
        elif g.edge_count == 0:
            expected = 1
        else:
            expected = 2
        cert = {"edge_count": g.edge_count, "chromatic": stats.chromatic,
                "clique": stats.clique, "expected": expected}
        if g.edge_count:
            cert["edge"] = self._first_edge_cert()
        verdict = (HOLDS if stats.chromatic == expected
                   and stats.clique == expected else FAILS)
        return self._emit("C5", verdict, cert)

    def _c6(self) -> ClaimVerdict:
        inv = self.rep.invariants
        dec = self.rep.decomposition
        boolean = (dec is not None and len(dec) >= 2
                   and all(q == 2 for q in dec))
        cb = self.rep.graph_summary.stats.is_complete_bipartite
        cert = {"complete_bipartite": cb,
                "boolean_factor_count": len(dec) if boolean else None,
                "part_sizes": [inv.zstar_count, inv.unit_count],
                "edge_count": self.rep.graph_summary.edge_count}
        if cb == boolean:
            if cb:
                self._recheck_complete_bipartite()
            return self._emit("C6", HOLDS, cert)
        if boolean and not cb:
            z, u = self._first_missing_pair()
            cert["non_adjacent_pair"] = {"zero_divisor": _elem_json(z),
                                         "unit": _elem_json(u),
                                         **self._check_non_edge(z, u)}
        else:
            cert["decomposition"] = list(dec) if dec else None
            self._recheck_complete_bipartite()
        return self._emit("C6", FAILS, cert)

    def _recheck_complete_bipartite(self) -> None:
        g = self.graph
        for z in g.left_labels:
            for u in g.right_labels:
                self._check_edge(z, u)

    def _first_missing_pair(self) -> tuple[Element, Element]:
        g = self.graph
        for i, z in enumerate(g.left_labels):
            for j, u in enumerate(g.right_labels):
                if not g.has_edge(i, j):
                    return z, u
        raise AssertionError("no missing pair in a non-complete graph")

    def _c7(self) -> ClaimVerdict:
        w = self.rep.graph_summary.k33
        if w is None:
            return self._emit("C7", HOLDS,
                              {"k33_found": False,
                               "left_size": self.graph.n_left,
                               "right_size": self.graph.n_right})
        assert verify_k33(self.graph, w)
        lefts = [self.graph.left_labels[i] for i in w.left_triple]
        rights = [self.graph.right_labels[j] for j in w.right_triple]
        sums = []
        for z in lefts:
            for u in rights:
                sums.append({"zero_divisor": _elem_json(z),
                             "unit": _elem_json(u),
                             **self._check_edge(z, u)})
        cert = {"left": [_elem_json(z) for z in lefts],
                "right": [_elem_json(u) for u in rights],
                "adjacency_checks": sums}
        return self._emit("C7", FAILS, cert)

    def _c8(self) -> ClaimVerdict:
        inv = self.rep.invariants
        dec = self.rep.decomposition
        scopes = []
        if inv.zstar_count <= 2 or inv.unit_count <= 2:
            scopes.append("part_at_most_two")
        if inv.characteristic == inv.order and inv.order <= 100:
            scopes.append("modular_upto_100")
        if dec is not None and len(set(dec)) == 1 and inv.order <= 64:
            scopes.append("equal_field_factors_upto_64")
        if inv.is_local and inv.order <= 16:
            scopes.append("local_upto_16")
        summary = self.rep.graph_summary
        cert = {"scopes": scopes, "verdict": summary.planarity_verdict}
        if not scopes:
            return self._emit("C8", NOT_APPLICABLE, cert)
        if summary.planarity_verdict == "Planar":
            cert["face_count"] = summary.face_count
            return self._emit("C8", HOLDS, cert)
        cert["witness"] = self._nonplanarity_cert(summary)
        return self._emit("C8", FAILS, cert)

    def _nonplanarity_cert(self, summary: GraphSummary) -> dict:
        if summary.k33 is not None:
            w = summary.k33
            assert verify_k33(self.graph, w)
            lefts = [self.graph.left_labels[i] for i in w.left_triple]
            rights = [self.graph.right_labels[j] for j in w.right_triple]
            for z in lefts:
                for u in rights:
                    self._check_edge(z, u)
            return {"kind": "K33_subgraph",
                    "left": [_elem_json(z) for z in lefts],
                    "right": [_elem_json(u) for u in rights]}
        sub = summary.subdivision
        assert sub is not None and verify_subdivision(self.graph, sub)
        edges = []
        for a, b in sub.edges:
            la, lb = self._label(a), self._label(b)
            self._check_edge(la, lb)
            edges.append([_elem_json(la), _elem_json(lb)])
        return {"kind": sub.kind + "_subdivision", "edges": edges}

    def _c10(self) -> ClaimVerdict:
        dec = self.rep.decomposition
        case = None
        if dec == (2,):
            case = "order_two_field"
        elif dec == (2, 2):
            case = "two_boolean_factors"
        elif (dec is not None and len(dec) == 2 and dec[0] != dec[1]
              and _is_prime(dec[0]) and _is_prime(dec[1])):
            case = "two_distinct_prime_fields"
        predicted = case is not None
        phi = self.rep.phi
        if phi is None:
            return self._emit("C10", NOT_APPLICABLE,
                              {"classification_case": case,
                               "predicted_isomorphism": predicted,
                               "action_analysis": "skipped above bound"})
        actual = phi.injective and phi.ring_aut_order == self.rep.aut.full_order
        cert = {"classification_case": case,
                "predicted_isomorphism": predicted,
                "ring_aut_order": phi.ring_aut_order,
                "graph_aut_full_order": self.rep.aut.full_order,
                "graph_aut_part_preserving_order":
                    self.rep.aut.part_preserving_order,
                "action_injective": phi.injective,
                "actual_isomorphism": actual}
        return self._emit("C10", HOLDS if predicted == actual else FAILS, cert)

    def _c11(self) -> ClaimVerdict:
        inv = self.rep.invariants
        dec = self.rep.decomposition
        if dec is None:
            return self._emit("C11", NOT_APPLICABLE, {"is_reduced": False})
        pred = predicted_part_sizes(dec)
        cert: dict = {
            "field_orders": list(dec),
            "unit_count": {"predicted": pred.unit_count,
                           "actual": inv.unit_count},
            "zstar_count": {"predicted": pred.zstar_count,
                            "actual": inv.zstar_count},
        }
        ok = (pred.unit_count == inv.unit_count
              and pred.zstar_count == inv.zstar_count)

        atoms = _primitive_idempotents(self.ring)
        atom_orders = [len({self.ring.mul(x, e) for x in self.ring.elements})
                       for e in atoms]
        atom_rows = []
        order_of = list(enumerate(atom_orders))
        for pos, q in sorted(order_of, key=lambda t: t[1]):
            e = atoms[pos]
            others = _prod(r - 1 for p2, r in order_of if p2 != pos)
            supported = [z for z in self.graph.left_labels
                         if self.ring.mul(z, e) == z]
            observed = sorted({self.graph.degree_left(self._left_index[z])
                               for z in supported})
            atom_rows.append({"field_order": q, "vertex_count": len(supported),
                              "predicted_degree": others,
                              "observed_degrees": observed})
            # single-support vertices exist only when there are >= 2 factors
            expect_count = q - 1 if len(atoms) >= 2 else 0
            if len(supported) != expect_count or observed not in ([], [others]):
                ok = False
        cert["single_support"] = atom_rows
        if sorted(atom_orders) != list(dec):
            ok = False
        cert["idempotent_field_orders"] = sorted(atom_orders)
        for i in range(len(dec)):
            assert (predicted_single_support_degree(dec, i)
                    == _prod(q - 1 for j, q in enumerate(dec) if j != i))

        if len(dec) == 2:
            q1, q2 = dec
            alt = (q1 - 1) * q2 + q1 * (q2 - 1) - 1
            cert["alternative_count_expression"] = {
                "value": alt,
                "matches_actual_zstar_count": alt == inv.zstar_count,
            }
        return self._emit("C11", HOLDS if ok else FAILS, cert)


def _primitive_idempotents(ring: Ring) -> list[Element]:
    idems = [e for e in ring.elements
             if ring.mul(e, e) == e and e != ring.zero]
    atoms = []
    for e in idems:
        if all(f is e or ring.mul(f, e) != f for f in idems):
            atoms.append(e)
    return atoms


def claim_audit(reports: Sequence[RingReport]) -> list[ClaimVerdict]:
    """Per-ring verdicts for every registered claim, in report order."""
    out: list[ClaimVerdict] = []
    for rep in reports:
        out.extend(_Auditor(rep).run())
    return out


# ---------------------------------------------------------------------------
# rigidity audit over pairs
# ---------------------------------------------------------------------------

def _coarse_invariants(ring: Ring) -> dict:
    inv = ring.invariants()
    add_orders = sorted(_additive_order(ring, x) for x in ring.elements)
    unit_orders = sorted(_unit_order(ring, u) for u in ring.elements
                         if ring.is_unit_structural(u))
    nilpotents = sum(1 for x in ring.elements if _is_nilpotent(ring, x))
    idempotents = sum(1 for x in ring.elements if ring.mul(x, x) == x)
    return {"characteristic": inv.characteristic,
            "unit_count": inv.unit_count,
            "is_local": inv.is_local,
            "additive_order_multiset": add_orders,
            "unit_order_multiset": unit_orders,
            "nilpotent_count": nilpotents,
            "idempotent_count": idempotents}


def _additive_order(ring: Ring, x: Element) -> int:
    acc = x
    k = 1
    while acc != ring.zero:
        acc = ring.add(acc, x)
        k += 1
    return k


def _unit_order(ring: Ring, u: Element) -> int:
    acc = u
    k = 1
    while acc != ring.one:
        acc = ring.mul(acc, u)
        k += 1
    return k


def _is_nilpotent(ring: Ring, x: Element) -> bool:
    acc = x
    for _ in range(max(1, ring.order.bit_length())):
        if acc == ring.zero:
            return True
        acc = ring.mul(acc, acc)
    return acc == ring.zero


def _label_mapping(ga: BZUGraph, gb: BZUGraph,
                   mapping: tuple[int, ...]) -> list:
    def lab(g: BZUGraph, v: int):
        return g.left_labels[v] if v < g.n_left else g.right_labels[v - g.n_left]
    return [[_elem_json(lab(ga, v)), _elem_json(lab(gb, mapping[v]))]
            for v in range(len(mapping))]


def rigidity_audit(max_order: int = DEFAULT_RIGIDITY_MAX,
                   include_non_reduced: bool = True) -> list[RigidityRow]:
    """Compare graphs of equal-order rings by canonical form.

    Reduced comparanda: the reduced catalog plus modular rings of squarefree
    composite order (presentations that duplicate a product decomposition on
    purpose).  A row is emitted for every pair whose graphs or rings match.
    Non-reduced catalog pairs with matching graphs are emitted as
    informational rows; their ring-isomorphism status is decided by coarse
    invariants where possible and left open otherwise.
    """
    entries = []
    for spec in enumerate_reduced_specs(max_order):
        entries.append((spec, True))
    for n in range(6, max_order + 1):
        if _squarefree(n) and not _is_prime(n):
            entries.append((product(zmod(n)), True))

    rows: list[RigidityRow] = []
    rows.extend(_rigidity_pass(entries, reduced=True))
    if include_non_reduced:
        nr = [(spec, False) for spec in enumerate_non_reduced_specs(max_order)]
        rows.extend(_rigidity_pass(nr, reduced=False))
    rows.sort(key=lambda r: (r.ring_order, r.spec_a, r.spec_b))
    return rows


def _rigidity_pass(entries, reduced: bool) -> list[RigidityRow]:
    prepared = []
    for spec, _ in entries:
        ring = get_ring(spec)
        inv = ring.invariants()
        g = build_graph(spec)
        cf = canonical_form(g)
        dec = (ring.reduced_decomposition().field_orders
               if inv.is_reduced else None)
        prepared.append((spec, ring, inv, g, cf, dec))

    by_order: dict[int, list] = {}
    for item in prepared:
        by_order.setdefault(item[2].order, []).append(item)

    rows = []
    for order in sorted(by_order):
        group = by_order[order]
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                sa, ra, ia, ga, ca, da = group[i]
                sb, rb, ib, gb, cb, db = group[j]
                graphs_iso = ca.bytes == cb.bytes
                detail: dict = {
                    "canonical_digest_a": hashlib.sha256(ca.bytes).hexdigest(),
                    "canonical_digest_b": hashlib.sha256(cb.bytes).hexdigest(),
                }
                mapping = None
                if graphs_iso:
                    mapping = graphs_isomorphic(ga, gb)
                    assert mapping is not None
                    detail["vertex_mapping"] = _label_mapping(ga, gb, mapping)
                if reduced:
                    rings_iso: bool | None = da == db
                    detail["decomposition_a"] = list(da)
                    detail["decomposition_b"] = list(db)
                    if rings_iso and not graphs_iso:
                        detail["distinguishing"] = {
                            "left_degrees_a": list(
                                _stats_degrees(ga)),
                            "left_degrees_b": list(
                                _stats_degrees(gb)),
                        }
                else:
                    rings_iso, why = _non_reduced_iso_status(ra, rb)
                    detail["ring_isomorphism_basis"] = why
                if graphs_iso or rings_iso:
                    rows.append(RigidityRow(
                        spec_a=sa.text, spec_b=sb.text, ring_order=order,
                        reduced_pair=reduced, graphs_isomorphic=graphs_iso,
                        rings_isomorphic=rings_iso, mapping=mapping,
                        detail=detail))
    return rows


def _stats_degrees(g: BZUGraph) -> tuple[int, ...]:
    return tuple(sorted(g.degree_left(i) for i in range(g.n_left)))


def _non_reduced_iso_status(ra: Ring, rb: Ring) -> tuple[bool | None, dict]:
    ia, ib = ra.invariants(), rb.invariants()
    if (ia.characteristic == ia.order and ib.characteristic == ib.order
            and ia.order == ib.order):
        # both generated by 1, hence both are the modular ring of that order
        return True, {"reason": "characteristic equals order on both sides",
                      "order": ia.order}
    ca, cb = _coarse_invariants(ra), _coarse_invariants(rb)
    for key in ca:
        if ca[key] != cb[key]:
            return False, {"separating_invariant": key,
                           "values": [ca[key], cb[key]]}
    return None, {"reason": "coarse invariants agree; not decided"}


def rigidity_claim_verdicts(rows: Sequence[RigidityRow]) -> list[ClaimVerdict]:
    """Pair verdicts for the graph-iso-versus-ring-iso claim."""
    out = []
    for row in rows:
        ring = f"{row.spec_a} | {row.spec_b}"
        cert = {"ring_order": row.ring_order,
                "graphs_isomorphic": row.graphs_isomorphic,
                "rings_isomorphic": row.rings_isomorphic}
        cert.update(row.detail)
        if not row.reduced_pair:
            out.append(ClaimVerdict("C9", ring, NOT_APPLICABLE, cert))
        elif row.graphs_isomorphic == bool(row.rings_isomorphic):
            out.append(ClaimVerdict("C9", ring, HOLDS, cert))
        else:
            out.append(ClaimVerdict("C9", ring, FAILS, cert))
    return out


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def run_census(reduced_max: int = DEFAULT_REDUCED_MAX,
               non_reduced_max: int = DEFAULT_NON_REDUCED_MAX,
               rigidity_max: int = DEFAULT_RIGIDITY_MAX,
               phi_max: int = DEFAULT_PHI_MAX,
               jobs: int = 1) -> CensusResult:
    """Analyze the full catalog and grade every claim.

    Output is byte-identical for any worker count: specs are analyzed in
    catalog order and verdicts are derived from the ordered reports.
    """
    reduced = enumerate_reduced_specs(reduced_max)
    reduced_texts = {r.text for r in reduced}
    specs = reduced + [s for s in enumerate_non_reduced_specs(non_reduced_max)
                       if s.text not in reduced_texts]
    tasks = [(s.text, phi_max) for s in specs]

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_analysis_worker, tasks))
    else:
        reports = [_analysis_worker(t) for t in tasks]

    verdicts = claim_audit(reports)
    rows = rigidity_audit(rigidity_max)
    verdicts.extend(rigidity_claim_verdicts(rows))
    bounds = {"reduced_max": reduced_max, "non_reduced_max": non_reduced_max,
              "rigidity_max": rigidity_max, "phi_max": phi_max}
    return CensusResult(reports=tuple(reports), verdicts=tuple(verdicts),
                        rigidity_rows=tuple(rows), bounds=bounds)

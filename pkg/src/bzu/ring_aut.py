"""Ring automorphism groups.

Three routes, picked by the shape of the spec:

* Trivial: a single Z/n component.  Any automorphism fixes 1 and therefore
  every element.
* Exact: a product of Galois fields.  The group is the product of the cyclic
  Galois groups (order k_i each, generated by the Frobenius x -> x^p)
  extended by permutations of factors with equal order, so
  |Aut| = prod(k_i) * prod(multiplicity(q)!).
* BruteForce: everything else, capped by order.  Backtracks over images of a
  greedy additive generating set and verifies multiplicativity at the leaves.

Generators are element permutations: perm[i] is the enumeration index of the
image of elements[i].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iproduct

from .polynomials import ExtField, poly_trim
from .rings import Ring, get_ring
from .specs import GaloisField, RingSpec, Zmod

Perm = tuple[int, ...]

BRUTE_FORCE_CAP = 64
_EXHAUSTIVE_VERIFY_CAP = 256


@dataclass(frozen=True)
class RingAutDescription:
    order: int
    generators: tuple[Perm, ...]
    method: str  # "Exact" | "Trivial" | "BruteForce"


class AutCapExceeded(ValueError):
    pass


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[x] for x in q)


# ---------------------------------------------------------------------------
# generator verification
# ---------------------------------------------------------------------------

def verify_generator(ring: Ring, perm: Perm, sample_pairs: int = 2048) -> None:
    """Raise unless perm is a ring automorphism fixing 0 and 1.

    Pairs are checked exhaustively up to order 256, on a seeded sample above.
    """
    n = ring.order
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError("generator is not a permutation of the element list")
    idx0 = ring.index_of[ring.zero]
    idx1 = ring.index_of[ring.one]
    if perm[idx0] != idx0 or perm[idx1] != idx1:
        raise ValueError("generator moves 0 or 1")
    elems = ring.elements
    index_of = ring.index_of
    if n <= _EXHAUSTIVE_VERIFY_CAP:
        pairs = iproduct(range(n), range(n))
    else:
        rng = random.Random(0xA0701)
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(sample_pairs))
    for i, j in pairs:
        a, b = elems[i], elems[j]
        if perm[index_of[ring.add(a, b)]] != index_of[ring.add(elems[perm[i]], elems[perm[j]])]:
            raise ValueError("generator is not additive")
        if perm[index_of[ring.mul(a, b)]] != index_of[ring.mul(elems[perm[i]], elems[perm[j]])]:
            raise ValueError("generator is not multiplicative")


def is_ring_automorphism(ring: Ring, perm: Perm) -> bool:
    try:
        verify_generator(ring, perm)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# exact route: products of Galois fields
# ---------------------------------------------------------------------------

def _field_iso(src: ExtField, dst: ExtField):
    """An isomorphism between two presentations of the same field.

    Sends the generator of src to a root of src's modulus in dst and extends
    by evaluating coefficient polynomials.  Used when equal-order factors
    carry different moduli.
    """
    if src.order != dst.order:
        raise ValueError("field orders differ")
    if src.modulus == dst.modulus:
        return lambda a: a
    p = src.p

    def eval_mod(poly_int: tuple[int, ...], beta):
        acc = dst.zero
        for c in reversed(poly_int):
            acc = dst.mul(acc, beta)
            acc = dst.add(acc, dst.from_int(c))
        return acc

    root = None
    for i in range(dst.order):
        beta = dst.elem_at(i)
        if eval_mod(src.modulus, beta) == dst.zero:
            root = beta
            break
    assert root is not None, "splitting field must contain a root"

    powers = [dst.one]
    for _ in range(src.k - 1):
        powers.append(dst.mul(powers[-1], root))

    def phi(a):
        acc = dst.zero
        for c, pw in zip(a, powers):
            term = pw
            acc_c = dst.zero
            for _ in range(c):
                acc_c = dst.add(acc_c, term)
            acc = dst.add(acc, acc_c)
        return acc

    return phi


def _component_map_perm(ring: Ring, comp_maps) -> Perm:
    index_of = ring.index_of
    return tuple(index_of[tuple(f(x) for f, x in zip(comp_maps, e))]
                 for e in ring.elements)


def _swap_components_perm(ring: Ring, i: int, j: int, phi, phi_inv) -> Perm:
    index_of = ring.index_of
    out = []
    for e in ring.elements:
        parts = list(e)
        parts[i], parts[j] = phi_inv(parts[j]), phi(parts[i])
        out.append(index_of[tuple(parts)])
    return tuple(out)


def _exact_product_of_fields(ring: Ring, spec: RingSpec) -> RingAutDescription:
    comps = spec.components
    k_product = 1
    gens: list[Perm] = []
    ident = identity_perm(ring.order)

    for i, comp in enumerate(comps):
        assert isinstance(comp, GaloisField)
        k_product *= comp.k
        if comp.k > 1:
            field = comp.field
            p = comp.p
            frob = lambda x, fld=field, pp=p: _field_pow(fld, x, pp)
            maps = [(frob if j == i else (lambda x: x)) for j in range(len(comps))]
            gens.append(_component_map_perm(ring, maps))

    by_order: dict[int, list[int]] = {}
    for i, comp in enumerate(comps):
        by_order.setdefault(comp.order, []).append(i)
    mult_factorial = 1
    for idxs in by_order.values():
        for m in range(2, len(idxs) + 1):
            mult_factorial *= m
        for a, b in zip(idxs, idxs[1:]):
            fa: GaloisField = comps[a]
            fb: GaloisField = comps[b]
            phi = _field_iso(fa.field, fb.field)
            phi_inv = _field_iso(fb.field, fa.field)
            gens.append(_swap_components_perm(ring, a, b, phi, phi_inv))

    order = k_product * mult_factorial
    gens = [g for g in gens if g != ident]
    for g in gens:
        verify_generator(ring, g)
    return RingAutDescription(order=order, generators=tuple(gens), method="Exact")


def _field_pow(field: ExtField, x, e: int):
    acc = field.one
    base = x
    while e:
        if e & 1:
            acc = field.mul(acc, base)
        base = field.mul(base, base)
        e >>= 1
    return acc


# ---------------------------------------------------------------------------
# brute-force route
# ---------------------------------------------------------------------------

def _additive_order(ring: Ring, e) -> int:
    acc = e
    n = 1
    while acc != ring.zero:
        acc = ring.add(acc, e)
        n += 1
    return n


def _additive_generators(ring: Ring) -> list:
    """Greedy generating set for (R, +), starting with 1."""
    span = {ring.zero}
    gens = []
    for g in [ring.one] + ring.elements:
        if g in span:
            continue
        gens.append(g)
        new = set(span)
        frontier = list(span)
        acc = g
        while acc != ring.zero:
            for s in frontier:
                new.add(ring.add(s, acc))
            acc = ring.add(acc, g)
        span = new
        if len(span) == ring.order:
            break
    return gens


def _brute_force_automorphisms(ring: Ring) -> list[Perm]:
    """All ring automorphisms, by backtracking over additive-generator images."""
    elems = ring.elements
    index_of = ring.index_of
    n = ring.order
    gens = _additive_generators(ring)
    add_order = {e: _additive_order(ring, e) for e in elems if e != ring.zero}
    unit_mask = {e: ring.is_unit_structural(e) for e in elems}

    found: list[Perm] = []

    def extend(sigma: dict, g, image) -> dict | None:
        """Add g -> image plus all additive consequences; None on conflict."""
        out = dict(sigma)
        base_items = list(sigma.items())
        acc, acc_img = g, image
        while True:
            for s, s_img in base_items:
                t = ring.add(s, acc)
                t_img = ring.add(s_img, acc_img)
                prev = out.get(t)
                if prev is None:
                    out[t] = t_img
                elif prev != t_img:
                    return None
            if acc == ring.zero:
                break
            acc = ring.add(acc, g)
            acc_img = ring.add(acc_img, image)
            if acc == g:
                break
        return out

    def mult_ok_partial(sigma: dict) -> bool:
        for a in gens:
            if a not in sigma:
                continue
            for b in gens:
                if b not in sigma:
                    continue
                ab = ring.mul(a, b)
                if ab in sigma and sigma[ab] != ring.mul(sigma[a], sigma[b]):
                    return False
        return True

    def rec(i: int, sigma: dict):
        if i == len(gens):
            if len(sigma) != n or len(set(sigma.values())) != n:
                return
            if sigma[ring.one] != ring.one:
                return
            for a in elems:
                sa = sigma[a]
                for b in elems:
                    if sigma[ring.mul(a, b)] != ring.mul(sa, sigma[b]):
                        return
            found.append(tuple(index_of[sigma[e]] for e in elems))
            return
        g = gens[i]
        if g == ring.one:
            nxt = extend(sigma, g, ring.one)
            if nxt is not None and mult_ok_partial(nxt):
                rec(i + 1, nxt)
            return
        used = set(sigma.values())
        for c in elems:
            if c == ring.zero or c in used:
                continue
            if add_order[c] != add_order[g] or unit_mask[c] != unit_mask[g]:
                continue
            nxt = extend(sigma, g, c)
            if nxt is not None and mult_ok_partial(nxt):
                rec(i + 1, nxt)

    rec(0, {ring.zero: ring.zero})
    return found


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def ring_aut_group(spec: RingSpec, cap: int = BRUTE_FORCE_CAP) -> RingAutDescription:
    ring = get_ring(spec)
    comps = spec.components
    if len(comps) == 1 and isinstance(comps[0], Zmod):
        return RingAutDescription(order=1, generators=(), method="Trivial")
    if all(isinstance(c, GaloisField) for c in comps):
        return _exact_product_of_fields(ring, spec)
    if ring.order > cap:
        raise AutCapExceeded(
            f"brute-force automorphism search capped at order {cap}, got {ring.order}")
    auts = _brute_force_automorphisms(ring)
    ident = identity_perm(ring.order)
    gens = tuple(p for p in auts if p != ident)
    for g in gens:
        verify_generator(ring, g)
    return RingAutDescription(order=len(auts), generators=gens, method="BruteForce")


def aut_group_elements(spec: RingSpec, cap: int = BRUTE_FORCE_CAP,
                       limit: int = 100_000) -> list[Perm]:
    """Every element of the ring automorphism group, as closure of generators."""
    desc = ring_aut_group(spec, cap)
    n = get_ring(spec).order
    ident = identity_perm(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in desc.generators:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > limit:
                        raise RuntimeError("automorphism group closure exceeded limit")
        frontier = nxt
    assert len(seen) == desc.order, (
        f"generator closure has {len(seen)} elements, expected {desc.order}")
    return sorted(seen)

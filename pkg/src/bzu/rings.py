"""Element enumeration, arithmetic, classification, and ring invariants.

A Ring binds a RingSpec to concrete element lists and operation tables.
Elements are nested tuples exactly as the spec types encode them; kernels
that need speed work on per-component element indices instead and only
translate at the boundary.

Two unit criteria coexist on purpose: classify_element scans for an inverse
(the defining check), while the bulk classifier decides unit-ness per
component (gcd with n, nonzero in a field, coprimality with the quotient
modulus).  Tests assert they agree; the fast one feeds the graph kernels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from .polynomials import (
    factorize,
    poly_divmod,
    poly_factor_monic,
    poly_mod,
    poly_mul,
    poly_trim,
)
from .specs import Component, GaloisField, PolyQuotient, RingSpec, Zmod

Element = tuple

DEFAULT_MAX_ORDER = 65536


class ElementClass(enum.Enum):
    ZERO = "Zero"
    UNIT = "Unit"
    ZERO_DIVISOR = "ZeroDivisorStar"


@dataclass(frozen=True)
class RingInvariants:
    order: int
    characteristic: int
    unit_count: int
    zstar_count: int
    is_field: bool
    is_local: bool
    is_reduced: bool
    maximal_ideal: tuple[Element, ...] | None


@dataclass(frozen=True)
class ReducedDecomposition:
    field_orders: tuple[int, ...]  # sorted multiset of prime powers


class NotReducedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# per-component operation adapters
# ---------------------------------------------------------------------------

class _ZmodOps:
    def __init__(self, comp: Zmod):
        self.n = comp.n
        self.order = comp.n
        self.zero = 0
        self.one = 1
        self.elems = list(range(comp.n))

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def is_unit(self, a) -> bool:
        return math.gcd(a, self.n) == 1

    def index_of(self, a) -> int:
        return a

    def add_index(self, i, j) -> int:
        s = i + j
        return s - self.n if s >= self.n else s


class _FieldOps:
    def __init__(self, comp: GaloisField):
        self.field = comp.field
        self.order = comp.order
        self.zero = self.field.zero
        self.one = self.field.one
        self.elems = [self.field.elem_at(i) for i in range(self.order)]
        self._index = {e: i for i, e in enumerate(self.elems)}
        self._add_table: list[list[int]] | None = None

    def add(self, a, b):
        return self.field.add(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def is_unit(self, a) -> bool:
        return a != self.zero

    def index_of(self, a) -> int:
        return self._index[a]

    def add_index(self, i, j) -> int:
        if self._add_table is None:
            self._add_table = [[self._index[self.add(a, b)] for b in self.elems]
                               for a in self.elems]
        return self._add_table[i][j]


class _QuotientOps:
    def __init__(self, comp: PolyQuotient):
        self.base = comp.base.field
        self.f = comp.f
        self.m = comp.m
        self.order = comp.order
        self.zero = (self.base.zero,) * self.m
        self.one = (self.base.one,) + (self.base.zero,) * (self.m - 1)
        self.elems = [self._elem_at(i) for i in range(self.order)]
        self._index = {e: i for i, e in enumerate(self.elems)}
        # a residue is a unit iff no irreducible factor of f divides it
        self._factors = [g for g, _ in poly_factor_monic(self.base, self.f)]
        self._add_table: list[list[int]] | None = None

    def _elem_at(self, idx: int):
        digits = []
        for _ in range(self.m):
            idx, low = divmod(idx, self.base.order)
            digits.append(self.base.elem_at(low))
        return tuple(digits)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        prod = poly_mul(self.base, poly_trim(a), poly_trim(b))
        rem = poly_mod(self.base, prod, self.f)
        return tuple(rem) + (self.base.zero,) * (self.m - len(rem))

    def is_unit(self, a) -> bool:
        pa = poly_trim(a)
        if not pa:
            return False
        return all(poly_mod(self.base, pa, g) for g in self._factors)

    def index_of(self, a) -> int:
        return self._index[a]

    def add_index(self, i, j) -> int:
        if self._add_table is None:
            self._add_table = [[self._index[self.add(a, b)] for b in self.elems]
                               for a in self.elems]
        return self._add_table[i][j]


def _ops_for(comp: Component):
    if isinstance(comp, Zmod):
        return _ZmodOps(comp)
    if isinstance(comp, GaloisField):
        return _FieldOps(comp)
    return _QuotientOps(comp)


# ---------------------------------------------------------------------------
# bound ring
# ---------------------------------------------------------------------------

class Ring:
    """A RingSpec bound to element lists and arithmetic."""

    def __init__(self, spec: RingSpec, max_order: int = DEFAULT_MAX_ORDER):
        if spec.order > max_order:
            raise ValueError(
                f"ring order {spec.order} exceeds the enumeration cap {max_order}")
        self.spec = spec
        self.order = spec.order
        self.comps = [_ops_for(c) for c in spec.components]
        self.zero: Element = tuple(c.zero for c in self.comps)
        self.one: Element = tuple(c.one for c in self.comps)
        # mixed radix, last component fastest
        self.elements: list[Element] = [tuple(parts) for parts in
                                        iproduct(*(c.elems for c in self.comps))]
        self.index_of: dict[Element, int] = {e: i for i, e in enumerate(self.elements)}
        self._classes: list[ElementClass] | None = None

    # -- arithmetic on structured elements ---------------------------------
    def add(self, a: Element, b: Element) -> Element:
        return tuple(c.add(x, y) for c, x, y in zip(self.comps, a, b))

    def neg(self, a: Element) -> Element:
        return tuple(c.neg(x) for c, x in zip(self.comps, a))

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        return tuple(c.mul(x, y) for c, x, y in zip(self.comps, a, b))

    def comp_indices(self, a: Element) -> tuple[int, ...]:
        return tuple(c.index_of(x) for c, x in zip(self.comps, a))

    # -- classification -----------------------------------------------------
    def is_unit_structural(self, a: Element) -> bool:
        return all(c.is_unit(x) for c, x in zip(self.comps, a))

    def classes(self) -> list[ElementClass]:
        """Class of every element, by enumeration index (structural criterion)."""
        if self._classes is None:
            out = []
            for e in self.elements:
                if e == self.zero:
                    out.append(ElementClass.ZERO)
                elif self.is_unit_structural(e):
                    out.append(ElementClass.UNIT)
                else:
                    out.append(ElementClass.ZERO_DIVISOR)
            self._classes = out
        return self._classes

    def classify_scan(self, e: Element) -> ElementClass:
        """Defining criterion: 0 is Zero, inverses are scanned for, every
        remaining element is a zero-divisor (finite commutative ring)."""
        if e == self.zero:
            return ElementClass.ZERO
        for s in self.elements:
            if self.mul(e, s) == self.one:
                return ElementClass.UNIT
        return ElementClass.ZERO_DIVISOR

    def is_zero_divisor_scan(self, e: Element) -> bool:
        """Direct check: some s != 0 annihilates e."""
        for s in self.elements:
            if s != self.zero and self.mul(e, s) == self.zero:
                return True
        return False

    def vertex_sets(self) -> tuple[list[Element], list[Element]]:
        classes = self.classes()
        zstar = [e for e, c in zip(self.elements, classes) if c is ElementClass.ZERO_DIVISOR]
        units = [e for e, c in zip(self.elements, classes) if c is ElementClass.UNIT]
        return zstar, units

    # -- invariants ----------------------------------------------------------
    def characteristic(self) -> int:
        acc = self.one
        n = 1
        while acc != self.zero:
            acc = self.add(acc, self.one)
            n += 1
            if n > self.order + 1:
                raise RuntimeError("additive order of 1 exceeded the ring order")
        return n

    def nilpotent_witness(self) -> Element | None:
        """A nonzero element some power of which is 0, or None (reduced)."""
        steps = max(1, self.order.bit_length() + 1)
        for e in self.elements:
            if e == self.zero:
                continue
            x = e
            for _ in range(steps):
                x = self.mul(x, x)
                if x == self.zero:
                    return e
        return None

    def is_reduced_structural(self) -> bool:
        for comp, ops in zip(self.spec.components, self.comps):
            if isinstance(comp, Zmod):
                if any(e > 1 for e in factorize(comp.n).values()):
                    return False
            elif isinstance(comp, PolyQuotient):
                if any(m > 1 for _, m in poly_factor_monic(ops.base, comp.f)):
                    return False
        return True

    def is_local_structural(self) -> bool:
        if len(self.comps) > 1:
            return False  # e_1 and 1 - e_1 are non-units, their sum is 1
        comp = self.spec.components[0]
        if isinstance(comp, Zmod):
            return len(factorize(comp.n)) == 1
        if isinstance(comp, GaloisField):
            return True
        return len(self.comps[0]._factors) == 1

    def is_local_by_closure(self) -> bool:
        """Definition: the non-units are closed under addition."""
        nonunits = [e for e in self.elements if not self.is_unit_structural(e)]
        for a in nonunits:
            for b in nonunits:
                if self.is_unit_structural(self.add(a, b)):
                    return False
        return True

    def invariants(self) -> RingInvariants:
        classes = self.classes()
        unit_count = sum(1 for c in classes if c is ElementClass.UNIT)
        zstar_count = sum(1 for c in classes if c is ElementClass.ZERO_DIVISOR)
        is_local = self.is_local_structural()
        maximal_ideal = None
        if is_local:
            maximal_ideal = tuple(e for e, c in zip(self.elements, classes)
                                  if c is not ElementClass.UNIT)
        return RingInvariants(
            order=self.order,
            characteristic=self.characteristic(),
            unit_count=unit_count,
            zstar_count=zstar_count,
            is_field=zstar_count == 0,
            is_local=is_local,
            is_reduced=self.is_reduced_structural(),
            maximal_ideal=maximal_ideal,
        )

    def reduced_decomposition(self) -> ReducedDecomposition:
        orders: list[int] = []
        for comp, ops in zip(self.spec.components, self.comps):
            if isinstance(comp, Zmod):
                fac = factorize(comp.n)
                if any(e > 1 for e in fac.values()):
                    raise NotReducedError(
                        f"{comp.text} is not reduced: {comp.n} is not squarefree")
                orders.extend(fac)
            elif isinstance(comp, GaloisField):
                orders.append(comp.order)
            else:
                factors = poly_factor_monic(ops.base, comp.f)
                if any(m > 1 for _, m in factors):
                    raise NotReducedError(
                        f"{comp.text} is not reduced: the modulus is not squarefree")
                orders.extend(ops.base.order ** (len(g) - 1) for g, _ in factors)
        return ReducedDecomposition(field_orders=tuple(sorted(orders)))

    # -- index-level kernel support -----------------------------------------
    def unit_masks(self) -> list[list[bool]]:
        return [[c.is_unit(e) for e in c.elems] for c in self.comps]


@lru_cache(maxsize=256)
def get_ring(spec: RingSpec, max_order: int = DEFAULT_MAX_ORDER) -> Ring:
    return Ring(spec, max_order)


# ---------------------------------------------------------------------------
# module-level spec operations
# ---------------------------------------------------------------------------

def enumerate_elements(spec: RingSpec, max_order: int = DEFAULT_MAX_ORDER) -> list[Element]:
    return get_ring(spec, max_order).elements


def elem_add(spec: RingSpec, a: Element, b: Element) -> Element:
    return get_ring(spec).add(a, b)


def elem_neg(spec: RingSpec, a: Element) -> Element:
    return get_ring(spec).neg(a)


def elem_mul(spec: RingSpec, a: Element, b: Element) -> Element:
    return get_ring(spec).mul(a, b)


def classify_element(spec: RingSpec, e: Element) -> ElementClass:
    return get_ring(spec).classify_scan(e)


def vertex_sets(spec: RingSpec) -> tuple[list[Element], list[Element]]:
    return get_ring(spec).vertex_sets()


def ring_invariants(spec: RingSpec) -> RingInvariants:
    return get_ring(spec).invariants()


def reduced_decomposition(spec: RingSpec) -> ReducedDecomposition:
    return get_ring(spec).reduced_decomposition()

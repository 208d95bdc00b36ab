"""Ring descriptions and the text grammar for them.

A ring is a nonempty product of components, each one of:

    Z/n                 integers mod n
    GF(q)               the field with q = p^k elements, canonical modulus
    GF(q)[t]/(f)        quotient of the polynomial ring over GF(q) by monic f

Grammar (whitespace insignificant)::

    ring     = term, { ("x" | "*"), term } ;
    term     = "Z/", nat | "GF(", nat, ")" | "GF(", nat, ")[", ident, "]/(", poly, ")" ;
    poly     = monomial, { ("+" | "-"), monomial } ;
    monomial = [ nat ], [ ident, [ "^", nat ] ] ;

The components of a parsed spec are canonical: GF(q) always resolves to the
lexicographically least monic irreducible modulus, and rendering a spec back
to text is a fixed point of parsing.  Specs built directly may carry a
non-canonical field modulus or composite quotient coefficients; those render
in quotient notation and are accepted everywhere downstream, but the grammar
cannot express every such form back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .polynomials import (
    ExtField,
    PrimeField,
    canonical_irreducible,
    poly_trim,
    prime_power,
)

MAX_RING_ORDER = 2 ** 63 - 1  # orders must fit in a signed 64-bit word


class ParseError(ValueError):
    """Spec text rejected; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# component types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Zmod:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("Z/n needs n >= 2")
        if self.n > MAX_RING_ORDER:
            raise ValueError("component order exceeds 64-bit bound")

    @property
    def order(self) -> int:
        return self.n

    @property
    def text(self) -> str:
        return f"Z/{self.n}"


@dataclass(frozen=True)
class GaloisField:
    p: int
    k: int
    modulus: tuple[int, ...]  # monic irreducible over F_p, ascending degree

    def __post_init__(self):
        _ext_field(self.p, self.k, self.modulus)  # validates

    @property
    def order(self) -> int:
        return self.p ** self.k

    @property
    def field(self) -> ExtField:
        return _ext_field(self.p, self.k, self.modulus)

    @property
    def is_canonical(self) -> bool:
        return self.modulus == canonical_irreducible(self.p, self.k)

    @property
    def text(self) -> str:
        if self.is_canonical:
            return f"GF({self.order})"
        f = tuple((c,) for c in self.modulus)  # render over the prime subfield
        return f"GF({self.p})[t]/({_poly_text(f, 't', 1, 'a')})"


@dataclass(frozen=True)
class PolyQuotient:
    base: GaloisField
    f: tuple[tuple[int, ...], ...]  # monic over the base field, ascending
    var: str = "t"

    def __post_init__(self):
        fld = self.base.field
        f = poly_trim(self.f)
        if len(f) < 2:
            raise ValueError("quotient modulus must have degree >= 1")
        if f[-1] != fld.one:
            raise ValueError("quotient modulus must be monic")
        if f != self.f:
            raise ValueError("quotient modulus must be normalized (no trailing zeros)")
        if any(len(c) != self.base.k for c in f):
            raise ValueError("coefficients must be base-field encodings")
        if not self.var.isidentifier():
            raise ValueError(f"bad variable name {self.var!r}")

    @property
    def m(self) -> int:
        return len(self.f) - 1

    @property
    def order(self) -> int:
        return self.base.order ** self.m

    @property
    def base_symbol(self) -> str:
        return "a" if self.var != "a" else "b"

    @property
    def text(self) -> str:
        body = _poly_text(self.f, self.var, self.base.k, self.base_symbol)
        return f"GF({self.base.order})[{self.var}]/({body})"


Component = Zmod | GaloisField | PolyQuotient


@dataclass(frozen=True)
class RingSpec:
    components: tuple[Component, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a ring needs at least one component")
        order = 1
        for comp in self.components:
            order *= comp.order
            if order > MAX_RING_ORDER:
                raise ValueError("ring order exceeds 64-bit bound")

    @property
    def order(self) -> int:
        out = 1
        for comp in self.components:
            out *= comp.order
        return out

    @property
    def text(self) -> str:
        return " x ".join(comp.text for comp in self.components)

    def __str__(self) -> str:
        return self.text


def ring_order(spec: RingSpec) -> int:
    return spec.order


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _ext_field(p: int, k: int, modulus: tuple[int, ...]) -> ExtField:
    if k < 1:
        raise ValueError("field degree must be >= 1")
    return ExtField(p, k, modulus)


def gf(q: int) -> GaloisField:
    """The field of order q with its canonical modulus."""
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"GF({q}): {q} is not a prime power")
    p, k = pk
    return GaloisField(p, k, canonical_irreducible(p, k))


def zmod(n: int) -> Zmod:
    return Zmod(n)


def poly_quotient(base: GaloisField, int_coeffs: tuple[int, ...], var: str = "t") -> PolyQuotient:
    """Quotient by a polynomial given with prime-subfield integer coefficients."""
    fld = base.field
    f = poly_trim(tuple(fld.from_int(c) for c in int_coeffs))
    return PolyQuotient(base, f, var)


def product(*components: Component) -> RingSpec:
    return RingSpec(tuple(components))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _base_elem_text(c: tuple[int, ...], base_k: int, base_symbol: str) -> tuple[str, bool]:
    """Render one base-field coefficient; the flag says whether it is composite
    (needs parentheses when multiplying a power of the quotient variable)."""
    if all(x == 0 for x in c[1:]):
        return str(c[0]), False
    terms = []
    for i in range(base_k - 1, -1, -1):
        x = c[i]
        if x == 0:
            continue
        if i == 0:
            terms.append(str(x))
        else:
            head = "" if x == 1 else str(x)
            power = base_symbol if i == 1 else f"{base_symbol}^{i}"
            terms.append(head + power)
    return "+".join(terms), True


def _poly_text(f: tuple, var: str, base_k: int, base_symbol: str) -> str:
    one = tuple(1 if i == 0 else 0 for i in range(base_k))
    parts = []
    for deg in range(len(f) - 1, -1, -1):
        c = f[deg]
        if all(x == 0 for x in c):
            continue
        if deg == 0:
            text, _ = _base_elem_text(c, base_k, base_symbol)
            parts.append(text)
            continue
        power = var if deg == 1 else f"{var}^{deg}"
        if c == one:
            parts.append(power)
        else:
            text, composite = _base_elem_text(c, base_k, base_symbol)
            parts.append((f"({text})" if composite else text) + power)
    return " + ".join(parts) if parts else "0"


def component_labels(comp: Component) -> list[str]:
    """Labels for every element of the component in enumeration order."""
    if isinstance(comp, Zmod):
        return [str(i) for i in range(comp.n)]
    if isinstance(comp, GaloisField):
        fld = comp.field
        return [_poly_text(tuple((x,) for x in fld.elem_at(i)), "t", 1, "a")
                for i in range(fld.order)]
    fld = comp.base.field
    out = []
    for idx in range(comp.order):
        digits = []
        rest = idx
        for _ in range(comp.m):
            rest, low = divmod(rest, fld.order)
            digits.append(fld.elem_at(low))
        out.append(_poly_text(tuple(digits), comp.var, comp.base.k, comp.base_symbol))
    return out


def modulus_headers(spec: RingSpec) -> list[str]:
    """One line per component that carries a polynomial modulus."""
    out = []
    for i, comp in enumerate(spec.components, start=1):
        if isinstance(comp, GaloisField) and comp.k > 1:
            body = _poly_text(tuple((c,) for c in comp.modulus), "t", 1, "a")
            out.append(f"component {i}: GF({comp.order}) with t satisfying {body} = 0")
        elif isinstance(comp, PolyQuotient):
            body = _poly_text(comp.f, comp.var, comp.base.k, comp.base_symbol)
            out.append(f"component {i}: GF({comp.base.order})[{comp.var}] modulo {body}")
            if comp.base.k > 1:
                base_body = _poly_text(tuple((c,) for c in comp.base.modulus), comp.base_symbol, 1, "z")
                out.append(f"component {i}: base field symbol {comp.base_symbol} satisfies {base_body} = 0")
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            found = self.text[self.pos:self.pos + len(literal)] or "end of input"
            raise ParseError(f"expected {literal!r}, found {found!r}", self.pos)
        self.pos += len(literal)

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        return int(self.text[start:self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
        if self.pos == start:
            raise ParseError("expected an identifier", start)
        return self.text[start:self.pos]

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_ring_spec(text: str) -> RingSpec:
    sc = _Scanner(text)
    components = [_parse_term(sc)]
    while not sc.at_end():
        ch = sc.peek()
        if ch in ("x", "*"):
            sc.pos += 1
            components.append(_parse_term(sc))
        else:
            raise ParseError(f"expected 'x', '*' or end of input, found {ch!r}", sc.pos)
    try:
        return RingSpec(tuple(components))
    except ValueError as exc:
        raise ParseError(str(exc), sc.pos) from exc


def _parse_term(sc: _Scanner) -> Component:
    sc.skip_ws()
    start = sc.pos
    if sc.text.startswith("Z", sc.pos):
        sc.pos += 1
        sc.expect("/")
        n = sc.nat()
        try:
            return Zmod(n)
        except ValueError as exc:
            raise ParseError(str(exc), start) from exc
    if sc.text.startswith("GF", sc.pos):
        sc.pos += 2
        sc.expect("(")
        q = sc.nat()
        sc.expect(")")
        try:
            base = gf(q)
        except ValueError as exc:
            raise ParseError(str(exc), start) from exc
        if sc.peek() != "[":
            return base
        sc.expect("[")
        var = sc.ident()
        sc.expect("]")
        sc.expect("/")
        sc.expect("(")
        coeffs = _parse_poly(sc, var, base.p)
        sc.expect(")")
        try:
            return poly_quotient(base, coeffs, var)
        except ValueError as exc:
            raise ParseError(str(exc), start) from exc
    raise ParseError("expected a term: Z/n, GF(q), or GF(q)[t]/(f)", start)


def _parse_poly(sc: _Scanner, var: str, p: int) -> tuple[int, ...]:
    acc: dict[int, int] = {}
    sign = 1
    while True:
        deg, coeff = _parse_monomial(sc, var)
        acc[deg] = (acc.get(deg, 0) + sign * coeff) % p
        ch = sc.peek()
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            break
        sc.pos += 1
    top = max(acc)
    return tuple(acc.get(d, 0) for d in range(top + 1))


def _parse_monomial(sc: _Scanner, var: str) -> tuple[int, int]:
    sc.skip_ws()
    start = sc.pos
    coeff = None
    if sc.peek().isdigit():
        coeff = sc.nat()
    deg = 0
    if sc.peek().isalpha() or sc.peek() == "_":
        name = sc.ident()
        if name != var:
            raise ParseError(f"unknown variable {name!r}, the quotient variable is {var!r}",
                             start)
        deg = 1
        if sc.peek() == "^":
            sc.pos += 1
            deg = sc.nat()
    if coeff is None and deg == 0:
        raise ParseError("expected a monomial", start)
    return deg, 1 if coeff is None else coeff

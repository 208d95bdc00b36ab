"""Dense polynomial arithmetic over small finite fields.

Polynomials are tuples of coefficients in ascending degree with no trailing
zeros; the zero polynomial is the empty tuple.  Field elements are whatever
hashable encoding the field object uses (ints for prime fields, coefficient
tuples for extensions).  Everything here is exact and deterministic; sizes
are small enough that trial division beats cleverness.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

Poly = tuple  # coefficients, ascending degree, normalized


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p**k, or None if n is not a prime power."""
    f = factorize(n) if n >= 2 else {}
    if len(f) != 1:
        return None
    [(p, k)] = f.items()
    return p, k


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

class PrimeField:
    """F_p with elements 0..p-1."""

    __slots__ = ("p", "order", "zero", "one")

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.zero = 0
        self.one = 1

    def elems(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, c: int) -> int:
        return c % self.p


class ExtField:
    """GF(p^k) as F_p[x]/(modulus); elements are length-k tuples, ascending."""

    __slots__ = ("p", "k", "order", "modulus", "base", "zero", "one")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        base = PrimeField(p)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if any(not (0 <= c < p) for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not poly_is_irreducible(base, tuple(modulus)):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = tuple(modulus)
        self.base = base
        self.zero = (0,) * k
        self.one = tuple(1 if i == 0 else 0 for i in range(k))

    def elems(self) -> Iterator[tuple[int, ...]]:
        for idx in range(self.order):
            yield self.elem_at(idx)

    def elem_at(self, idx: int) -> tuple[int, ...]:
        # constant coefficient is the least significant digit
        digits = []
        for _ in range(self.k):
            digits.append(idx % self.p)
            idx //= self.p
        return tuple(digits)

    def index_of(self, a: tuple[int, ...]) -> int:
        idx = 0
        for c in reversed(a):
            idx = idx * self.p + c
        return idx

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        prod = poly_mul(self.base, poly_trim(a), poly_trim(b))
        rem = poly_mod(self.base, prod, self.modulus)
        return tuple(rem) + (0,) * (self.k - len(rem))

    def inv(self, a):
        pa = poly_trim(a)
        if not pa:
            raise ZeroDivisionError("inverse of 0")
        g, s, _ = poly_ext_gcd(self.base, pa, self.modulus)
        if len(g) != 1:
            raise ZeroDivisionError("element is not invertible")
        c_inv = self.base.inv(g[0])
        s = tuple(self.base.mul(c, c_inv) for c in s)
        s = poly_mod(self.base, s, self.modulus)
        return tuple(s) + (0,) * (self.k - len(s))

    def from_int(self, c: int) -> tuple[int, ...]:
        return tuple(c % self.p if i == 0 else 0 for i in range(self.k))


# ---------------------------------------------------------------------------
# generic dense polynomial arithmetic over a field object
# ---------------------------------------------------------------------------

def poly_trim(coeffs: Sequence) -> Poly:
    coeffs = tuple(coeffs)
    n = len(coeffs)
    while n and _is_zero(coeffs[n - 1]):
        n -= 1
    return coeffs[:n]


def _is_zero(c) -> bool:
    if isinstance(c, tuple):
        return all(x == 0 for x in c)
    return c == 0


def poly_deg(a: Poly) -> int:
    return len(a) - 1  # zero polynomial gets -1


def poly_add(F, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return poly_trim(out)


def poly_neg(F, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def poly_sub(F, a: Poly, b: Poly) -> Poly:
    return poly_add(F, a, poly_neg(F, b))


def poly_mul(F, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if _is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ca, cb))
    return poly_trim(out)


def poly_divmod(F, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(b[-1])
    rem = list(a)
    qlen = len(a) - len(b) + 1
    if qlen <= 0:
        return (), poly_trim(rem)
    quo = [F.zero] * qlen
    for i in range(qlen - 1, -1, -1):
        c = rem[i + len(b) - 1]
        if _is_zero(c):
            continue
        q = F.mul(c, lead_inv)
        quo[i] = q
        for j, cb in enumerate(b):
            rem[i + j] = F.add(rem[i + j], F.neg(F.mul(q, cb)))
    return poly_trim(quo), poly_trim(rem)


def poly_mod(F, a: Poly, b: Poly) -> Poly:
    return poly_divmod(F, a, b)[1]


def poly_monic(F, a: Poly) -> Poly:
    if not a:
        return a
    inv = F.inv(a[-1])
    return tuple(F.mul(c, inv) for c in a)


def poly_gcd(F, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_ext_gcd(F, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """g, s, t with s*a + t*b = g (g not normalized to monic)."""
    r0, r1 = a, b
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    return r0, s0, t0


def poly_eval_int(a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def monic_polys(F, deg: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree, lexicographic with the
    high-degree coefficients most significant (the canonical search order)."""
    elems = list(F.elems())
    q = len(elems)
    for code in range(q ** deg):
        coeffs = []
        rest = code
        for _ in range(deg):  # most significant digit is the top coefficient
            rest, low = divmod(rest, q)
            coeffs.append(elems[low])
        # coeffs currently ascending from the code's low digit = constant term
        yield tuple(coeffs) + (F.one,)


def _monic_sort_key(a: Poly):
    return (len(a), tuple(reversed(a)))


def poly_is_irreducible(F, a: Poly) -> bool:
    """Trial division by monic polynomials of degree at most deg(a)/2."""
    d = poly_deg(a)
    if d <= 0:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for g in monic_polys(F, e):
            if not poly_mod(F, a, g):
                return False
    return True


def poly_factor_monic(F, a: Poly) -> list[tuple[Poly, int]]:
    """Full factorization of a monic polynomial into (irreducible, multiplicity),
    sorted by (degree, coefficients high-first).  Exhaustive trial division."""
    if poly_deg(a) < 1:
        raise ValueError("need degree >= 1")
    factors: dict[Poly, int] = {}
    rest = a
    e = 1
    while poly_deg(rest) >= 1:
        if e > poly_deg(rest) // 2:
            factors[rest] = factors.get(rest, 0) + 1
            break
        found = False
        for g in monic_polys(F, e):
            q, r = poly_divmod(F, rest, g)
            if not r:
                factors[g] = factors.get(g, 0) + 1
                rest = q
                found = True
                break
        if not found:
            e += 1
    return sorted(factors.items(), key=lambda kv: _monic_sort_key(kv[0]))


@lru_cache(maxsize=None)
def canonical_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p, with
    coefficient tuples compared from the highest degree down (the order
    monic_polys yields)."""
    F = PrimeField(p)
    for cand in monic_polys(F, k):
        if poly_is_irreducible(F, cand):
            return cand
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable

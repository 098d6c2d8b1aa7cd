"""Exact arithmetic in GF(p^k).

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
modulus of degree k.  Every context pins a canonical total order on its
elements: lexicographic on coefficient vectors with the highest-degree
coefficient most significant, which is the same as ordering by the integer
value ``sum(c_i * p**i)``.  That integer is the element *index*; all
downstream enumeration (points, subspaces, graph vertices) inherits its
determinism from this order.

The modulus is the least monic irreducible polynomial of degree k in the
same order (applied to the non-leading coefficients), so two constructions
of GF(p^k) are always identical, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


DESK_SCALE_CAP = 2 ** 20

# Fields at or below this order get dense add/mul/inv/frobenius tables;
# larger fields fall back to per-operation polynomial arithmetic.
_TABLE_LIMIT = 64


class FieldError(Exception):
    """Base class for finite-field errors."""


class NonPrimeCharacteristic(FieldError):
    pass


class DegreeZero(FieldError):
    pass


class CapExceeded(FieldError):
    pass


class DivisionByZero(FieldError):
    pass


class ContextMismatch(FieldError):
    pass


class OddExtensionDegree(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Factor q = p^k with p prime; raises NonPrimeCharacteristic otherwise."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise NonPrimeCharacteristic(f"{q} is not a prime power")
            return p, k
        p += 1
    return q, 1  # q itself is prime


# -- polynomial helpers (little-endian coefficient tuples over GF(p)) --------

def _poly_trim(a: tuple[int, ...]) -> tuple[int, ...]:
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(tuple(a))


def _poly_divmod(a: tuple[int, ...], b: tuple[int, ...], p: int):
    b = _poly_trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(_poly_trim(tuple(a))) >= len(b):
        a = list(_poly_trim(tuple(a)))
        shift = len(a) - len(b)
        c = (a[-1] * inv_lead) % p
        q[shift] = c
        for i in range(len(b)):
            a[shift + i] = (a[shift + i] - c * b[i]) % p
    return _poly_trim(tuple(q)), _poly_trim(tuple(a))


def _monic_polys(p: int, deg: int):
    """Monic degree-deg polynomials over GF(p), least first in canonical order."""
    for idx in range(p ** deg):
        coeffs = []
        m = idx
        for _ in range(deg):
            coeffs.append(m % p)
            m //= p
        yield tuple(coeffs) + (1,)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, d):
            _, r = _poly_divmod(poly, divisor, p)
            if not r:
                return False
    return True


class FieldContext:
    """Immutable description of GF(p^k) plus its arithmetic machinery.

    Construct via :func:`field_new`; contexts are cached so equal fields
    are the same object.
    """

    __slots__ = (
        "p", "k", "q", "modulus",
        "_add", "_mul", "_neg", "_inv", "_frob",
        "_elements", "_primitive_index",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._add = None
        self._mul = None
        self._neg = None
        self._inv = None
        self._frob = None
        self._primitive_index = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()
        self._elements = tuple(FieldElement(self, i) for i in range(self.q)) \
            if self.q <= _TABLE_LIMIT else None

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- index <-> coefficient conversions ------------------------------------

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(index % self.p)
            index //= self.p
        return tuple(out)

    def index_of(self, coeffs) -> int:
        idx = 0
        for c in reversed(tuple(coeffs)):
            idx = idx * self.p + (c % self.p)
        return idx

    # -- element access --------------------------------------------------------

    def element(self, index: int) -> "FieldElement":
        if self._elements is not None:
            return self._elements[index]
        return FieldElement(self, index)

    def from_coeffs(self, coeffs) -> "FieldElement":
        return self.element(self.index_of(coeffs))

    def from_int(self, n: int) -> "FieldElement":
        return self.element(n % self.p)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self):
        """All elements in canonical order."""
        return [self.element(i) for i in range(self.q)]

    # -- index-level arithmetic (hot path) --------------------------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        add = [[0] * q for _ in range(q)]
        neg = [0] * q
        for a in range(q):
            ca = self.coeffs_of(a)
            neg[a] = self.index_of(tuple((-c) % p for c in ca))
            for b in range(a, q):
                cb = self.coeffs_of(b)
                s = self.index_of(tuple((x + y) % p for x, y in zip(ca, cb)))
                add[a][b] = s
                add[b][a] = s
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            pa = _poly_trim(self.coeffs_of(a))
            for b in range(a, q):
                pb = _poly_trim(self.coeffs_of(b))
                prod = _poly_mod(_poly_mul(pa, pb, p), self.modulus, p)
                m = self.index_of(prod + (0,) * (k - len(prod)))
                mul[a][b] = m
                mul[b][a] = m
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._add, self._mul, self._neg, self._inv = add, mul, neg, inv
        if k % 2 == 0:
            r = p ** (k // 2)
            self._frob = [self.pow_i(a, r) for a in range(q)]

    def add_i(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        ca, cb = self.coeffs_of(a), self.coeffs_of(b)
        return self.index_of(tuple((x + y) % self.p for x, y in zip(ca, cb)))

    def neg_i(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self.index_of(tuple((-c) % self.p for c in self.coeffs_of(a)))

    def sub_i(self, a: int, b: int) -> int:
        return self.add_i(a, self.neg_i(b))

    def mul_i(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        if a == 0 or b == 0:
            return 0
        prod = _poly_mod(
            _poly_mul(_poly_trim(self.coeffs_of(a)), _poly_trim(self.coeffs_of(b)), self.p),
            self.modulus, self.p)
        return self.index_of(prod + (0,) * (self.k - len(prod)))

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._inv is not None:
            return self._inv[a]
        return self.pow_i(a, self.q - 2)

    def div_i(self, a: int, b: int) -> int:
        return self.mul_i(a, self.inv_i(b))

    def pow_i(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("0 to a negative power")
            return 1 if e == 0 else 0
        e %= self.q - 1
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul_i(result, base)
            base = self.mul_i(base, base)
            e >>= 1
        return result

    def frob_i(self, a: int) -> int:
        if self.k % 2 != 0:
            raise OddExtensionDegree(f"{self!r} is not a square-order field")
        if self._frob is not None:
            return self._frob[a]
        return self.pow_i(a, self.p ** (self.k // 2))

    @property
    def sqrt_q(self) -> int:
        if self.k % 2 != 0:
            raise OddExtensionDegree(f"{self!r} is not a square-order field")
        return self.p ** (self.k // 2)


class FieldElement:
    """An element of GF(p^k), identified by its canonical index."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldContext, index: int):
        self.ctx = ctx
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs_of(self.index)

    def is_zero(self) -> bool:
        return self.index == 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other.index
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.ctx.add_i(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.ctx.sub_i(self.index, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.ctx.sub_i(b, self.index))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.ctx.mul_i(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.ctx.div_i(self.index, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.ctx.element(self.ctx.div_i(b, self.index))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return self.ctx.element(self.ctx.pow_i(self.index, e))

    def __neg__(self):
        return self.ctx.element(self.ctx.neg_i(self.index))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.index == other.index
        if isinstance(other, int):
            return self.index == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.index))

    def __lt__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch("cannot order elements of different fields")
        return self.index < other.index

    def __repr__(self):
        return f"{self.index}@{self.ctx!r}"

    def frobenius_sqrt(self) -> "FieldElement":
        return self.ctx.element(self.ctx.frob_i(self.index))


@lru_cache(maxsize=None)
def _field_cached(p: int, k: int) -> FieldContext:
    for candidate in _monic_polys(p, k):
        if _is_irreducible(candidate, p):
            return FieldContext(p, k, candidate)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # unreachable


def field_new(p: int, k: int, cap: int = DESK_SCALE_CAP) -> FieldContext:
    """Build GF(p^k) with the canonically-least irreducible monic modulus.

    Deterministic across runs: same (p, k) gives an identical modulus and
    element order.
    """
    if not _is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if k < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {k}")
    if p ** k > cap:
        raise CapExceeded(f"{p}^{k} exceeds the desk-scale cap {cap}")
    return _field_cached(p, k)


def field_from_order(q: int, cap: int = DESK_SCALE_CAP) -> FieldContext:
    p, k = factor_prime_power(q)
    return field_new(p, k, cap=cap)


def frobenius_sqrt(x: FieldElement) -> FieldElement:
    """The conjugation x -> x^sqrt(q); an involutory field automorphism."""
    return x.frobenius_sqrt()


def multiplicative_order(x: FieldElement) -> int:
    if x.is_zero():
        raise DivisionByZero("zero has no multiplicative order")
    ctx = x.ctx
    n = 1
    acc = x.index
    while acc != 1:
        acc = ctx.mul_i(acc, x.index)
        n += 1
    return n


def primitive_element(ctx: FieldContext) -> FieldElement:
    """The least element (in canonical order) generating the multiplicative group."""
    if ctx._primitive_index is None:
        target = ctx.q - 1
        for i in range(1, ctx.q):
            if multiplicative_order(ctx.element(i)) == target:
                ctx._primitive_index = i
                break
    return ctx.element(ctx._primitive_index)


@dataclass(frozen=True)
class NormOneSubgroup:
    """The subgroup of GF(q)* killed by the norm to GF(sqrt(q))."""

    ctx: FieldContext
    elements: tuple[FieldElement, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def norm_one_subgroup(ctx: FieldContext) -> NormOneSubgroup:
    """All x with x^(sqrt(q)+1) = 1, sorted canonically; size sqrt(q)+1."""
    r = ctx.sqrt_q  # raises OddExtensionDegree when k is odd
    members = [ctx.element(i) for i in range(1, ctx.q) if ctx.pow_i(i, r + 1) == 1]
    members.sort(key=lambda e: e.index)
    return NormOneSubgroup(ctx, tuple(members))


def norm_minus_one_unit(ctx: FieldContext) -> FieldElement:
    """A canonical unit whose (sqrt(q)+1)-power norm is -1 (odd q, square order).

    Taken as beta^((sqrt(q)-1)/2) for the canonical primitive element beta.
    """
    r = ctx.sqrt_q
    if ctx.p == 2:
        raise EvenCharacteristic("norm -1 units are only defined in odd characteristic")
    beta = primitive_element(ctx)
    eps = beta ** ((r - 1) // 2)
    minus_one = -ctx.one
    assert eps ** (r + 1) == minus_one
    assert eps.frobenius_sqrt() == minus_one / eps
    return eps

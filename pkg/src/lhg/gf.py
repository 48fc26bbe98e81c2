"""Small finite fields GF(p^e) in polynomial basis.

Elements are coefficient tuples (constant term first) reduced modulo a
fixed monic irreducible polynomial. The modulus is the least monic
irreducible of degree ``e``, ordering polynomials by their base-``p``
integer value, so fields are reproducible without Conway tables.

Only meant for desk-scale orders (q <= 2**16).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

MAX_ORDER = 2**16
MAX_DEGREE = 8

Poly = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q  # q itself is prime
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    return (p, e) if rest == 1 else None


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Poly, b: Poly, p: int) -> list[int]:
    """Remainder of a by monic-or-not b over Z_p (coefficient lists, low first)."""
    rem = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(rem) >= len(b):
        coef = rem[-1] * inv_lead % p
        shift = len(rem) - len(b)
        for i, c in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coef * c) % p
        _trim(rem)
    return rem


def _monic_polys(p: int, deg: int):
    """All monic polynomials of degree ``deg``, in increasing base-p value."""
    for low in product(range(p), repeat=deg):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(f: Poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _polymod(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, e: int) -> Poly:
    """Least monic irreducible polynomial of degree ``e`` over Z_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise ValueError(f"degree must be in 1..{MAX_DEGREE}, got {e}")
    for f in _monic_polys(p, e):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int = 1
    modulus: Poly = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**self.e > MAX_ORDER:
            raise ValueError(f"field order {self.p}**{self.e} exceeds {MAX_ORDER}")
        if not self.modulus:
            object.__setattr__(self, "modulus", find_irreducible(self.p, self.e))
        mod = tuple(self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over Z_{self.p}")

    @classmethod
    def of_order(cls, q: int) -> "FieldSpec":
        pe = prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        return cls(*pe)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __call__(self, value) -> "FieldElement":
        """Element from an int rank or a coefficient sequence (reduced)."""
        if isinstance(value, int):
            return self.element(value)
        rem = _polymod([int(c) % self.p for c in value], self.modulus, self.p)
        return FieldElement(self, tuple(rem) + (0,) * (self.e - len(rem)))

    def element(self, rank: int) -> "FieldElement":
        if not 0 <= rank < self.q:
            raise ValueError(f"rank {rank} out of range for GF({self.q})")
        digits = []
        for _ in range(self.e):
            rank, d = divmod(rank, self.p)
            digits.append(d)
        return FieldElement(self, tuple(digits))

    @cached_property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self) -> list["FieldElement"]:
        """All q elements, little-endian coefficient count, zero first."""
        return [self.element(k) for k in range(self.q)]

    # functional aliases; FieldElement overloads the operators
    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coeffs: Poly

    @property
    def rank(self) -> int:
        p = self.field.p
        k = 0
        for c in reversed(self.coeffs):
            k = k * p + c
        return k

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _same(self, other: "FieldElement") -> None:
        if other.field != self.field:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        f = self.field
        prod = [0] * (2 * f.e - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + a * b) % f.p
        rem = _polymod(prod, f.modulus, f.p)
        return FieldElement(f, tuple(rem) + (0,) * (f.e - len(rem)))

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero in a finite field")
        # a^(q-2) = a^-1 in the multiplicative group of order q-1
        return self ** (self.field.q - 2)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

"""Exact arithmetic in GF(p^n).

Elements are stored as integer codes: the coefficient vector
(c_0, ..., c_{n-1}) of the reduced polynomial representative is read as the
base-p number c_0 + c_1 p + ... + c_{n-1} p^{n-1}.  With this encoding the
lexicographic order on (c_{n-1}, ..., c_0) is just integer order, which is the
total order used everywhere for canonical representatives.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

DEFAULT_MAX_Q = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    return all(n % d for d in range(3, r + 1, 2))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p**n, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    n = 0
    m = q
    while m % p == 0:
        m //= p
        n += 1
    if m != 1 or not is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return p, n


# -- polynomials over GF(p), coefficient lists low degree first --------------

def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = list(f)
    g = _poly_trim(list(g))
    inv_lead = pow(g[-1], p - 2, p)
    while len(_poly_trim(f)) >= len(g):
        shift = len(f) - len(g)
        c = f[-1] * inv_lead % p
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
    return f


def _monic_polys(degree: int, p: int) -> Iterator[list[int]]:
    """Monic polynomials of the given degree in lexicographic order of
    (c_{d-1}, ..., c_0)."""
    for high_first in itertools.product(range(p), repeat=degree):
        yield list(reversed(high_first)) + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = _poly_trim(list(f))
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_trim(_poly_mod(f, g, p)):
                return False
    return True


def least_irreducible(p: int, n: int) -> list[int]:
    """Lexicographically least monic irreducible polynomial of degree n."""
    for f in _monic_polys(n, p):
        if is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")  # pragma: no cover


def _format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


# -- the field ---------------------------------------------------------------

class Field:
    """GF(p^n) with the lexicographically least monic irreducible modulus.

    Use :func:`build_field` rather than calling the constructor; fields are
    cached so that equal parameters give the identical object.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(least_irreducible(p, n))
        self._build_tables()

    # construction
    def _digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(v % self.p)
            v //= self.p
        return out

    def _from_digits(self, digits: Sequence[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, self.modulus, p)
        red = (red + [0] * n)[:n]
        return self._from_digits(red)

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        digits = np.array([self._digits(v) for v in range(q)], dtype=np.int64).reshape(q, self.n)
        weights = p ** np.arange(self.n, dtype=np.int64)
        self.add_table = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int32)
        self.neg_table = (((-digits) % p) @ weights).astype(np.int32)
        # multiplicative group: scan for a generator
        for g in range(2, q) if q > 2 else [1]:
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._slow_mul(x, g)
            if len(powers) == q - 1:
                break
        else:  # pragma: no cover
            raise FieldError("multiplicative group is not cyclic")
        self.primitive = powers[1] if q > 2 else 1
        self._exp = powers + powers  # doubled to skip a modulo
        self._log = [0] * q
        for k, v in enumerate(powers):
            self._log[v] = k
        exp = np.array(powers, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        mt = np.zeros((q, q), dtype=np.int32)
        nz = np.arange(1, q)
        mt[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul_table = mt
        inv = np.zeros(q, dtype=np.int32)
        inv[1:] = exp[(-log[nz]) % (q - 1)]
        self.inv_table = inv
        self._add = self.add_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = inv.tolist()

    # scalar arithmetic on codes
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base ``self.primitive``."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def from_int(self, k: int) -> int:
        """Code of the integer k (that is, k times the identity)."""
        return k % self.p

    def mult_order(self, a: int) -> int:
        return (self.q - 1) // math.gcd(self.q - 1, self.log(a))

    def is_square(self, a: int) -> bool:
        """Zero counts as a square."""
        if a == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int:
        """The least square root in the total order; raises for non-squares."""
        if a == 0:
            return 0
        if not self.is_square(a):
            raise FieldError(f"{self.format(a)} is not a square")
        return min(x for x in range(1, self.q) if self.mul(x, x) == a)

    @functools.cached_property
    def squares(self) -> frozenset[int]:
        """Nonzero squares."""
        return frozenset(self.mul(x, x) for x in range(1, self.q))

    @property
    def e(self) -> int:
        return math.gcd(2, self.q - 1)

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** (k % self.n))

    def subfield(self, degree: int) -> frozenset[int]:
        """Elements of the subfield GF(p^degree); degree must divide n."""
        if self.n % degree:
            raise FieldError(f"GF({self.q}) has no subfield of degree {degree}")
        return frozenset(a for a in range(self.q) if self.frobenius(a, degree) == a)

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits(a))

    def format(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        return _format_poly(self._digits(a))

    # element objects
    def elem(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for GF({self.q})")
        return FieldElement(self, code)

    def __call__(self, k: int) -> FieldElement:
        return FieldElement(self, self.from_int(k))

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) > self.n:
            raise FieldError("too many coefficients")
        return FieldElement(self, self._from_digits([c % self.p for c in coeffs]))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of x modulo the modulus."""
        return FieldElement(self, self.p % self.q if self.n > 1 else 0)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def __iter__(self) -> Iterator[FieldElement]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.q

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def modulus_str(self) -> str:
        return _format_poly(self.modulus)

    def __reduce__(self):
        return (build_field, (self.p, self.n))


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, n: int) -> Field:
    return Field(p, n)


def build_field(p: int, n: int = 1, max_q: int = DEFAULT_MAX_Q) -> Field:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if n < 1:
        raise FieldError("degree must be positive")
    if p**n > max_q:
        raise FieldError(f"GF({p}^{n}) exceeds the configured bound q <= {max_q}")
    return _cached_field(p, n)


def field_of_order(q: int, max_q: int = DEFAULT_MAX_Q) -> Field:
    p, n = prime_power(q)
    return build_field(p, n, max_q=max_q)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients (c_0, ..., c_{n-1}) of the reduced representative."""
        return self.field.coeffs(self.value)

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("mixed fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def is_square(self) -> bool:
        return self.field.is_square(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __lt__(self, other: FieldElement) -> bool:
        return total_order_cmp(self, other) < 0

    def __le__(self, other: FieldElement) -> bool:
        return total_order_cmp(self, other) <= 0

    def __repr__(self) -> str:
        return self.field.format(self.value)


def total_order_cmp(a: FieldElement, b: FieldElement) -> int:
    """-1, 0 or 1 comparing coefficient vectors (c_{n-1}, ..., c_0)
    lexicographically."""
    if a.field is not b.field:
        raise FieldError("cannot compare elements of different fields")
    return (a.value > b.value) - (a.value < b.value)


def is_square(a: FieldElement) -> bool:
    return a.field.is_square(a.value)


@dataclass(frozen=True)
class Frobenius:
    """The automorphism x -> x^(p^k)."""

    field: Field
    k: int

    def __call__(self, a):
        if isinstance(a, FieldElement):
            return FieldElement(self.field, self.field.frobenius(a.value, self.k))
        return self.field.frobenius(a, self.k)

    def compose(self, other: Frobenius) -> Frobenius:
        return Frobenius(self.field, (self.k + other.k) % self.field.n)

    def __repr__(self) -> str:
        return "id" if self.k == 0 else f"x -> x^{self.field.p ** self.k}"


def galois_automorphisms(F: Field) -> list[Frobenius]:
    autos = [Frobenius(F, k) for k in range(F.n)]
    sample = range(min(F.q, 64))
    for phi in autos:
        for a in sample:
            for b in sample:
                if phi(F.mul(a, b)) != F.mul(phi(a), phi(b)) or phi(F.add(a, b)) != F.add(phi(a), phi(b)):
                    raise FieldError(f"{phi} is not a field automorphism")  # pragma: no cover
    return autos


def subfield_embedding(F0: Field, F: Field) -> list[int]:
    """Codes in F of the elements of F0, indexed by their codes in F0.

    The generator of F0 is sent to the least root (in the total order) of
    F0's modulus inside F.
    """
    if F0.p != F.p or F.n % F0.n:
        raise FieldError(f"GF({F0.q}) does not embed in GF({F.q})")

    def eval_mod(x: int) -> int:
        acc = 0
        for c in reversed(F0.modulus):
            acc = F.add(F.mul(acc, x), F.from_int(c))
        return acc

    root = min(x for x in range(F.q) if eval_mod(x) == 0)
    table = []
    for v in range(F0.q):
        acc = 0
        for c in reversed(F0.coeffs(v)):
            acc = F.add(F.mul(acc, root), F.from_int(c))
        table.append(acc)
    return table


def quadratic_form_values(F: Field, t: int, d: int) -> set[int]:
    """{y^2 - t y z + d z^2 : (y, z) != (0, 0)}."""
    out = set()
    for y in range(F.q):
        yy = F.mul(y, y)
        for z in range(F.q):
            if y == 0 and z == 0:
                continue
            v = F.add(F.sub(yy, F.mul(t, F.mul(y, z))), F.mul(d, F.mul(z, z)))
            out.add(v)
    return out


def has_root(F: Field, coeffs: Sequence[int]) -> bool:
    """Whether the polynomial with the given codes (low degree first) has a root."""
    for x in range(F.q):
        acc = 0
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        if acc == 0:
            return True
    return False


Automorphism = Callable[[int], int]

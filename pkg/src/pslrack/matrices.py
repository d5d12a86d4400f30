"""2x2 matrix groups SL(2,q), PSL(2,q), PGL(2,q) over a finite field.

Matrices are 4-tuples of field codes (a, b, c, d) read row by row.  A
``MatrixGroup`` enumerates canonical representatives once and exposes a
code-indexed lookup so that whole multiplication tables can be built with
vectorized field arithmetic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .field import Field, FieldError, FieldElement
from .finite import FiniteGroup

TAGS = ("SL", "PSL", "PGL")
INF = "inf"


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


DEFAULT_ENUM_BOUND = _env_int("PSLRACK_MAX_Q", 49)
TABLE_BOUND = 5000


class GroupBoundError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix2:
    """An invertible 2x2 matrix over ``field`` with entries stored as codes."""

    field: Field
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, F: Field, a, b, c, d) -> Matrix2:
        return cls(F, *(_code(F, x) for x in (a, b, c, d)))

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        F = self.field
        return F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c))

    @property
    def trace(self) -> int:
        return self.field.add(self.a, self.d)

    def __matmul__(self, other: Matrix2) -> Matrix2:
        F = self.field
        a1, b1, c1, d1 = self.entries
        a2, b2, c2, d2 = other.entries
        return Matrix2(
            F,
            F.add(F.mul(a1, a2), F.mul(b1, c2)),
            F.add(F.mul(a1, b2), F.mul(b1, d2)),
            F.add(F.mul(c1, a2), F.mul(d1, c2)),
            F.add(F.mul(c1, b2), F.mul(d1, d2)),
        )

    __mul__ = __matmul__

    def scale(self, s: int) -> Matrix2:
        F = self.field
        return Matrix2(F, *(F.mul(s, x) for x in self.entries))

    def neg(self) -> Matrix2:
        F = self.field
        return Matrix2(F, *(F.neg(x) for x in self.entries))

    def inverse(self) -> Matrix2:
        F = self.field
        di = F.inv(self.det)
        return Matrix2(F, F.mul(self.d, di), F.neg(F.mul(self.b, di)), F.neg(F.mul(self.c, di)), F.mul(self.a, di))

    def __pow__(self, m: int) -> Matrix2:
        base = self.inverse() if m < 0 else self
        m = abs(m)
        acc = identity_matrix(self.field)
        while m:
            if m & 1:
                acc = acc @ base
            base = base @ base
            m >>= 1
        return acc

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __repr__(self) -> str:
        f = self.field.format
        return f"[{f(self.a)} {f(self.b)}; {f(self.c)} {f(self.d)}]"


def _code(F: Field, x) -> int:
    if isinstance(x, FieldElement):
        return x.value
    return F.from_int(int(x))


def identity_matrix(F: Field) -> Matrix2:
    return Matrix2(F, 1, 0, 0, 1)


def canonical_psl(M: Matrix2) -> Matrix2:
    """The member of {M, -M} whose first nonzero entry is smaller."""
    F = M.field
    for x in M.entries:
        if x:
            return M if x <= F.neg(x) else M.neg()
    raise ValueError("zero matrix")


def canonical_pgl(M: Matrix2) -> Matrix2:
    """M scaled so its first nonzero entry is 1."""
    for x in M.entries:
        if x:
            return M.scale(M.field.inv(x))
    raise ValueError("zero matrix")


@dataclass(frozen=True)
class ProjElement:
    """An element of SL, PSL or PGL(2,q), held by its canonical matrix."""

    tag: str
    rep: Matrix2

    @classmethod
    def make(cls, tag: str, M: Matrix2) -> ProjElement:
        if tag not in TAGS:
            raise ValueError(f"unknown group tag {tag!r}")
        if M.det == 0:
            raise ValueError("singular matrix")
        if tag == "PGL":
            return cls(tag, canonical_pgl(M))
        if tag == "PSL" and M.det != 1 and M.field.is_square(M.det):
            # a scalar multiple of M has determinant 1
            M = M.scale(M.field.inv(M.field.sqrt(M.det)))
        if M.det != 1:
            raise ValueError(f"{tag} needs determinant 1")
        return cls(tag, canonical_psl(M) if tag == "PSL" else M)

    @property
    def field(self) -> Field:
        return self.rep.field

    def _check(self, other: ProjElement) -> None:
        if self.tag != other.tag or self.field is not other.field:
            raise ValueError("elements of different groups")

    def __mul__(self, other: ProjElement) -> ProjElement:
        self._check(other)
        return ProjElement.make(self.tag, self.rep @ other.rep)

    def inverse(self) -> ProjElement:
        return ProjElement.make(self.tag, self.rep.inverse())

    def __pow__(self, m: int) -> ProjElement:
        return ProjElement.make(self.tag, self.rep**m)

    def conjugate(self, h: ProjElement) -> ProjElement:
        """self * h * self^-1."""
        self._check(h)
        return ProjElement.make(self.tag, self.rep @ h.rep @ self.rep.inverse())

    def is_identity(self) -> bool:
        if self.tag == "SL":
            return self.rep == identity_matrix(self.field)
        return self.rep.is_scalar()

    def __repr__(self) -> str:
        return f"{self.tag}{self.rep!r}"


def mul(g: ProjElement, h: ProjElement) -> ProjElement:
    return g * h


def inv(g: ProjElement) -> ProjElement:
    return g.inverse()


def conjugate(g: ProjElement, h: ProjElement) -> ProjElement:
    """g h g^-1, re-canonicalized."""
    return g.conjugate(h)


def element(tag: str, F: Field, a, b, c, d) -> ProjElement:
    return ProjElement.make(tag, Matrix2.of(F, a, b, c, d))


def element_order(g: ProjElement) -> int:
    k, acc = 1, g
    while not acc.is_identity():
        acc = acc * g
        k += 1
    return k


# -- characteristic polynomials and the projective line ----------------------

@dataclass(frozen=True, order=True)
class CharPolyClass:
    """x^2 - T x + D up to (T, D) ~ (s T, s^2 D), in canonical form."""

    T: int
    D: int

    def __str__(self) -> str:
        return self.format(str)

    def format(self, fmt=str) -> str:
        """Text with constant term rendered by ``fmt`` (e.g. ``Field.format``)."""
        return f"x^2-x+{fmt(self.D)}" if self.T else f"x^2+{fmt(self.D)}"


def canonical_char_poly(F: Field, T: int, D: int) -> CharPolyClass:
    if T:
        s = F.inv(T)
        return CharPolyClass(1, F.mul(D, F.mul(s, s)))
    return CharPolyClass(0, min(F.mul(D, x) for x in F.squares))


def char_poly(g: ProjElement | Matrix2) -> CharPolyClass:
    M = g.rep if isinstance(g, ProjElement) else g
    return canonical_char_poly(M.field, M.trace, M.det)


def act(g: ProjElement | Matrix2, z):
    """Image of z in P^1(q) (codes 0..q-1 or ``INF``) under z -> (az+b)/(cz+d)."""
    M = g.rep if isinstance(g, ProjElement) else g
    F = M.field
    if z == INF:
        return INF if M.c == 0 else F.div(M.a, M.c)
    num = F.add(F.mul(M.a, z), M.b)
    den = F.add(F.mul(M.c, z), M.d)
    return INF if den == 0 else F.div(num, den)


def projective_line(F: Field) -> list:
    return list(range(F.q)) + [INF]


def fixed_points(g: ProjElement | Matrix2) -> int:
    return sum(1 for z in projective_line((g.rep if isinstance(g, ProjElement) else g).field) if act(g, z) == z)


# -- enumeration --------------------------------------------------------------

def group_order(tag: str, q: int) -> int:
    base = (q - 1) * q * (q + 1)
    if tag == "PSL" and q % 2:
        return base // 2
    return base


class MatrixGroup:
    """All elements of SL, PSL or PGL(2,q) in canonical form.

    Element i has canonical matrix ``reps[i]``; ``lookup[code(M)]`` gives the
    index of the element represented by any matrix M of the group (every
    sign or scalar multiple is registered), or -1.
    """

    def __init__(self, tag: str, F: Field, bound: int | None = None):
        if tag not in TAGS:
            raise ValueError(f"unknown group tag {tag!r}")
        bound = DEFAULT_ENUM_BOUND if bound is None else bound
        if F.q > bound:
            raise GroupBoundError(f"q={F.q} exceeds enumeration bound {bound}")
        self.tag = tag
        self.field = F
        q = F.q
        codes = np.arange(q**4, dtype=np.int64)
        a, b, c, d = codes // q**3, (codes // q**2) % q, (codes // q) % q, codes % q
        det = F.add_table[F.mul_table[a, d], F.neg_table[F.mul_table[b, c]]]
        first = np.where(a != 0, a, np.where(b != 0, b, np.where(c != 0, c, d)))
        if tag == "PGL":
            keep = (det != 0) & (first == 1)
        elif tag == "PSL":
            keep = (det == 1) & (first <= F.neg_table[first])
        else:
            keep = det == 1
        self.codes = codes[keep]
        self.reps = np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1).astype(np.int64)
        self.order = len(self.codes)
        lookup = np.full(q**4, -1, dtype=np.int32)
        idx = np.arange(self.order, dtype=np.int32)
        if tag == "SL":
            multipliers = [1]
        elif tag == "PSL":
            multipliers = [1, F.neg(1)]
        else:
            multipliers = list(range(1, q))
        for s in multipliers:
            lookup[self._code_of(*(F.mul_table[s, self.reps[:, k]] for k in range(4)))] = idx
        self.lookup = lookup
        self.identity = int(lookup[self._code_of(1, 0, 0, 1)])
        self._table: FiniteGroup | None = None

    def _code_of(self, a, b, c, d):
        q = self.field.q
        return ((np.asarray(a, dtype=np.int64) * q + b) * q + c) * q + d

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"{self.tag}(2,{self.field.q})"

    @property
    def name(self) -> str:
        return repr(self)

    def matrix(self, i: int) -> Matrix2:
        return Matrix2(self.field, *(int(x) for x in self.reps[i]))

    def element(self, i: int) -> ProjElement:
        return ProjElement(self.tag, self.matrix(i))

    def elements(self) -> list[ProjElement]:
        return [self.element(i) for i in range(self.order)]

    def __iter__(self) -> Iterator[ProjElement]:
        return (self.element(i) for i in range(self.order))

    def index(self, g: ProjElement | Matrix2 | tuple) -> int:
        if isinstance(g, ProjElement):
            g = g.rep
        ent = g.entries if isinstance(g, Matrix2) else tuple(g)
        i = int(self.lookup[int(self._code_of(*ent))])
        if i < 0:
            raise ValueError(f"{g} is not in {self}")
        return i

    def __contains__(self, g) -> bool:
        try:
            self.index(g)
        except ValueError:
            return False
        return True

    def products(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Indices of reps[left] @ reps[right] (arrays broadcast together)."""
        F = self.field
        A, B = self.reps[left], self.reps[right]
        add, mt = F.add_table, F.mul_table
        a = add[mt[A[..., 0], B[..., 0]], mt[A[..., 1], B[..., 2]]]
        b = add[mt[A[..., 0], B[..., 1]], mt[A[..., 1], B[..., 3]]]
        c = add[mt[A[..., 2], B[..., 0]], mt[A[..., 3], B[..., 2]]]
        d = add[mt[A[..., 2], B[..., 1]], mt[A[..., 3], B[..., 3]]]
        return self.lookup[self._code_of(a, b, c, d)]

    @property
    def table(self) -> FiniteGroup:
        """The multiplication table as a ``FiniteGroup`` (built on first use)."""
        if self._table is None:
            n = self.order
            if n > TABLE_BOUND:
                raise GroupBoundError(f"{self} has {n} elements, table bound is {TABLE_BOUND}")
            mul = np.empty((n, n), dtype=np.int32)
            cols = np.arange(n)
            step = max(1, 2_000_000 // n)
            for start in range(0, n, step):
                rows = np.arange(start, min(n, start + step))
                mul[rows] = self.products(rows[:, None], cols[None, :])
            self._table = FiniteGroup(mul, identity=self.identity, name=repr(self))
        return self._table

    @property
    def traces(self) -> np.ndarray:
        return self.field.add_table[self.reps[:, 0], self.reps[:, 3]]


@lru_cache(maxsize=None)
def matrix_group(tag: str, F: Field) -> MatrixGroup:
    return MatrixGroup(tag, F)


def enumerate_group(tag: str, F: Field, bound: int | None = None) -> list[ProjElement]:
    """Every element of tag(2,q), each once, in canonical form."""
    if bound is not None and F.q > bound:
        raise GroupBoundError(f"q={F.q} exceeds enumeration bound {bound}")
    return matrix_group(tag, F).elements()


def psl_to_sl_lift(g: ProjElement) -> Matrix2:
    """A determinant-one matrix representing g."""
    if g.tag not in ("PSL", "SL"):
        raise ValueError("only PSL elements have determinant-one lifts")
    return g.rep


__all__ = [
    "CharPolyClass",
    "FieldError",
    "GroupBoundError",
    "INF",
    "Matrix2",
    "MatrixGroup",
    "ProjElement",
    "act",
    "canonical_char_poly",
    "canonical_pgl",
    "canonical_psl",
    "char_poly",
    "conjugate",
    "element",
    "element_order",
    "enumerate_group",
    "fixed_points",
    "group_order",
    "identity_matrix",
    "inv",
    "matrix_group",
    "mul",
    "projective_line",
]

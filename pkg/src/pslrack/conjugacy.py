"""Conjugacy classes of PSL(2,q) and PGL(2,q).

A class is named by a ``ClassDescriptor``: its kind (identity, split,
unipotent, nonsplit) and one canonical field code.

* split: {a, a^-1} with a = lambda^2 for an eigenvalue lambda of a
  determinant-one representative; the smaller code is stored.
* unipotent: the coset b * squares; its least code is stored.
* nonsplit: {t, -t} with t the trace of a determinant-one representative;
  the smaller code is stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .field import Field
from .matrices import (
    CharPolyClass,
    Matrix2,
    ProjElement,
    canonical_char_poly,
    group_order,
    identity_matrix,
    matrix_group,
)

KINDS = ("identity", "split", "unipotent", "nonsplit")


class DisjointClassError(ValueError):
    """A PGL(2,q) class that does not meet PSL(2,q)."""


def _phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@lru_cache(maxsize=None)
def _eigen_table(F: Field) -> dict[int, tuple[int, ...]]:
    """trace t -> roots of x^2 - t x + 1 (as codes)."""
    lam = np.arange(1, F.q)
    traces = F.add_table[lam, F.inv_table[lam]]
    out: dict[int, list[int]] = {}
    for t, l in zip(traces.tolist(), lam.tolist()):
        out.setdefault(t, []).append(l)
    return {t: tuple(v) for t, v in out.items()}


def _coset_min(F: Field, b: int) -> int:
    return min(F.mul(b, s) for s in F.squares)


def _chebyshev_order(F: Field, t: int) -> int:
    """Least k >= 1 with M^k scalar, for a non-scalar det-one M of trace t.

    Uses M^k = U_{k-1}(t) M - U_{k-2}(t) I with U_0 = 1, U_1 = t.
    """
    prev, cur, k = 0, 1, 1
    while cur != 0:
        prev, cur = cur, F.sub(F.mul(t, cur), prev)
        k += 1
    return k


def _power_trace(F: Field, t: int, m: int) -> tuple[int, bool]:
    """(trace of M^m, whether M^m is scalar) for det-one M of trace t."""
    # s_k = trace(M^k): s_0 = 2, s_1 = t; u_k = U_{k-1}
    s_prev, s = F.from_int(2), t
    u_prev, u = 0, 1
    if m == 0:
        return s_prev, True
    for _ in range(m - 1):
        s_prev, s = s, F.sub(F.mul(t, s), s_prev)
        u_prev, u = u, F.sub(F.mul(t, u), u_prev)
    return s, u == 0


@dataclass(frozen=True)
class ClassDescriptor:
    field: Field
    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")

    # -- identification ----------------------------------------------------
    @property
    def q(self) -> int:
        return self.field.q

    @property
    def class_id(self) -> str:
        if self.kind == "identity":
            return "identity"
        key = {"split": "split:a", "unipotent": "unip:b", "nonsplit": "nonsplit:t"}[self.kind]
        return f"{key}={self.param}"

    def __str__(self) -> str:
        f = self.field.format
        if self.kind == "identity":
            return "{1}"
        sub = {"split": "2", "unipotent": "1", "nonsplit": "0"}[self.kind]
        return f"O_{{{sub},{f(self.param)}}}"

    def __repr__(self) -> str:
        return f"ClassDescriptor(q={self.q}, {self.class_id})"

    def sort_key(self) -> tuple[int, int]:
        return (KINDS.index(self.kind), self.param)

    @property
    def is_semisimple(self) -> bool:
        return self.kind in ("split", "nonsplit")

    # -- invariants ----------------------------------------------------------
    @property
    def size(self) -> int:
        q, F = self.q, self.field
        if self.kind == "identity":
            return 1
        if self.kind == "unipotent":
            return (q * q - 1) // F.e
        if self.kind == "split":
            return q * (q + 1) // (2 if self.param == F.neg(1) and q % 2 else 1)
        return q * (q - 1) // (2 if self.param == 0 else 1)

    @property
    def element_order(self) -> int:
        F = self.field
        if self.kind == "identity":
            return 1
        if self.kind == "unipotent":
            return F.p
        if self.kind == "split":
            return F.mult_order(self.param)
        return _chebyshev_order(F, self.param)

    @property
    def trace(self) -> int:
        """Trace of a determinant-one representative (up to sign)."""
        F = self.field
        if self.kind == "identity":
            return F.from_int(2)
        if self.kind == "unipotent":
            return F.from_int(2)
        if self.kind == "nonsplit":
            return self.param
        lam = F.sqrt(self.param)
        return F.add(lam, F.inv(lam))

    @property
    def char_poly(self) -> CharPolyClass:
        return canonical_char_poly(self.field, self.trace, 1)

    def representative(self) -> Matrix2:
        """A determinant-one matrix in the class."""
        F = self.field
        if self.kind == "identity":
            return identity_matrix(F)
        if self.kind == "unipotent":
            return Matrix2(F, 1, self.param, 0, 1)
        if self.kind == "split":
            lam = F.sqrt(self.param)
            return Matrix2(F, lam, 0, 0, F.inv(lam))
        return Matrix2(F, 0, F.neg(1), 1, self.param)

    def representative_element(self) -> ProjElement:
        return ProjElement.make("PSL", self.representative())


def class_of_matrix(M: Matrix2) -> ClassDescriptor:
    """Class of the PSL(2,q) element represented by a det-one matrix."""
    F = M.field
    if M.det != 1:
        raise ValueError("class_of needs a determinant-one representative")
    if M.is_scalar():
        return ClassDescriptor(F, "identity")
    t = M.trace
    two = F.from_int(2)
    if t == F.neg(two):
        M, t = M.neg(), two
    if t == two:
        # M = I + N with N = [[x, y], [z, -x]] nilpotent
        y, z = M.b, M.c
        b = F.neg(z) if z else y
        return ClassDescriptor(F, "unipotent", _coset_min(F, b))
    roots = _eigen_table(F).get(t)
    if roots:
        a = F.mul(roots[0], roots[0])
        return ClassDescriptor(F, "split", min(a, F.inv(a)))
    return ClassDescriptor(F, "nonsplit", min(t, F.neg(t)))


def class_of(g: ProjElement) -> ClassDescriptor:
    if g.tag == "PGL":
        raise ValueError("use pgl_class_of for PGL elements")
    return class_of_matrix(g.rep)


@lru_cache(maxsize=None)
def _all_classes(F: Field) -> tuple[ClassDescriptor, ...]:
    out = [ClassDescriptor(F, "identity")]
    split = sorted({min(a, F.inv(a)) for a in F.squares if a not in (0, 1)})
    out += [ClassDescriptor(F, "split", a) for a in split]
    cosets = sorted({_coset_min(F, b) for b in range(1, F.q)})
    out += [ClassDescriptor(F, "unipotent", b) for b in cosets]
    eig = _eigen_table(F)
    nonsplit = sorted({min(t, F.neg(t)) for t in range(F.q) if t not in eig})
    out += [ClassDescriptor(F, "nonsplit", t) for t in nonsplit]
    return tuple(out)


def all_classes(F: Field) -> list[ClassDescriptor]:
    """Every conjugacy class of PSL(2,q), identity first."""
    return list(_all_classes(F))


def class_by_id(F: Field, class_id: str) -> ClassDescriptor:
    for cd in _all_classes(F):
        if cd.class_id == class_id:
            return cd
    raise KeyError(f"no class {class_id!r} in PSL(2,{F.q})")


def expected_class_count(q: int) -> int:
    return q + 1 if q % 2 == 0 else (q + 5) // 2


def is_real(cd: ClassDescriptor) -> bool:
    if cd.kind == "unipotent":
        return cd.q % 2 == 0 or (cd.q - 1) % 4 == 0
    return True


def power_class(cd: ClassDescriptor, m: int) -> ClassDescriptor:
    """Class of g^m for g in cd."""
    F = cd.field
    o = cd.element_order
    m %= o
    if m == 0 or cd.kind == "identity":
        return ClassDescriptor(F, "identity")
    if cd.kind == "split":
        a = F.pow(cd.param, m)
        return ClassDescriptor(F, "split", min(a, F.inv(a)))
    if cd.kind == "unipotent":
        return ClassDescriptor(F, "unipotent", _coset_min(F, F.mul(F.from_int(m), cd.param)))
    s, scalar = _power_trace(F, cd.param, m)
    if scalar:
        return ClassDescriptor(F, "identity")
    return ClassDescriptor(F, "nonsplit", min(s, F.neg(s)))


def count_classes_of_order(F: Field, m: int, verify: bool = False) -> int:
    if m < 1:
        raise ValueError("order must be positive")
    q, e = F.q, F.e
    if m == 1:
        n = 1
    elif m == F.p:
        n = e
    elif m == 2:
        n = 1
    elif ((q - 1) // e) % m == 0 or ((q + 1) // e) % m == 0:
        n = _phi(m) // 2
    else:
        n = 0
    if verify:
        brute = count_classes_of_order_bruteforce(F, m)
        if brute != n:
            raise AssertionError(f"q={q}, m={m}: formula {n} but enumeration {brute}")
    return n


# -- brute-force oracles ----------------------------------------------------------

def psl_table(F: Field):
    return matrix_group("PSL", F).table


def class_elements(cd: ClassDescriptor) -> np.ndarray:
    """Indices (in the PSL(2,q) enumeration) of the elements of cd."""
    G = matrix_group("PSL", cd.field)
    T = G.table
    return T.conjugacy_classes()[T.class_index[G.index(cd.representative())]]


@lru_cache(maxsize=None)
def element_classes(F: Field) -> tuple[ClassDescriptor, ...]:
    """class_of for every element of PSL(2,q), in enumeration order."""
    G = matrix_group("PSL", F)
    return tuple(class_of_matrix(G.matrix(i)) for i in range(G.order))


def count_classes_of_order_bruteforce(F: Field, m: int) -> int:
    T = psl_table(F)
    orders = T.element_orders
    return sum(1 for c in T.conjugacy_classes() if orders[c[0]] == m)


def is_real_bruteforce(cd: ClassDescriptor) -> bool:
    T = psl_table(cd.field)
    el = class_elements(cd)
    return bool(np.isin(T.inv[el], el).all())


def centralizer(g: ProjElement) -> list[ProjElement]:
    G = matrix_group(g.tag, g.field)
    return [G.element(int(i)) for i in G.table.centralizer(G.index(g))]


def order_formula_total(F: Field) -> int:
    return sum(cd.size for cd in _all_classes(F))


# -- PGL(2,q) ------------------------------------------------------------------

@dataclass(frozen=True)
class PGLClassDescriptor:
    """Classes of PGL(2,q): identity, split (eigenvalue ratio a up to
    inversion), the single unipotent class, nonsplit (irreducible
    characteristic polynomial class)."""

    field: Field
    kind: str
    param: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "identity":
            return "{1}"
        if self.kind == "unipotent":
            return "Ȯ_1"
        if self.kind == "split":
            return f"Ȯ_{{2,{self.param[0]}}}"
        return f"Ȯ_{{0,{self.param[0]},{self.param[1]}}}"

    @property
    def size(self) -> int:
        q = self.field.q
        if self.kind == "identity":
            return 1
        if self.kind == "unipotent":
            return q * q - 1
        if self.kind == "split":
            return q * (q + 1) // (2 if self.param[0] == self.field.neg(1) and q % 2 else 1)
        return q * (q - 1) // (2 if self.param[0] == 0 else 1)


def pgl_class_of(g: ProjElement | Matrix2) -> PGLClassDescriptor:
    M = g.rep if isinstance(g, ProjElement) else g
    F = M.field
    if M.is_scalar():
        return PGLClassDescriptor(F, "identity")
    T, D = M.trace, M.det
    # eigenvalues: roots of x^2 - T x + D
    roots = [x for x in range(F.q) if F.add(F.sub(F.mul(x, x), F.mul(T, x)), D) == 0]
    if len(roots) == 2:
        a = F.div(roots[0], roots[1])
        return PGLClassDescriptor(F, "split", (min(a, F.inv(a)),))
    if len(roots) == 1:
        return PGLClassDescriptor(F, "unipotent")
    cp = canonical_char_poly(F, T, D)
    return PGLClassDescriptor(F, "nonsplit", (cp.T, cp.D))


def all_pgl_classes(F: Field) -> list[PGLClassDescriptor]:
    out = [PGLClassDescriptor(F, "identity")]
    out += [PGLClassDescriptor(F, "split", (a,)) for a in sorted({min(a, F.inv(a)) for a in range(2, F.q)})]
    out.append(PGLClassDescriptor(F, "unipotent"))
    polys = set()
    for T in range(F.q):
        for D in range(1, F.q):
            if not any(F.add(F.sub(F.mul(x, x), F.mul(T, x)), D) == 0 for x in range(F.q)):
                cp = canonical_char_poly(F, T, D)
                polys.add((cp.T, cp.D))
    out += [PGLClassDescriptor(F, "nonsplit", p) for p in sorted(polys)]
    return out


def pgl_restrict(cd: PGLClassDescriptor) -> list[ClassDescriptor]:
    """The PSL(2,q) classes whose union is cd ∩ PSL(2,q)."""
    F = cd.field
    if cd.kind == "identity":
        return [ClassDescriptor(F, "identity")]
    if cd.kind == "unipotent":
        return [c for c in _all_classes(F) if c.kind == "unipotent"]
    if cd.kind == "split":
        a = cd.param[0]
        if not F.is_square(a):
            raise DisjointClassError(f"{cd} is disjoint from PSL(2,{F.q})")
        return [ClassDescriptor(F, "split", min(a, F.inv(a)))]
    T, D = cd.param
    if not F.is_square(D):
        raise DisjointClassError(f"{cd} is disjoint from PSL(2,{F.q})")
    s = F.inv(F.sqrt(D))  # scale so the determinant becomes 1
    t = F.mul(s, T)
    return [ClassDescriptor(F, "nonsplit", min(t, F.neg(t)))]

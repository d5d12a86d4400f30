"""Relative Schur multipliers, the groups D_X, and second quandle homology
for conjugacy classes X of PSL(2,q), q > 3.

Everything is computed inside an explicit covering group Ĝ with a
projection onto the PSL(2,q) table:

* SL(2,q) for q not in {4, 9};
* SL(2,5) for q = 4, through an isomorphism PSL(2,5) -> PSL(2,4);
* the order-2160 cover of A6 for q = 9, from its presentation.

For x in X with lift ŷ, the image of μ_x is the set of kernel elements z
with zŷ conjugate to ŷ.  This set is a subgroup; D_X is Ĝ modulo it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .conjugacy import ClassDescriptor, class_elements, psl_table
from .field import Field, field_of_order
from .finite import FiniteGroup, abelianization_invariants, find_isomorphism
from .fpgroup import a6_cover
from .matrices import group_order, matrix_group


class UnsupportedError(ValueError):
    pass


@dataclass
class Covering:
    label: str
    group: FiniteGroup
    projection: np.ndarray  # Ĝ index -> PSL(2,q) index
    kernel: np.ndarray

    def lifts(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.projection == x)


def _sl_projection(F: Field) -> tuple[FiniteGroup, np.ndarray]:
    sl = matrix_group("SL", F)
    psl = matrix_group("PSL", F)
    return sl.table, psl.lookup[sl.codes].astype(np.int64)


@lru_cache(maxsize=None)
def covering(F: Field) -> Covering:
    q = F.q
    if q <= 3:
        raise UnsupportedError(f"q={q}: covering data needs q > 3")
    target = psl_table(F)
    if q == 4:
        G, proj5 = _sl_projection(field_of_order(5))
        iso = find_isomorphism(psl_table(field_of_order(5)), target)
        if iso is None:
            raise RuntimeError("no isomorphism PSL(2,5) -> PSL(2,4)")
        proj, label = iso[proj5], "SL(2,5)"
    elif q == 9:
        G = a6_cover()
        Q, to_q = G.quotient(G.center())
        iso = find_isomorphism(Q, target)
        if iso is None:
            raise RuntimeError("no isomorphism A6 -> PSL(2,9)")
        proj, label = iso[to_q], "A6*"
    else:
        G, proj = _sl_projection(F)
        label = f"SL(2,{q})"
    kernel = np.flatnonzero(proj == target.identity)
    return Covering(label, G, np.asarray(proj), kernel)


def _psl_index(cd: ClassDescriptor) -> int:
    return matrix_group("PSL", cd.field).index(cd.representative())


def _check(cd: ClassDescriptor) -> None:
    if cd.kind == "identity":
        raise UnsupportedError("the identity class is excluded")
    if cd.q <= 3:
        raise UnsupportedError(f"q={cd.q}: needs q > 3")


def mu_image(cd: ClassDescriptor, x: int | None = None) -> np.ndarray:
    """Kernel elements z of Ĝ -> G with z·ŷ conjugate to ŷ, ŷ a lift of x."""
    _check(cd)
    cov = covering(cd.field)
    G = cov.group
    x = _psl_index(cd) if x is None else x
    y = int(cov.lifts(x)[0])
    cls = G.class_index
    return np.array([z for z in cov.kernel if cls[G.mul[z, y]] == cls[y]])


def mu_image_order(cd: ClassDescriptor, x: int | None = None) -> int:
    return int(mu_image(cd, x).size)


def basepoint_orders(cd: ClassDescriptor, samples: int = 20, seed: int = 0) -> set[int]:
    """mu_image_order at random members of the class."""
    members = class_elements(cd)
    rng = random.Random(seed)
    return {mu_image_order(cd, int(rng.choice(members))) for _ in range(samples)}


def relative_schur_multiplier(cd: ClassDescriptor) -> list[int]:
    """Invariant factors of M(G)/image of μ_x (the kernel is cyclic here)."""
    _check(cd)
    m = covering(cd.field).kernel.size
    k = m // mu_image_order(cd)
    return [] if k == 1 else [k]


def expected_relative_multiplier(cd: ClassDescriptor) -> list[int]:
    """The closed-form answer, for cross-checking the computation."""
    _check(cd)
    q = cd.q
    o = cd.element_order
    if q == 9:
        return {3: [2], 2: [3]}.get(o, [6])
    # PSL(2,4) is PSL(2,5), whose cover is SL(2,5): behaves like odd q
    if (q % 2 == 0 and q != 4) or o == 2:
        return []
    return [2]


@dataclass
class AssDescriptor:
    cd: ClassDescriptor
    covering_label: str
    mu_image_order: int
    rel_multiplier: list[int]
    dx_identification: str
    dx_order: int
    h2_invariants: list[int]

    @property
    def ass_identification(self) -> str:
        return f"{self.dx_identification} x Z"

    def consistent(self) -> bool:
        rel = int(np.prod(self.rel_multiplier)) if self.rel_multiplier else 1
        m = covering(self.cd.field).kernel.size
        return m % self.mu_image_order == 0 and self.dx_order == group_order("PSL", self.cd.q) * rel

    def to_json(self) -> dict:
        return {
            "class_id": self.cd.class_id,
            "name": str(self.cd),
            "covering_group": self.covering_label,
            "mu_image_order": self.mu_image_order,
            "relative_multiplier": self.rel_multiplier,
            "dx": self.dx_identification,
            "dx_order": self.dx_order,
            "ass": self.ass_identification,
            "h2": self.h2_invariants,
        }


def dx_group(cd: ClassDescriptor) -> tuple[FiniteGroup, int]:
    """D_X as a table, with the image of a lift of the class representative."""
    cov = covering(cd.field)
    image = mu_image(cd)
    D, proj = cov.group.quotient(image)
    y = int(cov.lifts(_psl_index(cd))[0])
    return D, int(proj[y])


def _dx_label(cd: ClassDescriptor, order: int) -> str:
    q = cd.q
    psl = group_order("PSL", q)
    if q == 9:
        n = 2160 // order
        return "A6*" if n == 1 else f"A6*/Z{n}"
    if order == psl:
        return f"PSL(2,{q})"
    return "SL(2,5)" if q == 4 else f"SL(2,{q})"


def h2_quandle(cd: ClassDescriptor) -> list[int]:
    """Invariant factors of the abelianized centralizer of the lift in D_X."""
    D, g = dx_group(cd)
    return abelianization_invariants(D, D.centralizer(g))


def ass_descriptor(cd: ClassDescriptor) -> AssDescriptor:
    _check(cd)
    D, _ = dx_group(cd)
    return AssDescriptor(
        cd=cd,
        covering_label=covering(cd.field).label,
        mu_image_order=mu_image_order(cd),
        rel_multiplier=relative_schur_multiplier(cd),
        dx_identification=_dx_label(cd, D.order),
        dx_order=D.order,
        h2_invariants=h2_quandle(cd),
    )


def is_dihedral(G: FiniteGroup, elements: np.ndarray) -> bool:
    """Generated by a cyclic subgroup of index 2 plus an involution inverting it."""
    n = len(elements)
    if n % 2 or n < 4:
        return False
    orders = G.element_orders
    half = n // 2
    for c in elements[orders[elements] == half]:
        cyc = G.generate([int(c)])
        rest = np.setdiff1d(elements, cyc)
        t = int(rest[0])
        if orders[t] == 2 and G.mul[G.mul[t, c], t] == G.inv[c]:
            return True
    # the Klein four group counts as dihedral of order 4
    return n == 4 and set(orders[elements].tolist()) <= {1, 2}


def involution_centralizer(F: Field) -> np.ndarray:
    T = psl_table(F)
    t = int(np.flatnonzero(T.element_orders == 2)[0])
    return T.centralizer(t)


"""Subgroups of PSL(2,q) for small q, labelled by Dickson's list.

The lattice is built up to conjugacy: starting from representatives of the
cyclic subgroups, each representative H is joined with a generator of every
cyclic subgroup, and a join not yet seen contributes its whole conjugacy
class.  Every subgroup is reached because it is the top of a chain of joins
with cyclic subgroups, and each link of the chain is conjugate to a join with
a known representative.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .field import Field, field_of_order, is_prime, prime_power
from .finite import FiniteGroup
from .matrices import group_order, matrix_group

LATTICE_BOUND = int(os.environ.get("PSLRACK_LATTICE_BOUND", 660))

MENU = ("E", "C", "D", "A4", "S4", "A5", "AC", "PSL", "PGL")


class LatticeBoundError(ValueError):
    pass


class DicksonError(RuntimeError):
    """A subgroup received no valid label (never expected)."""


@dataclass(frozen=True, order=True)
class DicksonLabel:
    """One entry of Dickson's list with its parameters.

    E: (p, rank); C: (n,); D: (2n,) i.e. the group order; A4/S4/A5: ();
    AC: (|A|, |C|); PSL/PGL: (q0,).
    """

    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        k, a = self.kind, self.params
        if k == "E":
            return f"E({a[0]}^{a[1]})"
        if k in ("C", "D"):
            return f"{k}{a[0]}"
        if k == "AC":
            return f"A⋊C({a[0]},{a[1]})"
        if k in ("PSL", "PGL"):
            return f"{k}(2,{a[0]})"
        return k

    @property
    def order(self) -> int:
        k, a = self.kind, self.params
        if k == "E":
            return a[0] ** a[1]
        if k in ("C", "D"):
            return a[0]
        if k == "AC":
            return a[0] * a[1]
        if k in ("PSL", "PGL"):
            return group_order(k, a[0])
        return {"A4": 12, "S4": 24, "A5": 60}[k]

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "text": str(self)}


def _prime_power_or_none(n: int) -> tuple[int, int] | None:
    try:
        return prime_power(n)
    except ValueError:
        return None


def smallest_subfield_order(p: int, c: int) -> int:
    """Least p^k with c | p^k - 1 (the subfield generated by a cyclic group of order c)."""
    k = 1
    while (p**k - 1) % c:
        k += 1
    return p**k


def _is_power_of(q: int, base: int) -> bool:
    if base < 2:
        return False
    while q > 1 and q % base == 0:
        q //= base
    return q == 1


def label_valid(label: DicksonLabel, q: int) -> bool:
    """Whether ``label`` is on Dickson's list for PSL(2,q)."""
    p, n = prime_power(q)
    e = gcd(q - 1, 2)
    lo, hi = (q - 1) // e, (q + 1) // e
    k, a = label.kind, label.params
    if k == "E":
        return a[0] == p and 1 <= a[1] <= n
    if k == "C":
        return lo % a[0] == 0 or hi % a[0] == 0
    if k == "D":
        m = a[0] // 2
        return a[0] % 2 == 0 and m >= 2 and (lo % m == 0 or hi % m == 0)
    if k == "A4":
        return q % 2 == 1 or n % 2 == 0
    if k == "S4":
        return (q * q - 1) % 16 == 0
    if k == "A5":
        return p == 5 or (q * q - 1) % 5 == 0
    if k == "AC":
        size_a, c = a
        if c <= 1 or not (1 < size_a <= q) or lo % c:
            return False
        q0 = smallest_subfield_order(p, c)
        return _is_power_of(size_a, q0) and _is_power_of(q, q0)
    if k == "PSL":
        return _prime_power_or_none(a[0]) is not None and _is_power_of(q, a[0])
    if k == "PGL":
        return _prime_power_or_none(a[0]) is not None and _is_power_of(q, a[0] ** 2)
    raise ValueError(f"unknown kind {k!r}")


def aliases(label: DicksonLabel) -> set[DicksonLabel]:
    """Every menu label of the same isomorphism type."""
    L = DicksonLabel
    groups = [
        {L("C", (2,)), L("E", (2, 1))},
        {L("D", (4,)), L("E", (2, 2))},
        {L("D", (6,)), L("PSL", (2,)), L("PGL", (2,)), L("AC", (3, 2))},
        {L("A4",), L("PSL", (3,)), L("AC", (4, 3))},
        {L("A5",), L("PSL", (4,)), L("PSL", (5,)), L("PGL", (4,))},
        {L("S4",), L("PGL", (3,))},
    ]
    out = {label}
    k, a = label.kind, label.params
    if k == "C" and a[0] > 1 and is_prime(a[0]):
        out.add(L("E", (a[0], 1)))
    if k == "E" and a[1] == 1:
        out.add(L("C", (a[0],)))
    if k == "AC" and a[1] == 2 and is_prime(a[0]) and a[0] > 2:
        out.add(L("D", (2 * a[0],)))
    if k == "D" and is_prime(a[0] // 2) and a[0] // 2 > 2:
        out.add(L("AC", (a[0] // 2, 2)))
    for grp in groups:
        if out & grp:
            out |= grp
    return out


def canonical_label(label: DicksonLabel, q: int) -> DicksonLabel:
    """The first valid alias of ``label`` in menu order."""
    valid = [x for x in aliases(label) if label_valid(x, q)]
    if not valid:
        raise DicksonError(f"{label} is not on Dickson's list for q={q}")
    return min(valid, key=lambda x: (MENU.index(x.kind), x.params))


# -- structural recognition ------------------------------------------------------

@lru_cache(maxsize=None)
def _psl_profile(q0: int) -> tuple[tuple[int, int], ...]:
    from .conjugacy import all_classes

    c = Counter()
    for cd in all_classes(field_of_order(q0)):
        c[cd.element_order] += cd.size
    return tuple(sorted(c.items()))


@lru_cache(maxsize=None)
def _pgl_profile(q0: int) -> tuple[tuple[int, int], ...]:
    T = matrix_group("PGL", field_of_order(q0)).table
    return tuple(sorted(T.order_statistics().items()))


def _profile(G: FiniteGroup, el: np.ndarray) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(G.order_statistics(el).items()))


def recognize(G: FiniteGroup, elements) -> DicksonLabel:
    """A menu-style label for the isomorphism type of the subgroup, read off
    from its structure (before choosing the canonical alias)."""
    el = np.asarray(elements)
    n = el.size
    orders = G.element_orders[el]
    if n == 1:
        return DicksonLabel("C", (1,))
    if G.is_abelian(el):
        if orders.max() == n:
            return DicksonLabel("C", (n,))
        pp = _prime_power_or_none(n)
        if pp and (orders[orders > 1] == pp[0]).all():
            return DicksonLabel("E", pp)
        raise DicksonError(f"abelian subgroup of order {n} outside the menu")
    # dihedral: a cyclic subgroup of index 2 whose complement is all involutions
    m = n // 2
    if n % 2 == 0 and m >= 3 and (orders == m).any():
        cyc = G.generate([int(el[orders == m][0])])
        if (G.element_orders[np.setdiff1d(el, cyc)] == 2).all():
            return DicksonLabel("D", (n,))
    prof = _profile(G, el)
    if prof == ((1, 1), (2, 3), (3, 8)):
        return DicksonLabel("A4")
    if prof == ((1, 1), (2, 9), (3, 8), (4, 6)):
        return DicksonLabel("S4")
    if prof == ((1, 1), (2, 15), (3, 20), (5, 24)):
        return DicksonLabel("A5")
    # A ⋊ C: a normal elementary abelian Sylow subgroup with cyclic complement
    for r in sorted({f for f in range(2, n + 1) if n % f == 0 and is_prime(f)}):
        sylow = el[(orders == 1) | (orders == r)]
        c = n // sylow.size
        if c > 1 and c % r and G.is_subgroup(sylow) and (orders == c).any():
            return DicksonLabel("AC", (int(sylow.size), c))
    for q0 in range(2, n + 1):
        pp = _prime_power_or_none(q0)
        if not pp:
            continue
        if group_order("PSL", q0) == n and _psl_profile(q0) == prof:
            return DicksonLabel("PSL", (q0,))
        if group_order("PGL", q0) == n and q0 % 2 and _pgl_profile(q0) == prof:
            return DicksonLabel("PGL", (q0,))
    raise DicksonError(f"unrecognized subgroup of order {n}")


def dickson_classify(G: FiniteGroup, elements, q: int) -> DicksonLabel:
    return canonical_label(recognize(G, elements), q)


# -- the lattice -----------------------------------------------------------------

@dataclass
class SubgroupRecord:
    elements: np.ndarray
    label: DicksonLabel
    generators: list[int]
    class_index: int = -1
    conjugacy_class_size: int = 1

    @property
    def order(self) -> int:
        return int(self.elements.size)


@dataclass
class SubgroupLattice:
    field: Field
    group: FiniteGroup
    representatives: list[SubgroupRecord]
    subgroups: list[SubgroupRecord] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.subgroups)

    def label_counts(self) -> Counter:
        return Counter(str(s.label) for s in self.subgroups)


def _key(el: np.ndarray) -> bytes:
    return np.sort(el).astype(np.int32).tobytes()


def conjugates(G: FiniteGroup, el: np.ndarray) -> list[np.ndarray]:
    """The distinct conjugates of a subgroup, as sorted arrays."""
    g = np.arange(G.order)
    conj = np.sort(G.mul[G.mul[g[:, None], el[None, :]], G.inv[g][:, None]], axis=1)
    uniq = np.unique(conj, axis=0)
    return [row for row in uniq]


def _cyclic_generators(G: FiniteGroup) -> list[int]:
    seen: set[bytes] = set()
    gens = []
    for x in range(G.order):
        k = _key(G.generate([x]))
        if k not in seen:
            seen.add(k)
            gens.append(x)
    return gens


def subgroup_class_representatives(G: FiniteGroup) -> list[tuple[np.ndarray, list[int], list[np.ndarray]]]:
    """(elements, generators, all conjugates) for each conjugacy class of subgroups."""
    cyc = _cyclic_generators(G)
    seen: set[bytes] = set()
    reps = []
    queue = []

    def register(el: np.ndarray, gens: list[int]) -> None:
        k = _key(el)
        if k in seen:
            return
        conj = conjugates(G, el)
        seen.update(_key(c) for c in conj)
        reps.append((el, gens, conj))
        queue.append(len(reps) - 1)

    for x in cyc:
        register(G.generate([x]), [x] if x != G.identity else [])
    while queue:
        i = queue.pop(0)
        el, gens, _ = reps[i]
        mask = np.zeros(G.order, dtype=bool)
        mask[el] = True
        for x in cyc:
            if mask[x]:
                continue
            join = G.generate(gens + [x])
            register(join, gens + [x])
    reps.sort(key=lambda r: (r[0].size, tuple(r[0])))
    return reps


def all_subgroups(F: Field, bound: int | None = None) -> SubgroupLattice:
    """Every subgroup of PSL(2,q), each with its Dickson label."""
    bound = LATTICE_BOUND if bound is None else bound
    if group_order("PSL", F.q) > bound:
        raise LatticeBoundError(f"|PSL(2,{F.q})| = {group_order('PSL', F.q)} exceeds lattice bound {bound}")
    return _lattice(F)


@lru_cache(maxsize=None)
def _lattice(F: Field) -> SubgroupLattice:
    G = matrix_group("PSL", F).table
    reps_raw = subgroup_class_representatives(G)
    reps, subs = [], []
    for i, (el, gens, conj) in enumerate(reps_raw):
        label = dickson_classify(G, el, F.q)
        reps.append(SubgroupRecord(el, label, gens, i, len(conj)))
        for c in conj:
            subs.append(SubgroupRecord(c, label, [], i, len(conj)))
    return SubgroupLattice(F, G, reps, subs)


def is_join_closed(lattice: SubgroupLattice) -> bool:
    """One more join round (every subgroup with every cyclic subgroup) adds
    nothing new."""
    G = lattice.group
    keys = {_key(s.elements) for s in lattice.subgroups}
    cyc = _cyclic_generators(G)
    for rep in lattice.representatives:
        for x in cyc:
            if _key(G.generate(rep.generators + [x])) not in keys:
                return False
    return True


def borel_subgroup(F: Field) -> np.ndarray:
    """Upper triangular elements of PSL(2,q)."""
    MG = matrix_group("PSL", F)
    return np.flatnonzero(MG.reps[:, 2] == 0)


def unipotent_subgroup(F: Field) -> np.ndarray:
    MG = matrix_group("PSL", F)
    one, neg = 1, F.neg(1)
    a, c, d = MG.reps[:, 0], MG.reps[:, 2], MG.reps[:, 3]
    return np.flatnonzero((c == 0) & (((a == one) & (d == one)) | ((a == neg) & (d == neg))))


def conjugate_into(G: FiniteGroup, el: np.ndarray, target: np.ndarray) -> int | None:
    """Some g with g el g^-1 ⊆ target, or None."""
    tmask = np.zeros(G.order, dtype=bool)
    tmask[target] = True
    for g in range(G.order):
        if tmask[G.mul[G.mul[g, el], G.inv[g]]].all():
            return g
    return None

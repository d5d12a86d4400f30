"""Finite groups given by a full multiplication table.

Every brute-force computation in the package (conjugacy orbits, centralizers,
subgroup closure, isomorphism search, abelianization) runs on this one
representation.  Elements are the integers 0..N-1; ``mul[x, y]`` is the
index of x*y.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

import numpy as np


class FiniteGroup:
    def __init__(self, mul: np.ndarray, identity: int = 0, name: str = ""):
        mul = np.asarray(mul, dtype=np.int32)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValueError("multiplication table must be square")
        self.mul = mul
        self.order = mul.shape[0]
        self.identity = identity
        self.name = name
        rows, cols = np.nonzero(mul == identity)
        inv = np.empty(self.order, dtype=np.int32)
        inv[rows] = cols
        self.inv = inv
        self._orders: np.ndarray | None = None
        self._classes: list[np.ndarray] | None = None
        self._class_index: np.ndarray | None = None
        self._gens: list[int] | None = None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or ''} of order {self.order}>"

    # -- elementwise --------------------------------------------------------
    def product(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.mul[acc, x])
        return acc

    def power(self, x: int, m: int) -> int:
        if m < 0:
            x, m = int(self.inv[x]), -m
        acc, base = self.identity, int(x)
        while m:
            if m & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            m >>= 1
        return acc

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def commutator(self, x: int, y: int) -> int:
        """x^-1 y^-1 x y."""
        return self.product(int(self.inv[x]), int(self.inv[y]), x, y)

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n, dtype=np.int32)
            k = 1
            base = np.arange(n, dtype=np.int32)
            while (orders == 0).any():
                hit = (cur == self.identity) & (orders == 0)
                orders[hit] = k
                cur = self.mul[cur, base]
                k += 1
            self._orders = orders
        return self._orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    # -- subsets and subgroups ---------------------------------------------
    def generate(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int32))
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        if gens.size == 0:
            return np.flatnonzero(mask)
        frontier = np.array([self.identity], dtype=np.int32)
        while frontier.size:
            prods = self.mul[np.ix_(frontier, gens)].ravel()
            new = np.unique(prods[~mask[prods]])
            mask[new] = True
            frontier = new
        return np.flatnonzero(mask)

    def is_subgroup(self, elements: Sequence[int]) -> bool:
        el = np.asarray(elements)
        mask = np.zeros(self.order, dtype=bool)
        mask[el] = True
        if not mask[self.identity]:
            return False
        return bool(mask[self.mul[np.ix_(el, el)]].all() and mask[self.inv[el]].all())

    def is_abelian(self, elements: Sequence[int] | None = None) -> bool:
        el = np.arange(self.order) if elements is None else np.asarray(elements)
        block = self.mul[np.ix_(el, el)]
        return bool((block == block.T).all())

    def centralizer(self, x: int, within: Sequence[int] | None = None) -> np.ndarray:
        el = np.arange(self.order) if within is None else np.asarray(within)
        return el[self.mul[el, x] == self.mul[x, el]]

    def center(self) -> np.ndarray:
        gens = self.generators()
        el = np.arange(self.order)
        ok = np.ones(self.order, dtype=bool)
        for g in gens:
            ok &= self.mul[el, g] == self.mul[g, el]
        return el[ok]

    def derived_subgroup(self, elements: Sequence[int] | None = None) -> np.ndarray:
        """Commutator subgroup of the subgroup with the given elements."""
        el = np.arange(self.order) if elements is None else np.asarray(elements)
        xi = self.inv[el]
        # x^-1 y^-1 x y over all pairs
        a = self.mul[np.ix_(xi, xi)]
        b = self.mul[np.ix_(el, el)]
        comm = np.unique(self.mul[a, b].ravel())
        return self.generate(comm)

    def generators(self) -> list[int]:
        """A small generating set (greedy, deterministic)."""
        if self._gens is None:
            self._gens = self.subgroup_generators(np.arange(self.order))
        return self._gens

    def subgroup_generators(self, elements: Sequence[int]) -> list[int]:
        el = np.asarray(elements)
        orders = self.element_orders[el]
        ranked = el[np.argsort(-orders, kind="stable")]
        gens: list[int] = []
        span = np.array([self.identity])
        for x in ranked:
            if span.size == el.size:
                break
            if np.isin(x, span):
                continue
            gens.append(int(x))
            span = self.generate(gens)
        return gens

    def conjugation_orbit(self, x: int, by: Sequence[int] | None = None) -> np.ndarray:
        """{g x g^-1 : g in by} (all of G by default), sorted."""
        g = np.arange(self.order) if by is None else np.asarray(by)
        return np.unique(self.mul[self.mul[g, x], self.inv[g]])

    def conjugate_set(self, g: int, elements: Sequence[int]) -> np.ndarray:
        el = np.asarray(elements)
        return np.sort(self.mul[self.mul[g, el], self.inv[g]])

    # -- conjugacy classes ---------------------------------------------------
    def conjugacy_classes(self) -> list[np.ndarray]:
        if self._classes is None:
            idx = np.full(self.order, -1, dtype=np.int64)
            classes: list[np.ndarray] = []
            for x in range(self.order):
                if idx[x] >= 0:
                    continue
                orbit = self.conjugation_orbit(x)
                idx[orbit] = len(classes)
                classes.append(orbit)
            self._classes = classes
            self._class_index = idx
        return self._classes

    @property
    def class_index(self) -> np.ndarray:
        self.conjugacy_classes()
        assert self._class_index is not None
        return self._class_index

    def classes_within(self, elements: Sequence[int]) -> list[np.ndarray]:
        """Conjugacy classes of the subgroup with the given elements."""
        el = np.asarray(elements)
        seen: set[int] = set()
        out = []
        for x in el:
            if int(x) in seen:
                continue
            orbit = self.conjugation_orbit(int(x), by=el)
            seen.update(int(v) for v in orbit)
            out.append(orbit)
        return out

    def order_statistics(self, elements: Sequence[int] | None = None) -> Counter:
        el = np.arange(self.order) if elements is None else np.asarray(elements)
        return Counter(int(o) for o in self.element_orders[el])

    # -- quotients -------------------------------------------------------------
    def quotient(self, normal: Sequence[int]) -> tuple[FiniteGroup, np.ndarray]:
        """G/N for a normal subgroup N; returns (quotient, projection)."""
        nset = np.asarray(normal)
        proj = np.full(self.order, -1, dtype=np.int32)
        reps = []
        for x in range(self.order):
            if proj[x] >= 0:
                continue
            coset = self.mul[x, nset]
            proj[coset] = len(reps)
            reps.append(x)
        reps_arr = np.asarray(reps)
        qmul = proj[self.mul[np.ix_(reps_arr, reps_arr)]]
        return FiniteGroup(qmul, identity=int(proj[self.identity]), name=f"{self.name}/N"), proj


# -- isomorphism search --------------------------------------------------------

def _word_spanning_tree(G: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """BFS tree as (element, parent, generator position)."""
    seen = {G.identity}
    order = []
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = int(G.mul[x, g])
                if y not in seen:
                    seen.add(y)
                    order.append((y, x, k))
                    nxt.append(y)
        frontier = nxt
    return order


def extend_to_homomorphism(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> np.ndarray | None:
    """The homomorphism G -> H sending gens to images, or None if the
    assignment does not extend."""
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[G.identity] = H.identity
    for y, x, k in _word_spanning_tree(G, gens):
        phi[y] = H.mul[phi[x], images[k]]
    if (phi < 0).any():
        return None
    # check phi(x g) = phi(x) phi(g) for every x and generator g
    for g, img in zip(gens, images):
        if not (phi[G.mul[:, g]] == H.mul[phi, img]).all():
            return None
    return phi


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> np.ndarray | None:
    """An isomorphism G -> H as an index array, or None.

    Generator images are searched class by class: the first generator is sent
    to a fixed representative of each candidate class (conjugation in H makes
    this no loss of generality), the rest range over elements of equal order.
    """
    if G.order != H.order or G.order_statistics() != H.order_statistics():
        return None
    gens = G.generators()
    g_ord = G.element_orders
    h_ord = H.element_orders
    candidates = [np.flatnonzero(h_ord == g_ord[g]) for g in gens]
    first_reps = []
    seen: set[int] = set()
    for x in candidates[0]:
        if int(x) in seen:
            continue
        orbit = H.conjugation_orbit(int(x))
        seen.update(int(v) for v in orbit)
        first_reps.append(int(x))

    def search(k: int, chosen: list[int]) -> np.ndarray | None:
        if k == len(gens):
            phi = extend_to_homomorphism(G, H, gens, chosen)
            if phi is not None and np.unique(phi).size == G.order:
                return phi
            return None
        pool = first_reps if k == 0 else candidates[k]
        for img in pool:
            res = search(k + 1, chosen + [int(img)])
            if res is not None:
                return res
        return None

    return search(0, [])


# -- abelian groups --------------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants_from_orders(orders: Iterable[int]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group, from the
    multiset of its element orders.

    For each prime p the number of cyclic p-factors of order >= p^k is
    log_p(|A[p^k]| / |A[p^(k-1)]|), where A[m] is the m-torsion.
    """
    orders = list(orders)
    n = len(orders)
    elementary: dict[int, list[int]] = {}
    for p, e in _factorize(n).items():
        counts = [1]
        k = 1
        while counts[-1] < p**e:
            counts.append(sum(1 for o in orders if (p**k) % o == 0))
            k += 1
        ranks = [round(math.log(counts[i] / counts[i - 1], p)) for i in range(1, len(counts))]
        # ranks[i] = number of factors of order >= p^(i+1)
        powers = []
        for i, r in enumerate(ranks):
            nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
            powers += [p ** (i + 1)] * (r - nxt)
        elementary[p] = sorted(powers, reverse=True)
    width = max((len(v) for v in elementary.values()), default=0)
    factors = [1] * width
    for p, powers in elementary.items():
        for i, pk in enumerate(powers):
            factors[i] *= pk
    return sorted(f for f in factors if f > 1)


def abelianization_invariants(G: FiniteGroup, elements: Sequence[int] | None = None) -> list[int]:
    """Invariant factors of H/[H,H] for the subgroup H with the given elements."""
    el = np.arange(G.order) if elements is None else np.asarray(elements)
    derived = G.derived_subgroup(el)
    dset = set(int(d) for d in derived)
    # coset labelling of H by the (normal) derived subgroup
    label = {}
    reps = []
    for x in el:
        x = int(x)
        if x in label:
            continue
        for d in derived:
            label[int(G.mul[x, d])] = len(reps)
        reps.append(x)
    if len(reps) == 1:
        return []
    # order of each coset in the quotient
    orders = []
    for r in reps:
        k, acc = 1, r
        while acc not in dset:
            acc = int(G.mul[acc, r])
            k += 1
        orders.append(k)
    return abelian_invariants_from_orders(orders)

"""Finite racks given by their operation table, and conjugation racks.

``op[x, y]`` is x ▷ y.  For a conjugation rack x ▷ y = x y x^-1, and the
rack remembers which group elements its local indices stand for.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .finite import FiniteGroup

POWERSET_LIMIT = 15
EMBED_BOUND = 120


class RackError(ValueError):
    pass


class FiniteRack:
    def __init__(self, op: np.ndarray, elements: Sequence[int] | None = None, group: FiniteGroup | None = None):
        op = np.asarray(op, dtype=np.int32)
        if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[0] == 0:
            raise RackError("operation table must be a non-empty square array")
        self.op = op
        self.size = op.shape[0]
        self.elements = np.arange(self.size) if elements is None else np.asarray(elements)
        self.group = group
        self._orbit_reps: list[int] | None = None

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"<FiniteRack of size {self.size}>"

    # -- axioms ------------------------------------------------------------------
    def translations_bijective(self) -> bool:
        srt = np.sort(self.op, axis=1)
        return bool((srt == np.arange(self.size)).all())

    def self_distributive(self) -> bool:
        op = self.op
        for x in range(self.size):
            # x ▷ (y ▷ z) == (x ▷ y) ▷ (x ▷ z) for all y, z
            lhs = op[x][op]
            rhs = op[np.ix_(op[x], op[x])]
            if not (lhs == rhs).all():
                return False
        return True

    def check_axioms(self) -> bool:
        return self.translations_bijective() and self.self_distributive()

    def is_quandle(self) -> bool:
        return bool((np.diag(self.op) == np.arange(self.size)).all())

    def is_abelian(self, subset: Sequence[int] | None = None) -> bool:
        s = np.arange(self.size) if subset is None else np.asarray(subset)
        return bool((self.op[np.ix_(s, s)] == s[None, :]).all())

    # -- subracks --------------------------------------------------------------
    def closure(self, seed: Iterable[int]) -> np.ndarray:
        """Least subrack containing ``seed`` (sorted local indices)."""
        mask = np.zeros(self.size, dtype=bool)
        seed = np.asarray(list(seed), dtype=np.int64)
        if seed.size == 0:
            raise RackError("closure of the empty set")
        mask[seed] = True
        count = int(mask.sum())
        while True:
            s = np.flatnonzero(mask)
            mask[self.op[np.ix_(s, s)].ravel()] = True
            new = int(mask.sum())
            if new == count:
                return s
            count = new

    def is_subrack(self, subset: Sequence[int]) -> bool:
        s = np.asarray(subset)
        if s.size == 0:
            return False
        mask = np.zeros(self.size, dtype=bool)
        mask[s] = True
        return bool(mask[self.op[np.ix_(s, s)]].all())

    def subrack(self, subset: Sequence[int]) -> FiniteRack:
        """The subrack on ``subset`` with its own table (local re-indexing)."""
        s = np.asarray(sorted(subset))
        pos = np.full(self.size, -1, dtype=np.int64)
        pos[s] = np.arange(s.size)
        sub = pos[self.op[np.ix_(s, s)]]
        if (sub < 0).any():
            raise RackError("subset is not closed")
        return FiniteRack(sub, elements=self.elements[s], group=self.group)

    def inner_orbits(self) -> list[np.ndarray]:
        """Orbits of the group generated by the left translations."""
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in range(self.size):
            for y, z in enumerate(self.op[x].tolist()):
                ry, rz = find(y), find(z)
                if ry != rz:
                    parent[max(ry, rz)] = min(ry, rz)
        roots = np.array([find(x) for x in range(self.size)])
        return [np.flatnonzero(roots == r) for r in np.unique(roots)]

    def orbit_representatives(self) -> list[int]:
        if self._orbit_reps is None:
            self._orbit_reps = [int(o[0]) for o in self.inner_orbits()]
        return self._orbit_reps

    def is_minimal_nonabelian(self) -> bool:
        """Non-abelian, and every non-commuting pair generates the whole rack.

        A proper subrack that is not abelian contains a pair with
        x ▷ y != y, hence the closure of that pair.  So all proper subracks
        are abelian exactly when no such pair has a proper closure.
        Left translations are rack automorphisms, so x may be restricted to
        representatives of their orbits.
        """
        if self.is_abelian():
            return False
        return self.proper_nonabelian_witness() is None

    def proper_nonabelian_witness(self) -> tuple[int, int] | None:
        for x in self.orbit_representatives():
            for y in np.flatnonzero(self.op[x] != np.arange(self.size)):
                if self.closure([x, int(y)]).size < self.size:
                    return (x, int(y))
        return None

    def is_minimal_nonabelian_bruteforce(self) -> bool:
        """The definition itself, over every subrack (|R| <= 12)."""
        if self.size > 12:
            raise RackError("brute-force minimality limited to racks of size <= 12")
        if self.is_abelian():
            return False
        return all(len(s) == self.size or self.is_abelian(s) for s in self.enumerate_subracks())

    def enumerate_subracks(self, max_size: int | None = None, mode: str = "auto") -> list[np.ndarray]:
        """Subracks as sorted index arrays.

        ``powerset`` (|R| <= 15) tests every non-empty subset and is exact.
        ``seeded`` returns closures of sets of at most three elements, up to
        inner automorphisms; it may miss subracks that need more generators.
        """
        if mode == "auto":
            mode = "powerset" if self.size <= POWERSET_LIMIT else "seeded"
        if mode == "powerset":
            out = self._powerset_subracks()
        elif mode == "seeded":
            out = self._seeded_subracks()
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if max_size is not None:
            out = [s for s in out if s.size <= max_size]
        return out

    def _powerset_subracks(self) -> list[np.ndarray]:
        n = self.size
        if n > POWERSET_LIMIT:
            raise RackError(f"power-set scan limited to |R| <= {POWERSET_LIMIT}")
        masks = np.arange(1, 1 << n, dtype=np.int64)
        member = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
        closed = np.ones(masks.size, dtype=bool)
        for x in range(n):
            image_in = (member[:, self.op[x]] | ~member).all(axis=1)
            closed &= image_in | ~member[:, x]
        return [np.flatnonzero(row) for row in member[closed]]

    def _seeded_subracks(self) -> list[np.ndarray]:
        """Closures of sets of at most three elements, one per orbit of the
        first element under left translations.  Every subrack generated by
        three or fewer elements is the image of a returned one under an
        inner automorphism."""
        found: dict[bytes, np.ndarray] = {}
        n = self.size
        pairs: dict[bytes, np.ndarray] = {}
        for x in self.orbit_representatives():
            found.setdefault(np.array([x]).tobytes(), np.array([x]))
            for y in range(n):
                if y != x:
                    s = self.closure([x, y])
                    pairs.setdefault(s.tobytes(), s)
        found.update(pairs)
        for s in pairs.values():
            inside = np.zeros(n, dtype=bool)
            inside[s] = True
            for z in np.flatnonzero(~inside):
                t = self.closure(np.append(s, z))
                found.setdefault(t.tobytes(), t)
        return sorted(found.values(), key=lambda s: (s.size, tuple(s)))


def conjugation_rack(G: FiniteGroup, carrier: Sequence[int]) -> FiniteRack:
    """The rack on ``carrier`` (a union of classes, or any conjugation-closed
    set) with x ▷ y = x y x^-1."""
    carrier = np.unique(np.asarray(carrier))
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[carrier] = np.arange(carrier.size)
    conj = G.mul[G.mul[np.ix_(carrier, carrier)], G.inv[carrier][:, None]]
    op = pos[conj]
    if (op < 0).any():
        raise RackError("carrier is not closed under conjugation by itself")
    return FiniteRack(op, elements=carrier, group=G)


def trivial_rack(n: int) -> FiniteRack:
    return FiniteRack(np.tile(np.arange(n), (n, 1)))


def dihedral_rack(n: int) -> FiniteRack:
    """Reflections of the n-gon: i ▷ j = 2i - j mod n."""
    i = np.arange(n)
    return FiniteRack((2 * i[:, None] - i[None, :]) % n)


def find_rack_embedding(S: FiniteRack, R: FiniteRack, bound: int = EMBED_BOUND) -> dict[int, int] | None:
    """An injective ▷-preserving map S -> R, or None after exhaustive search."""
    if R.size > bound:
        raise RackError(f"embedding search limited to |R| <= {bound}")
    if S.size > R.size:
        return None
    if not S.is_abelian() and R.is_abelian():
        return None
    s_idem = np.diag(S.op) == np.arange(S.size)
    r_idem = np.diag(R.op) == np.arange(R.size)
    f = np.full(S.size, -1, dtype=np.int64)
    used = np.zeros(R.size, dtype=bool)

    def propagate(start: int, trail: list[int]) -> bool:
        queue = [start]
        while queue:
            s = queue.pop()
            assigned = np.flatnonzero(f >= 0)
            for a, b in ((s, assigned), (assigned, s)):
                src = S.op[a, b]
                img = R.op[f[a], f[b]]
                for u, v in zip(np.atleast_1d(src).tolist(), np.atleast_1d(img).tolist()):
                    if f[u] >= 0:
                        if f[u] != v:
                            return False
                    else:
                        if used[v] or s_idem[u] != r_idem[v]:
                            return False
                        f[u] = v
                        used[v] = True
                        trail.append(u)
                        queue.append(u)
        return True

    def undo(trail: list[int]) -> None:
        for u in trail:
            used[f[u]] = False
            f[u] = -1

    def search() -> bool:
        free = np.flatnonzero(f < 0)
        if free.size == 0:
            return True
        s = int(free[0])
        for r in np.flatnonzero(~used & (r_idem == s_idem[s])):
            trail = [s]
            f[s] = r
            used[r] = True
            if propagate(s, trail) and search():
                return True
            undo(trail)
        return False

    if search():
        return {i: int(f[i]) for i in range(S.size)}
    return None


def is_rack_homomorphism(S: FiniteRack, R: FiniteRack, f: dict[int, int]) -> bool:
    m = np.array([f[i] for i in range(S.size)])
    return bool((m[S.op] == R.op[np.ix_(m, m)]).all())


def racks_isomorphic(S: FiniteRack, R: FiniteRack) -> bool:
    return S.size == R.size and find_rack_embedding(S, R, bound=max(EMBED_BOUND, R.size)) is not None

"""Finitely presented groups: a presentation parser and coset enumeration.

Grammar accepted by :func:`parse_presentation`::

    presentation := generators "|" relators
    generators   := name ("," name)*
    relators     := relator ("," relator)*      (may be empty)
    relator      := word ("=" word)?
    word         := factor*
    factor       := atom exponent?
    atom         := name | "(" word ")" | "[" word "," word ("," word)* "]"
    exponent     := "^" integer | "^{" integer "}"

Generator names are matched greedily (longest name first), so ``ab`` reads as
``a b`` when only ``a`` and ``b`` are declared.  ``[x, y]`` is x^-1 y^-1 x y
and ``[x, y, z]`` is ``[[x, y], z]``.  ``u = v`` stands for the relator u v^-1.
An optional surrounding ``< ... >`` is ignored, as is ``*`` between factors.

Words are tuples of non-zero integers: generator k (1-based) is ``k`` and its
inverse ``-k``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .finite import FiniteGroup

Word = tuple[int, ...]

COSET_LIMIT = int(os.environ.get("PSLRACK_COSET_LIMIT", 10**6))
REGULAR_BOUND = 10**4
MAX_GENERATORS = 10
STRATEGIES = ("hlt", "hlt+lookahead")
DEFAULT_STRATEGY = "hlt+lookahead"


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CosetLimitError(RuntimeError):
    pass


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def word_power(word: Sequence[int], n: int) -> Word:
    base = tuple(word) if n >= 0 else invert(word)
    return free_reduce(base * abs(n))


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    return free_reduce(invert(x) + invert(y) + tuple(x) + tuple(y))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        if len(self.generators) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators are supported")

    def word_text(self, word: Sequence[int]) -> str:
        """Canonical text: runs of one generator collapse to a power."""
        if not word:
            return "1"
        sep = "" if all(len(g) == 1 for g in self.generators) else "*"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.generators[abs(word[i]) - 1]
            e = (j - i) * (1 if word[i] > 0 else -1)
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return sep.join(parts)

    def to_text(self) -> str:
        rels = ", ".join(self.word_text(r) for r in self.relators)
        return f"{', '.join(self.generators)} | {rels}"

    def __str__(self) -> str:
        return f"<{self.to_text()}>"

    def parse_word(self, text: str) -> Word:
        return _Parser(text, self.generators).word_only()


class _Parser:
    def __init__(self, text: str, generators: Sequence[str]):
        self.text = text
        self.pos = 0
        self.gens = list(generators)
        self.by_length = sorted(self.gens, key=len, reverse=True)

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        self.skip()
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("malformed exponent", start)
        sign = -1 if self.text[start] == "-" else 1
        return sign * int(self.text[digits:self.pos])

    def exponent(self) -> int:
        if self.peek() != "^":
            return 1
        self.pos += 1
        if self.peek() == "{":
            self.pos += 1
            n = self.integer()
            self.expect("}")
            return n
        return self.integer()

    def atom(self) -> Word:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            w = self.word()
            if self.peek() != ",":
                self.error("commutator needs at least two entries")
            while self.peek() == ",":
                self.pos += 1
                w = commutator(w, self.word())
            self.expect("]")
            return w
        if ch == "1":
            self.pos += 1
            return ()
        for name in self.by_length:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return (self.gens.index(name) + 1,)
        if ch.isalpha() or ch == "_":
            end = start
            while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                end += 1
            self.error(f"unknown symbol {self.text[start:end]!r}", start)
        self.error(f"unexpected {ch or 'end of input'!r}", start)

    def word(self) -> Word:
        out: Word = ()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                continue
            if ch in ("", ",", ")", "]", "=", ">", "|", "}"):
                return free_reduce(out)
            a = self.atom()
            out = out + word_power(a, self.exponent())

    def relator(self) -> Word:
        lhs = self.word()
        if self.peek() == "=":
            self.pos += 1
            rhs = self.word()
            return free_reduce(lhs + invert(rhs))
        return lhs

    def relators(self) -> list[Word]:
        rels: list[Word] = []
        if self.peek() in ("", ">"):
            return rels
        while True:
            rels.append(self.relator())
            if self.peek() != ",":
                break
            self.pos += 1
        return rels

    def word_only(self) -> Word:
        w = self.relator()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return w


def parse_presentation(text: str) -> Presentation:
    body = text.strip()
    offset = len(text) - len(text.lstrip())
    if body.startswith("<"):
        if not body.endswith(">"):
            raise ParseError("unbalanced '<'", offset)
        body = " " + body[1:-1]
    bar = body.find("|")
    if bar < 0:
        raise ParseError("missing '|' between generators and relators", offset + len(body))
    names = [g.strip() for g in body[:bar].split(",")]
    for name in names:
        if not name or not (name[0].isalpha() or name[0] == "_") or not all(c.isalnum() or c == "_" for c in name):
            raise ParseError(f"invalid generator name {name!r}", offset)
    p = _Parser(body, names)
    p.pos = bar + 1
    rels = p.relators()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return Presentation(tuple(names), tuple(rels))


# -- coset enumeration ----------------------------------------------------------

@dataclass
class CosetTable:
    """Completed coset table: ``table[c, 2k]`` is c·g_k, ``table[c, 2k+1]``
    is c·g_k^-1.  Coset 0 is the subgroup itself."""

    presentation: Presentation
    table: np.ndarray
    defined: int = 0

    @property
    def index(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.index

    def generator_permutations(self) -> list[np.ndarray]:
        return [self.table[:, 2 * k] for k in range(len(self.presentation.generators))]

    def trace(self, coset: int | np.ndarray, word: Sequence[int]):
        c = coset
        for x in word:
            c = self.table[c, _column(x)]
        return c

    def is_closed(self) -> bool:
        if (self.table < 0).any():
            return False
        start = np.arange(self.index)
        for k in range(len(self.presentation.generators)):
            if not (self.table[self.table[:, 2 * k], 2 * k + 1] == start).all():
                return False
        return all((self.trace(start, r) == start).all() for r in self.presentation.relators)


def _column(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


class _Enumerator:
    """Coset enumeration in the HLT style with coincidence processing."""

    def __init__(self, ngens: int, limit: int):
        self.ncols = 2 * ngens
        self.limit = limit
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.defined = 1

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, col: int) -> None:
        if self.live >= self.limit:
            raise CosetLimitError(f"coset limit {self.limit} exceeded")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        self.live += 1
        self.defined += 1

    def coincidence(self, a: int, b: int) -> None:
        queue: deque[int] = deque()
        self._merge(a, b, queue)
        T = self.table
        while queue:
            c = queue.popleft()
            row = T[c]
            for col in range(self.ncols):
                d = row[col]
                if d < 0:
                    continue
                if T[d][col ^ 1] == c:
                    T[d][col ^ 1] = -1
                e, f = self.rep(c), self.rep(d)
                if T[e][col] >= 0:
                    self._merge(f, T[e][col], queue)
                elif T[f][col ^ 1] >= 0:
                    self._merge(e, T[f][col ^ 1], queue)
                else:
                    T[e][col] = f
                    T[f][col ^ 1] = e

    def _merge(self, a: int, b: int, queue: deque) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def scan(self, c: int, cols: Sequence[int], fill: bool) -> None:
        """Trace ``cols`` from c forwards and backwards; record a deduction
        or coincidence, defining new cosets first when ``fill`` is set."""
        T = self.table
        f, b = c, c
        i, j = 0, len(cols) - 1
        while True:
            while i <= j and T[f][cols[i]] >= 0:
                f = T[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][cols[j] ^ 1] >= 0:
                b = T[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][cols[i]] = b
                T[b][cols[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, cols[i])

    def lookahead(self, rels: list[list[int]]) -> None:
        for c in range(len(self.table)):
            if not self.alive(c):
                continue
            for r in rels:
                self.scan(c, r, fill=False)
                if not self.alive(c):
                    break

    def run(self, rels: list[list[int]], subgroup: list[list[int]], lookahead: bool) -> None:
        for w in subgroup:
            self.scan(0, w, fill=True)
        c = 0
        while c < len(self.table):
            if self.alive(c):
                try:
                    for r in rels:
                        self.scan(c, r, fill=True)
                        if not self.alive(c):
                            break
                    if self.alive(c):
                        for col in range(self.ncols):
                            if self.table[c][col] < 0:
                                self.define(c, col)
                except CosetLimitError:
                    if not lookahead:
                        raise
                    before = self.live
                    self.lookahead(rels)
                    if self.live >= before:
                        raise
                    continue
            c += 1

    def compact(self) -> np.ndarray:
        order = [c for c in range(len(self.table)) if self.alive(c)]
        # renumber in breadth-first order from coset 0 so output is canonical
        pos = {c: i for i, c in enumerate(order)}
        raw = np.array([[pos[self.rep(d)] for d in self.table[c]] for c in order], dtype=np.int64)
        return _standardize(raw)


def _standardize(raw: np.ndarray) -> np.ndarray:
    n, ncols = raw.shape
    new = np.full(n, -1, dtype=np.int64)
    new[0] = 0
    seen = [0]
    i = 0
    while i < len(seen):
        c = seen[i]
        for col in range(ncols):
            d = raw[c, col]
            if new[d] < 0:
                new[d] = len(seen)
                seen.append(int(d))
        i += 1
    out = np.empty_like(raw)
    out[new] = new[raw]
    return out


def todd_coxeter(P: Presentation, subgroup_words: Sequence[Sequence[int]] = (),
                 limit: int = COSET_LIMIT, strategy: str = DEFAULT_STRATEGY) -> CosetTable:
    """Enumerate the cosets of ⟨subgroup_words⟩ in the group presented by P.

    ``hlt`` fails as soon as ``limit`` live cosets would be exceeded;
    ``hlt+lookahead`` first scans all relators over the whole table without
    defining anything, and resumes if that freed some cosets.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    ngens = len(P.generators)
    e = _Enumerator(ngens, limit)
    rels = [[_column(x) for x in r] for r in P.relators if r]
    sub = [[_column(x) for x in free_reduce(w)] for w in subgroup_words if free_reduce(w)]
    if ngens == 0:
        return CosetTable(P, np.zeros((1, 0), dtype=np.int64), 1)
    e.run(rels, sub, lookahead=strategy == "hlt+lookahead")
    return CosetTable(P, e.compact(), e.defined)


# -- the regular representation ----------------------------------------------------

def regular_group(T: CosetTable, bound: int = REGULAR_BOUND) -> FiniteGroup:
    """The group itself from a coset table over the trivial subgroup.

    Coset i stands for the element w_i with 0·w_i = i; then
    w_i w_j corresponds to i·w_j.
    """
    n = T.index
    if n > bound:
        raise CosetLimitError(f"regular representation limited to degree {bound}")
    if (T.table < 0).any():
        raise ValueError("incomplete coset table")
    tab = T.table
    mul = np.empty((n, n), dtype=np.int32)
    mul[:, 0] = np.arange(n)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for j in frontier:
            for col in range(tab.shape[1]):
                k = int(tab[j, col])
                if not done[k]:
                    done[k] = True
                    mul[:, k] = tab[mul[:, j], col]
                    nxt.append(k)
        frontier = nxt
    G = FiniteGroup(mul, identity=0, name=T.presentation.to_text())
    # coset i is the image of the generator word; keep generator elements handy
    G.presentation_generators = [int(tab[0, 2 * k]) for k in range(len(T.presentation.generators))]
    return G


@dataclass
class GroupAnalysis:
    order: int
    center: np.ndarray
    center_cyclic: bool
    center_generator: int | None
    classes: list[np.ndarray]
    derived_order: int

    def class_sizes(self) -> list[int]:
        return sorted(len(c) for c in self.classes)

    def class_size_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.classes:
            out[len(c)] = out.get(len(c), 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "center_order": int(self.center.size),
            "center_cyclic": self.center_cyclic,
            "class_count": len(self.classes),
            "class_sizes": {str(k): v for k, v in self.class_size_counts().items()},
            "derived_order": self.derived_order,
        }


def analyze_group(G: FiniteGroup) -> GroupAnalysis:
    Z = G.center()
    orders = G.element_orders
    zgen = next((int(z) for z in Z if orders[z] == Z.size), None)
    return GroupAnalysis(
        order=G.order,
        center=Z,
        center_cyclic=zgen is not None,
        center_generator=zgen,
        classes=G.conjugacy_classes(),
        derived_order=int(G.derived_subgroup().size),
    )


def perm_group_analysis(T: CosetTable) -> GroupAnalysis:
    return analyze_group(regular_group(T))


@dataclass
class CentralQuotient:
    group: FiniteGroup
    quotient: FiniteGroup
    projection: np.ndarray
    kernel: np.ndarray
    analysis: GroupAnalysis
    fibration: list[tuple[int, list[int]]]

    def fibre_table(self) -> list[dict]:
        """Per quotient class: its size and the sizes of the classes above it."""
        big = self.group.conjugacy_classes()
        return [
            {"size": size, "covering_class_sizes": sorted(len(big[i]) for i in above)}
            for size, above in self.fibration
        ]


def central_quotient(G: FiniteGroup, n: int) -> CentralQuotient:
    """G modulo its unique central subgroup of order n (center must be cyclic)."""
    Z = G.center()
    if Z.size % n:
        raise ValueError(f"{n} does not divide the center order {Z.size}")
    orders = G.element_orders
    gens = [int(z) for z in Z if orders[z] == Z.size]
    if not gens:
        raise ValueError("center is not cyclic")
    kernel = G.generate([G.power(gens[0], Z.size // n)])
    Q, proj = G.quotient(kernel)
    qclasses = Q.conjugacy_classes()
    qidx = Q.class_index
    above: dict[int, list[int]] = {i: [] for i in range(len(qclasses))}
    for i, c in enumerate(G.conjugacy_classes()):
        above[int(qidx[proj[c[0]]])].append(i)
    fibration = [(len(qclasses[i]), above[i]) for i in range(len(qclasses))]
    return CentralQuotient(G, Q, proj, kernel, analyze_group(Q), fibration)


# -- the Schur covering of A6 ---------------------------------------------------------

ROBERTSON_A6_COVER = "a, b | ab^3(ba)^-4, (ab^2ab^-2)^2ab^2"

SCHUR_A6_COVER = (
    "g1, g2, g3, g4, z | g1^3 z^3, g2^2 z^3, g3^2 z^3, g4^2 z^3, "
    "(g1 g2 z)^3, (g2 g3 z)^3, (g3 g4 z)^3, (g1 g3)^2 z^3, (g2 g4)^2 z^3, "
    "(g1 g4)^2 z, z^6, [z, g1], [z, g2], [z, g3], [z, g4]"
)


_A6_COVER: FiniteGroup | None = None


def a6_cover() -> FiniteGroup:
    """The order-2160 covering group of A6 from the two-generator presentation."""
    global _A6_COVER
    if _A6_COVER is None:
        T = todd_coxeter(parse_presentation(ROBERTSON_A6_COVER))
        _A6_COVER = regular_group(T)
    return _A6_COVER

"""Subracks of the conjugacy classes of PSL(2,q).

Every subrack Y of a class O is a union of conjugacy classes of the subgroup
<Y> it generates.  A subrack is therefore summarized by a *key*: the Dickson
label of <Y> together with the sizes of the <Y>-classes making up Y (sorted,
largest first).  Families are predicates in q and the class; ``keys`` expands
a family into the finite set of keys it allows at the given q.

Cross-validation enumerates subracks by brute force and compares key sets in
both directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd

import numpy as np

from .conjugacy import ClassDescriptor, all_classes, class_elements, psl_table
from .field import Field, field_of_order, is_prime, prime_power
from .matrices import group_order
from .racks import POWERSET_LIMIT, conjugation_rack
from .subgroups import LATTICE_BOUND, DicksonLabel, all_subgroups, canonical_label, dickson_classify, label_valid

Key = tuple[DicksonLabel, tuple[int, ...]]

ABELIAN_PROFILE_LIMIT = 243


class TaxonomyError(ValueError):
    pass


@dataclass
class SubrackFamily:
    name: str
    group: str
    content: str
    condition: str
    holds: bool
    keys: frozenset = frozenset()
    abelian: bool = False
    extension: bool = False

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "group": self.group,
            "content": self.content,
            "condition": self.condition,
            "holds": self.holds,
            "abelian": self.abelian,
            "extension": self.extension,
            "instances": sorted(
                ({"label": str(lab), "class_sizes": list(sizes)} for lab, sizes in self.keys),
                key=lambda d: (d["label"], d["class_sizes"]),
            ),
        }


@dataclass
class MinimalityVerdict:
    verdict: str  # "abelian" | "minimal" | "neither"
    reason: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason}


@dataclass
class SubrackReport:
    cd: ClassDescriptor
    class_type: str
    families: list[SubrackFamily]
    minimality: MinimalityVerdict

    def keys(self, extensions: bool = True) -> set[Key]:
        out: set[Key] = set()
        for f in self.families:
            if f.holds and (extensions or not f.extension):
                out |= f.keys
        return out

    def to_json(self) -> dict:
        return {
            "class_id": self.cd.class_id,
            "class_type": self.class_type,
            "size": self.cd.size,
            "element_order": self.cd.element_order,
            "families": [f.to_json() for f in self.families],
            "minimality": self.minimality.to_json(),
        }


# -- arithmetic helpers ------------------------------------------------------------

def _subfield_orders(q: int) -> list[int]:
    p, n = prime_power(q)
    return [p**k for k in range(1, n + 1) if n % k == 0]


def _is_power_of(q: int, base: int) -> bool:
    if base < 2:
        return False
    while q % base == 0:
        q //= base
    return q == 1


def _canon(kind: str, q: int, *params: int) -> DicksonLabel:
    return canonical_label(DicksonLabel(kind, tuple(params)), q)


@lru_cache(maxsize=None)
def _psl_class_sizes_by_order(q0: int) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for cd in all_classes(field_of_order(q0))[1:]:
        out.setdefault(cd.element_order, []).append(cd.size)
    return out


def _pgl_involution_sizes(q0: int) -> tuple[int, int]:
    """(size of the PGL(2,q0) involution class inside PSL(2,q0), size of the other)."""
    split, nonsplit = q0 * (q0 + 1) // 2, q0 * (q0 - 1) // 2
    return (split, nonsplit) if q0 % 4 == 1 else (nonsplit, split)


def _key(label: DicksonLabel, sizes) -> Key:
    return (label, tuple(sorted(sizes, reverse=True)))


@lru_cache(maxsize=None)
def abelian_unipotent_profile(F: Field, x: int) -> frozenset[tuple[int, int]]:
    """Pairs (r, k): some k elements [1 b; 0 1] with b in x * squares generate
    an elementary abelian group of rank r.

    For p = 2 every nonzero b qualifies and the answer is r <= k <= 2^r - 1.
    Otherwise the F_p-subspaces spanned by elements of x * squares are
    enumerated.
    """
    p, n = F.p, F.n
    if p == 2:
        return frozenset((r, k) for r in range(1, n + 1) for k in range(r, 2**r))
    if F.q > ABELIAN_PROFILE_LIMIT:
        raise TaxonomyError(f"abelian profile enumeration limited to q <= {ABELIAN_PROFILE_LIMIT}")
    good = frozenset(F.mul(x, s) for s in F.squares)
    add = F.add_table

    def span_with(V: frozenset[int], s: int) -> frozenset[int]:
        out = set(V)
        mult = [0]
        for _ in range(p - 1):
            mult.append(int(add[mult[-1], s]))
        for v in V:
            for m in mult:
                out.add(int(add[v, m]))
        return frozenset(out)

    seen: set[frozenset[int]] = set()
    frontier = [span_with(frozenset([0]), s) for s in good]
    profile: set[tuple[int, int]] = set()
    while frontier:
        nxt = []
        for V in frontier:
            if V in seen:
                continue
            seen.add(V)
            r = round(np.log(len(V)) / np.log(p))
            m = len(V & good)
            profile.update((r, k) for k in range(r, m + 1))
            for s in good - V:
                nxt.append(span_with(V, s))
        frontier = nxt
    return frozenset(profile)


# -- families ------------------------------------------------------------------------

def _unipotent_families(cd: ClassDescriptor) -> list[SubrackFamily]:
    F, q, p, n = cd.field, cd.q, cd.field.p, cd.field.n
    fams = []
    e = F.e
    try:
        prof = abelian_unipotent_profile(F, cd.param)
        keys = frozenset(_key(DicksonLabel("E", (p, r)), (1,) * k) for r, k in prof)
    except TaxonomyError:
        keys = frozenset()
    fams.append(SubrackFamily(
        "abelian", "E(p^r)", f"non-empty subsets of {{[1 bx; 0 1] : b square}}, size at most {(q - 1) // e}",
        "always", True, keys, abelian=True))

    psl_keys, double_keys = set(), set()
    for q0 in _subfield_orders(q):
        h = (q0 * q0 - 1) // gcd(2, q0 - 1)
        lab = _canon("PSL", q, q0)
        psl_keys.add(_key(lab, (h,)))
        if q % 2 and _is_power_of(q, q0 * q0):
            double_keys.add(_key(lab, (h, h)))
    fams.append(SubrackFamily(
        "psl-unipotent", "PSL(2,q0)", "a unipotent class of PSL(2,q0)", "q a power of q0", True, frozenset(psl_keys)))
    fams.append(SubrackFamily(
        "pgl-unipotent", "PSL(2,q0)", "both unipotent classes of PSL(2,q0) (the unipotent class of PGL(2,q0))",
        "q odd and a power of q0^2", bool(double_keys), frozenset(double_keys)))

    dih = set()
    if p == 2:
        for m in range(3, q + 2, 2):
            if (q - 1) % m == 0 or (q + 1) % m == 0:
                dih.add(_key(_canon("D", q, 2 * m), (m,)))
    fams.append(SubrackFamily(
        "dihedral-involutions", "D(2n)", "involutions of D(2n), n | q-1 or n | q+1", "p = 2", p == 2, frozenset(dih)))

    a5_2 = p == 2 and n % 2 == 0
    fams.append(SubrackFamily(
        "a5-involutions", "A5", "involutions of A5", "p = 2 and q a power of 4", a5_2,
        frozenset({_key(_canon("A5", q), (15,))}) if a5_2 else frozenset()))
    fams.append(SubrackFamily(
        "a4-3cycles", "A4", "one class of 3-cycles of A4", "p = 3", p == 3,
        frozenset({_key(_canon("A4", q), (4,))}) if p == 3 else frozenset()))
    sq = p == 3 and n % 2 == 0
    fams.append(SubrackFamily(
        "a4-both-3cycles", "A4", "both classes of 3-cycles of A4", "p = 3 and q a power of 9", sq,
        frozenset({_key(_canon("A4", q), (4, 4))}) if sq else frozenset()))
    fams.append(SubrackFamily(
        "a5-3cycles", "A5", "3-cycles of A5", "p = 3 and q a power of 9", sq,
        frozenset({_key(_canon("A5", q), (20,))}) if sq else frozenset()))
    return fams


def _involution_families(cd: ClassDescriptor) -> list[SubrackFamily]:
    q, p = cd.q, cd.field.p
    fams = [SubrackFamily("singletons", "C2", "subracks of size one", "always", True,
                          frozenset({_key(_canon("C", q, 2), (1,))}), abelian=True)]
    dih = set()
    for m in range(2, (q + 1) // 2 + 1):
        if ((q - 1) // 2) % m and ((q + 1) // 2) % m:
            continue
        lab = _canon("D", q, 2 * m)
        if m % 2:
            dih.add(_key(lab, (m,)))
        else:
            dih.add(_key(lab, (m // 2, m // 2, 1)))
            dih.add(_key(lab, (m // 2, m // 2)))
    fams.append(SubrackFamily(
        "dihedral-involutions", "D(2n)",
        "all involutions of D(2n), or for n even the two non-central involution classes",
        "n >= 2, n | (q-1)/2 or n | (q+1)/2", True, frozenset(dih)))
    # For n = 2 mod 4 the reflections s r^(2k) generate D(n), and adding the
    # central involution r^(n/2) (an odd power of r) gives all of D(2n).
    dih_center = {
        _key(lab, (m // 2, 1))
        for lab, sizes in dih
        if len(sizes) == 3 and (m := lab.params[0] // 2) % 4 == 2 and m >= 6
    }
    fams.append(SubrackFamily(
        "dihedral-class-and-center", "D(2n)",
        "one non-central involution class of D(2n) together with the central involution",
        "n = 2 mod 4, n >= 6, n | (q-1)/2 or n | (q+1)/2", bool(dih_center), frozenset(dih_center),
        extension=True))
    s4 = (q * q - 1) % 16 == 0
    fams.append(SubrackFamily(
        "s4-transpositions", "S4", "(1 2)^S4, or (1 2)^S4 with (1 2)(3 4)^S4", "16 | q^2-1", s4,
        frozenset({_key(_canon("S4", q), (6,)), _key(_canon("S4", q), (6, 3))}) if s4 else frozenset()))
    a5 = (q * q - 1) % 5 == 0
    fams.append(SubrackFamily(
        "a5-involutions", "A5", "involutions of A5", "5 | q^2-1", a5,
        frozenset({_key(_canon("A5", q), (15,))}) if a5 else frozenset()))
    ac = (q - 1) % 4 == 0
    ac_keys = set()
    if ac:
        j = 1
        while p**j <= q:
            ac_keys.add(_key(_canon("AC", q, p**j, 2), (p**j,)))
            j += 1
    fams.append(SubrackFamily(
        "ac-involutions", "A⋊C(|A|,2)", "the class A⋊{-1} with A a nonzero additive subgroup of F_q", "4 | q-1",
        ac, frozenset(ac_keys)))
    psl_keys = set()
    for q0 in _subfield_orders(q):
        if q0 > 4:
            psl_keys.add(_key(_canon("PSL", q, q0), tuple(_psl_class_sizes_by_order(q0)[2])))
    fams.append(SubrackFamily(
        "psl-involutions", "PSL(2,q0)", "involutions of PSL(2,q0)", "q0 > 4, q a power of q0",
        bool(psl_keys), frozenset(psl_keys)))
    pgl_keys = set()
    for q0 in _subfield_orders(q):
        if q0 > 4 and _is_power_of(q, q0 * q0):
            inside, outside = _pgl_involution_sizes(q0)
            lab = _canon("PGL", q, q0)
            pgl_keys.add(_key(lab, (outside,)))
            pgl_keys.add(_key(lab, (inside, outside)))
    fams.append(SubrackFamily(
        "pgl-involutions", "PGL(2,q0)",
        "involutions of PGL(2,q0) outside PSL(2,q0), or both involution classes",
        "q0 > 4, q a power of q0^2", bool(pgl_keys), frozenset(pgl_keys)))
    return fams


def _order3_families(cd: ClassDescriptor) -> list[SubrackFamily]:
    q, p = cd.q, cd.field.p
    c3 = _canon("C", q, 3)
    fams = [
        SubrackFamily("singletons", "C3", "subracks of size one", "always", True,
                      frozenset({_key(c3, (1,))}), abelian=True),
        SubrackFamily("inverse-pairs", "C3", "{y, y^-1}", "always", True,
                      frozenset({_key(c3, (1, 1))}), abelian=True),
    ]
    a4 = q % 2 == 1 or prime_power(q)[1] % 2 == 0
    fams.append(SubrackFamily(
        "a4-3cycles", "A4", "(1 2 3)^A4, or (1 2 3)^A4 with (1 3 2)^A4", "q odd or a power of 4", a4,
        frozenset({_key(_canon("A4", q), (4,)), _key(_canon("A4", q), (4, 4))}) if a4 else frozenset()))
    a5 = (q * q - 1) % 5 == 0
    fams.append(SubrackFamily(
        "a5-3cycles", "A5", "(1 2 3)^A5", "5 | q^2-1", a5,
        frozenset({_key(_canon("A5", q), (20,))}) if a5 else frozenset()))
    ac = (q - 1) % 3 == 0
    ac_keys = set()
    if ac:
        q0 = next(p**k for k in range(1, 64) if (p**k - 1) % 3 == 0)
        size = q0
        while size <= q:
            lab = _canon("AC", q, size, 3)
            ac_keys.add(_key(lab, (size,)))
            ac_keys.add(_key(lab, (size, size)))
            size *= q0
    fams.append(SubrackFamily(
        "ac-order3", "A⋊C(|A|,3)", "A⋊{z} or A⋊{z, z^-1} with z of order 3", "3 | q-1", ac, frozenset(ac_keys)))
    psl_keys = set()
    for q0 in _subfield_orders(q):
        if q0 > 4:
            psl_keys.add(_key(_canon("PSL", q, q0), tuple(_psl_class_sizes_by_order(q0)[3])))
    fams.append(SubrackFamily(
        "psl-order3", "PSL(2,q0)", "elements of order 3 of PSL(2,q0)", "q0 > 4, q a power of q0",
        bool(psl_keys), frozenset(psl_keys)))
    return fams


def _char_d(cd: ClassDescriptor) -> int:
    """d with [chi] = x^2 + x + d (equivalently x^2 - x + d)."""
    cp = cd.char_poly
    if cp.T != 1:
        raise TaxonomyError("characteristic polynomial class has zero trace")
    return cp.D


def _semisimple_families(cd: ClassDescriptor) -> list[SubrackFamily]:
    F, q, o = cd.field, cd.q, cd.element_order
    co = _canon("C", q, o)
    fams = [
        SubrackFamily("singletons", f"C{o}", "subracks of size one", "always", True,
                      frozenset({_key(co, (1,))}), abelian=True),
        SubrackFamily("inverse-pairs", f"C{o}", "{y, y^-1}", "always", True,
                      frozenset({_key(co, (1, 1))}), abelian=True),
    ]
    s4 = (q * q - 1) % 16 == 0 and o == 4
    fams.append(SubrackFamily(
        "s4-4cycles", "S4", "(1 2 3 4)^S4", "16 | q^2-1 and o = 4", s4,
        frozenset({_key(_canon("S4", q), (6,))}) if s4 else frozenset()))
    a5 = (q * q - 1) % 5 == 0 and o == 5
    fams.append(SubrackFamily(
        "a5-5cycles", "A5", "(1 2 3 4 5)^A5", "5 | q^2-1 and o = 5", a5,
        frozenset({_key(_canon("A5", q), (12,))}) if a5 else frozenset()))
    split = cd.kind == "split"
    ac_keys = set()
    if split:
        q0 = next(F.p**k for k in range(1, 64) if (F.p**k - 1) % o == 0)
        size = q0
        while size <= q:
            lab = _canon("AC", q, size, o)
            ac_keys.add(_key(lab, (size,)))
            ac_keys.add(_key(lab, (size, size)))
            size *= q0
    fams.append(SubrackFamily(
        "ac-split", f"A⋊C(|A|,{o})", "A⋊{z} or A⋊{z, z^-1} with z of order o(O)", "O split", split,
        frozenset(ac_keys)))
    d = _char_d(cd)
    sub_keys = set()
    for q0 in _subfield_orders(q):
        if q0 <= 4:
            continue
        k = prime_power(q0)[1]
        sub = F.subfield(k)
        if d not in sub:
            continue
        is_sq = any(F.mul(y, y) == d for y in sub if y)
        reducible = any(F.add(F.sub(F.mul(y, y), y), d) == 0 for y in sub)
        size = q0 * (q0 + 1) if reducible else q0 * (q0 - 1)
        lab = _canon("PSL" if is_sq else "PGL", q, q0)
        sub_keys.add(_key(lab, (size,)))
    fams.append(SubrackFamily(
        "subfield-class", "PSL(2,q0) or PGL(2,q0)",
        "the class of PGL(2,q0) with characteristic polynomial x^2+x+d",
        "[chi] = x^2+x+d with d in F_q0, q0 > 4", bool(sub_keys), frozenset(sub_keys)))
    return fams


def class_type(cd: ClassDescriptor) -> str:
    if cd.kind == "identity":
        return "identity"
    if cd.kind == "unipotent":
        return "unipotent"
    o = cd.element_order
    if o == 2:
        return "involution"
    if o == 3:
        return "order3"
    return "semisimple"


def minimality_verdict(cd: ClassDescriptor, F: Field | None = None) -> MinimalityVerdict:
    q = cd.q
    kind = class_type(cd)
    if kind == "identity":
        raise TaxonomyError("the identity class has no subrack taxonomy")
    if kind == "unipotent":
        if is_prime(q):
            return MinimalityVerdict("minimal", "unipotent class, q prime")
        return MinimalityVerdict("neither", "unipotent class, q not prime: contains a unipotent class of PSL(2,p)")
    if kind == "involution":
        if q == 3:
            return MinimalityVerdict("abelian", "involutions, q = 3")
        return MinimalityVerdict("neither", "involutions, q > 3: contains the involutions of a proper dihedral group")
    if kind == "order3":
        if q == 2:
            return MinimalityVerdict("abelian", "order three, q = 2")
        p, n = prime_power(q)
        if p == 2 and is_prime(n) and n % 2:
            return MinimalityVerdict("minimal", "order three, q = 2^m with m an odd prime")
        return MinimalityVerdict("neither", "order three, q not of the form 2^m with m an odd prime")
    o = cd.element_order
    if cd.kind != "nonsplit":
        return MinimalityVerdict("neither", "split semisimple: contains A⋊{z}")
    F = cd.field
    d = _char_d(cd)
    for q0 in _subfield_orders(q)[:-1]:
        if d in F.subfield(prime_power(q0)[1]):
            return MinimalityVerdict("neither", f"d lies in the proper subfield F_{q0}")
    if (q * q - 1) % 16 == 0 and o == 4:
        return MinimalityVerdict("neither", "16 | q^2-1 and o = 4: contains (1 2 3 4)^S4")
    if (q * q - 1) % 5 == 0 and o == 5:
        if q == 4:
            # PSL(2,4) is A5 itself, so the 5-cycle class is the whole class
            return MinimalityVerdict("minimal", "q = 4: the A5 5-cycle subrack is the whole class")
        return MinimalityVerdict("neither", "5 | q^2-1 and o = 5: contains (1 2 3 4 5)^A5")
    return MinimalityVerdict("minimal", "non-split, d in no proper subfield, no S4 or A5 obstruction")


def classify_subracks(cd: ClassDescriptor, F: Field | None = None) -> SubrackReport:
    kind = class_type(cd)
    if kind == "identity":
        raise TaxonomyError("the identity class has no subrack taxonomy")
    if kind == "unipotent":
        fams = _unipotent_families(cd)
    elif kind == "involution":
        fams = _involution_families(cd)
    elif kind == "order3":
        fams = _order3_families(cd)
    else:
        fams = _semisimple_families(cd)
    for f in fams:
        for lab, _ in f.keys:
            if not label_valid(lab, cd.q):
                raise TaxonomyError(f"family {f.name} produced invalid label {lab}")
    return SubrackReport(cd, kind, fams, minimality_verdict(cd))


# -- brute force -------------------------------------------------------------------------

@dataclass
class ValidationReport:
    cd: ClassDescriptor
    mode: str
    complete: bool
    brute_keys: dict = field(default_factory=dict)
    unmatched: list = field(default_factory=list)
    unwitnessed: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.unmatched and (not self.complete or not self.unwitnessed)

    def to_json(self) -> dict:
        def fmt(k):
            return {"label": str(k[0]), "class_sizes": list(k[1])}

        return {
            "class_id": self.cd.class_id,
            "mode": self.mode,
            "complete": self.complete,
            "passed": self.passed,
            "subrack_types_found": len(self.brute_keys),
            "unmatched": [fmt(k) for k in self.unmatched],
            "unwitnessed": [fmt(k) for k in self.unwitnessed],
        }


def _class_sizes_in(G, H: np.ndarray, Y: np.ndarray) -> tuple[int, ...]:
    """Sizes of the H-classes whose union is Y."""
    left = set(int(y) for y in Y)
    sizes = []
    while left:
        y = next(iter(left))
        orb = G.conjugation_orbit(y, by=H)
        left -= set(int(v) for v in orb)
        sizes.append(int(orb.size))
    return tuple(sorted(sizes, reverse=True))


def lattice_subrack_keys(cd: ClassDescriptor) -> dict[Key, int]:
    """Keys of every subrack of cd, one count per conjugacy class of subgroups
    and union of classes, from the full subgroup lattice."""
    F = cd.field
    lat = all_subgroups(F)
    G = lat.group
    cls = G.class_index[class_elements(cd)[0]]
    out: dict[Key, int] = {}
    for rep in lat.representatives:
        H = rep.elements
        inside = H[G.class_index[H] == cls]
        if inside.size == 0:
            continue
        hclasses = G.classes_within(H)
        pieces = [c for c in hclasses if G.class_index[c[0]] == cls]
        if len(pieces) > 20:
            raise TaxonomyError(f"{len(pieces)} classes of {rep.label} inside the class")
        for r in range(1, len(pieces) + 1):
            for combo in combinations(pieces, r):
                Y = np.concatenate(combo)
                if G.generate(Y).size != H.size:
                    continue
                k = _key(rep.label, (c.size for c in combo))
                out[k] = out.get(k, 0) + 1
    return out


def rack_subrack_keys(cd: ClassDescriptor, mode: str) -> dict[Key, int]:
    F = cd.field
    G = psl_table(F)
    R = conjugation_rack(G, class_elements(cd))
    out: dict[Key, int] = {}
    for s in R.enumerate_subracks(mode=mode):
        Y = R.elements[s]
        H = G.generate(Y)
        k = (dickson_classify(G, H, F.q), _class_sizes_in(G, H, Y))
        out[k] = out.get(k, 0) + 1
    return out


def cross_validate(cd: ClassDescriptor, F: Field | None = None, mode: str = "auto") -> ValidationReport:
    """Compare the families of ``classify_subracks`` with brute force.

    ``lattice`` and ``powerset`` are complete, so both directions are
    checked.  ``seeded`` only checks that what it finds is predicted.
    """
    F = cd.field
    if mode == "auto":
        if group_order("PSL", F.q) <= LATTICE_BOUND:
            mode = "lattice"
        elif cd.size <= POWERSET_LIMIT:
            mode = "powerset"
        else:
            mode = "seeded"
    if mode == "lattice":
        brute = lattice_subrack_keys(cd)
    else:
        brute = rack_subrack_keys(cd, mode)
    expected = classify_subracks(cd).keys()
    rep = ValidationReport(cd, mode, complete=mode != "seeded", brute_keys=brute)
    rep.unmatched = sorted(set(brute) - expected, key=str)
    rep.unwitnessed = sorted(expected - set(brute), key=str)
    return rep


def minimal_bruteforce(cd: ClassDescriptor) -> MinimalityVerdict:
    R = conjugation_rack(psl_table(cd.field), class_elements(cd))
    if R.is_abelian():
        return MinimalityVerdict("abelian", "operation table is trivial")
    w = R.proper_nonabelian_witness()
    if w is None:
        return MinimalityVerdict("minimal", "every non-commuting pair generates the class")
    return MinimalityVerdict("neither", f"a non-commuting pair generates a proper subrack of size {R.closure(list(w)).size}")

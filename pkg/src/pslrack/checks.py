"""Invariant checks run by ``pslrack verify`` and the test-suite.

Each check compares a closed-form answer with brute force on the enumerated
group and returns a :class:`Check`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import assoc
from .conjugacy import (
    all_classes,
    class_elements,
    count_classes_of_order,
    count_classes_of_order_bruteforce,
    element_classes,
    expected_class_count,
    is_real,
    is_real_bruteforce,
    power_class,
    psl_table,
)
from .field import Field, has_root, quadratic_form_values
from .matrices import char_poly, group_order, matrix_group
from .racks import conjugation_rack
from .subgroups import LATTICE_BOUND, all_subgroups, label_valid
from .subracks import cross_validate, minimal_bruteforce, minimality_verdict


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        # timings stay out so that reports are reproducible byte for byte
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _nontrivial(F: Field):
    return all_classes(F)[1:]


def check_group_order(F: Field) -> Check:
    n = matrix_group("PSL", F).order
    want = group_order("PSL", F.q)
    return Check("group_order", n == want, f"{n} elements, formula {want}")


def check_class_sizes(F: Field) -> Check:
    T = psl_table(F)
    classes = all_classes(F)
    bad = [cd.class_id for cd in classes if class_elements(cd).size != cd.size]
    total = sum(cd.size for cd in classes)
    ok = (not bad and total == T.order and len(classes) == expected_class_count(F.q)
          and len(T.conjugacy_classes()) == len(classes))
    return Check("class_sizes", ok, f"{len(classes)} classes" + (f", mismatched: {bad}" if bad else ""))


def check_order_counts(F: Field) -> Check:
    orders = sorted(set(int(o) for o in psl_table(F).element_orders))
    bad = [m for m in orders if count_classes_of_order(F, m) != count_classes_of_order_bruteforce(F, m)]
    return Check("classes_of_each_order", not bad, f"orders {orders}" + (f", mismatched: {bad}" if bad else ""))


def check_power_map(F: Field) -> Check:
    T = psl_table(F)
    labels = element_classes(F)
    checked = 0
    bad = []
    for cd in _nontrivial(F):
        if not cd.is_semisimple:
            continue
        o = cd.element_order
        el = class_elements(cd)
        for m in range(1, o):
            if np.gcd(m, o) != 1:
                continue
            want = power_class(cd, m)
            for x in el:
                checked += 1
                if labels[T.power(int(x), m)] != want:
                    bad.append((cd.class_id, m))
                    break
    return Check("power_map", not bad, f"{checked} element powers" + (f", mismatched: {bad[:5]}" if bad else ""))


def check_reality(F: Field) -> Check:
    bad = [cd.class_id for cd in all_classes(F) if is_real(cd) != is_real_bruteforce(cd)]
    return Check("real_classes", not bad, ", ".join(bad))


def check_char_poly_invariance(F: Field) -> Check:
    """Every element of a class has the class's characteristic polynomial."""
    G = matrix_group("PSL", F)
    bad = []
    for cd in all_classes(F):
        want = cd.char_poly
        if any(char_poly(G.matrix(int(i))) != want for i in class_elements(cd)):
            bad.append(cd.class_id)
    return Check("char_poly_invariance", not bad, ", ".join(bad))


def check_quadratic_forms(F: Field) -> Check:
    """For irreducible x^2 - t x + d the form y^2 - t y z + d z^2 takes every
    non-zero value."""
    units = set(range(1, F.q))
    count = 0
    bad = []
    for t in range(F.q):
        for d in range(1, F.q):
            if has_root(F, [d, F.neg(t), 1]):
                continue
            count += 1
            if quadratic_form_values(F, t, d) != units:
                bad.append((t, d))
    return Check("quadratic_form_image", not bad, f"{count} irreducible quadratics")


def check_rack_axioms(F: Field) -> Check:
    T = psl_table(F)
    bad = []
    for cd in _nontrivial(F):
        R = conjugation_rack(T, class_elements(cd))
        if not (R.check_axioms() and R.is_quandle()):
            bad.append(cd.class_id)
    return Check("rack_axioms", not bad, ", ".join(bad))


def check_dickson(F: Field) -> Check:
    if group_order("PSL", F.q) > LATTICE_BOUND:
        return Check("dickson_labels", True, "skipped: group above lattice bound")
    lat = all_subgroups(F)
    bad = [str(s.label) for s in lat.subgroups if not label_valid(s.label, F.q)]
    return Check("dickson_labels", not bad, f"{lat.count} subgroups labelled")


def check_subracks(F: Field) -> Check:
    bad = []
    modes = set()
    for cd in _nontrivial(F):
        rep = cross_validate(cd)
        modes.add(rep.mode)
        if not rep.passed:
            bad.append(cd.class_id)
    return Check("subrack_families", not bad, f"modes {sorted(modes)}" + (f", failed: {bad}" if bad else ""))


def check_minimality(F: Field) -> Check:
    bad = [cd.class_id for cd in _nontrivial(F) if minimality_verdict(cd).verdict != minimal_bruteforce(cd).verdict]
    return Check("minimality", not bad, ", ".join(bad))


def check_relative_multiplier(F: Field) -> Check:
    if F.q <= 3:
        return Check("relative_multiplier", True, "skipped: q <= 3")
    bad = []
    for cd in _nontrivial(F):
        a = assoc.ass_descriptor(cd)
        if a.rel_multiplier != assoc.expected_relative_multiplier(cd) or not a.consistent():
            bad.append(cd.class_id)
    return Check("relative_multiplier", not bad, ", ".join(bad))


def check_involution_centralizer(F: Field) -> Check:
    if F.q % 2 == 0:
        return Check("involution_centralizer", True, "skipped: q even")
    T = psl_table(F)
    C = assoc.involution_centralizer(F)
    ok = C.size in (F.q - 1, F.q + 1) and assoc.is_dihedral(T, C)
    return Check("involution_centralizer", ok, f"order {C.size}")


CHECKS: list[Callable[[Field], Check]] = [
    check_group_order,
    check_class_sizes,
    check_order_counts,
    check_power_map,
    check_reality,
    check_char_poly_invariance,
    check_quadratic_forms,
    check_rack_axioms,
    check_dickson,
    check_subracks,
    check_minimality,
    check_relative_multiplier,
    check_involution_centralizer,
]


@dataclass
class FieldReport:
    q: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"q": self.q, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def run_checks(F: Field, names: list[str] | None = None) -> FieldReport:
    rep = FieldReport(F.q)
    for fn in CHECKS:
        name = fn.__name__.removeprefix("check_")
        if names and name not in names:
            continue
        start = time.perf_counter()
        try:
            c = fn(F)
        except Exception as exc:  # report, keep going with the other checks
            c = Check(name, False, f"{type(exc).__name__}: {exc}")
        c.seconds = time.perf_counter() - start
        rep.checks.append(c)
    return rep

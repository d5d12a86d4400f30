"""Conjugacy classes of PSL(2,q), the racks they form, and their associated groups."""

__version__ = "0.1.0"

from .field import Field, field_of_order
from .conjugacy import ClassDescriptor, all_classes, class_by_id, class_of
from .matrices import enumerate_group, matrix_group
from .racks import FiniteRack, conjugation_rack
from .subgroups import DicksonLabel, all_subgroups, dickson_classify
from .subracks import classify_subracks, cross_validate, minimality_verdict
from .fpgroup import Presentation, parse_presentation, todd_coxeter

__all__ = [
    "ClassDescriptor", "DicksonLabel", "Field", "FiniteRack", "Presentation",
    "all_classes", "all_subgroups", "class_by_id", "class_of", "classify_subracks",
    "conjugation_rack", "cross_validate", "dickson_classify", "enumerate_group",
    "field_of_order", "matrix_group", "minimality_verdict", "parse_presentation",
    "todd_coxeter",
]

"""Pin-type structures on compact surfaces, modelled as Z/4-valued quadratic forms."""

from .forms import ALL_TYPES, QForm, StructureType, enumerate_forms, eval_form, exists
from .homology import HomologyModel, model_for, parse_surface
from .veesum import vee

__version__ = "0.1.0"

__all__ = [
    "ALL_TYPES",
    "HomologyModel",
    "QForm",
    "StructureType",
    "enumerate_forms",
    "eval_form",
    "exists",
    "model_for",
    "parse_surface",
    "vee",
]

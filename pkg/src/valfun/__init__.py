"""Integer-valued rational functions over valued fields, computed exactly."""
from .classify import DomainDescriptor, classify, find_rootless, valuation_lemma_witness
from .fields import *  # noqa: F401,F403
from .fixtures import load_field, load_monic_singular, parse_element, parse_fn, parse_poly, registry_field
from .intr import EvalSet, Verdict, check_membership, is_unit_valued, localization_certificate
from .localpoly import local_poly
from .newton import PiecewiseLinear, minval_poly, minval_rat
from .values import INF, LexInt, QuadIrr

__version__ = "0.1.0"

"""Word problem of Thompson's group V via deterministic push-down recognizers."""

from .decider import Witness, cowp_decide, rotate, wp_decide
from .group import (
    ENDMARKER,
    IDENTITY,
    GeneratingSet,
    TableElement,
    apply_omega,
    apply_prefix_action,
    bundled_higman,
    compose,
    higman_generators,
    invert,
    is_identity,
    load_generating_set,
    maxlen_elem,
    maxlen_set,
    neq_z0omega,
    parse_table,
    reduce,
    word_to_element,
    wp_oracle,
)
from .lz import build_lz, in_lz, lz_direct

__version__ = "0.1.0"

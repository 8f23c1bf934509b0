"""Exact coefficient arithmetic, truncated filtered algebras and their maps."""

from .algebra import (
    LIMITS,
    UNIT,
    Element,
    FilteredAlgebra,
    Limits,
    direct_sum,
    fmt_label,
    ground,
    label_key,
    make_algebra,
    poly_ext,
    square_zero,
    unitize,
    zero_algebra,
)
from .constructions import (
    Extension,
    constant_inclusion,
    evaluation,
    exact_level,
    factor_through,
    fiber_pair,
    fiber_product,
    image_rank,
    kernel,
    levelwise_injective,
    levelwise_surjective,
    poly_map,
    project_map,
    span_echelon,
    subalgebra,
)
from .errors import *  # noqa: F401,F403
from .linalg import Echelon, NotInSpan, rank
from .maps import AlgebraMap, LinearMap, Status, compose, compose_all, identity, zero_map
from .rings import GF, QQ, ZZ, ModP, Ring, parse_ring

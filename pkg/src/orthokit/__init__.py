"""Exact orthogonal-group computations over commutative rings with 2 invertible."""

__version__ = "0.1.0"

from .ring import (
    CapExceeded,
    ContextMismatch,
    Excision,
    IdealDesc,
    Poly,
    Rationals,
    RingCtx,
    RingElem,
    RingError,
    UnsupportedError,
    Zmod,
    enumerate_ideals,
    excision_project,
    ideal,
    is_maximal_ideal,
    parse_ring,
    ring_arith,
    ring_inverse,
)
from .matrix import Mat, Vector, parse_matrix, parse_vector
from .quadmod import (
    QuadSpace,
    diagonal,
    hyperbolic,
    is_orthogonal,
    is_relative,
    orth_sum,
    parse_space,
    phi_tilde,
    q_eval,
)
from .dser import (
    QTOP,
    QTOPSTAR,
    GeneratorRef,
    HomMap,
    Word,
    alpha_star,
    e_alpha,
    e_beta_star,
    lift_elementary,
    lift_orthogonal,
    relative_generator,
    relative_normal_form,
    split_generator,
    word_eval,
)
from .classical import check_f_relations, f_gen, oe, to_dser
from .spinor import (
    SquareClass,
    decompose_reflections,
    eo_membership_oracle,
    reflect,
    spinor_norm,
    square_class,
)
from .grouplab import (
    GroupTable,
    bfs_closure,
    derived_series,
    lower_central_series,
    quotient_structure,
    verify_product_splitting,
)

__all__ = [
    "CapExceeded",
    "ContextMismatch",
    "Excision",
    "GeneratorRef",
    "GroupTable",
    "HomMap",
    "IdealDesc",
    "Mat",
    "Poly",
    "QTOP",
    "QTOPSTAR",
    "QuadSpace",
    "Rationals",
    "RingCtx",
    "RingElem",
    "RingError",
    "SquareClass",
    "UnsupportedError",
    "Vector",
    "Word",
    "Zmod",
    "alpha_star",
    "bfs_closure",
    "check_f_relations",
    "decompose_reflections",
    "derived_series",
    "diagonal",
    "e_alpha",
    "e_beta_star",
    "enumerate_ideals",
    "eo_membership_oracle",
    "excision_project",
    "f_gen",
    "hyperbolic",
    "ideal",
    "is_maximal_ideal",
    "is_orthogonal",
    "is_relative",
    "lift_elementary",
    "lift_orthogonal",
    "lower_central_series",
    "oe",
    "orth_sum",
    "parse_matrix",
    "parse_ring",
    "parse_space",
    "parse_vector",
    "phi_tilde",
    "q_eval",
    "quotient_structure",
    "reflect",
    "relative_generator",
    "relative_normal_form",
    "ring_arith",
    "ring_inverse",
    "spinor_norm",
    "split_generator",
    "square_class",
    "to_dser",
    "verify_product_splitting",
    "word_eval",
]

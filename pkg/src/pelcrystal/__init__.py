"""Exact-arithmetic toolkit for Witt vectors, F-crystals, PEL summand
combinatorics, display deformations, Frobenius stability, and the
supersingular prototype verifier."""

from .cartier import ConnectionModule, descent_roundtrip, horizontal_sections, p_curvature
from .deuring import (
    CurveShort,
    count_supersingular,
    deuring_polynomial,
    eichler_mass,
    hasse_invariant,
    squarefree_check,
)
from .display import (
    DeformedDisplay,
    Display,
    TPoly,
    deform,
    degeneracy_equation,
    endo_compat,
    hasse_witt_iterate,
    multiplicity_at_zero,
    pel_display_template,
)
from .pel import (
    ChainEdge,
    Embedding,
    PelDatum,
    SummandDescriptor,
    assemble_global_polygon,
    build_embeddings,
    cartier_label,
    frobenius_chain,
    mass_formula,
    pullback_chain,
    summand_table,
)
from .semilinear import (
    FCrystal,
    NewtonPolygon,
    SemilinearMap,
    compose,
    dual_polygon,
    linearize,
    newton_slopes,
    p_rank,
)
from .stability import (
    BundleSlopeData,
    HNProfile,
    bound_check,
    classify_summands,
    frobenius_degree,
    hn_equals_hodge,
    instability_sandwich,
    nu,
    strict_ss_rank2_is_strong,
)
from .witt import WittContext, WittElem, frobenius, make_context, teichmuller, valuation

__version__ = "0.1.0"

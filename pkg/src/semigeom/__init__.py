"""Coarse geometry of finitely generated monoids.

Word metrics on right Cayley graphs, Green's relations and Schutzenberger
groups, growth and ends estimates, and quasi-isometry checking over exact
rational arithmetic.  Distances are possibly asymmetric and possibly
infinite; computations on infinite monoids work inside finite balls and
stamp every undecided answer with the radius it was computed at.
"""

from .distances import INFINITE, ZERO, ExtDist, beyond, finite
from .errors import (
    BackendMismatch,
    CapExceeded,
    InvalidSpace,
    NotACongruence,
    NotAnHClass,
    NotFinite,
    NotGenerating,
    NotStronglyConnected,
    SemigeomError,
    UnknownSymbol,
)
from .rewriting import (
    ConfluenceFailure,
    RewritingSystem,
    Rule,
    format_word,
    parse_word,
)
from .monoids import (
    DEFAULT_CAP,
    Element,
    Monoid,
    ProductMonoid,
    RewritingMonoid,
    TableMonoid,
    TransformationMonoid,
    direct_product,
    enumerate_all,
    enumerate_out_ball,
)
from .cayley import (
    CayleyBall,
    build_cayley_ball,
    component_comparability,
    component_poset,
    export_dot,
    full_cayley_graph,
    realized_distance,
    sample_points,
    schutzenberger_ball,
    strongly_connected_components,
)
from .green import (
    FiniteMonoid,
    SchutzGroup,
    check_schutz_action,
    green_relations,
    schutz_group,
    svarc_milnor,
)
from .geometry import (
    QiConstants,
    Space,
    check_axioms,
    check_product_projection_qi,
    check_qi_embedding,
    check_quasi_isometry,
    check_quotient_qi,
    compose_embeddings,
    is_congruence,
    make_space,
    quasi_density,
    quasi_metricity_lambda,
    search_quasi_isometry,
    space_from_ball,
    symmetrize,
)
from .growth import (
    classify_growth,
    dominates_within,
    ends_profile,
    growth_sequence,
)
from . import catalog, descriptions

__all__ = [
    "INFINITE",
    "ZERO",
    "ExtDist",
    "beyond",
    "finite",
    "BackendMismatch",
    "CapExceeded",
    "InvalidSpace",
    "NotACongruence",
    "NotAnHClass",
    "NotFinite",
    "NotGenerating",
    "NotStronglyConnected",
    "SemigeomError",
    "UnknownSymbol",
    "ConfluenceFailure",
    "RewritingSystem",
    "Rule",
    "format_word",
    "parse_word",
    "DEFAULT_CAP",
    "Element",
    "Monoid",
    "ProductMonoid",
    "RewritingMonoid",
    "TableMonoid",
    "TransformationMonoid",
    "direct_product",
    "enumerate_all",
    "enumerate_out_ball",
    "CayleyBall",
    "build_cayley_ball",
    "component_comparability",
    "component_poset",
    "export_dot",
    "full_cayley_graph",
    "realized_distance",
    "sample_points",
    "schutzenberger_ball",
    "strongly_connected_components",
    "FiniteMonoid",
    "SchutzGroup",
    "check_schutz_action",
    "green_relations",
    "schutz_group",
    "svarc_milnor",
    "QiConstants",
    "Space",
    "check_axioms",
    "check_product_projection_qi",
    "check_qi_embedding",
    "check_quasi_isometry",
    "check_quotient_qi",
    "compose_embeddings",
    "is_congruence",
    "make_space",
    "quasi_density",
    "quasi_metricity_lambda",
    "search_quasi_isometry",
    "space_from_ball",
    "symmetrize",
    "classify_growth",
    "dominates_within",
    "ends_profile",
    "growth_sequence",
    "catalog",
    "descriptions",
]

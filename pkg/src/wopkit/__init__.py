"""Weak order polytope toolkit: representations, inequality families,
facet constructions, exhaustive verification and template discovery."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    MoveSpec,
    PreferencePartition,
    WeakOrder,
    apply_move,
    dimension,
    from_ranking,
    pair_index,
    pairs,
    ranking_to_weak_order,
    to_characteristic,
    to_partition,
    to_ranking,
    transpose,
)
from .enumeration import count_weak_orders, enumerate_weak_orders  # noqa: E402
from .errors import (  # noqa: E402
    InvalidPairError,
    InvalidRankingError,
    InvariantError,
    MoveError,
    ParameterError,
    RecordError,
    ResourceLimitError,
    WopkitError,
)
from .inequalities import (  # noqa: E402
    Inequality,
    axiomatic_inequalities,
    class_cardinality,
    lift,
    make_t3_vi,
    make_vi,
    wo4_catalog,
)
from .construct import VectorMatrix, cpt1, cpt2, merge_and_reverse  # noqa: E402
from .structures import StructureId, classify_structure  # noqa: E402
from .verify import (  # noqa: E402
    FacetReport,
    affine_rank,
    check_validity,
    evaluate,
    facet_report,
    separate,
    tight_set,
)
from .discover import (  # noqa: E402
    RhsLaw,
    Template,
    enumerate_templates,
    facet_scan,
    infer_rhs,
    max_over_weak_orders,
    template_lhs,
)

__all__ = [
    "__version__",
    "MoveSpec",
    "PreferencePartition",
    "WeakOrder",
    "apply_move",
    "dimension",
    "from_ranking",
    "pair_index",
    "pairs",
    "ranking_to_weak_order",
    "to_characteristic",
    "to_partition",
    "to_ranking",
    "transpose",
    "count_weak_orders",
    "enumerate_weak_orders",
    "InvalidPairError",
    "InvalidRankingError",
    "InvariantError",
    "MoveError",
    "ParameterError",
    "RecordError",
    "ResourceLimitError",
    "WopkitError",
    "Inequality",
    "axiomatic_inequalities",
    "class_cardinality",
    "lift",
    "make_t3_vi",
    "make_vi",
    "wo4_catalog",
    "VectorMatrix",
    "cpt1",
    "cpt2",
    "merge_and_reverse",
    "StructureId",
    "classify_structure",
    "FacetReport",
    "affine_rank",
    "check_validity",
    "evaluate",
    "facet_report",
    "separate",
    "tight_set",
    "RhsLaw",
    "Template",
    "enumerate_templates",
    "facet_scan",
    "infer_rhs",
    "max_over_weak_orders",
    "template_lhs",
]

"""Leavitt path algebras of finite hypergraphs: normal forms, growth, GK
dimension, structural properties and V-monoid presentations."""

from .algebra import AlgebraElement, involute, multiply, normal_form
from .basis import enumerate_nod_paths, growth_table, is_nod_path
from .budget import StepCounter
from .cover import (
    DegreeWindow,
    covering_hypergraph,
    graded_monoid_presentation,
    smash_multiply,
    verify_cover_isomorphism,
)
from .errors import (
    AlgebraError,
    BudgetExhausted,
    HlpaError,
    HypergraphError,
    InconsistencyError,
    ParseError,
)
from .expr import parse_expression
from .fields import QQ, Field
from .gk import connects, enumerate_quasi_cycles, gk_dimension, max_chain, selfconnected_witness
from .grading import WeightMap, double_weight, homogeneous_components, standard_weight
from .hypergraph import (
    Hypergraph,
    HypergraphHom,
    Letter,
    build_letter_graph,
    check_homomorphism,
    from_separated_graph,
    from_weighted_graph,
    parse_hypergraph,
    serialize_hypergraph,
    subhypergraph,
)
from .monoid import (
    MonoidPresentation,
    group_completion,
    monoid_equal_bounded,
    monoid_to_hypergraph,
    v_monoid_presentation,
)
from .props import check_conditions, local_valuation, property_report

__version__ = "0.1.0"

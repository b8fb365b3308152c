"""Combinatorial analysis of labelled graph C*-algebras.

The package computes, for a finite labelled graph, the vertex-set families
(accommodating sets) underlying the algebra, the lattice of hereditary
saturated subsets classifying the gauge-invariant ideals, quotient labelled
spaces, the merged labelled graph, the strong-cofinality / disagreeability
dynamics deciding simplicity, and an exact symbolic calculus for the
spanning monomials.
"""

from lgca.accommodating import (
    AccommodatingSet,
    FallbackFamilyWarning,
    NotWeaklyLeftResolvingError,
    bar_accommodating,
    custom_accommodating,
    is_receiver_set_finite,
    is_set_finite,
    is_weakly_left_resolving,
    minimal_accommodating,
)
from lgca.dynamics import (
    CofinalityReport,
    DisagreeableReport,
    SimplicityVerdict,
    Verdict,
    is_agreeable,
    is_disagreeable,
    is_disagreeable_class,
    is_simple,
    is_strongly_cofinal,
    label_reachable,
    minimal_period,
)
from lgca.graph import (
    Edge,
    LabelledGraph,
    LevelPartition,
    VertexSet,
    Word,
    as_word,
    label_isomorphic,
    parse_graph,
    parse_graph_file,
)
from lgca.ideals import (
    HereditarySaturatedSet,
    IdealDescriptor,
    QuotientLabelledSpace,
    QuotientNotWLRError,
    enumerate_hs,
    hasse_edges,
    hs_closure,
    ideal_descriptor,
    is_hereditary,
    is_saturated,
    quotient_space,
)
from lgca.merged import MergedLabelledGraph, MergeReport, merge, verify_merge
from lgca.terms import (
    Monomial,
    QQi,
    TermAlgebra,
    TermSum,
    gauge_degree,
    in_ideal,
    quotient_map,
    term_in_ideal,
)

__all__ = [
    "AccommodatingSet",
    "CofinalityReport",
    "DisagreeableReport",
    "Edge",
    "FallbackFamilyWarning",
    "HereditarySaturatedSet",
    "IdealDescriptor",
    "LabelledGraph",
    "LevelPartition",
    "MergeReport",
    "MergedLabelledGraph",
    "Monomial",
    "NotWeaklyLeftResolvingError",
    "QQi",
    "QuotientLabelledSpace",
    "QuotientNotWLRError",
    "SimplicityVerdict",
    "TermAlgebra",
    "TermSum",
    "Verdict",
    "VertexSet",
    "Word",
    "as_word",
    "bar_accommodating",
    "custom_accommodating",
    "enumerate_hs",
    "gauge_degree",
    "hasse_edges",
    "hs_closure",
    "ideal_descriptor",
    "in_ideal",
    "is_agreeable",
    "is_disagreeable",
    "is_disagreeable_class",
    "is_hereditary",
    "is_receiver_set_finite",
    "is_saturated",
    "is_set_finite",
    "is_simple",
    "is_strongly_cofinal",
    "is_weakly_left_resolving",
    "label_isomorphic",
    "label_reachable",
    "merge",
    "minimal_accommodating",
    "minimal_period",
    "parse_graph",
    "parse_graph_file",
    "quotient_map",
    "quotient_space",
    "term_in_ideal",
    "verify_merge",
]

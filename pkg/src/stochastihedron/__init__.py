"""Exact combinatorics of contingency matrices with variable margins.

The library enumerates contingency matrices of fixed weight, builds their
contraction poset (whose order complex is the stochastihedron), verifies
by integral homology that every lower interval is a sphere, evaluates the
meta-matrix counting identities in exact arithmetic, classifies rational
point configurations into four compatible stratifications of the n-th
symmetric product of the plane, and checks constructibility criteria for
representations of the poset.
"""

from .errors import CapacityError, DomainError, StructuralError
from .partitions import (
    OrderedPartition,
    contract_partition,
    enumerate_ordered_partitions,
    partition_to_subset,
    refines,
    subset_to_partition,
)
from .contingency import (
    HORIZONTAL,
    VERTICAL,
    CmPoset,
    ContingencyMatrix,
    build_poset,
    colored_lift_count,
    contract,
    count_cm,
    double_coset_count,
    enumerate_cm,
    is_anodyne,
    margins,
)
from .topology import (
    FinitePoset,
    HomologyProfile,
    SimplicialComplex,
    f_vector,
    homology,
    lower_interval,
    order_complex,
    verify_sphericity,
)
from .metamatrix import (
    MetaMatrix,
    det_metamatrix,
    fubini,
    generalized_count,
    metamatrix,
    stirling_first,
    stirling_second,
    total_count,
    total_positivity,
    verify_factorizations,
)
from .strata import (
    FnfLabel,
    MultiplicityPartition,
    PointConfiguration,
    anodyne_classes,
    classify,
    compress,
    contingency_label,
    fnf_closure_leq,
    fnf_label,
    ifnf_label,
    meet_check,
    multiplicity_partition,
)
from .sheaf import (
    PosetRepresentation,
    constant_sheaf,
    is_constructible,
    skyscraper,
    validate,
)

__version__ = "0.1.0"

"""Exact symbolic toolkit for crossed products of Cuntz algebras by
quasi-free actions of abelian groups: decision procedures with certificates,
an exact *-algebra engine, finite-dimensional decompositions, scaling
elements, and a batch CLI."""

from .algebra import (
    AlgebraElement,
    Context,
    Gen,
    GenStar,
    MultiplierWordSum,
    balanced_expand,
    gauge_expectation,
    is_partial_isometry,
    is_projection,
    multiplier_conjugate,
    normalize,
    rho_k,
    shift_element,
    word_conjugate,
)
from .classify import (
    Verdict,
    af_criterion,
    classify,
    infinite_projection_witness,
    simplicity,
    verify_verdict,
)
from .decompose import (
    DecompositionReport,
    RegionFamily,
    matrix_unit_report,
    region_family,
    seed_projection,
    shift_bound,
    summand_split,
    verify_tiling,
)
from .errors import (
    ConstructionError,
    FeatureError,
    InternalCheckError,
    PrecisionError,
    PreconditionError,
    ResourceLimitError,
    ToolkitError,
)
from .expr import parse_element, render_element
from .functions import FiniteFunction, Interval
from .groups import (
    BasisSymbol,
    Comparator,
    Comparison,
    GroupDescriptor,
    GroupElement,
    OmegaData,
    combine,
    compare_real,
    descriptor_from_json,
    descriptor_to_json,
    element_from_json,
    element_to_json,
    omega_from_json,
    omega_to_json,
)
from .scaling import PartitionData, partition_data, scaling_element
from .scalars import GaussianRational
from .semigroup import (
    ClosureCertificate,
    MembershipWitness,
    closure_covers_group,
    inverse_in_closure,
    member,
    zero_word_exists,
)
from .words import (
    PrefixRelation,
    Word,
    counts_to_word,
    enumerate_words,
    omega_of,
    orthogonal_family,
    prefix_relation,
    render_word,
    word_counts,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

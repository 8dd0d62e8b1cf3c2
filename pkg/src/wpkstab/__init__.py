"""K-stability criteria for weighted projective hypersurfaces.

Decides, from the integer data ``(a_0, ..., a_{n+1}; d)`` of a family
``X_d ⊂ P(a_0, ..., a_{n+1})``, the structural predicates and the
delta-invariant lower bound ``(n+1) a_r / d`` that certify K-stability,
and reproduces the classification counts over family databases.
"""

from wpkstab.core import (
    HypersurfaceFamily,
    InputError,
    WeightSystem,
    c1_count,
    fano_index,
    fundamental_degree,
    is_linear_cone,
    is_wellformed_ambient,
    smoothness_necessary,
)
from wpkstab.criteria import (
    DeltaBound,
    SmoothClassification,
    Verdict,
    VerdictTag,
    classify_smooth,
    corollary3_verdict,
    delta_lower_bound,
    johnson_kollar,
    kstability_verdict,
    lemma_bound1_check,
    ratio_extremum_search,
)

__all__ = [
    "DeltaBound",
    "HypersurfaceFamily",
    "InputError",
    "SmoothClassification",
    "Verdict",
    "VerdictTag",
    "WeightSystem",
    "c1_count",
    "classify_smooth",
    "corollary3_verdict",
    "delta_lower_bound",
    "fano_index",
    "fundamental_degree",
    "is_linear_cone",
    "is_wellformed_ambient",
    "johnson_kollar",
    "kstability_verdict",
    "lemma_bound1_check",
    "ratio_extremum_search",
    "smoothness_necessary",
]

__version__ = "0.1.0"

"""Classification of invariant algebraic D-modules on unipotent groups,
algebraic tori and Borel subgroups."""

from .borel import BorelAlgebra, ProductGauge, borel_algebra, borel_gauge
from .dmod import HomSpace, InvariantDModule, flow_solution, hom_dimension
from .lie import LieAlgebraData, Representation
from .linalg import jordan_chevalley
from .matrix import Matrix
from .scalars import GaussianRational, ToleranceConfig, gr
from .torus import LaurentGauge, TorusRep, laurent_gauge, multi_log, torus_gauge_equivalent
from .unipotent import CanonicalClass, canonical_class, gauge_equivalent, semisimplify

__all__ = [
    "BorelAlgebra",
    "CanonicalClass",
    "GaussianRational",
    "HomSpace",
    "InvariantDModule",
    "LaurentGauge",
    "LieAlgebraData",
    "Matrix",
    "ProductGauge",
    "Representation",
    "ToleranceConfig",
    "TorusRep",
    "borel_algebra",
    "borel_gauge",
    "canonical_class",
    "flow_solution",
    "gauge_equivalent",
    "gr",
    "hom_dimension",
    "jordan_chevalley",
    "laurent_gauge",
    "multi_log",
    "semisimplify",
    "torus_gauge_equivalent",
]

__version__ = "0.1.0"

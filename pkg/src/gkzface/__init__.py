"""Exact face-level combinatorics of GKZ systems.

Everything is decided in exact integer, rational, or Gaussian-rational
arithmetic: face lattices and primitive integral support functions,
saturation certificates, parameter sign classes and coset structure, the
constructive separator/alignment/duality vectors, fiber and cofiber
supports as orbit sets, and symbolic restriction/projection descriptors.
"""

from .errors import (
    EmptyFace,
    GKZError,
    Infeasible,
    LambdaUnsatisfiable,
    NotAFace,
    NotFullRank,
    NotHomogeneous,
    NotInCoset,
    NotNormal,
    NotPointed,
    NotUpwardClosed,
    PostconditionViolated,
    ScaleLimit,
)
from .faces import (
    Face,
    FaceBasis,
    FaceLattice,
    SupportFn,
    face_basis,
    face_data,
    face_lattice,
    face_quantities,
    facets,
    is_homogeneous,
    is_pointed,
)
from .intlinalg import (
    hnf,
    kernel_lattice,
    member_of_image_lattice,
    snf,
)
from .linineq import rational_lp_feasible
from .normality import NormalityCertificate, is_normal, semigroup_member
from .params import (
    CosetClass,
    HClass,
    classify_h,
    coset_classes,
    dual_parameter,
    find_gamma,
    find_lambda,
    in_CF_plus_Zd,
    not_strongly_resonant,
)
from .presentation import (
    BinomialGenerator,
    EulerOperator,
    ModuleDescriptor,
    dual_system,
    euler_operators,
    lattice_ideal_generators,
    projection,
    restriction,
    toric_ideal_generators,
)
from .rationals import GaussRat, as_gauss, as_parameter
from .supports import (
    MgmDescriptor,
    OrbitSet,
    classify_mgm,
    cofsupp,
    fsupp,
    mgm_project,
    mgm_restrict_dual,
    orbit_in_cofsupp,
    orbit_in_fsupp,
    preimage_open_set,
)

__version__ = "0.1.0"

"""Exact decision procedures for equivalences of noncommutative polynomials.

The package decides, with machine-checkable certificates or concrete
matrix-tuple refutation witnesses:

* stable association (equality of evaluation ranks at every tuple),
* isospectrality (equality of spectra at every tuple),
* pointwise similarity at every size (equivalent to equality),
* norm equality at every contractive tuple (unimodular scaling),
* joint similarity of matrix tuples, and inner ranks of padded pencils.

All arithmetic is exact, over the rationals, the Gaussian rationals, or
square-root towers declared as field specs like
``Q(sqrt5)(xi: xi^2=29+13*sqrt5)``.  Every positive verdict carries a
certificate that re-checks by pure expansion; every negative verdict
carries, when the sampling budget finds one, a concrete tuple with the
separating invariant.
"""

from .corpus import verify_paper
from .equiv import (
    ChainStep,
    Decomposition,
    IntertwinerSpace,
    VerificationError,
    decompose,
    elementary_intertwined,
    intertwiner_space,
    intertwining_chain,
    is_isospectral,
    minimal_intertwiner,
    noncommutativity_witness,
    norm_equivalent,
    pointwise_similar,
    stable_association,
)
from .evaluation import (
    MatrixTuple,
    RefutationWitness,
    char_poly,
    charpoly_refuter,
    evaluate,
    inner_rank_lower_bound,
    jordan_profile,
    norm_refuter,
    rank_refuter,
    sample_tuple,
    similarity_invariant_refuter,
    verify_witness,
)
from .fields import Field, FieldError, FieldMismatchError, Scalar
from .ideals import (
    comaximality_certificate,
    factor_homogeneous,
    gcrd,
    homogeneous_right_factors,
)
from .linalg import Matrix
from .ncpoly import NcPoly, UniPoly
from .parsing import ParseError, parse, parse_field, parse_scalar, pretty
from .pencils import (
    LinearPencil,
    PencilFullnessError,
    SimilarityCertificate,
    joint_similarity,
    pad_pencil,
    pencil_eval,
)

__version__ = "0.1.0"

__all__ = [
    "ChainStep",
    "Decomposition",
    "Field",
    "FieldError",
    "FieldMismatchError",
    "IntertwinerSpace",
    "LinearPencil",
    "Matrix",
    "MatrixTuple",
    "NcPoly",
    "ParseError",
    "PencilFullnessError",
    "RefutationWitness",
    "Scalar",
    "SimilarityCertificate",
    "UniPoly",
    "VerificationError",
    "char_poly",
    "charpoly_refuter",
    "comaximality_certificate",
    "decompose",
    "elementary_intertwined",
    "evaluate",
    "factor_homogeneous",
    "gcrd",
    "homogeneous_right_factors",
    "inner_rank_lower_bound",
    "intertwiner_space",
    "intertwining_chain",
    "is_isospectral",
    "jordan_profile",
    "joint_similarity",
    "minimal_intertwiner",
    "noncommutativity_witness",
    "norm_equivalent",
    "norm_refuter",
    "pad_pencil",
    "parse",
    "parse_field",
    "parse_scalar",
    "pencil_eval",
    "pointwise_similar",
    "pretty",
    "rank_refuter",
    "sample_tuple",
    "similarity_invariant_refuter",
    "stable_association",
    "verify_paper",
    "verify_witness",
    "__version__",
]

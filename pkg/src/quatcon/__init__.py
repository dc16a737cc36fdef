"""Exact canonical forms of quaternion matrices under consimilarity, and the
quaternion matrix equations ``AX - X^sigma B = C`` and ``X - A X^sigma B = C``."""

from .canonical import (
    CanonicalResult,
    JordanBlock,
    JordanSpec,
    are_consimilar,
    are_similar,
    canonical_consimilarity,
    char_poly,
    consimilarity_verdicts,
    gaussian_rational_roots,
    jordan_certificate,
    jordan_spec_complex,
    jordan_spec_quaternion,
)
from .equations import (
    EquationKind,
    MSigma,
    ToeplitzParam,
    classify_m_sigma,
    homogeneous_basis_jordan,
    solve_complex_stein,
    solve_complex_sylvester,
    solve_general,
    solve_structured,
    solve_via_canonical,
    verify_solution,
)
from .errors import (
    CertificateError,
    DivisionByZero,
    EigenvaluesNotGaussianRational,
    ExactFrameUnavailable,
    NotInvolutive,
    NotSquare,
    ParseError,
    QuatconError,
    ShapeMismatch,
)
from .matrix import (
    ComplexSplit,
    Mat,
    SolutionSet,
    Status,
    complex_adjoint,
    format_matrix,
    join_complex,
    parse_matrix,
    realify_solve,
    row_reduce,
    split_complex,
)
from .scalar import (
    Automorphism,
    Frame,
    Gauss,
    Quat,
    Rat,
    Sigma,
    apply_automorphism,
    apply_hat,
    parse_quat,
    quat_inverse,
    quat_product,
    reduce_automorphism,
)

__version__ = "0.1.0"

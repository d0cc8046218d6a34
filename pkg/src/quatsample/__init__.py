"""Sampling expansions for quaternion three-term difference equations.

Quaternion arithmetic, simple quaternion polynomials and their zero classes,
quaternion matrices with right eigenvalues, boundary-value problems with their
sampling expansions, and characteristic polynomials of tridiagonal symmetric
quaternion matrices.
"""
from .bvp import (
    BvpSpec,
    PhiTable,
    SamplingExpansion,
    alternate_expansion,
    boundary_poly,
    build_L,
    build_phi,
    expansion_from_points,
    interpolants,
    reconstruct,
    sample_points_method1,
    sample_points_method2,
    transform,
)
from .charpoly import CharPolyResult, char_poly, spectrum_check
from .errors import DomainError, InternalAssertion, QuatSampleError
from .linalg import (
    EigenPair,
    QMatrix,
    complex_adjoint,
    gram_schmidt,
    inner,
    is_normal,
    normality_by_parts,
    right_eigen,
)
from .poly import QPoly, ZeroReport, zeros
from .quaternion import I, J, K, OrbitClass, Quaternion, inverse, is_similar, standardize
from .textio import format_quaternion, parse_quaternion

__version__ = "0.1.0"

__all__ = [
    "BvpSpec", "PhiTable", "SamplingExpansion", "alternate_expansion", "boundary_poly", "build_L",
    "build_phi", "expansion_from_points", "interpolants", "reconstruct", "sample_points_method1",
    "sample_points_method2", "transform", "CharPolyResult", "char_poly", "spectrum_check",
    "DomainError", "InternalAssertion", "QuatSampleError", "EigenPair", "QMatrix", "complex_adjoint",
    "gram_schmidt", "inner", "is_normal", "normality_by_parts", "right_eigen", "QPoly", "ZeroReport",
    "zeros", "I", "J", "K", "OrbitClass", "Quaternion", "inverse", "is_similar", "standardize",
    "format_quaternion", "parse_quaternion",
]

#pragma once

#include <optional>

#include "grpx/module.hpp"

namespace grpx {

/// The lexicographically least (row-major Gram entries) nonzero invariant
/// nondegenerate alternating bilinear form of the module, if one exists.
/// Invariance means g B g^T = B for every generator matrix g.
std::optional<Mat> invariant_alternating_form(const GModule& m);

/// Quadratic form over GF(2), stored by its upper-triangular Gram matrix:
/// Q(v) = v * upper * v^T.  sign is the type (+1 hyperbolic / -1) for even
/// dimension with nondegenerate polarization.
struct QuadraticForm {
  Mat upper;
  int sign = 0;
  Mat polar() const;  // upper + upper^T, the polarization bilinear form
  unsigned eval(const Mat& v) const;
};

/// The lexicographically least invariant quadratic form over GF(2) with
/// nondegenerate polarization, if one exists.  Invariance means
/// Q(v g) = Q(v) for every generator g and vector v.
std::optional<QuadraticForm> invariant_quadratic_form(const GModule& m);

/// Type of a nondegenerate quadratic form on an even-dimensional GF(2)
/// space: +1 if it has 2^{d-1} + 2^{d/2-1} zeros, -1 otherwise.
int arf_sign(const Mat& upper);

/// Rows u1, v1, ..., u_{d/2}, v_{d/2} of a symplectic basis for the
/// nondegenerate alternating form B: f(u_i, v_i) = 1, all other pairs 0.
Mat symplectic_standard_basis(const Mat& B);

}  // namespace grpx

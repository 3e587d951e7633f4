#pragma once

#include "grpx/module.hpp"
#include "grpx/symtype.hpp"

namespace grpx {

/// A faithful irreducible representation of a symplectic-type group over a
/// field k containing the needed roots of unity (r | |k|-1, and 4 | |k|-1
/// in the central-product case).  The dimension is r^n; the center acts by
/// a fixed faithful scalar character z -> omega.
struct WeilRep {
  SymplecticTypeGroup R;
  const Field* k = nullptr;
  unsigned omega = 0;          // primitive zorder-th root of unity in k
  std::vector<Mat> gen_mats;   // matrices of R.gens() (central gen first)
  GModule module;              // module over the matrix group image of R

  /// Matrix of an arbitrary element, via its coordinates in the
  /// symplectic-basis generators.
  Mat tau(const SymElem& e) const;
};

WeilRep weil_rep(const SymplecticTypeGroup& R, const Field& k);

/// For an isometry x of the form data (given as a matrix in the
/// coordinates of fd.f, or for the central-product case alternatively a
/// 2n x 2n symplectic matrix on the model space W), produce the matrix P,
/// unique up to scalar and returned scalar-normalized, with
/// P^{-1} tau(g) P = tau(alpha(g)) for the lifted automorphism alpha.
Mat lift_isometry(const WeilRep& w, const Mat& x);

/// The projective-matrix group generated by the image of tau together with
/// lifts of the given isometries, with the quotient map onto S and its
/// kernel R/Z, certified elementary abelian of order r^{2n}.
struct NormalizerExtension {
  Group big;        // projective-matrix group
  Homomorphism onto;  // big -> S
  Group kernel;     // elementary abelian r^{2n}
};

NormalizerExtension normalizer_extension(const WeilRep& w, const Group& s);

}  // namespace grpx

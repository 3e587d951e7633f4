#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grpx/module.hpp"

namespace grpx {

/// One homogeneous (isotypic) component of the restriction of a module to
/// a normal subgroup: the component subspace, the multiplicity of its
/// irreducible type, and the type's dimension.
struct CliffordComponent {
  Mat basis;    // echelonized rows spanning the component
  int mult;     // m1
  int irr_dim;  // m2
};

/// Decomposition of the restriction V|_M into homogeneous components,
/// together with the permutation action of the acting group's generators
/// on the components.
struct CliffordDecomposition {
  GModule module;                           // V, the natural module of H
  Group msub;                               // M, normal in H
  std::vector<Mat> mmats;                   // matrices of M-generators on V
  std::vector<CliffordComponent> components;
  std::vector<Perm> action;                 // per H-generator
  int k() const { return static_cast<int>(components.size()); }
};

/// Clifford decomposition of V (the natural module of the matrix group
/// V.group) restricted to the normal subgroup M.  The components span V,
/// are permuted by every generator, and the action is transitive when V is
/// irreducible; these facts are verified.
CliffordDecomposition homogeneous_components(const GModule& V, const Group& M);

/// When k > 1, the component subspaces form a block system witnessing
/// imprimitivity; nothing when the restriction is homogeneous.
std::optional<std::vector<Mat>> imprimitivity_witness(const CliffordDecomposition& dec);

/// Tensor factorization of a homogeneous (k = 1) restriction: V = U (x) W
/// with M acting on the W side only; per generator of H the projective
/// pair (left, right) with left (x) right equal to the generator's action
/// in the adapted basis.
struct TensorFactorization {
  int m1, m2;
  std::vector<Mat> left;      // m1 x m1, scalar-normalized
  std::vector<Mat> right;     // m2 x m2, scalar-normalized
  Mat change_of_basis;        // T with T X T^{-1} = left (x) right exactly
  std::vector<Mat> exact_left;   // un-normalized factors with the identity
  std::vector<Mat> exact_right;  // left (x) right = T X T^{-1}
};
std::optional<TensorFactorization> tensor_factorize(const GModule& V, const Group& M,
                                                    const CliffordDecomposition& dec);

/// Result of the reduction of an irreducible projective-matrix group H
/// with a nilpotent irreducible normal subgroup N to a symplectic linear
/// group: the conjugation action of H on a minimal noncentral normal
/// elementary abelian r-subgroup E0 <= N preserves the scalar-commutator
/// alternating form, giving H -> Sp_2n(r) with m = r^n.
struct FeitTits {
  bool ok = false;
  std::string failed_clause;  // "(i)".."(iv)" or a classification message
  unsigned r = 0;
  int n = 0;
  Mat form;                    // alternating form on E0 basis, over GF(r)
  std::vector<GElem> images;   // per H-generator, matrices over GF(r)
  Group sp_image;
  uint64_t kernel_order = 0;
  bool faithful_mod_n = false;  // kernel of the action is exactly N
  bool irreducible = false;     // image acts irreducibly on GF(r)^{2n}
};
FeitTits feit_tits_reduce(const Group& H, const Group& N, uint64_t seed = kDefaultSeed);

bool is_nilpotent(const Group& g);

}  // namespace grpx

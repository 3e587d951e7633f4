#pragma once

#include <string>
#include <vector>

#include "grpx/group.hpp"
#include "grpx/matrix.hpp"

namespace grpx {

/// Module of a group over a finite field: one invertible matrix per
/// generator, acting on row vectors from the right.  The group back-
/// reference is optional (modules arising from chops keep it).
struct GModule {
  std::string name;
  std::vector<Mat> mats;
  Group group;  // may be default-constructed (no impl) when unattached
  bool has_group() const { return static_cast<bool>(group.impl()); }

  const Field& field() const { return mats.at(0).field(); }
  int dim() const { return mats.at(0).rows(); }
  size_t ngens() const { return mats.size(); }

  std::string to_mod() const;
  static GModule from_mod(const std::string& text);
};

/// Spin: smallest invariant subspace containing the given row vectors;
/// returns an echelonized basis matrix.
Mat spin(const GModule& m, const Mat& seed_rows);

GModule tensor(const GModule& a, const GModule& b);
GModule exterior_square(const GModule& a);
GModule dual(const GModule& a);

/// Permutation module of a permutation group over F.
GModule permutation_module(const Group& g, const Field& F);

/// Restriction of the action to an invariant subspace (rows of basis span
/// an invariant space), and the action on the quotient by it.
GModule submodule_action(const GModule& m, const Mat& basis);
GModule quotient_action(const GModule& m, const Mat& basis);

/// Entrywise field automorphism x -> x^(p^f) applied to all matrices.
GModule frobenius_twist(const GModule& m, unsigned f);

}  // namespace grpx

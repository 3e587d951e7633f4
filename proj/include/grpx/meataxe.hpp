#pragma once

#include <optional>
#include <vector>

#include "grpx/module.hpp"

namespace grpx {

/// Irreducibility by the standard random-element / Norton test, with an
/// exhaustive cyclic-submodule fallback for small modules.  When the
/// module is reducible and witness is non-null, it receives the basis of a
/// proper nonzero invariant subspace.
bool is_irreducible(const GModule& m, Mat* witness = nullptr,
                    uint64_t seed = kDefaultSeed);

/// Composition factors with multiplicities (unordered; factors pairwise
/// nonisomorphic).
std::vector<std::pair<GModule, int>> chop(const GModule& m, uint64_t seed = kDefaultSeed);

/// Invertible P with P a(g) = b(g) P for all generators, if one exists.
std::optional<Mat> module_iso(const GModule& a, const GModule& b,
                              uint64_t seed = kDefaultSeed);

/// Dimension of the centralizer algebra of the generator matrices; for an
/// irreducible module this is the degree of the endomorphism field over
/// the ground field.
int endo_field_degree(const GModule& m);

/// Conjugate m into GL(d, p^f) for f | e if possible (for irreducibles:
/// possible iff m is isomorphic to its p^f-power Frobenius twist).
std::optional<GModule> write_over_subfield(const GModule& m, unsigned f,
                                           uint64_t seed = kDefaultSeed);

/// All pairwise nonisomorphic irreducibles of dimension <= dmax over F,
/// by chopping iterated tensor products of a faithful start module
/// (permutation module for permutation groups, natural module for matrix
/// groups over F).  Stops after two consecutive rounds with no new factor.
std::vector<GModule> all_irreducibles_up_to_dim(const Group& g, const Field& F, int dmax,
                                                uint64_t seed = kDefaultSeed);

}  // namespace grpx

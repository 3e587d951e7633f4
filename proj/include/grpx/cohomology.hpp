#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grpx/module.hpp"
#include "grpx/presentation.hpp"

namespace grpx {

/// Action matrices for every element of a small group, from the generator
/// matrices of its module, by breadth-first closure (the assignment is
/// verified to be well-defined).
struct ElementAction {
  std::vector<GElem> elems;  // identity first
  std::vector<Mat> mats;
  std::unordered_map<GElem, int, GElemHash> index;
  const Mat& at(const GElem& e) const;
  int index_of(const GElem& e) const;
};
ElementAction element_action(const Group& g, const GModule& m, size_t cap = 100000);

/// The module of a subgroup obtained by restricting a module of the full
/// group (matrices of the subgroup's generators).
GModule restrict_module(const Group& g, const GModule& m, const Group& sub);

/// Normalized 2-cocycles of a small group: bases of Z^2 and B^2 as
/// flattened vectors indexed by pairs of nonidentity elements, computed by
/// exact linear algebra.  Multiplication convention (right modules):
/// (v, a)(w, b) = (v.rho(b) + w + alpha(a, b), ab), so the cocycle
/// identity reads alpha(a,b).rho(c) - alpha(b,c) + alpha(ab,c) - alpha(a,bc) = 0.
struct CocycleSpace {
  Group s;
  GModule m;
  ElementAction act;
  Mat z2, b2;  // rows = basis vectors of length (|S|-1)^2 * dim M
  int dim_h2() const { return z2.rows() - b2.rows(); }
  /// alpha(elems[i], elems[j]) of a flattened cocycle row, as a 1 x dim M row.
  Mat value(const Mat& flat, int i, int j) const;
  /// Basis of a complement of B^2 in Z^2 (coset representatives of H^2).
  std::vector<Mat> h2_basis() const;
};
CocycleSpace h2_sylow(const Group& s, const GModule& m);

/// dim H^2(G, M) by the stable-element method: the subspace of H^2(S, M)
/// fixed under fusion, cut out by one residue condition per nontrivial
/// (S, S) double coset.  S should be a Sylow p-subgroup for M over GF(p).
int stable_subspace(const Group& g, const Group& s, const GModule& m,
                    const CocycleSpace& cs);

/// Complement search in an extension E of pres's group by the elementary
/// abelian normal subgroup K: lifts[i] in E must map onto the i-th
/// presentation generator.  Corrections in K are solved from the relator
/// defects via free-derivative coefficients; a returned complement is
/// certified (order |E|/|K|, trivial intersection with K).
std::optional<std::vector<GElem>> split_check(const Group& e, const Group& k,
                                              const Presentation& pres,
                                              const std::vector<GElem>& lifts);

/// Minimality of the extension E ->> E/K: minimal iff no proper subgroup
/// of E maps onto the quotient, decided by the supplement search over all
/// K-translates of the generator lifts (exhaustive when |K|^gens fits the
/// budget, seeded sampling otherwise, in which case a positive answer is
/// marked heuristic).
struct MinimalityReport {
  bool minimal;
  std::string certificate;
};
MinimalityReport minimal_extension_check(const Group& e, const Group& k,
                                         uint64_t budget = 4096,
                                         uint64_t seed = kDefaultSeed);

/// Extension data over a presented quotient: per-generator action
/// matrices over GF(p) and one tail vector per relator.
struct ExtensionSpec {
  Presentation quotient;
  std::vector<Mat> action;  // dim x dim, one per presentation generator
  std::vector<Mat> tails;   // 1 x dim, one per relator
  /// Presentation of the extension: module generators with p-power,
  /// commuting, and conjugation relators, plus tail-corrected relators.
  Presentation combined_presentation() const;
  /// The extension as a permutation group via coset enumeration; throws if
  /// the enumerated order is not |quotient| * p^dim (inconsistent tails).
  Group instantiate() const;
};

/// Tails of a flattened cocycle along the relators of a presentation whose
/// generators correspond, in order, to cs.s.gens().
ExtensionSpec extension_spec_from_cocycle(const CocycleSpace& cs, const Mat& flat,
                                          const Presentation& pres);

/// The extension group of a cocycle directly, as a permutation group on
/// the pairs (module vector, group element).
Group extension_group(const CocycleSpace& cs, const Mat& flat);

}  // namespace grpx

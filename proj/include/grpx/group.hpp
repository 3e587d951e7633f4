#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "grpx/element.hpp"

namespace grpx {

inline constexpr uint64_t kDefaultSeed = 12345;
inline constexpr size_t kElementCap = 10000000;

/// A finite group given by generators.  Order and membership use a
/// base-and-strong-generating-set built by a seeded randomized
/// Schreier-Sims (points are permutation points, vectors, or projective
/// points of the natural module, hashed to 64-bit keys).  The randomized
/// build is followed by a deterministic Schreier-generator verification
/// pass, so the resulting chain is exact for every seed; bundled groups'
/// orders are additionally cross-checked against independent counts in the
/// test suite.
///
/// Copies share the cached structure; a Group is immutable once built and
/// distinct groups may be used from different threads.
class Group {
 public:
  Group() = default;
  explicit Group(std::vector<GElem> gens, std::string name = "",
                 uint64_t seed = kDefaultSeed);
  static Group trivial(const GElem& shape, std::string name = "1");

  const std::string& name() const;
  const std::vector<GElem>& gens() const;
  GElem identity() const;

  uint64_t order() const;
  bool is_trivial() const { return order() == 1; }
  bool contains(const GElem& x) const;

  /// Sifting residue of x through the stabilizer chain (identity iff
  /// x is a member).
  GElem sift_residue(const GElem& x) const;

  /// Seed-deterministic product-replacement draw.
  GElem random_element(uint64_t seed) const;

  /// All elements by breadth-first closure; throws past the cap.
  std::vector<GElem> elements(size_t cap = kElementCap) const;

  std::string to_grp() const;
  static Group parse_grp(const std::string& text);

  struct Impl;
  const std::shared_ptr<Impl>& impl() const { return impl_; }

 private:
  std::shared_ptr<Impl> impl_;
};

Group normal_closure(const Group& g, const std::vector<GElem>& seeds);
Group derived_subgroup(const Group& g);
Group center(const Group& g, size_t cap = kElementCap);
bool is_soluble(const Group& g);

/// Largest soluble normal subgroup: accumulate normal closures of p-part
/// seeds whose closure stays soluble, to a fixpoint.
Group soluble_radical(const Group& g, uint64_t seed = kDefaultSeed);

/// A Sylow p-subgroup, by greedy growth inside the p-elements of g.
/// Requires order(g) within the element cap.
Group sylow_subgroup(const Group& g, unsigned p, uint64_t seed = kDefaultSeed);

/// A homomorphism given on generators.  The images must satisfy the
/// defining relations of the source (verified presentations or
/// kernel-tracking constructions); apply() and kernel() use shadowed
/// stabilizer chains over paired elements.
class Homomorphism {
 public:
  Homomorphism(Group source, Group target, std::vector<GElem> images);

  const Group& source() const;
  const Group& target() const;
  const std::vector<GElem>& images() const;

  GElem apply(const GElem& x) const;  // throws if x is not in the source
  uint64_t image_order() const;
  Group image() const;
  Group kernel() const;

 private:
  struct HImpl;
  std::shared_ptr<HImpl> impl_;
};

}  // namespace grpx

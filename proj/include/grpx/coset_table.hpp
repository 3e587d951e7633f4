#pragma once

#include <vector>

#include "grpx/group.hpp"
#include "grpx/presentation.hpp"

namespace grpx {

/// Closed, collapsed coset table: the action of each generator on the
/// cosets of a subgroup, with coset 0 the subgroup itself.
struct CosetTable {
  Presentation pres;
  std::vector<Word> subgens;
  int index = 0;
  std::vector<std::vector<uint32_t>> gen_action;  // [generator][coset]

  Perm gen_perm(int g) const;
  /// Permutation group of the coset action (one generator per abstract
  /// generator, in order).
  Group coset_group(const std::string& name = "") const;
};

/// HLT coset enumeration with immediate coincidence handling and a
/// lookahead pass before giving up; throws if the enumeration does not
/// close within cap cosets.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& sub = {},
                        int cap = 1000000);

/// True iff enumeration over the trivial subgroup yields |reference|
/// cosets and the reference generators (taken in order) satisfy every
/// relator.
bool verify_presentation(const Presentation& p, const Group& reference);

/// All subgroups of index <= bound up to conjugacy, as coset tables, by
/// the canonical-table backtrack.  budget_secs > 0 aborts long searches.
std::vector<CosetTable> low_index_subgroups(const Presentation& p, int bound,
                                            double budget_secs = 0);

}  // namespace grpx

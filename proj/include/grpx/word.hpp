#pragma once

#include <string>
#include <vector>

#include "grpx/element.hpp"
#include "grpx/matrix.hpp"

namespace grpx {

/// Freely reduced word in abstract generators, as (generator index,
/// exponent +-1) literals.
class Word {
 public:
  struct Lit {
    int gen;
    int exp;  // +1 or -1
    bool operator==(const Lit& o) const { return gen == o.gen && exp == o.exp; }
  };

  Word() = default;
  static Word of_gen(int g, int exp = 1);

  Word& append(int g, int exp);  // with free reduction
  Word operator*(const Word& o) const;
  Word inverse() const;
  Word pow(int n) const;

  bool empty() const { return lits_.empty(); }
  size_t size() const { return lits_.size(); }
  const std::vector<Lit>& lits() const { return lits_; }
  bool operator==(const Word& o) const { return lits_ == o.lits_; }

  GElem evaluate(const std::vector<GElem>& images) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  std::vector<Lit> lits_;
};

/// Linearization of a relator: matrices C_x with the property that lifting
/// each generator image by a module element d_x perturbs the relator value
/// by sum_x d_x * C_x (the free-derivative coefficients evaluated in M,
/// for the right action of the generator images on row vectors).
std::vector<Mat> fox_coefficients(const Word& r, const std::vector<Mat>& action);

}  // namespace grpx

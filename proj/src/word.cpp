#include "grpx/word.hpp"

#include <sstream>
#include <stdexcept>

namespace grpx {

Word Word::of_gen(int g, int exp) {
  Word w;
  w.append(g, exp);
  return w;
}

Word& Word::append(int g, int exp) {
  if (exp != 1 && exp != -1) throw std::invalid_argument("Word: exponent must be +-1");
  if (!lits_.empty() && lits_.back().gen == g && lits_.back().exp == -exp)
    lits_.pop_back();
  else
    lits_.push_back({g, exp});
  return *this;
}

Word Word::operator*(const Word& o) const {
  Word r = *this;
  for (const auto& l : o.lits_) r.append(l.gen, l.exp);
  return r;
}

Word Word::inverse() const {
  Word r;
  for (auto it = lits_.rbegin(); it != lits_.rend(); ++it) r.append(it->gen, -it->exp);
  return r;
}

Word Word::pow(int n) const {
  Word base = n < 0 ? inverse() : *this;
  int k = n < 0 ? -n : n;
  Word r;
  for (int i = 0; i < k; ++i) r = r * base;
  return r;
}

GElem Word::evaluate(const std::vector<GElem>& images) const {
  if (images.empty()) throw std::invalid_argument("evaluate: no images");
  GElem r = images[0].identity();
  for (const auto& l : lits_) {
    if (l.gen < 0 || l.gen >= static_cast<int>(images.size()))
      throw std::invalid_argument("evaluate: generator index out of range");
    r = r * (l.exp > 0 ? images[l.gen] : images[l.gen].inverse());
  }
  return r;
}

std::string Word::str(const std::vector<std::string>& names) const {
  if (lits_.empty()) return "1";
  std::ostringstream os;
  // run-length collapse consecutive equal literals into powers
  size_t i = 0;
  bool first = true;
  while (i < lits_.size()) {
    size_t j = i;
    while (j < lits_.size() && lits_[j] == lits_[i]) ++j;
    int e = lits_[i].exp * static_cast<int>(j - i);
    if (!first) os << ' ';
    os << names.at(lits_[i].gen);
    if (e == -1)
      os << '-';
    else if (e != 1)
      os << '^' << e;
    first = false;
    i = j;
  }
  return os.str();
}

std::vector<Mat> fox_coefficients(const Word& r, const std::vector<Mat>& action) {
  if (action.empty()) throw std::invalid_argument("fox_coefficients: no images");
  const Field& F = action[0].field();
  int d = action[0].rows();
  std::vector<Mat> coeff(action.size(), Mat(F, d, d));
  std::vector<Mat> inv(action.size());
  Mat suffix = Mat::identity(F, d);
  const auto& lits = r.lits();
  for (auto it = lits.rbegin(); it != lits.rend(); ++it) {
    int g = it->gen;
    if (it->exp > 0) {
      coeff[g] = coeff[g] + suffix;
      suffix = action[g] * suffix;
    } else {
      if (inv[g].rows() == 0) {
        auto mi = action[g].inverse();
        if (!mi) throw std::invalid_argument("fox_coefficients: singular image");
        inv[g] = *mi;
      }
      suffix = inv[g] * suffix;
      coeff[g] = coeff[g] - suffix;
    }
  }
  return coeff;
}

}  // namespace grpx

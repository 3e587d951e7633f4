#include "grpx/perm.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace grpx {

Perm::Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0u); }

Perm Perm::from_images(std::vector<uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (uint32_t v : images) {
    if (v >= images.size() || seen[v]) throw std::invalid_argument("Perm: not a bijection");
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Perm p(n);
  for (const auto& cyc : cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("Perm: point out of range");
      if (p.img_[a] != static_cast<uint32_t>(a)) throw std::invalid_argument("Perm: repeated point");
      p.img_[a] = b;
    }
  }
  // from_images-style sanity: cycles with repeated points across cycles
  std::vector<bool> seen(n, false);
  for (uint32_t v : p.img_) {
    if (seen[v]) throw std::invalid_argument("Perm: not a bijection");
    seen[v] = true;
  }
  return p;
}

Perm Perm::operator*(const Perm& o) const {
  if (degree() != o.degree()) throw std::invalid_argument("Perm: degree mismatch");
  Perm r;
  r.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = o.img_[img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<uint32_t>(i);
  return r;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

uint64_t Perm::hash() const {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ img_.size();
  for (uint32_t v : img_) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

int Perm::order() const {
  int n = degree();
  std::vector<bool> seen(n, false);
  long long ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do {
      seen[j] = true;
      j = img_[j];
      ++len;
    } while (j != i);
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

std::string Perm::to_cycle_string() const {
  int n = degree();
  std::vector<bool> seen(n, false);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || img_[i] == static_cast<uint32_t>(i)) {
      seen[i] = true;
      continue;
    }
    os << '(';
    int j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << j;
      first = false;
      seen[j] = true;
      j = img_[j];
    } while (j != i);
    os << ')';
    any = true;
  }
  if (!any) os << "()";
  return os.str();
}

Perm Perm::parse_cycles(int n, const std::string& text) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("Perm: expected '('");
    size_t close = text.find(')', i);
    if (close == std::string::npos) throw std::invalid_argument("Perm: missing ')'");
    std::istringstream is(text.substr(i + 1, close - i - 1));
    std::vector<int> cyc;
    int v;
    while (is >> v) {
      cyc.push_back(v);
      if (is.peek() == ',') is.get();
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  return from_cycles(n, cycles);
}

}  // namespace grpx

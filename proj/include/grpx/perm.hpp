#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grpx {

/// Permutation of {0, ..., n-1}.  Products compose left-to-right:
/// (p * q)[x] = q[p[x]], matching the right action x^g on points.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int n);  // identity
  static Perm from_images(std::vector<uint32_t> images);
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(img_.size()); }
  uint32_t operator[](uint32_t x) const { return img_[x]; }

  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  bool is_identity() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  uint64_t hash() const;
  int order() const;

  std::string to_cycle_string() const;
  static Perm parse_cycles(int n, const std::string& text);

 private:
  std::vector<uint32_t> img_;
};

}  // namespace grpx

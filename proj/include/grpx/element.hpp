#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grpx/matrix.hpp"
#include "grpx/perm.hpp"

namespace grpx {

enum class ElemKind { perm, matrix, proj_matrix, direct };

/// A group element of one of four kinds: a permutation, an invertible
/// matrix, a matrix taken modulo scalars (stored scalar-normalized so that
/// equality is literal), or a direct product of elements.  Elements of the
/// same shape multiply left-to-right, consistently with the right action
/// on points and row vectors.
class GElem {
 public:
  GElem() : kind_(ElemKind::perm) {}
  static GElem of_perm(Perm p);
  static GElem of_matrix(Mat m);
  static GElem of_proj(Mat m);  // normalizes
  static GElem direct(std::vector<GElem> parts);

  ElemKind kind() const { return kind_; }
  const Perm& perm() const { return perm_; }
  const Mat& mat() const { return mat_; }
  const std::vector<GElem>& parts() const { return parts_; }

  GElem operator*(const GElem& o) const;
  GElem inverse() const;
  bool is_identity() const;
  bool operator==(const GElem& o) const;
  bool operator!=(const GElem& o) const { return !(*this == o); }
  uint64_t hash() const;

  /// Identity element of the same shape (degree / field / product form).
  GElem identity() const;

  /// True if o has the same kind, degree/field, and product shape.
  bool same_shape(const GElem& o) const;

  std::string str() const;

 private:
  ElemKind kind_;
  Perm perm_;
  Mat mat_;
  std::vector<GElem> parts_;
};

struct GElemHash {
  size_t operator()(const GElem& g) const { return static_cast<size_t>(g.hash()); }
};

GElem conjugate(const GElem& x, const GElem& g);   // g^-1 x g
GElem commutator(const GElem& a, const GElem& b);  // a^-1 b^-1 a b

/// Order of x by repeated multiplication; throws past the cap.
uint64_t element_order(const GElem& x, uint64_t cap = 1u << 22);

}  // namespace grpx

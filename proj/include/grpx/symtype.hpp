#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grpx/forms.hpp"
#include "grpx/group.hpp"
#include "grpx/matrix.hpp"

namespace grpx {

/// The four kinds of symplectic-type r-group handled here: extraspecial of
/// exponent r for odd r; the two extraspecial 2-groups 2^{1+2n}_+/-; and
/// the central product of Z4 with an extraspecial 2-group.
enum class SymKind { odd_extraspecial, two_plus, two_minus, central4 };
std::string sym_kind_name(SymKind k);

/// Form data underlying a symplectic-type group: an alternating form f on
/// V = GF(r)^d, plus (r = 2) a quadratic form polarizing to f.  Cases:
/// r odd with f nondegenerate (d = 2n); r = 2 with f, Q nondegenerate
/// (d = 2n); r = 2 with f of defect 1 and Q nondegenerate (d = 2n + 1).
struct FormData {
  unsigned r = 2;
  Mat f;
  std::optional<Mat> quad;  // upper-triangular, r = 2 only

  int dim() const { return f.rows(); }
  int radical_dim() const;
  int half_rank() const { return (dim() - radical_dim()) / 2; }  // n

  /// Canonical data for each kind: hyperbolic pairs in adjacent
  /// coordinates, minus-type twist in the last plane, defect coordinate
  /// last.
  static FormData standard(unsigned r, SymKind kind, int n);
};

/// Element of the pair model: a vector over GF(r) of length 2n (the image
/// in the model space W) and a central coordinate mod r (or mod 4 in the
/// central-product case).
struct SymElem {
  Mat v;
  unsigned z = 0;
  bool operator==(const SymElem& o) const { return z == o.z && v == o.v; }
  bool operator!=(const SymElem& o) const { return !(*this == o); }
};

class SymplecticTypeGroup {
 public:
  FormData fd;
  SymKind kind;
  unsigned r, zorder;  // zorder = r, or 4 for the central product
  int n;
  Mat beta;    // 2n x 2n cochain on W with beta - beta^T (or + over GF(2)) = f|W
  Mat fw;      // f restricted to W (nondegenerate, 2n x 2n)
  Mat quadw;   // r = 2: upper-triangular Q on W
  Mat wbasis;  // rows: model basis as vectors of V (identity except defect case)
  Mat rad;     // defect case: the radical generator of f (row vector), else 0 x d
  Mat sympb;   // rows u1, v1, ..., un, vn: symplectic basis of (W, fw)

  uint64_t order() const;
  SymElem identity() const;
  SymElem make(const Mat& v, unsigned z) const;
  SymElem mul(const SymElem& a, const SymElem& b) const;
  SymElem inv(const SymElem& a) const;
  SymElem power(SymElem a, long long k) const;

  /// pi: R -> V in the coordinates of fd.f (for the defect case the central
  /// coordinate mod 2 contributes the radical vector).
  Mat project(const SymElem& e) const;

  /// Central generator z, then the symplectic-basis pair elements
  /// (u_1, 0), (v_1, 0), ..., (u_n, 0), (v_n, 0).
  std::vector<SymElem> gens() const;

  uint64_t index_of(const SymElem& e) const;
  SymElem element_at(uint64_t idx) const;
  std::vector<SymElem> all_elements() const;

  /// Regular permutation representation on the element indices, generated
  /// by gens().  Requires order <= 2^14.
  Group to_perm_group(const std::string& name = "") const;

  unsigned quad_w(const Mat& v) const;  // Q on W (r = 2)
};

/// Build the unique symplectic-type group over the given form data; the
/// commutator and power laws are verified (exhaustively for small orders,
/// on seeded random pairs otherwise).
SymplecticTypeGroup construct_R(const FormData& fd, SymKind kind);

/// Recognize a symplectic-type r-group: checks that the center is cyclic
/// of the right order, the central quotient is an elementary abelian
/// 2n-space, and the induced commutator form is nondegenerate; returns the
/// kind and n, or nothing.
std::optional<std::pair<SymKind, int>> classify_R(const Group& g, unsigned r);

/// Matrix group over GF(r) preserving f (and Q when given): Sp_{2n}(r),
/// O^eps_{2n}(2), or the defect-1 isometry group O_{2n+1}(2) ~ Sp_{2n}(2).
/// Generated by transvections; the order is certified against the
/// classical order formula.
Group isometry_group_generators(const FormData& fd);

uint64_t symplectic_group_order(unsigned r, int n);
uint64_t orthogonal_group_order(int n, int eps);  // full O^eps_{2n}(2)

}  // namespace grpx

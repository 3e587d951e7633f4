#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grpx/field.hpp"

namespace grpx {

/// Dense matrix over a Field.  Rows over GF(2) are stored as packed 64-bit
/// words; other fields use one 32-bit slot per entry.  All arithmetic is
/// exact.  Vectors are rows: the natural action of a group element g on a
/// row vector v is v * g.
class Mat {
 public:
  Mat() : F_(&Field::get(2)), rows_(0), cols_(0) {}
  Mat(const Field& F, int rows, int cols);

  static Mat identity(const Field& F, int n);
  static Mat zero(const Field& F, int rows, int cols) { return Mat(F, rows, cols); }
  static Mat row_vector(const Field& F, const std::vector<unsigned>& entries);

  const Field& field() const { return *F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  unsigned get(int i, int j) const;
  void set(int i, int j, unsigned v);

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat scaled(unsigned c) const;
  Mat transpose() const;
  Mat kron(const Mat& o) const;  // Kronecker product
  Mat pow(long long n) const;

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref();
  int rank() const;
  std::optional<Mat> inverse() const;
  unsigned det() const;

  /// Rows form a basis of { v : this * v^T = 0 }.
  Mat nullspace() const;

  /// Some x (as a row vector) with this * x^T = b^T, if consistent.
  std::optional<Mat> solve(const Mat& b_row) const;

  Mat row(int i) const;
  void set_row(int i, const Mat& v);
  Mat rows_slice(const std::vector<int>& idx) const;
  void append_row(const Mat& v);

  /// Row vector times matrix (this is the vector; o is square-ish).
  Mat apply(const Mat& o) const { return *this * o; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_scalar() const;  // nonzero scalar multiple of the identity

  /// Scalar-normalize: divide by the first nonzero entry (projective
  /// representative).  No-op on the zero matrix.
  Mat proj_normalized() const;

  uint64_t hash() const;

  /// Pack a row vector into a 64-bit key (entry bit-width = ceil(log2 q)).
  /// Requires cols * width <= 64.
  uint64_t row_key(int i = 0) const;

  std::string to_text(const std::string& headline = "matrix") const;
  static Mat from_text(const std::string& text);

 private:
  const Field* F_;
  int rows_, cols_;
  int wpr_ = 0;                  // words per row (GF(2) path)
  std::vector<uint64_t> bits_;   // GF(2)
  std::vector<uint32_t> v_;      // generic
  bool packed() const { return F_->q() == 2; }

  friend class EchelonBasis;
};

/// Incrementally maintained row space in reduced echelon form; used for
/// spinning, submodule tests and rank bookkeeping.
class EchelonBasis {
 public:
  EchelonBasis(const Field& F, int cols);

  /// Reduce v against the basis; if a nonzero remainder survives, add it
  /// (normalized) and return true.
  bool insert(Mat v);

  /// Reduce v; returns the remainder.
  Mat reduce(Mat v) const;
  bool contains(const Mat& v) const;

  int dim() const { return static_cast<int>(pivots_.size()); }
  int cols() const { return cols_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Mat basis_matrix() const;

  /// Coordinates of v in the basis, if v lies in the row space.
  std::optional<std::vector<unsigned>> coordinates(const Mat& v) const;

 private:
  const Field* F_;
  int cols_;
  std::vector<Mat> rows_;
  std::vector<int> pivots_;
};

}  // namespace grpx

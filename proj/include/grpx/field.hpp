#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grpx {

/// Arithmetic in GF(p^e), elements encoded as unsigned values in [0, p^e).
///
/// The encoding of an element with coefficient vector (c_0, ..., c_{e-1})
/// over GF(p) is sum c_i * p^i.  The defining polynomial is the
/// lexicographically least monic irreducible of degree e over GF(p), so the
/// encoding is canonical per (p, e) and serialized matrices are portable.
///
/// Fields are interned: Field::get(p, e) returns a reference that is valid
/// for the lifetime of the program, and two fields are equal iff their
/// addresses are equal.  All state is immutable after construction.
class Field {
 public:
  static const Field& get(unsigned p, unsigned e = 1);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }

  /// Monic defining polynomial, length e+1, constant coefficient first.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  unsigned add(unsigned a, unsigned b) const;
  unsigned sub(unsigned a, unsigned b) const;
  unsigned neg(unsigned a) const;
  unsigned mul(unsigned a, unsigned b) const;
  unsigned inv(unsigned a) const;
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
  unsigned pow(unsigned a, long long n) const;
  unsigned frobenius(unsigned a) const { return pow(a, p_); }

  /// A fixed generator of the multiplicative group.
  unsigned generator() const { return gen_; }
  unsigned element_order(unsigned a) const;

  /// A fixed primitive n-th root of unity; requires n | q-1.
  unsigned root_of_unity(unsigned n) const;

  unsigned coeff(unsigned a, unsigned i) const;
  unsigned from_coeffs(const std::vector<unsigned>& c) const;

  /// Image of an element of a subfield GF(p^f), f | e, under the canonical
  /// embedding (least root of the subfield's defining polynomial).
  unsigned embed_from(const Field& sub, unsigned a) const;

  std::string name() const;  // "p^e", e.g. "2^1", "3^2"

 private:
  Field(unsigned p, unsigned e);

  unsigned p_, e_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  unsigned gen_ = 0;

  // Table path (q <= 2^16): exp/log w.r.t. gen_, optional dense add table.
  bool tabled_ = false;
  std::vector<uint32_t> exp_, log_;
  std::vector<uint32_t> addtab_;  // only when q <= 256

  unsigned mul_generic(unsigned a, unsigned b) const;
  unsigned inv_generic(unsigned a) const;
};

bool is_prime(unsigned n);

}  // namespace grpx

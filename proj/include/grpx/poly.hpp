#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grpx/field.hpp"
#include "grpx/matrix.hpp"

namespace grpx {

/// Polynomials over a Field, as coefficient vectors (constant term first,
/// no trailing zeros).  Just enough machinery for the MeatAxe and for
/// defining-polynomial checks: arithmetic, gcd, irreducibility, full
/// factorization over small fields, and minimal polynomials of matrices.
using Poly = std::vector<unsigned>;

int pdeg(const Poly& a);  // -1 for the zero polynomial
void ptrim(Poly& a);
Poly padd(const Field& F, const Poly& a, const Poly& b);
Poly psub(const Field& F, const Poly& a, const Poly& b);
Poly pmul(const Field& F, const Poly& a, const Poly& b);
std::pair<Poly, Poly> pdivmod(const Field& F, const Poly& a, const Poly& b);
Poly pmod(const Field& F, const Poly& a, const Poly& b);
Poly pgcd(const Field& F, Poly a, Poly b);
Poly pmonic(const Field& F, const Poly& a);
Poly ppowmod(const Field& F, Poly a, unsigned long long n, const Poly& m);
unsigned peval(const Field& F, const Poly& a, unsigned x);

bool poly_irreducible(const Field& F, const Poly& f);

/// Irreducible factors with multiplicities, deterministic given the seed.
std::vector<std::pair<Poly, int>> poly_factor(const Field& F, const Poly& f,
                                              uint64_t seed = 1);

Mat poly_eval_matrix(const Poly& f, const Mat& m);

/// Minimal polynomial of the vector v under m (monic generator of the
/// relation ideal of v, vm, vm^2, ...).
Poly min_poly_of_vector(const Mat& m, const Mat& v);

/// Minimal polynomial of a square matrix.
Poly min_poly(const Mat& m);

}  // namespace grpx

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "grpx/forms.hpp"
#include "grpx/meataxe.hpp"
#include "grpx/module.hpp"

using namespace grpx;

namespace {

GElem perm_el(int n, const std::vector<std::vector<int>>& cycles) {
  return GElem::of_perm(Perm::from_cycles(n, cycles));
}

Group a5() { return Group({perm_el(5, {{0, 1, 2, 3, 4}}), perm_el(5, {{0, 1, 2}})}, "A5"); }

// z -> z+1 and z -> -1/z on the projective line over GF(17); 17 = infinity.
Group psl2_17() {
  int n = 18, inf = 17;
  std::vector<uint32_t> a(n), b(n);
  for (int z = 0; z < 17; ++z) a[z] = (z + 1) % 17;
  a[inf] = inf;
  b[0] = inf;
  b[inf] = 0;
  for (int z = 1; z < 17; ++z) {
    int zi = 1;
    while (zi * z % 17 != 1) ++zi;
    b[z] = (17 - zi) % 17;
  }
  return Group({GElem::of_perm(Perm::from_images(a)), GElem::of_perm(Perm::from_images(b))},
               "PSL2_17");
}

Mat mat2(const Field& F, unsigned a, unsigned b, unsigned c, unsigned d) {
  Mat m(F, 2, 2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 0, c);
  m.set(1, 1, d);
  return m;
}

// SL2(4) with its natural 2-dimensional module over GF(4).
GModule sl24_natural() {
  const Field& F4 = Field::get(2, 2);
  GModule m;
  m.name = "SL24_nat";
  m.mats = {mat2(F4, 1, 1, 0, 1), mat2(F4, 0, 1, 1, 2)};
  m.group = Group({GElem::of_matrix(m.mats[0]), GElem::of_matrix(m.mats[1])}, "SL2_4");
  return m;
}

// View a module over GF(4) as one over GF(2) of twice the dimension, via
// the regular representation of GF(4) on the basis {1, w}.
GModule blow_up_gf4(const GModule& m) {
  const Field& F4 = Field::get(2, 2);
  const Field& F2 = Field::get(2);
  int d = m.dim();
  GModule r;
  r.name = m.name + "_blown";
  r.group = m.group;
  for (const auto& A : m.mats) {
    Mat B(F2, 2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int row = 0; row < 2; ++row) {
          unsigned prod = F4.mul(row == 0 ? 1 : 2, A.get(i, j));  // basis elt * entry
          B.set(2 * i + row, 2 * j + 0, F4.coeff(prod, 0));
          B.set(2 * i + row, 2 * j + 1, F4.coeff(prod, 1));
        }
    r.mats.push_back(B);
  }
  return r;
}

GModule direct_sum(const GModule& a, const GModule& b) {
  const Field& F = a.field();
  GModule r;
  r.name = a.name + "+" + b.name;
  r.group = a.group;
  int da = a.dim(), db = b.dim();
  for (size_t g = 0; g < a.ngens(); ++g) {
    Mat M(F, da + db, da + db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) M.set(i, j, a.mats[g].get(i, j));
    for (int i = 0; i < db; ++i)
      for (int j = 0; j < db; ++j) M.set(da + i, da + j, b.mats[g].get(i, j));
    r.mats.push_back(M);
  }
  return r;
}

// All dimensions of proper nonzero cyclic submodules, by spinning every
// nonzero vector.  Exhaustive, so usable as an oracle for small modules.
std::set<int> cyclic_submodule_dims(const GModule& m) {
  const Field& F = m.field();
  int d = m.dim();
  std::set<int> dims;
  std::vector<unsigned> digits(d, 0);
  while (true) {
    int k = d - 1;
    while (k >= 0 && digits[k] == F.q() - 1) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
    Mat v(F, 1, d);
    for (int i = 0; i < d; ++i) v.set(0, i, digits[i]);
    int s = spin(m, v).rows();
    if (s < d) dims.insert(s);
  }
  return dims;
}

bool is_invariant(const GModule& m, const Mat& basis) {
  EchelonBasis eb(m.field(), m.dim());
  for (int i = 0; i < basis.rows(); ++i) eb.insert(basis.row(i));
  for (const auto& A : m.mats)
    for (int i = 0; i < basis.rows(); ++i)
      if (!eb.contains(basis.row(i) * A)) return false;
  return true;
}

std::multiset<int> chop_dims(const std::vector<std::pair<GModule, int>>& factors) {
  std::multiset<int> out;
  for (const auto& [f, mult] : factors)
    for (int i = 0; i < mult; ++i) out.insert(f.dim());
  return out;
}

Mat random_invertible(const Field& F, int d, std::mt19937_64& rng) {
  while (true) {
    Mat m(F, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.set(i, j, static_cast<unsigned>(rng() % F.q()));
    if (m.inverse()) return m;
  }
}

GModule conjugated(const GModule& m, const Mat& c) {
  GModule r;
  r.name = m.name + "_conj";
  r.group = m.group;
  Mat ci = *c.inverse();
  for (const auto& A : m.mats) r.mats.push_back(ci * A * c);
  return r;
}

}  // namespace

TEST_CASE("spin inside the A5 permutation module over GF(2)") {
  GModule m = permutation_module(a5(), Field::get(2));
  CHECK(m.dim() == 5);
  const Field& F = Field::get(2);

  CHECK(spin(m, Mat::row_vector(F, {1, 1, 1, 1, 1})).rows() == 1);
  CHECK(spin(m, Mat::row_vector(F, {1, 1, 0, 0, 0})).rows() == 4);
  CHECK(spin(m, Mat::row_vector(F, {1, 0, 0, 0, 0})).rows() == 5);

  // .mod round trip
  GModule back = GModule::from_mod(m.to_mod());
  CHECK(back.dim() == 5);
  CHECK(back.ngens() == 2);
  for (size_t i = 0; i < back.ngens(); ++i) CHECK(back.mats[i] == m.mats[i]);
}

TEST_CASE("is_irreducible on the A5 permutation module, with exhaustive oracle") {
  GModule m = permutation_module(a5(), Field::get(2));
  Mat w;
  CHECK(!is_irreducible(m, &w));
  CHECK(w.rows() > 0);
  CHECK(w.rows() < 5);
  CHECK(is_invariant(m, w));

  // oracle: the proper cyclic submodules have dimensions exactly {1, 4}
  CHECK(cyclic_submodule_dims(m) == std::set<int>{1, 4});
  CHECK((w.rows() == 1 || w.rows() == 4));

  // the two composition factors are irreducible, confirmed exhaustively
  auto factors = chop(m);
  CHECK(chop_dims(factors) == std::multiset<int>{1, 4});
  for (const auto& [f, mult] : factors) {
    CHECK(is_irreducible(f));
    CHECK(cyclic_submodule_dims(f).empty());
  }
}

TEST_CASE("chop of direct sums counts multiplicities") {
  GModule m = permutation_module(a5(), Field::get(2));
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;
  REQUIRE(m4.dim() == 4);

  CHECK(chop_dims(chop(direct_sum(m4, m4))) == std::multiset<int>{4, 4});
  auto both = chop(direct_sum(m, m4));
  CHECK(chop_dims(both) == std::multiset<int>{1, 4, 4});
  for (const auto& [f, mult] : both)
    if (f.dim() == 4) CHECK(mult == 2);
}

TEST_CASE("module_iso finds conjugations and rejects non-isomorphic modules") {
  GModule m = permutation_module(a5(), Field::get(2));
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;
  REQUIRE(m4.dim() == 4);

  std::mt19937_64 rng(7);
  Mat c = random_invertible(Field::get(2), 4, rng);
  GModule m4c = conjugated(m4, c);
  auto iso = module_iso(m4, m4c);
  REQUIRE(iso.has_value());
  CHECK(iso->inverse().has_value());
  for (size_t g = 0; g < m4.ngens(); ++g) CHECK(*iso * m4.mats[g] == m4c.mats[g] * *iso);

  // trivial vs sign module of C2 over GF(3)
  const Field& F3 = Field::get(3);
  Group c2({perm_el(2, {{0, 1}})}, "C2");
  GModule triv{"t", {Mat::identity(F3, 1)}, c2};
  GModule sign{"s", {Mat::identity(F3, 1).scaled(2)}, c2};
  CHECK(module_iso(triv, triv).has_value());
  CHECK(!module_iso(triv, sign).has_value());

  // dimension mismatch
  CHECK(!module_iso(triv, m4).has_value());
}

TEST_CASE("tensor, exterior square and dual constructions") {
  GModule m = permutation_module(a5(), Field::get(2));
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;

  GModule t = tensor(m4, m4);
  CHECK(t.dim() == 16);
  int total = 0;
  for (const auto& [f, mult] : chop(t)) total += f.dim() * mult;
  CHECK(total == 16);

  GModule e = exterior_square(m4);
  CHECK(e.dim() == 6);
  // generators of the exterior square are invertible and multiplicative
  for (const auto& A : e.mats) CHECK(A.inverse().has_value());

  GModule dd = dual(dual(m4));
  for (size_t g = 0; g < m4.ngens(); ++g) CHECK(dd.mats[g] == m4.mats[g]);
  // m4 carries an invariant symplectic form, so it is self-dual
  CHECK(module_iso(m4, dual(m4)).has_value());
}

TEST_CASE("PSL2(17): the 18-point permutation module over GF(2) yields an irreducible 8") {
  GModule m = permutation_module(psl2_17(), Field::get(2));
  auto factors = chop(m);
  int total = 0, eights = 0;
  for (const auto& [f, mult] : factors) {
    total += f.dim() * mult;
    CHECK((f.dim() == 1 || f.dim() == 8));
    if (f.dim() == 8) {
      eights += mult;
      CHECK(is_irreducible(f));
    }
  }
  CHECK(total == 18);
  CHECK(eights == 2);
}

TEST_CASE("all_irreducibles_up_to_dim for A5 over GF(2), with class-count oracle") {
  Group g = a5();
  auto irr = all_irreducibles_up_to_dim(g, Field::get(2), 4);
  std::multiset<int> dims, endos;
  for (const auto& m : irr) {
    CHECK(is_irreducible(m));
    dims.insert(m.dim());
    endos.insert(endo_field_degree(m));
  }
  CHECK(dims == std::multiset<int>{1, 4, 4});
  CHECK(endos == std::multiset<int>{1, 1, 2});
  // pairwise non-isomorphic
  for (size_t i = 0; i < irr.size(); ++i)
    for (size_t j = i + 1; j < irr.size(); ++j) CHECK(!module_iso(irr[i], irr[j]).has_value());

  // Completeness oracle: over the algebraic closure the number of
  // irreducibles equals the number of odd-order conjugacy classes; an
  // irreducible over GF(2) with endomorphism field of degree e splits
  // into e of them, so the endo degrees must sum to that class count.
  auto elems = g.elements();
  std::unordered_set<GElem, GElemHash> seen;
  int odd_classes = 0;
  for (const auto& x : elems) {
    if (seen.count(x)) continue;
    if (element_order(x) % 2 == 0) continue;
    ++odd_classes;
    for (const auto& y : elems) seen.insert(conjugate(x, y));
  }
  CHECK(odd_classes == 4);
  int endo_sum = 0;
  for (int e : endos) endo_sum += e;
  CHECK(endo_sum == odd_classes);
}

TEST_CASE("all_irreducibles_up_to_dim for PSL2(17) over GF(2): nontrivial dimension 8 only") {
  auto irr = all_irreducibles_up_to_dim(psl2_17(), Field::get(2), 8);
  std::set<int> nontrivial;
  for (const auto& m : irr)
    if (m.dim() > 1) nontrivial.insert(m.dim());
  CHECK(nontrivial == std::set<int>{8});
}

TEST_CASE("endo_field_degree distinguishes absolutely irreducible modules") {
  GModule m = permutation_module(a5(), Field::get(2));
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;
  CHECK(endo_field_degree(m4) == 1);

  GModule nat = sl24_natural();
  CHECK(nat.group.order() == 60);
  CHECK(endo_field_degree(nat) == 1);

  GModule blown = blow_up_gf4(nat);
  CHECK(blown.dim() == 4);
  CHECK(is_irreducible(blown));
  CHECK(endo_field_degree(blown) == 2);
}

TEST_CASE("write_over_subfield: direct path, descent path and obstruction") {
  const Field& F2 = Field::get(2);
  const Field& F4 = Field::get(2, 2);
  const Field& F16 = Field::get(2, 4);

  GModule m = permutation_module(a5(), F2);
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;
  auto same = write_over_subfield(m4, 1);
  REQUIRE(same.has_value());
  for (size_t g = 0; g < m4.ngens(); ++g) CHECK(same->mats[g] == m4.mats[g]);

  // The natural SL2(4) module is not expressible over GF(2): its Frobenius
  // twist is not isomorphic to it.
  GModule nat = sl24_natural();
  CHECK(!write_over_subfield(nat, 1).has_value());
  // oracle: no conjugate of the generator pair lies in GL(2, 2)
  std::vector<Mat> gl24;
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b)
      for (unsigned c = 0; c < 4; ++c)
        for (unsigned d = 0; d < 4; ++d) {
          Mat x = mat2(F4, a, b, c, d);
          if (x.inverse()) gl24.push_back(x);
        }
  CHECK(gl24.size() == 180);
  auto in_subfield = [&](const Mat& x) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (x.get(i, j) > 1) return false;
    return true;
  };
  for (const auto& c : gl24) {
    Mat ci = *c.inverse();
    bool all = true;
    for (const auto& A : nat.mats) all = all && in_subfield(ci * A * c);
    CHECK(!all);
  }

  // Descent: embed the natural module into GF(16), hide the subfield by a
  // random conjugation, and recover a GF(4) form isomorphic to the start.
  GModule big;
  big.name = "nat16";
  big.group = nat.group;
  for (const auto& A : nat.mats) {
    Mat B(F16, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) B.set(i, j, F16.embed_from(F4, A.get(i, j)));
    big.mats.push_back(B);
  }
  std::mt19937_64 rng(11);
  GModule hidden = conjugated(big, random_invertible(F16, 2, rng));
  auto down = write_over_subfield(hidden, 2);
  REQUIRE(down.has_value());
  CHECK(&down->field() == &F4);
  CHECK(module_iso(*down, nat).has_value());

  // but it cannot go all the way down to GF(2)
  CHECK(!write_over_subfield(hidden, 1).has_value());
}

TEST_CASE("invariant alternating form on the A5 4-dimensional module") {
  const Field& F = Field::get(2);
  GModule m = permutation_module(a5(), F);
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;

  auto B = invariant_alternating_form(m4);
  REQUIRE(B.has_value());
  CHECK(B->rank() == 4);
  for (int i = 0; i < 4; ++i) CHECK(B->get(i, i) == 0);
  CHECK(B->transpose() == *B);  // -B = B over GF(2)
  for (const auto& g : m4.mats) CHECK(g * *B * g.transpose() == *B);

  // oracle: enumerate all 64 zero-diagonal symmetric matrices; exactly one
  // nonzero one is invariant, and it is the returned form
  int invariant_count = 0;
  for (unsigned bits = 1; bits < 64; ++bits) {
    Mat cand(F, 4, 4);
    int t = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++t) {
        cand.set(i, j, (bits >> t) & 1);
        cand.set(j, i, (bits >> t) & 1);
      }
    bool inv = true;
    for (const auto& g : m4.mats) inv = inv && (g * cand * g.transpose() == cand);
    if (inv) {
      ++invariant_count;
      CHECK(cand == *B);
    }
  }
  CHECK(invariant_count == 1);

  // no alternating form on the trivial or the permutation module
  GModule triv{"t", {Mat::identity(F, 1), Mat::identity(F, 1)}, m.group};
  CHECK(!invariant_alternating_form(triv).has_value());
  CHECK(!invariant_alternating_form(m).has_value());  // odd dimension: degenerate
}

TEST_CASE("invariant quadratic form on the A5 4-dimensional module has minus type") {
  const Field& F = Field::get(2);
  GModule m = permutation_module(a5(), F);
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;

  auto Q = invariant_quadratic_form(m4);
  REQUIRE(Q.has_value());
  CHECK(Q->sign == -1);
  auto B = invariant_alternating_form(m4);
  CHECK(Q->polar() == *B);

  // invariance of values, checked on every vector
  for (unsigned bits = 0; bits < 16; ++bits) {
    Mat v(F, 1, 4);
    for (int i = 0; i < 4; ++i) v.set(0, i, (bits >> i) & 1);
    for (const auto& g : m4.mats) CHECK(Q->eval(v * g) == Q->eval(v));
  }

  // oracle: enumerate all 1024 upper-triangular forms; the returned one is
  // the lexicographically least invariant form with nondegenerate polar
  bool found_smaller = false;
  int invariant_nondeg = 0;
  for (unsigned bits = 0; bits < 1024; ++bits) {
    Mat cand(F, 4, 4);
    int t = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j, ++t) cand.set(i, j, (bits >> t) & 1);
    if ((cand + cand.transpose()).rank() != 4) continue;
    bool inv = true;
    for (unsigned vb = 0; vb < 16 && inv; ++vb) {
      Mat v(F, 1, 4);
      for (int i = 0; i < 4; ++i) v.set(0, i, (vb >> i) & 1);
      for (const auto& g : m4.mats)
        inv = inv && (v * g * cand * (v * g).transpose() == v * cand * v.transpose());
    }
    if (inv) {
      ++invariant_nondeg;
      std::vector<unsigned> a, b;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          a.push_back(cand.get(i, j));
          b.push_back(Q->upper.get(i, j));
        }
      if (a < b) found_smaller = true;
    }
  }
  CHECK(invariant_nondeg >= 1);
  CHECK(!found_smaller);
}

TEST_CASE("arf_sign on explicit forms") {
  const Field& F = Field::get(2);
  // hyperbolic x0 x1 + x2 x3
  Mat plus(F, 4, 4);
  plus.set(0, 1, 1);
  plus.set(2, 3, 1);
  CHECK(arf_sign(plus) == 1);
  // x0^2 + x0 x1 + x1^2 + x2 x3
  Mat minus = plus;
  minus.set(0, 0, 1);
  minus.set(1, 1, 1);
  CHECK(arf_sign(minus) == -1);
  // dimension 2
  Mat h2(F, 2, 2);
  h2.set(0, 1, 1);
  CHECK(arf_sign(h2) == 1);
  h2.set(0, 0, 1);
  h2.set(1, 1, 1);
  CHECK(arf_sign(h2) == -1);
  CHECK_THROWS(arf_sign(Mat(F, 2, 2)));  // zero form: degenerate

  // a module fixed by nothing but the identity gets the lex-least form
  GModule free2{"free", {Mat::identity(F, 2)}, Group()};
  auto Q = invariant_quadratic_form(free2);
  REQUIRE(Q.has_value());
  Mat xy(F, 2, 2);
  xy.set(0, 1, 1);
  CHECK(Q->upper == xy);
  CHECK(Q->sign == 1);
}

TEST_CASE("symplectic_standard_basis over GF(2) and GF(3)") {
  const Field& F2 = Field::get(2);
  GModule m = permutation_module(a5(), F2);
  GModule m4;
  for (const auto& [f, mult] : chop(m))
    if (f.dim() == 4) m4 = f;
  Mat B = *invariant_alternating_form(m4);
  Mat S = symplectic_standard_basis(B);
  Mat gram = S * B * S.transpose();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      unsigned want = 0;
      if (i / 2 == j / 2 && i != j) want = i < j ? 1 : F2.neg(1);
      CHECK(gram.get(i, j) == want);
    }

  const Field& F3 = Field::get(3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    // random nondegenerate alternating 4x4 over GF(3)
    Mat A(F3, 4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          unsigned v = static_cast<unsigned>(rng() % 3);
          A.set(i, j, v);
          A.set(j, i, F3.neg(v));
        }
    } while (A.rank() != 4);
    Mat T = symplectic_standard_basis(A);
    Mat G = T * A * T.transpose();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        unsigned want = 0;
        if (i / 2 == j / 2 && i != j) want = i < j ? 1 : F3.neg(1);
        CHECK(G.get(i, j) == want);
      }
  }

  CHECK_THROWS(symplectic_standard_basis(Mat(F3, 4, 4)));  // zero form
  CHECK_THROWS(symplectic_standard_basis(Mat(F3, 3, 3)));  // odd dimension
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpx/clifford.hpp"
#include "grpx/forms.hpp"
#include "grpx/meataxe.hpp"
#include "grpx/symtype.hpp"
#include "grpx/weil.hpp"

using namespace grpx;

namespace {

GElem perm_el(std::vector<uint32_t> imgs) { return GElem::of_perm(Perm::from_images(std::move(imgs))); }

Group a5() {
  return Group({perm_el({1, 2, 0, 3, 4}), perm_el({0, 1, 3, 4, 2})}, "A5");
}

// the 4-dimensional irreducible of A5 over GF(2), from the permutation module
GModule a5_m4() {
  GModule pm = permutation_module(a5(), Field::get(2));
  for (auto& [f, mult] : chop(pm))
    if (f.dim() == 4) return f;
  throw std::logic_error("no 4-dim factor");
}

Mat diag2(const Field& F, unsigned a, unsigned b) {
  Mat m(F, 2, 2);
  m.set(0, 0, a);
  m.set(1, 1, b);
  return m;
}

GModule natural_module(const Group& g, const std::string& name) {
  std::vector<Mat> mats;
  for (auto& e : g.gens()) mats.push_back(e.mat());
  return GModule{name, mats, g};
}

}  // namespace

TEST_CASE("restriction of a faithful irreducible to a scalar center is homogeneous") {
  auto Rm = construct_R(FormData::standard(2, SymKind::two_minus, 2), SymKind::two_minus);
  WeilRep wm = weil_rep(Rm, Field::get(3));
  Group Z = center(wm.module.group);
  REQUIRE(Z.order() == 2);
  auto dec = homogeneous_components(wm.module, Z);
  CHECK(dec.k() == 1);
  CHECK(dec.components[0].mult == 4);
  CHECK(dec.components[0].irr_dim == 1);
  CHECK(!imprimitivity_witness(dec).has_value());
  CHECK(!tensor_factorize(wm.module, Z, dec).has_value());  // degenerate side
}

TEST_CASE("monomial dihedral action splits into two swapped characters") {
  const Field& F5 = Field::get(5);
  Mat rot = diag2(F5, 2, 3);  // order 4
  Mat flip(F5, 2, 2);
  flip.set(0, 1, 1);
  flip.set(1, 0, 1);
  Group h({GElem::of_matrix(rot), GElem::of_matrix(flip)}, "D8m");
  REQUIRE(h.order() == 8);
  Group m({GElem::of_matrix(rot)}, "C4");
  GModule v = natural_module(h, "monomial2");

  auto dec = homogeneous_components(v, m);
  CHECK(dec.k() == 2);
  int total = 0;
  for (auto& c : dec.components) {
    CHECK(c.mult == 1);
    CHECK(c.irr_dim == 1);
    total += c.mult * c.irr_dim;
  }
  CHECK(total == 2);
  // the rotation fixes both components; the flip swaps them
  CHECK(dec.action[0].is_identity());
  CHECK(!dec.action[1].is_identity());

  auto blocks = imprimitivity_witness(dec);
  REQUIRE(blocks.has_value());
  CHECK(blocks->size() == 2);
  // defining property: each generator permutes the block row spaces
  for (auto& g : h.gens()) {
    for (auto& b : *blocks) {
      Mat moved = b * g.mat();
      moved.rref();
      bool hit = false;
      for (auto& b2 : *blocks) {
        Mat c2 = b2;
        c2.rref();
        hit |= moved == c2;
      }
      CHECK(hit);
    }
  }

  // and M itself is reducible here, so the Feit-Tits hypotheses fail at (iii)
  auto ft = feit_tits_reduce(h, m);
  CHECK(!ft.ok);
  CHECK(ft.failed_clause == "(iii)");
}

TEST_CASE("tensor product over a direct factor: homogeneous with full factorization") {
  GModule m4 = a5_m4();
  const Field& F2 = Field::get(2);
  Mat id4 = Mat::identity(F2, 4);
  std::vector<GElem> hgens, mgens;
  for (auto& g : m4.mats) {
    hgens.push_back(GElem::of_matrix(g.kron(id4)));
    mgens.push_back(hgens.back());
  }
  for (auto& g : m4.mats) hgens.push_back(GElem::of_matrix(id4.kron(g)));
  Group h(hgens, "A5xA5");
  Group m(mgens, "A5x1");
  REQUIRE(h.order() == 3600);
  GModule v = natural_module(h, "4x4");

  auto dec = homogeneous_components(v, m);
  CHECK(dec.k() == 1);
  CHECK(dec.components[0].mult == 4);
  CHECK(dec.components[0].irr_dim == 4);

  // cross-check via chop of the restriction
  GModule rest{"rest", dec.mmats, m};
  auto factors = chop(rest);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].first.dim() == 4);
  CHECK(factors[0].second == 4);

  auto tf = tensor_factorize(v, m, dec);
  REQUIRE(tf.has_value());
  CHECK(tf->m1 == 4);
  CHECK(tf->m2 == 4);
  // reconstruction property, re-checked independently
  auto Ti = tf->change_of_basis.inverse();
  REQUIRE(Ti.has_value());
  for (size_t i = 0; i < v.mats.size(); ++i)
    CHECK(tf->exact_left[i].kron(tf->exact_right[i]) ==
          tf->change_of_basis * v.mats[i] * *Ti);

  // the right factor carries the first A5 (M acts there), the left the second
  std::vector<Mat> wantr{m4.mats[0], m4.mats[1], id4, id4};
  std::vector<Mat> wantl{id4, id4, m4.mats[0], m4.mats[1]};
  CHECK(module_iso(GModule{"right", tf->exact_right, h}, GModule{"wr", wantr, h}).has_value());
  CHECK(module_iso(GModule{"left", tf->exact_left, h}, GModule{"wl", wantl, h}).has_value());
}

TEST_CASE("symplectic reduction of the central-product normalizer") {
  auto fc = FormData::standard(2, SymKind::central4, 2);
  auto Rc = construct_R(fc, SymKind::central4);
  WeilRep wc = weil_rep(Rc, Field::get(5));
  auto f42 = FormData::standard(2, SymKind::two_plus, 2);
  f42.quad.reset();
  Group sp4 = isometry_group_generators(f42);
  auto ne = normalizer_extension(wc, sp4);
  REQUIRE(ne.big.order() == 11520);

  auto ft = feit_tits_reduce(ne.big, ne.kernel);
  REQUIRE(ft.ok);
  CHECK(ft.r == 2);
  CHECK(ft.n == 2);
  CHECK(ft.sp_image.order() == 720);
  CHECK(ft.kernel_order == 16);
  CHECK(ft.faithful_mod_n);
  CHECK(ft.irreducible);
  // dimension law m = r^n
  CHECK(ne.big.gens()[0].mat().rows() == 4);
  // the images preserve the commutator form
  CHECK(ft.form.rank() == 4);
  for (auto& g : ft.images) {
    const Mat& x = g.mat();
    CHECK(x * ft.form * x.transpose() == ft.form);
  }
}

TEST_CASE("hypothesis failures are reported by clause") {
  // non-nilpotent N
  Group sp23 = isometry_group_generators(FormData::standard(3, SymKind::odd_extraspecial, 1));
  REQUIRE(sp23.order() == 24);
  CHECK(!is_nilpotent(sp23));
  auto f1 = feit_tits_reduce(sp23, sp23);
  CHECK(!f1.ok);
  CHECK(f1.failed_clause == "(i)");

  // odd characteristic without order-4 scalars
  const Field& F3 = Field::get(3);
  Mat i3(F3, 2, 2), j3(F3, 2, 2);
  i3.set(0, 1, 1);
  i3.set(1, 0, 2);
  j3.set(0, 0, 1);
  j3.set(0, 1, 1);
  j3.set(1, 0, 1);
  j3.set(1, 1, 2);
  Group q8({GElem::of_matrix(i3), GElem::of_matrix(j3)}, "Q8");
  REQUIRE(q8.order() == 8);
  CHECK(is_nilpotent(q8));
  auto f2 = feit_tits_reduce(q8, q8);
  CHECK(!f2.ok);
  CHECK(f2.failed_clause == "(ii)");

  // non-normal N rejected up front
  const Field& F5 = Field::get(5);
  Mat rot = diag2(F5, 2, 3);
  Mat flip(F5, 2, 2);
  flip.set(0, 1, 1);
  flip.set(1, 0, 1);
  Group d8({GElem::of_matrix(rot), GElem::of_matrix(flip)}, "D8m");
  auto f3 = feit_tits_reduce(d8, Group({GElem::of_matrix(flip)}, "C2"));
  CHECK(!f3.ok);
  CHECK(f3.failed_clause == "normality");
}

TEST_CASE("nilpotency test on knowns") {
  CHECK(is_nilpotent(Group({perm_el({1, 2, 3, 0})}, "C4")));
  CHECK(is_nilpotent(Group({perm_el({1, 2, 3, 0}), perm_el({2, 1, 0, 3})}, "D8")));
  CHECK(!is_nilpotent(a5()));
  auto R = construct_R(FormData::standard(3, SymKind::odd_extraspecial, 1),
                       SymKind::odd_extraspecial);
  CHECK(is_nilpotent(R.to_perm_group()));
  CHECK(!is_nilpotent(Group({perm_el({1, 2, 0, 3, 4, 5}), perm_el({0, 1, 2, 4, 5, 3}),
                             perm_el({1, 0, 2, 3, 4, 5})},
                            "S3ish")));
}

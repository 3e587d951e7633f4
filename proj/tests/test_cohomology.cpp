#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grpx/cohomology.hpp"
#include "grpx/coset_table.hpp"
#include "grpx/meataxe.hpp"

using namespace grpx;

namespace {

GElem perm_el(std::vector<uint32_t> imgs) {
  return GElem::of_perm(Perm::from_images(std::move(imgs)));
}

GModule trivial_module(const Group& g, const Field& F, int dim = 1) {
  std::vector<Mat> mats(g.gens().size(), Mat::identity(F, dim));
  return GModule{"triv", mats, g};
}

Group c2() { return Group({perm_el({1, 0})}, "C2"); }
Group v4() { return Group({perm_el({1, 0, 2, 3}), perm_el({0, 1, 3, 2})}, "V4"); }
Group s3() { return Group({perm_el({1, 2, 0}), perm_el({1, 0, 2})}, "S3"); }
Group a4() {
  return Group({perm_el({1, 0, 3, 2}), perm_el({1, 2, 0, 3})}, "A4");
}

// second cohomology of a cyclic group <a> acting by the matrix A of order n:
// dim ker(A - 1) - rank(1 + A + ... + A^{n-1})
int cyclic_h2_oracle(const Mat& A, int n) {
  const Field& F = A.field();
  int d = A.rows();
  Mat fix = A + Mat::identity(F, d).scaled(F.neg(1));
  Mat norm(F, d, d);
  Mat p = Mat::identity(F, d);
  for (int i = 0; i < n; ++i) {
    norm = norm + p;
    p = p * A;
  }
  return fix.nullspace().rows() - norm.rank();
}

// exhaustive check of the cocycle identity over all triples
bool full_cocycle_identity(const CocycleSpace& cs, const Mat& flat) {
  int n = static_cast<int>(cs.act.elems.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab = cs.act.index_of(cs.act.elems[a] * cs.act.elems[b]);
        int bc = cs.act.index_of(cs.act.elems[b] * cs.act.elems[c]);
        Mat lhs = cs.value(flat, a, b) * cs.act.mats[c] + cs.value(flat, ab, c);
        Mat rhs = cs.value(flat, b, c) + cs.value(flat, a, bc);
        if (lhs != rhs) return false;
      }
  return true;
}

std::multiset<uint64_t> order_profile(const Group& g) {
  std::multiset<uint64_t> out;
  for (const auto& e : g.elements()) out.insert(element_order(e));
  return out;
}

}  // namespace

TEST_CASE("element action closes and is verified") {
  Group s = s3();
  const Field& F3 = Field::get(3);
  // sign-like action: transposition acts by -1, 3-cycle trivially
  Mat one = Mat::identity(F3, 1);
  GModule m{"sgn", {one, one.scaled(2)}, s};
  ElementAction a = element_action(s, m);
  CHECK(a.elems.size() == 6);
  CHECK(a.elems[0].is_identity());
  for (int t = 0; t < 20; ++t) {
    GElem x = a.elems[t % 6], y = a.elems[(t * 5 + 1) % 6];
    CHECK(a.at(x * y) == a.at(x) * a.at(y));
  }
  // inconsistent assignment is rejected: order-2 generator, order-3 matrix
  Group c = c2();
  Mat bad = Mat::identity(F3, 1).scaled(2);  // wait: 2 has order 2 mod 3
  bad.set(0, 0, 2);
  CHECK_NOTHROW(element_action(c, GModule{"ok", {bad}, c}));
  const Field& F7 = Field::get(7);
  Mat bad7(F7, 1, 1);
  bad7.set(0, 0, 2);  // order 3 in GF(7)*
  CHECK_THROWS_AS(element_action(c, GModule{"bad", {bad7}, c}), std::logic_error);
}

TEST_CASE("second cohomology of small cyclic and elementary abelian groups") {
  const Field& F2 = Field::get(2);
  // trivial one-dimensional module
  CHECK(h2_sylow(c2(), trivial_module(c2(), F2)).dim_h2() == 1);
  CHECK(h2_sylow(Group({perm_el({1, 2, 3, 0})}, "C4"),
                 trivial_module(Group({perm_el({1, 2, 3, 0})}, "C4"), F2))
            .dim_h2() == 1);
  CHECK(h2_sylow(v4(), trivial_module(v4(), F2)).dim_h2() == 3);
  CHECK(h2_sylow(c2(), trivial_module(c2(), F2, 2)).dim_h2() == 2);
  // trivial group
  Group t({perm_el({0})}, "1");
  CHECK(h2_sylow(t, trivial_module(t, F2)).dim_h2() == 0);
  // C3 over GF(3) and over GF(2)
  Group c3({perm_el({1, 2, 0})}, "C3");
  CHECK(h2_sylow(c3, trivial_module(c3, Field::get(3))).dim_h2() == 1);
  CHECK(h2_sylow(c3, trivial_module(c3, F2)).dim_h2() == 0);
}

TEST_CASE("cyclic groups with nontrivial modules match the norm-map formula") {
  // C2 swapping two GF(2) coordinates
  Group c = c2();
  const Field& F2 = Field::get(2);
  Mat sw(F2, 2, 2);
  sw.set(0, 1, 1);
  sw.set(1, 0, 1);
  GModule m{"swap", {sw}, c};
  CHECK(cyclic_h2_oracle(sw, 2) == 0);
  CHECK(h2_sylow(c, m).dim_h2() == 0);

  // C4 acting on GF(3)^2 by an order-4 matrix
  Group c4({perm_el({1, 2, 3, 0})}, "C4");
  const Field& F3 = Field::get(3);
  Mat r(F3, 2, 2);
  r.set(0, 1, 1);
  r.set(1, 0, 2);  // [[0,1],[-1,0]], order 4
  GModule m4{"rot", {r}, c4};
  CHECK(h2_sylow(c4, m4).dim_h2() == cyclic_h2_oracle(r, 4));

  // C2 acting by -1 on GF(3)
  Mat neg = Mat::identity(F3, 1).scaled(2);
  GModule mn{"neg", {neg}, c};
  CHECK(h2_sylow(c, mn).dim_h2() == cyclic_h2_oracle(neg, 2));
}

TEST_CASE("cocycle bases satisfy the identity on all triples") {
  const Field& F2 = Field::get(2);
  Group d8({perm_el({1, 2, 3, 0}), perm_el({3, 2, 1, 0})}, "D8");
  Mat sw(F2, 2, 2);
  sw.set(0, 1, 1);
  sw.set(1, 0, 1);
  GModule m{"m", {Mat::identity(F2, 2), sw}, d8};
  CocycleSpace cs = h2_sylow(d8, m);
  REQUIRE(cs.z2.rows() > 0);
  for (int i = 0; i < cs.z2.rows(); ++i) CHECK(full_cocycle_identity(cs, cs.z2.row(i)));
  for (int i = 0; i < cs.b2.rows(); ++i) CHECK(full_cocycle_identity(cs, cs.b2.row(i)));
  for (const auto& h : cs.h2_basis()) CHECK(full_cocycle_identity(cs, h));
  CHECK(cs.dim_h2() == static_cast<int>(cs.h2_basis().size()));
}

TEST_CASE("stable subspaces against classical values") {
  const Field& F2 = Field::get(2);
  const Field& F3 = Field::get(3);

  // G = S: nothing is cut
  Group v = v4();
  CocycleSpace cv = h2_sylow(v, trivial_module(v, F2));
  CHECK(stable_subspace(v, v, trivial_module(v, F2), cv) == 3);

  // abelian overgroup: fusion is trivial
  Group c6({perm_el({1, 2, 3, 4, 5, 0})}, "C6");
  Group c3sub({perm_el({2, 3, 4, 5, 0, 1})}, "C3");
  GModule m6 = trivial_module(c6, F3);
  GModule m3{"triv", {Mat::identity(F3, 1)}, c3sub};
  CHECK(stable_subspace(c6, c3sub, m6, h2_sylow(c3sub, m3)) == 1);

  // H^2(S3, GF(3)) = 0 although H^2(C3, GF(3)) = GF(3)
  Group s = s3();
  Group c3s({perm_el({1, 2, 0})}, "C3");
  GModule ms3 = trivial_module(s, F3);
  GModule mc3{"triv", {Mat::identity(F3, 1)}, c3s};
  CHECK(stable_subspace(s, c3s, ms3, h2_sylow(c3s, mc3)) == 0);

  // H^2(S3, GF(2)) = GF(2): the dicyclic group of order 12 is a nonsplit
  // extension, and the Sylow 2-subgroup intersects its conjugates trivially
  Group c2s({perm_el({1, 0, 2})}, "C2");
  GModule ms2 = trivial_module(s, F2);
  GModule mc2{"triv", {Mat::identity(F2, 1)}, c2s};
  CHECK(stable_subspace(s, c2s, ms2, h2_sylow(c2s, mc2)) == 1);

  // H^2(A4, GF(2)) = GF(2) (the binary tetrahedral double cover), cut down
  // from the three-dimensional H^2(V4, GF(2)) by the 3-cycle fusion
  Group a = a4();
  Group va({perm_el({1, 0, 3, 2}), perm_el({2, 3, 0, 1})}, "V4");
  GModule ma = trivial_module(a, F2);
  GModule mv = trivial_module(va, F2);
  CHECK(stable_subspace(a, va, ma, h2_sylow(va, mv)) == 1);
}

TEST_CASE("extension groups and presentations from cocycles agree") {
  const Field& F2 = Field::get(2);
  Group v = v4();
  GModule m = trivial_module(v, F2);
  CocycleSpace cs = h2_sylow(v, m);

  Presentation pres;
  pres.name = "V4";
  pres.gens = {"a", "b"};
  pres.relators = {Word::of_gen(0).pow(2), Word::of_gen(1).pow(2),
                   (Word::of_gen(0) * Word::of_gen(1)).pow(2)};
  REQUIRE(verify_presentation(pres, v));

  // central extensions of V4 by C2: C2^3, C4xC2, D8, Q8 all occur
  std::set<std::multiset<uint64_t>> seen;
  Mat zero(F2, 1, cs.z2.cols());
  std::vector<Mat> reps{zero};
  for (int i = 0; i < cs.z2.rows(); ++i) reps.push_back(cs.z2.row(i));
  reps.push_back(cs.z2.row(0) + cs.z2.row(cs.z2.rows() - 1));
  for (const auto& flat : reps) {
    Group e1 = extension_group(cs, flat);
    CHECK(e1.order() == 8);
    ExtensionSpec spec = extension_spec_from_cocycle(cs, flat, pres);
    Group e2 = spec.instantiate();
    CHECK(e2.order() == 8);
    auto prof = order_profile(e1);
    CHECK(prof == order_profile(e2));  // same isomorphism type witness
    seen.insert(prof);
  }
  CHECK(seen.size() >= 3);

  // zero cocycle gives the split extension C2^3
  Group esplit = extension_group(cs, zero);
  for (const auto& e : esplit.elements()) CHECK(element_order(e) <= 2);
}

TEST_CASE("split checks: direct products split, Frattini extensions do not") {
  const Field& F2 = Field::get(2);
  (void)F2;

  // C4 over its subgroup of order 2: nonsplit
  Group c4({perm_el({1, 2, 3, 0})}, "C4");
  Group z({perm_el({2, 3, 0, 1})}, "Z");
  Presentation pc2;
  pc2.gens = {"a"};
  pc2.relators = {Word::of_gen(0).pow(2)};
  CHECK(!split_check(c4, z, pc2, {c4.gens()[0]}).has_value());

  // C2 x C2 over a factor: splits
  Group v = v4();
  Group k({perm_el({1, 0, 2, 3})}, "K");
  auto comp = split_check(v, k, pc2, {v.gens()[0] * v.gens()[1]});
  REQUIRE(comp.has_value());
  CHECK(Group(*comp).order() == 2);

  // A4 over V4 with quotient C3: splits with complement C3
  Group a = a4();
  Group kv({perm_el({1, 0, 3, 2}), perm_el({2, 3, 0, 1})}, "V4");
  Presentation pc3;
  pc3.gens = {"c"};
  pc3.relators = {Word::of_gen(0).pow(3)};
  GElem lift = a.gens()[1] * a.gens()[0];  // some element mapping to a 3-cycle
  if (element_order(lift) != 3) lift = a.gens()[1];
  auto comp3 = split_check(a, kv, pc3, {lift});
  REQUIRE(comp3.has_value());
  CHECK(Group(*comp3).order() == 3);

  // SL2(3) over its quaternion subgroup is rejected (kernel not elementary
  // abelian); over the center with quotient A4 it is nonsplit
  const Field& F3 = Field::get(3);
  Mat s(F3, 2, 2), t(F3, 2, 2);
  s.set(0, 1, 1);
  s.set(1, 0, 2);
  t.set(0, 0, 1);
  t.set(0, 1, 1);
  t.set(1, 1, 1);
  Group sl23({GElem::of_matrix(s), GElem::of_matrix(t)}, "SL2(3)");
  REQUIRE(sl23.order() == 24);
  Group zc = center(sl23);
  REQUIRE(zc.order() == 2);
  Presentation pa4;
  pa4.gens = {"a", "b"};
  pa4.relators = {Word::of_gen(0).pow(2), Word::of_gen(1).pow(3),
                  (Word::of_gen(0) * Word::of_gen(1)).pow(3)};
  REQUIRE(verify_presentation(pa4, a4()));
  // find lifts matching the presentation generator orders modulo the center
  GElem la = sl23.identity();
  GElem lb = la;
  bool found = false;
  for (const auto& x : sl23.elements()) {
    if (found) break;
    for (const auto& y : sl23.elements()) {
      std::vector<GElem> lifts{x, y};
      bool ok = true;
      for (const auto& r : pa4.relators)
        if (!zc.contains(r.evaluate(lifts))) { ok = false; break; }
      Group q({x, y});
      if (ok && q.order() == 24) {
        la = x;
        lb = y;
        found = true;
        break;
      }
    }
  }
  REQUIRE(found);
  CHECK(!split_check(sl23, zc, pa4, {la, lb}).has_value());
}

TEST_CASE("minimality of extensions by the supplement search") {
  // C4 -> C2 is a Frattini (minimal) extension
  Group c4({perm_el({1, 2, 3, 0})}, "C4");
  Group z({perm_el({2, 3, 0, 1})}, "Z");
  auto r1 = minimal_extension_check(c4, z);
  CHECK(r1.minimal);
  CHECK(r1.certificate.find("exhaustive") == 0);

  // direct product is never minimal
  Group v = v4();
  Group k({perm_el({1, 0, 2, 3})}, "K");
  CHECK(!minimal_extension_check(v, k).minimal);

  // A4 over V4 splits, hence not minimal
  Group a = a4();
  Group kv({perm_el({1, 0, 3, 2}), perm_el({2, 3, 0, 1})}, "V4");
  CHECK(!minimal_extension_check(a, kv).minimal);

  // SL2(3) over its center is nonsplit and minimal
  const Field& F3 = Field::get(3);
  Mat s(F3, 2, 2), t(F3, 2, 2);
  s.set(0, 1, 1);
  s.set(1, 0, 2);
  t.set(0, 0, 1);
  t.set(0, 1, 1);
  t.set(1, 1, 1);
  Group sl23({GElem::of_matrix(s), GElem::of_matrix(t)}, "SL2(3)");
  REQUIRE(sl23.order() == 24);
  auto r2 = minimal_extension_check(sl23, center(sl23));
  CHECK(r2.minimal);
  CHECK(r2.certificate.find("exhaustive") == 0);
}

TEST_CASE("module restriction to a subgroup") {
  Group s = s3();
  const Field& F2 = Field::get(2);
  GModule pm = permutation_module(s, F2);
  Group c3s({perm_el({1, 2, 0})}, "C3");
  GModule r = restrict_module(s, pm, c3s);
  CHECK(r.dim() == 3);
  CHECK(r.ngens() == 1);
  // restriction of the permutation module is the permutation module
  GModule pm3 = permutation_module(c3s, F2);
  CHECK(r.mats[0] == pm3.mats[0]);
}

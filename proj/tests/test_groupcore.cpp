#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <unordered_set>

#include "grpx/group.hpp"

using namespace grpx;

namespace {

// Test-side oracle: full closure by breadth-first products, no stabilizer
// chains involved.
std::unordered_set<GElem, GElemHash> naive_closure(const std::vector<GElem>& gens,
                                                   size_t cap = 200000) {
  std::unordered_set<GElem, GElemHash> seen;
  std::vector<GElem> queue;
  GElem id = gens[0].identity();
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    GElem x = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      GElem y = x * g;
      if (seen.insert(y).second) {
        REQUIRE(seen.size() <= cap);
        queue.push_back(y);
      }
    }
  }
  return seen;
}

GElem perm_el(int n, const std::vector<std::vector<int>>& cycles) {
  return GElem::of_perm(Perm::from_cycles(n, cycles));
}

Group symmetric(int n) {
  std::vector<std::vector<int>> cyc;
  for (int i = 0; i + 1 < n; ++i) cyc.push_back({i, i + 1});
  std::vector<GElem> gens;
  for (auto& c : cyc) gens.push_back(perm_el(n, {c}));
  return Group(gens, "S" + std::to_string(n));
}

Group sl25() {
  const Field& F5 = Field::get(5);
  Mat s(F5, 2, 2), t(F5, 2, 2);
  s.set(0, 1, 4);
  s.set(1, 0, 1);
  t.set(0, 0, 1);
  t.set(0, 1, 1);
  t.set(1, 1, 1);
  return Group({GElem::of_matrix(s), GElem::of_matrix(t)}, "SL2_5");
}

// Symplectic transvections x -> x + f(x,v) v over GF(2), form with blocks
// [[0,I],[I,0]]; all 15 of them certainly generate the full group.
Group sp42() {
  const Field& F2 = Field::get(2);
  Mat J(F2, 4, 4);
  J.set(0, 2, 1);
  J.set(1, 3, 1);
  J.set(2, 0, 1);
  J.set(3, 1, 1);
  std::vector<GElem> gens;
  for (unsigned bits = 1; bits < 16; ++bits) {
    std::vector<unsigned> v(4);
    for (int i = 0; i < 4; ++i) v[i] = bits >> i & 1;
    Mat T = Mat::identity(F2, 4);
    for (int i = 0; i < 4; ++i) {
      unsigned fi = 0;
      for (int k = 0; k < 4; ++k) fi = F2.add(fi, F2.mul(J.get(i, k), v[k]));
      for (int j = 0; j < 4; ++j) T.set(i, j, F2.add(T.get(i, j), F2.mul(fi, v[j])));
    }
    gens.push_back(GElem::of_matrix(T));
  }
  return Group(gens, "Sp4_2");
}

// Degree-18 permutation action of PSL2(17) on the projective line:
// a: z -> z+1, b: z -> -1/z, with 17 standing for the point at infinity.
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

bool perm_is_even(const Perm& p) {
  int n = p.degree(), trans = 0;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do {
      seen[j] = true;
      j = p[j];
      ++len;
    } while (j != i);
    trans += len - 1;
  }
  return trans % 2 == 0;
}

}  // namespace

TEST_CASE("order: S3, symmetric family, Sp4(2) against closure oracle") {
  Group s3({perm_el(3, {{0, 1}}), perm_el(3, {{0, 1, 2}})});
  CHECK(s3.order() == 6);
  CHECK(symmetric(4).order() == 24);
  CHECK(symmetric(5).order() == 120);
  CHECK(symmetric(6).order() == 720);

  Group sp = sp42();
  CHECK(sp.order() == 720);
  CHECK(naive_closure(sp.gens()).size() == 720);

  CHECK(sl25().order() == 120);
  CHECK(naive_closure(sl25().gens()).size() == 120);
}

TEST_CASE("order of projective matrix groups: PSL2(5) as SL2(5) mod scalars") {
  Group sl = sl25();
  std::vector<GElem> pg;
  for (const auto& g : sl.gens()) pg.push_back(GElem::of_proj(g.mat()));
  Group psl(pg, "PSL2_5");
  CHECK(psl.order() == 60);
  CHECK(naive_closure(pg).size() == 60);
}

TEST_CASE("order: PSL2(17) on the 18-point projective line") {
  CHECK(psl2_17().order() == 2448);  // 17 * 16 * 18 / 2
}

TEST_CASE("membership basics") {
  Group a5({perm_el(5, {{0, 1, 2}}), perm_el(5, {{0, 1, 2, 3, 4}})}, "A5");
  CHECK(a5.order() == 60);
  CHECK(a5.contains(a5.identity()));
  for (const auto& g : a5.gens()) CHECK(a5.contains(g));
  CHECK(!a5.contains(perm_el(5, {{0, 1}})));  // odd permutation
  // every element of A5 is even
  for (const auto& x : a5.elements()) CHECK(perm_is_even(x.perm()));
  CHECK_THROWS(a5.contains(perm_el(4, {{0, 1}})));
}

TEST_CASE("normal closure: trivial seed, 3-cycle in S5 gives A5, invariance") {
  Group s5 = symmetric(5);
  CHECK(normal_closure(s5, {s5.identity()}).order() == 1);

  Group nc = normal_closure(s5, {perm_el(5, {{0, 1, 2}})});
  CHECK(nc.order() == 60);
  // oracle: brute closure of all conjugates of the 3-cycle
  std::vector<GElem> conjs;
  GElem c3 = perm_el(5, {{0, 1, 2}});
  for (const auto& x : s5.elements()) conjs.push_back(conjugate(c3, x));
  CHECK(naive_closure(conjs).size() == 60);

  // conjugation invariance on random pairs
  for (uint64_t i = 0; i < 20; ++i) {
    GElem n = nc.random_element(i), g = s5.random_element(i + 100);
    CHECK(nc.contains(conjugate(n, g)));
  }
}

TEST_CASE("derived subgroup: S4' = A4, A5 perfect") {
  Group s4 = symmetric(4);
  Group d = derived_subgroup(s4);
  CHECK(d.order() == 12);
  for (const auto& x : d.elements()) CHECK(perm_is_even(x.perm()));

  Group a5({perm_el(5, {{0, 1, 2}}), perm_el(5, {{0, 1, 2, 3, 4}})});
  CHECK(derived_subgroup(a5).order() == 60);
}

TEST_CASE("center: S3 trivial, SL2(5) of order 2") {
  Group s3({perm_el(3, {{0, 1}}), perm_el(3, {{0, 1, 2}})});
  CHECK(center(s3).order() == 1);
  Group z = center(sl25());
  CHECK(z.order() == 2);
  // the nontrivial central element is -I
  for (const auto& x : z.elements())
    if (!x.is_identity()) {
      const Field& F5 = Field::get(5);
      CHECK(x.mat() == Mat::identity(F5, 2).scaled(4));
    }
}

TEST_CASE("solubility and the soluble radical") {
  CHECK(is_soluble(symmetric(4)));
  Group a5({perm_el(5, {{0, 1, 2}}), perm_el(5, {{0, 1, 2, 3, 4}})});
  CHECK(!is_soluble(a5));
  CHECK(!is_soluble(sl25()));

  // S4 is soluble, so it is its own radical
  CHECK(soluble_radical(symmetric(4)).order() == 24);

  // radical of SL2(5): oracle enumerates every cyclic normal closure in the
  // 120-element group and keeps the soluble ones
  Group sl = sl25();
  auto all = sl.elements();
  auto subgroup_of = [&](std::vector<GElem> gens) {
    if (gens.empty()) gens.push_back(sl.identity());
    return naive_closure(gens);
  };
  auto set_soluble = [&](const std::unordered_set<GElem, GElemHash>& S) {
    std::unordered_set<GElem, GElemHash> cur = S;
    while (cur.size() > 1) {
      std::vector<GElem> comms;
      for (const auto& a : cur)
        for (const auto& b : cur) comms.push_back(commutator(a, b));
      auto next = subgroup_of(comms);
      if (next.size() == cur.size()) return false;
      cur = std::move(next);
    }
    return true;
  };
  std::vector<GElem> radical_seeds;
  for (const auto& x : all) {
    if (x.is_identity()) continue;
    std::vector<GElem> conjs;
    for (const auto& g : all) conjs.push_back(conjugate(x, g));
    if (set_soluble(subgroup_of(conjs))) radical_seeds.push_back(x);
  }
  auto oracle_rad = subgroup_of(radical_seeds);
  CHECK(oracle_rad.size() == 2);

  Group rad = soluble_radical(sl);
  CHECK(rad.order() == 2);
  for (const auto& g : rad.gens()) CHECK(oracle_rad.count(g) == 1);
  // the radical is normal and its derived series reaches 1
  for (uint64_t i = 0; i < 10; ++i)
    for (const auto& g : rad.gens()) CHECK(rad.contains(conjugate(g, sl.random_element(i))));
  CHECK(is_soluble(rad));
}

TEST_CASE("sylow subgroups: S4 at 2, PSL2(17) at 2") {
  Group syl = sylow_subgroup(symmetric(4), 2);
  CHECK(syl.order() == 8);
  for (const auto& g : syl.gens()) CHECK(symmetric(4).contains(g));

  Group p17 = psl2_17();
  Group syl17 = sylow_subgroup(p17, 2);
  CHECK(syl17.order() == 16);  // 2448 = 16 * 153
  for (const auto& g : syl17.gens()) CHECK(p17.contains(g));

  Group syl3 = sylow_subgroup(symmetric(4), 3);
  CHECK(syl3.order() == 3);
  CHECK_THROWS(sylow_subgroup(symmetric(4), 5));
}

TEST_CASE("homomorphisms: apply, image, kernel, order identity") {
  Group s4 = symmetric(4);
  Homomorphism ident(s4, s4, s4.gens());
  CHECK(ident.kernel().order() == 1);
  CHECK(ident.image_order() == 24);

  // SL2(5) -> PSL2(5), matrices mod scalars; kernel = {+-I}
  Group sl = sl25();
  std::vector<GElem> imgs;
  for (const auto& g : sl.gens()) imgs.push_back(GElem::of_proj(g.mat()));
  Group psl(imgs, "PSL2_5");
  Homomorphism pi(sl, psl, imgs);
  CHECK(pi.image_order() == 60);
  Group ker = pi.kernel();
  CHECK(ker.order() == 2);
  CHECK(sl.order() == ker.order() * pi.image_order());

  // apply() is multiplicative and matches the defining projection
  for (uint64_t i = 0; i < 25; ++i) {
    GElem x = sl.random_element(i), y = sl.random_element(i + 1000);
    CHECK(pi.apply(x) == GElem::of_proj(x.mat()));
    CHECK(pi.apply(x * y) == pi.apply(x) * pi.apply(y));
  }
  CHECK_THROWS(pi.apply(GElem::of_matrix(Mat::identity(Field::get(5), 2).scaled(2))));
}

TEST_CASE("random_element: reproducible, members, covers the classes of S4") {
  Group s4 = symmetric(4);
  CHECK(s4.random_element(7) == s4.random_element(7));
  for (uint64_t i = 0; i < 30; ++i) CHECK(s4.contains(s4.random_element(i)));

  // cycle types of S4: exhaustive class list has 5 entries
  std::set<std::vector<int>> hit, all_types;
  auto cycle_type = [](const Perm& p) {
    std::vector<int> t;
    std::vector<bool> seen(p.degree(), false);
    for (int i = 0; i < p.degree(); ++i) {
      if (seen[i]) continue;
      int len = 0, j = i;
      do {
        seen[j] = true;
        j = p[j];
        ++len;
      } while (j != i);
      t.push_back(len);
    }
    std::sort(t.begin(), t.end());
    return t;
  };
  for (const auto& x : s4.elements()) all_types.insert(cycle_type(x.perm()));
  CHECK(all_types.size() == 5);
  for (uint64_t i = 0; i < 200; ++i) hit.insert(cycle_type(s4.random_element(i).perm()));
  CHECK(hit.size() * 10 >= all_types.size() * 9);
}

TEST_CASE("projective normalization is a congruence over GF(9)") {
  const Field& F9 = Field::get(3, 2);
  std::mt19937_64 rng(99);
  auto rand_inv = [&] {
    while (true) {
      Mat m(F9, 3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.set(i, j, static_cast<unsigned>(rng() % 9));
      if (m.det() != 0) return m;
    }
  };
  for (int t = 0; t < 50; ++t) {
    Mat a = rand_inv(), b = rand_inv();
    unsigned la = 1 + static_cast<unsigned>(rng() % 8), lb = 1 + static_cast<unsigned>(rng() % 8);
    GElem x = GElem::of_proj(a), xs = GElem::of_proj(a.scaled(la));
    GElem y = GElem::of_proj(b), ys = GElem::of_proj(b.scaled(lb));
    CHECK(x == xs);
    CHECK(x * y == xs * ys);
  }
}

TEST_CASE("direct product elements form groups with componentwise structure") {
  Group s3({perm_el(3, {{0, 1}}), perm_el(3, {{0, 1, 2}})});
  // diagonal copy of S3 in S3 x S3
  std::vector<GElem> diag;
  for (const auto& g : s3.gens()) diag.push_back(GElem::direct({g, g}));
  CHECK(Group(diag).order() == 6);
  // full product
  std::vector<GElem> prod = diag;
  prod.push_back(GElem::direct({s3.gens()[0], s3.identity()}));
  CHECK(Group(prod).order() == 36);
}

TEST_CASE("grp text round-trip") {
  Group s4 = symmetric(4);
  Group back = Group::parse_grp(s4.to_grp());
  CHECK(back.order() == 24);
  CHECK(back.name() == "S4");

  Group sl = sl25();
  Group back2 = Group::parse_grp(sl.to_grp());
  CHECK(back2.order() == 120);
  for (const auto& g : back2.gens()) CHECK(sl.contains(g));

  std::vector<GElem> pg;
  for (const auto& g : sl.gens()) pg.push_back(GElem::of_proj(g.mat()));
  Group psl(pg, "PSL2_5");
  CHECK(Group::parse_grp(psl.to_grp()).order() == 60);
}

TEST_CASE("element orders and perm utilities") {
  CHECK(element_order(perm_el(5, {{0, 1, 2, 3, 4}})) == 5);
  CHECK(element_order(perm_el(6, {{0, 1}, {2, 3, 4}})) == 6);
  Perm p = Perm::parse_cycles(6, "(0 1)(2 3 4)");
  CHECK(p.order() == 6);
  CHECK(Perm::parse_cycles(6, p.to_cycle_string()) == p);
  CHECK(Perm(5).to_cycle_string() == "()");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "grpx/coset_table.hpp"
#include "grpx/group.hpp"
#include "grpx/presentation.hpp"

using namespace grpx;

namespace {

const char* kS3 =
    "group S3\n"
    "gens a b\n"
    "rel a^2\n"
    "rel b^3\n"
    "rel (a b)^2\n"
    "order 6\n";

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

const char* kPsl217 =
    "group PSL2_17\n"
    "gens a b\n"
    "rel a^17\n"
    "rel b^2\n"
    "rel (a b)^3\n"
    "rel (a^2 b a^9 b)^3\n"
    "order 2448\n";

GElem perm_el(int n, const std::vector<std::vector<int>>& cycles) {
  return GElem::of_perm(Perm::from_cycles(n, cycles));
}

// Two complete coset tables give conjugate subgroups iff some renumbering
// of one, rooted at any coset, equals the other.
bool tables_conjugate(const CosetTable& A, const CosetTable& B) {
  if (A.index != B.index) return false;
  int n = A.index, ng = static_cast<int>(A.gen_action.size());
  for (int r = 0; r < n; ++r) {
    std::vector<int> num(n, -1), old_of{r};
    num[r] = 0;
    int next = 1;
    bool same = true;
    for (int m = 0; m < n && same; ++m) {
      int old = old_of[m];
      for (int g = 0; g < ng && same; ++g) {
        int t = static_cast<int>(A.gen_action[g][old]);
        if (num[t] < 0) {
          num[t] = next++;
          old_of.push_back(t);
        }
        if (static_cast<uint32_t>(num[t]) != B.gen_action[g][m]) same = false;
      }
    }
    if (same) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parse_presentation: S3 text, errors, round-trip") {
  Presentation p = parse_presentation(kS3);
  CHECK(p.name == "S3");
  CHECK(p.gens == std::vector<std::string>{"a", "b"});
  CHECK(p.relators.size() == 3);
  CHECK(p.expected_order == 6);

  CHECK_THROWS_AS(parse_presentation("gens a\nrel a c\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a a\nrel a^2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rel a\ngens a\n"), ParseError);

  // print-parse round trip preserves everything
  Presentation q = parse_presentation(p.to_pres());
  CHECK(q.name == p.name);
  CHECK(q.gens == p.gens);
  CHECK(q.relators.size() == p.relators.size());
  for (size_t i = 0; i < q.relators.size(); ++i) CHECK(q.relators[i] == p.relators[i]);
  CHECK(q.expected_order == p.expected_order);
}

TEST_CASE("word grammar: powers, inverse suffix, parentheses, reduction") {
  Presentation p = parse_presentation("gens x y\nrel x\n");
  CHECK(parse_word(p, "x x-") == Word());
  CHECK(parse_word(p, "x^3") == Word::of_gen(0) * Word::of_gen(0) * Word::of_gen(0));
  CHECK(parse_word(p, "x^-2") == Word::of_gen(0, -1) * Word::of_gen(0, -1));
  CHECK(parse_word(p, "(x y)^2") == parse_word(p, "x y x y"));
  CHECK(parse_word(p, "(x y)-") == parse_word(p, "y- x-"));
  CHECK_THROWS_AS(parse_word(p, "x ("), ParseError);
}

TEST_CASE("todd_coxeter: S3 over trivial and cyclic subgroups") {
  Presentation p = parse_presentation(kS3);
  CosetTable t = todd_coxeter(p);
  CHECK(t.index == 6);
  CHECK(t.coset_group().order() == 6);

  CosetTable t2 = todd_coxeter(p, {parse_word(p, "b")});
  CHECK(t2.index == 2);

  CosetTable t3 = todd_coxeter(p, {parse_word(p, "a")});
  CHECK(t3.index == 3);

  // relators act trivially on all cosets, subgroup gens fix coset 0
  for (const CosetTable* ct : {&t, &t2, &t3}) {
    std::vector<GElem> imgs;
    for (size_t g = 0; g < ct->gen_action.size(); ++g)
      imgs.push_back(GElem::of_perm(ct->gen_perm(static_cast<int>(g))));
    for (const auto& r : p.relators) CHECK(r.evaluate(imgs).is_identity());
    for (const auto& s : ct->subgens) CHECK(s.evaluate(imgs).perm()[0] == 0);
  }

  CHECK_THROWS(todd_coxeter(parse_presentation("gens a b\nrel a^2\n"), {}, 500));
}

TEST_CASE("todd_coxeter: PSL2(17) presentation closes at 2448 cosets") {
  Presentation p = parse_presentation(kPsl217);
  CosetTable t = todd_coxeter(p);
  CHECK(t.index == 2448);
  // independent oracle: the permutation realization on 18 points
  CHECK(psl2_17().order() == 2448);
  CHECK(verify_presentation(p, psl2_17()));
}

TEST_CASE("verify_presentation: positive and negative cases") {
  Group s3({perm_el(3, {{0, 1}}), perm_el(3, {{0, 1, 2}})});
  CHECK(verify_presentation(parse_presentation(kS3), s3));

  // relator set of A4 against S4 generators: (ab)^3 fails
  Presentation a4 = parse_presentation("gens a b\nrel a^2\nrel b^3\nrel (a b)^3\n");
  Group s4({perm_el(4, {{0, 1}}), perm_el(4, {{1, 2, 3}})});
  CHECK(s4.order() == 24);
  CHECK(!verify_presentation(a4, s4));
  CHECK(todd_coxeter(a4).index == 12);

  // wrong generator count
  CHECK(!verify_presentation(a4, Group({perm_el(3, {{0, 1, 2}})})));
}

TEST_CASE("index times subgroup order equals group order") {
  Presentation p = parse_presentation(kS3);
  Group s3({perm_el(3, {{0, 1}}), perm_el(3, {{0, 1, 2}})});
  for (const char* sub : {"a", "b", "a b"}) {
    CosetTable t = todd_coxeter(p, {parse_word(p, sub)});
    Group h({parse_word(p, sub).evaluate(s3.gens())});
    CHECK(t.index * h.order() == 6);
  }
}

TEST_CASE("low_index_subgroups: S3 and S4") {
  Presentation p = parse_presentation(kS3);
  auto subs = low_index_subgroups(p, 3);
  std::multiset<int> idx;
  for (const auto& t : subs) idx.insert(t.index);
  // subgroups of S3 up to conjugacy: S3 (1), A3 (2), <a> (3)
  CHECK(idx == std::multiset<int>{1, 2, 3});

  Presentation p4 = parse_presentation("gens a b\nrel a^2\nrel b^3\nrel (a b)^4\n");
  CHECK(todd_coxeter(p4).index == 24);
  auto subs4 = low_index_subgroups(p4, 4);
  std::multiset<int> idx4;
  for (const auto& t : subs4) idx4.insert(t.index);
  // S4: itself, A4 (2), D8 (3), S3 (4), C2xC2xC2? no - up to conjugacy the
  // subgroups of index <= 4 are S4, A4, D8, S3
  CHECK(idx4 == std::multiset<int>{1, 2, 3, 4});

  // duplicate-free under conjugacy
  for (size_t i = 0; i < subs4.size(); ++i)
    for (size_t j = i + 1; j < subs4.size(); ++j)
      CHECK(!tables_conjugate(subs4[i], subs4[j]));

  // each table: relators act trivially, transitive action
  for (const auto& t : subs4) {
    std::vector<GElem> imgs;
    for (size_t g = 0; g < t.gen_action.size(); ++g)
      imgs.push_back(GElem::of_perm(t.gen_perm(static_cast<int>(g))));
    for (const auto& r : p4.relators) CHECK(r.evaluate(imgs).is_identity());
    if (t.index > 1) CHECK(t.coset_group().order() > 1);
  }
}

TEST_CASE("low_index_subgroups: PSL2(17) has no proper subgroup of index < 18") {
  Presentation p = parse_presentation(kPsl217);
  auto small = low_index_subgroups(p, 17);
  REQUIRE(small.size() == 1);
  CHECK(small[0].index == 1);

  auto at18 = low_index_subgroups(p, 18);
  bool has18 = false;
  for (const auto& t : at18) has18 = has18 || t.index == 18;
  CHECK(has18);
  for (const auto& t : at18) CHECK((t.index == 1 || t.index == 18));
}

TEST_CASE("evaluate_word basics") {
  Group s3({perm_el(3, {{0, 1}}), perm_el(3, {{0, 1, 2}})});
  CHECK(Word().evaluate(s3.gens()).is_identity());
  CHECK((Word::of_gen(0) * Word::of_gen(0, -1)).evaluate(s3.gens()).is_identity());
  Presentation p = parse_presentation(kS3);
  for (const auto& r : p.relators) CHECK(r.evaluate(s3.gens()).is_identity());
  CHECK_THROWS(Word::of_gen(5).evaluate(s3.gens()));
}

TEST_CASE("fox_coefficients: base cases and perturbation oracle") {
  const Field& F5 = Field::get(5);
  std::mt19937_64 rng(31);
  auto rand_inv = [&](int d) {
    while (true) {
      Mat m(F5, d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.set(i, j, static_cast<unsigned>(rng() % 5));
      if (m.det() != 0) return m;
    }
  };
  int d = 3;
  Mat A = rand_inv(d), B = rand_inv(d);

  auto cs = fox_coefficients(Word::of_gen(0), {A, B});
  CHECK(cs[0] == Mat::identity(F5, d));
  CHECK(cs[1].is_zero());

  auto cs2 = fox_coefficients(Word::of_gen(0) * Word::of_gen(0), {A, B});
  CHECK(cs2[0] == Mat::identity(F5, d) + A);

  // oracle: evaluate the word in the semidirect product M x <A,B> with
  // perturbed lifts (delta_x, X) and compare the module part
  auto semidirect_eval = [&](const Word& w, const std::vector<Mat>& acts,
                             const std::vector<Mat>& deltas) {
    Mat m(F5, 1, d);
    Mat g = Mat::identity(F5, d);
    for (const auto& l : w.lits()) {
      Mat xm = acts[l.gen], xd = deltas[l.gen];
      if (l.exp < 0) {
        xm = *acts[l.gen].inverse();
        xd = (deltas[l.gen] * xm).scaled(F5.neg(1));
      }
      m = m * xm + xd;
      g = g * xm;
    }
    return m;
  };
  for (int trial = 0; trial < 40; ++trial) {
    Word w;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i)
      w.append(static_cast<int>(rng() % 2), rng() % 2 ? 1 : -1);
    if (w.empty()) continue;
    std::vector<Mat> deltas;
    for (int g = 0; g < 2; ++g) {
      Mat dm(F5, 1, d);
      for (int j = 0; j < d; ++j) dm.set(0, j, static_cast<unsigned>(rng() % 5));
      deltas.push_back(dm);
    }
    auto coeffs = fox_coefficients(w, {A, B});
    Mat predicted = deltas[0] * coeffs[0] + deltas[1] * coeffs[1];
    CHECK(semidirect_eval(w, {A, B}, deltas) == predicted);
  }
}

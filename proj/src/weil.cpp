#include "grpx/weil.hpp"

#include <random>
#include <stdexcept>

#include "grpx/meataxe.hpp"

namespace grpx {
namespace {

Mat mat2(const Field& k, unsigned a, unsigned b, unsigned c, unsigned d) {
  Mat m(k, 2, 2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 0, c);
  m.set(1, 1, d);
  return m;
}

// Matrices of an anticommuting pair (U, V) on a 2-dimensional plane with
// U^2 = (-1)^{qu} I and V^2 = (-1)^{qv} I, per the pair of square values.
std::pair<Mat, Mat> plane_2(const Field& k, unsigned qu, unsigned qv) {
  unsigned m1 = k.neg(1);
  if (qu == 0 && qv == 0) return {mat2(k, 0, 1, 1, 0), mat2(k, 1, 0, 0, m1)};
  if (qu == 0 && qv == 1) return {mat2(k, 1, 0, 0, m1), mat2(k, 0, 1, m1, 0)};
  if (qu == 1 && qv == 0) return {mat2(k, 0, 1, m1, 0), mat2(k, 1, 0, 0, m1)};
  // qu = qv = 1: V = [[x, y], [y, -x]] with x^2 + y^2 = -1
  for (unsigned x = 0; x < k.q(); ++x)
    for (unsigned y = 0; y < k.q(); ++y)
      if (k.add(k.mul(x, x), k.mul(y, y)) == m1)
        return {mat2(k, 0, 1, m1, 0), mat2(k, x, y, y, k.neg(x))};
  throw std::logic_error("plane_2: no solution of x^2 + y^2 = -1");
}

// Cyclic-shift / diagonal pair on an r-dimensional plane (odd r):
// V^{-1} U V = omega U, so [U, V] = omega I.
std::pair<Mat, Mat> plane_odd(const Field& k, unsigned r, unsigned omega) {
  Mat u(k, r, r), v(k, r, r);
  unsigned w = 1;
  for (unsigned j = 0; j < r; ++j) {
    u.set(j, (j + 1) % r, 1);
    v.set(j, j, w);
    w = k.mul(w, omega);
  }
  return {u, v};
}

Mat kron_chain(const std::vector<Mat>& factors) {
  Mat acc = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) acc = acc.kron(factors[i]);
  return acc;
}

}  // namespace

Mat WeilRep::tau(const SymElem& e) const {
  auto inv = R.sympb.inverse();
  if (!inv) throw std::logic_error("tau: singular symplectic basis");
  Mat c = e.v * *inv;
  SymElem acc = R.identity();
  Mat m = Mat::identity(*k, gen_mats[1].rows());
  for (int j = 0; j < 2 * R.n; ++j) {
    unsigned cj = c.get(0, j);
    if (cj == 0) continue;
    acc = R.mul(acc, R.power(R.make(R.sympb.row(j), 0), cj));
    m = m * gen_mats[j + 1].pow(cj);
  }
  unsigned shift = (e.z + R.zorder - acc.z % R.zorder) % R.zorder;
  return m.scaled(k->pow(omega, shift));
}

WeilRep weil_rep(const SymplecticTypeGroup& R, const Field& k) {
  if ((k.q() - 1) % R.zorder != 0)
    throw std::invalid_argument("weil_rep: field lacks the required roots of unity");
  WeilRep w;
  w.R = R;
  w.k = &k;
  w.omega = k.root_of_unity(R.zorder);

  // One plane per symplectic pair; generator matrix = Kronecker factor.
  std::vector<std::pair<Mat, Mat>> planes;
  for (int i = 0; i < R.n; ++i) {
    if (R.r == 2)
      planes.push_back(plane_2(k, R.quad_w(R.sympb.row(2 * i)), R.quad_w(R.sympb.row(2 * i + 1))));
    else
      planes.push_back(plane_odd(k, R.r, w.omega));
  }
  int dim = 1;
  for (int i = 0; i < R.n; ++i) dim *= R.r;
  w.gen_mats.push_back(Mat::identity(k, dim).scaled(w.omega));
  for (int i = 0; i < R.n; ++i)
    for (int half = 0; half < 2; ++half) {
      std::vector<Mat> factors;
      for (int j = 0; j < R.n; ++j) {
        if (j == i)
          factors.push_back(half == 0 ? planes[j].first : planes[j].second);
        else
          factors.push_back(Mat::identity(k, R.r));
      }
      w.gen_mats.push_back(kron_chain(factors));
    }

  // Certify: multiplicative, faithful, of dimension r^n, irreducible.
  uint64_t o = R.order();
  auto check_pair = [&](const SymElem& x, const SymElem& y) {
    if (w.tau(R.mul(x, y)) != w.tau(x) * w.tau(y))
      throw std::logic_error("weil_rep: representation law failed");
  };
  if (o <= 512) {
    for (uint64_t i = 0; i < o; ++i)
      for (uint64_t j = 0; j < o; ++j) check_pair(R.element_at(i), R.element_at(j));
  } else {
    std::mt19937_64 rng(kDefaultSeed);
    for (int t = 0; t < 5000; ++t)
      check_pair(R.element_at(rng() % o), R.element_at(rng() % o));
  }
  for (uint64_t i = 1; i < o; ++i)
    if (w.tau(R.element_at(i)).is_identity()) throw std::logic_error("weil_rep: not faithful");

  std::vector<GElem> ggens;
  for (const auto& m : w.gen_mats) ggens.push_back(GElem::of_matrix(m));
  Group img(ggens, sym_kind_name(R.kind) + "_tau");
  w.module = GModule{"weil_" + sym_kind_name(R.kind), w.gen_mats, img};
  if (!is_irreducible(w.module)) throw std::logic_error("weil_rep: not irreducible");
  return w;
}

Mat lift_isometry(const WeilRep& w, const Mat& x) {
  const SymplecticTypeGroup& R = w.R;
  const Field& F = Field::get(R.r);
  int m2 = 2 * R.n;
  int d = R.fd.dim();
  Mat M(F, 0, 0);
  Mat t(F, 1, m2);  // central-product linear correction (zero otherwise)

  if (x.rows() == d && (R.rad.rows() == 0 || x.rows() != m2)) {
    if (x * R.fd.f * x.transpose() != R.fd.f)
      throw std::invalid_argument("lift_isometry: matrix does not preserve f");
    if (R.fd.quad) {
      for (int i = 0; i < d; ++i) {
        Mat ei(F, 1, d);
        ei.set(0, i, 1);
        Mat im = ei * x;
        if ((im * *R.fd.quad * im.transpose()).get(0, 0) != (*R.fd.quad).get(i, i))
          throw std::invalid_argument("lift_isometry: matrix does not preserve Q");
      }
      // Q(u+v) - Q(u) - Q(v) = f(u,v) is preserved with f, so the diagonal
      // checks above suffice.
    }
    if (R.rad.rows() == 0) {
      M = x;
    } else {
      // express images of the model basis in (model basis, radical)
      Mat bfull = R.wbasis;
      bfull.append_row(R.rad.row(0));
      Mat bt = bfull.transpose();
      M = Mat(F, m2, m2);
      for (int i = 0; i < m2; ++i) {
        auto c = bt.solve(R.wbasis.row(i) * x);
        if (!c) throw std::logic_error("lift_isometry: basis solve failed");
        for (int j = 0; j < m2; ++j) M.set(i, j, c->get(0, j));
        t.set(0, i, c->get(0, m2));
      }
    }
  } else if (x.rows() == m2 && R.rad.rows() == 1) {
    if (x * R.fw * x.transpose() != R.fw)
      throw std::invalid_argument("lift_isometry: matrix does not preserve the symplectic form");
    M = x;
    for (int i = 0; i < m2; ++i) {
      Mat ei(F, 1, m2);
      ei.set(0, i, 1);
      t.set(0, i, F.add(R.quad_w(ei * M), R.quad_w(ei)));
    }
  } else {
    throw std::invalid_argument("lift_isometry: dimension mismatch");
  }

  // Cochain correction s with s(u+v) - s(u) - s(v) = c(uM, vM) - c(u, v).
  Mat D = M * R.beta * M.transpose() - R.beta;
  if (R.r == 2) D = D + t.transpose() * t;
  Mat C(F, m2, m2);
  if (R.r != 2) {
    C = D.scaled(F.inv(2));  // s(v) = (1/2) v D v^T
  } else {
    for (int i = 0; i < m2; ++i) {
      if (D.get(i, i) != 0) throw std::logic_error("lift_isometry: correction has odd diagonal");
      for (int j = i + 1; j < m2; ++j) C.set(i, j, D.get(i, j));
    }
  }
  auto s_of = [&](const Mat& v) -> unsigned {
    unsigned mu = (v * C * v.transpose()).get(0, 0);
    if (R.zorder == R.r) return mu % R.zorder;
    unsigned tv = (v * t.transpose()).get(0, 0);  // GF(2) value
    return (2 * mu + (R.zorder - tv)) % R.zorder;
  };
  auto alpha = [&](const SymElem& e) -> SymElem {
    return {e.v * M, (e.z + s_of(e.v)) % R.zorder};
  };

  uint64_t o = R.order();
  auto check_pair = [&](const SymElem& a, const SymElem& b) {
    if (alpha(R.mul(a, b)) != R.mul(alpha(a), alpha(b)))
      throw std::runtime_error("lift_isometry: no lift (automorphism law failed)");
  };
  if (o <= 512) {
    for (uint64_t i = 0; i < o; ++i)
      for (uint64_t j = 0; j < o; ++j) check_pair(R.element_at(i), R.element_at(j));
  } else {
    std::mt19937_64 rng(kDefaultSeed ^ 0x9e3779b9);
    for (int k = 0; k < 5000; ++k)
      check_pair(R.element_at(rng() % o), R.element_at(rng() % o));
  }

  // Schur intertwiner: P with P^{-1} tau(g) P = tau(alpha(g)).
  auto gens = R.gens();
  std::vector<Mat> amats;
  for (const auto& g : gens) amats.push_back(w.tau(alpha(g)));
  GModule twisted{"twisted", amats, w.module.group};
  auto P = module_iso(twisted, w.module);
  if (!P) throw std::logic_error("lift_isometry: intertwiner space empty");
  return P->proj_normalized();
}

NormalizerExtension normalizer_extension(const WeilRep& w, const Group& s) {
  std::vector<GElem> big_gens;
  std::vector<GElem> images;
  for (size_t i = 1; i < w.gen_mats.size(); ++i) {  // skip the scalar central gen
    big_gens.push_back(GElem::of_proj(w.gen_mats[i]));
    images.push_back(s.identity());
  }
  for (const auto& g : s.gens()) {
    big_gens.push_back(GElem::of_proj(lift_isometry(w, g.mat())));
    images.push_back(g);
  }
  Group big(big_gens, "N_" + sym_kind_name(w.R.kind));
  Homomorphism onto(big, s, images);
  Group ker = onto.kernel();
  uint64_t want = 1;
  for (int i = 0; i < 2 * w.R.n; ++i) want *= w.R.r;
  if (ker.order() != want)
    throw std::logic_error("normalizer_extension: kernel order mismatch");
  for (const auto& a : ker.gens()) {
    GElem p = a;
    for (unsigned k = 1; k < w.R.r; ++k) p = p * a;
    if (!p.is_identity()) throw std::logic_error("normalizer_extension: kernel not exponent r");
    for (const auto& b : ker.gens())
      if (!commutator(a, b).is_identity())
        throw std::logic_error("normalizer_extension: kernel not abelian");
  }
  return {big, onto, ker};
}

}  // namespace grpx

#include "grpx/meataxe.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "grpx/poly.hpp"

namespace grpx {
namespace {

Mat random_algebra_element(const GModule& m, std::mt19937_64& rng) {
  const Field& F = m.field();
  int d = m.dim();
  Mat X(F, d, d);
  int terms = 2 + static_cast<int>(rng() % 2);
  for (int t = 0; t < terms; ++t) {
    Mat W = Mat::identity(F, d);
    int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) W = W * m.mats[rng() % m.ngens()];
    unsigned c = 1 + static_cast<unsigned>(rng() % (F.q() - 1));
    X = X + W.scaled(c);
  }
  return X;
}

GModule transposed(const GModule& m) {
  GModule t;
  t.name = m.name + "_tr";
  t.group = m.group;
  for (const auto& a : m.mats) t.mats.push_back(a.transpose());
  return t;
}

bool spin_is_proper(const GModule& m, const Mat& v, Mat* out) {
  Mat s = spin(m, v);
  if (s.rows() == m.dim()) return false;
  if (out) *out = s;
  return true;
}

// Basis of { P : P a(g) = b(g) P for all g }, P encoded row-major.
std::vector<Mat> hom_space(const GModule& a, const GModule& b) {
  const Field& F = a.field();
  if (&F != &b.field() || a.dim() != b.dim() || a.ngens() != b.ngens()) return {};
  int d = a.dim();
  if (d > 64) throw std::runtime_error("hom_space: dimension cap exceeded");
  int n = d * d;
  Mat sys(F, static_cast<int>(a.ngens()) * n, n);
  int row = 0;
  for (size_t g = 0; g < a.ngens(); ++g) {
    const Mat& A = a.mats[g];
    const Mat& B = b.mats[g];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j, ++row) {
        // (P A - B P)_{ij} = sum_s p_{is} A_{sj} - sum_r B_{ir} p_{rj}
        for (int s = 0; s < d; ++s) {
          int c = i * d + s;
          sys.set(row, c, F.add(sys.get(row, c), A.get(s, j)));
        }
        for (int r = 0; r < d; ++r) {
          int c = r * d + j;
          sys.set(row, c, F.sub(sys.get(row, c), B.get(i, r)));
        }
      }
  }
  Mat null = sys.nullspace();
  std::vector<Mat> basis;
  for (int t = 0; t < null.rows(); ++t) {
    Mat P(F, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) P.set(i, j, null.get(t, i * d + j));
    basis.push_back(P);
  }
  return basis;
}

std::optional<Mat> invertible_combo(const std::vector<Mat>& basis, const Field& F,
                                    uint64_t seed) {
  for (const auto& P : basis)
    if (P.inverse()) return P;
  std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
  for (int t = 0; t < 500; ++t) {
    Mat P(F, basis[0].rows(), basis[0].cols());
    for (const auto& B : basis) P = P + B.scaled(static_cast<unsigned>(rng() % F.q()));
    if (P.inverse()) return P;
  }
  return std::nullopt;
}

}  // namespace

bool is_irreducible(const GModule& m, Mat* witness, uint64_t seed) {
  const Field& F = m.field();
  int d = m.dim();
  if (d <= 0 || m.mats.empty()) throw std::invalid_argument("is_irreducible: empty module");
  if (d == 1) return true;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  GModule mt = transposed(m);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Mat X = random_algebra_element(m, rng);
    if (X.is_zero()) continue;
    Poly f = min_poly(X);
    auto factors = poly_factor(F, f, seed + attempt + 1);
    const Poly* p = nullptr;
    for (const auto& [fac, mult] : factors)
      if (!p || pdeg(fac) < pdeg(*p)) p = &fac;
    Mat N = poly_eval_matrix(*p, X);
    Mat W = N.transpose().nullspace();  // rows v with v N = 0
    if (W.rows() == 0) continue;
    for (int i = 0; i < W.rows(); ++i)
      if (spin_is_proper(m, W.row(i), witness)) return false;
    if (W.rows() != pdeg(*p)) continue;  // inconclusive; retry with a new element
    // Norton: the null space on the other side must also spin to everything.
    Mat Wt = N.nullspace();  // rows w with w N^T = 0
    Mat st = spin(mt, Wt.row(0));
    if (st.rows() == d) return true;
    if (witness) {
      Mat ann = st.nullspace();  // annihilator: invariant for the original action
      *witness = spin(m, ann);
      if (witness->rows() == 0 || witness->rows() == d)
        throw std::runtime_error("is_irreducible: inconsistent dual witness");
    }
    return false;
  }
  // Exhaustive fallback: every one-dimensional spin, first nonzero entry 1.
  double total = 1;
  for (int i = 0; i < d; ++i) total *= F.q();
  if (total <= 65536.0) {
    unsigned q = F.q();
    std::vector<unsigned> digits(d, 0);
    while (true) {
      int pos = 0;
      while (pos < d && digits[pos] == 0) ++pos;
      if (pos < d && digits[pos] == 1) {
        Mat v(F, 1, d);
        for (int i = 0; i < d; ++i) v.set(0, i, digits[i]);
        if (spin_is_proper(m, v, witness)) return false;
      }
      int c = d - 1;
      while (c >= 0 && digits[c] == q - 1) digits[c--] = 0;
      if (c < 0) break;
      ++digits[c];
    }
    return true;
  }
  throw std::runtime_error("is_irreducible: randomized budget exhausted");
}

std::vector<std::pair<GModule, int>> chop(const GModule& m, uint64_t seed) {
  std::vector<std::pair<GModule, int>> out;
  std::function<void(const GModule&)> rec = [&](const GModule& x) {
    Mat w;
    if (is_irreducible(x, &w, seed)) {
      for (auto& [f, mult] : out)
        if (f.dim() == x.dim() && module_iso(f, x, seed)) {
          ++mult;
          return;
        }
      out.push_back({x, 1});
      return;
    }
    rec(submodule_action(x, w));
    rec(quotient_action(x, w));
  };
  rec(m);
  return out;
}

std::optional<Mat> module_iso(const GModule& a, const GModule& b, uint64_t seed) {
  auto basis = hom_space(a, b);
  if (basis.empty()) return std::nullopt;
  return invertible_combo(basis, a.field(), seed);
}

int endo_field_degree(const GModule& m) {
  return static_cast<int>(hom_space(m, m).size());
}

std::optional<GModule> write_over_subfield(const GModule& m, unsigned f, uint64_t seed) {
  const Field& E = m.field();
  unsigned p = E.p(), e = E.e();
  if (f == 0 || e % f != 0) return std::nullopt;
  const Field& K = Field::get(p, f);
  int d = m.dim();
  std::vector<int> back(E.q(), -1);
  for (unsigned x = 0; x < K.q(); ++x) back[f == e ? x : E.embed_from(K, x)] = static_cast<int>(x);

  auto descend = [&](const std::vector<Mat>& mats) -> std::optional<GModule> {
    GModule r;
    r.name = m.name + "_over_" + K.name();
    r.group = m.group;
    for (const auto& A : mats) {
      Mat B(K, d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          int v = back[A.get(i, j)];
          if (v < 0) return std::nullopt;
          B.set(i, j, static_cast<unsigned>(v));
        }
      r.mats.push_back(B);
    }
    return r;
  };
  if (auto direct = descend(m.mats)) return direct;  // entries already in the subfield
  if (f == e) return std::nullopt;                   // unreachable, defensive

  unsigned k = e / f;
  unsigned long long pf = 1;
  for (unsigned i = 0; i < f; ++i) pf *= p;
  auto sigma_mat = [&](Mat X, unsigned times) {
    for (unsigned t = 0; t < times; ++t)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          X.set(i, j, E.pow(X.get(i, j), static_cast<long long>(pf)));
    return X;
  };

  auto basis = hom_space(frobenius_twist(m, f), m);  // B with B A^sigma = A B
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(seed ^ 0xbf58476d1ce4e5b9ull);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Mat B(E, d, d);
    if (attempt < static_cast<int>(basis.size())) {
      B = basis[attempt];
    } else {
      for (const auto& Bi : basis) B = B + Bi.scaled(static_cast<unsigned>(rng() % E.q()));
    }
    if (!B.inverse()) continue;
    // Product B * sigma(B) * ... * sigma^{k-1}(B) must be a scalar mu.
    Mat Bk = B;
    for (unsigned i = 1; i < k; ++i) Bk = B * sigma_mat(Bk, 1);
    if (!Bk.is_scalar()) continue;
    unsigned mu = Bk.get(0, 0);
    // Scale B by lambda with Norm_{E/K}(lambda) = mu^{-1}.
    long long s = static_cast<long long>((E.q() - 1) / (K.q() - 1));
    unsigned lambda = 0;
    for (unsigned c = 1; c < E.q(); ++c)
      if (E.pow(c, s) == E.inv(mu)) {
        lambda = c;
        break;
      }
    if (lambda == 0) continue;
    B = B.scaled(lambda);
    std::vector<Mat> part(k);  // part[i] = B * sigma(B) * ... * sigma^{i-1}(B)
    part[0] = Mat::identity(E, d);
    for (unsigned i = 1; i < k; ++i) part[i] = B * sigma_mat(part[i - 1], 1);
    if (!(B * sigma_mat(part[k - 1], 1)).is_identity()) continue;
    // Additive Hilbert 90: average a random matrix to get C with B sigma(C) = C.
    for (int tries = 0; tries < 200; ++tries) {
      Mat X(E, d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) X.set(i, j, static_cast<unsigned>(rng() % E.q()));
      Mat C(E, d, d);
      for (unsigned i = 0; i < k; ++i) C = C + part[i] * sigma_mat(X, i);
      auto Cinv = C.inverse();
      if (!Cinv) continue;
      std::vector<Mat> conj;
      for (const auto& A : m.mats) conj.push_back(*Cinv * A * C);
      if (auto r = descend(conj)) return r;
      throw std::runtime_error("write_over_subfield: descent produced out-of-field entries");
    }
  }
  return std::nullopt;
}

std::vector<GModule> all_irreducibles_up_to_dim(const Group& g, const Field& F, int dmax,
                                                uint64_t seed) {
  GModule start;
  GElem id = g.identity();
  if (id.kind() == ElemKind::perm) {
    start = permutation_module(g, F);
  } else if (id.kind() == ElemKind::matrix && &id.mat().field() == &F) {
    start.name = g.name().empty() ? "natural" : g.name();
    start.group = g;
    for (const auto& gen : g.gens()) start.mats.push_back(gen.mat());
  } else {
    throw std::invalid_argument("all_irreducibles_up_to_dim: need a permutation group or a matrix group over F");
  }

  std::vector<GModule> known;
  {
    GModule triv;
    triv.name = "trivial";
    triv.group = g;
    for (size_t i = 0; i < g.gens().size(); ++i) triv.mats.push_back(Mat::identity(F, 1));
    known.push_back(triv);
  }
  auto add_factors = [&](const GModule& x) {
    bool added = false;
    for (const auto& [fac, mult] : chop(x, seed)) {
      if (fac.dim() > dmax) continue;
      bool dup = false;
      for (const auto& kmod : known)
        if (kmod.dim() == fac.dim() && module_iso(kmod, fac, seed)) {
          dup = true;
          break;
        }
      if (!dup) {
        known.push_back(fac);
        added = true;
      }
    }
    return added;
  };
  add_factors(start);

  size_t processed = 0;
  int stable = 0, rounds = 0;
  while (stable < 2) {
    if (++rounds > 50) throw std::runtime_error("all_irreducibles_up_to_dim: no stabilization");
    bool any = false;
    size_t upto = known.size();
    // close under tensor products of pairs of discovered irreducibles
    // (the start module's factors are all in `known`, so this covers
    // tensoring with the start module as well)
    for (size_t i = processed; i < upto; ++i) {
      if (static_cast<long long>(known[i].dim()) * start.dim() <= 4096)
        any = add_factors(tensor(known[i], start)) || any;
      for (size_t j = 0; j <= i; ++j)
        if (static_cast<long long>(known[i].dim()) * known[j].dim() <= 4096)
          any = add_factors(tensor(known[i], known[j])) || any;
    }
    processed = upto;
    stable = any ? 0 : stable + 1;
  }
  std::stable_sort(known.begin(), known.end(),
                   [](const GModule& a, const GModule& b) { return a.dim() < b.dim(); });
  return known;
}

}  // namespace grpx

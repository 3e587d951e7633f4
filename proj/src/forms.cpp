#include "grpx/forms.hpp"

#include <stdexcept>
#include <vector>

namespace grpx {
namespace {

// Lexicographic comparison of full matrices by row-major entries.
bool lex_less(const Mat& a, const Mat& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.get(i, j) != b.get(i, j)) return a.get(i, j) < b.get(i, j);
    }
  return false;
}

// Enumerate all F-combinations of the nullspace rows (each a flattened
// candidate form); call visit on every nonzero combination.
template <typename Visit>
void enumerate_combos(const Field& F, const Mat& basis, Visit visit) {
  int s = basis.rows();
  double total = 1;
  for (int i = 0; i < s; ++i) total *= F.q();
  if (total > 65536.0)
    throw std::runtime_error("invariant form: solution space too large to enumerate");
  std::vector<unsigned> c(s, 0);
  while (true) {
    int k = s - 1;
    while (k >= 0 && c[k] == F.q() - 1) c[k--] = 0;
    if (k < 0) break;
    ++c[k];
    Mat v(F, 1, basis.cols());
    for (int i = 0; i < s; ++i)
      if (c[i]) v = v + basis.row(i).scaled(c[i]);
    visit(v);
  }
}

}  // namespace

std::optional<Mat> invariant_alternating_form(const GModule& m) {
  const Field& F = m.field();
  int d = m.dim();
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) idx.push_back({i, j});
  int n = static_cast<int>(idx.size());
  if (n == 0) return std::nullopt;
  // Unknowns B_{kl} (k < l); B is determined by antisymmetry with zero
  // diagonal.  One equation per generator and pair i < j:
  // (g B g^T)_{ij} - B_{ij} = 0.
  Mat sys(F, static_cast<int>(m.ngens()) * n, n);
  for (size_t gi = 0; gi < m.ngens(); ++gi) {
    const Mat& g = m.mats[gi];
    for (int r = 0; r < n; ++r) {
      auto [i, j] = idx[r];
      int row = static_cast<int>(gi) * n + r;
      for (int t = 0; t < n; ++t) {
        auto [k, l] = idx[t];
        unsigned co = F.sub(F.mul(g.get(i, k), g.get(j, l)), F.mul(g.get(i, l), g.get(j, k)));
        if (t == r) co = F.sub(co, 1);
        sys.set(row, t, co);
      }
    }
  }
  Mat sol = sys.nullspace();
  if (sol.rows() == 0) return std::nullopt;
  std::optional<Mat> best;
  enumerate_combos(F, sol, [&](const Mat& v) {
    Mat B(F, d, d);
    for (int t = 0; t < n; ++t) {
      auto [k, l] = idx[t];
      B.set(k, l, v.get(0, t));
      B.set(l, k, F.neg(v.get(0, t)));
    }
    if (B.rank() != d) return;
    if (!best || lex_less(B, *best)) best = B;
  });
  return best;
}

Mat QuadraticForm::polar() const { return upper + upper.transpose(); }

unsigned QuadraticForm::eval(const Mat& v) const {
  return (v * upper * v.transpose()).get(0, 0);
}

std::optional<QuadraticForm> invariant_quadratic_form(const GModule& m) {
  const Field& F = m.field();
  if (F.q() != 2)
    throw std::invalid_argument("invariant_quadratic_form: defined over GF(2) only");
  int d = m.dim();
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) idx.push_back({i, j});
  int n = static_cast<int>(idx.size());
  // Unknowns Q_{kl} (k <= l).  The image of Q under g is the upper
  // normalization of g Q g^T; one equation per generator and slot i <= j.
  Mat sys(F, static_cast<int>(m.ngens()) * n, n);
  for (size_t gi = 0; gi < m.ngens(); ++gi) {
    const Mat& g = m.mats[gi];
    for (int r = 0; r < n; ++r) {
      auto [i, j] = idx[r];
      int row = static_cast<int>(gi) * n + r;
      for (int t = 0; t < n; ++t) {
        auto [k, l] = idx[t];
        unsigned co;
        if (i == j) {
          co = F.mul(g.get(i, k), g.get(i, l));
        } else {
          co = F.add(F.mul(g.get(i, k), g.get(j, l)), F.mul(g.get(j, k), g.get(i, l)));
        }
        if (t == r) co = F.sub(co, 1);
        sys.set(row, t, co);
      }
    }
  }
  Mat sol = sys.nullspace();
  if (sol.rows() == 0) return std::nullopt;
  std::optional<Mat> best;
  enumerate_combos(F, sol, [&](const Mat& v) {
    Mat Q(F, d, d);
    for (int t = 0; t < n; ++t) Q.set(idx[t].first, idx[t].second, v.get(0, t));
    if ((Q + Q.transpose()).rank() != d) return;  // polarization must be nondegenerate
    if (!best || lex_less(Q, *best)) best = Q;
  });
  if (!best) return std::nullopt;
  QuadraticForm q;
  q.upper = *best;
  q.sign = arf_sign(q.upper);
  return q;
}

int arf_sign(const Mat& upper) {
  const Field& F = upper.field();
  int d = upper.rows();
  if (F.q() != 2 || d % 2 != 0 || d > 24)
    throw std::invalid_argument("arf_sign: even dimension over GF(2), d <= 24");
  long long zeros = 0;
  Mat v(F, 1, d);
  for (long long bits = 0; bits < (1LL << d); ++bits) {
    for (int i = 0; i < d; ++i) v.set(0, i, (bits >> i) & 1);
    if ((v * upper * v.transpose()).get(0, 0) == 0) ++zeros;
  }
  long long half = 1LL << (d - 1), quarter = 1LL << (d / 2 - 1);
  if (zeros == half + quarter) return 1;
  if (zeros == half - quarter) return -1;
  throw std::invalid_argument("arf_sign: form is degenerate");
}

Mat symplectic_standard_basis(const Mat& B) {
  const Field& F = B.field();
  int d = B.rows();
  if (B.cols() != d || d % 2 != 0)
    throw std::invalid_argument("symplectic_standard_basis: even square matrix required");
  auto f = [&](const Mat& x, const Mat& y) { return (x * B * y.transpose()).get(0, 0); };
  std::vector<Mat> pool;
  Mat id = Mat::identity(F, d);
  for (int i = 0; i < d; ++i) pool.push_back(id.row(i));
  Mat out(F, 0, d);
  while (!pool.empty()) {
    Mat u = pool.front();
    int vi = -1;
    for (size_t t = 1; t < pool.size(); ++t)
      if (f(u, pool[t]) != 0) {
        vi = static_cast<int>(t);
        break;
      }
    if (vi < 0) throw std::invalid_argument("symplectic_standard_basis: degenerate form");
    Mat v = pool[vi].scaled(F.inv(f(u, pool[vi])));
    out.append_row(u);
    out.append_row(v);
    std::vector<Mat> next;
    EchelonBasis eb(F, d);
    for (size_t t = 1; t < pool.size(); ++t) {
      if (static_cast<int>(t) == vi) continue;
      Mat w = pool[t] - u.scaled(f(pool[t], v)) - v.scaled(f(u, pool[t]));
      if (eb.insert(w)) next.push_back(w);
    }
    pool = std::move(next);
  }
  return out;
}

}  // namespace grpx

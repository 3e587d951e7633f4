#include "grpx/poly.hpp"

#include <stdexcept>

namespace grpx {

namespace {

// splitmix64; the project-wide convention for seeded determinism.
uint64_t mix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

int pdeg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly padd(const Field& F, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  ptrim(c);
  return c;
}

Poly psub(const Field& F, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  ptrim(c);
  return c;
}

Poly pmul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  ptrim(c);
  return c;
}

std::pair<Poly, Poly> pdivmod(const Field& F, const Poly& a, const Poly& b) {
  Poly r = a, q;
  ptrim(r);
  Poly bb = b;
  ptrim(bb);
  if (bb.empty()) throw std::domain_error("pdivmod by zero");
  if (r.size() >= bb.size()) q.assign(r.size() - bb.size() + 1, 0);
  unsigned li = F.inv(bb.back());
  while (r.size() >= bb.size()) {
    unsigned c = F.mul(r.back(), li);
    size_t off = r.size() - bb.size();
    q[off] = c;
    for (size_t i = 0; i < bb.size(); ++i)
      r[off + i] = F.sub(r[off + i], F.mul(c, bb[i]));
    ptrim(r);
    if (r.size() < bb.size()) break;
    // ptrim may remove several coefficients; loop handles the rest
    if (r.empty()) break;
  }
  ptrim(q);
  return {q, r};
}

Poly pmod(const Field& F, const Poly& a, const Poly& b) {
  return pdivmod(F, a, b).second;
}

Poly pgcd(const Field& F, Poly a, Poly b) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    Poly r = pmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(F, a);
}

Poly pmonic(const Field& F, const Poly& a) {
  Poly c = a;
  ptrim(c);
  if (c.empty() || c.back() == 1) return c;
  unsigned li = F.inv(c.back());
  for (auto& x : c) x = F.mul(x, li);
  return c;
}

Poly ppowmod(const Field& F, Poly a, unsigned long long n, const Poly& m) {
  Poly r{1};
  a = pmod(F, a, m);
  while (n) {
    if (n & 1) r = pmod(F, pmul(F, r, a), m);
    a = pmod(F, pmul(F, a, a), m);
    n >>= 1;
  }
  return r;
}

unsigned peval(const Field& F, const Poly& a, unsigned x) {
  unsigned r = 0;
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

namespace {

Poly pderiv(const Field& F, const Poly& a) {
  Poly d;
  for (size_t i = 1; i < a.size(); ++i) {
    unsigned c = 0;
    for (unsigned k = 0; k < i % F.p(); ++k) c = F.add(c, a[i]);
    // i * a[i] where i is reduced mod p
    d.push_back(c);
  }
  ptrim(d);
  return d;
}

Poly prandom(const Field& F, int deg, uint64_t& seed) {
  Poly r(deg + 1);
  for (auto& c : r) c = static_cast<unsigned>(mix64(seed) % F.q());
  ptrim(r);
  return r;
}

// Equal-degree factorization of a squarefree product of irreducibles of
// degree d (Cantor-Zassenhaus; trace construction in characteristic 2).
void edf(const Field& F, const Poly& f, int d, uint64_t& seed,
         std::vector<Poly>& out) {
  int n = pdeg(f);
  if (n == d) {
    out.push_back(pmonic(F, f));
    return;
  }
  unsigned long long qd = 1;
  for (int i = 0; i < d; ++i) qd *= F.q();
  Poly g;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Poly r = prandom(F, n - 1, seed);
    if (pdeg(r) < 1) continue;
    Poly h;
    if (F.p() == 2) {
      // trace map r + r^2 + r^4 + ... over GF(2^(e*d))
      Poly t = pmod(F, r, f);
      Poly acc = t;
      unsigned steps = F.e() * static_cast<unsigned>(d);
      for (unsigned i = 1; i < steps; ++i) {
        t = ppowmod(F, t, 2, f);
        acc = padd(F, acc, t);
      }
      h = pgcd(F, acc, f);
    } else {
      Poly t = ppowmod(F, r, (qd - 1) / 2, f);
      t = psub(F, t, Poly{1});
      h = pgcd(F, t, f);
    }
    if (pdeg(h) > 0 && pdeg(h) < n) {
      g = h;
      break;
    }
  }
  if (g.empty()) throw std::logic_error("edf: no split found");
  edf(F, g, d, seed, out);
  edf(F, pdivmod(F, f, g).first, d, seed, out);
}

void factor_squarefree(const Field& F, Poly f, uint64_t& seed,
                       std::vector<Poly>& out) {
  // distinct-degree factorization
  Poly x{0, 1};
  Poly h = x;
  int d = 0;
  while (pdeg(f) > 0) {
    ++d;
    if (2 * d > pdeg(f)) {
      out.push_back(pmonic(F, f));
      return;
    }
    h = ppowmod(F, h, F.q(), f);
    Poly g = pgcd(F, psub(F, h, x), f);
    if (pdeg(g) > 0) {
      edf(F, g, d, seed, out);
      f = pdivmod(F, f, g).first;
      h = pmod(F, h, f);
    }
  }
}

}  // namespace

bool poly_irreducible(const Field& F, const Poly& f) {
  Poly g = pmonic(F, f);
  if (pdeg(g) < 1) return false;
  if (pdeg(g) == 1) return true;
  if (g[0] == 0) return false;
  Poly x{0, 1};
  // x^(q^n) = x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n
  int n = pdeg(g);
  auto qpow = [&](int k) {
    unsigned long long r = 1;
    for (int i = 0; i < k; ++i) r *= F.q();
    return r;
  };
  Poly xn = ppowmod(F, x, qpow(n), g);
  if (!psub(F, xn, pmod(F, x, g)).empty()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    bool rp = true;
    for (int dd = 2; dd * dd <= r; ++dd)
      if (r % dd == 0) rp = false;
    if (!rp) continue;
    Poly xr = ppowmod(F, x, qpow(n / r), g);
    if (pdeg(pgcd(F, psub(F, xr, x), g)) != 0) return false;
  }
  return true;
}

std::vector<std::pair<Poly, int>> poly_factor(const Field& F, const Poly& f_in,
                                              uint64_t seed) {
  Poly f = pmonic(F, f_in);
  if (pdeg(f) < 1) throw std::domain_error("poly_factor: constant input");
  std::vector<std::pair<Poly, int>> result;
  // Repeated squarefree reduction via gcd with the derivative; simple and
  // adequate at these degrees.
  while (pdeg(f) > 0) {
    Poly d = pderiv(F, f);
    Poly sqfree;
    if (d.empty()) {
      // f = g(x^p); take p-th root by Frobenius on coefficients
      Poly g;
      unsigned p = F.p();
      for (size_t i = 0; i < f.size(); i += p) {
        unsigned c = f[i];
        // c = b^p for b = c^(q/p); p-th root is c^(p^(e-1)) iterated
        unsigned b = c;
        for (unsigned k = 1; k < F.e(); ++k) b = F.pow(b, F.p());
        // b^p = c^(p^e) = c, so b is the p-th root
        g.push_back(b);
      }
      f = g;
      // multiplicities of factors of g count p times
      auto sub = poly_factor(F, f, seed);
      for (auto& [fac, m] : sub) {
        bool merged = false;
        for (auto& [rf, rm] : result)
          if (rf == fac) {
            rm += m * static_cast<int>(p);
            merged = true;
          }
        if (!merged) result.push_back({fac, m * static_cast<int>(p)});
      }
      return result;
    }
    sqfree = pdivmod(F, f, pgcd(F, f, d)).first;
    std::vector<Poly> irr;
    uint64_t s = seed;
    factor_squarefree(F, sqfree, s, irr);
    for (auto& fac : irr) {
      int m = 0;
      while (true) {
        auto [q, r] = pdivmod(F, f, fac);
        if (!r.empty()) break;
        f = q;
        ++m;
      }
      bool merged = false;
      for (auto& [rf, rm] : result)
        if (rf == fac) {
          rm += m;
          merged = true;
        }
      if (!merged) result.push_back({fac, m});
    }
  }
  return result;
}

Mat poly_eval_matrix(const Poly& f, const Mat& m) {
  const Field& F = m.field();
  int n = m.rows();
  Mat r(F, n, n);
  for (size_t i = f.size(); i-- > 0;) {
    r = r * m;
    if (f[i] != 0) {
      for (int d = 0; d < n; ++d) r.set(d, d, F.add(r.get(d, d), f[i]));
    }
  }
  return r;
}

Poly min_poly_of_vector(const Mat& m, const Mat& v) {
  const Field& F = m.field();
  int n = m.cols();
  EchelonBasis span(F, n);
  std::vector<Mat> iterates;
  Mat cur = v;
  while (true) {
    Mat reduced = span.reduce(cur);
    if (reduced.is_zero()) break;
    span.insert(cur);
    iterates.push_back(cur);
    cur = cur * m;
  }
  // cur = sum c_i * iterates[i]; solve for coefficients
  int k = static_cast<int>(iterates.size());
  Mat A(F, n, k);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < n; ++c) A.set(c, j, iterates[j].get(0, c));
  Mat b(F, 1, n);
  for (int c = 0; c < n; ++c) b.set(0, c, cur.get(0, c));
  auto x = A.solve(b);
  if (!x) throw std::logic_error("min_poly_of_vector: inconsistent");
  Poly f(k + 1, 0);
  for (int i = 0; i < k; ++i) f[i] = F.neg(x->get(0, i));
  f[k] = 1;
  return f;
}

Poly min_poly(const Mat& m) {
  const Field& F = m.field();
  int n = m.rows();
  Poly acc{1};
  for (int i = 0; i < n; ++i) {
    Mat e(F, 1, n);
    e.set(0, i, 1);
    Poly mi = min_poly_of_vector(m, e);
    // acc = lcm(acc, mi)
    Poly g = pgcd(F, acc, mi);
    acc = pmul(F, acc, pdivmod(F, mi, g).first);
    if (pdeg(acc) == n) break;
  }
  return pmonic(F, acc);
}

}  // namespace grpx

#include "grpx/field.hpp"

#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace grpx {

namespace {

// Polynomials over GF(p) as coefficient vectors (constant first), used only
// for constructing defining polynomials and the generic arithmetic path.
using PPoly = std::vector<unsigned>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  ptrim(c);
  return c;
}

unsigned modinv_scalar(unsigned a, unsigned p) {
  // p is a small prime
  unsigned r = 1, x = a % p;
  for (unsigned n = p - 2; n; n >>= 1) {
    if (n & 1) r = r * x % p;
    x = x * x % p;
  }
  return r;
}

PPoly pmod(PPoly a, const PPoly& m, unsigned p) {
  ptrim(a);
  unsigned lead_inv = modinv_scalar(m.back(), p);
  while (a.size() >= m.size()) {
    unsigned c = a.back() * lead_inv % p;
    size_t off = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i)
      a[off + i] = (a[off + i] + p * p - c * m[i] % p) % p;
    ptrim(a);
  }
  return a;
}

PPoly pgcd(PPoly a, PPoly b, unsigned p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

PPoly ppowmod_x(unsigned long long n, const PPoly& m, unsigned p) {
  // x^n mod m
  PPoly r{1}, x{0, 1};
  x = pmod(x, m, p);
  while (n) {
    if (n & 1) r = pmod(pmul(r, x, p), m, p);
    x = pmod(pmul(x, x, p), m, p);
    n >>= 1;
  }
  return r;
}

bool poly_irreducible(const PPoly& f, unsigned p) {
  // Rabin's test: x^(p^e) = x mod f and gcd(x^(p^(e/r)) - x, f) = 1 for
  // every prime r | e.
  unsigned e = static_cast<unsigned>(f.size()) - 1;
  auto pow_pe = [&](unsigned k) {
    unsigned long long n = 1;
    for (unsigned i = 0; i < k; ++i) n *= p;
    return n;
  };
  PPoly xq = ppowmod_x(pow_pe(e), f, p);
  PPoly x_only = pmod({0, 1}, f, p);
  PPoly diff = xq;
  diff.resize(std::max(diff.size(), x_only.size()), 0);
  for (size_t i = 0; i < x_only.size(); ++i)
    diff[i] = (diff[i] + p - x_only[i]) % p;
  ptrim(diff);
  if (!diff.empty()) return false;
  for (unsigned r = 2; r <= e; ++r) {
    if (e % r != 0) continue;
    bool rprime = true;
    for (unsigned d = 2; d * d <= r; ++d)
      if (r % d == 0) rprime = false;
    if (!rprime) continue;
    PPoly g = ppowmod_x(pow_pe(e / r), f, p);
    g.resize(std::max(g.size(), x_only.size()), 0);
    for (size_t i = 0; i < x_only.size(); ++i)
      g[i] = (g[i] + p - x_only[i]) % p;
    ptrim(g);
    if (g.empty()) return false;
    if (pgcd(g, f, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(unsigned p, unsigned e) : p_(p), e_(e) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (e < 1) throw std::invalid_argument("Field: e must be >= 1");
  unsigned long long q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > (1u << 20)) throw std::invalid_argument("Field: p^e > 2^20");
  }
  q_ = static_cast<unsigned>(q);

  // Lexicographically least monic irreducible of degree e: scan the encoded
  // low-coefficient part in increasing order.
  if (e == 1) {
    modulus_ = {0, 1};  // x (unused)
  } else {
    for (unsigned low = 0; low < q_; ++low) {
      PPoly f(e + 1, 0);
      unsigned v = low;
      for (unsigned i = 0; i < e; ++i) {
        f[i] = v % p;
        v /= p;
      }
      f[e] = 1;
      if (f[0] == 0) continue;
      if (poly_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
    if (modulus_.empty()) throw std::logic_error("no irreducible polynomial found");
  }

  tabled_ = q_ <= (1u << 16);
  if (tabled_) {
    // Find a multiplicative generator, then build exp/log tables.
    std::vector<unsigned> prime_divs;
    unsigned m = q_ - 1;
    for (unsigned d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_divs.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_divs.push_back(m);

    auto raw_pow = [&](unsigned a, unsigned n) {
      unsigned r = 1;
      while (n) {
        if (n & 1) r = mul_generic(r, a);
        a = mul_generic(a, a);
        n >>= 1;
      }
      return r;
    };
    for (unsigned a = (e_ == 1 ? 1u : p_); a < q_; ++a) {
      bool ok = a != 0;
      for (unsigned d : prime_divs)
        if (ok && raw_pow(a, (q_ - 1) / d) == 1) ok = false;
      if (ok) {
        gen_ = a;
        break;
      }
    }
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    unsigned cur = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
      exp_[i] = exp_[i + (q_ - 1)] = cur;
      log_[cur] = i;
      cur = mul_generic(cur, gen_);
    }
    if (q_ <= 256) {
      addtab_.assign(q_ * q_, 0);
      for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b) {
          unsigned s = 0, mult = 1;
          unsigned x = a, y = b;
          for (unsigned i = 0; i < e_; ++i) {
            s += (x % p_ + y % p_) % p_ * mult;
            x /= p_;
            y /= p_;
            mult *= p_;
          }
          addtab_[a * q_ + b] = s;
        }
    }
  } else {
    gen_ = 0;  // generator not tabulated for big fields
  }
}

const Field& Field::get(unsigned p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) slot = std::unique_ptr<Field>(new Field(p, e));
  return *slot;
}

unsigned Field::add(unsigned a, unsigned b) const {
  if (p_ == 2) return a ^ b;
  if (!addtab_.empty()) return addtab_[a * q_ + b];
  unsigned s = 0, mult = 1;
  for (unsigned i = 0; i < e_; ++i) {
    s += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return s;
}

unsigned Field::neg(unsigned a) const {
  if (p_ == 2) return a;
  unsigned s = 0, mult = 1;
  for (unsigned i = 0; i < e_; ++i) {
    s += (p_ - a % p_) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return s;
}

unsigned Field::sub(unsigned a, unsigned b) const { return add(a, neg(b)); }

unsigned Field::mul_generic(unsigned a, unsigned b) const {
  if (e_ == 1) return a * b % p_;
  PPoly pa, pb;
  unsigned x = a, y = b;
  for (unsigned i = 0; i < e_; ++i) {
    pa.push_back(x % p_);
    pb.push_back(y % p_);
    x /= p_;
    y /= p_;
  }
  ptrim(pa);
  ptrim(pb);
  PPoly c = pmod(pmul(pa, pb, p_), modulus_, p_);
  unsigned r = 0, mult = 1;
  for (unsigned i = 0; i < e_; ++i) {
    r += (i < c.size() ? c[i] : 0) * mult;
    mult *= p_;
  }
  return r;
}

unsigned Field::mul(unsigned a, unsigned b) const {
  if (a == 0 || b == 0) return 0;
  if (tabled_) return exp_[log_[a] + log_[b]];
  return mul_generic(a, b);
}

unsigned Field::inv_generic(unsigned a) const {
  // a^(q-2)
  unsigned r = 1, x = a;
  unsigned n = q_ - 2;
  while (n) {
    if (n & 1) r = mul_generic(r, x);
    x = mul_generic(x, x);
    n >>= 1;
  }
  return r;
}

unsigned Field::inv(unsigned a) const {
  if (a == 0) throw std::domain_error("Field::inv(0)");
  if (tabled_) return exp_[(q_ - 1) - log_[a]];
  return inv_generic(a);
}

unsigned Field::pow(unsigned a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  if (a == 0) return n == 0 ? 1 : 0;
  n %= q_ - 1;
  if (tabled_) return exp_[static_cast<unsigned long long>(log_[a]) * n % (q_ - 1)];
  unsigned r = 1;
  while (n) {
    if (n & 1) r = mul_generic(r, a);
    a = mul_generic(a, a);
    n >>= 1;
  }
  return r;
}

unsigned Field::element_order(unsigned a) const {
  if (a == 0) throw std::domain_error("element_order(0)");
  unsigned n = 1;
  unsigned x = a;
  while (x != 1) {
    x = mul(x, a);
    ++n;
    if (n > q_) throw std::logic_error("element_order diverged");
  }
  return n;
}

unsigned Field::root_of_unity(unsigned n) const {
  if (n == 0 || (q_ - 1) % n != 0)
    throw std::domain_error("root_of_unity: n does not divide q-1");
  if (!tabled_) throw std::logic_error("root_of_unity: field too large");
  return pow(gen_, (q_ - 1) / n);
}

unsigned Field::coeff(unsigned a, unsigned i) const {
  for (unsigned k = 0; k < i; ++k) a /= p_;
  return a % p_;
}

unsigned Field::from_coeffs(const std::vector<unsigned>& c) const {
  unsigned r = 0, mult = 1;
  for (unsigned i = 0; i < e_; ++i) {
    r += (i < c.size() ? c[i] % p_ : 0) * mult;
    mult *= p_;
  }
  return r;
}

unsigned Field::embed_from(const Field& sub, unsigned a) const {
  if (&sub == this) return a;
  if (sub.p_ != p_ || e_ % sub.e_ != 0)
    throw std::invalid_argument("embed_from: not a subfield");
  if (sub.e_ == 1) {
    // GF(p) embeds as the scalar multiples of 1.
    unsigned r = 0;
    for (unsigned i = 0; i < a; ++i) r = add(r, 1);
    return r;
  }
  // Least root of the subfield's defining polynomial in this field.
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, unsigned> roots;
  unsigned root = 0;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = roots.find({this, &sub});
    if (it != roots.end()) {
      root = it->second;
    } else {
      const auto& f = sub.modulus_;
      bool found = false;
      for (unsigned x = 0; x < q_ && !found; ++x) {
        unsigned v = 0;
        for (size_t i = f.size(); i-- > 0;) {
          v = mul(v, x);
          unsigned c = f[i] % p_;
          for (unsigned k = 0; k < c; ++k) v = add(v, 1);
        }
        if (v == 0) {
          root = x;
          found = true;
        }
      }
      if (!found) throw std::logic_error("embed_from: no root found");
      roots[{this, &sub}] = root;
    }
  }
  unsigned r = 0;
  for (size_t i = sub.e_; i-- > 0;) {
    r = mul(r, root);
    unsigned c = sub.coeff(a, static_cast<unsigned>(i));
    for (unsigned k = 0; k < c; ++k) r = add(r, 1);
  }
  return r;
}

std::string Field::name() const {
  return std::to_string(p_) + "^" + std::to_string(e_);
}

}  // namespace grpx

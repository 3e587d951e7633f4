#include "grpx/symtype.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "grpx/element.hpp"

namespace grpx {
namespace {

unsigned eval_bilinear(const Mat& gram, const Mat& x, const Mat& y) {
  return (x * gram * y.transpose()).get(0, 0);
}

unsigned eval_quad(const Mat& upper, const Mat& x) {
  return (x * upper * x.transpose()).get(0, 0);
}

bool is_alternating(const Mat& f) {
  const Field& F = f.field();
  if (f.rows() != f.cols()) return false;
  for (int i = 0; i < f.rows(); ++i) {
    if (f.get(i, i) != 0) return false;
    for (int j = 0; j < f.cols(); ++j)
      if (f.get(i, j) != F.neg(f.get(j, i))) return false;
  }
  return true;
}

}  // namespace

std::string sym_kind_name(SymKind k) {
  switch (k) {
    case SymKind::odd_extraspecial: return "r^{1+2n}";
    case SymKind::two_plus: return "2^{1+2n}_+";
    case SymKind::two_minus: return "2^{1+2n}_-";
    case SymKind::central4: return "4o2^{1+2n}";
  }
  return "?";
}

int FormData::radical_dim() const { return dim() - f.rank(); }

FormData FormData::standard(unsigned r, SymKind kind, int n) {
  if (n < 1) throw std::invalid_argument("FormData::standard: n >= 1 required");
  const Field& F = Field::get(r);
  FormData fd;
  fd.r = r;
  if (kind == SymKind::odd_extraspecial) {
    if (r == 2) throw std::invalid_argument("FormData::standard: odd r required");
    fd.f = Mat(F, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      fd.f.set(2 * i, 2 * i + 1, 1);
      fd.f.set(2 * i + 1, 2 * i, F.neg(1));
    }
    return fd;
  }
  if (r != 2) throw std::invalid_argument("FormData::standard: r = 2 required");
  int d = kind == SymKind::central4 ? 2 * n + 1 : 2 * n;
  Mat q(F, d, d);
  for (int i = 0; i < n; ++i) q.set(2 * i, 2 * i + 1, 1);
  if (kind == SymKind::two_minus) {
    q.set(2 * n - 2, 2 * n - 2, 1);
    q.set(2 * n - 1, 2 * n - 1, 1);
  }
  if (kind == SymKind::central4) q.set(2 * n, 2 * n, 1);
  fd.quad = q;
  fd.f = q + q.transpose();
  return fd;
}

uint64_t SymplecticTypeGroup::order() const {
  uint64_t o = zorder;
  for (int i = 0; i < 2 * n; ++i) o *= r;
  return o;
}

SymElem SymplecticTypeGroup::identity() const { return {Mat(Field::get(r), 1, 2 * n), 0}; }

SymElem SymplecticTypeGroup::make(const Mat& v, unsigned z) const { return {v, z % zorder}; }

SymElem SymplecticTypeGroup::mul(const SymElem& a, const SymElem& b) const {
  unsigned c = eval_bilinear(beta, a.v, b.v);
  if (zorder != r) c = 2 * c;  // central product: cochain values are doubled in Z4
  return {a.v + b.v, (a.z + b.z + c) % zorder};
}

SymElem SymplecticTypeGroup::inv(const SymElem& a) const {
  Mat nv = a.v.scaled(Field::get(r).neg(1));
  unsigned c = eval_bilinear(beta, a.v, nv);
  if (zorder != r) c = 2 * c;
  return {nv, (2 * zorder - a.z - c) % zorder};
}

SymElem SymplecticTypeGroup::power(SymElem a, long long k) const {
  if (k < 0) return power(inv(a), -k);
  SymElem acc = identity();
  while (k) {
    if (k & 1) acc = mul(acc, a);
    a = mul(a, a);
    k >>= 1;
  }
  return acc;
}

Mat SymplecticTypeGroup::project(const SymElem& e) const {
  Mat out = e.v * wbasis;
  if (rad.rows() == 1 && (e.z % 2)) out = out + rad;
  return out;
}

std::vector<SymElem> SymplecticTypeGroup::gens() const {
  std::vector<SymElem> gs;
  gs.push_back({Mat(Field::get(r), 1, 2 * n), 1});  // central generator
  for (int i = 0; i < 2 * n; ++i) gs.push_back({sympb.row(i), 0});
  return gs;
}

uint64_t SymplecticTypeGroup::index_of(const SymElem& e) const {
  uint64_t idx = 0;
  for (int i = 2 * n - 1; i >= 0; --i) idx = idx * r + e.v.get(0, i);
  return idx * zorder + e.z;
}

SymElem SymplecticTypeGroup::element_at(uint64_t idx) const {
  SymElem e = identity();
  e.z = static_cast<unsigned>(idx % zorder);
  idx /= zorder;
  for (int i = 0; i < 2 * n; ++i) {
    e.v.set(0, i, static_cast<unsigned>(idx % r));
    idx /= r;
  }
  return e;
}

std::vector<SymElem> SymplecticTypeGroup::all_elements() const {
  std::vector<SymElem> out;
  for (uint64_t i = 0; i < order(); ++i) out.push_back(element_at(i));
  return out;
}

Group SymplecticTypeGroup::to_perm_group(const std::string& name) const {
  uint64_t o = order();
  if (o > (1u << 14)) throw std::invalid_argument("to_perm_group: order cap 2^14");
  std::vector<GElem> pgens;
  for (const auto& g : gens()) {
    std::vector<uint32_t> img(o);
    for (uint64_t i = 0; i < o; ++i)
      img[i] = static_cast<uint32_t>(index_of(mul(element_at(i), g)));
    pgens.push_back(GElem::of_perm(Perm::from_images(img)));
  }
  return Group(pgens, name.empty() ? sym_kind_name(kind) : name);
}

unsigned SymplecticTypeGroup::quad_w(const Mat& v) const { return eval_quad(quadw, v); }

SymplecticTypeGroup construct_R(const FormData& fd, SymKind kind) {
  const unsigned r = fd.r;
  const Field& F = Field::get(r);
  if (!is_prime(r)) throw std::invalid_argument("construct_R: r must be prime");
  if (!is_alternating(fd.f)) throw std::invalid_argument("construct_R: f not alternating");

  SymplecticTypeGroup R;
  R.fd = fd;
  R.kind = kind;
  R.r = r;
  int d = fd.dim();

  if (kind == SymKind::odd_extraspecial) {
    if (r == 2 || fd.quad || fd.radical_dim() != 0 || d % 2)
      throw std::invalid_argument("construct_R: case data mismatch (odd)");
    R.zorder = r;
    R.n = d / 2;
    R.fw = fd.f;
    R.wbasis = Mat::identity(F, d);
    R.rad = Mat(F, 0, d);
    R.quadw = Mat(F, d, d);
    R.beta = Mat(F, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) R.beta.set(i, j, fd.f.get(i, j));
  } else {
    if (r != 2 || !fd.quad) throw std::invalid_argument("construct_R: case data mismatch (r=2)");
    if (*fd.quad + fd.quad->transpose() != fd.f)
      throw std::invalid_argument("construct_R: Q does not polarize to f");
    if (kind == SymKind::central4) {
      if (fd.radical_dim() != 1 || d % 2 == 0)
        throw std::invalid_argument("construct_R: defect-1 data required");
      Mat u0 = fd.f.nullspace();
      if (eval_quad(*fd.quad, u0.row(0)) != 1)
        throw std::invalid_argument("construct_R: Q degenerate on the radical");
      R.zorder = 4;
      R.n = (d - 1) / 2;
      R.rad = u0.row(0);
      // complement basis: standard vectors extending the radical
      EchelonBasis eb(F, d);
      eb.insert(u0.row(0));
      Mat wb(F, 0, d);
      for (int i = 0; i < d && wb.rows() < 2 * R.n; ++i) {
        Mat ei(F, 1, d);
        ei.set(0, i, 1);
        if (eb.insert(ei)) wb.append_row(ei);
      }
      R.wbasis = wb;
    } else {
      if (fd.radical_dim() != 0 || d % 2)
        throw std::invalid_argument("construct_R: nondegenerate even data required");
      int sign = arf_sign(*fd.quad);
      if (sign != (kind == SymKind::two_plus ? 1 : -1))
        throw std::invalid_argument("construct_R: quadratic form sign does not match kind");
      R.zorder = 2;
      R.n = d / 2;
      R.wbasis = Mat::identity(F, d);
      R.rad = Mat(F, 0, d);
    }
    int m = 2 * R.n;
    R.fw = Mat(F, m, m);
    R.quadw = Mat(F, m, m);
    for (int i = 0; i < m; ++i) {
      R.quadw.set(i, i, eval_quad(*fd.quad, R.wbasis.row(i)));
      for (int j = 0; j < m; ++j)
        if (i != j) R.fw.set(i, j, eval_bilinear(fd.f, R.wbasis.row(i), R.wbasis.row(j)));
      for (int j = i + 1; j < m; ++j) R.quadw.set(i, j, R.fw.get(i, j));
    }
    R.beta = R.quadw;
  }
  R.sympb = symplectic_standard_basis(R.fw);

  // Verify the commutator and power laws.
  auto check_pair = [&](const SymElem& x, const SymElem& y) {
    SymElem c = R.mul(R.mul(R.inv(x), R.inv(y)), R.mul(x, y));
    unsigned want = eval_bilinear(fd.f, R.project(x), R.project(y));
    if (R.zorder != R.r) want = 2 * want;
    if (!c.v.is_zero() || c.z != want % R.zorder)
      throw std::logic_error("construct_R: commutator law failed");
  };
  auto check_power = [&](const SymElem& x) {
    SymElem p = R.power(x, r);
    unsigned want = 0;
    if (r == 2) {
      want = eval_quad(*fd.quad, R.project(x));
      if (R.zorder == 4) want = 2 * want;
    }
    if (!p.v.is_zero() || p.z != want % R.zorder)
      throw std::logic_error("construct_R: power law failed");
  };
  uint64_t o = R.order();
  if (o <= 1024) {
    for (uint64_t i = 0; i < o; ++i) {
      SymElem x = R.element_at(i);
      check_power(x);
      for (uint64_t j = 0; j < o; ++j) check_pair(x, R.element_at(j));
    }
  } else {
    std::mt19937_64 rng(kDefaultSeed);
    for (int t = 0; t < 10000; ++t) {
      SymElem x = R.element_at(rng() % o), y = R.element_at(rng() % o);
      check_power(x);
      check_pair(x, y);
    }
  }
  return R;
}

std::optional<std::pair<SymKind, int>> classify_R(const Group& g, unsigned r) {
  if (!is_prime(r)) throw std::invalid_argument("classify_R: r must be prime");
  uint64_t o = g.order();
  if (o > (1u << 14)) throw std::invalid_argument("classify_R: order cap 2^14");
  {
    uint64_t m = o;
    while (m % r == 0) m /= r;
    if (m != 1 || o == 1) return std::nullopt;
  }
  Group Z = center(g);
  uint64_t zo = Z.order();
  if (r == 2 ? (zo != 2 && zo != 4) : zo != r) return std::nullopt;
  GElem zgen;
  {
    bool found = false;
    for (const auto& e : Z.elements())
      if (element_order(e) == zo) {
        zgen = e;
        found = true;
        break;
      }
    if (!found) return std::nullopt;  // center not cyclic
  }
  uint64_t vsize = o / zo;
  int twon = 0;
  {
    uint64_t t = vsize;
    while (t > 1) {
      if (t % r) return std::nullopt;
      t /= r;
      ++twon;
    }
  }
  if (twon == 0 || twon % 2) return std::nullopt;
  int nn = twon / 2;

  GElem z1 = zgen;
  for (uint64_t k = r; k < zo; k *= r) z1 = z1 * z1;  // generator of the order-r subgroup
  std::vector<GElem> zpow{g.identity()};
  for (unsigned k = 1; k < r; ++k) zpow.push_back(zpow.back() * z1);
  auto dlog = [&](const GElem& c) -> int {
    for (unsigned k = 0; k < r; ++k)
      if (c == zpow[k]) return static_cast<int>(k);
    return -1;
  };

  // Greedy basis of g/Z, with the span tracked as an explicit element set.
  auto elems = g.elements();
  std::unordered_set<GElem, GElemHash> span;
  for (const auto& e : Z.elements()) span.insert(e);
  std::vector<GElem> basis;
  for (const auto& e : elems) {
    if (span.count(e)) continue;
    basis.push_back(e);
    std::unordered_set<GElem, GElemHash> next;
    for (const auto& s : span) {
      GElem cur = s;
      for (unsigned k = 0; k < r; ++k) {
        next.insert(cur);
        cur = cur * e;
      }
    }
    span = std::move(next);
    if (basis.size() == static_cast<size_t>(twon)) break;
  }
  if (basis.size() != static_cast<size_t>(twon) || span.size() != o) return std::nullopt;

  // Central quotient elementary abelian; commutators in the order-r socle.
  const Field& F = Field::get(r);
  Mat gram(F, twon, twon);
  for (int i = 0; i < twon; ++i) {
    GElem pw = basis[i];
    for (unsigned k = 1; k < r; ++k) pw = pw * basis[i];
    if (!Z.contains(pw)) return std::nullopt;
    for (int j = 0; j < twon; ++j) {
      int c = dlog(commutator(basis[i], basis[j]));
      if (c < 0) return std::nullopt;
      gram.set(i, j, static_cast<unsigned>(c));
    }
  }
  if (!is_alternating(gram) || gram.rank() != twon) return std::nullopt;

  if (r != 2) {
    for (const auto& e : elems) {
      GElem pw = g.identity();
      for (unsigned k = 0; k < r; ++k) pw = pw * e;
      if (!pw.is_identity()) return std::nullopt;  // exponent r required
    }
    return std::make_pair(SymKind::odd_extraspecial, nn);
  }
  if (zo == 4) return std::make_pair(SymKind::central4, nn);

  // Squares give the quadratic form; verify it polarizes to the gram.
  Mat qu(F, twon, twon);
  for (int i = 0; i < twon; ++i) {
    int qi = dlog(basis[i] * basis[i]);
    if (qi < 0) return std::nullopt;
    qu.set(i, i, static_cast<unsigned>(qi));
    for (int j = i + 1; j < twon; ++j) qu.set(i, j, gram.get(i, j));
  }
  for (int i = 0; i < twon; ++i)
    for (int j = i + 1; j < twon; ++j) {
      GElem xy = basis[i] * basis[j];
      int q = dlog(xy * xy);
      unsigned want = F.add(F.add(qu.get(i, i), qu.get(j, j)), gram.get(i, j));
      if (q < 0 || static_cast<unsigned>(q) != want) return std::nullopt;
    }
  int sign = arf_sign(qu);
  return std::make_pair(sign > 0 ? SymKind::two_plus : SymKind::two_minus, nn);
}

uint64_t symplectic_group_order(unsigned r, int n) {
  uint64_t o = 1;
  for (int i = 0; i < n * n; ++i) o *= r;
  for (int i = 1; i <= n; ++i) {
    uint64_t q2i = 1;
    for (int j = 0; j < 2 * i; ++j) q2i *= r;
    o *= q2i - 1;
  }
  return o;
}

uint64_t orthogonal_group_order(int n, int eps) {
  uint64_t o = 2;
  for (int i = 0; i < n * (n - 1); ++i) o *= 2;
  uint64_t t = 1;
  for (int i = 0; i < n; ++i) t *= 2;
  o *= eps > 0 ? t - 1 : t + 1;
  for (int i = 1; i < n; ++i) {
    uint64_t q2i = 1;
    for (int j = 0; j < 2 * i; ++j) q2i *= 2;
    o *= q2i - 1;
  }
  return o;
}

Group isometry_group_generators(const FormData& fd) {
  const Field& F = Field::get(fd.r);
  int d = fd.dim();
  int nn = fd.half_rank();
  if (nn < 1) throw std::invalid_argument("isometry_group_generators: rank 0 form");
  uint64_t target;
  if (fd.r != 2 || !fd.quad) {
    if (fd.radical_dim() != 0)
      throw std::invalid_argument("isometry_group_generators: degenerate f without Q");
    target = symplectic_group_order(fd.r, nn);
  } else if (fd.radical_dim() == 1) {
    target = symplectic_group_order(2, nn);  // O_{2n+1}(2) ~ Sp_{2n}(2)
  } else if (fd.radical_dim() == 0) {
    target = orthogonal_group_order(nn, arf_sign(*fd.quad));
  } else {
    throw std::invalid_argument("isometry_group_generators: radical too large");
  }

  std::vector<GElem> gens;
  std::vector<unsigned> lambdas{1};
  if (fd.r > 2) lambdas.push_back(F.generator());

  // enumerate candidate vectors in lex order (first nonzero entry 1)
  std::vector<unsigned> digits(d, 0);
  while (true) {
    int c = d - 1;
    while (c >= 0 && digits[c] == fd.r - 1) digits[c--] = 0;
    if (c < 0) break;
    ++digits[c];
    int pos = 0;
    while (pos < d && digits[pos] == 0) ++pos;
    if (digits[pos] != 1) continue;
    Mat v(F, 1, d);
    for (int i = 0; i < d; ++i) v.set(0, i, digits[i]);
    if (fd.quad && eval_quad(*fd.quad, v) != 1) continue;  // orthogonal transvections
    Mat cvec = fd.f * v.transpose();
    if (cvec.is_zero()) continue;
    for (unsigned lam : lambdas) {
      Mat T = Mat::identity(F, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          T.set(i, j, F.add(T.get(i, j), F.mul(lam, F.mul(cvec.get(i, 0), v.get(0, j)))));
      gens.push_back(GElem::of_matrix(T));
      uint64_t got = Group(gens).order();
      if (got == target) {
        std::string name = fd.r != 2 || !fd.quad ? "Sp" : fd.radical_dim() ? "O_odd" : "O";
        return Group(gens, name + std::to_string(2 * nn) + "_" + std::to_string(fd.r));
      }
      if (got > target) throw std::logic_error("isometry_group_generators: overshot order");
    }
  }
  // Transvections can stop short (the 4-dimensional plus-type orthogonal
  // group over GF(2) is the classical exception).  Complete by searching
  // frames: ordered bases with the standard Gram and quadratic values give
  // exactly the isometries; add any that is missing.
  auto group_of = [&](const std::vector<GElem>& gs) {
    return gs.empty() ? Group({GElem::of_matrix(Mat::identity(F, d))}) : Group(gs);
  };
  Group cur = group_of(gens);
  std::vector<Mat> picked;
  std::function<bool(int, const EchelonBasis&)> dfs = [&](int pos,
                                                          const EchelonBasis& eb) -> bool {
    if (pos == d) {
      Mat M(F, d, d);
      for (int i = 0; i < d; ++i) M.set_row(i, picked[i]);
      GElem g = GElem::of_matrix(M);
      if (!cur.contains(g)) {
        gens.push_back(g);
        cur = group_of(gens);
      }
      return cur.order() == target;
    }
    std::vector<unsigned> dig(d, 0);
    for (uint64_t idx = 1;; ++idx) {
      int c = 0;
      while (c < d && dig[c] == fd.r - 1) dig[c++] = 0;
      if (c == d) break;
      ++dig[c];
      Mat v(F, 1, d);
      for (int i = 0; i < d; ++i) v.set(0, i, dig[i]);
      if (fd.quad) {
        Mat ep(F, 1, d);
        ep.set(0, pos, 1);
        if (eval_quad(*fd.quad, v) != eval_quad(*fd.quad, ep)) continue;
      }
      bool ok = true;
      for (int j = 0; j < pos && ok; ++j)
        if (eval_bilinear(fd.f, picked[j], v) != fd.f.get(j, pos)) ok = false;
      if (!ok) continue;
      EchelonBasis eb2 = eb;
      if (!eb2.insert(v)) continue;
      picked.push_back(v);
      bool done = dfs(pos + 1, eb2);
      picked.pop_back();
      if (done) return true;
    }
    return false;
  };
  if (dfs(0, EchelonBasis(F, d)) || cur.order() == target) return cur;
  throw std::logic_error("isometry_group_generators: could not reach the target order");
}

}  // namespace grpx

#include "grpx/module.hpp"

#include <sstream>
#include <stdexcept>

namespace grpx {

std::string GModule::to_mod() const {
  std::ostringstream os;
  int d = dim();
  os << "module " << (name.empty() ? "unnamed" : name) << " dim " << d << " over "
     << field().name() << " group "
     << (has_group() && !group.name().empty() ? group.name() : "none") << "\n";
  for (const auto& m : mats) {
    os << "gen\n";
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) os << (j ? " " : "") << m.get(i, j);
      os << "\n";
    }
  }
  return os.str();
}

GModule GModule::from_mod(const std::string& text) {
  std::istringstream is(text);
  std::string tok, name, fname, gname;
  int d = 0;
  if (!(is >> tok) || tok != "module") throw std::invalid_argument("from_mod: bad header");
  is >> name >> tok;
  if (tok != "dim") throw std::invalid_argument("from_mod: missing dim");
  is >> d >> tok;
  if (tok != "over") throw std::invalid_argument("from_mod: missing field");
  is >> fname >> tok;
  if (tok != "group") throw std::invalid_argument("from_mod: missing group");
  is >> gname;
  auto caret = fname.find('^');
  unsigned p = std::stoul(fname.substr(0, caret));
  unsigned e = caret == std::string::npos ? 1 : std::stoul(fname.substr(caret + 1));
  const Field& F = Field::get(p, e);
  GModule m;
  m.name = name;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("gen", 0) != 0) throw std::invalid_argument("from_mod: expected gen");
    Mat a(F, d, d);
    for (int i = 0; i < d; ++i) {
      if (!std::getline(is, line)) throw std::invalid_argument("from_mod: truncated");
      std::istringstream row(line);
      for (int j = 0; j < d; ++j) {
        unsigned v;
        if (!(row >> v)) throw std::invalid_argument("from_mod: short row");
        a.set(i, j, v);
      }
    }
    m.mats.push_back(a);
  }
  if (m.mats.empty()) throw std::invalid_argument("from_mod: no generators");
  return m;
}

Mat spin(const GModule& m, const Mat& seed_rows) {
  EchelonBasis eb(m.field(), m.dim());
  std::vector<Mat> queue;
  for (int i = 0; i < seed_rows.rows(); ++i)
    if (eb.insert(seed_rows.row(i))) queue.push_back(seed_rows.row(i));
  // re-express queue as the echelon rows to keep products well-reduced
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& a : m.mats) {
      Mat v = queue[qi] * a;
      if (eb.insert(v)) queue.push_back(v);
    }
  }
  return eb.basis_matrix();
}

GModule tensor(const GModule& a, const GModule& b) {
  if (&a.field() != &b.field()) throw std::invalid_argument("tensor: field mismatch");
  if (a.ngens() != b.ngens()) throw std::invalid_argument("tensor: generator count mismatch");
  if (static_cast<long long>(a.dim()) * b.dim() > 4096)
    throw std::runtime_error("tensor: dimension overflow cap");
  GModule r;
  r.name = a.name + "x" + b.name;
  r.group = a.group;
  for (size_t i = 0; i < a.ngens(); ++i) r.mats.push_back(a.mats[i].kron(b.mats[i]));
  return r;
}

GModule exterior_square(const GModule& a) {
  const Field& F = a.field();
  int d = a.dim(), n = d * (d - 1) / 2;
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) idx.push_back({i, j});
  GModule r;
  r.name = "ext2_" + a.name;
  r.group = a.group;
  for (const auto& A : a.mats) {
    Mat M(F, n, n);
    for (int s = 0; s < n; ++s) {
      auto [i, j] = idx[s];
      for (int t = 0; t < n; ++t) {
        auto [k, l] = idx[t];
        unsigned v = F.sub(F.mul(A.get(i, k), A.get(j, l)), F.mul(A.get(i, l), A.get(j, k)));
        M.set(s, t, v);
      }
    }
    r.mats.push_back(M);
  }
  return r;
}

GModule dual(const GModule& a) {
  GModule r;
  r.name = "dual_" + a.name;
  r.group = a.group;
  for (const auto& A : a.mats) {
    auto inv = A.inverse();
    if (!inv) throw std::invalid_argument("dual: singular generator");
    r.mats.push_back(inv->transpose());
  }
  return r;
}

GModule permutation_module(const Group& g, const Field& F) {
  if (g.identity().kind() != ElemKind::perm)
    throw std::invalid_argument("permutation_module: permutation group required");
  int d = g.identity().perm().degree();
  GModule r;
  r.name = (g.name().empty() ? "perm" : g.name()) + "_perm";
  r.group = g;
  for (const auto& gen : g.gens()) {
    Mat M(F, d, d);
    for (int i = 0; i < d; ++i) M.set(i, static_cast<int>(gen.perm()[i]), 1);
    r.mats.push_back(M);
  }
  return r;
}

GModule submodule_action(const GModule& m, const Mat& basis) {
  EchelonBasis eb(m.field(), m.dim());
  for (int i = 0; i < basis.rows(); ++i) eb.insert(basis.row(i));
  Mat E = eb.basis_matrix();
  int k = E.rows();
  GModule r;
  r.name = m.name + "_sub" + std::to_string(k);
  r.group = m.group;
  for (const auto& A : m.mats) {
    Mat C(m.field(), k, k);
    for (int i = 0; i < k; ++i) {
      auto co = eb.coordinates(E.row(i) * A);
      if (!co) throw std::invalid_argument("submodule_action: basis not invariant");
      for (int j = 0; j < k; ++j) C.set(i, j, (*co)[j]);
    }
    r.mats.push_back(C);
  }
  return r;
}

GModule quotient_action(const GModule& m, const Mat& basis) {
  const Field& F = m.field();
  int d = m.dim();
  EchelonBasis eb(F, d);
  for (int i = 0; i < basis.rows(); ++i) eb.insert(basis.row(i));
  std::vector<int> nonpiv;
  {
    std::vector<bool> is_piv(d, false);
    for (int p : eb.pivots()) is_piv[p] = true;
    for (int j = 0; j < d; ++j)
      if (!is_piv[j]) nonpiv.push_back(j);
  }
  int k = static_cast<int>(nonpiv.size());
  GModule r;
  r.name = m.name + "_quo" + std::to_string(k);
  r.group = m.group;
  for (const auto& A : m.mats) {
    Mat C(F, k, k);
    for (int i = 0; i < k; ++i) {
      Mat v(F, 1, d);
      v.set(0, nonpiv[i], 1);
      Mat rem = eb.reduce(v * A);
      for (int j = 0; j < k; ++j) C.set(i, j, rem.get(0, nonpiv[j]));
    }
    r.mats.push_back(C);
  }
  return r;
}

GModule frobenius_twist(const GModule& m, unsigned f) {
  const Field& F = m.field();
  GModule r;
  r.name = m.name + "_frob" + std::to_string(f);
  r.group = m.group;
  for (const auto& A : m.mats) {
    Mat B(F, A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j) {
        unsigned v = A.get(i, j);
        for (unsigned t = 0; t < f; ++t) v = F.frobenius(v);
        B.set(i, j, v);
      }
    r.mats.push_back(B);
  }
  return r;
}

}  // namespace grpx

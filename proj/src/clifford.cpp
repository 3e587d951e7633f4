#include "grpx/clifford.hpp"

#include <stdexcept>
#include <unordered_map>

#include "grpx/meataxe.hpp"

namespace grpx {
namespace {

bool normal_in(const Group& h, const Group& m) {
  for (const auto& x : h.gens())
    for (const auto& g : m.gens())
      if (!m.contains(conjugate(g, x)) || !m.contains(conjugate(g, x.inverse())))
        return false;
  return true;
}

// Basis of { P (da x db) : a_i P = P b_i for all i }.
std::vector<Mat> rect_hom_space(const std::vector<Mat>& as, const std::vector<Mat>& bs) {
  const Field& F = as.at(0).field();
  int da = as[0].rows(), db = bs.at(0).rows();
  Mat sys(F, static_cast<int>(as.size()) * da * db, da * db);
  int row = 0;
  for (size_t g = 0; g < as.size(); ++g) {
    for (int p = 0; p < da; ++p)
      for (int j = 0; j < db; ++j) {
        for (int s = 0; s < da; ++s)
          sys.set(row, s * db + j, F.add(sys.get(row, s * db + j), as[g].get(p, s)));
        for (int s = 0; s < db; ++s)
          sys.set(row, p * db + s, F.sub(sys.get(row, p * db + s), bs[g].get(s, j)));
        ++row;
      }
  }
  Mat ns = sys.nullspace();
  std::vector<Mat> out;
  for (int i = 0; i < ns.rows(); ++i) {
    Mat P(F, da, db);
    for (int p = 0; p < da; ++p)
      for (int j = 0; j < db; ++j) P.set(p, j, ns.get(i, p * db + j));
    out.push_back(P);
  }
  return out;
}

Mat canonical_rowspace(Mat m) {
  m.rref();
  return m;
}

std::vector<Mat> member_mats(const Group& m) {
  std::vector<Mat> out;
  for (const auto& g : m.gens()) out.push_back(g.mat());
  return out;
}

}  // namespace

CliffordDecomposition homogeneous_components(const GModule& V, const Group& M) {
  if (!V.has_group()) throw std::invalid_argument("homogeneous_components: module has no group");
  const Group& H = V.group;
  if (!normal_in(H, M)) throw std::invalid_argument("homogeneous_components: M not normal");

  CliffordDecomposition dec;
  dec.module = V;
  dec.msub = M;
  dec.mmats = member_mats(M);
  const Field& F = V.field();

  GModule rest{V.name + "|M", dec.mmats, M};
  auto factors = chop(rest);
  int total = 0;
  for (auto& [w, mult] : factors) {
    auto homs = rect_hom_space(w.mats, dec.mmats);
    EchelonBasis eb(F, V.dim());
    for (const auto& P : homs)
      for (int i = 0; i < P.rows(); ++i) eb.insert(P.row(i));
    if (eb.dim() != mult * w.dim())
      throw std::logic_error("homogeneous_components: component dimension mismatch");
    dec.components.push_back({eb.basis_matrix(), mult, w.dim()});
    total += eb.dim();
  }
  if (total != V.dim())
    throw std::logic_error("homogeneous_components: restriction not semisimple");

  std::vector<Mat> canon;
  for (auto& c : dec.components) canon.push_back(canonical_rowspace(c.basis));
  for (const auto& X : V.mats) {
    std::vector<uint32_t> img(dec.components.size());
    for (size_t j = 0; j < dec.components.size(); ++j) {
      Mat moved = canonical_rowspace(dec.components[j].basis * X);
      bool found = false;
      for (size_t t = 0; t < canon.size(); ++t)
        if (moved == canon[t]) {
          img[j] = static_cast<uint32_t>(t);
          found = true;
          break;
        }
      if (!found)
        throw std::logic_error("homogeneous_components: generator does not permute components");
    }
    dec.action.push_back(Perm::from_images(img));
  }
  return dec;
}

std::optional<std::vector<Mat>> imprimitivity_witness(const CliffordDecomposition& dec) {
  if (dec.k() <= 1) return std::nullopt;
  std::vector<Mat> blocks;
  for (const auto& c : dec.components) blocks.push_back(c.basis);
  return blocks;
}

std::optional<TensorFactorization> tensor_factorize(const GModule& V, const Group& M,
                                                    const CliffordDecomposition& dec) {
  if (dec.k() != 1)
    throw std::invalid_argument("tensor_factorize: restriction not homogeneous");
  const Field& F = V.field();
  GModule rest{V.name + "|M", dec.mmats, M};
  auto factors = chop(rest);
  const GModule& w = factors[0].first;
  int m1 = factors[0].second, m2 = w.dim();
  if (m1 == 1 || m2 == 1) return std::nullopt;

  auto homs = rect_hom_space(w.mats, dec.mmats);
  Mat T(F, 0, V.dim());
  for (const auto& P : homs)
    for (int i = 0; i < P.rows(); ++i) T.append_row(P.row(i));
  if (T.rows() != V.dim()) return std::nullopt;  // endomorphism field obstruction
  auto Ti = T.inverse();
  if (!Ti) return std::nullopt;

  TensorFactorization tf;
  tf.m1 = m1;
  tf.m2 = m2;
  tf.change_of_basis = T;
  for (const auto& X : V.mats) {
    Mat Y = T * X * *Ti;
    // Y should be A (x) B in m1 x m1 blocks of size m2
    Mat B(F, m2, m2);
    int bs = -1, bt = -1;
    for (int s = 0; s < m1 && bs < 0; ++s)
      for (int t = 0; t < m1 && bs < 0; ++t) {
        for (int i = 0; i < m2; ++i)
          for (int j = 0; j < m2; ++j) B.set(i, j, Y.get(s * m2 + i, t * m2 + j));
        if (!B.is_zero()) {
          bs = s;
          bt = t;
        }
      }
    if (bs < 0) return std::nullopt;
    int i0 = -1, j0 = -1;
    for (int i = 0; i < m2 && i0 < 0; ++i)
      for (int j = 0; j < m2 && i0 < 0; ++j)
        if (B.get(i, j) != 0) {
          i0 = i;
          j0 = j;
        }
    Mat A(F, m1, m1);
    for (int s = 0; s < m1; ++s)
      for (int t = 0; t < m1; ++t)
        A.set(s, t, F.div(Y.get(s * m2 + i0, t * m2 + j0), B.get(i0, j0)));
    if (A.kron(B) != Y) return std::nullopt;
    tf.exact_left.push_back(A);
    tf.exact_right.push_back(B);
    tf.left.push_back(A.proj_normalized());
    tf.right.push_back(B.proj_normalized());
  }
  return tf;
}

bool is_nilpotent(const Group& g) {
  Group layer = g;
  uint64_t prev = 0;
  while (true) {
    uint64_t o = layer.order();
    if (o == 1) return true;
    if (o == prev) return false;
    prev = o;
    std::vector<GElem> comms;
    for (const auto& a : g.gens())
      for (const auto& b : layer.gens()) comms.push_back(commutator(a, b));
    layer = normal_closure(g, comms);
  }
}

FeitTits feit_tits_reduce(const Group& H, const Group& N, uint64_t seed) {
  (void)seed;
  FeitTits res;
  if (!normal_in(H, N)) {
    res.failed_clause = "normality";
    return res;
  }
  if (!is_nilpotent(N)) {
    res.failed_clause = "(i)";
    return res;
  }
  const Field& k = H.gens().at(0).mat().field();
  int m = H.gens().at(0).mat().rows();
  if (k.p() != 2 && (k.q() - 1) % 4 != 0) {
    res.failed_clause = "(ii)";  // no order-4 scalars available
    return res;
  }
  GModule nmod{"N_natural", member_mats(N), N};
  if (!is_irreducible(nmod)) {
    res.failed_clause = "(iii)";
    return res;
  }

  // Minimal noncentral normal subgroup of H inside N, while checking that
  // noncentral single-element closures are irreducible (the executable
  // slice of clause (iv)).
  auto central_in_h = [&](const GElem& e) {
    for (const auto& h : H.gens())
      if (!commutator(e, h).is_identity()) return false;
    return true;
  };
  Group e0;
  {
    bool have = false;
    for (const auto& e : N.elements()) {
      if (e.is_identity() || central_in_h(e)) continue;
      e0 = normal_closure(H, {e});
      have = true;
      break;
    }
    if (!have) {
      res.failed_clause = "(iv)";  // N central yet m >= 2
      return res;
    }
  }

  for (int iter = 0;; ++iter) {
    if (iter >= 10) {
      res.failed_clause = "classification: descent did not stabilize";
      return res;
    }
    // clause (iv) on this H-normal subgroup of N: noncentral, so it must be
    // an irreducible linear group
    if (!is_irreducible(GModule{"E0", member_mats(e0), e0})) {
      res.failed_clause = "(iv)";
      return res;
    }

    // E0 must be elementary abelian r^{2n} in the projective group.
    uint64_t o = e0.order();
    unsigned r = 2;
    while (o % r != 0) ++r;
    int twon = 0;
    {
      uint64_t t = o;
      while (t > 1) {
        if (t % r) {
          res.failed_clause = "classification: not an r-group";
          return res;
        }
        t /= r;
        ++twon;
      }
    }
    if (twon % 2 || r == k.p()) {
      res.failed_clause = "classification: bad rank or r = char k";
      return res;
    }
    for (const auto& a : e0.gens()) {
      GElem p = a;
      for (unsigned i = 1; i < r; ++i) p = p * a;
      if (!p.is_identity()) {
        res.failed_clause = "classification: not elementary abelian";
        return res;
      }
      for (const auto& b : e0.gens())
        if (!commutator(a, b).is_identity()) {
          res.failed_clause = "classification: not elementary abelian";
          return res;
        }
    }
    {
      uint64_t rn = 1;
      for (int i = 0; i < twon / 2; ++i) rn *= r;
      if (static_cast<uint64_t>(m) != rn) {
        res.failed_clause = "classification: dimension is not r^n";
        return res;
      }
    }
    if ((k.q() - 1) % r != 0) {
      res.failed_clause = "classification: no r-th roots of unity";
      return res;
    }
    unsigned omega = k.root_of_unity(r);

    const Field& Fr = Field::get(r);
    std::vector<GElem> basis;
    std::unordered_map<GElem, Mat, GElemHash> coords;
    coords.emplace(e0.gens().at(0).identity(), Mat(Fr, 1, twon));
    for (const auto& e : e0.elements()) {
      if (coords.count(e)) continue;
      int idx = static_cast<int>(basis.size());
      basis.push_back(e);
      std::unordered_map<GElem, Mat, GElemHash> next;
      for (const auto& [s, v] : coords) {
        GElem cur = s;
        Mat cv = v;
        for (unsigned j = 0; j < r; ++j) {
          next.emplace(cur, cv);
          cur = cur * e;
          cv.set(0, idx, Fr.add(cv.get(0, idx), 1));
        }
      }
      coords = std::move(next);
    }
    if (static_cast<int>(basis.size()) != twon || coords.size() != o) {
      res.failed_clause = "classification: basis extraction failed";
      return res;
    }

    // Alternating form from scalar commutators of matrix representatives.
    Mat form(Fr, twon, twon);
    for (int i = 0; i < twon; ++i)
      for (int j = 0; j < twon; ++j) {
        Mat a = basis[i].mat(), b = basis[j].mat();
        Mat c = *a.inverse() * *b.inverse() * a * b;
        if (!c.is_scalar() && !c.is_identity()) {
          res.failed_clause = "classification: non-scalar commutator";
          return res;
        }
        unsigned s = c.get(0, 0), pw = 1, val = r;
        for (unsigned t = 0; t < r; ++t) {
          if (pw == s) {
            val = t;
            break;
          }
          pw = k.mul(pw, omega);
        }
        if (val == r) {
          res.failed_clause = "classification: commutator outside the r-th roots";
          return res;
        }
        form.set(i, j, val);
      }
    if (form.rank() != twon) {
      res.failed_clause = "classification: degenerate commutator form";
      return res;
    }

    // Conjugation action of H on E0 in the chosen basis.
    std::vector<Mat> actm;
    std::vector<GElem> images;
    for (const auto& h : H.gens()) {
      Mat X(Fr, twon, twon);
      for (int i = 0; i < twon; ++i) {
        auto it = coords.find(conjugate(basis[i], h));
        if (it == coords.end()) {
          res.failed_clause = "classification: E0 not H-invariant";
          return res;
        }
        X.set_row(i, it->second);
      }
      if (X * form * X.transpose() != form) {
        res.failed_clause = "classification: form not preserved";
        return res;
      }
      actm.push_back(X);
      images.push_back(GElem::of_matrix(X));
    }

    // If the H-action on E0 is reducible, E0 was not minimal: descend to
    // the normal subgroup spanned by an invariant-subspace witness.
    Group sp_image(images, "mu_image");
    Mat witness;
    bool irr = is_irreducible(GModule{"mu_module", actm, sp_image}, &witness);
    if (!irr) {
      std::vector<GElem> sub;
      for (int i = 0; i < witness.rows(); ++i) {
        GElem e = e0.gens().at(0).identity();
        for (int j = 0; j < twon; ++j)
          for (unsigned c = 0; c < witness.get(i, j); ++c) e = e * basis[j];
        if (!central_in_h(e)) sub.push_back(e);
      }
      if (!sub.empty()) {
        e0 = normal_closure(H, sub);
        continue;
      }
    }

    res.r = r;
    res.n = twon / 2;
    res.form = form;
    res.images = images;
    res.sp_image = sp_image;
    Homomorphism mu(H, res.sp_image, res.images);
    Group ker = mu.kernel();
    res.kernel_order = ker.order();
    bool nk = ker.order() == N.order();
    for (const auto& g : N.gens()) nk = nk && ker.contains(g);
    res.faithful_mod_n = nk;
    res.irreducible = irr;
    res.ok = true;
    return res;
  }
}

}  // namespace grpx

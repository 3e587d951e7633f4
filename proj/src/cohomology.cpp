#include "grpx/cohomology.hpp"

#include <random>
#include <stdexcept>

#include "grpx/coset_table.hpp"

namespace grpx {
namespace {

// elementary abelian coordinates: basis elements and per-element coordinate
// rows over GF(p)
struct AbelianCoords {
  unsigned p = 2;
  std::vector<GElem> basis;
  std::unordered_map<GElem, Mat, GElemHash> coords;
  const Field* F = nullptr;
  int dim() const { return static_cast<int>(basis.size()); }
  GElem element(const Mat& v) const {
    GElem e = basis.at(0).identity();
    for (int j = 0; j < dim(); ++j)
      for (unsigned c = 0; c < v.get(0, j); ++c) e = e * basis[j];
    return e;
  }
};

AbelianCoords abelian_coords(const Group& k) {
  AbelianCoords ac;
  uint64_t o = k.order();
  unsigned p = 2;
  while (o % p != 0) ++p;
  ac.p = p;
  ac.F = &Field::get(p);
  auto elems = k.elements();
  ac.coords.emplace(k.identity(), Mat(*ac.F, 1, 0));
  // grow: coordinate rows are extended as the basis grows
  std::vector<GElem> order_of_insert;
  for (const auto& e : elems) {
    if (ac.coords.count(e)) continue;
    int idx = ac.dim();
    ac.basis.push_back(e);
    std::unordered_map<GElem, Mat, GElemHash> next;
    for (auto& [s, v] : ac.coords) {
      GElem cur = s;
      for (unsigned j = 0; j < p; ++j) {
        Mat cv(*ac.F, 1, idx + 1);
        for (int t = 0; t < idx; ++t) cv.set(0, t, v.get(0, t));
        cv.set(0, idx, j);
        next.emplace(cur, cv);
        cur = cur * e;
      }
    }
    ac.coords = std::move(next);
  }
  if (ac.coords.size() != o) throw std::invalid_argument("kernel is not elementary abelian");
  // verify exponent p and commutativity on the basis
  for (const auto& a : ac.basis) {
    GElem q = a;
    for (unsigned i = 1; i < p; ++i) q = q * a;
    if (!q.is_identity()) throw std::invalid_argument("kernel is not elementary abelian");
    for (const auto& b : ac.basis)
      if (!commutator(a, b).is_identity())
        throw std::invalid_argument("kernel is not elementary abelian");
  }
  // pad stored coordinate rows to full width
  int d = ac.dim();
  for (auto& [e, v] : ac.coords)
    if (v.cols() != d) {
      Mat w(*ac.F, 1, d);
      for (int t = 0; t < v.cols(); ++t) w.set(0, t, v.get(0, t));
      v = w;
    }
  return ac;
}

}  // namespace

const Mat& ElementAction::at(const GElem& e) const {
  auto it = index.find(e);
  if (it == index.end()) throw std::invalid_argument("element_action: element not found");
  return mats[it->second];
}

int ElementAction::index_of(const GElem& e) const {
  auto it = index.find(e);
  return it == index.end() ? -1 : it->second;
}

ElementAction element_action(const Group& g, const GModule& m, size_t cap) {
  if (m.ngens() != g.gens().size())
    throw std::invalid_argument("element_action: generator count mismatch");
  ElementAction a;
  GElem id = g.identity();
  a.elems.push_back(id);
  a.mats.push_back(Mat::identity(m.field(), m.dim()));
  a.index.emplace(id, 0);
  for (size_t head = 0; head < a.elems.size(); ++head) {
    GElem cur = a.elems[head];
    Mat cm = a.mats[head];
    for (size_t i = 0; i < m.ngens(); ++i) {
      GElem nxt = cur * g.gens()[i];
      Mat nm = cm * m.mats[i];
      auto it = a.index.find(nxt);
      if (it == a.index.end()) {
        if (a.elems.size() >= cap) throw std::invalid_argument("element_action: cap exceeded");
        a.index.emplace(nxt, static_cast<int>(a.elems.size()));
        a.elems.push_back(nxt);
        a.mats.push_back(nm);
      } else if (a.mats[it->second] != nm) {
        throw std::logic_error("element_action: matrices are not a representation");
      }
    }
  }
  return a;
}

GModule restrict_module(const Group& g, const GModule& m, const Group& sub) {
  ElementAction a = element_action(g, m);
  std::vector<Mat> mats;
  for (const auto& s : sub.gens()) mats.push_back(a.at(s));
  return GModule{m.name + "|" + sub.name(), mats, sub};
}

Mat CocycleSpace::value(const Mat& flat, int i, int j) const {
  int d = m.dim(), n = static_cast<int>(act.elems.size());
  Mat out(m.field(), 1, d);
  if (i == 0 || j == 0) return out;
  int base = ((i - 1) * (n - 1) + (j - 1)) * d;
  for (int t = 0; t < d; ++t) out.set(0, t, flat.get(0, base + t));
  return out;
}

std::vector<Mat> CocycleSpace::h2_basis() const {
  EchelonBasis ebB(m.field(), z2.cols() ? z2.cols() : 1);
  for (int i = 0; i < b2.rows(); ++i) ebB.insert(b2.row(i));
  EchelonBasis ebH(m.field(), z2.cols() ? z2.cols() : 1);
  std::vector<Mat> out;
  for (int i = 0; i < z2.rows(); ++i) {
    Mat rem = ebB.reduce(z2.row(i));
    if (!rem.is_zero() && ebH.insert(rem)) out.push_back(rem);
  }
  return out;
}

CocycleSpace h2_sylow(const Group& s, const GModule& m) {
  if (s.order() > 256) throw std::invalid_argument("h2_sylow: |S| > 256");
  CocycleSpace cs;
  cs.s = s;
  cs.m = m;
  cs.act = element_action(s, m);
  const Field& F = m.field();
  int n = static_cast<int>(cs.act.elems.size());
  int d = m.dim();
  int cols = (n - 1) * (n - 1) * d;
  if (n == 1) {
    cs.z2 = Mat(F, 0, 1);
    cs.b2 = Mat(F, 0, 1);
    return cs;
  }
  auto pcol = [&](int i, int j) { return ((i - 1) * (n - 1) + (j - 1)) * d; };
  // product index table
  std::vector<std::vector<int>> prod(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      prod[i][j] = cs.act.index_of(cs.act.elems[i] * cs.act.elems[j]);

  std::vector<int> genidx;
  for (const auto& g : s.gens()) {
    int gi = cs.act.index_of(g);
    if (gi > 0) genidx.push_back(gi);
  }

  // cocycle identity rows, with the third slot restricted to generators
  // (sufficient by induction on word length)
  Mat sys(F, (n - 1) * (n - 1) * static_cast<int>(genidx.size()) * d, cols);
  int row = 0;
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      for (int c : genidx) {
        int ab = prod[a][b], bc = prod[b][c], abc = prod[ab][c];
        const Mat& rc = cs.act.mats[c];
        for (int t = 0; t < d; ++t) {
          // alpha(a,b) rho(c) - alpha(b,c) + alpha(ab,c) - alpha(a,bc) = 0
          for (int u = 0; u < d; ++u)
            sys.set(row, pcol(a, b) + u, F.add(sys.get(row, pcol(a, b) + u), rc.get(u, t)));
          sys.set(row, pcol(b, c) + t, F.sub(sys.get(row, pcol(b, c) + t), 1));
          if (ab != 0) sys.set(row, pcol(ab, c) + t, F.add(sys.get(row, pcol(ab, c) + t), 1));
          if (bc != 0) sys.set(row, pcol(a, bc) + t, F.sub(sys.get(row, pcol(a, bc) + t), 1));
          (void)abc;
          ++row;
        }
      }
  cs.z2 = sys.nullspace();

  // coboundaries of normalized 1-cochains
  EchelonBasis eb(F, cols);
  for (int k = 1; k < n; ++k)
    for (int sc = 0; sc < d; ++sc) {
      Mat img(F, 1, cols);
      for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b) {
          // (delta beta)(a,b) = beta(a) rho(b) + beta(b) - beta(ab)
          if (a == k) {
            const Mat& rb = cs.act.mats[b];
            for (int t = 0; t < d; ++t)
              img.set(0, pcol(a, b) + t, F.add(img.get(0, pcol(a, b) + t), rb.get(sc, t)));
          }
          if (b == k)
            img.set(0, pcol(a, b) + sc, F.add(img.get(0, pcol(a, b) + sc), 1));
          if (prod[a][b] == k)
            img.set(0, pcol(a, b) + sc, F.sub(img.get(0, pcol(a, b) + sc), 1));
        }
      eb.insert(img);
    }
  cs.b2 = eb.basis_matrix();

  // B^2 must lie inside Z^2
  EchelonBasis z(F, cols);
  for (int i = 0; i < cs.z2.rows(); ++i) z.insert(cs.z2.row(i));
  for (int i = 0; i < cs.b2.rows(); ++i)
    if (!z.contains(cs.b2.row(i)))
      throw std::logic_error("h2_sylow: coboundary outside cocycle space");
  return cs;
}

int stable_subspace(const Group& g, const Group& s, const GModule& m,
                    const CocycleSpace& cs) {
  (void)s;  // the Sylow subgroup is carried inside cs
  auto hb = cs.h2_basis();
  int t = static_cast<int>(hb.size());
  if (t == 0) return 0;
  const Field& F = m.field();
  int d = m.dim();
  ElementAction actG = element_action(g, m);
  int ns = static_cast<int>(cs.act.elems.size());

  Mat space = Mat::identity(F, t);
  std::vector<char> covered(actG.elems.size(), 0);
  for (size_t gi = 0; gi < actG.elems.size(); ++gi) {
    if (covered[gi]) continue;
    const GElem& rep = actG.elems[gi];
    bool in_s = cs.act.index_of(rep) >= 0;
    // mark the double coset S rep S
    for (int i = 0; i < ns; ++i) {
      GElem left = cs.act.elems[i] * rep;
      for (int j = 0; j < ns; ++j) {
        int pi = actG.index_of(left * cs.act.elems[j]);
        if (pi < 0) throw std::invalid_argument("stable_subspace: s is not a subgroup of g");
        covered[pi] = 1;
      }
    }
    if (in_s) continue;  // trivial fusion condition

    // U = S intersect rep^{-1} S rep, with images g u g^{-1} recorded
    GElem gin = rep.inverse();
    std::vector<int> uidx, uimg;  // indices into cs.act.elems
    for (int i = 0; i < ns; ++i) {
      GElem conj = rep * cs.act.elems[i] * gin;  // g u g^{-1}
      int ci = cs.act.index_of(conj);
      if (ci >= 0) {
        uidx.push_back(i);
        uimg.push_back(ci);
      }
    }
    int nu = static_cast<int>(uidx.size());
    if (nu <= 1) continue;
    // local indices: position in uidx; element 0 is the identity
    std::vector<int> pos(ns, -1);
    for (int i = 0; i < nu; ++i) pos[uidx[i]] = i;
    auto uprod = [&](int i, int j) {
      int p = cs.act.index_of(cs.act.elems[uidx[i]] * cs.act.elems[uidx[j]]);
      return pos[p];
    };
    int cols = (nu - 1) * (nu - 1) * d;
    auto ucol = [&](int i, int j) { return ((i - 1) * (nu - 1) + (j - 1)) * d; };

    // B^2(U, M)
    EchelonBasis ebu(F, cols);
    for (int k = 1; k < nu; ++k)
      for (int sc = 0; sc < d; ++sc) {
        Mat img(F, 1, cols);
        for (int a = 1; a < nu; ++a)
          for (int b = 1; b < nu; ++b) {
            if (a == k) {
              const Mat& rb = cs.act.mats[uidx[b]];
              for (int tt = 0; tt < d; ++tt)
                img.set(0, ucol(a, b) + tt, F.add(img.get(0, ucol(a, b) + tt), rb.get(sc, tt)));
            }
            if (b == k) img.set(0, ucol(a, b) + sc, F.add(img.get(0, ucol(a, b) + sc), 1));
            if (uprod(a, b) == k)
              img.set(0, ucol(a, b) + sc, F.sub(img.get(0, ucol(a, b) + sc), 1));
          }
        ebu.insert(img);
      }

    // residues of the fusion differences of the H^2 basis
    const Mat& rg = actG.at(rep);
    Mat D(F, t, cols);
    for (int i = 0; i < t; ++i) {
      Mat row(F, 1, cols);
      for (int a = 1; a < nu; ++a)
        for (int b = 1; b < nu; ++b) {
          Mat va = cs.value(hb[i], uidx[a], uidx[b]);
          Mat vb = cs.value(hb[i], uimg[a], uimg[b]) * rg;
          for (int tt = 0; tt < d; ++tt)
            row.set(0, ucol(a, b) + tt, F.sub(va.get(0, tt), vb.get(0, tt)));
        }
      D.set_row(i, ebu.reduce(row));
    }
    Mat K = space * D;
    Mat nu2 = K.transpose().nullspace();
    space = nu2 * space;
    if (space.rows() == 0) return 0;
  }
  return space.rows();
}

std::optional<std::vector<GElem>> split_check(const Group& e, const Group& k,
                                              const Presentation& pres,
                                              const std::vector<GElem>& lifts) {
  if (lifts.size() != pres.gens.size())
    throw std::invalid_argument("split_check: one lift per presentation generator required");
  AbelianCoords ac = abelian_coords(k);
  const Field& F = *ac.F;
  int d = ac.dim();
  size_t ng = lifts.size();

  // conjugation action of the quotient generators on K
  std::vector<Mat> action;
  for (const auto& l : lifts) {
    Mat A(F, d, d);
    for (int j = 0; j < d; ++j) {
      auto it = ac.coords.find(conjugate(ac.basis[j], l));
      if (it == ac.coords.end())
        throw std::invalid_argument("split_check: kernel not normalized by lifts");
      A.set_row(j, it->second);
    }
    action.push_back(A);
  }

  int nrel = static_cast<int>(pres.relators.size());
  Mat sys(F, nrel * d, static_cast<int>(ng) * d);
  Mat rhs(F, 1, nrel * d);
  for (int r = 0; r < nrel; ++r) {
    GElem defect = pres.relators[r].evaluate(lifts);
    auto it = ac.coords.find(defect);
    if (it == ac.coords.end()) throw std::invalid_argument("split_check: defect not in kernel");
    auto fox = fox_coefficients(pres.relators[r], action);
    for (int t = 0; t < d; ++t) {
      rhs.set(0, r * d + t, F.neg(it->second.get(0, t)));
      for (size_t x = 0; x < ng; ++x)
        for (int sc = 0; sc < d; ++sc)
          sys.set(r * d + t, static_cast<int>(x) * d + sc, fox[x].get(sc, t));
    }
  }
  auto sol = sys.solve(rhs);
  if (!sol) return std::nullopt;

  std::vector<GElem> comp;
  for (size_t x = 0; x < ng; ++x) {
    Mat dx(F, 1, d);
    for (int sc = 0; sc < d; ++sc) dx.set(0, sc, sol->get(0, static_cast<int>(x) * d + sc));
    comp.push_back(lifts[x] * ac.element(dx));
  }
  Group c(comp, "complement");
  if (c.order() != e.order() / k.order())
    throw std::logic_error("split_check: solved complement has wrong order");
  for (const auto& ke : k.elements())
    if (!ke.is_identity() && c.contains(ke))
      throw std::logic_error("split_check: complement meets the kernel");
  return comp;
}

MinimalityReport minimal_extension_check(const Group& e, const Group& k,
                                         uint64_t budget, uint64_t seed) {
  auto kelems = k.elements();
  size_t r = e.gens().size();
  uint64_t total = 1;
  bool exhaustive = true;
  for (size_t i = 0; i < r; ++i) {
    total *= kelems.size();
    if (total > budget) {
      exhaustive = false;
      break;
    }
  }
  std::mt19937_64 rng(seed);
  uint64_t trials = exhaustive ? total : budget;
  for (uint64_t t = 0; t < trials; ++t) {
    std::vector<GElem> gens;
    uint64_t code = t;
    for (size_t i = 0; i < r; ++i) {
      size_t pick = exhaustive ? code % kelems.size() : rng() % kelems.size();
      code /= kelems.size();
      gens.push_back(e.gens()[i] * kelems[pick]);
    }
    Group h(gens);
    if (h.order() < e.order())
      return {false, "proper supplement of order " + std::to_string(h.order()) +
                         " found (generator translate tuple " + std::to_string(t) + ")"};
  }
  return {true, exhaustive
                    ? "exhaustive: all " + std::to_string(trials) +
                          " kernel translates of the generators generate the full group"
                    : "heuristic: " + std::to_string(trials) + " sampled translates"};
}

Presentation ExtensionSpec::combined_presentation() const {
  Presentation p;
  p.name = quotient.name + "_ext";
  p.gens = quotient.gens;
  int d = action.empty() ? (tails.empty() ? 0 : tails[0].cols()) : action[0].rows();
  unsigned pr = action.empty() ? tails.at(0).field().p() : action[0].field().p();
  int base = static_cast<int>(p.gens.size());
  for (int j = 0; j < d; ++j) p.gens.push_back("k" + std::to_string(j));
  for (int j = 0; j < d; ++j) {
    p.relators.push_back(Word::of_gen(base + j).pow(static_cast<int>(pr)));
    for (int i = 0; i < j; ++i) {
      Word w = Word::of_gen(base + i, -1) * Word::of_gen(base + j, -1) *
               Word::of_gen(base + i) * Word::of_gen(base + j);
      p.relators.push_back(w);
    }
  }
  for (size_t g = 0; g < quotient.gens.size(); ++g)
    for (int j = 0; j < d; ++j) {
      Word w = Word::of_gen(static_cast<int>(g), -1) * Word::of_gen(base + j) *
               Word::of_gen(static_cast<int>(g));
      for (int t = 0; t < d; ++t)
        w = w * Word::of_gen(base + t).pow(-static_cast<int>(action[g].get(j, t)));
      p.relators.push_back(w);
    }
  for (size_t r = 0; r < quotient.relators.size(); ++r) {
    Word w = quotient.relators[r];
    for (int t = 0; t < d; ++t)
      w = w * Word::of_gen(base + t).pow(-static_cast<int>(tails[r].get(0, t)));
    p.relators.push_back(w);
  }
  return p;
}

Group ExtensionSpec::instantiate() const {
  CosetTable q = todd_coxeter(quotient);
  Presentation comb = combined_presentation();
  CosetTable full = todd_coxeter(comb);
  int d = action.empty() ? (tails.empty() ? 0 : tails[0].cols()) : action[0].rows();
  unsigned pr = action.empty() ? tails.at(0).field().p() : action[0].field().p();
  uint64_t want = q.index;
  for (int j = 0; j < d; ++j) want *= pr;
  Group g = full.coset_group(quotient.name + "_ext");
  if (g.order() != want) throw std::logic_error("instantiate: inconsistent tails");
  return g;
}

ExtensionSpec extension_spec_from_cocycle(const CocycleSpace& cs, const Mat& flat,
                                          const Presentation& pres) {
  if (pres.gens.size() != cs.s.gens().size())
    throw std::invalid_argument("extension_spec_from_cocycle: generator mismatch");
  ExtensionSpec spec;
  spec.quotient = pres;
  spec.action = cs.m.mats;
  const Field& F = cs.m.field();
  int d = cs.m.dim();
  for (const auto& rel : pres.relators) {
    Mat v(F, 1, d);
    GElem cur = cs.s.identity();
    for (const auto& lit : rel.lits()) {
      const GElem& ge = cs.s.gens()[lit.gen];
      const Mat& A = cs.m.mats[lit.gen];
      if (lit.exp > 0) {
        // (v, cur)(0, g) = (v rho(g) + alpha(cur, g), cur g)
        v = v * A + cs.value(flat, cs.act.index_of(cur), cs.act.index_of(ge));
      } else {
        GElem gi = ge.inverse();
        Mat Ai = *A.inverse();
        Mat w = cs.value(flat, cs.act.index_of(ge), cs.act.index_of(gi)).scaled(F.neg(1));
        v = v * Ai + w + cs.value(flat, cs.act.index_of(cur), cs.act.index_of(gi));
        cur = cur * gi;
        continue;
      }
      cur = cur * ge;
    }
    if (!cur.is_identity())
      throw std::invalid_argument("extension_spec_from_cocycle: relator not satisfied in S");
    spec.tails.push_back(v);
  }
  return spec;
}

Group extension_group(const CocycleSpace& cs, const Mat& flat) {
  const Field& F = cs.m.field();
  int d = cs.m.dim(), n = static_cast<int>(cs.act.elems.size());
  unsigned p = F.p();
  if (F.e() != 1) throw std::invalid_argument("extension_group: prime field modules only");
  uint64_t nv = 1;
  for (int i = 0; i < d; ++i) nv *= p;
  uint64_t deg = nv * n;
  if (deg > 100000) throw std::invalid_argument("extension_group: degree cap");
  auto vec_of = [&](uint64_t idx) {
    Mat v(F, 1, d);
    for (int i = 0; i < d; ++i) {
      v.set(0, i, static_cast<unsigned>(idx % p));
      idx /= p;
    }
    return v;
  };
  auto idx_of = [&](const Mat& v) {
    uint64_t idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * p + v.get(0, i);
    return idx;
  };
  std::vector<GElem> gens;
  // (v, a)(0, g) = (v rho(g) + alpha(a, g), a g)
  for (const auto& g : cs.s.gens()) {
    int gi = cs.act.index_of(g);
    std::vector<uint32_t> img(deg);
    for (uint64_t vi = 0; vi < nv; ++vi) {
      Mat v = vec_of(vi);
      for (int a = 0; a < n; ++a) {
        Mat w = v * cs.act.mats[gi] + cs.value(flat, a, gi);
        int an = cs.act.index_of(cs.act.elems[a] * g);
        img[vi * n + a] = static_cast<uint32_t>(idx_of(w) * n + an);
      }
    }
    gens.push_back(GElem::of_perm(Perm::from_images(img)));
  }
  // (v, a)(e_j, 1) = (v + e_j, a)
  for (int j = 0; j < d; ++j) {
    std::vector<uint32_t> img(deg);
    for (uint64_t vi = 0; vi < nv; ++vi) {
      Mat v = vec_of(vi);
      v.set(0, j, F.add(v.get(0, j), 1));
      for (int a = 0; a < n; ++a) img[vi * n + a] = static_cast<uint32_t>(idx_of(v) * n + a);
    }
    gens.push_back(GElem::of_perm(Perm::from_images(img)));
  }
  return Group(gens, cs.s.name() + "_ext");
}

}  // namespace grpx

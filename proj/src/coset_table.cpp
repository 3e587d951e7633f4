#include "grpx/coset_table.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace grpx {

namespace {

// Column encoding: generator g acts in column 2g, its inverse in 2g+1.
inline int invcol(int c) { return c ^ 1; }

std::vector<int> word_cols(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& l : w.lits()) out.push_back(2 * l.gen + (l.exp < 0 ? 1 : 0));
  return out;
}

// HLT enumerator with immediate coincidence processing.
struct Enumerator {
  int cols, cap;
  std::vector<std::vector<int>> tab;
  std::vector<int> p;  // union-find, minimum element is the representative
  std::deque<int> cq;
  int live = 0;

  Enumerator(int ngens, int cap_) : cols(2 * ngens), cap(cap_) { new_coset(); }

  int new_coset() {
    if (live >= cap) throw std::runtime_error("todd_coxeter: coset cap exceeded");
    tab.emplace_back(cols, -1);
    p.push_back(static_cast<int>(p.size()));
    ++live;
    return static_cast<int>(tab.size()) - 1;
  }

  bool alive(int a) const { return p[a] == a; }

  int rep(int k) {
    int r = k;
    while (p[r] != r) r = p[r];
    while (p[k] != r) {
      int nxt = p[k];
      p[k] = r;
      k = nxt;
    }
    return r;
  }

  void set_edge(int a, int c, int b) {
    tab[a][c] = b;
    tab[b][invcol(c)] = a;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    p[b] = a;
    --live;
    cq.push_back(b);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!cq.empty()) {
      int e = cq.front();
      cq.pop_front();
      for (int c = 0; c < cols; ++c) {
        int f = tab[e][c];
        if (f < 0) continue;
        // only sever the back-edge if it still points at the dead coset
        if (tab[f][invcol(c)] == e) tab[f][invcol(c)] = -1;
        int mu = rep(e), nu = rep(f);
        int ex = tab[mu][c];
        if (ex >= 0) {
          merge(nu, ex);
        } else {
          int ex2 = tab[nu][invcol(c)];
          if (ex2 >= 0)
            merge(mu, ex2);
          else
            set_edge(mu, c, nu);
        }
      }
    }
  }

  // Scan word w at coset alpha; with fill, define cosets to force closure.
  void scan(int alpha, const std::vector<int>& w, bool fill) {
    int n = static_cast<int>(w.size());
    int f = alpha, b = alpha, i = 0, j = n - 1;
    while (true) {
      while (i <= j && tab[f][w[i]] >= 0) f = rep(tab[f][w[i++]]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && tab[b][invcol(w[j])] >= 0) b = rep(tab[b][invcol(w[j--])]);
      if (j < i) {
        if (f != b) coincidence(f, b);
        return;
      }
      if (i == j) {
        set_edge(f, w[i], b);
        return;
      }
      if (!fill) return;
      int x = new_coset();
      set_edge(f, w[i], x);
      f = x;
      ++i;
    }
  }

  // Coincidence-only pass over every live coset: recovers table space when
  // the fill strategy outruns the deductions.
  void lookahead(const std::vector<std::vector<int>>& rels) {
    for (int alpha = 0; alpha < static_cast<int>(tab.size()); ++alpha) {
      if (!alive(alpha)) continue;
      for (const auto& r : rels) {
        scan(alpha, r, false);
        if (!alive(alpha)) break;
      }
    }
  }
};

}  // namespace

CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& sub, int cap) {
  if (cap < 1) throw std::invalid_argument("todd_coxeter: cap must be positive");
  int ng = static_cast<int>(pres.gens.size());
  std::vector<std::vector<int>> rels, subs;
  for (const auto& r : pres.relators) rels.push_back(word_cols(r));
  for (const auto& s : sub) subs.push_back(word_cols(s));

  Enumerator en(ng, cap);
  // headroom so a lookahead always fires before the cap can be hit mid-scan
  size_t margin = 2 * en.cols + 4;
  for (const auto& r : rels) margin += 2 * r.size();
  size_t threshold = std::min<size_t>(cap > (int)margin ? cap - margin : 1, 20000);
  for (const auto& s : subs) en.scan(0, s, true);
  bool closed = false;
  while (!closed) {
    for (int alpha = 0; alpha < static_cast<int>(en.tab.size()); ++alpha) {
      if (!en.alive(alpha)) continue;
      if (static_cast<size_t>(en.live) >= threshold) {
        en.lookahead(rels);
        size_t want = std::max<size_t>(threshold, 2 * static_cast<size_t>(en.live));
        threshold = std::min<size_t>(want, cap > (int)margin ? cap - margin : 1);
        if (static_cast<size_t>(en.live) >= threshold)
          throw std::runtime_error("todd_coxeter: coset cap exceeded");
        if (!en.alive(alpha)) continue;
      }
      for (const auto& r : rels) {
        en.scan(alpha, r, true);
        if (!en.alive(alpha)) break;
      }
      if (!en.alive(alpha)) continue;
      for (int c = 0; c < en.cols; ++c)
        if (en.alive(alpha) && en.tab[alpha][c] < 0) {
          int x = en.new_coset();
          en.set_edge(alpha, c, x);
        }
    }
    closed = true;
    for (int alpha = 0; alpha < static_cast<int>(en.tab.size()) && closed; ++alpha) {
      if (!en.alive(alpha)) continue;
      for (int c = 0; c < en.cols; ++c)
        if (en.tab[alpha][c] < 0) {
          closed = false;
          break;
        }
    }
  }

  // compress live cosets
  std::vector<int> remap(en.tab.size(), -1);
  int n = 0;
  for (int a = 0; a < static_cast<int>(en.tab.size()); ++a)
    if (en.alive(a)) remap[a] = n++;
  CosetTable t;
  t.pres = pres;
  t.subgens = sub;
  t.index = n;
  t.gen_action.assign(ng, std::vector<uint32_t>(n));
  for (int a = 0; a < static_cast<int>(en.tab.size()); ++a) {
    if (!en.alive(a)) continue;
    for (int g = 0; g < ng; ++g)
      t.gen_action[g][remap[a]] = static_cast<uint32_t>(remap[en.rep(en.tab[a][2 * g])]);
  }
  return t;
}

Perm CosetTable::gen_perm(int g) const {
  return Perm::from_images(
      std::vector<uint32_t>(gen_action[g].begin(), gen_action[g].end()));
}

Group CosetTable::coset_group(const std::string& name) const {
  std::vector<GElem> gens;
  for (size_t g = 0; g < gen_action.size(); ++g) gens.push_back(GElem::of_perm(gen_perm(g)));
  return Group(gens, name.empty() ? pres.name + "_cosets" : name);
}

bool verify_presentation(const Presentation& p, const Group& reference) {
  if (p.gens.size() != reference.gens().size()) return false;
  for (const auto& r : p.relators)
    if (!r.evaluate(reference.gens()).is_identity()) return false;
  CosetTable t = todd_coxeter(p, {});
  return static_cast<uint64_t>(t.index) == reference.order();
}

}  // namespace grpx

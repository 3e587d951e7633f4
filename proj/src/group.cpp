#include "grpx/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace grpx {

namespace {

uint64_t mix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Point actions.  A point is a 64-bit key: component id in the top 8 bits,
// then either a permutation point index or a packed vector over the
// component's field.  Packing is invertible, so orbits store keys only.

struct CompDesc {
  bool is_perm = true;
  int degree = 0;            // perm component
  const Field* F = nullptr;  // vector component
  int dim = 0;
  bool proj = false;
  int bits = 0;  // bits per vector entry
};

struct Action {
  std::vector<CompDesc> comps;
  std::vector<std::vector<int>> paths;  // leaf path into the element tree
  std::vector<int> active;              // component ids, in base-candidate order

  static void flatten(const GElem& sample, std::vector<int>& path, Action& a) {
    if (sample.kind() == ElemKind::direct) {
      for (size_t i = 0; i < sample.parts().size(); ++i) {
        path.push_back(static_cast<int>(i));
        flatten(sample.parts()[i], path, a);
        path.pop_back();
      }
      return;
    }
    CompDesc d;
    if (sample.kind() == ElemKind::perm) {
      d.is_perm = true;
      d.degree = sample.perm().degree();
      if (d.degree >= (1 << 24)) throw std::runtime_error("Action: degree too large");
    } else {
      d.is_perm = false;
      d.F = &sample.mat().field();
      d.dim = sample.mat().rows();
      d.proj = sample.kind() == ElemKind::proj_matrix;
      d.bits = 1;
      while ((1u << d.bits) < d.F->q()) ++d.bits;
      if (d.bits * d.dim > 56) throw std::runtime_error("Action: point keys exceed 56 bits");
    }
    a.comps.push_back(d);
    a.paths.push_back(path);
  }

  static Action natural(const GElem& sample) {
    Action a;
    std::vector<int> p;
    flatten(sample, p, a);
    a.active.resize(a.comps.size());
    std::iota(a.active.begin(), a.active.end(), 0);
    return a;
  }

  // Action restricted to the given components (the others are shadows).
  static Action restricted(const GElem& sample, std::vector<int> active_comps) {
    Action a = natural(sample);
    a.active = std::move(active_comps);
    return a;
  }

  const GElem& leaf(const GElem& g, int comp) const {
    const GElem* cur = &g;
    for (int i : paths[comp]) cur = &cur->parts()[i];
    return *cur;
  }

  uint64_t apply(const GElem& g, uint64_t key) const {
    int c = static_cast<int>(key >> 56);
    const CompDesc& d = comps[c];
    const GElem& el = leaf(g, c);
    uint64_t tag = static_cast<uint64_t>(c) << 56;
    uint64_t payload = key & ((1ull << 56) - 1);
    if (d.is_perm) return tag | el.perm()[static_cast<uint32_t>(payload)];
    const Mat& M = el.mat();
    if (d.F->q() == 2) {
      // v * M = xor of the rows of M selected by the bits of v
      uint64_t out = 0;
      for (int i = 0; i < d.dim; ++i)
        if (payload >> i & 1) out ^= M.row_key(i);
      return tag | out;
    }
    const Field& F = *d.F;
    unsigned v[56], w[56];
    uint64_t mask = (1ull << d.bits) - 1;
    for (int i = 0; i < d.dim; ++i)
      v[i] = static_cast<unsigned>(payload >> (i * d.bits) & mask);
    for (int j = 0; j < d.dim; ++j) {
      unsigned s = 0;
      for (int i = 0; i < d.dim; ++i)
        if (v[i]) s = F.add(s, F.mul(v[i], M.get(i, j)));
      w[j] = s;
    }
    if (d.proj) {
      unsigned lead = 0;
      for (int i = 0; i < d.dim; ++i)
        if (w[i]) {
          lead = w[i];
          break;
        }
      if (lead > 1) {
        unsigned li = F.inv(lead);
        for (int i = 0; i < d.dim; ++i) w[i] = F.mul(w[i], li);
      }
    }
    uint64_t out = 0;
    for (int i = 0; i < d.dim; ++i) out |= static_cast<uint64_t>(w[i]) << (i * d.bits);
    return tag | out;
  }

  // Candidate base points: all permutation points; for vector components
  // the standard basis vectors plus the all-ones vector (an element fixing
  // every <e_i> and <1,...,1> projectively is scalar, hence trivial here).
  std::vector<uint64_t> base_candidates() const {
    std::vector<uint64_t> out;
    for (int c : active) {
      const CompDesc& d = comps[c];
      uint64_t tag = static_cast<uint64_t>(c) << 56;
      if (d.is_perm) {
        for (int i = 0; i < d.degree; ++i) out.push_back(tag | static_cast<uint64_t>(i));
        continue;
      }
      for (int i = 0; i < d.dim; ++i) out.push_back(tag | (1ull << (i * d.bits)));
      uint64_t ones = 0;
      for (int i = 0; i < d.dim; ++i) ones |= 1ull << (i * d.bits);
      out.push_back(tag | ones);
    }
    return out;
  }

  bool trivial_on(const GElem& g) const {
    for (int c : active)
      if (!leaf(g, c).is_identity()) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Seeded product replacement.

struct ProdRepl {
  std::vector<GElem> slots;
  GElem acc;
  uint64_t s;

  ProdRepl(const std::vector<GElem>& gens, const GElem& id, uint64_t seed)
      : acc(id), s(seed) {
    for (const auto& g : gens)
      if (!g.is_identity()) slots.push_back(g);
    if (slots.empty()) slots.push_back(id);
    size_t n = slots.size();
    while (slots.size() < 8) slots.push_back(slots[slots.size() % n]);
    for (int i = 0; i < 60; ++i) step();
  }

  void step() {
    size_t i = mix64(s) % slots.size();
    size_t j = mix64(s) % slots.size();
    while (j == i) j = mix64(s) % slots.size();
    uint64_t bits = mix64(s);
    GElem other = (bits & 2) ? slots[j] : slots[j].inverse();
    slots[i] = (bits & 1) ? slots[i] * other : other * slots[i];
    acc = acc * slots[i];
  }

  GElem next() {
    step();
    return acc;
  }
};

// ---------------------------------------------------------------------------
// Base and strong generating set (randomized Schreier-Sims).  Strong
// generators may carry shadow components the action ignores; residues that
// act trivially but are not the identity are collected for the caller
// (kernel computation for homomorphisms).

struct Bsgs {
  Action act;
  GElem id;
  std::vector<GElem> sgens;
  std::vector<int> glevel;  // length of the base prefix the generator fixes
  std::vector<uint64_t> base;
  std::vector<std::unordered_map<uint64_t, std::pair<int32_t, uint64_t>>> orbits;
  std::vector<uint64_t> cand;

  void init(Action a, const GElem& ident) {
    act = std::move(a);
    id = ident;
    cand = act.base_candidates();
  }

  uint64_t order() const {
    unsigned __int128 o = 1;
    for (const auto& orb : orbits) {
      o *= orb.size();
      if (o > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::runtime_error("Bsgs: order overflows 64 bits");
    }
    return static_cast<uint64_t>(o);
  }

  GElem coset_rep(int lvl, uint64_t pt) const {
    std::vector<int32_t> genidx;
    uint64_t cur = pt;
    while (true) {
      const auto& pr = orbits[lvl].at(cur);
      if (pr.first < 0) break;
      genidx.push_back(pr.first);
      cur = pr.second;
    }
    GElem u = id;
    for (auto it = genidx.rbegin(); it != genidx.rend(); ++it) u = u * sgens[*it];
    return u;
  }

  GElem sift(GElem g) const {
    for (size_t i = 0; i < base.size(); ++i) {
      uint64_t pt = act.apply(g, base[i]);
      if (pt == base[i]) continue;
      auto it = orbits[i].find(pt);
      if (it == orbits[i].end()) return g;
      g = g * coset_rep(static_cast<int>(i), pt).inverse();
    }
    return g;
  }

  void extend_orbit(int lvl, int newgen) {
    std::deque<uint64_t> frontier;
    {
      std::vector<uint64_t> pts;
      pts.reserve(orbits[lvl].size());
      for (const auto& kv : orbits[lvl]) pts.push_back(kv.first);
      for (uint64_t p : pts) {
        uint64_t q = act.apply(sgens[newgen], p);
        if (orbits[lvl].emplace(q, std::make_pair(static_cast<int32_t>(newgen), p)).second)
          frontier.push_back(q);
      }
    }
    while (!frontier.empty()) {
      uint64_t p = frontier.front();
      frontier.pop_front();
      for (size_t k = 0; k < sgens.size(); ++k) {
        if (glevel[k] < lvl) continue;
        uint64_t q = act.apply(sgens[k], p);
        if (orbits[lvl].emplace(q, std::make_pair(static_cast<int32_t>(k), p)).second)
          frontier.push_back(q);
      }
    }
  }

  void add_residue(const GElem& r) {
    int l = 0;
    while (l < static_cast<int>(base.size()) && act.apply(r, base[l]) == base[l]) ++l;
    if (l == static_cast<int>(base.size())) {
      uint64_t bc = 0;
      bool found = false;
      for (uint64_t c : cand)
        if (act.apply(r, c) != c) {
          bc = c;
          found = true;
          break;
        }
      if (!found) throw std::logic_error("Bsgs: residue moves no base candidate");
      base.push_back(bc);
      orbits.emplace_back();
      orbits.back().emplace(bc, std::make_pair(static_cast<int32_t>(-1), bc));
    }
    int gi = static_cast<int>(sgens.size());
    sgens.push_back(r);
    glevel.push_back(l);
    for (int j = 0; j <= l && j < static_cast<int>(base.size()); ++j) extend_orbit(j, gi);
  }

  // Sift g and absorb any nontrivial residue as new strong generators.
  // Returns true if the chain changed.  A residue acting trivially but not
  // equal to the identity goes to shadow_out (shadowed chains only).
  bool sift_add(const GElem& g, std::vector<GElem>* shadow_out) {
    GElem r = sift(g);
    bool added = false;
    while (!act.trivial_on(r)) {
      add_residue(r);
      added = true;
      r = sift(r);
    }
    if (shadow_out && !r.is_identity()) shadow_out->push_back(r);
    return added;
  }

  void build(const std::vector<GElem>& gens, uint64_t seed,
             std::vector<GElem>* shadow_out) {
    for (const auto& g : gens) sift_add(g, shadow_out);
    ProdRepl pr(gens, id, seed);
    int consecutive = 0;
    size_t guard = 0;
    while (consecutive < 48) {
      if (sift_add(pr.next(), shadow_out))
        consecutive = 0;
      else
        ++consecutive;
      if (++guard > 200000) throw std::runtime_error("Bsgs: build budget exceeded");
    }
    verify(shadow_out);
  }

  // Deterministic closure check: every Schreier generator of every level
  // must sift to a trivial action.  Absorbing the failures makes the
  // randomized construction exact regardless of the seed.
  void verify(std::vector<GElem>* shadow_out) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < base.size() && !changed; ++i) {
        std::vector<uint64_t> pts;
        pts.reserve(orbits[i].size());
        for (const auto& kv : orbits[i]) pts.push_back(kv.first);
        size_t ng = sgens.size();
        for (uint64_t p : pts) {
          GElem u = coset_rep(static_cast<int>(i), p);
          for (size_t k = 0; k < ng; ++k) {
            if (glevel[k] < static_cast<int>(i)) continue;
            uint64_t q = act.apply(sgens[k], p);
            GElem sch = u * sgens[k] * coset_rep(static_cast<int>(i), q).inverse();
            if (sift_add(sch, shadow_out)) changed = true;
          }
          if (changed) break;  // the chain grew; restart the scan
        }
      }
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------

struct Group::Impl {
  std::vector<GElem> gens;
  std::string name;
  uint64_t seed = kDefaultSeed;
  GElem id;
  mutable std::mutex mu;
  mutable bool built = false;
  mutable Bsgs bsgs;

  const Bsgs& chain() const {
    std::lock_guard<std::mutex> lock(mu);
    if (!built) {
      bsgs.init(Action::natural(id), id);
      bsgs.build(gens, seed, nullptr);
      built = true;
    }
    return bsgs;
  }
};

Group::Group(std::vector<GElem> gens, std::string name, uint64_t seed) {
  if (gens.empty()) throw std::invalid_argument("Group: no generators");
  for (const auto& g : gens)
    if (!g.same_shape(gens[0])) throw std::invalid_argument("Group: generator shape mismatch");
  impl_ = std::make_shared<Impl>();
  impl_->gens = std::move(gens);
  impl_->name = std::move(name);
  impl_->seed = seed;
  impl_->id = impl_->gens[0].identity();
}

Group Group::trivial(const GElem& shape, std::string name) {
  return Group({shape.identity()}, std::move(name));
}

const std::string& Group::name() const { return impl_->name; }
const std::vector<GElem>& Group::gens() const { return impl_->gens; }
GElem Group::identity() const { return impl_->id; }

uint64_t Group::order() const { return impl_->chain().order(); }

bool Group::contains(const GElem& x) const {
  if (!x.same_shape(impl_->id)) throw std::invalid_argument("contains: shape mismatch");
  return sift_residue(x).is_identity();
}

GElem Group::sift_residue(const GElem& x) const { return impl_->chain().sift(x); }

GElem Group::random_element(uint64_t seed) const {
  ProdRepl pr(impl_->gens, impl_->id, seed ^ 0xd1b54a32d192ed03ull);
  return pr.next();
}

std::vector<GElem> Group::elements(size_t cap) const {
  std::unordered_set<GElem, GElemHash> seen;
  std::deque<GElem> queue;
  seen.insert(impl_->id);
  queue.push_back(impl_->id);
  std::vector<GElem> out{impl_->id};
  while (!queue.empty()) {
    GElem x = queue.front();
    queue.pop_front();
    for (const auto& g : impl_->gens) {
      GElem y = x * g;
      if (seen.insert(y).second) {
        if (out.size() >= cap) throw std::runtime_error("elements: cap exceeded");
        out.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Group normal_closure(const Group& g, const std::vector<GElem>& seeds) {
  std::vector<GElem> hgens;
  for (const auto& s : seeds)
    if (!s.is_identity()) hgens.push_back(s);
  if (hgens.empty()) return Group::trivial(g.identity());
  std::vector<GElem> conj_by = g.gens();
  {
    size_t n = conj_by.size();
    for (size_t i = 0; i < n; ++i) conj_by.push_back(conj_by[i].inverse());
  }
  Group h(hgens);
  std::deque<GElem> queue(hgens.begin(), hgens.end());
  while (!queue.empty()) {
    GElem x = queue.front();
    queue.pop_front();
    for (const auto& c : conj_by) {
      GElem y = conjugate(x, c);
      if (!h.contains(y)) {
        hgens.push_back(y);
        h = Group(hgens);
        queue.push_back(y);
      }
    }
  }
  return h;
}

Group derived_subgroup(const Group& g) {
  std::vector<GElem> seeds;
  const auto& gens = g.gens();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j)
      if (i != j) seeds.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, seeds);
}

Group center(const Group& g, size_t cap) {
  std::vector<GElem> z;
  for (const auto& x : g.elements(cap)) {
    bool central = true;
    for (const auto& gen : g.gens())
      if (x * gen != gen * x) {
        central = false;
        break;
      }
    if (central && !x.is_identity()) z.push_back(x);
  }
  if (z.empty()) return Group::trivial(g.identity());
  return Group(z);
}

bool is_soluble(const Group& g) {
  Group h = g;
  uint64_t prev = h.order();
  while (true) {
    Group d = derived_subgroup(h);
    uint64_t o = d.order();
    if (o == 1) return true;
    if (o == prev) return false;
    h = d;
    prev = o;
  }
}

Group soluble_radical(const Group& g, uint64_t seed) {
  // Candidate seeds: p-parts of the generators and of random draws.
  std::vector<GElem> pool;
  auto elem_pow = [](const GElem& x, uint64_t e) {
    GElem acc = x.identity(), cur = x;
    while (e) {
      if (e & 1) acc = acc * cur;
      cur = cur * cur;
      e >>= 1;
    }
    return acc;
  };
  auto push_pparts = [&](const GElem& x) {
    if (x.is_identity()) return;
    uint64_t o = element_order(x);
    uint64_t rest = o;
    for (uint64_t p = 2; p <= rest; ++p) {
      if (rest % p != 0) continue;
      uint64_t pk = 1;
      while (rest % p == 0) {
        rest /= p;
        pk *= p;
      }
      pool.push_back(elem_pow(x, o / pk));
    }
  };
  for (const auto& gen : g.gens()) push_pparts(gen);
  uint64_t s = seed;
  for (int i = 0; i < 100; ++i) push_pparts(g.random_element(mix64(s)));

  Group rad = Group::trivial(g.identity());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& y : pool) {
      if (y.is_identity() || rad.contains(y)) continue;
      std::vector<GElem> seeds = rad.gens();
      seeds.push_back(y);
      Group cand = normal_closure(g, seeds);
      if (cand.order() > rad.order() && is_soluble(cand)) {
        rad = cand;
        changed = true;
      }
    }
  }
  return rad;
}

Group sylow_subgroup(const Group& g, unsigned p, uint64_t seed) {
  uint64_t n = g.order(), target = 1;
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  if (target == 1) throw std::invalid_argument("sylow_subgroup: p does not divide the order");

  auto closure_upto = [&](const std::vector<GElem>& gens, uint64_t limit)
      -> std::optional<std::unordered_set<GElem, GElemHash>> {
    std::unordered_set<GElem, GElemHash> seen;
    std::deque<GElem> queue;
    GElem id = g.identity();
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
      GElem x = queue.front();
      queue.pop_front();
      for (const auto& gen : gens) {
        GElem y = x * gen;
        if (seen.insert(y).second) {
          if (seen.size() > limit) return std::nullopt;
          queue.push_back(y);
        }
      }
    }
    return seen;
  };

  std::vector<GElem> pels;
  for (const auto& x : g.elements()) {
    if (x.is_identity()) continue;
    uint64_t o = element_order(x);
    while (o % p == 0) o /= p;
    if (o == 1) pels.push_back(x);
  }
  uint64_t s = seed;
  for (size_t i = pels.size(); i > 1; --i) std::swap(pels[i - 1], pels[mix64(s) % i]);

  std::vector<GElem> pgens;
  std::unordered_set<GElem, GElemHash> pset;
  pset.insert(g.identity());
  while (pset.size() < target) {
    bool grew = false;
    for (const auto& x : pels) {
      if (pset.count(x)) continue;
      std::vector<GElem> cand = pgens;
      cand.push_back(x);
      auto cl = closure_upto(cand, target);
      if (!cl) continue;
      uint64_t m = cl->size();
      while (m % p == 0) m /= p;
      if (m != 1) continue;
      pgens = std::move(cand);
      pset = std::move(*cl);
      grew = true;
      break;
    }
    if (!grew) throw std::runtime_error("sylow_subgroup: search stalled");
  }
  return Group(pgens);
}

// ---------------------------------------------------------------------------
// Homomorphisms via shadowed chains on paired elements (a, b): the action
// sees only one side, the other side rides along through every product.

namespace {

int leaf_count(const GElem& sample) {
  if (sample.kind() != ElemKind::direct) return 1;
  int n = 0;
  for (const auto& p : sample.parts()) n += leaf_count(p);
  return n;
}

}  // namespace

struct Homomorphism::HImpl {
  Group src, tgt;
  std::vector<GElem> imgs;
  mutable std::mutex mu;
  // forward chain on pairs (x, phi x), acting on the source side
  mutable bool fwd_built = false;
  mutable Bsgs fwd;
  // image chain on pairs (phi x, x), acting on the image side; residues
  // that act trivially have the form (1, k) with k in the kernel
  mutable bool ker_built = false;
  mutable Group ker;

  std::vector<GElem> fwd_pairs() const {
    std::vector<GElem> out;
    for (size_t i = 0; i < src.gens().size(); ++i)
      out.push_back(GElem::direct({src.gens()[i], imgs[i]}));
    return out;
  }

  const Bsgs& forward() const {
    std::lock_guard<std::mutex> lock(mu);
    if (!fwd_built) {
      GElem pid = GElem::direct({src.identity(), tgt.identity()});
      int n0 = leaf_count(src.identity());
      std::vector<int> active(n0);
      std::iota(active.begin(), active.end(), 0);
      fwd.init(Action::restricted(pid, active), pid);
      fwd.build(fwd_pairs(), kDefaultSeed, nullptr);
      fwd_built = true;
    }
    return fwd;
  }

  const Group& kernel_group() const {
    std::lock_guard<std::mutex> lock(mu);
    if (ker_built) return ker;
    GElem pid = GElem::direct({tgt.identity(), src.identity()});
    int n0 = leaf_count(tgt.identity());
    std::vector<int> active(n0);
    std::iota(active.begin(), active.end(), 0);
    Bsgs bwd;
    bwd.init(Action::restricted(pid, active), pid);
    std::vector<GElem> pairs;
    for (size_t i = 0; i < src.gens().size(); ++i)
      pairs.push_back(GElem::direct({imgs[i], src.gens()[i]}));
    std::vector<GElem> shadows;
    bwd.build(pairs, kDefaultSeed, &shadows);

    std::vector<GElem> kgens{src.identity()};
    auto drain = [&] {
      for (const auto& sh : shadows) kgens.push_back(sh.parts()[1]);
      shadows.clear();
    };
    drain();
    Group k(kgens);
    uint64_t total = src.order();
    ProdRepl pr(pairs, pid, kDefaultSeed ^ 0x94d049bb133111ebull);
    size_t guard = 0;
    while (bwd.order() * k.order() != total) {
      bwd.sift_add(pr.next(), &shadows);
      if (!shadows.empty()) {
        drain();
        k = Group(kgens);
      }
      if (++guard > 100000) throw std::runtime_error("kernel: certification budget exceeded");
    }
    ker = k;
    ker_built = true;
    return ker;
  }
};

Homomorphism::Homomorphism(Group source, Group target, std::vector<GElem> images) {
  if (images.size() != source.gens().size())
    throw std::invalid_argument("Homomorphism: one image per generator required");
  for (const auto& im : images)
    if (!im.same_shape(target.identity()))
      throw std::invalid_argument("Homomorphism: image shape mismatch");
  impl_ = std::make_shared<HImpl>();
  impl_->src = std::move(source);
  impl_->tgt = std::move(target);
  impl_->imgs = std::move(images);
}

const Group& Homomorphism::source() const { return impl_->src; }
const Group& Homomorphism::target() const { return impl_->tgt; }
const std::vector<GElem>& Homomorphism::images() const { return impl_->imgs; }

GElem Homomorphism::apply(const GElem& x) const {
  const Bsgs& fwd = impl_->forward();
  GElem w = GElem::direct({x, impl_->tgt.identity()});
  GElem r = fwd.sift(w);
  if (!fwd.act.trivial_on(r)) throw std::invalid_argument("Homomorphism::apply: not in source");
  // r = (1, y) with (x, phi x) * (u, phi u)^-1 = (1, y), so phi(x) = y^-1
  return r.parts()[1].inverse();
}

Group Homomorphism::image() const {
  bool all_id = true;
  for (const auto& im : impl_->imgs)
    if (!im.is_identity()) all_id = false;
  if (all_id) return Group::trivial(impl_->tgt.identity());
  return Group(impl_->imgs);
}

uint64_t Homomorphism::image_order() const { return image().order(); }

Group Homomorphism::kernel() const { return impl_->kernel_group(); }

// ---------------------------------------------------------------------------
// .grp text format.

std::string Group::to_grp() const {
  const GElem& id = impl_->id;
  std::ostringstream os;
  std::string kind;
  switch (id.kind()) {
    case ElemKind::perm:
      kind = "perm";
      break;
    case ElemKind::matrix:
      kind = "mat";
      break;
    case ElemKind::proj_matrix:
      kind = "projmat";
      break;
    default:
      throw std::invalid_argument("to_grp: direct products are not serializable");
  }
  os << "group " << (impl_->name.empty() ? "unnamed" : impl_->name) << " kind " << kind;
  if (id.kind() == ElemKind::perm) {
    os << " degree " << id.perm().degree() << "\n";
    for (const auto& g : impl_->gens) os << "gen " << g.perm().to_cycle_string() << "\n";
  } else {
    int n = id.mat().rows();
    os << " degree " << n << " over " << id.mat().field().name() << "\n";
    for (const auto& g : impl_->gens) {
      os << "gen\n";
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) os << (j ? " " : "") << g.mat().get(i, j);
        os << "\n";
      }
    }
  }
  return os.str();
}

Group Group::parse_grp(const std::string& text) {
  std::istringstream is(text);
  std::string tok, name, kind;
  int degree = 0;
  if (!(is >> tok) || tok != "group") throw std::invalid_argument("parse_grp: missing header");
  is >> name;
  is >> tok;
  if (tok != "kind") throw std::invalid_argument("parse_grp: missing kind");
  is >> kind;
  is >> tok;
  if (tok != "degree") throw std::invalid_argument("parse_grp: missing degree");
  is >> degree;
  const Field* F = nullptr;
  if (kind != "perm") {
    is >> tok;
    if (tok != "over") throw std::invalid_argument("parse_grp: missing field");
    std::string fname;
    is >> fname;
    auto caret = fname.find('^');
    unsigned p = std::stoul(fname.substr(0, caret));
    unsigned e = caret == std::string::npos ? 1 : std::stoul(fname.substr(caret + 1));
    F = &Field::get(p, e);
  }
  std::vector<GElem> gens;
  std::string line;
  std::getline(is, line);  // rest of header line
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("gen", 0) != 0) throw std::invalid_argument("parse_grp: expected gen line");
    if (kind == "perm") {
      gens.push_back(GElem::of_perm(Perm::parse_cycles(degree, line.substr(3))));
      continue;
    }
    Mat m(*F, degree, degree);
    for (int i = 0; i < degree; ++i) {
      if (!std::getline(is, line)) throw std::invalid_argument("parse_grp: truncated matrix");
      std::istringstream row(line);
      for (int j = 0; j < degree; ++j) {
        unsigned v;
        if (!(row >> v)) throw std::invalid_argument("parse_grp: short matrix row");
        m.set(i, j, v);
      }
    }
    gens.push_back(kind == "mat" ? GElem::of_matrix(m) : GElem::of_proj(m));
  }
  if (gens.empty()) throw std::invalid_argument("parse_grp: no generators");
  return Group(std::move(gens), name);
}

}  // namespace grpx

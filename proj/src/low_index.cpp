#include <chrono>
#include <stdexcept>

#include "grpx/coset_table.hpp"

namespace grpx {

namespace {

inline int invcol(int c) { return c ^ 1; }

std::vector<int> word_cols(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& l : w.lits()) out.push_back(2 * l.gen + (l.exp < 0 ? 1 : 0));
  return out;
}

// Canonical-table backtrack over partial coset tables in standard form
// (cosets numbered by first appearance in row-major order).  Conflicting
// requirements kill a branch; no coincidences are ever processed.
struct LowIndex {
  const Presentation& pres;
  int ng, cols, bound;
  std::vector<std::vector<int>> rots;        // relator rotations (and inverses)
  std::vector<std::vector<int>> rot_by_col;  // rotation ids starting with column c
  std::vector<std::vector<int>> tab;
  int n = 1;
  std::vector<CosetTable> out;
  std::chrono::steady_clock::time_point deadline;
  bool budgeted = false;
  // trail of asserted edges for undo; an entry with a == -1 marks a coset
  // creation
  std::vector<std::pair<int, int>> trail;

  LowIndex(const Presentation& p, int bound_, double budget_secs)
      : pres(p), ng(static_cast<int>(p.gens.size())), cols(2 * ng), bound(bound_) {
    if (budget_secs > 0) {
      budgeted = true;
      deadline = std::chrono::steady_clock::now() +
                 std::chrono::microseconds(static_cast<long long>(budget_secs * 1e6));
    }
    for (const auto& r : pres.relators) {
      for (const Word& w : {r, r.inverse()}) {
        std::vector<int> c = word_cols(w);
        for (size_t k = 0; k < c.size(); ++k) {
          std::vector<int> rot(c.begin() + k, c.end());
          rot.insert(rot.end(), c.begin(), c.begin() + k);
          rots.push_back(std::move(rot));
        }
      }
    }
    rot_by_col.assign(cols, {});
    for (size_t i = 0; i < rots.size(); ++i) rot_by_col[rots[i][0]].push_back(static_cast<int>(i));
    tab.assign(bound, std::vector<int>(cols, -1));
  }

  void set_edge(int a, int c, int b) {
    tab[a][c] = b;
    tab[b][invcol(c)] = a;
    trail.push_back({a, c});
  }

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      auto [a, c] = trail.back();
      trail.pop_back();
      if (a < 0) {
        --n;
        continue;
      }
      int b = tab[a][c];
      tab[a][c] = -1;
      tab[b][invcol(c)] = -1;
    }
  }

  // Assert edge and propagate relator deductions; false on contradiction.
  bool assert_edge(int a0, int c0, int b0) {
    size_t head = trail.size();
    set_edge(a0, c0, b0);
    while (head < trail.size()) {
      auto [a, c] = trail[head++];
      // scan every relator rotation beginning with column c from a, and the
      // paired view from the other endpoint
      for (int side = 0; side < 2; ++side) {
        int start = side == 0 ? a : tab[a][c];
        int scol = side == 0 ? c : invcol(c);
        for (int ri : rot_by_col[scol]) {
          const auto& w = rots[ri];
          int len = static_cast<int>(w.size());
          int f = start, i = 0;
          while (i < len && tab[f][w[i]] >= 0) f = tab[f][w[i++]];
          if (i == len) {
            if (f != start) return false;
            continue;
          }
          int b = start, j = len - 1;
          while (j > i && tab[b][invcol(w[j])] >= 0) b = tab[b][invcol(w[j--])];
          if (j == i) {
            int clash = tab[b][invcol(w[i])];
            if (clash >= 0) {
              if (clash != f) return false;
              continue;
            }
            set_edge(f, w[i], b);
          }
        }
      }
    }
    return true;
  }

  // Lexicographic comparison of the table renumbered from root r against
  // the table itself; the standard-form table rooted at 0 is the table.
  // Returns true if the root-r renumbering is strictly smaller.
  bool smaller_rooted(int r) const {
    std::vector<int> num(n, -1), old_of;
    num[r] = 0;
    old_of.push_back(r);
    int next = 1;
    for (int m = 0; m < n; ++m) {
      int old = old_of[m];
      for (int c = 0; c < cols; ++c) {
        int t = tab[old][c];
        if (num[t] < 0) {
          num[t] = next++;
          old_of.push_back(t);
        }
        int mine = num[t], ref = tab[m][c];
        if (mine != ref) return mine < ref;
      }
    }
    return false;
  }

  bool canonical() const {
    for (int r = 1; r < n; ++r)
      if (smaller_rooted(r)) return false;
    return true;
  }

  void emit() {
    // final defensive verification: every relator closes at every coset
    for (const auto& r : pres.relators) {
      std::vector<int> w = word_cols(r);
      for (int a = 0; a < n; ++a) {
        int f = a;
        for (int c : w) f = tab[f][c];
        if (f != a) throw std::logic_error("low_index: relator check failed");
      }
    }
    CosetTable t;
    t.pres = pres;
    t.index = n;
    t.gen_action.assign(ng, std::vector<uint32_t>(n));
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < ng; ++g)
        t.gen_action[g][a] = static_cast<uint32_t>(tab[a][2 * g]);
    // Schreier generators of the subgroup from a spanning tree at coset 0
    std::vector<Word> path(n);
    std::vector<int> bfs{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (size_t q = 0; q < bfs.size(); ++q) {
      int a = bfs[q];
      for (int c = 0; c < cols; ++c) {
        int b = tab[a][c];
        if (!seen[b]) {
          seen[b] = true;
          path[b] = path[a] * Word::of_gen(c / 2, c % 2 ? -1 : 1);
          bfs.push_back(b);
        }
      }
    }
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < ng; ++g) {
        Word w = path[a] * Word::of_gen(g) * path[tab[a][2 * g]].inverse();
        if (!w.empty()) t.subgens.push_back(w);
      }
    out.push_back(std::move(t));
  }

  void search() {
    if (budgeted && std::chrono::steady_clock::now() > deadline)
      throw std::runtime_error("low_index: wall-clock budget exceeded after " +
                               std::to_string(out.size()) + " subgroups at index bound " +
                               std::to_string(bound));
    int a = -1, c = -1;
    for (int i = 0; i < n && a < 0; ++i)
      for (int j = 0; j < cols; ++j)
        if (tab[i][j] < 0) {
          a = i;
          c = j;
          break;
        }
    if (a < 0) {
      if (canonical()) emit();
      return;
    }
    for (int b = 0; b <= n && b < bound; ++b) {
      bool fresh = b == n;
      if (!fresh && tab[b][invcol(c)] >= 0) continue;
      size_t mark = trail.size();
      if (fresh) {
        ++n;
        trail.push_back({-1, 0});
      }
      if (assert_edge(a, c, b)) search();
      undo_to(mark);
    }
  }
};

}  // namespace

std::vector<CosetTable> low_index_subgroups(const Presentation& p, int bound,
                                            double budget_secs) {
  if (bound < 1) throw std::invalid_argument("low_index_subgroups: bound must be positive");
  LowIndex li(p, bound, budget_secs);
  li.search();
  return std::move(li.out);
}

}  // namespace grpx

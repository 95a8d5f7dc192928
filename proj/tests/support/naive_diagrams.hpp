#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

// Naive enumeration of connected 3-atom-block diagrams, independent of the library.
namespace naive {

using Tri = std::array<int, 3>;
using Raw = std::vector<Tri>;

inline int shared(const Tri& a, const Tri& b) {
  int n = 0;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) ++n;
  return n;
}

inline std::vector<int> common(const Tri& a, const Tri& b) {
  std::vector<int> out;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  return out;
}

// Cycle b0..b(m-1) with pairwise distinct atoms shared by neighbours.
inline bool cycle_with_distinct_atoms(const Raw& d, const std::vector<int>& idx) {
  const int m = static_cast<int>(idx.size());
  std::vector<std::vector<int>> links(m);
  for (int i = 0; i < m; ++i) {
    links[i] = common(d[idx[i]], d[idx[(i + 1) % m]]);
    if (links[i].empty()) return false;
  }
  std::vector<int> pick(m);
  std::function<bool(int)> go = [&](int i) {
    if (i == m) return true;
    for (int x : links[i]) {
      if (std::find(pick.begin(), pick.begin() + i, x) != pick.begin() + i) continue;
      pick[i] = x;
      if (go(i + 1)) return true;
    }
    return false;
  };
  return go(0);
}

inline bool admissible(const Raw& d) {
  const int k = static_cast<int>(d.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (shared(d[i], d[j]) > 1) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (int m : {3, 4}) {
    if (k < m) continue;
    // every ordered choice of m distinct blocks
    std::vector<int> sel(m);
    std::function<bool(int)> any = [&](int i) {
      if (i == m) return cycle_with_distinct_atoms(d, sel);
      for (int b = 0; b < k; ++b) {
        if (std::find(sel.begin(), sel.begin() + i, b) != sel.begin() + i) continue;
        sel[i] = b;
        if (any(i + 1)) return true;
      }
      return false;
    };
    if (any(0)) return false;
  }
  return true;
}

inline bool legless(const Raw& d) {
  if (d.size() == 1) return true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    int touching = 0;
    for (int x : d[i]) {
      bool elsewhere = false;
      for (std::size_t j = 0; j < d.size(); ++j)
        if (j != i && std::find(d[j].begin(), d[j].end(), x) != d[j].end()) elsewhere = true;
      touching += elsewhere;
    }
    if (touching < 2) return false;
  }
  return true;
}

// Smallest first-appearance relabeling over block orders and atom orders within blocks.
inline std::vector<int> iso_key(const Raw& d) {
  const int k = static_cast<int>(d.size());
  std::vector<int> border(k);
  std::iota(border.begin(), border.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> within(k, 0);
    while (true) {
      std::vector<int> seq, label(64, -1);
      int next = 0;
      for (int bi = 0; bi < k; ++bi) {
        Tri b = d[border[bi]];
        int rot = within[bi];
        for (int r = 0; r < rot; ++r) std::next_permutation(b.begin(), b.end());
        for (int x : b) {
          if (label[x] < 0) label[x] = next++;
          seq.push_back(label[x]);
        }
      }
      if (best.empty() || seq < best) best = seq;
      int i = 0;
      while (i < k && ++within[i] == 6) within[i++] = 0;
      if (i == k) break;
    }
  } while (std::next_permutation(border.begin(), border.end()));
  return best;
}

inline Raw sorted_raw(Raw d) {
  for (auto& b : d) std::sort(b.begin(), b.end());
  std::sort(d.begin(), d.end());
  return d;
}

inline int atoms_of(const Raw& d) {
  int n = 0;
  for (const auto& b : d)
    for (int x : b) n = std::max(n, x + 1);
  return n;
}

// All admissible diagrams with exactly k blocks, grown one block at a time.
inline std::set<Raw> naive_all(int k) {
  std::set<Raw> level = {Raw{Tri{0, 1, 2}}};
  for (int step = 1; step < k; ++step) {
    std::set<Raw> next;
    for (const Raw& d : level) {
      const int n = atoms_of(d);
      // choose s existing atoms (1..3), the rest new
      for (int s = 1; s <= 3; ++s) {
        std::vector<int> pick(s);
        std::function<void(int, int)> rec = [&](int i, int from) {
          if (i == s) {
            Tri b{};
            for (int j = 0; j < 3; ++j) b[j] = j < s ? pick[j] : n + (j - s);
            Raw e = d;
            e.push_back(b);
            e = sorted_raw(e);
            std::set<Tri> uniq(e.begin(), e.end());
            if (uniq.size() != e.size()) return;
            if (admissible(e)) next.insert(e);
            return;
          }
          for (int a = from; a < n; ++a) {
            pick[i] = a;
            rec(i + 1, a + 1);
          }
        };
        rec(0, 0);
      }
    }
    level = std::move(next);
  }
  return level;
}

// Isomorphism classes with exactly k blocks; the second set keeps the legless ones.
inline std::pair<std::set<std::vector<int>>, std::set<std::vector<int>>> classes(int k) {
  std::set<std::vector<int>> all, legless_only;
  for (const Raw& d : naive_all(k)) {
    auto key = iso_key(d);
    all.insert(key);
    if (legless(d)) legless_only.insert(key);
  }
  return {all, legless_only};
}

}  // namespace naive

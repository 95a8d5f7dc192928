#include "omlkit/canon.hpp"

#include <algorithm>
#include <numeric>

namespace omlkit {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a; else parent[a] = b;
  }
};

// Ordered partition: `order` lists vertices cell by cell; a cell is named by
// the index of its first slot, so cell names are themselves invariant.
struct Partition {
  std::vector<int> order;
  std::vector<int> cell;  // vertex -> cell start
  int cells = 0;
};

class Canonizer {
 public:
  Canonizer(int atom_count, std::span<const Block> blocks, std::span<const int> colors)
      : atoms_(atom_count), blocks_(static_cast<int>(blocks.size())),
        n_(atom_count + static_cast<int>(blocks.size())), colors_(colors.begin(), colors.end()) {
    std::vector<int> deg(n_, 0);
    for (int b = 0; b < blocks_; ++b) {
      for (int a : blocks[b]) {
        ++deg[a];
        ++deg[atoms_ + b];
      }
    }
    start_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) start_[v + 1] = start_[v] + deg[v];
    adj_.assign(start_[n_], 0);
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (int b = 0; b < blocks_; ++b) {
      for (int a : blocks[b]) {
        adj_[fill[a]++] = atoms_ + b;
        adj_[fill[atoms_ + b]++] = a;
      }
    }
    block_atoms_.assign(blocks.begin(), blocks.end());
    hash_.assign(n_, 0);
  }

  Labeling run() {
    Partition root;
    root.order.resize(n_);
    root.cell.resize(n_);
    // Atoms first, then blocks grouped by (color, size).
    std::iota(root.order.begin(), root.order.end(), 0);
    auto key = [&](int v) -> std::pair<int, int> {
      if (v < atoms_) return {0, 0};
      int b = v - atoms_;
      int c = colors_.empty() ? 0 : colors_[b];
      return {1 + c, block_atoms_[b].size};
    };
    std::stable_sort(root.order.begin(), root.order.end(),
                     [&](int x, int y) { return key(x) < key(y); });
    root.cells = 0;
    for (int i = 0; i < n_; ++i) {
      if (i == 0 || key(root.order[i]) != key(root.order[i - 1])) {
        ++root.cells;
        root.cell[root.order[i]] = i;
      } else {
        root.cell[root.order[i]] = root.cell[root.order[i - 1]];
      }
    }
    uf_ = UnionFind(n_);
    std::vector<int> prefix;
    search(root, prefix);

    Labeling out;
    out.atom_label.resize(atoms_);
    out.block_label.resize(blocks_);
    for (int v = 0; v < n_; ++v) {
      if (v < atoms_) out.atom_label[v] = best_pos_[v];
      else out.block_label[v - atoms_] = best_pos_[v] - atoms_;
    }
    out.atom_orbit.resize(atoms_);
    out.block_orbit.resize(blocks_);
    std::vector<int> rep(n_, -1);
    for (int v = 0; v < n_; ++v) {
      int r = uf_.find(v);
      if (rep[r] < 0) rep[r] = v;
    }
    for (int v = 0; v < n_; ++v) {
      int r = rep[uf_.find(v)];
      if (v < atoms_) out.atom_orbit[v] = r;
      else out.block_orbit[v - atoms_] = r - atoms_;
    }
    out.certificate = std::move(best_cert_);
    out.rigid = automorphisms_.empty();
    return out;
  }

 private:
  void refine(Partition& p) {
    std::vector<int>& order = p.order;
    while (p.cells < n_) {
      for (int v = 0; v < n_; ++v) {
        std::uint64_t h = 0;
        for (int i = start_[v]; i < start_[v + 1]; ++i) h += mix(static_cast<std::uint64_t>(p.cell[adj_[i]]));
        hash_[v] = h;
      }
      int before = p.cells;
      int i = 0;
      while (i < n_) {
        int s = i;
        int c = p.cell[order[s]];
        int e = s + 1;
        while (e < n_ && p.cell[order[e]] == c) ++e;
        if (e - s > 1) {
          std::sort(order.begin() + s, order.begin() + e,
                    [&](int x, int y) { return hash_[x] < hash_[y]; });
          int run = s;
          for (int k = s; k < e; ++k) {
            if (k > s && hash_[order[k]] != hash_[order[k - 1]]) {
              run = k;
              ++p.cells;
            }
            p.cell[order[k]] = run;
          }
        }
        i = e;
      }
      if (p.cells == before) break;
    }
  }

  void individualize(Partition& p, int v) {
    int s = p.cell[v];
    auto it = std::find(p.order.begin() + s, p.order.end(), v);
    std::iter_swap(p.order.begin() + s, it);
    for (int k = s + 1; k < n_ && p.cell[p.order[k]] == s; ++k) p.cell[p.order[k]] = s + 1;
    p.cell[v] = s;
    ++p.cells;
  }

  std::vector<std::uint8_t> certificate(const std::vector<int>& pos) const {
    std::vector<std::uint8_t> cert;
    cert.reserve(2 + 4 * blocks_);
    cert.push_back(static_cast<std::uint8_t>(atoms_));
    cert.push_back(static_cast<std::uint8_t>(blocks_));
    std::vector<int> by_pos(blocks_);
    for (int b = 0; b < blocks_; ++b) by_pos[pos[atoms_ + b] - atoms_] = b;
    for (int b : by_pos) {
      std::array<int, 3> t{255, 255, 255};
      const Block& blk = block_atoms_[b];
      for (int k = 0; k < blk.size; ++k) t[k] = pos[blk.atom[k]];
      std::sort(t.begin(), t.begin() + blk.size);
      if (!colors_.empty()) cert.push_back(static_cast<std::uint8_t>(colors_[b]));
      for (int x : t) cert.push_back(static_cast<std::uint8_t>(x));
    }
    return cert;
  }

  void record_automorphism(const std::vector<int>& from_pos, const std::vector<int>& to_order) {
    std::vector<int> gamma(n_);
    bool identity = true;
    for (int v = 0; v < n_; ++v) {
      gamma[v] = to_order[from_pos[v]];
      if (gamma[v] != v) identity = false;
    }
    if (identity) return;
    for (int v = 0; v < n_; ++v) uf_.unite(v, gamma[v]);
    automorphisms_.push_back(std::move(gamma));
  }

  void leaf(const Partition& p) {
    std::vector<int> pos(n_);
    for (int i = 0; i < n_; ++i) pos[p.order[i]] = i;
    std::vector<std::uint8_t> cert = certificate(pos);
    if (first_cert_.empty()) {
      first_cert_ = cert;
      first_pos_ = pos;
      best_cert_ = std::move(cert);
      best_pos_ = std::move(pos);
      return;
    }
    if (cert == first_cert_) {
      record_automorphism(first_pos_, p.order);
    } else if (cert == best_cert_) {
      record_automorphism(best_pos_, p.order);
    } else if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_pos_ = std::move(pos);
    }
  }

  void search(Partition p, std::vector<int>& prefix) {
    refine(p);
    if (p.cells == n_) {
      leaf(p);
      return;
    }
    // Target: first non-singleton cell, preferring atoms.
    int target = -1;
    for (int i = 0; i < n_;) {
      int c = p.cell[p.order[i]];
      int e = i + 1;
      while (e < n_ && p.cell[p.order[e]] == c) ++e;
      if (e - i > 1) {
        target = i;
        break;
      }
      i = e;
    }
    std::vector<int> members;
    for (int k = target; k < n_ && p.cell[p.order[k]] == target; ++k) members.push_back(p.order[k]);
    std::sort(members.begin(), members.end());

    std::vector<int> explored;
    std::size_t seen_autos = automorphisms_.size();
    UnionFind local(n_);
    auto rebuild = [&] {
      local = UnionFind(n_);
      for (const auto& g : automorphisms_) {
        bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int v) { return g[v] == v; });
        if (!fixes) continue;
        for (int v : members) local.unite(v, g[v]);
      }
      seen_autos = automorphisms_.size();
    };
    rebuild();
    for (int w : members) {
      if (automorphisms_.size() != seen_autos) rebuild();
      bool equivalent = std::any_of(explored.begin(), explored.end(),
                                    [&](int x) { return local.find(x) == local.find(w); });
      if (equivalent) continue;
      explored.push_back(w);
      Partition child = p;
      individualize(child, w);
      prefix.push_back(w);
      search(std::move(child), prefix);
      prefix.pop_back();
    }
  }

  int atoms_;
  int blocks_;
  int n_;
  std::vector<int> colors_;
  std::vector<Block> block_atoms_;
  std::vector<int> start_;
  std::vector<int> adj_;
  std::vector<std::uint64_t> hash_;

  std::vector<std::uint8_t> first_cert_;
  std::vector<int> first_pos_;
  std::vector<std::uint8_t> best_cert_;
  std::vector<int> best_pos_;
  std::vector<std::vector<int>> automorphisms_;
  UnionFind uf_{0};
};

}  // namespace

Labeling canonical_labeling(int atom_count, std::span<const Block> blocks,
                            std::span<const int> block_colors) {
  Canonizer c(atom_count, blocks, block_colors);
  return c.run();
}

}  // namespace omlkit

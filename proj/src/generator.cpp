#include "omlkit/generator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <set>
#include <stdexcept>
#include <thread>
#include <variant>

#include "omlkit/canon.hpp"

namespace omlkit {

std::uint64_t GenStats::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : emitted) t += v;
  return t;
}

void GenStats::merge(const GenStats& o) {
  for (const auto& [k, v] : o.emitted) emitted[k] += v;
  candidates += o.candidates;
  isomorph += o.isomorph;
  loop += o.loop;
  disconnected += o.disconnected;
  leg += o.leg;
  atom_filter += o.atom_filter;
  pruned += o.pruned;
  interior += o.interior;
}

namespace {

constexpr int kMaxAtoms = 64;
using Mask = std::uint64_t;

Mask bit(int a) { return Mask{1} << a; }

struct Node {
  int atoms = 0;
  std::vector<Block> blocks;
  std::vector<int> deg;

  [[nodiscard]] GreechieDiagram diagram() const {
    GreechieDiagram d;
    d.atom_count = atoms;
    d.blocks = blocks;
    return d;
  }
};

int deficiency(const Node& n) {
  if (n.blocks.size() <= 1) return 0;
  int def = 0;
  for (const Block& b : n.blocks) {
    int ones = 0;
    for (int a : b) ones += n.deg[a] == 1 ? 1 : 0;
    def += std::max(0, ones - 1);
  }
  return def;
}

// Deletion preference: larger key = removed first.
std::uint64_t block_key(const Node& n, const Block& b, const std::vector<int>& reach) {
  int ones = 0;
  int sum = 0;
  int far = 0;
  for (int a : b) {
    ones += n.deg[a] == 1 ? 1 : 0;
    sum += n.deg[a];
    far += reach[a];
  }
  return (static_cast<std::uint64_t>(ones) << 40) | (static_cast<std::uint64_t>(0xffff - sum) << 20) |
         static_cast<std::uint64_t>(0xfffff - far);
}

// reach[a]: total degree of the atoms sharing a block with a.
std::vector<int> atom_reach(const Node& n) {
  std::vector<int> reach(n.atoms, 0);
  for (const Block& b : n.blocks) {
    int s = 0;
    for (int a : b) s += n.deg[a];
    for (int a : b) reach[a] += s - n.deg[a];
  }
  return reach;
}

bool removable(const Node& n, int skip) {
  const int B = static_cast<int>(n.blocks.size());
  if (B <= 1) return false;
  int start = skip == 0 ? 1 : 0;
  std::vector<char> seen(B, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < B; ++y) {
      if (seen[y] || y == skip) continue;
      bool touch = false;
      for (int a : n.blocks[x]) touch |= n.blocks[y].contains(a);
      if (touch) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == B - 1;
}

// Block of n removed along the construction path, or -1 for a single block.
// `labeling` is filled lazily when ties need breaking.
int chosen_deletion(const Node& n, std::optional<Labeling>& labeling, bool* tied = nullptr) {
  const int B = static_cast<int>(n.blocks.size());
  if (B <= 1) return -1;
  std::vector<int> reach = atom_reach(n);
  std::uint64_t best = 0;
  std::vector<int> ties;
  for (int b = 0; b < B; ++b) {
    std::uint64_t k = block_key(n, n.blocks[b], reach);
    if (!ties.empty() && k < best) continue;
    if (!removable(n, b)) continue;
    if (ties.empty() || k > best) {
      best = k;
      ties.clear();
    }
    ties.push_back(b);
  }
  if (tied) *tied = ties.size() > 1;
  if (ties.size() == 1) return ties[0];
  if (!labeling) labeling = canonical_labeling(n.atoms, n.blocks);
  return *std::min_element(ties.begin(), ties.end(), [&](int x, int y) {
    return labeling->block_label[x] < labeling->block_label[y];
  });
}

Node remove_block(const Node& n, int b) {
  Node p;
  std::vector<int> map(n.atoms, -1);
  for (int i = 0; i < static_cast<int>(n.blocks.size()); ++i) {
    if (i == b) continue;
    Block nb = n.blocks[i];
    for (int k = 0; k < nb.size; ++k) {
      int& m = map[nb.atom[k]];
      if (m < 0) m = p.atoms++;
      nb.atom[k] = m;
    }
    p.blocks.push_back(nb);
  }
  p.deg.assign(p.atoms, 0);
  for (const Block& blk : p.blocks) {
    for (int a : blk) ++p.deg[a];
  }
  return p;
}

Node from_diagram(const GreechieDiagram& d) {
  Node n;
  n.atoms = d.atom_count;
  n.blocks = d.blocks;
  n.deg = d.atom_degrees();
  return n;
}

class Search {
 public:
  Search(const GenSpec& spec, const DiagramSink& sink) : spec_(spec), sink_(sink) {}

  GenStats stats;

  // Whether some target depth is still reachable from a node.
  [[nodiscard]] bool viable(int atoms, int blocks, int def) const {
    for (int t = std::max(spec_.min_blocks, blocks); t <= spec_.max_blocks; ++t) {
      const int r = t - blocks;
      int budget = 3 * r;
      if (spec_.atoms) {
        const int gain = *spec_.atoms - atoms;
        if (gain < 0 || gain > 2 * r) continue;
        budget -= gain;
      }
      if (!spec_.legless || def <= budget) return true;
    }
    return false;
  }

  void visit(const Node& n) {
    const int b = static_cast<int>(n.blocks.size());
    if (b >= spec_.min_blocks) {
      if (spec_.atoms && n.atoms != *spec_.atoms) {
        ++stats.atom_filter;
      } else if (spec_.legless && deficiency(n) > 0) {
        ++stats.leg;
      } else {
        ++stats.emitted[{n.atoms, b}];
        if (sink_) sink_(n.diagram());
      }
    } else {
      ++stats.interior;
    }
  }

  void children(const Node& n, const std::function<void(Node&&)>& out) {
    const int A = n.atoms;
    const int B = static_cast<int>(n.blocks.size());
    if (A + 2 > kMaxAtoms) return;
    Labeling parent_lab = canonical_labeling(A, n.blocks);
    std::set<std::vector<std::uint8_t>> seen;

    // near[a]: atoms within co-block distance 3 of a (including a).
    std::vector<Mask> n1(A, 0);
    for (const Block& blk : n.blocks) {
      Mask m = 0;
      for (int a : blk) m |= bit(a);
      for (int a : blk) n1[a] |= m;
    }
    auto grow = [&](const std::vector<Mask>& from) {
      std::vector<Mask> to(A, 0);
      for (int a = 0; a < A; ++a) {
        Mask acc = from[a];
        for (Mask m = from[a]; m; m &= m - 1) acc |= n1[std::countr_zero(m)];
        to[a] = acc;
      }
      return to;
    };
    std::vector<Mask> near = grow(grow(n1));

    // Per-block count of degree-1 atoms, for the child's deficiency.
    std::vector<int> ones(B, 0);
    std::vector<int> leaf_block(A, -1);
    for (int b = 0; b < B; ++b) {
      for (int a : n.blocks[b]) {
        if (n.deg[a] == 1) {
          ++ones[b];
          leaf_block[a] = b;
        }
      }
    }
    int raw_def = 0;
    for (int b = 0; b < B; ++b) raw_def += std::max(0, ones[b] - 1);

    auto attempt = [&](std::initializer_list<int> shared) {
      ++stats.candidates;
      const int k = static_cast<int>(shared.size());
      if (spec_.legless || spec_.atoms) {
        int def = raw_def + std::max(0, 2 - k);
        for (int a : shared) {
          if (leaf_block[a] >= 0 && ones[leaf_block[a]] >= 2) --def;
        }
        if (!viable(A + 3 - k, B + 1, def)) {
          ++stats.pruned;
          return;
        }
      }
      Node c;
      c.atoms = A;
      c.blocks = n.blocks;
      c.deg = n.deg;
      std::array<int, 3> t{};
      int i = 0;
      for (int a : shared) t[i++] = a;
      while (i < 3) {
        t[i++] = c.atoms++;
        c.deg.push_back(0);
      }
      c.blocks.emplace_back(t[0], t[1], t[2]);
      for (int a : c.blocks.back()) ++c.deg[a];

      std::optional<Labeling> lab;
      bool tied = false;
      int chosen = chosen_deletion(c, lab, &tied);
      if (chosen != B) {
        if (!tied || lab->block_orbit[chosen] != lab->block_orbit[B]) {
          ++stats.isomorph;
          return;
        }
      }
      if (!parent_lab.rigid) {
        if (!lab) lab = canonical_labeling(c.atoms, c.blocks);
        if (!seen.insert(lab->certificate).second) {
          ++stats.isomorph;
          return;
        }
      }
      out(std::move(c));
    };

    for (int x = 0; x < A; ++x) {
      attempt({x});
      for (int y = x + 1; y < A; ++y) {
        Mask above_y = y + 1 >= 64 ? 0 : (~Mask{0} << (y + 1)) & ((A >= 64) ? ~Mask{0} : (bit(A) - 1));
        if (near[x] & bit(y)) {
          stats.loop += 1 + std::popcount(above_y);
          stats.candidates += 1 + std::popcount(above_y);
          continue;
        }
        attempt({x, y});
        Mask ok = above_y & ~near[x] & ~near[y];
        stats.loop += std::popcount(above_y & ~ok);
        stats.candidates += std::popcount(above_y & ~ok);
        for (Mask m = ok; m; m &= m - 1) attempt({x, y, std::countr_zero(m)});
      }
    }
  }

  void dfs(const Node& n) {
    visit(n);
    if (static_cast<int>(n.blocks.size()) >= spec_.max_blocks) return;
    children(n, [&](Node&& c) { dfs(c); });
  }

 private:
  const GenSpec& spec_;
  DiagramSink sink_;
};

}  // namespace

GreechieDiagram canonical_parent(const GreechieDiagram& d) {
  Node n = from_diagram(d);
  std::optional<Labeling> lab;
  int b = chosen_deletion(n, lab);
  if (b < 0) throw std::invalid_argument("a single block has no parent");
  return remove_block(n, b).diagram();
}

GenStats generate(const GenSpec& spec, const DiagramSink& sink) {
  if (spec.min_blocks < 1 || spec.max_blocks < spec.min_blocks) {
    throw std::invalid_argument("bad block range");
  }
  Node root;
  if (spec.prefix) {
    validate(*spec.prefix);
    root = from_diagram(*spec.prefix);
    for (const Block& b : root.blocks) {
      if (b.size != 3) throw std::invalid_argument("prefix must use 3-atom blocks");
    }
  } else {
    root.atoms = 3;
    root.blocks = {Block(0, 1, 2)};
    root.deg = {1, 1, 1};
  }

  const int workers = std::max(1, spec.workers);
  if (workers == 1) {
    Search s(spec, sink);
    s.dfs(root);
    return s.stats;
  }

  // Walk the top of the tree sequentially, turning every node at the split
  // depth into a task; replaying in walk order keeps the output identical to
  // the single-worker stream.
  const int split = static_cast<int>(root.blocks.size()) + 3;
  Search front(spec, sink ? DiagramSink([](const GreechieDiagram&) {}) : DiagramSink{});
  std::vector<Node> tasks;
  std::vector<std::variant<GreechieDiagram, std::size_t>> events;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (static_cast<int>(n.blocks.size()) >= split) {
      events.emplace_back(tasks.size());
      tasks.push_back(n);
      return;
    }
    auto before = front.stats.total();
    front.visit(n);
    if (sink && front.stats.total() != before) events.emplace_back(n.diagram());
    if (static_cast<int>(n.blocks.size()) >= spec.max_blocks) return;
    front.children(n, [&](Node&& c) { walk(c); });
  };
  walk(root);

  std::vector<std::vector<GreechieDiagram>> out(tasks.size());
  std::vector<GenStats> part(tasks.size());
  std::atomic<std::size_t> next_task{0};
  auto work = [&] {
    for (std::size_t i; (i = next_task.fetch_add(1)) < tasks.size();) {
      DiagramSink collect;
      if (sink) collect = [&out, i](const GreechieDiagram& d) { out[i].push_back(d); };
      Search s(spec, collect);
      s.dfs(tasks[i]);
      part[i] = std::move(s.stats);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  GenStats total = front.stats;
  for (const auto& p : part) total.merge(p);
  if (sink) {
    for (const auto& e : events) {
      if (const auto* d = std::get_if<GreechieDiagram>(&e)) {
        sink(*d);
      } else {
        for (const auto& d2 : out[std::get<std::size_t>(e)]) sink(d2);
      }
    }
  }
  return total;
}

}  // namespace omlkit

#include "omlkit/diagram.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <set>

#include "omlkit/canon.hpp"

namespace omlkit {

std::string_view to_string(DiagramError::Kind kind) {
  using K = DiagramError::Kind;
  switch (kind) {
    case K::syntax: return "syntax";
    case K::block_size: return "block-size";
    case K::duplicate_atom: return "duplicate-atom";
    case K::duplicate_block: return "duplicate-block";
    case K::shared_pair: return "shared-pair";
    case K::loop3: return "loop3";
    case K::loop4: return "loop4";
    case K::disconnected: return "disconnected";
    case K::unused_atom: return "unused-atom";
    case K::alphabet: return "alphabet";
  }
  return "unknown";
}

std::vector<int> GreechieDiagram::atom_degrees() const {
  std::vector<int> deg(atom_count, 0);
  for (const Block& b : blocks) {
    for (int a : b) ++deg[a];
  }
  return deg;
}

namespace {

[[noreturn]] void fail(DiagramError::Kind kind, const std::string& msg) {
  throw DiagramError(kind, msg);
}

std::string block_text(const Block& b) {
  std::string s = "{";
  for (int i = 0; i < b.size; ++i) {
    if (i) s += ',';
    s += std::to_string(b.atom[i]);
  }
  return s + "}";
}

int shared_atom(const Block& x, const Block& y) {
  for (int a : x) {
    if (y.contains(a)) return a;
  }
  return -1;
}

}  // namespace

void validate(const GreechieDiagram& d, ValidationOptions opts) {
  using K = DiagramError::Kind;
  const int B = d.block_count();
  for (const Block& b : d.blocks) {
    if (b.size != 2 && b.size != 3) fail(K::block_size, "block " + block_text(b) + " has size " + std::to_string(b.size));
    for (int i = 0; i < b.size; ++i) {
      if (b.atom[i] < 0 || b.atom[i] >= d.atom_count) fail(K::unused_atom, "atom index out of range in " + block_text(b));
      for (int j = 0; j < i; ++j) {
        if (b.atom[i] == b.atom[j]) fail(K::duplicate_atom, "block " + block_text(b) + " repeats an atom");
      }
    }
  }
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < i; ++j) {
      int common = 0;
      for (int a : d.blocks[i]) common += d.blocks[j].contains(a) ? 1 : 0;
      if (common == d.blocks[i].size && common == d.blocks[j].size) {
        fail(K::duplicate_block, "duplicate block " + block_text(d.blocks[i]));
      }
      if (common >= 2) {
        fail(K::shared_pair, "blocks " + block_text(d.blocks[j]) + " and " + block_text(d.blocks[i]) + " share two atoms");
      }
    }
  }
  std::vector<int> deg = d.atom_degrees();
  for (int a = 0; a < d.atom_count; ++a) {
    if (deg[a] == 0) fail(K::unused_atom, "atom " + std::to_string(a) + " is in no block");
  }

  // Connectivity of the block-intersection graph.
  if (B > 0) {
    std::vector<int> parent(d.atom_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Block& b : d.blocks) {
      for (int a : b) parent[find(a)] = find(b.atom[0]);
    }
    int root = find(0);
    for (int a = 1; a < d.atom_count; ++a) {
      if (find(a) != root) fail(K::disconnected, "diagram is disconnected");
    }
  }

  if (!opts.check_loops) return;
  // nbr[b] = (other block, shared atom)
  std::vector<std::vector<std::pair<int, int>>> nbr(B);
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < B; ++j) {
      if (i == j) continue;
      int s = shared_atom(d.blocks[i], d.blocks[j]);
      if (s >= 0) nbr[i].emplace_back(j, s);
    }
  }
  for (int b1 = 0; b1 < B; ++b1) {
    for (auto [b2, x] : nbr[b1]) {
      for (auto [b3, y] : nbr[b2]) {
        if (b3 == b1 || y == x) continue;
        int z = shared_atom(d.blocks[b3], d.blocks[b1]);
        if (z >= 0 && z != x && z != y) {
          fail(K::loop3, "loop of order 3 through blocks " + block_text(d.blocks[b1]) + ", " +
                             block_text(d.blocks[b2]) + ", " + block_text(d.blocks[b3]));
        }
      }
    }
  }
  for (int b1 = 0; b1 < B; ++b1) {
    for (auto [b2, x] : nbr[b1]) {
      for (auto [b3, y] : nbr[b2]) {
        if (b3 == b1 || y == x) continue;
        for (auto [b4, z] : nbr[b3]) {
          if (b4 == b1 || b4 == b2 || z == x || z == y) continue;
          int w = shared_atom(d.blocks[b4], d.blocks[b1]);
          if (w >= 0 && w != x && w != y && w != z) {
            fail(K::loop4, "loop of order 4 through blocks " + block_text(d.blocks[b1]) + ", " +
                               block_text(d.blocks[b2]) + ", " + block_text(d.blocks[b3]) + ", " +
                               block_text(d.blocks[b4]));
          }
        }
      }
    }
  }
}

GreechieDiagram parse_diagram(std::string_view text, ValidationOptions opts) {
  using K = DiagramError::Kind;
  GreechieDiagram d;
  std::array<int, 128> id{};
  id.fill(-1);
  std::vector<int> current;
  bool done = false;
  auto close_block = [&](std::size_t pos) {
    if (current.empty()) fail(K::syntax, "empty block at position " + std::to_string(pos));
    if (current.size() < 2 || current.size() > 3) {
      fail(K::block_size, "block of size " + std::to_string(current.size()) + " ending at position " + std::to_string(pos));
    }
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (current[i] == current[j]) fail(K::duplicate_atom, "repeated atom in block ending at position " + std::to_string(pos));
      }
    }
    d.blocks.push_back(current.size() == 2 ? Block(current[0], current[1])
                                           : Block(current[0], current[1], current[2]));
    current.clear();
  };
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    if (done) fail(K::syntax, "text after terminating period at position " + std::to_string(pos));
    if (c == ',') {
      close_block(pos);
    } else if (c == '.') {
      close_block(pos);
      done = true;
    } else if (kAtomAlphabet.find(c) != std::string_view::npos) {
      auto u = static_cast<unsigned char>(c);
      if (id[u] < 0) id[u] = d.atom_count++;
      current.push_back(id[u]);
    } else {
      fail(K::syntax, std::string("bad character '") + c + "' at position " + std::to_string(pos));
    }
  }
  if (!done) fail(K::syntax, "missing terminating period");
  validate(d, opts);
  return d;
}

std::string serialize_diagram(const GreechieDiagram& d) {
  if (d.atom_count > kMaxGdfAtoms) {
    throw DiagramError(DiagramError::Kind::alphabet,
                       std::to_string(d.atom_count) + " atoms exceed the " + std::to_string(kMaxGdfAtoms) + "-symbol alphabet");
  }
  std::vector<int> name(d.atom_count, -1);
  int next = 0;
  std::string out;
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    if (i) out += ',';
    for (int a : d.blocks[i]) {
      if (name[a] < 0) name[a] = next++;
      out += kAtomAlphabet[name[a]];
    }
  }
  out += '.';
  return out;
}

std::vector<GreechieDiagram> read_corpus(std::istream& in, ValidationOptions opts,
                                         const std::function<void(int, const DiagramError&)>& on_error) {
  std::vector<GreechieDiagram> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_diagram(line, opts));
    } catch (const DiagramError& e) {
      if (on_error) on_error(lineno, e);
    }
  }
  return out;
}

bool is_legless(const GreechieDiagram& d) {
  if (d.block_count() <= 1) return true;
  std::vector<int> deg = d.atom_degrees();
  for (const Block& b : d.blocks) {
    int attached = 0;
    for (int a : b) attached += deg[a] >= 2 ? 1 : 0;
    if (attached < 2) return false;
  }
  return true;
}

GreechieDiagram relabel(const GreechieDiagram& d, std::span<const int> perm) {
  GreechieDiagram out;
  out.atom_count = d.atom_count;
  out.label = d.label;
  out.blocks.reserve(d.blocks.size());
  for (const Block& b : d.blocks) {
    Block nb = b;
    for (int i = 0; i < b.size; ++i) nb.atom[i] = perm[b.atom[i]];
    out.blocks.push_back(nb);
  }
  return out;
}

std::size_t CanonicalFormHash::operator()(const CanonicalForm& f) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint8_t b : f.bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

CanonicalForm canonical_form(const GreechieDiagram& d) {
  Labeling lab = canonical_labeling(d.atom_count, d.blocks);
  return CanonicalForm{std::move(lab.certificate)};
}

bool isomorphic(const GreechieDiagram& a, const GreechieDiagram& b) {
  if (a.atom_count != b.atom_count || a.block_count() != b.block_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

GreechieDiagram from_canonical_form(const CanonicalForm& f) {
  GreechieDiagram d;
  d.atom_count = f.bytes.at(0);
  int B = f.bytes.at(1);
  for (int b = 0; b < B; ++b) {
    const std::uint8_t* t = &f.bytes.at(2 + 3 * b);
    if (t[2] == 0xff) d.blocks.emplace_back(t[0], t[1]);
    else d.blocks.emplace_back(t[0], t[1], t[2]);
  }
  return d;
}

}  // namespace omlkit

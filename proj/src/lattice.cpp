#include "omlkit/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "fixture_data.hpp"

namespace omlkit {
namespace {

std::string atom_name(int a) {
  std::string s = "a";
  if (a < kMaxGdfAtoms) s += kAtomAlphabet[a];
  else s += std::to_string(a + 1);
  return s;
}

}  // namespace

std::optional<int> FiniteOrthoLattice::element_by_name(std::string_view name) const {
  for (int x = 0; x < n_; ++x) {
    if (names_[x] == name) return x;
  }
  return std::nullopt;
}

FiniteOrthoLattice FiniteOrthoLattice::from_greechie(const GreechieDiagram& d) {
  validate(d, {.check_loops = false});
  const int A = d.atom_count;
  // partner[a]: the other atom of a 2-atom block containing a.
  std::vector<int> partner(A, -1);
  std::vector<char> in_big(A, 0);
  std::vector<std::vector<char>> coblock(A, std::vector<char>(A, 0));
  for (const Block& b : d.blocks) {
    for (int x : b) {
      for (int y : b) {
        if (x != y) coblock[x][y] = 1;
      }
      if (b.size == 3) in_big[x] = 1;
    }
    if (b.size == 2) {
      for (int k = 0; k < 2; ++k) {
        int x = b.atom[k];
        int y = b.atom[1 - k];
        if (partner[x] >= 0 && partner[x] != y) {
          throw LatticeError("atom " + atom_name(x) + " has two complements", {x});
        }
        partner[x] = y;
      }
    }
  }
  for (int a = 0; a < A; ++a) {
    if (partner[a] >= 0 && in_big[a]) {
      throw LatticeError("atom " + atom_name(a) + " lies in blocks of both sizes", {a});
    }
  }

  FiniteOrthoLattice L;
  // kind: 0 bottom, 1 top, 2 atom, 3 complement of atom
  std::vector<std::pair<int, int>> elem{{0, -1}, {1, -1}};
  L.names_ = {"0", "1"};
  L.atom_of_.assign(A, -1);
  std::vector<int> coatom_of(A, -1);
  for (int a = 0; a < A; ++a) {
    L.atom_of_[a] = static_cast<int>(elem.size());
    elem.emplace_back(2, a);
    L.names_.push_back(atom_name(a));
  }
  for (int a = 0; a < A; ++a) {
    if (partner[a] >= 0) {
      coatom_of[a] = L.atom_of_[partner[a]];
    } else {
      coatom_of[a] = static_cast<int>(elem.size());
      elem.emplace_back(3, a);
      L.names_.push_back(atom_name(a) + "'");
    }
  }
  const int n = static_cast<int>(elem.size());
  if (n > kMaxSize) throw LatticeError("lattice too large: " + std::to_string(n) + " elements");
  L.n_ = n;

  auto leq = [&](int x, int y) {
    if (x == y || x == 0 || y == 1) return true;
    if (y == 0 || x == 1) return false;
    auto [kx, ax] = elem[x];
    auto [ky, ay] = elem[y];
    if (kx == 2 && ky == 3) return ax != ay && coblock[ax][ay] != 0;
    return false;
  };

  L.comp_.resize(n);
  L.comp_[0] = 1;
  L.comp_[1] = 0;
  for (int a = 0; a < A; ++a) {
    int e = L.atom_of_[a];
    int c = coatom_of[a];
    L.comp_[e] = static_cast<std::uint8_t>(c);
    L.comp_[c] = static_cast<std::uint8_t>(e);
  }

  std::vector<char> le(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) le[x * n + y] = leq(x, y) ? 1 : 0;
  }
  L.meet_.resize(static_cast<std::size_t>(n) * n);
  std::vector<int> lower;
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      lower.clear();
      for (int z = 0; z < n; ++z) {
        if (le[z * n + x] && le[z * n + y]) lower.push_back(z);
      }
      int glb = -1;
      for (int z : lower) {
        bool top = std::all_of(lower.begin(), lower.end(), [&](int w) { return le[w * n + z] != 0; });
        if (top) {
          glb = z;
          break;
        }
      }
      if (glb < 0) {
        throw LatticeError("no greatest lower bound for " + L.names_[x] + ", " + L.names_[y], {x, y});
      }
      L.meet_[x * n + y] = L.meet_[y * n + x] = static_cast<std::uint8_t>(glb);
    }
  }
  L.join_.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      L.join_[x * n + y] = L.comp_[L.meet_[L.comp_[x] * n + L.comp_[y]]];
    }
  }
  L.source.kind = LatticeSource::Kind::greechie_pasting;
  L.source.diagram = d;
  L.source.provenance = d.atom_count <= kMaxGdfAtoms ? serialize_diagram(d) : d.label;
  L.name = d.label.empty() ? L.source.provenance : d.label;
  L.verify();
  if (auto om = is_orthomodular(L); !om.holds) {
    throw LatticeError("pasting is not orthomodular at " + L.names_[om.witness->first] + " <= " +
                           L.names_[om.witness->second],
                       {om.witness->first, om.witness->second});
  }
  return L;
}

FiniteOrthoLattice FiniteOrthoLattice::from_tables(std::vector<std::string> names,
                                                   const std::vector<int>& comp,
                                                   const std::vector<std::vector<int>>& meet,
                                                   const std::vector<std::vector<int>>& join) {
  const int n = static_cast<int>(comp.size());
  if (n < 1) throw LatticeError("empty lattice");
  if (n > kMaxSize) throw LatticeError("lattice too large");
  if (static_cast<int>(names.size()) != n || static_cast<int>(meet.size()) != n ||
      static_cast<int>(join.size()) != n) {
    throw LatticeError("table sizes disagree");
  }
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(meet[x].size()) != n || static_cast<int>(join[x].size()) != n) {
      throw LatticeError("table row " + std::to_string(x) + " has the wrong length", {x});
    }
    if (comp[x] < 0 || comp[x] >= n) throw LatticeError("comp out of range", {x});
    for (int y = 0; y < n; ++y) {
      if (meet[x][y] < 0 || meet[x][y] >= n || join[x][y] < 0 || join[x][y] >= n) {
        throw LatticeError("table entry out of range", {x, y});
      }
    }
  }
  // Bottom: the element below everything under the meet order.
  int bottom = -1;
  int top = -1;
  for (int x = 0; x < n && bottom < 0; ++x) {
    bool all = true;
    for (int y = 0; y < n && all; ++y) all = meet[x][y] == x;
    if (all) bottom = x;
  }
  for (int x = 0; x < n && top < 0; ++x) {
    bool all = true;
    for (int y = 0; y < n && all; ++y) all = meet[x][y] == y;
    if (all) top = x;
  }
  if (bottom < 0 || top < 0) throw LatticeError("no bottom or top element");
  if (n == 1) throw LatticeError("a one-element lattice has 0 = 1");

  std::vector<int> order{bottom, top};
  for (int x = 0; x < n; ++x) {
    if (x != bottom && x != top) order.push_back(x);
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  FiniteOrthoLattice L;
  L.n_ = n;
  L.comp_.resize(n);
  L.meet_.resize(static_cast<std::size_t>(n) * n);
  L.join_.resize(static_cast<std::size_t>(n) * n);
  L.names_.resize(n);
  for (int i = 0; i < n; ++i) {
    int x = order[i];
    L.names_[i] = names[x];
    L.comp_[i] = static_cast<std::uint8_t>(pos[comp[x]]);
    for (int j = 0; j < n; ++j) {
      int y = order[j];
      L.meet_[i * n + j] = static_cast<std::uint8_t>(pos[meet[x][y]]);
      L.join_[i * n + j] = static_cast<std::uint8_t>(pos[join[x][y]]);
    }
  }
  L.source.kind = LatticeSource::Kind::explicit_tables;
  L.source.provenance = "tables";
  L.verify();
  return L;
}

void FiniteOrthoLattice::verify() const {
  const int n = n_;
  auto nm = [&](int x) { return names_[x]; };
  for (int x = 0; x < n; ++x) {
    if (comp(comp(x)) != x) throw LatticeError("complement is not an involution at " + nm(x), {x});
    if (meet(x, x) != x || join(x, x) != x) throw LatticeError("not idempotent at " + nm(x), {x});
    if (meet(x, comp(x)) != 0) throw LatticeError(nm(x) + " ^ " + nm(x) + "' != 0", {x});
    if (join(x, comp(x)) != 1) throw LatticeError(nm(x) + " v " + nm(x) + "' != 1", {x});
    if (!leq(0, x) || !leq(x, 1)) throw LatticeError(nm(x) + " is outside [0,1]", {x});
  }
  if (comp(0) != 1) throw LatticeError("0' != 1", {0});
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      std::vector<int> w{x, y};
      if (meet(x, y) != meet(y, x) || join(x, y) != join(y, x)) {
        throw LatticeError("not commutative at " + nm(x) + ", " + nm(y), w);
      }
      if (meet(x, join(x, y)) != x || join(x, meet(x, y)) != x) {
        throw LatticeError("absorption fails at " + nm(x) + ", " + nm(y), w);
      }
      if (meet(x, y) != comp(join(comp(x), comp(y)))) {
        throw LatticeError("De Morgan fails at " + nm(x) + ", " + nm(y), w);
      }
      if (leq(x, y) && !leq(comp(y), comp(x))) {
        throw LatticeError("complement is not order-reversing at " + nm(x) + ", " + nm(y), w);
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int xy = meet(x, y);
      int jxy = join(x, y);
      for (int z = 0; z < n; ++z) {
        if (meet(xy, z) != meet(x, meet(y, z)) || join(jxy, z) != join(x, join(y, z))) {
          throw LatticeError("not associative at " + nm(x) + ", " + nm(y) + ", " + nm(z), {x, y, z});
        }
      }
    }
  }
}

FiniteOrthoLattice parse_table_lattice(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> names;
  std::vector<std::string> comp_names;
  std::vector<std::vector<std::string>> rows;
  std::string label;
  bool in_meet = false;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok[0] == "name") {
      if (tok.size() > 1) label = tok[1];
    } else if (tok[0] == "elements") {
      names.assign(tok.begin() + 1, tok.end());
    } else if (tok[0] == "comp") {
      comp_names.assign(tok.begin() + 1, tok.end());
    } else if (tok[0] == "meet") {
      in_meet = true;
    } else if (in_meet) {
      rows.push_back(tok);
    } else {
      throw LatticeError("unexpected line in table file: " + line);
    }
  }
  const int n = static_cast<int>(names.size());
  std::map<std::string, int> id;
  for (int i = 0; i < n; ++i) {
    if (!id.emplace(names[i], i).second) throw LatticeError("duplicate element name " + names[i]);
  }
  auto lookup = [&](const std::string& s) {
    auto it = id.find(s);
    if (it == id.end()) throw LatticeError("unknown element name " + s);
    return it->second;
  };
  if (static_cast<int>(comp_names.size()) != n) throw LatticeError("comp line has the wrong length");
  if (static_cast<int>(rows.size()) != n) throw LatticeError("meet matrix has the wrong height");
  std::vector<int> comp(n);
  for (int i = 0; i < n; ++i) comp[i] = lookup(comp_names[i]);
  std::vector<std::vector<int>> meet(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw LatticeError("meet row " + names[i] + " has the wrong length");
    for (int j = 0; j < n; ++j) meet[i][j] = lookup(rows[i][j]);
  }
  for (int i = 0; i < n; ++i) {
    if (comp[i] < 0 || comp[comp[i]] != i) throw LatticeError("complement is not an involution at " + names[i], {i});
  }
  std::vector<std::vector<int>> join(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) join[i][j] = comp[meet[comp[i]][comp[j]]];
  }
  FiniteOrthoLattice L = FiniteOrthoLattice::from_tables(names, comp, meet, join);
  L.name = label;
  return L;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{
      "O6",   "MO2", "G3",  "G4",   "G5",  "G6",  "G7",   "Peterson", "G5s",   "G6s1",  "G6s2",
      "G7s1", "G7s2", "L28", "L36", "L38", "L38m", "L42", "Lhat",     "L46-7", "L46-9"};
  return names;
}

std::optional<GreechieDiagram> fixture_diagram(std::string_view name) {
  if (name == "G5" || name == "G6" || name == "G7") {
    GreechieDiagram d = wagon_wheel_diagram(name[1] - '0');
    d.label = std::string(name);
    return d;
  }
  for (const auto& f : detail::kFixtureFiles) {
    if (f.name == name && f.kind == detail::FixtureKind::gdf) {
      std::istringstream in{std::string(f.text)};
      auto corpus = read_corpus(in);
      GreechieDiagram d = corpus.at(0);
      d.label = std::string(name);
      return d;
    }
  }
  return std::nullopt;
}

FiniteOrthoLattice fixture(std::string_view name) {
  auto& names = fixture_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("unknown fixture: " + std::string(name));
  }
  FiniteOrthoLattice L;
  if (auto d = fixture_diagram(name)) {
    L = FiniteOrthoLattice::from_greechie(*d);
  } else {
    auto it = std::find_if(std::begin(detail::kFixtureFiles), std::end(detail::kFixtureFiles),
                           [&](const auto& f) { return f.name == name; });
    if (it == std::end(detail::kFixtureFiles)) throw std::invalid_argument("missing fixture data: " + std::string(name));
    L = parse_table_lattice(it->text);
  }
  L.name = std::string(name);
  L.source.kind = LatticeSource::Kind::fixture;
  L.source.provenance = std::string(name);
  return L;
}

GreechieDiagram wagon_wheel_diagram(int n) {
  if (n < 3) throw std::invalid_argument("wagon wheel needs n >= 3");
  GreechieDiagram d;
  const int rim = 2 * n;
  // junction i: i; rim middle i: rim + i; spoke middle i: 2*rim + i; hub: 5n
  auto junction = [&](int i) { return i % rim; };
  auto middle = [&](int i) { return rim + i; };
  auto spoke = [&](int i) { return 2 * rim + i; };
  const int hub = 5 * n;
  d.atom_count = 5 * n + 1;
  for (int i = 0; i < rim; ++i) d.blocks.emplace_back(junction(i), middle(i), junction(i + 1));
  for (int i = 0; i < n; ++i) d.blocks.emplace_back(hub, spoke(i), middle(2 * i));
  d.label = "G" + std::to_string(n);
  validate(d);
  return d;
}

FiniteOrthoLattice wagon_wheel(int n) {
  FiniteOrthoLattice L = FiniteOrthoLattice::from_greechie(wagon_wheel_diagram(n));
  L.name = "G" + std::to_string(n);
  return L;
}

FiniteOrthoLattice load_lattice(std::string_view spec) {
  auto& names = fixture_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return fixture(spec);
  if (!spec.empty() && spec.back() == '.' && spec.find('/') == std::string_view::npos) {
    try {
      return FiniteOrthoLattice::from_greechie(parse_diagram(spec));
    } catch (const DiagramError&) {
      // fall through to a file path
    }
  }
  std::ifstream in{std::string(spec)};
  if (!in) throw std::invalid_argument("not a fixture, diagram or readable file: " + std::string(spec));
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.find("elements") != std::string::npos) {
    FiniteOrthoLattice L = parse_table_lattice(text);
    if (L.name.empty()) L.name = std::string(spec);
    return L;
  }
  std::istringstream corpus(text);
  auto ds = read_corpus(corpus, {}, [&](int line, const DiagramError& e) {
    throw std::invalid_argument(std::string(spec) + ":" + std::to_string(line) + ": " + e.what());
  });
  if (ds.empty()) throw std::invalid_argument("no diagram in " + std::string(spec));
  FiniteOrthoLattice L = FiniteOrthoLattice::from_greechie(ds.front());
  L.name = std::string(spec);
  return L;
}

OrthomodularReport is_orthomodular(const FiniteOrthoLattice& L) {
  const int n = L.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (L.leq(a, b) && L.join(a, L.meet(L.comp(a), b)) != b) return {false, std::pair{a, b}};
    }
  }
  return {};
}

bool commutes(const FiniteOrthoLattice& L, int a, int b) {
  return a == L.join(L.meet(a, b), L.meet(a, L.comp(b)));
}

bool commutes_alt(const FiniteOrthoLattice& L, int a, int b) {
  return L.leq(L.meet(a, L.join(L.comp(a), b)), b);
}

bool is_distributive(const FiniteOrthoLattice& L) {
  const int n = L.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) return false;
      }
    }
  }
  return true;
}

}  // namespace omlkit

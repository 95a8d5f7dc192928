// Acceptance run: one PASS/FAIL line per criterion. Arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "naive_diagrams.hpp"
#include "omlkit/checker.hpp"
#include "omlkit/generator.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/states.hpp"

using namespace omlkit;

namespace {

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

std::map<std::string, FiniteOrthoLattice>& cache() {
  static std::map<std::string, FiniteOrthoLattice> c;
  return c;
}

const FiniteOrthoLattice& fx(const std::string& name) {
  auto it = cache().find(name);
  if (it == cache().end()) it = cache().emplace(name, fixture(name)).first;
  return it->second;
}

Verdict verdict(const FiniteOrthoLattice& L, const std::string& id) {
  const RegistryEntry* e = find_entry(id);
  if (!e) throw std::runtime_error("unknown id " + id);
  CheckOptions o;
  o.workers = workers();
  return check(L, e->statement, o).verdict;
}

bool holds(const FiniteOrthoLattice& L, const std::string& id) { return verdict(L, id) == Verdict::holds; }
bool fails(const FiniteOrthoLattice& L, const std::string& id) { return verdict(L, id) == Verdict::fails; }

bool ngo(const FiniteOrthoLattice& L, int n) {
  CheckOptions o;
  o.workers = workers();
  return check_ngo_dp(L, n, o).verdict == Verdict::holds;
}

bool noa(const FiniteOrthoLattice& L, int n) {
  CheckOptions o;
  o.workers = workers();
  return check_noa(L, n, o).verdict == Verdict::holds;
}

std::string at(const std::string& lattice, const std::string& what) { return what + " on " + lattice; }

std::vector<std::string> oml_fixtures() {
  std::vector<std::string> out;
  for (const auto& n : fixture_names())
    if (is_orthomodular(fx(n)).holds) out.push_back(n);
  return out;
}

// OML fixtures plus every legless diagram with at most eight blocks.
std::vector<std::pair<std::string, FiniteOrthoLattice>> corpus_omls() {
  static std::vector<std::pair<std::string, FiniteOrthoLattice>> out;
  if (!out.empty()) return out;
  for (const auto& n : oml_fixtures()) out.emplace_back(n, fx(n));
  GenSpec g;
  g.min_blocks = 1;
  g.max_blocks = 8;
  g.legless = true;
  generate(g, [&](const GreechieDiagram& d) {
    auto L = FiniteOrthoLattice::from_greechie(d);
    if (is_orthomodular(L).holds) out.emplace_back(serialize_diagram(d), std::move(L));
  });
  return out;
}

Outcome c1() {
  Outcome o;
  const auto& L = fx("O6");
  o.expect(!is_orthomodular(L).holds, "O6 orthomodular");
  for (const char* id : {"qm-as-id.1", "qm-as-id.2", "qm-as-id.3", "qm-as-id.4", "qm-as-id.5", "om-alt", "om-alte",
                         "omldistr1", "omldistr2", "omldistr3"})
    o.expect(fails(L, id), at("O6", std::string(id) + " does not fail"));
  return o;
}

Outcome c2() {
  Outcome o;
  const auto& L = fx("MO2");
  o.expect(is_orthomodular(L).holds, "MO2 not orthomodular");
  o.expect(fails(L, "tri-to3"), "tri-to3 holds on MO2");
  o.expect(fails(L, "tri-to4"), "tri-to4 holds on MO2");
  for (const auto& n : oml_fixtures()) o.expect(holds(fx(n), "tri-to5"), at(n, "tri-to5 fails"));
  return o;
}

Outcome c3() {
  Outcome o;
  for (int n = 3; n <= 7; ++n) {
    auto d = wagon_wheel_diagram(n);
    auto L = wagon_wheel(n);
    std::string name = "G" + std::to_string(n);
    o.expect(L.size() == 10 * n + 4, name + " size " + std::to_string(L.size()));
    o.expect(d.block_count() == 3 * n, name + " blocks " + std::to_string(d.block_count()));
    o.expect(!ngo(L, n), name + " satisfies its own n-Go");
    if (n >= 4) o.expect(ngo(L, n - 1), name + " violates (n-1)-Go");
  }
  return o;
}

Outcome c4() {
  Outcome o;
  const auto& P = fx("Peterson");
  const auto& G3 = fx("G3");
  o.expect(P.size() == 32, "Peterson size");
  o.expect(!ngo(P, 4), "Peterson satisfies 4-Go");
  o.expect(ngo(P, 3), "Peterson violates 3-Go");
  o.expect(fails(P, "new3go"), "new3go holds on Peterson");
  o.expect(holds(G3, "new3go"), "new3go fails on G3");
  o.expect(holds(P, "n-go.3"), "n-go.3 fails on Peterson");
  o.expect(fails(G3, "n-go.3"), "n-go.3 holds on G3");
  return o;
}

Outcome c5() {
  Outcome o;
  struct Row {
    const char* name;
    int size, blocks, n;
  };
  for (Row r : {Row{"G5s", 42, 0, 5}, Row{"G6s1", 44, 14, 6}, Row{"G6s2", 44, 15, 6}, Row{"G7s1", 50, 16, 7},
                Row{"G7s2", 50, 17, 7}}) {
    const auto& L = fx(r.name);
    o.expect(L.size() == r.size, at(r.name, "size " + std::to_string(L.size())));
    if (r.blocks) o.expect(L.block_count() == r.blocks, at(r.name, "blocks " + std::to_string(L.block_count())));
    o.expect(!ngo(L, r.n), at(r.name, std::to_string(r.n) + "-Go holds"));
    o.expect(ngo(L, r.n - 1), at(r.name, std::to_string(r.n - 1) + "-Go fails"));
  }
  return o;
}

Outcome c6() {
  Outcome o;
  o.expect(fails(fx("L28"), "3oa"), "3oa holds on L28");
  o.expect(holds(fx("L28"), "weak4oa"), "weak4oa fails on L28");
  o.expect(fails(fx("L38"), "weak4oa"), "weak4oa holds on L38");
  return o;
}

Outcome c7() {
  Outcome o;
  o.expect(holds(fx("L36"), "3oa"), "3oa fails on L36");
  o.expect(fails(fx("L36"), "4oa"), "4oa holds on L36");
  o.expect(fails(fx("L36"), "new3oa"), "new3oa holds on L36");
  o.expect(holds(fx("Lhat"), "new3oa"), "new3oa fails on Lhat");
  o.expect(fails(fx("Lhat"), "3oa"), "3oa holds on Lhat");
  return o;
}

Outcome c8() {
  Outcome o;
  for (const char* id : {"tr1/c", "tr1/cd"}) {
    o.expect(holds(fx("Lhat"), id), at("Lhat", std::string(id) + " fails"));
    o.expect(fails(fx("L38m"), id), at("L38m", std::string(id) + " holds"));
  }
  return o;
}

Outcome c9() {
  Outcome o;
  o.expect(fails(fx("L38m"), "3oa"), "3oa holds on L38m");
  o.expect(fails(fx("L38m"), "n-go.3"), "n-go.3 holds on L38m");
  const auto& L = fx("L42");
  o.expect(holds(L, "4oa"), "4oa fails on L42");
  o.expect(noa(L, 5), "noa.5 fails on L42");
  for (int n = 3; n <= 9; ++n) o.expect(ngo(L, n), "L42 violates " + std::to_string(n) + "-Go");
  return o;
}

Outcome c10() {
  Outcome o;
  for (const char* n : {"L46-7", "L46-9"}) {
    const auto& L = fx(n);
    o.expect(holds(L, "4oa"), at(n, "4oa fails"));
    o.expect(noa(L, 4), at(n, "noa.4 fails"));
    o.expect(!noa(L, 5), at(n, "noa.5 holds"));
    o.expect(fails(L, "noae.5"), at(n, "noae.5 holds"));
  }
  return o;
}

Outcome c11() {
  Outcome o;
  int three = 0, four = 0;
  for (const auto& n : oml_fixtures()) {
    const auto& L = fx(n);
    if (ngo(L, 3)) {
      ++three;
      o.expect(holds(L, "mayet2"), at(n, "mayet2 fails"));
    }
    if (ngo(L, 4)) {
      ++four;
      o.expect(holds(L, "mayet4"), at(n, "mayet4 fails"));
    }
  }
  o.expect(!ngo(fx("Peterson"), 4), "Peterson counted as 4GO");
  o.expect(ngo(fx("L42"), 4), "L42 not 4GO");
  o.expect(holds(fx("L42"), "mayet3"), "mayet3 fails on L42");
  o.expect(three > 0 && four > 0, "no 3GO or 4GO fixtures");
  return o;
}

void same_verdicts(Outcome& o, const std::string& lattice, const FiniteOrthoLattice& L,
                   const std::vector<std::string>& ids) {
  Verdict first = verdict(L, ids[0]);
  for (std::size_t i = 1; i < ids.size(); ++i) {
    Verdict v = verdict(L, ids[i]);
    o.expect(v == first, at(lattice, ids[i] + " " + std::string(to_string(v)) + " vs " + ids[0] + " " +
                                         std::string(to_string(first))));
  }
}

Outcome c12() {
  Outcome o;
  for (const auto& [name, L] : corpus_omls()) {
    for (int n = 3; n <= 4; ++n) {
      std::string sfx = n == 3 ? "" : "@" + std::to_string(n);
      std::vector<std::string> ids = {"n-go." + std::to_string(n), "godow1c" + sfx, "godow2c" + sfx,
                                      "godow1e" + sfx, "godow2e" + sfx, "go2n." + std::to_string(n)};
      for (int i : {1, 2, 3, 5}) ids.push_back("godow1d." + std::to_string(i) + sfx);
      for (int i : {1, 2, 4, 5}) ids.push_back("godow2d." + std::to_string(i) + sfx);
      if (n == 3) {
        for (int i : {2, 3, 4, 5}) ids.push_back("godow3a." + std::to_string(i));
        for (int i : {1, 3, 4, 5}) ids.push_back("godow3b." + std::to_string(i));
        ids.push_back("godow3c");
      }
      same_verdicts(o, name, L, ids);
    }
  }
  return o;
}

Outcome c13() {
  Outcome o;
  for (const auto& [name, L] : corpus_omls()) {
    same_verdicts(o, name, L, {"4oa", "6oa", "dist4oa"});
    same_verdicts(o, name, L, {"3oa", "go-gr3oa", "4oa-go-gr", "dist3oa"});
  }
  return o;
}

Outcome c14() {
  Outcome o;
  std::vector<std::string> ids;
  for (const auto& e : registry()) {
    const std::string& id = e.id;
    auto starts = [&](const char* p) { return id.rfind(p, 0) == 0; };
    // instances with more than four chain variables are too slow on the large fixtures
    if (id.find("@5") != std::string::npos || id.find("@6") != std::string::npos) continue;
    if (starts("oalem") || starts("god-prelemma3") || starts("govar") || id == "gon2n" || starts("goswap") ||
        id == "th4a" || id == "th4b" || starts("god-trans") || starts("omldistr") || id == "equiv5")
      ids.push_back(id);
  }
  o.expect(ids.size() >= 30, "lemma suite has only " + std::to_string(ids.size()) + " entries");
  // god-trans.i.j is an nGO law with n = max(i, j, 3); the bare id is i=3, j=5.
  auto trans_n = [](const std::string& id) {
    if (id == "god-trans") return 5;
    int i = 0, j = 0;
    std::sscanf(id.c_str(), "god-trans.%d.%d", &i, &j);
    return std::max({i, j, 3});
  };
  int trans_checked = 0;
  for (const auto& [name, L] : corpus_omls())
    for (const auto& id : ids) {
      if (id.rfind("god-trans", 0) == 0) {
        if (!ngo(L, trans_n(id))) continue;
        ++trans_checked;
      }
      o.expect(holds(L, id), at(name, id + " fails"));
    }
  o.expect(trans_checked > 0, "god-trans never checked");
  return o;
}

Outcome c15() {
  Outcome o;
  for (const auto& n : fixture_names()) {
    const auto& L = fx(n);
    if (L.size() > 44) continue;
    for (int k = 3; k <= 5; ++k) {
      std::string sfx = k == 3 ? "" : "@" + std::to_string(k);
      CheckOptions opt;
      opt.workers = workers();
      CheckReport dp = check_ngo_dp(L, k, opt);
      Verdict brute = verdict(L, "godow1d.1" + sfx);
      o.expect(dp.verdict == brute, at(n, "DP and search disagree at n=" + std::to_string(k)));
      if (dp.witness)
        o.expect(!statement_holds_at(L, expand(find_entry("godow1d.1" + sfx)->statement), *dp.witness),
                 at(n, "DP witness does not violate"));
      if (is_orthomodular(L).holds)
        o.expect(dp.verdict == verdict(L, "n-go." + std::to_string(k)),
                 at(n, "DP and n-go." + std::to_string(k) + " disagree"));
    }
  }
  return o;
}

Outcome c16() {
  Outcome o;
  for (int k = 1; k <= 4; ++k) {
    const auto all = naive::classes(k).first;
    GenSpec g;
    g.min_blocks = g.max_blocks = k;
    std::uint64_t got = count(g).total();
    o.expect(got == all.size(), "k=" + std::to_string(k) + ": " + std::to_string(got) + " vs oracle " +
                                    std::to_string(all.size()));
  }
  return o;
}

Outcome c17() {
  Outcome o;
  GenSpec a;
  a.min_blocks = 1;
  a.max_blocks = 14;
  a.legless = true;
  a.workers = workers();
  std::uint64_t na = count(a).total();
  o.expect(na == 271930, "legless <= 14 blocks: " + std::to_string(na));
  GenSpec b;
  b.min_blocks = b.max_blocks = 16;
  b.atoms = 24;
  b.legless = true;
  b.workers = workers();
  std::uint64_t nb = count(b).total();
  o.expect(nb == 207767, "legless, 24 atoms, 16 blocks: " + std::to_string(nb));
  return o;
}

Outcome c18() {
  Outcome o;
  GenSpec g;
  g.min_blocks = 1;
  g.max_blocks = 10;
  g.legless = true;
  std::vector<GreechieDiagram> corpus;
  generate(g, [&](const GreechieDiagram& d) { corpus.push_back(d); });
  ScanOptions so;
  so.workers = workers();
  ScanResult r = scan(corpus, find_entry("om-alt-v")->statement, so);
  o.expect(!corpus.empty(), "empty corpus");
  o.expect(r.violating == 0, std::to_string(r.violating) + " violations");
  o.expect(r.errored == 0 && r.inconclusive == 0, "errored or inconclusive items");
  o.expect(r.satisfying == corpus.size(), "not every item satisfied");
  return o;
}

Outcome c19() {
  Outcome o;
  o.expect(admits_strong_set(fx("MO2")).strong, "MO2 not strong");
  for (const char* n : {"O6", "G3", "Peterson", "G5s"}) o.expect(!admits_strong_set(fx(n)).strong, at(n, "strong"));
  for (const auto& n : fixture_names()) {
    const auto& L = fx(n);
    if (!admits_strong_set(L).strong) continue;
    o.expect(is_orthomodular(L).holds, at(n, "strong but not orthomodular"));
    for (int k = 3; k <= 5; ++k) o.expect(ngo(L, k), at(n, "strong but violates " + std::to_string(k) + "-Go"));
  }
  return o;
}

Outcome c20() {
  Outcome o;
  auto two = FiniteOrthoLattice::from_tables({"0", "1"}, {1, 0}, {{0, 0}, {0, 1}}, {{0, 1}, {1, 1}});
  o.expect(admits_classical_strong(two).holds, "2-element lattice");
  for (const auto& n : fixture_names()) {
    const auto& L = fx(n);
    if (L.size() >= 4) o.expect(!admits_classical_strong(L).holds, at(n, "classical strong"));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"O6 fails every orthomodularity equivalent", c1},
      {"MO2: tri-to3/4 fail, tri-to5 holds on OMLs", c2},
      {"wagon wheels G3..G7", c3},
      {"Peterson, new3go and n-go.3", c4},
      {"G5s, G6s1/2, G7s1/2 n-Go verdicts", c5},
      {"L28 and L38: 3oa, weak4oa", c6},
      {"L36 and Lhat: 3oa, 4oa, new3oa", c7},
      {"Lhat and L38m: tr1/c, tr1/cd", c8},
      {"L38m and L42", c9},
      {"L46-7 and L46-9: noa", c10},
      {"Mayet equations", c11},
      {"n-Go equivalents agree on the corpus", c12},
      {"OA equivalents agree on the corpus", c13},
      {"OML lemma suite", c14},
      {"dynamic programming vs search", c15},
      {"generator vs naive oracle, k <= 4", c16},
      {"legless counts", c17},
      {"om-alt-v scan of legless <= 10 blocks", c18},
      {"strong sets of states", c19},
      {"classical strong sets", c20},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int num = static_cast<int>(i) + 1;
    if (!pick.empty() && !pick.count(num)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s (%d checks, %.1fs)\n", num, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.checks, secs);
    for (std::size_t k = 0; k < o.problems.size() && k < 10; ++k) std::printf("    %s\n", o.problems[k].c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}

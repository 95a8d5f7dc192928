#include <doctest.h>

#include "omlkit/checker.hpp"
#include "omlkit/generator.hpp"
#include "omlkit/lattice.hpp"

using namespace omlkit;

namespace {

// Plain odometer over all assignments, first variable slowest.
bool brute_holds(const FiniteOrthoLattice& L, const Statement& raw) {
  const Statement s = expand(raw);
  const std::size_t k = s.variables.size();
  Assignment a{s.variables, std::vector<int>(k, 0)};
  while (true) {
    if (!statement_holds_at(L, s, a)) return false;
    std::size_t i = k;
    while (i > 0 && ++a.values[i - 1] == L.size()) a.values[--i] = 0;
    if (i == 0) return true;
  }
}

std::vector<const RegistryEntry*> small_entries(std::size_t max_vars) {
  std::vector<const RegistryEntry*> out;
  for (const auto& e : registry())
    if (e.statement.variables.size() <= max_vars) out.push_back(&e);
  return out;
}

void agree_with_brute(const FiniteOrthoLattice& L, std::size_t max_vars) {
  for (const RegistryEntry* e : small_entries(max_vars)) {
    CAPTURE(L.name);
    CAPTURE(e->id);
    const bool want = brute_holds(L, e->statement);
    for (VarOrder order : {VarOrder::planned, VarOrder::depth})
      for (bool prune : {true, false}) {
        CheckOptions o;
        o.order = order;
        o.prune = prune;
        CheckReport r = check(L, e->statement, o);
        REQUIRE(r.verdict == (want ? Verdict::holds : Verdict::fails));
        if (!want) {
          REQUIRE(r.witness);
          CHECK_FALSE(statement_holds_at(L, e->statement, *r.witness));
        }
      }
  }
}

}  // namespace

TEST_SUITE("checker") {
  TEST_CASE("search agrees with brute force on small lattices") {
    agree_with_brute(fixture("MO2"), 4);
    agree_with_brute(fixture("O6"), 4);
    agree_with_brute(load_lattice("123,345."), 3);
  }

  TEST_CASE("search agrees with brute force on G3 for two-variable entries") {
    agree_with_brute(fixture("G3"), 2);
  }

  TEST_CASE("O6 violates the orthomodular law and MO2 satisfies it") {
    auto s = parse_statement("a =< b => a v (a' ^ b) = b");
    CHECK(check(fixture("O6"), s).verdict == Verdict::fails);
    CHECK(check(fixture("MO2"), s).verdict == Verdict::holds);
  }

  TEST_CASE("witness of a failure violates the statement") {
    auto L = fixture("G3");
    for (const char* id : {"n-go.3", "godow1d.1", "godow2", "godowf"}) {
      CAPTURE(id);
      CheckReport r = check(L, find_entry(id)->statement);
      REQUIRE(r.verdict == Verdict::fails);
      REQUIRE(r.witness);
      CHECK_FALSE(statement_holds_at(L, find_entry(id)->statement, *r.witness));
    }
  }

  TEST_CASE("worker count does not change the report") {
    auto L = fixture("Peterson");
    for (const char* id : {"n-go.3", "n-go.4", "3oa", "om-alt"}) {
      CAPTURE(id);
      CheckOptions one, four;
      four.workers = 4;
      CheckReport a = check(L, find_entry(id)->statement, one);
      CheckReport b = check(L, find_entry(id)->statement, four);
      CHECK(a.verdict == b.verdict);
      CHECK(a.examined == b.examined);
      CHECK(a.pruned == b.pruned);
      CHECK(format_report(L, "Peterson", id, a, false) == format_report(L, "Peterson", id, b, false));
    }
  }

  TEST_CASE("dynamic programming n-Go agrees with the exhaustive search") {
    for (const char* name : {"MO2", "G3", "Peterson"}) {
      auto L = fixture(name);
      for (int n = 3; n <= 4; ++n) {
        CAPTURE(name);
        CAPTURE(n);
        std::string id = n == 3 ? "godow1d.1" : "godow1d.1@4";
        const Statement& s = find_entry(id)->statement;
        CheckReport dp = check_ngo_dp(L, n);
        CHECK(dp.verdict == check(L, s).verdict);
        if (dp.witness) CHECK_FALSE(statement_holds_at(L, s, *dp.witness));
      }
    }
  }

  TEST_CASE("dedicated noa search agrees with the registry statement") {
    for (const char* name : {"MO2", "G3", "L28"}) {
      auto L = fixture(name);
      CAPTURE(name);
      CheckReport r = check_noa(L, 3);
      CHECK(r.verdict == check(L, find_entry("noa.3")->statement).verdict);
      CHECK(r.verdict == check(L, find_entry("3oa")->statement).verdict);
      if (r.witness) CHECK_FALSE(statement_holds_at(L, find_entry("noa.3")->statement, *r.witness));
    }
  }

  TEST_CASE("explicit order must be a permutation of the variables") {
    CheckOptions o;
    o.explicit_order = {"a", "a"};
    CHECK_THROWS((void)check(fixture("MO2"), parse_statement("a ^ b = b ^ a"), o));
    o.explicit_order = {"b", "a"};
    CHECK(check(fixture("MO2"), parse_statement("a ^ b = b ^ a"), o).verdict == Verdict::holds);
  }

  TEST_CASE("unbound variables throw") {
    CHECK_THROWS_AS((void)evaluate(fixture("MO2"), parse_term("a v b"), Assignment{{"a"}, {0}}), std::invalid_argument);
  }

  TEST_CASE("timeout yields an inconclusive verdict") {
    CheckOptions o;
    o.timeout_seconds = 0.01;
    CheckReport r = check(fixture("G5s"), find_entry("n-go.6")->statement, o);
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK_FALSE(r.witness);
  }

  TEST_CASE("report format") {
    auto L = fixture("MO2");
    CheckReport r = check(L, find_entry("om-alt")->statement);
    CHECK(format_report(L, "MO2", "om-alt", r, false) ==
          "MO2 om-alt HOLDS examined=" + std::to_string(r.examined) + " ms=-");
    CheckReport f = check(fixture("O6"), find_entry("om-alt")->statement);
    std::string line = format_report(fixture("O6"), "O6", "om-alt", f, false);
    CHECK(line.rfind("O6 om-alt FAILS witness=", 0) == 0);
  }

  TEST_CASE("scan is deterministic across worker counts") {
    GenSpec g;
    g.min_blocks = 1;
    g.max_blocks = 5;
    std::vector<GreechieDiagram> corpus;
    generate(g, [&](const GreechieDiagram& d) { corpus.push_back(d); });
    REQUIRE(corpus.size() > 5);
    const Statement& s = find_entry("n-go.3")->statement;
    auto lines = [&](int workers) {
      ScanOptions so;
      so.workers = workers;
      std::vector<std::string> out;
      ScanResult r = scan(corpus, s, so, [&](const ScanItem& it) { out.push_back(format_scan_item(it, "n-go.3", false)); });
      out.push_back(format_scan_summary(r));
      CHECK(r.items.size() == corpus.size());
      CHECK(r.violating + r.satisfying + r.errored + r.inconclusive == corpus.size());
      return out;
    };
    CHECK(lines(1) == lines(3));
  }

  TEST_CASE("scan stops after the first violator when asked") {
    std::vector<GreechieDiagram> corpus = {parse_diagram("123."), *fixture_diagram("G3"), *fixture_diagram("Peterson")};
    ScanOptions so;
    so.first_violator = true;
    ScanResult r = scan(corpus, find_entry("n-go.3")->statement, so);
    REQUIRE(r.items.size() == 2);
    CHECK(r.items[1].report.verdict == Verdict::fails);
    CHECK(r.violating == 1);
  }
}

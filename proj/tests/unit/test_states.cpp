#include <doctest.h>

#include "omlkit/lattice.hpp"
#include "omlkit/states.hpp"

using namespace omlkit;

namespace {

int el(const FiniteOrthoLattice& L, const char* name) {
  auto e = L.element_by_name(name);
  REQUIRE(e);
  return *e;
}

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("MO2: fixing x to 1 leaves y free") {
    auto L = fixture("MO2");
    StateResult lo = find_state(L, {{el(L, "x"), 1}}, el(L, "y"), Objective::minimize);
    REQUIRE(lo.feasible);
    CHECK(lo.optimum == 0);
    StateResult hi = find_state(L, {{el(L, "x"), 1}}, el(L, "y"), Objective::maximize);
    CHECK(hi.optimum == 1);
    CHECK(is_state(L, lo.state));
    CHECK(is_state(L, hi.state));
  }

  TEST_CASE("one block behaves like a probability simplex") {
    auto L = load_lattice("123.");
    const int a1 = el(L, "a1"), a2 = el(L, "a2"), a1c = el(L, "a1'");
    CHECK(find_state(L, {{a1, 1}}, a1, Objective::minimize).optimum == 1);
    CHECK(find_state(L, {{a1, 1}}, a2, Objective::maximize).optimum == 0);
    CHECK(find_state(L, {{a1, 1}}, a1c, Objective::maximize).optimum == 0);
    CHECK(find_state(L, {{a1, Rational(1, 3)}}, a2, Objective::maximize).optimum == Rational(2, 3));
    CHECK(find_state(L, {{a1, Rational(1, 3)}}, a1c, Objective::minimize).optimum == Rational(2, 3));
    CHECK_FALSE(find_state(L, {{a1, Rational(2, 3)}, {a2, Rational(2, 3)}}, a1, Objective::minimize).feasible);
  }

  TEST_CASE("atom and element models give the same optima") {
    for (const char* name : {"G3", "Peterson", "L28"}) {
      auto L = fixture(name);
      const int n = L.size();
      for (int p = 2; p < n; p += 3)
        for (int q = 2; q < n; q += 5) {
          CAPTURE(name);
          CAPTURE(p);
          CAPTURE(q);
          for (Objective obj : {Objective::minimize, Objective::maximize}) {
            StateResult a = find_state(L, {{p, 1}}, q, obj, StateModel::atoms);
            StateResult b = find_state(L, {{p, 1}}, q, obj, StateModel::elements);
            REQUIRE(a.feasible == b.feasible);
            if (!a.feasible) continue;
            CHECK(a.optimum == b.optimum);
            CHECK(is_state(L, a.state));
            CHECK(is_state(L, b.state));
          }
        }
    }
  }

  TEST_CASE("is_state rejects broken assignments") {
    auto L = fixture("MO2");
    State m{std::vector<Rational>(L.size())};
    m.value[el(L, "1")] = 1;
    m.value[el(L, "x")] = Rational(1, 4);
    m.value[el(L, "x'")] = Rational(3, 4);
    m.value[el(L, "y")] = Rational(1, 2);
    m.value[el(L, "y'")] = Rational(1, 2);
    CHECK(is_state(L, m));
    State bad = m;
    bad.value[el(L, "x'")] = Rational(1, 2);
    std::string why;
    CHECK_FALSE(is_state(L, bad, &why));
    CHECK_FALSE(why.empty());
    bad = m;
    bad.value[el(L, "0")] = Rational(1, 8);
    CHECK_FALSE(is_state(L, bad));
    bad = m;
    bad.value[el(L, "y")] = Rational(3, 2);
    bad.value[el(L, "y'")] = Rational(-1, 2);
    CHECK_FALSE(is_state(L, bad));
  }

  TEST_CASE("strong sets: models agree and witnesses are states") {
    for (const char* name : {"MO2", "O6", "G3", "Peterson", "L28"}) {
      auto L = fixture(name);
      CAPTURE(name);
      StrongSetReport r = admits_strong_set(L);
      for (const auto& [p, m] : r.witnesses) {
        CHECK(is_state(L, m));
        CHECK(m.value[p] == 1);
      }
      if (L.source.diagram) {
        StrongSetReport e = admits_strong_set(L, StateModel::elements);
        CHECK(e.strong == r.strong);
        CHECK(e.failing_pair == r.failing_pair);
      }
      if (!r.strong) {
        REQUIRE(r.failing_pair);
        auto [p, q] = *r.failing_pair;
        CHECK_FALSE(L.leq(p, q));
        if (!r.no_state_for_p) CHECK(find_state(L, {{p, 1}}, q).optimum == 1);
      }
    }
    CHECK(admits_strong_set(fixture("MO2")).strong);
    CHECK_FALSE(admits_strong_set(fixture("G3")).strong);
  }

  TEST_CASE("classical strong holds only on the two-element lattice") {
    auto two = FiniteOrthoLattice::from_tables({"0", "1"}, {1, 0}, {{0, 0}, {0, 1}}, {{0, 1}, {1, 1}});
    CHECK(admits_classical_strong(two).holds);
    CHECK_FALSE(admits_classical_strong(fixture("MO2")).holds);
    CHECK_FALSE(admits_classical_strong(load_lattice("123.")).holds);
  }
}

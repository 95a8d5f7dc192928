#include <doctest.h>

#include "omlkit/lattice.hpp"

using namespace omlkit;

namespace {

// Ortholattice laws checked element by element.
void check_ortholattice_laws(const FiniteOrthoLattice& L) {
  const int n = L.size();
  for (int x = 0; x < n; ++x) {
    REQUIRE(L.comp(L.comp(x)) == x);
    REQUIRE(L.meet(x, L.comp(x)) == 0);
    REQUIRE(L.join(x, L.comp(x)) == 1);
    for (int y = 0; y < n; ++y) {
      REQUIRE(L.meet(x, y) == L.meet(y, x));
      REQUIRE(L.join(x, L.meet(x, y)) == x);
      REQUIRE(L.comp(L.meet(x, y)) == L.join(L.comp(x), L.comp(y)));
      for (int z = 0; z < n; ++z) REQUIRE(L.meet(L.meet(x, y), z) == L.meet(x, L.meet(y, z)));
    }
  }
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("every fixture satisfies the ortholattice laws") {
    for (const auto& name : fixture_names()) {
      CAPTURE(name);
      check_ortholattice_laws(fixture(name));
    }
  }

  TEST_CASE("fixture sizes: twice the atoms plus two") {
    for (const auto& name : fixture_names()) {
      auto d = fixture_diagram(name);
      if (!d) continue;
      CAPTURE(name);
      CHECK(fixture(name).size() == 2 * d->atom_count + 2);
    }
    CHECK(fixture("G3").size() == 34);
    CHECK(fixture("Peterson").size() == 32);
    CHECK(fixture("G5s").size() == 42);
    CHECK(fixture("G6s1").size() == 44);
    CHECK(fixture("G7s1").size() == 50);
    CHECK(fixture("L42").size() == 42);
    CHECK(fixture("O6").size() == 6);
    CHECK(fixture("MO2").size() == 6);
  }

  TEST_CASE("O6 is not orthomodular, MO2 and pastings are") {
    auto r = is_orthomodular(fixture("O6"));
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    const auto L = fixture("O6");
    auto [a, b] = *r.witness;
    CHECK(L.leq(a, b));
    CHECK(L.join(a, L.meet(L.comp(a), b)) != b);
    CHECK(is_orthomodular(fixture("MO2")).holds);
    CHECK(is_orthomodular(fixture("G3")).holds);
    CHECK_FALSE(is_distributive(fixture("MO2")));
    CHECK(is_distributive(load_lattice("123.")));
  }

  TEST_CASE("wagon wheel sizes and G3") {
    for (int n = 3; n <= 7; ++n) {
      auto d = wagon_wheel_diagram(n);
      CHECK(d.block_count() == 3 * n);
      CHECK(wagon_wheel(n).size() == 10 * n + 4);
    }
    CHECK(isomorphic(wagon_wheel_diagram(3), *fixture_diagram("G3")));
  }

  TEST_CASE("element names and lookup") {
    auto L = fixture("MO2");
    for (int e = 0; e < L.size(); ++e) CHECK(L.element_by_name(L.element_name(e)) == e);
    CHECK_FALSE(L.element_by_name("nope"));
  }

  TEST_CASE("load_lattice accepts fixtures and gdf lines") {
    CHECK(load_lattice("Peterson").size() == 32);
    CHECK(load_lattice("123,345.").size() == 12);
    CHECK_THROWS((void)load_lattice("not-a-fixture"));
  }
}

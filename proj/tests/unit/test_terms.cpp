#include <doctest.h>

#include <functional>
#include <set>

#include "omlkit/checker.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/terms.hpp"

using namespace omlkit;

namespace {

std::vector<Term> vars(int n) {
  std::vector<Term> v;
  for (int i = 1; i <= n; ++i) v.push_back(t::var("a" + std::to_string(i)));
  return v;
}

Assignment ab(int a, int b) { return Assignment{{"a", "b"}, {a, b}}; }

}  // namespace

TEST_SUITE("terms") {
  TEST_CASE("every registry entry round-trips through text") {
    for (const auto& e : registry()) {
      CAPTURE(e.id);
      Statement again = parse_statement(to_string(e.statement));
      CHECK(to_string(again) == to_string(e.statement));
      CHECK(find_entry(e.id) == &e);
    }
    CHECK(find_entry("no-such-id") == nullptr);
  }

  TEST_CASE("registry ids are unique") {
    std::set<std::string> seen;
    for (const auto& e : registry()) CHECK(seen.insert(e.id).second);
  }

  TEST_CASE("expansion is primitive and keeps variables") {
    for (const auto& e : registry()) {
      CAPTURE(e.id);
      Statement x = expand(e.statement);
      CHECK(is_primitive(x.conclusion.lhs));
      CHECK(is_primitive(x.conclusion.rhs));
      for (const auto& h : x.hypotheses) CHECK(is_primitive(h.lhs));
    }
  }

  TEST_CASE("oan expansion size follows the recurrence") {
    // S(3) = 31, S(n) = 3 S(n-1) + 2
    std::size_t want = 31;
    for (int n = 3; n <= 7; ++n) {
      CAPTURE(n);
      CHECK(tree_size(expand(t::oan(vars(n)))) == want);
      want = 3 * want + 2;
    }
  }

  TEST_CASE("implications match their lattice formulas on MO2 and O6") {
    // x' stands for comp, ^ for meet, v for join
    for (const char* name : {"MO2", "O6"}) {
      auto L = fixture(name);
      auto c = [&](int x) { return L.comp(x); };
      auto m = [&](int x, int y) { return L.meet(x, y); };
      auto j = [&](int x, int y) { return L.join(x, y); };
      std::vector<std::function<int(int, int)>> impl = {
          [&](int a, int b) { return j(c(a), b); },
          [&](int a, int b) { return j(c(a), m(a, b)); },
          [&](int a, int b) { return j(b, m(c(a), c(b))); },
          [&](int a, int b) { return j(j(m(c(a), b), m(c(a), c(b))), m(a, j(c(a), b))); },
          [&](int a, int b) { return j(j(m(a, b), m(c(a), b)), m(j(c(a), b), c(b))); },
          [&](int a, int b) { return j(j(m(a, b), m(c(a), b)), m(c(a), c(b))); },
      };
      for (int i = 0; i <= 5; ++i) {
        Term ti = parse_term("a ->" + std::to_string(i) + " b");
        for (int a = 0; a < L.size(); ++a)
          for (int b = 0; b < L.size(); ++b) {
            CAPTURE(name);
            CAPTURE(i);
            CHECK(evaluate(L, ti, ab(a, b)) == impl[i](a, b));
          }
      }
      Term eq = parse_term("a == b");
      for (int a = 0; a < L.size(); ++a)
        for (int b = 0; b < L.size(); ++b) CHECK(evaluate(L, eq, ab(a, b)) == j(m(a, b), m(c(a), c(b))));
    }
  }

  TEST_CASE("equivalence 5 equals the plain equivalence on orthomodular fixtures") {
    Term e = parse_term("a == b"), e5 = parse_term("a ==5 b");
    for (const auto& name : fixture_names()) {
      auto L = fixture(name);
      if (!is_orthomodular(L).holds) continue;
      CAPTURE(name);
      bool same = true;
      for (int a = 0; a < L.size() && same; ++a)
        for (int b = 0; b < L.size() && same; ++b) same = evaluate(L, e, ab(a, b)) == evaluate(L, e5, ab(a, b));
      CHECK(same);
    }
  }

  TEST_CASE("variables are listed in order of first appearance") {
    Statement s = parse_statement("c _|_ b & a C c => (b v a) ^ d =< c'");
    CHECK(s.variables == std::vector<std::string>{"c", "b", "a", "d"});
    CHECK(s.hypotheses.size() == 2);
    CHECK(s.hypotheses[0].rel == Rel::perp);
    CHECK(s.hypotheses[1].rel == Rel::commutes);
    CHECK(s.conclusion.rel == Rel::le);
  }

  TEST_CASE("operator precedence: complement, meet, join, arrows") {
    CHECK(structurally_equal(parse_term("a v b ^ c'"), t::join(t::var("a"), t::meet(t::var("b"), t::comp(t::var("c"))))));
    CHECK(structurally_equal(parse_term("(a v b)'"), t::comp(t::join(t::var("a"), t::var("b")))));
    CHECK(structurally_equal(parse_term("0 v 1"), t::join(t::zero(), t::one())));
  }

  TEST_CASE("malformed input raises ParseError") {
    for (const char* bad : {"a v", "(a ^ b", "a ->9 b", "a = ", "gamma(a)", "a b", "=> a = b", "a ==7 b"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS((void)parse_statement(bad), ParseError);
    }
  }
}

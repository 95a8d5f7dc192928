#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omlkit {

enum class Op : unsigned char {
  var,
  zero,
  one,
  comp,
  meet,
  join,
  impl,        // a ->i b, param = i in 0..5
  equiv,       // a == b
  equiv_i,     // a ==i b, param = i in 1..5
  gamma,       // cyclic ->1 chain
  delta,       // cyclic ->2 chain
  chain_eq,    // (a1 == a2) ^ ... ^ (a(n-1) == an)
  chain_impl,  // (a1 ->1 a2) ^ ... ^ (a(n-1) ->1 an)
  sasaki,      // (a ->1 b')'
  oa3,         // a ==^c_i b, param = i in 1..4, args a b c
  oa4,         // a ==^{c,d}_i b, param = i in 1..4, args a b c d
  oan,         // a1 ==(n) a2, args a1..an
};

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::zero;
  int param = 0;
  std::string name;  // variables only
  std::vector<Term> args;
};

namespace t {
Term var(std::string name);
Term zero();
Term one();
Term comp(Term a);
Term meet(Term a, Term b);
Term join(Term a, Term b);
Term impl(int i, Term a, Term b);
Term equiv(Term a, Term b);
Term equiv_i(int i, Term a, Term b);
Term gamma(std::vector<Term> args);
Term delta(std::vector<Term> args);
Term chain_eq(std::vector<Term> args);
Term chain_impl(std::vector<Term> args);
Term sasaki(Term a, Term b);
Term oa3(int i, Term a, Term b, Term c);
Term oa4(int i, Term a, Term b, Term c, Term d);
Term oan(std::vector<Term> args);
/// Left-nested meet/join of a non-empty list.
Term meet_all(const std::vector<Term>& xs);
Term join_all(const std::vector<Term>& xs);
}  // namespace t

enum class Rel : unsigned char { eq, le, perp, commutes };

struct Relation {
  Rel rel = Rel::eq;
  Term lhs;
  Term rhs;
};

struct Statement {
  std::vector<Relation> hypotheses;
  Relation conclusion;
  std::vector<std::string> variables;  // first-appearance order
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  [[nodiscard]] std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

[[nodiscard]] Term parse_term(std::string_view text);
[[nodiscard]] Statement parse_statement(std::string_view text);

[[nodiscard]] std::string to_string(const Term& t);
[[nodiscard]] std::string to_string(const Relation& r);
[[nodiscard]] std::string to_string(const Statement& s);

/// Rewrites every derived node into {var, 0, 1, ', ^, v}.
[[nodiscard]] Term expand(const Term& t);
[[nodiscard]] Statement expand(const Statement& s);
[[nodiscard]] bool is_primitive(const Term& t);
[[nodiscard]] bool structurally_equal(const Term& a, const Term& b);
/// Node count of the term as a tree.
[[nodiscard]] std::size_t tree_size(const Term& t);
[[nodiscard]] std::vector<std::string> free_variables(const Term& t);

struct RegistryEntry {
  std::string id;
  std::string text;
  Statement statement;
  std::string provenance;
  std::string note;  // expected variety, e.g. "holds in all OML"
};

[[nodiscard]] const std::vector<RegistryEntry>& registry();
[[nodiscard]] const RegistryEntry* find_entry(std::string_view id);
/// One tab-separated line per entry: id, statement, provenance, note.
[[nodiscard]] std::string registry_catalogue();

}  // namespace omlkit

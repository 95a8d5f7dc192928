#include "omlkit/terms.hpp"

#include <cctype>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace omlkit {

namespace t {

namespace {
Term make(Op op, int param, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->param = param;
  n->args = std::move(args);
  return n;
}
}  // namespace

Term var(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::var;
  n->name = std::move(name);
  return n;
}
Term zero() {
  static const Term z = make(Op::zero, 0, {});
  return z;
}
Term one() {
  static const Term o = make(Op::one, 0, {});
  return o;
}
Term comp(Term a) { return make(Op::comp, 0, {std::move(a)}); }
Term meet(Term a, Term b) { return make(Op::meet, 0, {std::move(a), std::move(b)}); }
Term join(Term a, Term b) { return make(Op::join, 0, {std::move(a), std::move(b)}); }
Term impl(int i, Term a, Term b) { return make(Op::impl, i, {std::move(a), std::move(b)}); }
Term equiv(Term a, Term b) { return make(Op::equiv, 0, {std::move(a), std::move(b)}); }
Term equiv_i(int i, Term a, Term b) { return make(Op::equiv_i, i, {std::move(a), std::move(b)}); }
Term gamma(std::vector<Term> args) { return make(Op::gamma, 0, std::move(args)); }
Term delta(std::vector<Term> args) { return make(Op::delta, 0, std::move(args)); }
Term chain_eq(std::vector<Term> args) { return make(Op::chain_eq, 0, std::move(args)); }
Term chain_impl(std::vector<Term> args) { return make(Op::chain_impl, 0, std::move(args)); }
Term sasaki(Term a, Term b) { return make(Op::sasaki, 0, {std::move(a), std::move(b)}); }
Term oa3(int i, Term a, Term b, Term c) {
  return make(Op::oa3, i, {std::move(a), std::move(b), std::move(c)});
}
Term oa4(int i, Term a, Term b, Term c, Term d) {
  return make(Op::oa4, i, {std::move(a), std::move(b), std::move(c), std::move(d)});
}
Term oan(std::vector<Term> args) {
  int n = static_cast<int>(args.size());
  return make(Op::oan, n, std::move(args));
}
Term meet_all(const std::vector<Term>& xs) {
  Term acc = xs.at(0);
  for (std::size_t i = 1; i < xs.size(); ++i) acc = meet(acc, xs[i]);
  return acc;
}
Term join_all(const std::vector<Term>& xs) {
  Term acc = xs.at(0);
  for (std::size_t i = 1; i < xs.size(); ++i) acc = join(acc, xs[i]);
  return acc;
}

}  // namespace t

// ---------------------------------------------------------------- parsing

namespace {

bool is_ident_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Statement statement() {
    Statement st;
    std::vector<Relation> rels;
    rels.push_back(relation());
    bool inference = false;
    for (;;) {
      skip();
      if (accept("&")) {
        rels.push_back(relation());
      } else if (accept("=>")) {
        inference = true;
        break;
      } else {
        break;
      }
    }
    if (inference) {
      st.hypotheses = std::move(rels);
      st.conclusion = relation();
    } else {
      if (rels.size() != 1) throw ParseError("hypotheses without '=>'", pos_);
      st.conclusion = rels[0];
    }
    end();
    st.variables = vars_;
    return st;
  }

  Term term_only() {
    Term x = arrow();
    end();
    return x;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
  std::unordered_set<std::string> seen_;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) throw ParseError("expected '" + std::string(tok) + "'", pos_);
  }
  void end() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
  }

  // Word starting at pos_ (lowercase letters, digits, underscore).
  std::string_view word_at(std::size_t p) const {
    std::size_t q = p;
    while (q < s_.size() && is_ident_char(s_[q])) ++q;
    return s_.substr(p, q - p);
  }

  bool at_join() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != 'v') return false;
    return word_at(pos_) == "v";
  }

  // Arrow/identity operator at pos_; returns kind and index without consuming.
  struct ArrowOp {
    Op op;
    int index;
    std::size_t len;
  };
  std::optional<ArrowOp> arrow_op() {
    skip();
    if (s_.substr(pos_, 2) == "->") {
      if (pos_ + 2 < s_.size() && s_[pos_ + 2] >= '0' && s_[pos_ + 2] <= '5') {
        return ArrowOp{Op::impl, s_[pos_ + 2] - '0', 3};
      }
      throw ParseError("'->' needs an index 0..5", pos_);
    }
    if (s_.substr(pos_, 2) == "==") {
      if (pos_ + 2 < s_.size() && s_[pos_ + 2] >= '1' && s_[pos_ + 2] <= '5') {
        return ArrowOp{Op::equiv_i, s_[pos_ + 2] - '0', 3};
      }
      return ArrowOp{Op::equiv, 0, 2};
    }
    return std::nullopt;
  }

  Relation relation() {
    Relation r;
    r.lhs = arrow();
    skip();
    if (accept("=<")) {
      r.rel = Rel::le;
    } else if (peek("=>") || peek("==")) {
      throw ParseError("expected a relation", pos_);
    } else if (accept("=")) {
      r.rel = Rel::eq;
    } else if (accept("_|_")) {
      r.rel = Rel::perp;
    } else if (peek("C") && (pos_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      r.rel = Rel::commutes;
    } else {
      throw ParseError("expected a relation", pos_);
    }
    r.rhs = arrow();
    return r;
  }

  Term arrow() {
    Term lhs = join_expr();
    auto op = arrow_op();
    if (!op) return lhs;
    pos_ += op->len;
    Term rhs = join_expr();
    if (auto again = arrow_op()) {
      throw ParseError("parentheses required between arrow/identity operators", pos_);
    }
    switch (op->op) {
      case Op::impl: return t::impl(op->index, lhs, rhs);
      case Op::equiv_i: return t::equiv_i(op->index, lhs, rhs);
      default: return t::equiv(lhs, rhs);
    }
  }

  Term join_expr() {
    Term x = meet_expr();
    while (at_join()) {
      ++pos_;
      x = t::join(x, meet_expr());
    }
    return x;
  }

  Term meet_expr() {
    Term x = postfix();
    while (accept("^")) x = t::meet(x, postfix());
    return x;
  }

  Term postfix() {
    Term x = primary();
    while (accept("'")) x = t::comp(x);
    return x;
  }

  std::vector<Term> args_until(char close, std::size_t& count_pos) {
    std::vector<Term> out;
    count_pos = pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == close) return out;
    out.push_back(arrow());
    while (accept(",")) out.push_back(arrow());
    return out;
  }

  Term builtin(std::string_view name, std::size_t start) {
    std::size_t p = 0;
    auto arity_error = [&](const std::string& what) {
      throw ParseError(std::string(name) + ": " + what, start);
    };
    if (name == "oan") {
      skip();
      std::size_t q = pos_;
      while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
      if (q == pos_) throw ParseError("oan: expected a count", pos_);
      int n = std::stoi(std::string(s_.substr(pos_, q - pos_)));
      pos_ = q;
      if (n < 3) throw ParseError("oan needs n >= 3", start);
      expect(";");
      std::vector<Term> xs = args_until(')', p);
      expect(")");
      if (static_cast<int>(xs.size()) != n) arity_error("expected " + std::to_string(n) + " arguments");
      return t::oan(std::move(xs));
    }
    int index = 1;
    std::string_view base = name;
    if (name.starts_with("cdeq") || name.starts_with("ceq")) {
      base = name.starts_with("cdeq") ? name.substr(0, 4) : name.substr(0, 3);
      std::string_view suffix = name.substr(base.size());
      if (!suffix.empty()) {
        if (suffix.size() != 1 || suffix[0] < '1' || suffix[0] > '4') arity_error("index must be 1..4");
        index = suffix[0] - '0';
      }
      std::vector<Term> left = args_until(';', p);
      expect(";");
      std::vector<Term> right = args_until(')', p);
      expect(")");
      if (left.size() != 2) arity_error("expected two arguments before ';'");
      if (base == "ceq") {
        if (right.size() != 1) arity_error("expected one argument after ';'");
        return t::oa3(index, left[0], left[1], right[0]);
      }
      if (right.size() != 2) arity_error("expected two arguments after ';'");
      return t::oa4(index, left[0], left[1], right[0], right[1]);
    }
    std::vector<Term> xs = args_until(')', p);
    expect(")");
    if (name == "sasaki") {
      if (xs.size() != 2) arity_error("expected 2 arguments");
      return t::sasaki(xs[0], xs[1]);
    }
    if (xs.size() < 2) arity_error("expected at least 2 arguments");
    if (name == "gamma") return t::gamma(std::move(xs));
    if (name == "delta") return t::delta(std::move(xs));
    if (name == "chain==") return t::chain_eq(std::move(xs));
    return t::chain_impl(std::move(xs));
  }

  Term primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    std::size_t start = pos_;
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Term x = arrow();
      expect(")");
      return x;
    }
    if (c == '0' || c == '1') {
      if (pos_ + 1 < s_.size() && is_ident_char(s_[pos_ + 1])) throw ParseError("bad constant", pos_);
      ++pos_;
      return c == '0' ? t::zero() : t::one();
    }
    if (!std::islower(static_cast<unsigned char>(c))) {
      throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
    std::string_view w = word_at(pos_);
    if (w == "chain") {
      std::size_t q = pos_ + w.size();
      std::string_view rest = s_.substr(q, 3);
      if (rest == "==(" || rest == "->(") {
        pos_ = q + 3;
        return builtin(rest == "==(" ? "chain==" : "chain->", start);
      }
    }
    pos_ += w.size();
    if (w == "v") throw ParseError("'v' is the join operator", start);
    std::size_t after = pos_;
    skip();
    bool call = pos_ < s_.size() && s_[pos_] == '(';
    static const std::unordered_set<std::string_view> kFixed = {"gamma", "delta", "oan", "sasaki"};
    bool is_builtin = kFixed.contains(w) || w.starts_with("ceq") || w.starts_with("cdeq");
    if (call && is_builtin) {
      ++pos_;
      return builtin(w, start);
    }
    if (call) throw ParseError("unknown function '" + std::string(w) + "'", start);
    pos_ = after;
    std::string name(w);
    if (seen_.insert(name).second) vars_.push_back(name);
    return t::var(name);
  }
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).term_only(); }

Statement parse_statement(std::string_view text) { return Parser(text).statement(); }

// ---------------------------------------------------------------- printing

namespace {

int level(const Node& n) {
  switch (n.op) {
    case Op::impl:
    case Op::equiv:
    case Op::equiv_i: return 1;
    case Op::join: return 2;
    case Op::meet: return 3;
    case Op::comp: return 4;
    default: return 5;
  }
}

void print(const Term& x, int min_level, std::string& out);

void print_list(const std::vector<Term>& xs, std::size_t from, std::size_t to, std::string& out) {
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ", ";
    print(xs[i], 1, out);
  }
}

void print(const Term& x, int min_level, std::string& out) {
  const Node& n = *x;
  bool paren = level(n) < min_level;
  if (paren) out += '(';
  switch (n.op) {
    case Op::var: out += n.name; break;
    case Op::zero: out += '0'; break;
    case Op::one: out += '1'; break;
    case Op::comp:
      print(n.args[0], 4, out);
      out += '\'';
      break;
    case Op::meet:
      print(n.args[0], 3, out);
      out += " ^ ";
      print(n.args[1], 4, out);
      break;
    case Op::join:
      // meets under a join are parenthesized for readability
      print(n.args[0], n.args[0]->op == Op::join ? 2 : 4, out);
      out += " v ";
      print(n.args[1], 4, out);
      break;
    case Op::impl:
    case Op::equiv:
    case Op::equiv_i:
      print(n.args[0], 4, out);
      if (n.op == Op::impl) out += " ->" + std::to_string(n.param) + " ";
      else if (n.op == Op::equiv) out += " == ";
      else out += " ==" + std::to_string(n.param) + " ";
      print(n.args[1], 4, out);
      break;
    case Op::gamma:
    case Op::delta:
    case Op::chain_eq:
    case Op::chain_impl:
      out += n.op == Op::gamma ? "gamma(" : n.op == Op::delta ? "delta(" : n.op == Op::chain_eq ? "chain==(" : "chain->(";
      print_list(n.args, 0, n.args.size(), out);
      out += ')';
      break;
    case Op::sasaki:
      out += "sasaki(";
      print_list(n.args, 0, 2, out);
      out += ')';
      break;
    case Op::oa3:
    case Op::oa4:
      out += n.op == Op::oa3 ? "ceq" : "cdeq";
      if (n.param != 1) out += std::to_string(n.param);
      out += '(';
      print_list(n.args, 0, 2, out);
      out += "; ";
      print_list(n.args, 2, n.args.size(), out);
      out += ')';
      break;
    case Op::oan:
      out += "oan(" + std::to_string(n.args.size()) + "; ";
      print_list(n.args, 0, n.args.size(), out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

std::string_view rel_text(Rel r) {
  switch (r) {
    case Rel::eq: return " = ";
    case Rel::le: return " =< ";
    case Rel::perp: return " _|_ ";
    case Rel::commutes: return " C ";
  }
  return " ? ";
}

}  // namespace

std::string to_string(const Term& x) {
  std::string out;
  print(x, 1, out);
  return out;
}

std::string to_string(const Relation& r) {
  std::string out;
  print(r.lhs, 1, out);
  out += rel_text(r.rel);
  print(r.rhs, 1, out);
  return out;
}

std::string to_string(const Statement& s) {
  std::string out;
  for (std::size_t i = 0; i < s.hypotheses.size(); ++i) {
    if (i) out += " & ";
    out += to_string(s.hypotheses[i]);
  }
  if (!s.hypotheses.empty()) out += " => ";
  out += to_string(s.conclusion);
  return out;
}

// ---------------------------------------------------------------- expansion

namespace {

using namespace t;

Term to(int i, const Term& a, const Term& b) {
  switch (i) {
    case 0: return join(comp(a), b);
    case 1: return join(comp(a), meet(a, b));
    case 2: return to(1, comp(b), comp(a));
    case 3: return join(join(meet(comp(a), b), meet(comp(a), comp(b))), meet(a, join(comp(a), b)));
    case 4: return to(3, comp(b), comp(a));
    default: return join(join(meet(a, b), meet(comp(a), b)), meet(comp(a), comp(b)));
  }
}

Term oa3_expanded(int i, const Term& a, const Term& b, const Term& c) {
  if (i == 1 || i == 3) {
    return join(meet(to(i, a, c), to(i, b, c)), meet(to(i, comp(a), c), to(i, comp(b), c)));
  }
  return join(meet(to(i, c, a), to(i, c, b)), meet(to(i, c, comp(a)), to(i, c, comp(b))));
}

Term oa4_expanded(int i, const Term& a, const Term& b, const Term& c, const Term& d) {
  return join(oa3_expanded(i, a, b, d), meet(oa3_expanded(i, a, c, d), oa3_expanded(i, b, c, d)));
}

// x ==(n) y over the fixed extra variables rest = a3..an.
Term oan_expanded(std::size_t n, const Term& x, const Term& y, const std::vector<Term>& rest) {
  if (n == 3) return oa3_expanded(1, x, y, rest[0]);
  const Term& an = rest[n - 3];
  return join(oan_expanded(n - 1, x, y, rest),
              meet(oan_expanded(n - 1, x, an, rest), oan_expanded(n - 1, y, an, rest)));
}

Term cyclic(int i, const std::vector<Term>& xs) {
  std::vector<Term> parts;
  for (std::size_t k = 0; k < xs.size(); ++k) parts.push_back(to(i, xs[k], xs[(k + 1) % xs.size()]));
  return meet_all(parts);
}

Term expand_rec(const Term& x, std::unordered_map<const Node*, Term>& memo) {
  if (auto it = memo.find(x.get()); it != memo.end()) return it->second;
  std::vector<Term> a;
  a.reserve(x->args.size());
  for (const Term& c : x->args) a.push_back(expand_rec(c, memo));
  Term r;
  switch (x->op) {
    case Op::var:
    case Op::zero:
    case Op::one: r = x; break;
    case Op::comp: r = a[0] == x->args[0] ? x : comp(a[0]); break;
    case Op::meet:
    case Op::join:
      if (a[0] == x->args[0] && a[1] == x->args[1]) r = x;
      else r = x->op == Op::meet ? meet(a[0], a[1]) : join(a[0], a[1]);
      break;
    case Op::impl: r = to(x->param, a[0], a[1]); break;
    case Op::equiv: r = join(meet(a[0], a[1]), meet(comp(a[0]), comp(a[1]))); break;
    case Op::equiv_i: r = meet(to(x->param, a[0], a[1]), to(0, a[1], a[0])); break;
    case Op::gamma: r = cyclic(1, a); break;
    case Op::delta: r = cyclic(2, a); break;
    case Op::chain_eq:
    case Op::chain_impl: {
      std::vector<Term> parts;
      for (std::size_t k = 0; k + 1 < a.size(); ++k) {
        parts.push_back(x->op == Op::chain_eq ? join(meet(a[k], a[k + 1]), meet(comp(a[k]), comp(a[k + 1])))
                                              : to(1, a[k], a[k + 1]));
      }
      r = meet_all(parts);
      break;
    }
    case Op::sasaki: r = comp(to(1, a[0], comp(a[1]))); break;
    case Op::oa3: r = oa3_expanded(x->param, a[0], a[1], a[2]); break;
    case Op::oa4: r = oa4_expanded(x->param, a[0], a[1], a[2], a[3]); break;
    case Op::oan: {
      std::vector<Term> rest(a.begin() + 2, a.end());
      r = oan_expanded(a.size(), a[0], a[1], rest);
      break;
    }
  }
  memo.emplace(x.get(), r);
  return r;
}

}  // namespace

Term expand(const Term& x) {
  std::unordered_map<const Node*, Term> memo;
  return expand_rec(x, memo);
}

Statement expand(const Statement& s) {
  Statement out = s;
  std::unordered_map<const Node*, Term> memo;
  for (Relation& r : out.hypotheses) {
    r.lhs = expand_rec(r.lhs, memo);
    r.rhs = expand_rec(r.rhs, memo);
  }
  out.conclusion.lhs = expand_rec(out.conclusion.lhs, memo);
  out.conclusion.rhs = expand_rec(out.conclusion.rhs, memo);
  return out;
}

bool is_primitive(const Term& x) {
  switch (x->op) {
    case Op::var:
    case Op::zero:
    case Op::one: return true;
    case Op::comp:
    case Op::meet:
    case Op::join:
      for (const Term& c : x->args) {
        if (!is_primitive(c)) return false;
      }
      return true;
    default: return false;
  }
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->op != b->op || a->param != b->param || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

std::size_t tree_size(const Term& x) {
  std::size_t n = 1;
  for (const Term& c : x->args) n += tree_size(c);
  return n;
}

namespace {
void collect(const Term& x, std::vector<std::string>& out, std::unordered_set<std::string>& seen) {
  if (x->op == Op::var) {
    if (seen.insert(x->name).second) out.push_back(x->name);
    return;
  }
  for (const Term& c : x->args) collect(c, out, seen);
}
}  // namespace

std::vector<std::string> free_variables(const Term& x) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect(x, out, seen);
  return out;
}

}  // namespace omlkit

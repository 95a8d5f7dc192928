#include "omlkit/checker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace omlkit {

std::optional<int> Assignment::get(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == name) return values[i];
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "HOLDS";
    case Verdict::fails: return "FAILS";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

// ---------------------------------------------------------------- direct evaluation

namespace {

int eval_rec(const FiniteOrthoLattice& L, const Term& t, const Assignment& a,
             std::unordered_map<const Node*, int>& memo) {
  if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
  int r = 0;
  switch (t->op) {
    case Op::var: {
      auto v = a.get(t->name);
      if (!v) throw std::invalid_argument("unbound variable '" + t->name + "'");
      if (*v < 0 || *v >= L.size()) throw std::invalid_argument("value out of range for '" + t->name + "'");
      r = *v;
      break;
    }
    case Op::zero: r = L.zero(); break;
    case Op::one: r = L.one(); break;
    case Op::comp: r = L.comp(eval_rec(L, t->args[0], a, memo)); break;
    case Op::meet: r = L.meet(eval_rec(L, t->args[0], a, memo), eval_rec(L, t->args[1], a, memo)); break;
    case Op::join: r = L.join(eval_rec(L, t->args[0], a, memo), eval_rec(L, t->args[1], a, memo)); break;
    default: throw std::logic_error("evaluate: term not expanded");
  }
  memo.emplace(t.get(), r);
  return r;
}

bool rel_value(const FiniteOrthoLattice& L, Rel rel, int x, int y) {
  switch (rel) {
    case Rel::eq: return x == y;
    case Rel::le: return L.leq(x, y);
    case Rel::perp: return L.leq(x, L.comp(y));
    case Rel::commutes: return x == L.join(L.meet(x, y), L.meet(x, L.comp(y)));
  }
  return false;
}

}  // namespace

int evaluate(const FiniteOrthoLattice& L, const Term& t, const Assignment& a) {
  std::unordered_map<const Node*, int> memo;
  const Term e = is_primitive(t) ? t : expand(t);
  return eval_rec(L, e, a, memo);
}

bool relation_holds(const FiniteOrthoLattice& L, const Relation& r, const Assignment& a) {
  return rel_value(L, r.rel, evaluate(L, r.lhs, a), evaluate(L, r.rhs, a));
}

bool statement_holds_at(const FiniteOrthoLattice& L, const Statement& s, const Assignment& a) {
  for (const Relation& h : s.hypotheses) {
    if (!relation_holds(L, h, a)) return true;
  }
  return relation_holds(L, s.conclusion, a);
}

// ---------------------------------------------------------------- compiled search

namespace {

enum class Code : std::uint8_t { var, zero, one, comp, meet, join };

struct Ins {
  Code code;
  int a = 0;
  int b = 0;
  int level = -1;
};

struct CRel {
  bool eq = false;  // otherwise lhs <= rhs
  int lhs = 0;
  int rhs = 0;
  int level = -1;
};

struct Program {
  int vars = 0;
  std::vector<Ins> ins;
  std::vector<std::vector<int>> by_level;  // instructions whose deepest variable is at that level
  std::vector<int> constants;
  std::vector<CRel> hyps;
  std::vector<std::vector<int>> hyps_at;
  CRel concl;
  // Conclusion shortcuts for lhs <= rhs: meet factors of lhs, join factors of rhs.
  std::vector<std::vector<int>> lhs_factors_at;
  std::vector<std::vector<int>> rhs_factors_at;
  std::vector<int> lhs_const_factors;
  std::vector<int> rhs_const_factors;
  // Hypotheses var =< t (down) and t =< var (up) with t bound earlier restrict
  // the values tried for that variable.
  std::vector<std::vector<int>> down_at;
  std::vector<std::vector<int>> up_at;
};

class Compiler {
 public:
  Compiler(Program& p, const std::vector<std::string>& order) : p_(p) {
    for (std::size_t i = 0; i < order.size(); ++i) pos_.emplace(order[i], static_cast<int>(i));
    p_.vars = static_cast<int>(order.size());
  }

  int term(const Term& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    int id = 0;
    switch (t->op) {
      case Op::var: id = add(Code::var, pos_.at(t->name), 0); break;
      case Op::zero: id = add(Code::zero, 0, 0); break;
      case Op::one: id = add(Code::one, 0, 0); break;
      case Op::comp: id = comp(term(t->args[0])); break;
      case Op::meet: id = meet(term(t->args[0]), term(t->args[1])); break;
      case Op::join: id = join(term(t->args[0]), term(t->args[1])); break;
      default: throw std::logic_error("compile: derived node left after expansion");
    }
    memo_.emplace(t.get(), id);
    return id;
  }

  int comp(int x) { return add(Code::comp, x, 0); }
  int meet(int x, int y) { return add(Code::meet, x, y); }
  int join(int x, int y) { return add(Code::join, x, y); }

  CRel relation(const Relation& r) {
    int l = term(r.lhs);
    int rr = term(r.rhs);
    CRel c;
    switch (r.rel) {
      case Rel::eq: c = {true, l, rr}; break;
      case Rel::le: c = {false, l, rr}; break;
      case Rel::perp: c = {false, l, comp(rr)}; break;
      case Rel::commutes: c = {true, l, join(meet(l, rr), meet(l, comp(rr)))}; break;
    }
    c.level = std::max(p_.ins[c.lhs].level, p_.ins[c.rhs].level);
    return c;
  }

 private:
  int add(Code code, int a, int b) {
    // Commutative operands are normalized so equal subterms share a slot.
    if ((code == Code::meet || code == Code::join) && a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(code) << 56) | (static_cast<std::uint64_t>(a) << 28) |
                        static_cast<std::uint64_t>(b);
    if (auto it = dedup_.find(key); it != dedup_.end()) return it->second;
    Ins in{code, a, b, -1};
    switch (code) {
      case Code::var: in.level = a; break;
      case Code::zero:
      case Code::one: break;
      case Code::comp: in.level = p_.ins[a].level; break;
      default: in.level = std::max(p_.ins[a].level, p_.ins[b].level);
    }
    int id = static_cast<int>(p_.ins.size());
    p_.ins.push_back(in);
    dedup_.emplace(key, id);
    return id;
  }

  Program& p_;
  std::unordered_map<std::string, int> pos_;
  std::unordered_map<const Node*, int> memo_;
  std::unordered_map<std::uint64_t, int> dedup_;
};

void factors(const Program& p, int id, Code code, std::vector<int>& out) {
  if (p.ins[id].code == code) {
    factors(p, p.ins[id].a, code, out);
    factors(p, p.ins[id].b, code, out);
  } else {
    out.push_back(id);
  }
}

Program compile(const Statement& expanded, const std::vector<std::string>& order) {
  Program p;
  Compiler c(p, order);
  for (const Relation& h : expanded.hypotheses) p.hyps.push_back(c.relation(h));
  p.concl = c.relation(expanded.conclusion);
  int V = p.vars;
  p.by_level.assign(V, {});
  p.hyps_at.assign(V, {});
  p.lhs_factors_at.assign(V, {});
  p.rhs_factors_at.assign(V, {});
  for (int i = 0; i < static_cast<int>(p.ins.size()); ++i) {
    int lv = p.ins[i].level;
    if (lv < 0) p.constants.push_back(i);
    else p.by_level[lv].push_back(i);
  }
  p.down_at.assign(V, {});
  p.up_at.assign(V, {});
  for (int i = 0; i < static_cast<int>(p.hyps.size()); ++i) {
    const CRel& h = p.hyps[i];
    if (V > 0) p.hyps_at[std::max(0, h.level)].push_back(i);
    if (h.eq) continue;
    const Ins& l = p.ins[h.lhs];
    const Ins& r = p.ins[h.rhs];
    if (l.code == Code::var && r.level < l.level) p.down_at[l.level].push_back(h.rhs);
    if (r.code == Code::var && l.level < r.level) p.up_at[r.level].push_back(h.lhs);
  }
  if (!p.concl.eq) {
    std::vector<int> lf;
    std::vector<int> rf;
    factors(p, p.concl.lhs, Code::meet, lf);
    factors(p, p.concl.rhs, Code::join, rf);
    for (int f : lf) (p.ins[f].level < 0 ? p.lhs_const_factors : p.lhs_factors_at[p.ins[f].level]).push_back(f);
    for (int f : rf) (p.ins[f].level < 0 ? p.rhs_const_factors : p.rhs_factors_at[p.ins[f].level]).push_back(f);
  }
  return p;
}

// Splits hypotheses into smaller relations with the same meaning:
// x v y =< t into x =< t and y =< t, t =< x ^ y likewise, x _|_ t into
// x =< t', and an equation with a bare variable side into two inequalities.
Statement normalize(const Statement& s) {
  Statement out;
  out.conclusion = s.conclusion;
  out.variables = s.variables;
  std::function<void(const Relation&)> push = [&](const Relation& r) {
    switch (r.rel) {
      case Rel::perp: push({Rel::le, r.lhs, t::comp(r.rhs)}); return;
      case Rel::eq:
        if (r.lhs->op == Op::var || r.rhs->op == Op::var) {
          push({Rel::le, r.lhs, r.rhs});
          push({Rel::le, r.rhs, r.lhs});
          return;
        }
        break;
      case Rel::le:
        if (r.lhs->op == Op::join) {
          push({Rel::le, r.lhs->args[0], r.rhs});
          push({Rel::le, r.lhs->args[1], r.rhs});
          return;
        }
        if (r.rhs->op == Op::meet) {
          push({Rel::le, r.lhs, r.rhs->args[0]});
          push({Rel::le, r.lhs, r.rhs->args[1]});
          return;
        }
        break;
      case Rel::commutes: break;
    }
    out.hypotheses.push_back(r);
  };
  for (const Relation& h : s.hypotheses) push(h);
  return out;
}

// First-occurrence depth of each variable, pre-order over hypotheses then conclusion.
void depths(const Term& t, int depth, std::unordered_map<std::string, int>& first, std::vector<std::string>& seen) {
  if (t->op == Op::var) {
    if (first.emplace(t->name, depth).second) seen.push_back(t->name);
    return;
  }
  for (const Term& c : t->args) depths(c, depth + 1, first, seen);
}

std::vector<std::string> depth_order(const Statement& s) {
  std::unordered_map<std::string, int> first;
  std::vector<std::string> seen;
  auto rel = [&](const Relation& r) {
    depths(r.lhs, 1, first, seen);
    depths(r.rhs, 1, first, seen);
  };
  for (const Relation& h : s.hypotheses) rel(h);
  rel(s.conclusion);
  // Variables listed but unused go last.
  for (const std::string& v : s.variables) {
    if (first.emplace(v, 0).second) seen.push_back(v);
  }
  std::vector<std::string> order = seen;
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& x, const std::string& y) { return first[x] > first[y]; });
  return order;
}

struct Group {
  std::vector<int> vars;  // indices into the base order
  int filter_var = -1;    // set when one side is exactly this variable
  bool conclusion = false;
};

std::vector<Group> groups_of(const Statement& s, const std::vector<std::string>& base) {
  auto index = [&](const std::string& v) {
    return static_cast<int>(std::find(base.begin(), base.end(), v) - base.begin());
  };
  auto vars_of = [&](const std::vector<Term>& ts) {
    std::vector<int> out;
    for (const Term& t : ts) {
      for (const std::string& v : free_variables(t)) {
        int i = index(v);
        if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
      }
    }
    return out;
  };
  std::vector<Group> groups;
  for (const Relation& h : s.hypotheses) {
    Group g;
    g.vars = vars_of({h.lhs, h.rhs});
    if (h.rel == Rel::le) {
      auto other_lacks = [&](const Term& var, const Term& other) {
        auto fv = free_variables(other);
        return std::find(fv.begin(), fv.end(), var->name) == fv.end();
      };
      if (h.lhs->op == Op::var && other_lacks(h.lhs, h.rhs)) g.filter_var = index(h.lhs->name);
      else if (h.rhs->op == Op::var && other_lacks(h.rhs, h.lhs)) g.filter_var = index(h.rhs->name);
    }
    groups.push_back(std::move(g));
  }
  Group c;
  c.vars = vars_of({s.conclusion.lhs, s.conclusion.rhs});
  c.conclusion = true;
  groups.push_back(std::move(c));
  return groups;
}

// Estimated search nodes for binding variables in the order `perm`. A typical
// lattice size and fixed pass rates stand in for the real selectivities.
double order_cost(const std::vector<Group>& groups, const std::vector<int>& perm) {
  constexpr double kSize = 40;
  constexpr double kFilterRate = 0.25;
  constexpr double kHypRate = 0.35;
  constexpr double kConclusionRate = 0.15;
  const int V = static_cast<int>(perm.size());
  std::vector<int> level(V);
  for (int k = 0; k < V; ++k) level[perm[k]] = k;
  std::vector<double> branch(V, kSize);
  std::vector<double> pass(V, 1.0);
  for (const Group& g : groups) {
    int lv = -1;
    for (int v : g.vars) lv = std::max(lv, level[v]);
    if (lv < 0) continue;
    if (g.conclusion) {
      if (lv + 1 < V) pass[lv] *= kConclusionRate;
    } else if (g.filter_var >= 0 && level[g.filter_var] == lv) {
      branch[lv] *= kFilterRate;
    } else {
      pass[lv] *= kHypRate;
    }
  }
  double alive = 1;
  double cost = 0;
  for (int k = 0; k < V; ++k) {
    double nodes = alive * std::max(1.0, branch[k]);
    cost += nodes;
    alive = nodes * pass[k];
  }
  return cost;
}

// Cheapest order under order_cost; exhaustive up to 8 variables, greedy
// beyond. Ties keep the earlier order in depth order.
std::vector<std::string> planned_order(const Statement& s) {
  std::vector<std::string> base = depth_order(s);
  const int V = static_cast<int>(base.size());
  std::vector<Group> groups = groups_of(s, base);
  std::vector<int> best;
  if (V <= 8) {
    std::vector<int> perm(V);
    for (int i = 0; i < V; ++i) perm[i] = i;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
      double c = order_cost(groups, perm);
      if (c < best_cost * (1 - 1e-9)) {
        best_cost = c;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<bool> used(V, false);
    for (int k = 0; k < V; ++k) {
      int pick = -1;
      double pick_cost = std::numeric_limits<double>::infinity();
      for (int v = 0; v < V; ++v) {
        if (used[v]) continue;
        std::vector<int> trial = best;
        trial.push_back(v);
        for (int w = 0; w < V; ++w) {
          if (!used[w] && w != v) trial.push_back(w);
        }
        double c = order_cost(groups, trial);
        if (c < pick_cost * (1 - 1e-9)) {
          pick_cost = c;
          pick = v;
        }
      }
      used[pick] = true;
      best.push_back(pick);
    }
  }
  std::vector<std::string> order;
  for (int i : best) order.push_back(base[i]);
  return order;
}

using Clock = std::chrono::steady_clock;

class Search {
 public:
  Search(const FiniteOrthoLattice& L, const Program& p, bool prune, std::optional<Clock::time_point> deadline,
         const std::atomic<bool>* stop)
      : L_(L), p_(p), prune_(prune), deadline_(deadline), stop_(stop), n_(L.size()),
        val_(p.ins.size(), 0), assign_(p.vars, 0), lacc_(p.vars + 1, 1), racc_(p.vars + 1, 0) {
    for (int i : p.constants) step(i);
    int l = L.one();
    for (int f : p.lhs_const_factors) l = L.meet(l, val_[f]);
    int r = L.zero();
    for (int f : p.rhs_const_factors) r = L.join(r, val_[f]);
    lacc_[0] = l;
    racc_[0] = r;
    if (prune_) {
      down_.resize(n_);
      up_.resize(n_);
      for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
          if (L.leq(y, x)) down_[x].push_back(static_cast<std::uint8_t>(y));
          if (L.leq(x, y)) up_[x].push_back(static_cast<std::uint8_t>(y));
        }
      }
    }
  }

  /// Explores the subtree with variable 0 fixed to x; true when a violation was found.
  bool run_top(int x) { return visit(0, x); }

  bool run_all() {
    if (p_.vars == 0) {
      ++examined;
      for (const CRel& h : p_.hyps) {
        if (!holds(h)) return false;
      }
      if (!holds(p_.concl)) {
        witness = std::vector<int>{};
        return true;
      }
      return false;
    }
    return descend(0);
  }

  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
  bool timed_out = false;
  std::optional<std::vector<int>> witness;

 private:
  void step(int i) {
    const Ins& in = p_.ins[i];
    switch (in.code) {
      case Code::var: val_[i] = static_cast<std::uint8_t>(assign_[in.a]); break;
      case Code::zero: val_[i] = static_cast<std::uint8_t>(L_.zero()); break;
      case Code::one: val_[i] = static_cast<std::uint8_t>(L_.one()); break;
      case Code::comp: val_[i] = comp_[val_[in.a]]; break;
      case Code::meet: val_[i] = meet_[val_[in.a] * n_ + val_[in.b]]; break;
      case Code::join: val_[i] = join_[val_[in.a] * n_ + val_[in.b]]; break;
    }
  }

  bool holds(const CRel& r) const {
    int x = val_[r.lhs];
    int y = val_[r.rhs];
    return r.eq ? x == y : meet_[x * n_ + y] == x;
  }

  bool out_of_time() {
    if ((++ticks_ & 0xffff) != 0) return timed_out;
    if (stop_ && stop_->load(std::memory_order_relaxed)) timed_out = true;
    if (deadline_ && Clock::now() > *deadline_) timed_out = true;
    return timed_out;
  }

  bool visit(int k, int x) {
    if (out_of_time()) return false;
    assign_[k] = x;
    for (int i : p_.by_level[k]) step(i);
    const bool leaf = k + 1 == p_.vars;
    if (prune_) {
      for (int h : p_.hyps_at[k]) {
        if (!holds(p_.hyps[h])) {
          ++pruned;
          return false;
        }
      }
      if (!p_.concl.eq) {
        int l = lacc_[k];
        for (int f : p_.lhs_factors_at[k]) l = meet_[l * n_ + val_[f]];
        int r = racc_[k];
        for (int f : p_.rhs_factors_at[k]) r = join_[r * n_ + val_[f]];
        lacc_[k + 1] = static_cast<std::uint8_t>(l);
        racc_[k + 1] = static_cast<std::uint8_t>(r);
        if (l == L_.zero() || r == L_.one()) {
          if (leaf) ++examined;
          else ++pruned;
          return false;
        }
      }
      if (p_.concl.level == k && !leaf && holds(p_.concl)) {
        ++pruned;
        return false;
      }
    }
    if (leaf) {
      ++examined;
      if (!prune_) {
        for (const CRel& h : p_.hyps) {
          if (!holds(h)) return false;
        }
      }
      if (!holds(p_.concl)) {
        witness = assign_;
        return true;
      }
      return false;
    }
    return descend(k + 1);
  }

  // Tries every value at level k, or only the shortest filter list when the
  // level has one; the remaining filters are rechecked as hypotheses.
  bool descend(int k) {
    const std::vector<std::uint8_t>* list = nullptr;
    if (prune_) {
      for (int t : p_.down_at[k]) {
        if (!list || down_[val_[t]].size() < list->size()) list = &down_[val_[t]];
      }
      for (int t : p_.up_at[k]) {
        if (!list || up_[val_[t]].size() < list->size()) list = &up_[val_[t]];
      }
    }
    if (list) {
      for (std::uint8_t y : *list) {
        if (visit(k, y)) return true;
        if (timed_out) return false;
      }
      return false;
    }
    for (int y = 0; y < n_; ++y) {
      if (visit(k, y)) return true;
      if (timed_out) return false;
    }
    return false;
  }

  const FiniteOrthoLattice& L_;
  const Program& p_;
  bool prune_;
  std::optional<Clock::time_point> deadline_;
  const std::atomic<bool>* stop_;
  int n_;
  const std::uint8_t* comp_ = L_.comp_table();
  const std::uint8_t* meet_ = L_.meet_table();
  const std::uint8_t* join_ = L_.join_table();
  std::vector<std::uint8_t> val_;
  std::vector<int> assign_;
  std::vector<std::uint8_t> lacc_;
  std::vector<std::uint8_t> racc_;
  std::vector<std::vector<std::uint8_t>> down_;
  std::vector<std::vector<std::uint8_t>> up_;
  std::uint64_t ticks_ = 0;
};

std::optional<Clock::time_point> deadline_from(const CheckOptions& o, Clock::time_point start) {
  if (o.timeout_seconds <= 0) return std::nullopt;
  return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(o.timeout_seconds));
}

std::vector<std::string> resolve_order(const Statement& s, const CheckOptions& opts) {
  if (!opts.explicit_order.empty()) {
    std::vector<std::string> a = opts.explicit_order;
    std::vector<std::string> b = s.variables;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("explicit variable order is not a permutation of the statement variables");
    return opts.explicit_order;
  }
  return opts.order == VarOrder::depth ? depth_order(s) : planned_order(normalize(expand(s)));
}

Assignment to_statement_order(const Statement& s, const std::vector<std::string>& order, const std::vector<int>& values) {
  Assignment a;
  a.vars = s.variables;
  a.values.resize(s.variables.size());
  for (std::size_t i = 0; i < s.variables.size(); ++i) {
    auto it = std::find(order.begin(), order.end(), s.variables[i]);
    a.values[i] = values[it - order.begin()];
  }
  return a;
}

}  // namespace

CheckReport check(const FiniteOrthoLattice& L, const Statement& s, const CheckOptions& opts) {
  const auto start = Clock::now();
  std::vector<std::string> order = resolve_order(s, opts);
  Program prog = compile(normalize(expand(s)), order);
  auto deadline = deadline_from(opts, start);
  CheckReport rep;
  const int n = L.size();
  const int workers = std::max(1, opts.workers);

  if (prog.vars == 0 || workers == 1) {
    Search search(L, prog, opts.prune, deadline, nullptr);
    bool found = search.run_all();
    rep.examined = search.examined;
    rep.pruned = search.pruned;
    if (found) {
      rep.verdict = Verdict::fails;
      rep.witness = to_statement_order(s, order, *search.witness);
    } else if (search.timed_out) {
      rep.verdict = Verdict::inconclusive;
    }
  } else {
    // Values of the first variable are handed out in increasing order; the
    // merge replays them in order so counts match a single worker.
    struct Slot {
      std::uint64_t examined = 0;
      std::uint64_t pruned = 0;
      bool done = false;
      bool timed_out = false;
      std::optional<std::vector<int>> witness;
    };
    std::vector<Slot> slots(n);
    std::atomic<int> next{0};
    std::atomic<int> best{std::numeric_limits<int>::max()};
    std::atomic<bool> stop{false};
    auto work = [&] {
      for (;;) {
        int x = next.fetch_add(1);
        if (x >= n || x > best.load()) return;
        Search search(L, prog, opts.prune, deadline, &stop);
        bool found = search.run_top(x);
        Slot& sl = slots[x];
        sl.examined = search.examined;
        sl.pruned = search.pruned;
        sl.timed_out = search.timed_out;
        sl.done = true;
        if (found) {
          sl.witness = search.witness;
          int cur = best.load();
          while (x < cur && !best.compare_exchange_weak(cur, x)) {
          }
        }
        if (search.timed_out) stop = true;
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (int x = 0; x < n; ++x) {
      const Slot& sl = slots[x];
      if (!sl.done || sl.timed_out) {
        rep.verdict = Verdict::inconclusive;
        break;
      }
      rep.examined += sl.examined;
      rep.pruned += sl.pruned;
      if (sl.witness) {
        rep.verdict = Verdict::fails;
        rep.witness = to_statement_order(s, order, *sl.witness);
        break;
      }
    }
  }
  rep.elapsed = Clock::now() - start;
  return rep;
}

// ---------------------------------------------------------------- Godowski DP

CheckReport check_ngo_dp(const FiniteOrthoLattice& L, int n, const CheckOptions& opts) {
  if (n < 3) throw std::invalid_argument("check_ngo_dp needs n >= 3");
  const auto start = Clock::now();
  auto deadline = deadline_from(opts, start);
  const int N = L.size();
  CheckReport rep;
  auto impl1 = [&](int a, int b) { return L.join(L.comp(a), L.meet(a, b)); };
  std::vector<int> imp(N * N);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) imp[a * N + b] = impl1(a, b);
  }
  // layer[k] holds the reachable states (a_{k+1}, accumulated meet) as a bitmap.
  std::vector<std::vector<char>> layer(n, std::vector<char>(N * N, 0));
  for (int x = 0; x < N; ++x) {
    if (deadline && Clock::now() > *deadline) {
      rep.verdict = Verdict::inconclusive;
      break;
    }
    for (auto& l : layer) std::fill(l.begin(), l.end(), 0);
    layer[0][x * N + L.one()] = 1;
    for (int k = 0; k + 1 < n; ++k) {
      for (int s = 0; s < N * N; ++s) {
        if (!layer[k][s]) continue;
        int a = s / N;
        int m = s % N;
        for (int y = 0; y < N; ++y) {
          ++rep.examined;
          layer[k + 1][y * N + L.meet(m, imp[a * N + y])] = 1;
        }
      }
    }
    auto violates = [&](int s) {
      int an = s / N;
      int m = s % N;
      return !L.leq(L.meet(m, imp[an * N + x]), imp[x * N + an]);
    };
    bool any = false;
    for (int s = 0; s < N * N && !any; ++s) any = layer[n - 1][s] && violates(s);
    if (!any) continue;
    // Backward pass marks states that can still reach a violation, then a
    // forward pass picks the smallest value at each position.
    std::vector<std::vector<char>> good(n, std::vector<char>(N * N, 0));
    for (int s = 0; s < N * N; ++s) good[n - 1][s] = layer[n - 1][s] && violates(s);
    for (int k = n - 2; k >= 0; --k) {
      for (int s = 0; s < N * N; ++s) {
        if (!layer[k][s]) continue;
        int a = s / N;
        int m = s % N;
        for (int y = 0; y < N && !good[k][s]; ++y) good[k][s] = good[k + 1][y * N + L.meet(m, imp[a * N + y])];
      }
    }
    Assignment w;
    int state = x * N + L.one();
    w.vars.push_back("a1");
    w.values.push_back(x);
    for (int k = 0; k + 1 < n; ++k) {
      int a = state / N;
      int m = state % N;
      for (int y = 0; y < N; ++y) {
        int t = y * N + L.meet(m, imp[a * N + y]);
        if (good[k + 1][t]) {
          state = t;
          w.vars.push_back("a" + std::to_string(k + 2));
          w.values.push_back(y);
          break;
        }
      }
    }
    rep.verdict = Verdict::fails;
    rep.witness = std::move(w);
    break;
  }
  rep.elapsed = Clock::now() - start;
  return rep;
}

CheckReport check_noa(const FiniteOrthoLattice& L, int n, const CheckOptions& opts) {
  if (n < 3) throw std::invalid_argument("check_noa needs n >= 3");
  std::string args;
  for (int i = 1; i <= n; ++i) args += (i > 1 ? ", a" : "a") + std::to_string(i);
  Statement s = parse_statement("(a1 ->1 a3) ^ oan(" + std::to_string(n) + "; " + args + ") =< a2 ->1 a3");
  CheckOptions o = opts;
  o.explicit_order.clear();
  for (int i = 3; i <= n; ++i) o.explicit_order.push_back("a" + std::to_string(i));
  o.explicit_order.push_back("a1");
  o.explicit_order.push_back("a2");
  return check(L, s, o);
}

// ---------------------------------------------------------------- reports

std::string format_report(const FiniteOrthoLattice& L, std::string_view lattice_label, std::string_view statement_id,
                          const CheckReport& r, bool timing) {
  std::string out;
  out += lattice_label;
  out += ' ';
  out += statement_id;
  out += ' ';
  out += to_string(r.verdict);
  if (r.witness) {
    out += " witness=";
    for (std::size_t i = 0; i < r.witness->vars.size(); ++i) {
      if (i) out += ',';
      out += r.witness->vars[i] + "=" + L.element_name(r.witness->values[i]);
    }
  }
  out += " examined=" + std::to_string(r.examined);
  out += " ms=";
  out += timing ? std::to_string(static_cast<long long>(std::llround(r.elapsed.count()))) : "-";
  return out;
}

ScanResult scan(const std::vector<GreechieDiagram>& corpus, const Statement& s, const ScanOptions& opts,
                const std::function<void(const ScanItem&)>& on_item) {
  ScanResult res;
  const std::size_t total = corpus.size();
  CheckOptions co = opts.check;
  co.workers = 1;
  auto run_one = [&](std::size_t i) {
    ScanItem item;
    item.index = i;
    item.gdf = serialize_diagram(corpus[i]);
    try {
      FiniteOrthoLattice L = FiniteOrthoLattice::from_greechie(corpus[i]);
      item.report = check(L, s, co);
    } catch (const std::exception& e) {
      item.error = e.what();
    }
    return item;
  };
  auto account = [&](const ScanItem& item) {
    if (item.error) ++res.errored;
    else if (item.report.verdict == Verdict::fails) ++res.violating;
    else if (item.report.verdict == Verdict::holds) ++res.satisfying;
    else ++res.inconclusive;
    if (on_item) on_item(item);
    bool stop = opts.first_violator && !item.error && item.report.verdict == Verdict::fails;
    res.items.push_back(item);
    return stop;
  };
  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) {
      if (account(run_one(i))) break;
    }
    return res;
  }
  // Chunks are computed in parallel and released in corpus order.
  const std::size_t chunk = static_cast<std::size_t>(workers) * 8;
  for (std::size_t base = 0; base < total; base += chunk) {
    std::size_t end = std::min(total, base + chunk);
    std::vector<ScanItem> items(end - base);
    std::atomic<std::size_t> next{base};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= end) return;
          items[i - base] = run_one(i);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (ScanItem& item : items) {
      if (account(item)) return res;
    }
  }
  return res;
}

std::string format_scan_item(const ScanItem& item, std::string_view statement_id, bool timing) {
  if (item.error) return item.gdf + " " + std::string(statement_id) + " ERROR " + *item.error;
  FiniteOrthoLattice L = FiniteOrthoLattice::from_greechie(parse_diagram(item.gdf));
  return format_report(L, item.gdf, statement_id, item.report, timing);
}

std::string format_scan_summary(const ScanResult& r) {
  return "total=" + std::to_string(r.items.size()) + " violating=" + std::to_string(r.violating) +
         " satisfying=" + std::to_string(r.satisfying) + " errored=" + std::to_string(r.errored) +
         " inconclusive=" + std::to_string(r.inconclusive);
}

}  // namespace omlkit

#include "omlkit/states.hpp"

#include <stdexcept>

namespace omlkit {

namespace {

using Row = std::vector<Rational>;

// Dense two-phase simplex over exact rationals with Bland's rule.
// Problem: minimize c.x subject to A x = b, x >= 0.
class Simplex {
 public:
  Simplex(const std::vector<Row>& A, const Row& b, int vars) : n_(vars), m_(static_cast<int>(A.size())) {
    width_ = n_ + m_ + 1;
    T_.assign(m_, Row(width_, 0));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      bool flip = b[i] < 0;
      for (int j = 0; j < n_; ++j) T_[i][j] = flip ? Rational(-A[i][j]) : A[i][j];
      T_[i][n_ + i] = 1;
      T_[i][width_ - 1] = flip ? Rational(-b[i]) : b[i];
      basis_[i] = n_ + i;
    }
  }

  /// Finds a feasible basis; false when the system has no nonnegative solution.
  bool phase1() {
    Row z(width_, 0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) z[j] -= T_[i][j];
      z[width_ - 1] -= T_[i][width_ - 1];
    }
    iterate(z, n_ + m_);
    if (z[width_ - 1] != 0) return false;
    // Artificials left in the basis at value zero are pivoted out, or their
    // row is dropped when it has no original column to pivot on.
    for (int i = 0; i < m_;) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < n_ && col < 0; ++j) {
        if (T_[i][j] != 0) col = j;
      }
      if (col >= 0) {
        pivot(i, col, nullptr);
        ++i;
      } else {
        T_.erase(T_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
      }
    }
    return true;
  }

  /// Minimizes c.x from the current feasible basis; the tableau is left untouched.
  [[nodiscard]] std::pair<Rational, Row> minimize(const Row& c) const {
    Simplex s = *this;
    Row z(s.width_, 0);
    for (int j = 0; j < n_; ++j) z[j] = c[j];
    for (int i = 0; i < s.m_; ++i) {
      const Rational& cb = c[s.basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < s.width_; ++j) z[j] -= cb * s.T_[i][j];
    }
    if (!s.iterate(z, n_)) throw std::logic_error("state LP unbounded");
    Row x(n_, 0);
    for (int i = 0; i < s.m_; ++i) x[s.basis_[i]] = s.T_[i][s.width_ - 1];
    return {Rational(-z[s.width_ - 1]), x};
  }

 private:
  // Runs simplex on objective row z with entering columns below `limit`.
  // False when unbounded.
  bool iterate(Row& z, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (z[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (T_[i][enter] <= 0) continue;
        Rational ratio = T_[i][width_ - 1] / T_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter, &z);
    }
  }

  void pivot(int r, int c, Row* z) {
    Rational p = T_[r][c];
    for (int j = 0; j < width_; ++j) T_[r][j] /= p;
    auto eliminate = [&](Row& row) {
      if (row[c] == 0) return;
      Rational f = row[c];
      for (int j = 0; j < width_; ++j) {
        if (T_[r][j] != 0) row[j] -= f * T_[r][j];
      }
    };
    for (int i = 0; i < m_; ++i) {
      if (i != r) eliminate(T_[i]);
    }
    if (z) eliminate(*z);
    basis_[r] = c;
  }

  int n_;
  int m_;
  int width_ = 0;
  std::vector<Row> T_;
  std::vector<int> basis_;
};

// m(e) as constant + linear form in the LP variables.
struct Affine {
  Rational constant;
  std::vector<std::pair<int, Rational>> terms;
};

struct Model {
  int vars = 0;
  std::vector<Affine> form;  // per element
  std::vector<Row> rows;     // independent equalities
  Row rhs;
  bool consistent = true;
  StateModel kind = StateModel::elements;
};

// Row reduction keeps an independent subset of the equalities and detects
// an inconsistent system.
void reduce(Model& m) {
  const int n = m.vars;
  std::vector<Row> out;
  Row out_b;
  std::vector<int> pivots;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    Row row = m.rows[r];
    Rational b = m.rhs[r];
    for (std::size_t k = 0; k < out.size(); ++k) {
      int pc = pivots[k];
      if (row[pc] == 0) continue;
      Rational f = row[pc];
      for (int j = 0; j < n; ++j) {
        if (out[k][j] != 0) row[j] -= f * out[k][j];
      }
      b -= f * out_b[k];
    }
    int pc = -1;
    for (int j = 0; j < n && pc < 0; ++j) {
      if (row[j] != 0) pc = j;
    }
    if (pc < 0) {
      if (b != 0) m.consistent = false;
      continue;
    }
    Rational f = row[pc];
    for (int j = 0; j < n; ++j) row[j] /= f;
    b /= f;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k][pc] == 0) continue;
      Rational g = out[k][pc];
      for (int j = 0; j < n; ++j) {
        if (row[j] != 0) out[k][j] -= g * row[j];
      }
      out_b[k] -= g * b;
    }
    out.push_back(std::move(row));
    out_b.push_back(b);
    pivots.push_back(pc);
  }
  m.rows = std::move(out);
  m.rhs = std::move(out_b);
}

void add_equation(Model& m, const Affine& f, const Rational& value) {
  Row row(m.vars, 0);
  for (const auto& [v, c] : f.terms) row[v] += c;
  m.rows.push_back(std::move(row));
  m.rhs.push_back(value - f.constant);
}

Model element_model(const FiniteOrthoLattice& L) {
  Model m;
  m.kind = StateModel::elements;
  const int n = L.size();
  m.vars = n;
  m.form.resize(n);
  for (int e = 0; e < n; ++e) m.form[e].terms = {{e, Rational(1)}};
  add_equation(m, m.form[L.zero()], 0);
  add_equation(m, m.form[L.one()], 1);
  for (int x = 0; x < n; ++x) {
    int c = L.comp(x);
    if (x < c) {
      Affine f{0, {{x, 1}, {c, 1}}};
      add_equation(m, f, 1);
    }
  }
  for (int x = 2; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (!L.leq(x, L.comp(y))) continue;
      int j = L.join(x, y);
      Affine f{0, {{j, 1}, {x, -1}, {y, -1}}};
      add_equation(m, f, 0);
    }
  }
  reduce(m);
  return m;
}

Model atom_model(const FiniteOrthoLattice& L) {
  if (!L.source.diagram) throw std::invalid_argument("atom model needs a lattice pasted from a Greechie diagram");
  const GreechieDiagram& d = *L.source.diagram;
  Model m;
  m.kind = StateModel::atoms;
  m.vars = d.atom_count;
  const int n = L.size();
  std::vector<int> atom_index(n, -1);
  for (int a = 0; a < d.atom_count; ++a) atom_index[L.atom_of()[a]] = a;
  m.form.resize(n);
  m.form[L.zero()].constant = 0;
  m.form[L.one()].constant = 1;
  for (int e = 2; e < n; ++e) {
    if (atom_index[e] >= 0) {
      m.form[e].terms = {{atom_index[e], Rational(1)}};
    } else {
      int a = atom_index[L.comp(e)];
      if (a < 0) throw std::logic_error("pasted element is neither an atom nor a complement of one");
      m.form[e].constant = 1;
      m.form[e].terms = {{a, Rational(-1)}};
    }
  }
  for (const Block& b : d.blocks) {
    Affine f;
    for (int a : b) f.terms.emplace_back(a, 1);
    add_equation(m, f, 1);
  }
  reduce(m);
  return m;
}

Model build_model(const FiniteOrthoLattice& L, StateModel model) {
  if (model == StateModel::atoms) return atom_model(L);
  if (model == StateModel::automatic && L.source.diagram) return atom_model(L);
  return element_model(L);
}

Row objective(const Model& m, int q, bool negate) {
  Row c(m.vars, 0);
  for (const auto& [v, k] : m.form[q].terms) c[v] += negate ? Rational(-k) : k;
  return c;
}

State state_from(const Model& m, const Row& x) {
  State s;
  s.value.resize(m.form.size());
  for (std::size_t e = 0; e < m.form.size(); ++e) {
    Rational v = m.form[e].constant;
    for (const auto& [i, k] : m.form[e].terms) v += k * x[i];
    s.value[e] = v;
  }
  return s;
}

// Simplex over the model plus m(e) = r for each fixed pair, after phase 1.
std::optional<Simplex> feasible(const Model& base, const std::vector<std::pair<int, Rational>>& fixed) {
  if (!base.consistent) return std::nullopt;
  Model m = base;
  for (const auto& [e, r] : fixed) add_equation(m, m.form[e], r);
  reduce(m);
  if (!m.consistent) return std::nullopt;
  Simplex s(m.rows, m.rhs, m.vars);
  if (!s.phase1()) return std::nullopt;
  return s;
}

}  // namespace

bool is_state(const FiniteOrthoLattice& L, const State& m, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = L.size();
  if (static_cast<int>(m.value.size()) != n) return fail("state has the wrong number of values");
  if (m.value[L.one()] != 1) return fail("m(1) != 1");
  if (m.value[L.zero()] != 0) return fail("m(0) != 0");
  for (int x = 0; x < n; ++x) {
    if (m.value[x] < 0 || m.value[x] > 1) return fail("m(" + L.element_name(x) + ") outside [0,1]");
    if (m.value[L.comp(x)] != 1 - m.value[x]) return fail("m(" + L.element_name(x) + "') != 1 - m(" + L.element_name(x) + ")");
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!L.leq(x, L.comp(y))) continue;
      if (m.value[L.join(x, y)] != m.value[x] + m.value[y]) {
        return fail("additivity fails on " + L.element_name(x) + ", " + L.element_name(y));
      }
    }
  }
  return true;
}

StateResult find_state(const FiniteOrthoLattice& L, const std::vector<std::pair<int, Rational>>& fixed, int q,
                       Objective obj, StateModel model) {
  if (q < 0 || q >= L.size()) throw std::invalid_argument("objective element out of range");
  for (const auto& [e, r] : fixed) {
    if (e < 0 || e >= L.size()) throw std::invalid_argument("fixed element out of range");
  }
  Model m = build_model(L, model);
  StateResult res;
  auto s = feasible(m, fixed);
  if (!s) return res;
  bool negate = obj == Objective::maximize;
  auto [value, x] = s->minimize(objective(m, q, negate));
  res.feasible = true;
  res.state = state_from(m, x);
  res.optimum = res.state.value[q];
  return res;
}

StrongSetReport admits_strong_set(const FiniteOrthoLattice& L, StateModel model) {
  StrongSetReport rep;
  Model m = build_model(L, model);
  rep.model = m.kind;
  const int n = L.size();
  for (int p = 0; p < n; ++p) {
    std::vector<int> open;
    for (int q = 0; q < n; ++q) {
      if (!L.leq(p, q)) open.push_back(q);
    }
    if (open.empty()) continue;
    auto s = feasible(m, {{p, Rational(1)}});
    if (!s) {
      rep.strong = false;
      rep.no_state_for_p = true;
      rep.failing_pair = std::make_pair(p, open.front());
      return rep;
    }
    bool first = true;
    while (!open.empty()) {
      int q = open.front();
      auto [value, x] = s->minimize(objective(m, q, false));
      ++rep.lp_solves;
      State st = state_from(m, x);
      if (st.value[q] == 1) {
        rep.strong = false;
        rep.failing_pair = std::make_pair(p, q);
        rep.failing_optimum = st.value[q];
        return rep;
      }
      std::erase_if(open, [&](int r) { return st.value[r] < 1; });
      if (first) {
        rep.witnesses.emplace_back(p, std::move(st));
        first = false;
      }
    }
  }
  return rep;
}

ClassicalStrongReport admits_classical_strong(const FiniteOrthoLattice& L, StateModel model) {
  ClassicalStrongReport rep;
  rep.note = "literal reading: a single state with m(p)=1 for every p != 0 and m(q)<1 for every q != 1";
  Model m = build_model(L, model);
  const int n = L.size();
  std::vector<std::pair<int, Rational>> fixed;
  for (int p = 0; p < n; ++p) {
    if (p != L.zero()) fixed.emplace_back(p, 1);
  }
  auto s = feasible(m, fixed);
  if (!s) {
    rep.infeasible = true;
    return rep;
  }
  // Averaging the per-q minimizers keeps every m(q) below 1 at once.
  State avg;
  avg.value.assign(n, 0);
  int count = 0;
  for (int q = 0; q < n; ++q) {
    if (q == L.one()) continue;
    auto [value, x] = s->minimize(objective(m, q, false));
    State st = state_from(m, x);
    if (st.value[q] == 1) {
      rep.blocking = q;
      return rep;
    }
    for (int e = 0; e < n; ++e) avg.value[e] += st.value[e];
    ++count;
  }
  if (count > 0) {
    for (auto& v : avg.value) v /= count;
  } else {
    auto [value, x] = s->minimize(Row(m.vars, 0));
    avg = state_from(m, x);
  }
  rep.holds = true;
  rep.witness = std::move(avg);
  return rep;
}

std::string format_state(const FiniteOrthoLattice& L, const State& m) {
  std::string out;
  for (int e = 0; e < L.size(); ++e) {
    if (e) out += ' ';
    out += L.element_name(e) + "=" + m.value[e].get_str();
  }
  return out;
}

}  // namespace omlkit

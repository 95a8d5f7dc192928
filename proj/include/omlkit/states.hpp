#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omlkit/lattice.hpp"

namespace omlkit {

using Rational = mpq_class;

/// One exact value per lattice element.
struct State {
  std::vector<Rational> value;
};

/// Which variables the linear programs use. `atoms` needs a pasted lattice.
enum class StateModel { automatic, atoms, elements };

/// Checks m(1)=1, m(0)=0, 0 <= m <= 1, m(x')=1-m(x) and m(x v y)=m(x)+m(y)
/// for x =< y'. On failure `why` names the first broken condition.
[[nodiscard]] bool is_state(const FiniteOrthoLattice& L, const State& m, std::string* why = nullptr);

enum class Objective { minimize, maximize };

struct StateResult {
  bool feasible = false;
  Rational optimum;
  State state;  // attains the optimum
};

/// Optimizes m(q) over the states with m(e) = r for every fixed (e, r).
[[nodiscard]] StateResult find_state(const FiniteOrthoLattice& L, const std::vector<std::pair<int, Rational>>& fixed,
                                     int q, Objective objective = Objective::minimize,
                                     StateModel model = StateModel::automatic);

struct StrongSetReport {
  bool strong = true;
  /// Lexicographically first pair p =< q failing, with min m(q) given m(p)=1.
  std::optional<std::pair<int, int>> failing_pair;
  /// Set when no state at all has m(p)=1 for the failing p.
  bool no_state_for_p = false;
  std::optional<Rational> failing_optimum;  // exactly 1 when present
  /// One state per p that was solved, with m(p)=1; it separates p from every
  /// q that it gives a value below 1.
  std::vector<std::pair<int, State>> witnesses;
  std::uint64_t lp_solves = 0;
  StateModel model = StateModel::elements;
};

/// Strong set of states: for every p not below q some state has m(p)=1 and m(q)<1.
[[nodiscard]] StrongSetReport admits_strong_set(const FiniteOrthoLattice& L, StateModel model = StateModel::automatic);

struct ClassicalStrongReport {
  bool holds = false;
  /// No state takes the value 1 on every nonzero element.
  bool infeasible = false;
  std::optional<int> blocking;  // q with min m(q) = 1
  std::optional<State> witness;
  std::string note;
};

/// Literal reading: one state with m(p)=1 for all p != 0 and m(q)<1 for all q != 1.
[[nodiscard]] ClassicalStrongReport admits_classical_strong(const FiniteOrthoLattice& L,
                                                            StateModel model = StateModel::automatic);

[[nodiscard]] std::string format_state(const FiniteOrthoLattice& L, const State& m);

}  // namespace omlkit

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "omlkit/diagram.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/terms.hpp"

namespace omlkit {

struct Assignment {
  std::vector<std::string> vars;
  std::vector<int> values;

  [[nodiscard]] std::optional<int> get(std::string_view name) const;
};

enum class Verdict { holds, fails, inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v);

enum class VarOrder {
  depth,   // deepest first occurrence first, ties by first appearance
  planned,  // cheapest order under a fixed search-cost estimate
};

struct CheckOptions {
  bool prune = true;
  VarOrder order = VarOrder::planned;
  /// Overrides `order` when non-empty; must be a permutation of the statement variables.
  std::vector<std::string> explicit_order;
  double timeout_seconds = 0;  // 0 = unlimited
  int workers = 1;
};

struct CheckReport {
  Verdict verdict = Verdict::holds;
  std::optional<Assignment> witness;  // in statement variable order
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
  std::chrono::duration<double, std::milli> elapsed{};
};

/// Unbound variables raise std::invalid_argument.
[[nodiscard]] int evaluate(const FiniteOrthoLattice& L, const Term& t, const Assignment& a);
[[nodiscard]] bool relation_holds(const FiniteOrthoLattice& L, const Relation& r, const Assignment& a);
/// True unless all hypotheses hold and the conclusion does not.
[[nodiscard]] bool statement_holds_at(const FiniteOrthoLattice& L, const Statement& s, const Assignment& a);

/// Exhaustive check over all assignments. A failing report carries the first
/// violating assignment in the checker's variable order.
[[nodiscard]] CheckReport check(const FiniteOrthoLattice& L, const Statement& s, const CheckOptions& opts = {});

/// n-Go in the form gamma(a1..an) =< a1 ->1 an by dynamic programming over
/// chain prefixes. The witness is the lexicographically first in a1..an.
[[nodiscard]] CheckReport check_ngo_dp(const FiniteOrthoLattice& L, int n, const CheckOptions& opts = {});

/// (a1 ->1 a3) ^ oan(n; a1..an) =< a2 ->1 a3, enumerating a3..an before a1, a2.
[[nodiscard]] CheckReport check_noa(const FiniteOrthoLattice& L, int n, const CheckOptions& opts = {});

/// `<lattice> <id> HOLDS|FAILS|INCONCLUSIVE [witness=v=e,...] examined=<n> ms=<t>`
[[nodiscard]] std::string format_report(const FiniteOrthoLattice& L, std::string_view lattice_label,
                                        std::string_view statement_id, const CheckReport& r, bool timing = true);

struct ScanOptions {
  bool first_violator = false;
  int workers = 1;
  CheckOptions check;
};

struct ScanItem {
  std::size_t index = 0;
  std::string gdf;
  std::optional<std::string> error;  // lattice construction failure
  CheckReport report;
};

struct ScanResult {
  std::vector<ScanItem> items;  // corpus order; stops after the first violator when requested
  std::uint64_t violating = 0;
  std::uint64_t satisfying = 0;
  std::uint64_t errored = 0;
  std::uint64_t inconclusive = 0;
};

/// `on_item` is called in corpus order.
[[nodiscard]] ScanResult scan(const std::vector<GreechieDiagram>& corpus, const Statement& s, const ScanOptions& opts = {},
                              const std::function<void(const ScanItem&)>& on_item = {});

[[nodiscard]] std::string format_scan_item(const ScanItem& item, std::string_view statement_id, bool timing = true);
[[nodiscard]] std::string format_scan_summary(const ScanResult& r);

}  // namespace omlkit

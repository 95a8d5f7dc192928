#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "omlkit/diagram.hpp"

namespace omlkit {

/// Raised when tables or a pasting fail the ortholattice invariants.
class LatticeError : public std::runtime_error {
 public:
  LatticeError(const std::string& what, std::vector<int> witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}
  [[nodiscard]] const std::vector<int>& witness() const { return witness_; }

 private:
  std::vector<int> witness_;
};

struct LatticeSource {
  enum class Kind { greechie_pasting, explicit_tables, fixture };
  Kind kind = Kind::explicit_tables;
  std::string provenance;
  std::optional<GreechieDiagram> diagram;
};

/// Finite ortholattice with cached operation tables. Element 0 is the bottom,
/// element 1 the top; pasted lattices list atoms next, then their complements.
class FiniteOrthoLattice {
 public:
  static constexpr int kMaxSize = 255;

  [[nodiscard]] static FiniteOrthoLattice from_greechie(const GreechieDiagram& d);
  /// Tables indexed in the caller's element order; the bottom and top are
  /// moved to indices 0 and 1, everything else keeps its relative order.
  [[nodiscard]] static FiniteOrthoLattice from_tables(std::vector<std::string> names,
                                                      const std::vector<int>& comp,
                                                      const std::vector<std::vector<int>>& meet,
                                                      const std::vector<std::vector<int>>& join);

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] static constexpr int zero() { return 0; }
  [[nodiscard]] static constexpr int one() { return 1; }
  [[nodiscard]] int comp(int x) const { return comp_[x]; }
  [[nodiscard]] int meet(int x, int y) const { return meet_[x * n_ + y]; }
  [[nodiscard]] int join(int x, int y) const { return join_[x * n_ + y]; }
  [[nodiscard]] bool leq(int x, int y) const { return meet_[x * n_ + y] == x; }

  [[nodiscard]] const std::uint8_t* comp_table() const { return comp_.data(); }
  [[nodiscard]] const std::uint8_t* meet_table() const { return meet_.data(); }
  [[nodiscard]] const std::uint8_t* join_table() const { return join_.data(); }

  [[nodiscard]] const std::string& element_name(int x) const { return names_[x]; }
  [[nodiscard]] std::optional<int> element_by_name(std::string_view name) const;

  /// Diagram atom -> element, for pasted lattices.
  [[nodiscard]] const std::vector<int>& atom_of() const { return atom_of_; }
  /// Number of blocks of the underlying diagram, or 0.
  [[nodiscard]] int block_count() const {
    return source.diagram ? source.diagram->block_count() : 0;
  }

  std::string name;
  LatticeSource source;

 private:
  void verify() const;

  int n_ = 0;
  std::vector<std::uint8_t> comp_;
  std::vector<std::uint8_t> meet_;
  std::vector<std::uint8_t> join_;
  std::vector<std::string> names_;
  std::vector<int> atom_of_;
};

/// Parses the table format: `elements` line, `comp` line, then `meet` and a
/// square matrix of element names. Joins follow by De Morgan.
[[nodiscard]] FiniteOrthoLattice parse_table_lattice(std::string_view text);

[[nodiscard]] const std::vector<std::string>& fixture_names();
[[nodiscard]] FiniteOrthoLattice fixture(std::string_view name);
/// Fixture diagram, or nullopt for the table-defined fixtures.
[[nodiscard]] std::optional<GreechieDiagram> fixture_diagram(std::string_view name);

/// Rim of 2n blocks, hub joined to the middle atom of every second rim block.
[[nodiscard]] GreechieDiagram wagon_wheel_diagram(int n);
[[nodiscard]] FiniteOrthoLattice wagon_wheel(int n);

/// A fixture name, a one-line GDF diagram, or a path to a table or GDF file.
[[nodiscard]] FiniteOrthoLattice load_lattice(std::string_view spec);

struct OrthomodularReport {
  bool holds = true;
  std::optional<std::pair<int, int>> witness;  // a <= b with a v (a' ^ b) != b
};

[[nodiscard]] OrthomodularReport is_orthomodular(const FiniteOrthoLattice& L);
/// a = (a ^ b) v (a ^ b')
[[nodiscard]] bool commutes(const FiniteOrthoLattice& L, int a, int b);
/// a ^ (a' v b) <= b
[[nodiscard]] bool commutes_alt(const FiniteOrthoLattice& L, int a, int b);
[[nodiscard]] bool is_distributive(const FiniteOrthoLattice& L);

}  // namespace omlkit

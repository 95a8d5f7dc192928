#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omlkit/diagram.hpp"

namespace omlkit {

/// Result of canonically labeling the atom/block incidence graph.
struct Labeling {
  std::vector<int> atom_label;   // atom -> canonical atom index
  std::vector<int> block_label;  // block -> canonical block position
  std::vector<int> atom_orbit;   // atom -> smallest atom in its Aut orbit
  std::vector<int> block_orbit;  // block -> smallest block in its Aut orbit
  /// Canonical block list: per canonical block position, its sorted canonical
  /// atoms (3 bytes, 0xff padding for 2-atom blocks), prefixed by counts.
  std::vector<std::uint8_t> certificate;
  /// True when the search found no nontrivial automorphism.
  bool rigid = true;
};

/// Individualization-refinement canonical labeling. Block colors, when given,
/// are respected: blocks are only mapped onto blocks of the same color.
[[nodiscard]] Labeling canonical_labeling(int atom_count, std::span<const Block> blocks,
                                          std::span<const int> block_colors = {});

}  // namespace omlkit

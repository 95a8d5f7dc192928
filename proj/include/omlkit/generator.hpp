#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include "omlkit/diagram.hpp"

namespace omlkit {

/// What to generate: connected 3-atom-block diagrams obeying the loop lemma.
struct GenSpec {
  int min_blocks = 1;
  int max_blocks = 1;
  std::optional<int> atoms;
  bool legless = false;
  /// Restrict to descendants of this diagram in the canonical construction tree.
  std::optional<GreechieDiagram> prefix;
  int workers = 1;
};

struct GenStats {
  std::map<std::pair<int, int>, std::uint64_t> emitted;  // (atoms, blocks) -> count
  std::uint64_t candidates = 0;
  std::uint64_t isomorph = 0;
  std::uint64_t loop = 0;
  std::uint64_t disconnected = 0;
  std::uint64_t leg = 0;
  std::uint64_t atom_filter = 0;  // wrong atom count at an emitted depth
  std::uint64_t pruned = 0;       // cannot reach the target
  std::uint64_t interior = 0;     // accepted but below min_blocks

  [[nodiscard]] std::uint64_t total() const;
  void merge(const GenStats& other);
};

using DiagramSink = std::function<void(const GreechieDiagram&)>;

/// Streams one representative per isomorphism class. The sink may be empty.
GenStats generate(const GenSpec& spec, const DiagramSink& sink);

[[nodiscard]] inline GenStats count(const GenSpec& spec) { return generate(spec, {}); }

/// The construction-path parent of a diagram with at least two blocks.
[[nodiscard]] GreechieDiagram canonical_parent(const GreechieDiagram& d);

}  // namespace omlkit

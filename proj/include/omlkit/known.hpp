#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace omlkit {

/// A verdict the source publication reports for a fixture.
struct KnownVerdict {
  std::string statement;  // registry id
  bool holds = false;
  std::string source;     // quoted phrase
};

[[nodiscard]] const std::vector<KnownVerdict>& known_verdicts(std::string_view fixture);

}  // namespace omlkit

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omlkit {

/// Atom symbols of the GDF v1 text format, in label order: 1-9, A-Z, a-z.
inline constexpr std::string_view kAtomAlphabet =
    "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
inline constexpr int kMaxGdfAtoms = static_cast<int>(kAtomAlphabet.size());

/// A block of a Greechie diagram: 2 or 3 distinct atoms.
struct Block {
  std::array<int, 3> atom{};
  int size = 0;

  Block() = default;
  Block(int a, int b) : atom{a, b, -1}, size(2) {}
  Block(int a, int b, int c) : atom{a, b, c}, size(3) {}

  [[nodiscard]] const int* begin() const { return atom.data(); }
  [[nodiscard]] const int* end() const { return atom.data() + size; }
  [[nodiscard]] bool contains(int a) const {
    for (int x : *this) {
      if (x == a) return true;
    }
    return false;
  }
  friend bool operator==(const Block&, const Block&) = default;
};

class DiagramError : public std::runtime_error {
 public:
  enum class Kind {
    syntax,
    block_size,
    duplicate_atom,
    duplicate_block,
    shared_pair,
    loop3,
    loop4,
    disconnected,
    unused_atom,
    alphabet,
  };

  DiagramError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[nodiscard]] std::string_view to_string(DiagramError::Kind kind);

/// Atoms are 0..atom_count-1; blocks are hyperedges over them.
struct GreechieDiagram {
  int atom_count = 0;
  std::vector<Block> blocks;
  std::string label;

  [[nodiscard]] int block_count() const { return static_cast<int>(blocks.size()); }
  [[nodiscard]] std::vector<int> atom_degrees() const;
};

struct ValidationOptions {
  /// The no-3/4-loop condition. Switching it off is for experiments only;
  /// lattice construction still verifies the result.
  bool check_loops = true;
};

/// Throws DiagramError naming the first violated invariant.
void validate(const GreechieDiagram& d, ValidationOptions opts = {});

/// Parses one GDF v1 diagram such as "123,345.". Atoms are numbered by first
/// appearance; whitespace is ignored.
[[nodiscard]] GreechieDiagram parse_diagram(std::string_view text,
                                            ValidationOptions opts = {});

/// Writes GDF v1, numbering atoms by first appearance in block order.
[[nodiscard]] std::string serialize_diagram(const GreechieDiagram& d);

/// Reads every non-comment, non-blank line of a GDF corpus. Lines that fail
/// to parse are reported through `on_error` (line number, error) and skipped.
std::vector<GreechieDiagram> read_corpus(
    std::istream& in, ValidationOptions opts = {},
    const std::function<void(int, const DiagramError&)>& on_error = {});

/// True iff no block meets the union of the other blocks in fewer than two
/// atoms. Single-block diagrams are legless.
[[nodiscard]] bool is_legless(const GreechieDiagram& d);

/// Applies an atom relabeling `perm[old] = new` and keeps block order.
[[nodiscard]] GreechieDiagram relabel(const GreechieDiagram& d, std::span<const int> perm);

/// A total-order key over isomorphism classes of diagrams.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const noexcept;
};

[[nodiscard]] CanonicalForm canonical_form(const GreechieDiagram& d);
[[nodiscard]] bool isomorphic(const GreechieDiagram& a, const GreechieDiagram& b);

/// The diagram rebuilt from a canonical form (canonical atom numbering).
[[nodiscard]] GreechieDiagram from_canonical_form(const CanonicalForm& f);

}  // namespace omlkit

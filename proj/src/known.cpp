#include "omlkit/known.hpp"

#include <map>

namespace omlkit {

namespace {

using Table = std::map<std::string, std::vector<KnownVerdict>, std::less<>>;

Table build() {
  Table t;
  auto add = [&](const std::string& f, const std::string& id, bool holds, const std::string& src) {
    t[f].push_back({id, holds, src});
  };
  const char* o6 = "fail in lattice O6";
  for (int i = 1; i <= 5; ++i) add("O6", "qm-as-id." + std::to_string(i), false, o6);
  for (const char* id : {"om-alt", "om-alte", "omldistr1", "omldistr2", "omldistr3"}) add("O6", id, false, o6);

  add("MO2", "tri-to3", false, "fail in lattice MO2");
  add("MO2", "tri-to4", false, "fail in lattice MO2");
  add("MO2", "tri-to5", true, "holds in all OMLs");

  add("G3", "n-go.3", false, "the smallest that violates 3-Go");
  add("G3", "new3go", true, "holds in OML G3");
  for (int n = 4; n <= 7; ++n) {
    std::string f = "G" + std::to_string(n);
    add(f, "n-go." + std::to_string(n), false, "Gn violates n-Go");
    add(f, "n-go." + std::to_string(n - 1), true, "but not (n-1)-Go");
  }
  add("Peterson", "n-go.3", true, "violates 4-Go but not 3-Go");
  add("Peterson", "n-go.4", false, "violates 4-Go but not 3-Go");
  add("Peterson", "new3go", false, "fails in the Peterson OML");
  add("G5s", "n-go.5", false, "violates 5-Go but not 4-Go");
  add("G5s", "n-go.4", true, "violates 5-Go but not 4-Go");
  for (const char* f : {"G6s1", "G6s2"}) {
    add(f, "n-go.6", false, "violate 6-Go but not 5-Go");
    add(f, "n-go.5", true, "violate 6-Go but not 5-Go");
  }
  for (const char* f : {"G7s1", "G7s2"}) {
    add(f, "n-go.7", false, "violate 7-Go but not 6-Go");
    add(f, "n-go.6", true, "violate 7-Go but not 6-Go");
  }

  add("L28", "3oa", false, "fails in lattice L28");
  add("L28", "weak4oa", true, "fails in OML L38 but holds in L28");
  add("L36", "3oa", true, "L36 is a 3OA");
  add("L36", "4oa", false, "it is not a 4OA");
  add("L36", "new3oa", false, "fails in L36");
  add("L38", "weak4oa", false, "fails in OML L38 but holds in L28");
  add("L38m", "3oa", false, "neither a 3OA nor a 3GO");
  add("L38m", "n-go.3", false, "neither a 3OA nor a 3GO");
  add("L38m", "tr1/c", false, "both fail in lattice L38m");
  add("L38m", "tr1/cd", false, "both fail in lattice L38m");
  add("Lhat", "3oa", false, "3oa fails in Lhat");
  add("Lhat", "new3oa", true, "holds in Lhat");
  add("Lhat", "tr1/c", true, "both hold in lattice Lhat");
  add("Lhat", "tr1/cd", true, "both hold in lattice Lhat");
  add("L42", "4oa", true, "is a 4OA, a 5OA");
  add("L42", "noa.5", true, "is a 4OA, a 5OA");
  for (int n = 3; n <= 9; ++n) add("L42", "n-go." + std::to_string(n), true, "an nGO for n <= 9");
  add("L42", "mayet3", true, "hold in 6GO");
  for (const char* f : {"L46-7", "L46-9"}) {
    add(f, "4oa", true, "the 4OA law holds in L46-7");
    add(f, "noa.4", true, "the 4OA law holds in L46-7");
    add(f, "noa.5", false, "fails in L46-7 and L46-9 for n=5");
    add(f, "noae.5", false, "fails in L46-7 and L46-9 for n=5");
  }
  return t;
}

}  // namespace

const std::vector<KnownVerdict>& known_verdicts(std::string_view fixture) {
  static const Table table = build();
  static const std::vector<KnownVerdict> none;
  auto it = table.find(fixture);
  return it == table.end() ? none : it->second;
}

}  // namespace omlkit

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "omlkit/checker.hpp"
#include "omlkit/generator.hpp"
#include "omlkit/known.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/states.hpp"
#include "omlkit/terms.hpp"

using namespace omlkit;

namespace {

constexpr int kOk = 0;
constexpr int kAbsent = 1;
constexpr int kUsage = 2;
constexpr int kAborted = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int workers = 1;
  double timeout = 0;
  bool timing = true;
  std::string format = "text";
  std::string order = "planned";
  bool no_prune = false;
};

void add_run_options(CLI::App* app, RunConfig& rc) {
  app->add_option("--workers", rc.workers, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--timeout", rc.timeout, "seconds per check, 0 = unlimited")->check(CLI::NonNegativeNumber);
  app->add_flag("--no-timing", [&](std::int64_t) { rc.timing = false; }, "print ms=- instead of elapsed time");
  app->add_option("--format", rc.format, "output format")->check(CLI::IsMember({"text", "tsv"}));
  app->add_option("--order", rc.order, "variable order")->check(CLI::IsMember({"planned", "depth"}));
  app->add_flag("--no-prune", rc.no_prune, "disable search pruning");
}

CheckOptions check_options(const RunConfig& rc) {
  CheckOptions o;
  o.workers = rc.workers;
  o.timeout_seconds = rc.timeout;
  o.order = rc.order == "depth" ? VarOrder::depth : VarOrder::planned;
  o.prune = !rc.no_prune;
  return o;
}

FiniteOrthoLattice lattice_arg(const std::string& spec) {
  try {
    return load_lattice(spec);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot load lattice '") + spec + "': " + e.what());
  }
}

std::pair<std::string, Statement> statement_arg(const std::string& id, const std::string& text) {
  if (!id.empty() && !text.empty()) throw UsageError("give either --eq or --stmt, not both");
  if (!id.empty()) {
    const RegistryEntry* e = find_entry(id);
    if (!e) throw UsageError("unknown registry id: " + id);
    return {id, e->statement};
  }
  if (text.empty()) throw UsageError("one of --eq or --stmt is required");
  try {
    return {"stmt", parse_statement(text)};
  } catch (const ParseError& e) {
    throw UsageError(std::string("malformed statement: ") + e.what());
  }
}

std::string witness_text(const FiniteOrthoLattice& L, const CheckReport& r) {
  std::string out;
  if (!r.witness) return out;
  for (std::size_t i = 0; i < r.witness->vars.size(); ++i) {
    if (i) out += ',';
    out += r.witness->vars[i] + "=" + L.element_name(r.witness->values[i]);
  }
  return out;
}

std::string report_line(const FiniteOrthoLattice& L, const std::string& label, const std::string& id,
                        const CheckReport& r, const RunConfig& rc) {
  if (rc.format == "text") return format_report(L, label, id, r, rc.timing);
  std::string ms = rc.timing ? std::to_string(static_cast<long long>(r.elapsed.count() + 0.5)) : "-";
  return label + "\t" + id + "\t" + std::string(to_string(r.verdict)) + "\t" + witness_text(L, r) + "\t" +
         std::to_string(r.examined) + "\t" + ms;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::holds: return kOk;
    case Verdict::fails: return kAbsent;
    case Verdict::inconclusive: return kAborted;
  }
  return kUsage;
}

// "A" or "A..B"
std::pair<int, int> block_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad --blocks value: " + s);
  }
}

int run_gen(const std::string& blocks, std::optional<int> atoms, bool legless, bool count_only, bool stats,
            const std::string& prefix, const RunConfig& rc) {
  GenSpec spec;
  std::tie(spec.min_blocks, spec.max_blocks) = block_range(blocks);
  if (spec.min_blocks < 1 || spec.max_blocks < spec.min_blocks) throw UsageError("bad --blocks range: " + blocks);
  spec.atoms = atoms;
  spec.legless = legless;
  spec.workers = rc.workers;
  if (!prefix.empty()) {
    try {
      spec.prefix = parse_diagram(prefix);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad --prefix: ") + e.what());
    }
  }
  DiagramSink sink;
  if (!count_only) sink = [](const GreechieDiagram& d) { std::cout << serialize_diagram(d) << '\n'; };
  GenStats st = generate(spec, sink);
  if (count_only) std::cout << st.total() << '\n';
  if (stats) {
    const char* sep = rc.format == "tsv" ? "\t" : " ";
    std::ostream& os = count_only ? std::cout : std::cerr;
    os << "atoms" << sep << "blocks" << sep << "count\n";
    for (const auto& [cell, n] : st.emitted) os << cell.first << sep << cell.second << sep << n << '\n';
    os << "candidates=" << st.candidates << " isomorph=" << st.isomorph << " loop=" << st.loop
       << " disconnected=" << st.disconnected << " leg=" << st.leg << " atom_filter=" << st.atom_filter
       << " pruned=" << st.pruned << " interior=" << st.interior << '\n';
  }
  return kOk;
}

int run_check(const std::string& lattice, const std::string& eq, const std::string& stmt, bool dp,
              const RunConfig& rc) {
  FiniteOrthoLattice L = lattice_arg(lattice);
  auto [id, s] = statement_arg(eq, stmt);
  CheckOptions o = check_options(rc);
  CheckReport r;
  if (dp) {
    if (id.rfind("n-go.", 0) != 0) throw UsageError("--dp needs --eq n-go.N");
    r = check_ngo_dp(L, std::stoi(id.substr(5)), o);
  } else {
    r = check(L, s, o);
  }
  std::string label = L.name.empty() ? lattice : L.name;
  std::cout << report_line(L, label, id, r, rc) << '\n';
  return verdict_code(r.verdict);
}

int run_scan(const std::string& corpus, const std::string& eq, const std::string& stmt, bool first_violator,
             const RunConfig& rc) {
  auto [id, s] = statement_arg(eq, stmt);
  std::vector<GreechieDiagram> diagrams;
  auto on_error = [&](int line, const DiagramError& e) {
    std::cerr << "corpus line " << line << ": " << e.what() << '\n';
  };
  if (corpus == "-") {
    diagrams = read_corpus(std::cin, {}, on_error);
  } else {
    std::ifstream in(corpus);
    if (!in) throw UsageError("cannot read corpus: " + corpus);
    diagrams = read_corpus(in, {}, on_error);
  }
  ScanOptions so;
  so.first_violator = first_violator;
  so.workers = rc.workers;
  so.check = check_options(rc);
  ScanResult res = scan(diagrams, s, so, [&](const ScanItem& item) {
    if (rc.format == "text") {
      std::cout << format_scan_item(item, id, rc.timing) << '\n';
    } else if (item.error) {
      std::cout << item.gdf << '\t' << id << "\tERROR\t" << *item.error << "\t\t\n";
    } else {
      FiniteOrthoLattice L = FiniteOrthoLattice::from_greechie(parse_diagram(item.gdf));
      std::cout << report_line(L, item.gdf, id, item.report, rc) << '\n';
    }
  });
  std::cout << format_scan_summary(res) << '\n';
  return res.inconclusive > 0 ? kAborted : kOk;
}

int run_states(const std::string& lattice, bool classical, const std::string& model_name, bool show) {
  FiniteOrthoLattice L = lattice_arg(lattice);
  StateModel model = model_name == "atoms"      ? StateModel::atoms
                     : model_name == "elements" ? StateModel::elements
                                                : StateModel::automatic;
  if (model == StateModel::atoms && !L.source.diagram) throw UsageError("--model atoms needs a Greechie lattice");
  if (classical) {
    ClassicalStrongReport r = admits_classical_strong(L, model);
    if (r.holds) {
      std::cout << "CLASSICAL-STRONG\n";
      if (show && r.witness) std::cout << "state " << format_state(L, *r.witness) << '\n';
    } else if (r.infeasible) {
      std::cout << "NOT-CLASSICAL-STRONG no state is 1 on every nonzero element\n";
    } else {
      std::cout << "NOT-CLASSICAL-STRONG q=" << L.element_name(*r.blocking) << " min=1\n";
    }
    std::cout << "note " << r.note << '\n';
    return r.holds ? kOk : kAbsent;
  }
  StrongSetReport r = admits_strong_set(L, model);
  if (r.strong) {
    std::cout << "STRONG\n";
  } else {
    const auto [p, q] = *r.failing_pair;
    std::cout << "NOT-STRONG pair=" << L.element_name(p) << "," << L.element_name(q);
    if (r.no_state_for_p) std::cout << " no state with m(" << L.element_name(p) << ")=1";
    else std::cout << " min=" << r.failing_optimum->get_str();
    std::cout << '\n';
  }
  if (show) {
    for (const auto& [p, st] : r.witnesses) {
      std::cout << "state m(" << L.element_name(p) << ")=1: " << format_state(L, st) << '\n';
    }
  }
  return r.strong ? kOk : kAbsent;
}

int run_info(const std::string& name) {
  const auto& names = fixture_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown fixture: " + name);
  FiniteOrthoLattice L = fixture(name);
  std::cout << "fixture " << name << '\n';
  std::cout << "elements " << L.size() << '\n';
  if (auto d = fixture_diagram(name)) {
    std::cout << "atoms " << d->atom_count << '\n';
    std::cout << "blocks " << d->block_count() << '\n';
    std::cout << "diagram " << serialize_diagram(*d) << '\n';
  } else {
    std::cout << "table-defined\n";
  }
  std::cout << "orthomodular " << (is_orthomodular(L).holds ? "yes" : "no") << '\n';
  for (const KnownVerdict& k : known_verdicts(name)) {
    std::cout << "known " << k.statement << ' ' << (k.holds ? "HOLDS" : "FAILS") << " \"" << k.source << "\"\n";
  }
  return kOk;
}

int run_registry(bool list, const std::string& show) {
  if (!show.empty()) {
    const RegistryEntry* e = find_entry(show);
    if (!e) throw UsageError("unknown registry id: " + show);
    std::cout << "id " << e->id << '\n';
    std::cout << "statement " << e->text << '\n';
    std::cout << "variables";
    for (const auto& v : e->statement.variables) std::cout << ' ' << v;
    std::cout << '\n';
    std::cout << "provenance " << e->provenance << '\n';
    std::cout << "note " << e->note << '\n';
    return kOk;
  }
  if (list) {
    for (const RegistryEntry& e : registry()) std::cout << e.id << '\n';
    return kOk;
  }
  std::cout << registry_catalogue();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite orthomodular lattice toolkit"};
  app.require_subcommand(1);

  RunConfig rc;

  auto* gen = app.add_subcommand("gen", "generate Greechie diagrams");
  std::string blocks;
  std::optional<int> atoms;
  bool legless = false;
  bool count_only = false;
  bool stats = false;
  std::string prefix;
  gen->add_option("--blocks", blocks, "block count A or range A..B")->required();
  gen->add_option("--atoms", atoms, "atom count filter");
  gen->add_flag("--legless", legless);
  gen->add_flag("--count-only", count_only);
  gen->add_flag("--stats", stats, "per (atoms, blocks) table");
  gen->add_option("--prefix", prefix, "restrict to descendants of this GDF diagram");
  add_run_options(gen, rc);

  auto* chk = app.add_subcommand("check", "check a statement on one lattice");
  std::string lattice;
  std::string eq;
  std::string stmt;
  bool dp = false;
  chk->add_option("--lattice", lattice, "fixture name, GDF line or table file")->required();
  chk->add_option("--eq", eq, "registry id");
  chk->add_option("--stmt", stmt, "statement text");
  chk->add_flag("--dp", dp, "dynamic programming for n-go.N");
  add_run_options(chk, rc);

  auto* scn = app.add_subcommand("scan", "check a statement on every diagram of a corpus");
  std::string corpus;
  bool first_violator = false;
  scn->add_option("--corpus", corpus, "GDF file or - for standard input")->required();
  scn->add_option("--eq", eq, "registry id");
  scn->add_option("--stmt", stmt, "statement text");
  scn->add_flag("--first-violator", first_violator);
  add_run_options(scn, rc);

  auto* sts = app.add_subcommand("states", "strong sets of states");
  bool classical = false;
  bool show_states = false;
  std::string model = "auto";
  sts->add_option("--lattice", lattice, "fixture name, GDF line or table file")->required();
  sts->add_flag("--classical", classical);
  sts->add_flag("--show-states", show_states, "print witness states as exact fractions");
  sts->add_option("--model", model, "LP variables")->check(CLI::IsMember({"auto", "atoms", "elements"}));

  auto* inf = app.add_subcommand("info", "fixture summary");
  std::string fixture_name;
  inf->add_option("--fixture", fixture_name)->required();

  auto* reg = app.add_subcommand("registry", "statement registry");
  bool list = false;
  std::string show;
  reg->add_flag("--list", list);
  reg->add_option("--show", show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return run_gen(blocks, atoms, legless, count_only, stats, prefix, rc);
    if (*chk) return run_check(lattice, eq, stmt, dp, rc);
    if (*scn) return run_scan(corpus, eq, stmt, first_violator, rc);
    if (*sts) return run_states(lattice, classical, model, show_states);
    if (*inf) return run_info(fixture_name);
    if (*reg) return run_registry(list, show);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

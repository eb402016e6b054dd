// Command-line front end: every subcommand prints one JSON report (or the
// requested text/csv/dot rendering) and maps failures to exit codes
// 2 (invalid input, failed validation) and 3 (budget exhausted).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hbc/fixtures.hpp"
#include "hbc/report.hpp"

namespace {

using hbc::report::json;

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;

struct Config {
  std::string format = "json";
  std::string output;
  int threads = 0;
  std::uint64_t seed = 20240917;
};

int env_threads() {
  if (const char* s = std::getenv("HBC_THREADS"); s && *s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw hbc::InputError(std::string("HBC_THREADS is not a number: ") + s);
    }
  }
  return 0;
}

void emit(const Config& cfg, const std::string& body) {
  if (cfg.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw hbc::InputError("cannot write " + cfg.output);
  out << body;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw hbc::InputError("cannot write " + path);
  out << body;
}

int error(const std::string& kind, const std::string& message, int code) {
  std::cout << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump(2) << "\n";
  return code;
}

std::optional<hbc::genus::Normalization> parse_normalization(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw hbc::InputError("normalization must be 'a,c', got '" + s + "'");
  hbc::genus::Normalization n{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  if ((n.a != 1 && n.a != 2) || (n.c != 1 && n.c != 2)) throw hbc::InputError("normalization entries must be 1 or 2");
  return n;
}

hbc::GroupPtr load_root(const std::string& root) {
  if (root == "2" || root == "3") return std::make_shared<const hbc::PcPresentation>(hbc::PcPresentation::elementary_abelian(std::stoi(root)));
  return std::make_shared<const hbc::PcPresentation>(hbc::read_pc3(root));
}

// Renders a report in the configured format; dot and csv are only offered
// where the command produces them.
void render(const Config& cfg, const json& rep, const std::string* dot = nullptr) {
  if (cfg.format == "json") emit(cfg, rep.dump(2) + "\n");
  else if (cfg.format == "text") emit(cfg, hbc::report::text(rep));
  else if (cfg.format == "csv" && rep.at("command") == "scan") emit(cfg, hbc::report::scan_csv(rep));
  else if (cfg.format == "dot" && dot) emit(cfg, *dot);
  else throw hbc::InputError("format '" + cfg.format + "' is not available for " + rep.at("command").get<std::string>());
}

int status_of(const json& rep) {
  if (hbc::report::validation_failed(rep)) return kInvalid;
  if (hbc::report::budget_exhausted(rep)) return kBudget;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed 3-groups with harmonically balanced capitulation, and the cubic fields they govern"};
  app.set_version_flag("--version", hbc::report::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::optional<int> threads_flag;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "csv", "dot"}));
  app.add_option("-o,--output", cfg.output, "Write the report to a file instead of stdout");
  app.add_option("--threads", threads_flag, "Worker threads (0: all cores); HBC_THREADS is used when absent");
  app.add_option("--seed", cfg.seed, "Seed for randomized searches");

  int max_lo = 8;
  std::string dot_path;
  auto* search = app.add_subcommand("hbc-search", "Closed groups with harmonically balanced capitulation");
  search->add_option("--max-lo", max_lo, "Largest logarithmic order")->check(CLI::Range(6, 9));
  search->add_option("--dot", dot_path, "Also write the searched tree as Graphviz");

  std::string pc3_file;
  bool first_order = false;
  auto* pat = app.add_subcommand("pattern", "Artin pattern of a group given in .pc3 format");
  pat->add_option("file", pc3_file, "Presentation file")->required()->check(CLI::ExistingFile);
  pat->add_flag("--first-order", first_order, "Skip the second order pattern");

  std::string root = "3";
  int tree_lo = 6;
  bool all = false, prune = false, digests = false;
  auto* tr = app.add_subcommand("tree", "Descendant tree of a root group");
  tr->add_option("--root", root, "Root: a .pc3 file, or 2/3 for the elementary abelian group of that rank");
  tr->add_option("--max-lo", tree_lo, "Largest logarithmic order")->check(CLI::Range(1, 10));
  tr->add_option("--dot", dot_path, "Also write the tree as Graphviz");
  tr->add_flag("--all", all, "Keep descendants with larger abelianization");
  tr->add_flag("--prune", prune, "Stop at nodes that cannot lead to closed HBC groups");
  tr->add_flag("--fingerprints", digests, "Attach fingerprints and fixture labels");

  long long conductor = 0;
  auto* cls = app.add_subcommand("classify", "Cubic residue graph of a conductor");
  cls->add_option("c", conductor, "Conductor")->required();

  long long max_c = 0;
  auto* sc = app.add_subcommand("scan", "Conductors up to a bound passing the graph and splitting tests");
  sc->add_option("--max", max_c, "Bound on the conductor")->required();

  std::vector<long long> comps;
  std::string norm;
  auto* lat = app.add_subcommand("lattice", "Subfield lattice of the genus field");
  lat->add_option("q", comps, "Three components")->required()->expected(3);
  lat->add_option("--normalization", norm, "Doublet normalization 'a,c' (default: adapted)");
  lat->add_option("--dot", dot_path, "Also write the lattice as Graphviz");

  bool tower = false;
  auto* pr = app.add_subcommand("predict", "Capitulation prediction for a conductor");
  pr->add_option("c", conductor, "Conductor")->required();
  pr->add_option("--normalization", norm, "Doublet normalization 'a,c' (default: adapted)");
  pr->add_flag("--tower", tower, "Also search the (3,3) tree for the matching group");

  std::string scenario;
  auto* cen = app.add_subcommand("census", "Subgroup census for the three rank distributions");
  cen->add_option("--scenario", scenario, "1, 2, 3 or a distribution such as 3^4,2^9");

  auto* poly = app.add_subcommand("polynomial", "Defining polynomials of the cyclic cubic fields of a conductor");
  poly->add_option("c", conductor, "Conductor")->required();

  std::string data_dir = hbc::fixtures::data_dir();
  auto* val = app.add_subcommand("validate-fixtures", "Consistency checks of the shipped tables");
  val->add_option("--dir", data_dir, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error("usage", e.what(), kInvalid);
  }

  try {
    cfg.threads = threads_flag ? *threads_flag : env_threads();
    hbc::AutOptions aut;
    aut.seed = cfg.seed;
    std::string dot;
    const bool want_dot = !dot_path.empty() || cfg.format == "dot";
    json rep;
    if (*search) {
      rep = hbc::report::hbc_search(max_lo, cfg.threads, aut, want_dot ? &dot : nullptr);
    } else if (*pat) {
      rep = hbc::report::pattern(std::make_shared<const hbc::PcPresentation>(hbc::read_pc3(pc3_file)), !first_order);
    } else if (*tr) {
      hbc::report::TreeRequest req;
      req.root = load_root(root);
      req.max_log_order = tree_lo;
      req.all_descendants = all;
      req.closed_hbc_pruning = prune;
      req.fingerprints = digests;
      req.threads = cfg.threads;
      req.aut = aut;
      rep = hbc::report::tree(req, want_dot ? &dot : nullptr);
    } else if (*cls) {
      rep = hbc::report::classify(conductor);
    } else if (*sc) {
      rep = hbc::report::scan(max_c, cfg.threads);
    } else if (*lat) {
      rep = hbc::report::lattice(hbc::genus::make_triple(comps[0], comps[1], comps[2]), parse_normalization(norm),
                                 want_dot ? &dot : nullptr);
    } else if (*pr) {
      rep = hbc::report::predict(conductor, parse_normalization(norm), tower);
    } else if (*cen) {
      rep = hbc::report::census(scenario.empty() ? std::nullopt : std::optional<std::string>(scenario), cfg.seed);
    } else if (*poly) {
      rep = hbc::report::polynomial(conductor);
    } else if (*val) {
      rep = hbc::report::validate_fixtures(data_dir);
    }
    if (!dot_path.empty()) write_file(dot_path, dot);
    render(cfg, rep, want_dot ? &dot : nullptr);
    return status_of(rep);
  } catch (const hbc::BudgetExceeded& e) {
    return error("budget", e.what(), kBudget);
  } catch (const hbc::InputError& e) {
    return error("input", e.what(), kInvalid);
  } catch (const std::exception& e) {
    return error("internal", e.what(), 1);
  }
}

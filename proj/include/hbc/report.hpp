#pragma once

// JSON reports shared by the command-line tool and the Python module.

#include <optional>
#include <string>

#include "hbc/artin.hpp"
#include "hbc/genus.hpp"
#include "hbc/tree.hpp"
#include "json.hpp"

namespace hbc::report {

using nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

json pattern_json(const ArtinPattern& p, bool canonical);
json fingerprint_json(const Fingerprint& fp);

// Each report is {"command", "provenance", "result"}.
json pattern(GroupPtr g, bool second_order);

struct TreeRequest {
  GroupPtr root;
  int max_log_order = 6;
  bool all_descendants = false;   // otherwise keep G/G' elementary abelian
  bool closed_hbc_pruning = false;
  bool fingerprints = false;
  int threads = 0;
  AutOptions aut;
};
// dot receives the Graphviz rendering when non-null.
json tree(const TreeRequest& req, std::string* dot = nullptr);
json hbc_search(int max_log_order, int threads = 0, const AutOptions& aut = {}, std::string* dot = nullptr);

json classify(long long c);
json scan(long long max_c, int threads = 0);
std::string scan_csv(const json& scan_report);
json lattice(const genus::ConductorTriple& t, std::optional<genus::Normalization> n = {}, std::string* dot = nullptr);
json predict(long long c, std::optional<genus::Normalization> n = {}, bool tower = false);
json census(const std::optional<std::string>& scenario, std::uint64_t seed = 20240917);
json polynomial(long long c);
json validate_fixtures(const std::string& dir);

// True if the report records a budget overrun.
bool budget_exhausted(const json& report);
// True if a validation report found problems.
bool validation_failed(const json& report);

// Plain-text rendering of a report.
std::string text(const json& report);

}  // namespace hbc::report

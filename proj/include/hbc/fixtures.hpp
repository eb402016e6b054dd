#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbc/artin.hpp"
#include "hbc/tree.hpp"

namespace hbc::fixtures {

// Directory holding table1.csv, table2.csv, table3.csv; HBC_DATA_DIR in the
// environment overrides the build-time location.
std::string data_dir();

// Rows of a CSV file with a header line; fields may be double-quoted.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

// Ancestors of order 3^6: kappa and alpha at the 13 positions in the
// table's own (unspecified) numbering of planes and lines.
struct Table1Row {
  int j = 0;
  std::vector<int> kappa;
  std::vector<Partition> alpha;
  RankDistribution rho;
  std::string action;                  // "<24,12>"
  std::string label() const;           // "<729,130+j>"
};

struct Table2Row {
  int lo = 0;
  long long id = 0;
  std::string alpha2_text;
  std::vector<SecondOrderEntry> alpha2;
  int nu = 0;
  int mu = 0;
  std::vector<std::pair<int, int>> counts;  // (N_s, C_s), empty for nu = 0
  std::string label() const;           // "<729,136>"
};

struct Table3Row {
  int no = 0;
  long long c = 0;
  std::string factors;                 // "3^2*7*937"
  std::vector<long long> components;   // 9 for 3^2
  RankDistribution rho;
  std::string group;                   // "<6561,217713|217717>"
  std::string thm;                     // Thm1, Thm2 or Cnj3
};

std::vector<Table1Row> load_table1(const std::string& dir = data_dir());
std::vector<Table2Row> load_table2(const std::string& dir = data_dir());
std::vector<Table3Row> load_table3(const std::string& dir = data_dir());

struct FixtureProblem {
  int no = 0;
  long long c = 0;
  std::string message;
};
// Components must be admissible, multiply to c, agree with the
// factorization of c, and the triple must be of graph 2 of category I.
std::vector<FixtureProblem> validate_table3(const std::vector<Table3Row>& rows);

struct FixtureMatch {
  std::string label;                   // "<6561,217713|217717>"
  bool ambiguous = false;
  std::vector<std::string> candidates; // one label per matching row
  int substitutions = 0;               // second order entries differing from the rows
};
// Identifies a group by order, (mu, nu), second order pattern and, when
// given, its descendant counts. Rows with identical invariants give an
// ambiguous match. Without an exact match, rows differing in a single
// second order entry are returned with substitutions = 1.
std::optional<FixtureMatch> match_fixture(const Fingerprint& fp,
                                          const std::vector<std::pair<int, int>>* counts = nullptr);
std::optional<FixtureMatch> match_fixture(const Fingerprint& fp, const std::vector<std::pair<int, int>>* counts,
                                          const std::vector<Table2Row>& rows);

// A numbering of planes (table position -> our plane index, 0-based) and
// lines (table line -> our line index, 1-based) under which every row of
// table1.csv is GL(3,3)-equivalent to one of the given patterns.
struct Table1Relabeling {
  std::vector<int> plane;              // size 13
  std::vector<int> line;               // size 14, entry 0 unused
  std::vector<int> group_of_row;       // index into the patterns
};
std::vector<Table1Relabeling> table1_relabelings(const std::vector<Table1Row>& rows,
                                                 const std::vector<ArtinPattern>& patterns);

}  // namespace hbc::fixtures

#include "hbc/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>

#include "hbc/eisenstein.hpp"
#include "hbc/genus.hpp"

namespace hbc::fixtures {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw InputError("unterminated quote in '" + line + "'");
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<std::pair<int, int>> parse_counts(const std::string& s0) {
  std::vector<std::pair<int, int>> out;
  std::string s;
  for (char ch : s0)
    if (ch != '(' && ch != ')' && ch != ' ') s += ch;
  if (s.empty() || s == "-") return out;
  std::istringstream is(s);
  for (std::string part; std::getline(is, part, ';');) {
    const auto slash = part.find('/');
    if (slash == std::string::npos) throw InputError("bad descendant count '" + part + "'");
    out.emplace_back(std::stoi(part.substr(0, slash)), std::stoi(part.substr(slash + 1)));
  }
  return out;
}

std::uint64_t order_of(int lo) {
  std::uint64_t n = 1;
  for (int i = 0; i < lo; ++i) n *= 3;
  return n;
}

std::vector<std::vector<std::string>> table(const std::string& dir, const std::string& name, std::size_t columns) {
  auto rows = read_csv(dir + "/" + name);
  for (const auto& r : rows)
    if (r.size() != columns)
      throw InputError(name + ": expected " + std::to_string(columns) + " columns, got " + std::to_string(r.size()));
  return rows;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("HBC_DATA_DIR"); env && *env) return env;
#ifdef HBC_DATA_DIR
  return HBC_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

std::string Table1Row::label() const { return "<729," + std::to_string(130 + j) + ">"; }

std::string Table2Row::label() const { return "<" + std::to_string(order_of(lo)) + "," + std::to_string(id) + ">"; }

std::vector<Table1Row> load_table1(const std::string& dir) {
  std::vector<Table1Row> out;
  for (const auto& r : table(dir, "table1.csv", 5)) {
    Table1Row row;
    row.j = std::stoi(r[0]);
    for (const auto& w : words(r[1])) row.kappa.push_back(std::stoi(w));
    for (const auto& w : words(r[2])) row.alpha.push_back(parse_partition(w));
    if (row.kappa.size() != 13 || row.alpha.size() != 13) throw InputError("table1.csv: row j=" + r[0] + " is not of length 13");
    row.rho = genus::parse_scenario(r[3]);
    row.action = r[4];
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Table2Row> load_table2(const std::string& dir) {
  std::vector<Table2Row> out;
  for (const auto& r : table(dir, "table2.csv", 6)) {
    Table2Row row;
    row.lo = std::stoi(r[0]);
    row.id = std::stoll(r[1]);
    row.alpha2_text = r[2];
    row.alpha2 = parse_alpha2(r[2]);
    row.nu = std::stoi(r[3]);
    row.mu = std::stoi(r[4]);
    row.counts = parse_counts(r[5]);
    if (static_cast<int>(row.counts.size()) != row.nu) throw InputError("table2.csv: counts of " + row.label() + " do not match nu");
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Table3Row> load_table3(const std::string& dir) {
  std::vector<Table3Row> out;
  for (const auto& r : table(dir, "table3.csv", 6)) {
    Table3Row row;
    row.no = std::stoi(r[0]);
    row.c = std::stoll(r[1]);
    row.factors = r[2];
    std::istringstream is(r[2]);
    for (std::string f; std::getline(is, f, '*');) row.components.push_back(f == "3^2" ? 9 : std::stoll(f));
    row.rho = genus::parse_scenario(r[3]);
    row.group = r[4];
    row.thm = r[5];
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<FixtureProblem> validate_table3(const std::vector<Table3Row>& rows) {
  std::vector<FixtureProblem> out;
  auto fail = [&](const Table3Row& r, const std::string& m) { out.push_back({r.no, r.c, m}); };
  for (const auto& r : rows) {
    if (r.components.size() != 3) {
      fail(r, "expected three factors in " + r.factors);
      continue;
    }
    long long product = 1;
    bool admissible = true;
    for (long long q : r.components) {
      product *= q;
      if (!genus::admissible_component(q)) {
        fail(r, "factor " + std::to_string(q) + " is neither 9 nor a prime = 1 mod 3");
        admissible = false;
      }
    }
    if (product != r.c) fail(r, "factors multiply to " + std::to_string(product));
    if (!admissible || product != r.c) continue;
    try {
      const auto t = genus::triple_of_conductor(r.c);
      auto sorted = r.components;
      std::sort(sorted.begin(), sorted.end());
      std::vector<long long> found(t.q.begin(), t.q.end());
      std::sort(found.begin(), found.end());
      if (found != sorted) fail(r, "factorization of c is " + t.factors());
      const auto g = genus::classify_graph(t);
      if (!g.cat1_graph2)
        fail(r, "not of graph 2 of category I (trivial symbols: " + (g.arrow_text().empty() ? "none" : g.arrow_text()) + ")");
    } catch (const InputError& e) {
      fail(r, e.what());
    }
  }
  return out;
}

std::optional<FixtureMatch> match_fixture(const Fingerprint& fp, const std::vector<std::pair<int, int>>* counts,
                                          const std::vector<Table2Row>& rows) {
  if (fp.log_order == 3 && fp.pclass == 1 && fp.d1 == 3) return FixtureMatch{"<27,5>", false, {"<27,5>"}};
  if (!fp.pattern || !fp.pattern->alpha2) return std::nullopt;
  auto mine = *fp.pattern->alpha2;
  std::sort(mine.begin(), mine.end());
  std::vector<const Table2Row*> hits;
  int best = 1;
  for (const auto& r : rows) {
    if (r.lo != fp.log_order || r.mu != fp.mu || r.nu != fp.nu) continue;
    if (counts && *counts != r.counts) continue;
    auto theirs = r.alpha2;
    if (theirs.size() != mine.size()) continue;
    std::sort(theirs.begin(), theirs.end());
    std::vector<SecondOrderEntry> common;
    std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(common));
    const int diff = static_cast<int>(mine.size() - common.size());
    if (diff > best) continue;
    if (diff < best) hits.clear();
    best = diff;
    hits.push_back(&r);
  }
  if (hits.empty()) return std::nullopt;
  FixtureMatch m;
  m.ambiguous = hits.size() > 1;
  m.substitutions = best;
  std::string ids;
  for (const auto* h : hits) {
    m.candidates.push_back(h->label());
    ids += (ids.empty() ? "" : "|") + std::to_string(h->id);
  }
  m.label = "<" + std::to_string(order_of(fp.log_order)) + "," + ids + ">";
  return m;
}

std::optional<FixtureMatch> match_fixture(const Fingerprint& fp, const std::vector<std::pair<int, int>>* counts) {
  static const std::vector<Table2Row> rows = load_table2();
  return match_fixture(fp, counts, rows);
}

std::vector<Table1Relabeling> table1_relabelings(const std::vector<Table1Row>& rows,
                                                 const std::vector<ArtinPattern>& patterns) {
  std::vector<Table1Relabeling> out;
  if (rows.empty()) return out;
  const auto& nv = normal_vectors(3);
  auto contains = [&](int line, int plane) { return f3::dot(nv[line - 1], nv[plane]) == 0; };
  auto is_a = [](const Partition& p) { return p.size() == 3; };

  std::vector<ArtinPattern> canon;
  for (const auto& p : patterns) canon.push_back(canonical_pattern(p));

  const std::size_t n = 13;
  for (std::size_t q = 0; q < patterns.size(); ++q) {
    const ArtinPattern& pinned = patterns[q];
    if (pinned.d != 3 || rank_distribution(pinned.alpha).scenario != rows[0].rho.scenario) continue;
    std::vector<int> plane(n, -1), line(n + 1, -1);
    std::vector<bool> plane_used(n, false), line_used(n + 1, false);

    // Taussky incidence of every other row, for positions and lines fixed so far.
    auto consistent = [&]() {
      for (std::size_t r = 1; r < rows.size(); ++r)
        for (std::size_t i = 0; i < n; ++i) {
          if (plane[i] < 0) continue;
          const int l = line[rows[r].kappa[i]];
          if (l >= 0 && contains(l, plane[i]) != is_a(rows[r].alpha[i])) return false;
        }
      return true;
    };
    auto record = [&]() {
      Table1Relabeling rel{plane, line, {}};
      for (const auto& row : rows) {
        ArtinPattern p;
        p.d = 3;
        p.kappa.assign(n, 0);
        p.alpha.assign(n, {});
        p.taussky.assign(n, '?');
        for (std::size_t i = 0; i < n; ++i) {
          p.kappa[plane[i]] = line[row.kappa[i]];
          p.alpha[plane[i]] = row.alpha[i];
        }
        const ArtinPattern c = canonical_pattern(p);
        int hit = -1;
        for (std::size_t k = 0; k < canon.size() && hit < 0; ++k)
          if (canon[k].kappa == c.kappa && canon[k].alpha == c.alpha) hit = static_cast<int>(k);
        if (hit < 0) return;
        rel.group_of_row.push_back(hit);
      }
      out.push_back(std::move(rel));
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (i == n) {
        record();
        return;
      }
      const int table_line = rows[0].kappa[i];
      for (std::size_t v = 0; v < n; ++v) {
        if (plane_used[v] || is_a(pinned.alpha[v]) != is_a(rows[0].alpha[i])) continue;
        const int ours = pinned.kappa[v];
        const int before = line[table_line];
        if (before >= 0 ? before != ours : line_used[ours]) continue;
        plane[i] = static_cast<int>(v);
        plane_used[v] = true;
        line[table_line] = ours;
        line_used[ours] = true;
        if (consistent()) dfs(i + 1);
        plane[i] = -1;
        plane_used[v] = false;
        if (before < 0) {
          line[table_line] = -1;
          line_used[ours] = false;
        }
      }
    };
    dfs(0);
  }
  return out;
}

}  // namespace hbc::fixtures

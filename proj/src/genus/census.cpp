#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hbc/genus.hpp"
#include "hbc/tree.hpp"

namespace hbc::genus {

namespace {

using Key = std::vector<std::uint64_t>;

Key key_of(const Subgroup& s) {
  Key k;
  for (const auto& e : s.igs()) k.push_back(s.group().index(e));
  return k;
}

// a after b.
Images compose_images(const PcPresentation& g, const Images& a, const Images& b) {
  const auto all = extend_images(g, a);
  Images r;
  for (const auto& x : b) r.push_back(apply_images(g, all, x));
  return r;
}

Subgroup image_of(GroupPtr g, const Subgroup& s, const std::vector<Element>& all) {
  std::vector<Element> gens;
  for (const auto& e : s.igs()) gens.push_back(apply_images(*g, all, e));
  return Subgroup::generated(g, gens);
}

bool is_transvection(const f3::Matrix& m) {
  f3::Matrix n = m;
  for (int i = 0; i < m.rows; ++i) n.set(i, i, (m.get(i, i) + 2) % 3);
  if (f3::rank(n.r, m.cols) != 1) return false;
  const f3::Matrix n2 = n * n;
  for (const auto& r : n2.r)
    if (!r.is_zero()) return false;
  return true;
}

std::optional<Images> find_sigma(const PcPresentation& g, const AutGroup& aut, std::uint64_t seed) {
  const int d = g.d();
  std::mt19937_64 rng(seed);
  std::vector<Images> pool = aut.gens;
  while (pool.size() < 10) pool.push_back(aut.gens[pool.size() % aut.gens.size()]);
  for (int it = 0; it < 40000; ++it) {
    const std::size_t a = rng() % pool.size(), b = rng() % pool.size();
    if (a == b) continue;
    pool[a] = compose_images(g, pool[a], pool[b]);
    if (!is_transvection(induced_matrix(g, pool[a]))) continue;
    const Images cube = compose_images(g, pool[a], compose_images(g, pool[a], pool[a]));
    bool identity = true;
    for (int k = 0; k < d; ++k) identity = identity && cube[k] == Element::gen(k);
    if (identity) return pool[a];
  }
  return std::nullopt;
}

struct OrbitInfo {
  std::vector<Subgroup> members;
  int appearances = 0;
  bool abelian_closure = false;
  std::uint64_t closure_order = 0;
};

// Orbits of subgroups (with multiplicity counts) under the given actions.
std::vector<OrbitInfo> orbits(GroupPtr g, const std::vector<Subgroup>& subs, const std::vector<std::vector<Element>>& acts,
                              const Images& sigma) {
  std::map<Key, int> orbit_of;
  std::vector<OrbitInfo> out;
  for (const auto& s : subs) {
    const Key k = key_of(s);
    auto it = orbit_of.find(k);
    if (it != orbit_of.end()) {
      ++out[it->second].appearances;
      continue;
    }
    OrbitInfo o;
    o.members.push_back(s);
    orbit_of[k] = static_cast<int>(out.size());
    for (std::size_t x = 0; x < o.members.size(); ++x)
      for (const auto& al : acts) {
        Subgroup t = image_of(g, o.members[x], al);
        if (orbit_of.emplace(key_of(t), static_cast<int>(out.size())).second) o.members.push_back(std::move(t));
      }
    o.appearances = 1;
    out.push_back(std::move(o));
  }
  // Core and the quotient of G x| <sigma> by it.
  const auto sigma_all = extend_images(*g, sigma);
  for (auto& o : out) {
    std::vector<Element> core_elems;
    for (const auto& x : o.members[0].elements()) {
      bool in_all = true;
      for (std::size_t m = 1; m < o.members.size() && in_all; ++m) in_all = o.members[m].contains(x);
      if (in_all) core_elems.push_back(x);
    }
    const Subgroup core = Subgroup::generated(g, core_elems);
    std::uint64_t idx = 1;
    for (int k = core.log_order(); k < g->n(); ++k) idx *= 3;
    o.closure_order = 3 * idx;
    bool ab = true;
    for (int i = 0; i < g->n() && ab; ++i) {
      const Element gi = Element::gen(i);
      for (int j = i + 1; j < g->n() && ab; ++j) ab = core.contains(g->comm(gi, Element::gen(j)));
      ab = ab && core.contains(g->multiply(g->inverse(gi), apply_images(*g, sigma_all, gi)));
    }
    o.abelian_closure = ab;
  }
  return out;
}

void add_row(std::vector<CensusRow>& rows, const CensusRow& r) {
  for (auto& x : rows)
    if (x.bucket == r.bucket && x.kind == r.kind && x.aqi == r.aqi && x.members == r.members &&
        x.closure_order == r.closure_order) {
      x.classes += r.classes;
      x.appearances += r.appearances;
      return;
    }
  rows.push_back(r);
}

void sort_rows(std::vector<CensusRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const CensusRow& a, const CensusRow& b) {
    if (a.bucket != b.bucket) return a.bucket < b.bucket;
    return a.closure_order < b.closure_order;
  });
}

std::string sums_text(const std::vector<CensusRow>& rows, bool reps) {
  std::map<int, int> per;
  for (const auto& r : rows) per[r.bucket] += reps ? r.classes : r.appearances;
  std::string s;
  int total = 0;
  for (const auto& [b, v] : per) {
    if (v == 0) continue;
    s += (s.empty() ? "" : "+") + std::to_string(v);
    total += v;
  }
  return s + "=" + std::to_string(total);
}

}  // namespace

int LayerCensus::representatives() const {
  int n = 0;
  for (const auto& r : rows) n += r.classes;
  return n;
}

int LayerCensus::total() const {
  int n = 0;
  for (const auto& r : rows) n += r.appearances;
  return n;
}

std::string LayerCensus::representatives_text() const { return sums_text(rows, true); }
std::string LayerCensus::total_text() const { return sums_text(rows, false); }

std::optional<GroupCensus> field_census(GroupPtr g0, const AutGroup& aut, std::uint64_t seed) {
  GroupPtr g = aut.group ? aut.group : g0;
  const auto sigma = find_sigma(*g, aut, seed);
  if (!sigma) return std::nullopt;
  const int d = g->d();
  std::vector<std::vector<Element>> acts;
  for (int i = 0; i < d; ++i) {
    Images im;
    for (int k = 0; k < d; ++k) im.push_back(g->conj(Element::gen(k), Element::gen(i)));
    acts.push_back(extend_images(*g, im));
  }
  acts.push_back(extend_images(*g, *sigma));

  GroupCensus out;
  out.sigma_action = induced_matrix(*g, *sigma);

  const auto maxes = maximal_subgroups(g);
  for (const auto& o : orbits(g, maxes, acts, *sigma)) {
    CensusRow r;
    const Partition aqi = abelian_invariants(o.members[0]);
    r.aqi = partition_shorthand(aqi);
    r.kind = o.members.size() == 1 ? (o.abelian_closure ? "abelian" : "Galois") : "non-Galois";
    r.bucket = (aqi.size() >= 3 ? 0 : 2) + (o.members.size() == 1 ? 0 : 1);
    r.classes = 1;
    r.members = static_cast<int>(o.members.size());
    r.appearances = o.appearances;
    r.closure_order = o.closure_order;
    add_row(out.layer1.rows, r);
  }
  std::vector<Subgroup> second;
  for (const auto& m : maxes)
    for (auto& h : maximal_subgroups_of(m)) second.push_back(std::move(h));
  for (const auto& o : orbits(g, second, acts, *sigma)) {
    CensusRow r;
    r.kind = o.members.size() == 1 ? (o.abelian_closure ? "abelian" : "Galois") : "non-Galois";
    r.bucket = o.members.size() == 1 ? (o.abelian_closure ? 0 : 1) : 2;
    r.classes = 1;
    r.members = static_cast<int>(o.members.size());
    r.appearances = o.appearances;
    r.closure_order = o.closure_order;
    add_row(out.layer2.rows, r);
  }
  sort_rows(out.layer1.rows);
  sort_rows(out.layer2.rows);
  return out;
}

RankDistribution parse_scenario(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')') s += ch;
  int r3 = -1, r2 = -1;
  if (std::sscanf(s.c_str(), "3^%d,2^%d", &r3, &r2) != 2) {
    if (s == "1" || s == "2" || s == "3") {
      const int k = s[0] - '0';
      r3 = 3 * k - 2;
      r2 = 13 - r3;
    }
  }
  RankDistribution r;
  r.rank3 = r3;
  r.rank2 = r2;
  if (r3 + r2 == 13 && (r3 == 1 || r3 == 4 || r3 == 7)) r.scenario = (r3 + 2) / 3;
  if (r.scenario == 0) throw InputError("unknown scenario '" + s0 + "' (expected 3^1,2^12 or 3^4,2^9 or 3^7,2^6)");
  return r;
}

CensusRecord census(const RankDistribution& scenario, std::uint64_t seed) {
  if (scenario.scenario == 0) throw InputError("unknown scenario " + scenario.label());
  auto root = std::make_shared<const PcPresentation>(PcPresentation::elementary_abelian(3));
  const auto ctx = make_parent_context(aut_group(root));
  for (const auto& kid : immediate_descendants(ctx, 3)) {
    if (!kid.elementary_abelianization) continue;
    const auto pattern = artin_pattern(kid.group);
    if (!is_hbc(pattern)) continue;
    if (rank_distribution(pattern.alpha).scenario != scenario.scenario) continue;
    const GroupPtr g = standard_form(kid.group);
    const auto fc = field_census(g, aut_group(g), seed);
    if (!fc) continue;
    CensusRecord rec;
    rec.scenario = rank_distribution(pattern.alpha);
    rec.group = fingerprint(g).digest();
    rec.relative_id = "#3;" + std::to_string(kid.orbit_index);
    rec.sum_nj = second_order_total(second_order_pattern(g));
    rec.layer1 = fc->layer1;
    rec.layer2 = fc->layer2;
    return rec;
  }
  throw std::runtime_error("no order 3^6 group with an order-3 transvection automorphism realizes " + scenario.label());
}

}  // namespace hbc::genus

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "hbc/fixtures.hpp"
#include "hbc/tree.hpp"
#include "oracles.hpp"

using namespace hbc;

namespace {

GroupPtr ptr(const PcPresentation& g) { return std::make_shared<const PcPresentation>(g); }

Element random_element(const PcPresentation& g, std::mt19937_64& rng) {
  Element x;
  for (int k = 0; k < g.n(); ++k) x.e[k] = static_cast<std::uint8_t>(rng() % 3);
  return x;
}

struct Ancestor {
  GroupPtr group;
  int orbit_index = 0;
  ArtinPattern pattern;
};

// The order 3^6 descendants of the elementary abelian root of rank 3 with
// harmonically balanced capitulation.
const std::vector<Ancestor>& ancestors() {
  static const std::vector<Ancestor> out = [] {
    std::vector<Ancestor> v;
    const auto root = ptr(PcPresentation::elementary_abelian(3));
    const auto pc = make_parent_context(aut_group(root));
    for (const auto& kid : immediate_descendants(pc, 3)) {
      if (!kid.elementary_abelianization) continue;
      const GroupPtr g = standard_form(kid.group);
      const auto p = artin_pattern(g, true);
      if (is_hbc(p)) v.push_back({g, kid.orbit_index, p});
    }
    return v;
  }();
  return out;
}

std::vector<GroupPtr> small_groups() {
  std::vector<GroupPtr> out;
  for (const auto& r : {oracle::heisenberg27(), oracle::extraspecial27_exp9(), oracle::wreath81(),
                        oracle::unitriangular4(), oracle::abelian_9_3_3(), oracle::wreath81_times_c3()})
    out.push_back(standard_form(ptr(r.pres)));
  for (const auto& a : ancestors()) out.push_back(a.group);
  return out;
}

bool congruent_mod_derived(const Subgroup& m, const Subgroup& md, const Element& a, const Element& b) {
  const auto& G = m.group();
  return md.contains(G.multiply(G.inverse(a), b));
}

oracle::ConcreteGroup concrete(GroupPtr g) {
  const int n = g->n();
  auto to_el = [n](const oracle::Vec& v) {
    Element x;
    for (int k = 0; k < n; ++k) x.e[k] = static_cast<std::uint8_t>(v[k]);
    return x;
  };
  return {[g, n, to_el](const oracle::Vec& a, const oracle::Vec& b) {
            const Element p = g->multiply(to_el(a), to_el(b));
            return oracle::Vec(p.e.begin(), p.e.begin() + n);
          },
          oracle::Vec(n, 0)};
}

// Another polycyclic generating sequence of g: each a_k is multiplied by a
// random element of <a_{k+1}, ..., a_n>, which keeps the series.
PcPresentation rewritten(GroupPtr g, std::mt19937_64& rng) {
  const int n = g->n();
  std::vector<oracle::Vec> seq;
  for (int k = 0; k < n; ++k) {
    Element z;
    for (int j = k + 1; j < n; ++j) z.e[j] = static_cast<std::uint8_t>(rng() % 3);
    const Element b = g->multiply(Element::gen(k, 1 + static_cast<int>(rng() % 2)), z);
    seq.emplace_back(b.e.begin(), b.e.begin() + n);
  }
  return oracle::realize(concrete(g), seq, g->weights()).pres;
}

ArtinPattern random_pattern(std::mt19937_64& rng) {
  ArtinPattern p;
  p.d = 3;
  for (int j = 0; j < 13; ++j) {
    p.kappa.push_back(static_cast<int>(rng() % 14));
    p.alpha.push_back(rng() % 2 ? Partition{2, 1, 1} : Partition{2, 2});
    p.taussky.push_back(rng() % 2 ? 'A' : 'B');
  }
  return p;
}

}  // namespace

TEST_CASE("transfer agrees with the closed formula for normal subgroups of index 3") {
  std::mt19937_64 rng(3101);
  int cases = 0;
  for (const auto& g : small_groups()) {
    const auto maxes = maximal_subgroups(g);
    for (const auto& m : maxes) {
      const Subgroup md = derived_subgroup(m);
      Element t;
      do t = random_element(*g, rng);
      while (m.contains(t));
      for (int s = 0; s < 6; ++s) {
        const Element x = random_element(*g, rng);
        // x = y t^k with y in M; V(y) = y y^t y^(t^2) and V(t) = t^3.
        int k = 0;
        Element y = x;
        while (!m.contains(y)) {
          y = g->multiply(y, g->inverse(t));
          ++k;
        }
        const Element vy = g->multiply(g->multiply(y, g->conj(y, t)), g->conj(y, g->pow(t, 2)));
        const Element expected = g->multiply(vy, g->pow(g->pow(t, 3), k));
        CHECK(congruent_mod_derived(m, md, transfer(m, x, default_transversal(m)), expected));
        ++cases;
      }
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("transfer does not depend on the transversal") {
  std::mt19937_64 rng(3102);
  int cases = 0;
  for (const auto& g : small_groups()) {
    for (const auto& m : maximal_subgroups(g)) {
      const Subgroup md = derived_subgroup(m);
      const auto base = default_transversal(m);
      for (int s = 0; s < 8; ++s) {
        std::vector<Element> other;
        for (const auto& r : base) {
          Element z;
          do z = random_element(*g, rng);
          while (!m.contains(z));
          other.push_back(g->multiply(z, r));
        }
        std::shuffle(other.begin(), other.end(), rng);
        const Element x = random_element(*g, rng);
        CHECK(congruent_mod_derived(m, md, transfer(m, x, base), transfer(m, x, other)));
        ++cases;
      }
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("canonical patterns are idempotent and constant on orbits") {
  std::mt19937_64 rng(3103);
  const auto gl = general_linear_elements(3);
  CHECK(gl.size() == gl_order(3));
  std::vector<ArtinPattern> patterns;
  for (const auto& a : ancestors()) patterns.push_back(artin_pattern(a.group));
  for (int i = 0; i < 60; ++i) patterns.push_back(random_pattern(rng));
  int cases = 0;
  for (const auto& p : patterns) {
    const auto c = canonical_pattern(p);
    CHECK(canonical_pattern(c) == c);
    for (int s = 0; s < 3; ++s) {
      const auto& g = gl[rng() % gl.size()];
      CHECK(canonical_pattern(relabel(p, g)) == c);
      ++cases;
    }
  }
  CHECK(cases >= 100);

  const auto gl2 = general_linear_elements(2);
  CHECK(gl2.size() == 48);
  for (const auto& r : {oracle::heisenberg27(), oracle::wreath81(), oracle::extraspecial27_exp9()}) {
    const auto p = artin_pattern(standard_form(ptr(r.pres)));
    const auto c = canonical_pattern(p);
    for (const auto& g : gl2) CHECK(canonical_pattern(relabel(p, g)) == c);
  }
}

TEST_CASE("six ancestors with harmonically balanced capitulation") {
  const auto& a = ancestors();
  REQUIRE(a.size() == 6);
  std::multiset<int> ranks;
  for (const auto& x : a) ranks.insert(rank_distribution(x.pattern.alpha).rank3);
  CHECK(ranks == std::multiset<int>{1, 4, 4, 4, 4, 7});
  const auto& nv = normal_vectors(3);
  for (const auto& x : a) {
    const auto& p = x.pattern;
    REQUIRE(p.kappa.size() == 13);
    std::set<int> image(p.kappa.begin(), p.kappa.end());
    CHECK(image.size() == 13);
    for (int j = 0; j < 13; ++j) {
      // Taussky A iff the kernel line lies in M_j; AQI (211) iff A.
      const bool inside = f3::dot(nv[j], nv[p.kappa[j] - 1]) == 0;
      CHECK((p.taussky[j] == 'A') == inside);
      CHECK((p.alpha[j] == Partition{2, 1, 1}) == (p.taussky[j] == 'A'));
      CHECK((p.alpha[j] == Partition{2, 2} || p.alpha[j] == Partition{2, 1, 1}));
    }
  }
  const auto r = rank_distribution(a[0].pattern.alpha);
  CHECK(r.rank3 + r.rank2 == 13);
  CHECK(rank_distribution(std::vector<Partition>(13, Partition{2, 2})).scenario == 0);
}

TEST_CASE("ancestor fixture rows are realized under one numbering of planes and lines") {
  std::vector<ArtinPattern> patterns;
  for (const auto& a : ancestors()) patterns.push_back(a.pattern);
  const auto rows = fixtures::load_table1();
  REQUIRE(rows.size() == 6);
  const auto rel = fixtures::table1_relabelings(rows, patterns);
  REQUIRE(!rel.empty());
  for (const auto& r : rel) {
    std::set<int> used(r.group_of_row.begin(), r.group_of_row.end());
    CHECK(used.size() == 6);
    for (std::size_t i = 0; i < rows.size(); ++i)
      CHECK(rank_distribution(patterns[r.group_of_row[i]].alpha).scenario == rows[i].rho.scenario);
  }
}

TEST_CASE("second order patterns: parse, format and fixture identification") {
  CHECK(parse_partition("21^2") == Partition{2, 1, 1});
  CHECK(parse_partition("211") == Partition{2, 1, 1});
  CHECK(parse_partition("2^2") == Partition{2, 2});
  CHECK(partition_shorthand({3, 1, 1}) == "31^2");
  CHECK_THROWS_AS(parse_partition("2x"), InputError);
  CHECK_THROWS_AS(parse_alpha2("[(21^2);(21^2)^4"), InputError);
  CHECK_THROWS_AS(parse_alpha2("(21^2)"), InputError);

  const auto rows = fixtures::load_table2();
  CHECK(rows.size() == 28);
  for (const auto& r : rows) {
    auto a = r.alpha2;
    CHECK(a.size() == 13);
    auto b = parse_alpha2(format_alpha2(a));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    for (const auto& e : a) CHECK(e.below.size() == (e.top.size() == 3 ? 13u : 4u));
  }

  std::map<std::string, int> labels;
  for (const auto& x : ancestors()) {
    const auto fp = fingerprint(x.group);
    REQUIRE(fp.pattern);
    REQUIRE(fp.pattern->alpha2);
    CHECK(second_order_total(*fp.pattern->alpha2) == 61 + 27 * (rank_distribution(x.pattern.alpha).rank3 - 1) / 3);
    auto a = *fp.pattern->alpha2;
    auto b = parse_alpha2(format_alpha2(a));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);

    // Descendant counts separate the groups sharing mu, nu and alpha2.
    const auto pc = make_parent_context(aut_group(x.group));
    std::vector<std::pair<int, int>> counts;
    for (int s = 1; s <= fp.nu; ++s) {
      const auto kids = immediate_descendants(pc, s);
      int capable = 0;
      for (const auto& k : kids) capable += p_cover(standard_form(k.group)).nu > 0;
      counts.emplace_back(static_cast<int>(kids.size()), capable);
    }
    const auto m = fixtures::match_fixture(fp, &counts);
    REQUIRE(m);
    CHECK_FALSE(m->ambiguous);
    ++labels[m->label];
    const auto loose = fixtures::match_fixture(fp);
    REQUIRE(loose);
    CHECK(std::find(loose->candidates.begin(), loose->candidates.end(), m->label) != loose->candidates.end());
    if (m->label == "<729,136>") CHECK(rank_distribution(x.pattern.alpha).rank3 == 1);
    if (m->label == "<729,133>") CHECK(rank_distribution(x.pattern.alpha).rank3 == 7);
    if (m->label == "<729,132>") CHECK(fp.mu == 6);
  }
  CHECK(labels.size() == 6);

  const auto root = fixtures::match_fixture(fingerprint(ptr(PcPresentation::elementary_abelian(3))));
  REQUIRE(root);
  CHECK(root->label == "<27,5>");

  // Rows with equal invariants give one ambiguous label.
  Fingerprint fp;
  fp.log_order = 8;
  fp.mu = 3;
  fp.nu = 0;
  fp.pattern = ArtinPattern{};
  for (const auto& r : rows)
    if (r.id == 217713) fp.pattern->alpha2 = r.alpha2;
  const auto m = fixtures::match_fixture(fp);
  REQUIRE(m);
  CHECK(m->ambiguous);
  CHECK(m->label == "<6561,217713|217717>");
  for (const auto& r : rows)
    if (r.id == 217710) fp.pattern->alpha2 = r.alpha2;
  CHECK(fixtures::match_fixture(fp)->label == "<6561,217710>");
  CHECK_FALSE(fixtures::match_fixture(fp)->ambiguous);
}

TEST_CASE("fingerprints are isomorphism invariants") {
  std::mt19937_64 rng(3104);
  const auto root = ptr(PcPresentation::elementary_abelian(2));
  TreeOptions opt;
  opt.max_log_order = 5;
  opt.keep = [](const Descendant&) { return true; };
  const auto tree = grow_tree(root, opt);
  std::vector<GroupPtr> groups;
  for (const auto& n : tree.nodes)
    if (n.log_order >= 3) groups.push_back(standard_form(n.group));
  REQUIRE(groups.size() > 20);
  std::vector<Fingerprint> fps;
  for (const auto& g : groups) fps.push_back(fingerprint(g));

  int copies = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto copy = standardize(rewritten(groups[i], rng));
    REQUIRE(copy.consistency_check().empty());
    CHECK(oracle::brute_force_isomorphic(copy, *groups[i]));
    CHECK(fingerprint(ptr(copy)) == fps[i]);
    ++copies;
  }
  CHECK(copies == static_cast<int>(groups.size()));

  // Distinct fingerprints never belong to isomorphic groups.
  int distinct = 0;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size() && distinct < 150; ++j) {
      if (groups[i]->n() != groups[j]->n() || fps[i] == fps[j]) continue;
      CHECK_FALSE(oracle::brute_force_isomorphic(*groups[i], *groups[j]));
      ++distinct;
    }
  CHECK(distinct > 50);
}

TEST_CASE("capitulation type G.16 in the (3,3) tree") {
  CHECK(is_g16({0, 1, 3, 2}));
  CHECK(is_g16({2, 1, 0, 3}));
  CHECK_FALSE(is_g16({0, 1, 2, 3}));
  CHECK_FALSE(is_g16({1, 0, 3, 2}));
  CHECK_FALSE(is_g16({0, 1, 3, -1}));

  const auto found = g16_tower_groups(6);
  REQUIRE(found.size() == 1);
  const auto& t = found[0];
  CHECK(is_g16(t.permutation));
  CHECK(t.fingerprint.log_order == 6);
  CHECK(t.fingerprint.coclass == 2);
  CHECK(t.fingerprint.d1 == 2);
  // The relation rank of this group is 3.
  CHECK(t.fingerprint.mu == 3);
  CHECK(t.fingerprint.derived_length == 2);
  CHECK(g16_tower_groups(5).empty());
}

TEST_CASE("fixture rows differing in one second order entry") {
  const auto rows = fixtures::load_table2();
  Fingerprint fp;
  fp.log_order = 8;
  fp.mu = 3;
  fp.nu = 0;
  fp.pattern = ArtinPattern{};
  for (const auto& r : rows)
    if (r.id == 217710) fp.pattern->alpha2 = r.alpha2;
  auto& a2 = *fp.pattern->alpha2;
  std::sort(a2.begin(), a2.end());
  CHECK(fixtures::match_fixture(fp)->substitutions == 0);

  // One maximal subgroup with different invariants below it.
  auto it = std::find_if(a2.begin(), a2.end(), [](const SecondOrderEntry& e) { return e.top == Partition{2, 2}; });
  REQUIRE(it != a2.end());
  it->below.assign(4, Partition{2, 2, 1});
  const auto near = fixtures::match_fixture(fp);
  REQUIRE(near);
  CHECK(near->substitutions == 1);
  CHECK(near->label == "<6561,217710>");

  // Two substitutions are not accepted.
  auto jt = std::find_if(it + 1, a2.end(), [](const SecondOrderEntry& e) { return e.top == Partition{2, 2}; });
  REQUIRE(jt != a2.end());
  jt->below.assign(4, Partition{3, 3});
  CHECK_FALSE(fixtures::match_fixture(fp));

  fp.mu = 4;
  CHECK_FALSE(fixtures::match_fixture(fp));
}

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "hbc/fixtures.hpp"
#include "hbc/genus.hpp"

using namespace hbc;
using namespace hbc::genus;

namespace {

bool prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long long> components_below(long long bound) {
  std::vector<long long> out{9};
  for (long long q = 7; q < bound; q += 6)
    if (prime(q)) out.push_back(q);
  return out;
}

// Discrete logarithms modulo q (prime, or 9 with base 2), by enumeration.
struct DlogTable {
  long long q = 0, base = 0;
  std::map<long long, long long> log;
};

DlogTable dlog_table(long long q) {
  DlogTable t;
  t.q = q;
  const long long order = q == 9 ? 6 : q - 1;
  for (long long g = 2;; ++g) {
    std::map<long long, long long> log;
    long long x = 1;
    for (long long k = 0; k < order; ++k, x = x * g % q) log.emplace(x, k);
    if (static_cast<long long>(log.size()) == order) {
      t.base = g;
      t.log = std::move(log);
      return t;
    }
  }
}

const DlogTable& dlog(long long q) {
  static std::map<long long, DlogTable> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, dlog_table(q)).first;
  return it->second;
}

int chi(long long q, long long x) { return static_cast<int>(dlog(q).log.at(((x % q) + q) % q) % 3); }

int chi_line(const ConductorTriple& t, const f3::Row& v, long long x) {
  int s = 0;
  for (int i = 0; i < 3; ++i)
    if (v.get(i)) s += v.get(i) * chi(t.q[i], x);
  return s % 3;
}

bool cube_mod(long long a, long long b) {
  if (b == 9) return ((a % 9) + 9) % 9 == 1 || ((a % 9) + 9) % 9 == 8;
  for (long long x = 1; x < b; ++x)
    if (x * x % b * x % b == a % b) return true;
  return false;
}

ConductorTriple random_triple(std::mt19937_64& rng, const std::vector<long long>& comps) {
  for (;;) {
    const long long a = comps[rng() % comps.size()], b = comps[rng() % comps.size()], c = comps[rng() % comps.size()];
    if (a != b && a != c && b != c) return make_triple(a, b, c);
  }
}

// Monic cubic with the given roots, coefficients rounded.
std::array<long long, 3> cubic_from_roots(const std::array<double, 3>& r) {
  const double e1 = r[0] + r[1] + r[2], e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2], e3 = r[0] * r[1] * r[2];
  return {std::llround(-e3), std::llround(e2), std::llround(-e1)};
}

// Gaussian periods of the cubic character of prime (power) conductor q.
std::array<long long, 3> period_polynomial(long long q) {
  const double pi = std::acos(-1.0);
  std::array<double, 3> eta{};
  for (long long x = 1; x < q; ++x) {
    if (std::gcd(x, q) != 1) continue;
    eta[chi(q, x)] += std::cos(2 * pi * static_cast<double>(x) / static_cast<double>(q));
  }
  return cubic_from_roots(eta);
}

std::array<long long, 3> as_ll(const Cubic& f) {
  return {static_cast<long long>(f.c[0]), static_cast<long long>(f.c[1]), static_cast<long long>(f.c[2])};
}

int roots_mod(const Cubic& f, long long p) {
  const auto c = as_ll(f);
  int n = 0;
  for (long long x = 0; x < p; ++x) {
    const long long m0 = ((c[0] % p) + p) % p, m1 = ((c[1] % p) + p) % p, m2 = ((c[2] % p) + p) % p;
    const long long v = ((x * x % p * x % p) + m2 * (x * x % p) % p + m1 * x % p + m0) % p;
    n += v == 0;
  }
  return n;
}

// A cyclic cubic field is determined by its split primes: f has three roots
// mod p when the character vanishes at p and none otherwise.
void check_split_primes(const Cubic& f, const std::vector<long long>& comps, const std::vector<int>& exps) {
  const eis::Int disc = f.discriminant();
  int checked = 0;
  for (long long p = 5; p < 1500; ++p) {
    if (!prime(p) || disc % p == 0) continue;
    int s = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) s += exps[i] * chi(comps[i], p);
    CHECK(roots_mod(f, p) == (s % 3 == 0 ? 3 : 0));
    ++checked;
  }
  CHECK(checked > 100);
}

const std::vector<fixtures::Table3Row>& table3() {
  static const auto rows = fixtures::load_table3();
  return rows;
}

}  // namespace

TEST_CASE("cubic characters agree with enumerated discrete logarithms") {
  for (long long q : components_below(400)) {
    if (q != 9) CHECK(least_primitive_root(q) == dlog(q).base);
    for (long long x = 1; x < 3 * q; ++x) {
      if (std::gcd(x, q) != 1) continue;
      CHECK(character_value(q, x) == chi(q, x));
    }
  }
  CHECK_THROWS_AS(character_value(5, 2), InputError);
  CHECK_THROWS_AS(character_value(7, 14), InputError);
  CHECK_THROWS_AS(character_value(9, 6), InputError);
}

TEST_CASE("arrows are cubic residuacity") {
  const auto comps = components_below(300);
  for (long long a : comps)
    for (long long b : comps) {
      if (a == b) continue;
      CHECK(arrow(a, b) == cube_mod(a, b));
    }
}

TEST_CASE("classification of conductor triples") {
  const auto g = classify_graph(triple_of_conductor(689347));
  CHECK(g.triple.factors() == "31*37*601");
  CHECK(g.cat1_graph2);
  CHECK(g.centre == 31);
  CHECK(g.trivial == 2);
  CHECK(g.arrow_text() == "31->37 31->601");

  const auto g9 = classify_graph(triple_of_conductor(59031));
  CHECK(g9.cat1_graph2);
  CHECK(triple_of_conductor(59031).factors() == "3^2*7*937");

  CHECK_THROWS_AS(triple_of_conductor(7 * 13), InputError);
  CHECK_THROWS_AS(triple_of_conductor(5 * 7 * 13), InputError);
  CHECK_THROWS_AS(triple_of_conductor(27 * 7 * 13), InputError);
  CHECK_THROWS_AS(make_triple(7, 7, 13), InputError);

  // Graph 2: exactly two trivial symbols, both issuing from the centre.
  std::mt19937_64 rng(2201);
  const auto comps = components_below(500);
  int graph2 = 0, others = 0;
  for (int n = 0; n < 400; ++n) {
    const auto t = random_triple(rng, comps);
    const auto c = classify_graph(t);
    int trivial = 0;
    std::map<long long, int> out;
    for (long long a : t.q)
      for (long long b : t.q)
        if (a != b && cube_mod(a, b)) {
          ++trivial;
          ++out[a];
        }
    const bool expect = trivial == 2 && out.size() == 1 && out.begin()->second == 2;
    CHECK(c.trivial == trivial);
    CHECK(c.cat1_graph2 == expect);
    if (expect) {
      ++graph2;
      CHECK(c.triple.q[0] == out.begin()->first);
      CHECK((c.triple.q[1] == 9 || (c.triple.q[2] != 9 && c.triple.q[1] < c.triple.q[2])));
    } else {
      ++others;
    }
    // The orientation does not depend on the input order.
    auto p = t.q;
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(classify_graph(make_triple(p[0], p[1], p[2])).triple == c.triple);
  }
  CHECK(graph2 > 0);
  CHECK(others > 0);
}

TEST_CASE("conductor fixture loads and every conductor is of graph 2") {
  const auto& rows = table3();
  REQUIRE(rows.size() == 41);
  CHECK(fixtures::validate_table3(rows).empty());
  for (const auto& r : rows) {
    long long product = 1;
    for (long long q : r.components) {
      product *= q;
      CHECK((q == 9 || (prime(q) && q % 3 == 1)));
    }
    CHECK(product == r.c);
    CHECK(classify_graph(triple_of_conductor(r.c)).cat1_graph2);
  }
  CHECK(rows[24].c == 689347);
  CHECK(rows[24].factors == "31*37*601");

  auto broken = rows;
  broken[0].components = {9, 7, 941};
  broken[1].c += 1;
  broken[2].components = {9, 7, 13};
  broken[2].c = 819;
  const auto problems = fixtures::validate_table3(broken);
  std::set<int> bad;
  for (const auto& p : problems) bad.insert(p.no);
  CHECK(bad.count(rows[0].no) == 1);
  CHECK(bad.count(rows[1].no) == 1);
  CHECK(bad.count(rows[2].no) == (classify_graph(make_triple(9, 7, 13)).cat1_graph2 ? 0 : 1));
}

TEST_CASE("genus lattice laws on random triples") {
  // Four lines per plane, listed as in the composita of the doublets.
  const std::map<std::string, std::vector<std::string>> planes = {
      {"B1", {"K1", "k_q1q2", "k_q1q3", "k_q2q3"}},    {"B2", {"K2", "k_q1q2", "~k_q1q3", "~k_q2q3"}},
      {"B3", {"K3", "~k_q1q2", "~k_q1q3", "k_q2q3"}},  {"B4", {"K4", "~k_q1q2", "k_q1q3", "~k_q2q3"}},
      {"B5", {"K1", "K3", "k_q1", "~k_q2q3"}},         {"B6", {"K1", "K4", "k_q2", "~k_q1q3"}},
      {"B7", {"K1", "K2", "k_q3", "~k_q1q2"}},         {"B8", {"K2", "K4", "k_q1", "k_q2q3"}},
      {"B9", {"K2", "K3", "k_q2", "k_q1q3"}},          {"B10", {"K3", "K4", "k_q3", "k_q1q2"}},
      {"B11", {"k_q1", "k_q2", "k_q1q2", "~k_q1q2"}}, {"B12", {"k_q1", "k_q3", "k_q1q3", "~k_q1q3"}},
      {"B13", {"k_q2", "k_q3", "k_q2q3", "~k_q2q3"}}};
  const std::map<std::string, std::vector<std::string>> assignment = {{"K1", {"B1", "B5", "B6", "B7"}},
                                                                      {"K2", {"B2", "B7", "B8", "B9"}},
                                                                      {"K3", {"B3", "B5", "B9", "B10"}},
                                                                      {"K4", {"B4", "B6", "B8", "B10"}}};
  std::mt19937_64 rng(2202);
  const auto comps = components_below(2000);
  const auto norms = normalizations();
  for (int n = 0; n < 200; ++n) {
    const auto t = random_triple(rng, comps);
    const auto lat = build_lattice(t, norms[rng() % norms.size()]);
    REQUIRE(lat.lines.size() == 13);
    REQUIRE(lat.planes.size() == 13);

    std::set<std::string> directions;
    for (const auto& l : lat.lines) directions.insert(std::to_string(l.v.get(0)) + std::to_string(l.v.get(1)) + std::to_string(l.v.get(2)));
    CHECK(directions.size() == 13);

    std::vector<int> planes_per_line(13, 0);
    for (std::size_t p = 0; p < 13; ++p) {
      int on = 0;
      for (int l = 0; l < 13; ++l)
        if (lat.contains(static_cast<int>(p), l)) {
          ++on;
          ++planes_per_line[l];
        }
      CHECK(on == 4);
    }
    for (int k : planes_per_line) CHECK(k == 4);

    for (const auto& [plane, members] : planes) {
      const int p = lat.plane(plane);
      std::set<int> expected, actual(lat.planes[p].lines.begin(), lat.planes[p].lines.end());
      for (const auto& m : members) expected.insert(lat.line(m));
      CHECK_MESSAGE(expected == actual, plane);
    }
    CHECK(unramified_assignment(lat) == assignment);
    CHECK(lat.degree_L() == 9);
    CHECK(lat.degree_L_tilde() == 27);
    CHECK(lat.degree_L() * lat.degree_L_tilde() == 243);

    const long long c = t.conductor();
    for (const char* k : {"K1", "K2", "K3", "K4"}) CHECK(lat.lines[lat.line(k)].conductor == c);
    CHECK(lat.lines[lat.line("k_q1")].conductor == t.q[0]);
    CHECK(lat.lines[lat.line("~k_q2q3")].conductor == t.q[1] * t.q[2]);

    // Splitting agrees with the enumerated characters.
    for (int s = 0; s < 5; ++s) {
      long long p;
      do p = 5 + static_cast<long long>(rng() % 5000);
      while (!prime(p) || c % p == 0);
      const int l = static_cast<int>(rng() % 13);
      CHECK(splits(lat, l, p) == (chi_line(t, lat.lines[l].v, p) == 0));
    }
  }
}

TEST_CASE("adapted normalization of graph-2 triples") {
  for (const auto& r : table3()) {
    const auto g = classify_graph(triple_of_conductor(r.c));
    const auto& t = g.triple;
    int adapted = 0;
    for (const auto& n : normalizations()) {
      const auto lat = build_lattice(t, n);
      const bool ok = chi_line(t, lat.lines[lat.line("k_q1q3")].v, t.q[1]) == 0 &&
                      chi_line(t, lat.lines[lat.line("k_q1q2")].v, t.q[2]) == 0;
      adapted += ok;
      CHECK(ok == (n == adapted_normalization(t)));
    }
    CHECK(adapted == 1);
    CHECK(build_lattice(triple_of_conductor(r.c)).norm == adapted_normalization(t));
  }
}

TEST_CASE("capitulation kernels and norm classes") {
  const auto rep = predict_capitulation(triple_of_conductor(689347));
  REQUIRE(rep.predicted);
  CHECK(rep.g16_signature);
  CHECK(rep.tkt_label == "G.16 (1243)");
  CHECK(rep.rank3_member == "K1");
  CHECK(rep.parry_invariant == 31);
  CHECK(rep.q2_splits_in_k13);
  CHECK(rep.q3_splits_in_k12);
  REQUIRE(rep.fields.size() == 3);

  const std::map<std::string, std::vector<std::pair<std::string, std::string>>> kernels = {
      {"K2", {{"B2", "[QR^2]"}, {"B7", "[R]"}, {"B8", "[QR]"}, {"B9", "[Q]"}}},
      {"K3", {{"B3", "[QR]"}, {"B5", "[QR^2]"}, {"B9", "[Q]"}, {"B10", "[R]"}}},
      {"K4", {{"B4", "[QR^2]"}, {"B6", "[Q]"}, {"B8", "[QR]"}, {"B10", "[R]"}}}};
  for (const auto& f : rep.fields) {
    const auto& rows = kernels.at(f.field);
    REQUIRE(f.entries.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(f.entries[i].plane == rows[i].first);
      CHECK(class_text(f.entries[i].kernel) == rows[i].second);
    }
    CHECK(f.fixed_points == 2);
    CHECK(f.transposition);
    // The norm classes permute the kernels.
    std::multiset<std::string> a, b;
    for (const auto& e : f.entries) {
      a.insert(class_text(e.kernel));
      b.insert(class_text(e.norm));
    }
    CHECK(a == b);
  }
  const auto& k2 = rep.fields[0];
  CHECK(class_text(k2.entries[0].norm) == "[R]");
  CHECK(class_text(k2.entries[1].norm) == "[QR^2]");
  CHECK(k2.entries[2].norm == k2.entries[2].kernel);
  CHECK(k2.entries[3].norm == k2.entries[3].kernel);

  for (const auto& r : table3()) {
    const auto p = predict_capitulation(triple_of_conductor(r.c));
    CHECK_MESSAGE(p.g16_signature, r.c);
    CHECK((p.orientation == 1 || p.orientation == 2));
  }
}

TEST_CASE("no prediction outside the hypotheses") {
  std::mt19937_64 rng(2203);
  const auto comps = components_below(600);
  int seen = 0;
  while (seen < 20) {
    const auto t = random_triple(rng, comps);
    if (classify_graph(t).cat1_graph2) continue;
    const auto rep = predict_capitulation(t);
    CHECK_FALSE(rep.predicted);
    CHECK_FALSE(rep.reason.empty());
    ++seen;
  }
  const auto t = classify_graph(triple_of_conductor(689347)).triple;
  const auto adapted = adapted_normalization(t);
  for (const auto& n : normalizations()) {
    if (n == adapted) continue;
    const auto rep = predict_capitulation(t, n);
    CHECK_FALSE(rep.predicted);
    CHECK(rep.reason.find("splitting") != std::string::npos);
  }
}

TEST_CASE("class lines") {
  CHECK(class_text({1, 0}) == "[Q]");
  CHECK(class_text({0, 1}) == "[R]");
  CHECK(class_text({1, 1}) == "[QR]");
  CHECK(class_text({1, 2}) == "[QR^2]");
}

TEST_CASE("defining polynomials of prime (power) conductor") {
  CHECK(defining_polynomial({7}, {1}).poly.to_string() == "x^3 + x^2 - 2*x - 1");
  CHECK(defining_polynomial({9}, {1}).poly.to_string() == "x^3 - 3*x + 1");
  CHECK(defining_polynomial({13}, {1}).poly.to_string() == "x^3 + x^2 - 4*x + 1");
  for (long long q : components_below(200)) {
    const auto r = defining_polynomial({q}, {1});
    CHECK(r.conductor == q);
    CHECK(r.irreducible);
    CHECK(r.cyclic);
    CHECK(r.field_discriminant == eis::Int(q * q));
    CHECK(as_ll(r.poly) == period_polynomial(q));
    const eis::Int root = boost::multiprecision::sqrt(r.poly_discriminant);
    CHECK(root * root == r.poly_discriminant);
    CHECK(r.poly_discriminant % r.field_discriminant == 0);
    check_split_primes(r.poly, {q}, {1});
  }
  CHECK_THROWS_AS(defining_polynomial({11}, {1}), InputError);
}

TEST_CASE("defining polynomials of composite conductor") {
  // Both fields of conductor 63.
  for (int e : {1, 2}) {
    const auto r = defining_polynomial({7, 9}, {1, e});
    CHECK(r.conductor == 63);
    CHECK(r.irreducible);
    CHECK(r.cyclic);
    CHECK(r.field_discriminant == eis::Int(63 * 63));
    check_split_primes(r.poly, {7, 9}, {1, e});
  }
  // The quartet of conductor 819.
  const auto lat = build_lattice(make_triple(9, 7, 13));
  for (const char* k : {"K1", "K2", "K3", "K4"}) {
    const int l = lat.line(k);
    const auto r = line_polynomial(lat, l);
    CHECK(r.conductor == 819);
    CHECK(r.irreducible);
    CHECK(r.cyclic);
    CHECK(r.field_discriminant == eis::Int(819 * 819));
    const auto& v = lat.lines[l].v;
    check_split_primes(r.poly, {9, 7, 13}, {v.get(0), v.get(1), v.get(2)});
  }
}

TEST_CASE("field discriminant removes index divisors") {
  // 3 times a root of x^3 + x^2 - 2x - 1: index 27 in the conductor 7 field.
  const Cubic f{{eis::Int(-27), eis::Int(-18), eis::Int(3)}};
  CHECK(f.discriminant() == eis::Int(729 * 49));
  CHECK(field_discriminant(f) == 49);
}

TEST_CASE("conductor scan against direct enumeration") {
  const long long bound = 250000;
  const auto scan = scan_conductors(bound, 4);
  std::set<long long> found;
  for (const auto& e : scan.candidates) found.insert(e.graph.triple.conductor());

  std::set<long long> expected;
  std::size_t triples = 0;
  const auto comps = components_below(bound / 63 + 1);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j)
      for (std::size_t k = j + 1; k < comps.size(); ++k) {
        const long long c = comps[i] * comps[j] * comps[k];
        if (c > bound) continue;
        ++triples;
        const auto g = classify_graph(make_triple(comps[i], comps[j], comps[k]));
        if (!g.cat1_graph2) continue;
        const auto lat = build_lattice(g.triple);
        const auto& t = g.triple;
        if (chi_line(t, lat.lines[lat.line("k_q1q3")].v, t.q[1]) == 0 &&
            chi_line(t, lat.lines[lat.line("k_q1q2")].v, t.q[2]) == 0)
          expected.insert(c);
      }
  CHECK(scan.triples == triples);
  CHECK(found == expected);
  CHECK(found.count(59031) == 1);
  CHECK(found.count(209853) == 1);
  CHECK(std::is_sorted(scan.candidates.begin(), scan.candidates.end(), [](const ScanEntry& a, const ScanEntry& b) {
    return a.graph.triple.conductor() < b.graph.triple.conductor();
  }));
}

TEST_CASE("conductor scan covers the conductor fixture") {
  const auto scan = scan_conductors(1406551);
  std::set<long long> found;
  for (const auto& e : scan.candidates) found.insert(e.graph.triple.conductor());
  for (const auto& r : table3()) CHECK_MESSAGE(found.count(r.c) == 1, r.c);
  CHECK_THROWS_AS(scan_conductors(100), InputError);
}

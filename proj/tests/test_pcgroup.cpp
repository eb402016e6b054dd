#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hbc/pcgroup.hpp"
#include "oracles.hpp"

using namespace hbc;

namespace {

GroupPtr ptr(const PcPresentation& g) { return std::make_shared<const PcPresentation>(g); }

Element random_element(const PcPresentation& g, std::mt19937_64& rng) {
  Element x;
  for (int k = 0; k < g.n(); ++k) x.e[k] = static_cast<std::uint8_t>(rng() % 3);
  return x;
}

// Compares collection against the concrete realization on all pairs (or a
// pinned random sample for larger groups).
void check_against_realization(const oracle::Realization& r, const oracle::ConcreteGroup& G,
                               int samples = 0) {
  const auto& g = r.pres;
  CHECK(g.consistency_check().empty());
  auto check_pair = [&](const Element& x, const Element& y) {
    const auto lhs = oracle::evaluate(G, r.seq, g.multiply(x, y));
    const auto rhs = G.mul(oracle::evaluate(G, r.seq, x), oracle::evaluate(G, r.seq, y));
    CHECK(lhs == rhs);
  };
  if (samples == 0) {
    for (std::uint64_t a = 0; a < g.order(); ++a)
      for (std::uint64_t b = 0; b < g.order(); ++b) check_pair(g.from_index(a), g.from_index(b));
  } else {
    std::mt19937_64 rng(1234);
    for (int s = 0; s < samples; ++s) check_pair(random_element(g, rng), random_element(g, rng));
  }
}

const char* kInconsistent = R"(
p=3 n=3 d=1
w = 1 2 3
a1^3 = a2
[a2,a1] = a3
)";

}  // namespace

TEST_CASE("collection agrees with concrete realizations") {
  check_against_realization(oracle::heisenberg27(), oracle::matrices_mod(3, 3));
  check_against_realization(oracle::extraspecial27_exp9(), oracle::matrices_mod(2, 9));
  check_against_realization(oracle::cyclic9(), oracle::additive_mod({9}));
  check_against_realization(oracle::wreath81(), oracle::permutations(9));
  check_against_realization(oracle::abelian_9_3_3(), oracle::additive_mod({9, 3, 3}));
  check_against_realization(oracle::wreath81_times_c3(), oracle::permutations(12));
  check_against_realization(oracle::unitriangular4(), oracle::matrices_mod(4, 3), 20000);
}

TEST_CASE("realized presentations are labelled with the expected definitions") {
  const auto h = oracle::heisenberg27().pres;
  CHECK(h.labelled());
  CHECK(h.d() == 2);
  CHECK(h.definitions()[2] == Definition{Definition::Kind::Commutator, 1, 0});
  const auto c9 = oracle::cyclic9().pres;
  CHECK(c9.definitions()[1] == Definition{Definition::Kind::Power, 0, -1});
  CHECK(c9 == PcPresentation::cyclic(2));
}

TEST_CASE("multiplication is associative and inverses are two-sided") {
  std::mt19937_64 rng(2024);
  for (const auto& r : {oracle::wreath81_times_c3(), oracle::unitriangular4(), oracle::extraspecial27_exp9()}) {
    const auto& g = r.pres;
    for (int t = 0; t < 3000; ++t) {
      const Element x = random_element(g, rng), y = random_element(g, rng), z = random_element(g, rng);
      CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
      CHECK(g.multiply(x, g.inverse(x)).is_identity());
      CHECK(g.multiply(g.inverse(x), x).is_identity());
    }
  }
  CHECK(oracle::associative(oracle::table_of(oracle::wreath81().pres)));
}

TEST_CASE("collect handles arbitrary words") {
  const auto g = oracle::wreath81().pres;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    Word w;
    Element ref;
    const int len = 1 + static_cast<int>(rng() % 8);
    for (int s = 0; s < len; ++s) {
      const int gen = static_cast<int>(rng() % g.n());
      const int e = static_cast<int>(rng() % 11) - 5;
      w.push_back({gen, e});
      ref = g.multiply(ref, g.pow(Element::gen(gen), e));
    }
    CHECK(g.collect(w) == ref);
  }
  CHECK(g.collect(parse_word("a1^-1*a2^4", g.n())) ==
        g.multiply(g.inverse(Element::gen(0)), Element::gen(1)));
}

TEST_CASE("consistency check reports failing test words") {
  const auto bad = parse_pc3(kInconsistent);
  const auto msgs = bad.consistency_check();
  CHECK(!msgs.empty());
  // Altering one relation of a consistent group breaks consistency.
  const auto w = oracle::wreath81().pres;
  std::vector<Element> pw(w.n()), cm(static_cast<std::size_t>(w.n()) * w.n());
  for (int i = 0; i < w.n(); ++i) {
    pw[i] = w.power(i);
    for (int j = i + 1; j < w.n(); ++j) cm[j * w.n() + i] = w.commutator(j, i);
  }
  pw[0] = Element::gen(1);
  CHECK(!PcPresentation(w.weights(), pw, cm).consistency_check().empty());
}

TEST_CASE("invalid presentations are rejected") {
  CHECK_THROWS_AS(parse_pc3("p=3 n=2\n[a2,a1] = a2\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=3 n=2\na2^3 = a1\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=5 n=2\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=3 n=2\nw = 2 1\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=3 n=2\n[a1,a2] = 1\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=3 n=3\na1^3 = a3*a2\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=3 n=2\nhello\n"), InputError);
  CHECK_THROWS_AS(parse_pc3("p=3 n=2 d=1\nw = 1 1\n"), InputError);
}

TEST_CASE("pc3 round trip") {
  for (const auto& r : {oracle::heisenberg27(), oracle::wreath81(), oracle::unitriangular4(),
                        oracle::abelian_9_3_3()}) {
    const std::string text = to_pc3(r.pres, "test group\nsecond line");
    CHECK(text.rfind("# test group\n# second line\n", 0) == 0);
    CHECK(parse_pc3(text) == r.pres);
  }
}

TEST_CASE("subgroups, series and invariants match brute force") {
  for (const auto& r : {oracle::heisenberg27(), oracle::extraspecial27_exp9(), oracle::wreath81(),
                        oracle::unitriangular4(), oracle::wreath81_times_c3(), oracle::abelian_9_3_3()}) {
    const auto G = ptr(r.pres);
    const auto table = oracle::table_of(*G);
    CHECK(nilpotency_class(G) == oracle::table_class(table));
    CHECK(derived_length(G) == oracle::table_derived_length(table));
    const auto D = derived_subgroup(Subgroup::whole(G));
    // Brute-force derived subgroup from all commutators.
    std::set<int> comms;
    for (std::uint64_t a = 0; a < G->order(); ++a)
      for (std::uint64_t b = 0; b < G->order(); ++b)
        comms.insert(static_cast<int>(G->index(G->comm(G->from_index(a), G->from_index(b)))));
    const auto Dref = oracle::generated(table, comms);
    CHECK(static_cast<std::size_t>(std::llround(std::pow(3.0, D.log_order()))) == Dref.size());
    for (int x : Dref) CHECK(D.contains(G->from_index(x)));
    // Frattini = G' G^3.
    std::set<int> fgens = Dref;
    for (std::uint64_t a = 0; a < G->order(); ++a)
      fgens.insert(static_cast<int>(G->index(G->pow(G->from_index(a), 3))));
    const auto Fref = oracle::generated(table, fgens);
    const auto F = frattini_subgroup(Subgroup::whole(G));
    CHECK(static_cast<std::size_t>(std::llround(std::pow(3.0, F.log_order()))) == Fref.size());
    CHECK(generator_rank(G) == G->n() - F.log_order());
  }
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(Subgroup::whole(ptr(oracle::abelian_9_3_3().pres))) == Partition{2, 1, 1});
  CHECK(abelian_invariants(Subgroup::whole(ptr(oracle::wreath81().pres))) == Partition{1, 1});
  CHECK(abelian_invariants(Subgroup::whole(ptr(oracle::extraspecial27_exp9().pres))) == Partition{1, 1});
  CHECK(abelian_invariants(Subgroup::whole(ptr(PcPresentation::cyclic(4)))) == Partition{4});
  const auto W = ptr(oracle::wreath81().pres);
  // The normal closure of a2 is the base group, elementary abelian of rank 3.
  const auto B = normal_closure(Subgroup::generated(W, {Element::gen(1)}), Subgroup::whole(W));
  CHECK(B.log_order() == 3);
  CHECK(abelian_invariants(B) == Partition{1, 1, 1});
  CHECK(partition_shorthand({2, 1, 1}) == "21^2");
  CHECK(partition_shorthand({1, 1, 1}) == "1^3");
  CHECK(partition_shorthand({3, 2}) == "32");
  CHECK(partition_digits({2, 1, 1}) == "211");
}

TEST_CASE("subgroup membership and canonical generating sequences") {
  const auto G = ptr(oracle::unitriangular4().pres);
  std::mt19937_64 rng(99);
  const auto table = oracle::table_of(*G);
  for (int t = 0; t < 40; ++t) {
    std::vector<Element> gens;
    std::set<int> idx;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int s = 0; s < k; ++s) {
      gens.push_back(random_element(*G, rng));
      idx.insert(static_cast<int>(G->index(gens.back())));
    }
    const auto H = Subgroup::generated(G, gens);
    const auto ref = oracle::generated(table, idx);
    CHECK(static_cast<std::size_t>(std::llround(std::pow(3.0, H.log_order()))) == ref.size());
    for (std::uint64_t a = 0; a < G->order(); ++a)
      CHECK(H.contains(G->from_index(a)) == (ref.count(static_cast<int>(a)) == 1));
    // Same subgroup from a different generating set gives the same igs.
    std::vector<Element> other = H.igs();
    std::reverse(other.begin(), other.end());
    if (!other.empty()) other[0] = G->multiply(other[0], other.back());
    CHECK(Subgroup::generated(G, other) == H);
  }
}

TEST_CASE("truncation gives the class quotients") {
  const auto W = oracle::wreath81().pres;
  const auto Q = W.truncate(2);
  CHECK(Q.n() == 3);
  CHECK(Q == oracle::heisenberg27().pres);
  CHECK(Q.consistency_check().empty());
}

TEST_CASE("standardize relabels scrambled presentations") {
  SUBCASE("abelian group with a non-central-series ordering") {
    auto r = oracle::realize(oracle::additive_mod({9, 3, 3}), {{1, 0, 0}, {3, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                             {1, 1, 1, 1});
    CHECK(!is_standard(r.pres));
    const auto s = standardize(r.pres);
    CHECK(is_standard(s));
    CHECK(s.weights() == std::vector<int>{1, 1, 1, 2});
    CHECK(s.consistency_check().empty());
    CHECK(oracle::brute_force_isomorphic(s, oracle::abelian_9_3_3().pres));
  }
  SUBCASE("wreath product with a shuffled generating sequence") {
    auto G = oracle::permutations(9);
    const auto w = oracle::wreath81();
    const auto& seq = w.seq;
    auto r = oracle::realize(G,
                             {G.mul(G.mul(seq[0], seq[1]), seq[2]),
                              G.mul(G.mul(seq[1], oracle::power(G, seq[2], 2)), seq[3]), G.mul(seq[2], seq[3]),
                              seq[3]},
                             {1, 1, 1, 1});
    CHECK(r.pres.consistency_check().empty());
    const auto s = standardize(r.pres);
    CHECK(is_standard(s));
    CHECK(s.weights() == std::vector<int>{1, 1, 2, 3});
    CHECK(oracle::brute_force_isomorphic(s, w.pres));
    CHECK(oracle::brute_force_isomorphic(w.pres, s));
    CHECK(!oracle::brute_force_isomorphic(s, oracle::wreath81_times_c3().pres.truncate(2)));
  }
  SUBCASE("standard groups are left alone") {
    const auto G = ptr(oracle::unitriangular4().pres);
    CHECK(is_standard(*G));
    CHECK(standard_form(G) == G);
  }
}

TEST_CASE("brute force oracle counts known automorphism groups") {
  CHECK(oracle::brute_force_aut_order(PcPresentation::cyclic(2)) == 6);
  CHECK(oracle::brute_force_aut_order(PcPresentation::elementary_abelian(2)) == 48);
  CHECK(oracle::brute_force_aut_order(oracle::heisenberg27().pres) == 432);
  CHECK(oracle::brute_force_aut_order(oracle::extraspecial27_exp9().pres) == 54);
}

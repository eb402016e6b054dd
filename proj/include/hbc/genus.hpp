#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hbc/artin.hpp"
#include "hbc/eisenstein.hpp"
#include "hbc/f3.hpp"
#include "hbc/pcover.hpp"

namespace hbc::genus {

// A conductor component: a prime = 1 mod 3, or 9.
bool admissible_component(long long q);
long long least_primitive_root(long long q);  // q an odd prime
// Discrete logarithm in F3 of the cubic character of conductor q at x, for
// the character sending the least primitive root mod q (2 for q = 9) to w.
int character_value(long long q, long long x);
// a -> b iff (a/b)_3 = 1, i.e. chi_b(a) = 0.
bool arrow(long long a, long long b);

struct ConductorTriple {
  std::array<long long, 3> q{};  // q1, q2, q3
  long long conductor() const { return q[0] * q[1] * q[2]; }
  std::string factors() const;   // "31*37*601", with 9 written as 3^2
  bool operator==(const ConductorTriple&) const = default;
};

// Validates three distinct admissible components (kept in the given order).
ConductorTriple make_triple(long long q1, long long q2, long long q3);
// Splits c into exactly three admissible components, ascending by prime (9 first).
ConductorTriple triple_of_conductor(long long c);

struct GraphClass {
  ConductorTriple triple;                     // centre first, then by prime (9 first); by prime if no centre
  std::array<std::array<bool, 3>, 3> arrows{};  // arrows[i][j]: q_i -> q_j
  int trivial = 0;                            // number of trivial symbols among the six
  bool cat1_graph2 = false;
  long long centre = 0;                       // q1 when cat1_graph2
  std::string arrow_text() const;             // "31->37 31->601"
};
GraphClass classify_graph(const ConductorTriple& t);

// ---------------------------------------------------------------------------
// Character model of the genus field: lines of F3^3 are cyclic cubic
// subfields, planes are bicyclic bicubic subfields. Coordinates refer to the
// characters chi_{q1}, chi_{q2}, chi_{q3}.

struct Line {
  f3::Row v;
  long long conductor = 0;
  std::string label;
};

struct Plane {
  f3::Row normal;
  std::string label;
  std::array<int, 4> lines{};  // indices into GenusLattice::lines, ascending
};

// Doublet choice k_{q1q2} = (1,a,0), k_{q2q3} = (0,1,c), k_{q1q3} = (1,0,-ac);
// the tilde fields are the other members of each doublet.
struct Normalization {
  int a = 1;
  int c = 1;
  bool operator==(const Normalization&) const = default;
};
std::vector<Normalization> normalizations();

struct GenusLattice {
  ConductorTriple triple;
  Normalization norm;
  // k_q1 k_q2 k_q3, k_q1q2 ~k_q1q2 k_q1q3 ~k_q1q3 k_q2q3 ~k_q2q3, K1..K4.
  std::vector<Line> lines;
  std::vector<Plane> planes;  // B1..B13

  int line(const std::string& label) const;
  int plane(const std::string& label) const;
  bool contains(int plane, int line) const;
  int degree_L() const;        // [k_q1q2 k_q1q3 k_q2q3 : Q]
  int degree_L_tilde() const;  // same for the tilde fields
  std::string to_dot() const;
};

// Doublet members in which q3 resp. q2 split, completed to a normalization.
Normalization adapted_normalization(const ConductorTriple& oriented);
GenusLattice build_lattice(const ConductorTriple& t, Normalization n);
// Adapted normalization of the oriented triple for graph-2 triples,
// otherwise the default one.
GenusLattice build_lattice(const ConductorTriple& t);

// Planes through each of K1..K4, in label order.
std::map<std::string, std::vector<std::string>> unramified_assignment(const GenusLattice& lat);

// Value of the character of a line at x (0 means x splits in that field).
int character_value(const ConductorTriple& t, const f3::Row& v, long long x);
bool splits(const GenusLattice& lat, int line, long long p);

// ---------------------------------------------------------------------------
// Capitulation in the rank-2 members of the quartet.

// Classes [Q]^x [R]^y up to scalars, first nonzero coordinate 1.
using ClassLine = std::array<int, 2>;
std::string class_text(const ClassLine& c);  // "[QR^2]"

struct KernelEntry {
  std::string plane;
  ClassLine kernel{};
  ClassLine norm{};
};

struct FieldCapitulation {
  std::string field;
  std::vector<KernelEntry> entries;
  int fixed_points = 0;
  bool transposition = false;
};

struct CapitulationReport {
  bool predicted = false;
  std::string reason;
  ConductorTriple triple;        // oriented
  Normalization norm;
  bool q2_splits_in_k13 = false;
  bool q3_splits_in_k12 = false;
  std::string rank3_member;
  long long parry_invariant = 0;
  int orientation = 0;           // 1: basis ([Q],[R]); 2: ([Q],[R]^-1)
  std::vector<FieldCapitulation> fields;
  std::string tkt_label;
  bool g16_signature = false;
  std::string tower_fingerprint; // filled by callers that grow the (3,3) tree
};

CapitulationReport predict_capitulation(const ConductorTriple& t, std::optional<Normalization> n = {});

// ---------------------------------------------------------------------------
// Defining polynomials from Gaussian periods.

// x^3 + c[2] x^2 + c[1] x + c[0].
struct Cubic {
  std::array<eis::Int, 3> c;
  eis::Int discriminant() const;
  eis::Int eval(const eis::Int& x) const;
  std::string to_string() const;
};

// Discriminant of the maximal order of Q[x]/(f) for an irreducible monic cubic.
eis::Int field_discriminant(const Cubic& f);

struct PolynomialResult {
  Cubic poly;
  long long conductor = 0;
  eis::Int poly_discriminant;
  eis::Int field_discriminant;
  bool irreducible = false;
  bool cyclic = false;
  int digits = 0;  // working precision that passed validation
};

// Minimal polynomial of the Gaussian period of the cubic character
// sum_i v_i chi_{q_i}; the conductor is the product of the q_i with v_i != 0.
PolynomialResult defining_polynomial(const std::vector<long long>& components, const std::vector<int>& exponents);
PolynomialResult line_polynomial(const GenusLattice& lat, int line);

// ---------------------------------------------------------------------------
// Conductor scan.

struct ScanEntry {
  GraphClass graph;
  bool q2_splits_in_k13 = false;
  bool q3_splits_in_k12 = false;
  bool candidate = false;  // graph 2 and both splitting conditions
};

struct ScanResult {
  long long max_c = 0;
  std::size_t triples = 0;
  std::vector<ScanEntry> candidates;  // ascending conductor
};

ScanResult scan_conductors(long long max_c, int threads = 0);

// ---------------------------------------------------------------------------
// Census of unramified extensions of degree 9 and 27 (first and second layer).

struct CensusRow {
  std::string kind;            // "abelian", "Galois", "non-Galois"
  std::string aqi;             // abelian quotient invariants of the subgroup
  int bucket = 0;              // column of the census sums
  int classes = 0;             // isomorphism classes (representatives)
  int members = 0;             // conjugates per class
  int appearances = 0;         // occurrences among the positions j resp. pairs (j,l)
  std::uint64_t closure_order = 0;  // order of the Galois group of the normal closure
};

struct LayerCensus {
  std::vector<CensusRow> rows;
  int representatives() const;
  int total() const;
  // Sums per bucket with empty buckets dropped: "1+3+3=7", "4+12+45=61".
  std::string representatives_text() const;
  std::string total_text() const;
};

// Fields between K and the unramified 3-extensions are modeled by subgroups
// of G; isomorphic fields are conjugate under G extended by an automorphism
// sigma of order 3 lifting the Galois action on K (a transvection on G/Phi).
// Layer 1: maximal subgroups, bucketed by (rank of AQI, Galois or not).
// Layer 2: maximal subgroups of maximal subgroups, bucketed by kind.
struct GroupCensus {
  LayerCensus layer1, layer2;
  f3::Matrix sigma_action;     // induced on G/Phi(G)
};
std::optional<GroupCensus> field_census(GroupPtr g, const AutGroup& aut, std::uint64_t seed = 20240917);

struct CensusRecord {
  RankDistribution scenario;
  std::string group;           // fingerprint digest of the realizing group
  std::string relative_id;     // its identifier below the abelian root
  int sum_nj = 0;              // group-side second order total
  LayerCensus layer1, layer2;
};

RankDistribution parse_scenario(const std::string& s);  // "3^1,2^12"
CensusRecord census(const RankDistribution& scenario, std::uint64_t seed = 20240917);

}  // namespace hbc::genus

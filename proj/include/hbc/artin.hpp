#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hbc/f3.hpp"
#include "hbc/pcgroup.hpp"

namespace hbc {

// Nonzero vectors of F3^d with first nonzero entry 1, in lexicographic order.
// Position k (1-based) names both the line spanned by the vector and the
// hyperplane having it as normal vector.
const std::vector<f3::Row>& normal_vectors(int d);
int line_index(f3::Row v, int d);  // 1-based; v must be nonzero

// Coordinates of x in G/Phi(G) for a standard presentation.
f3::Row frattini_coordinates(const PcPresentation& g, const Element& x);

// Maximal subgroups of a standard presentation, ordered like normal_vectors(d).
std::vector<Subgroup> maximal_subgroups(GroupPtr g);
// Maximal subgroups of an arbitrary subgroup, in no particular labelling.
std::vector<Subgroup> maximal_subgroups_of(const Subgroup& h);

// Transfer of g into M (index 3) for the given right transversal of M,
// returned as an element of M (to be read modulo M').
Element transfer(const Subgroup& m, const Element& g, const std::vector<Element>& transversal);
std::vector<Element> default_transversal(const Subgroup& m);
// Kernel of G/G' -> M/M' as an echelon basis of F3^d.
std::vector<f3::Row> transfer_kernel(const Subgroup& m);

struct SecondOrderEntry {
  Partition top;                    // H_j / H_j'
  std::vector<Partition> below;     // AQI of the maximal subgroups of H_j, sorted
  auto operator<=>(const SecondOrderEntry&) const = default;
};

struct ArtinPattern {
  int d = 0;
  std::vector<int> kappa;                    // 0 for kernels larger than a line
  std::vector<Partition> alpha;
  std::vector<char> taussky;                 // 'A' or 'B'
  std::optional<std::vector<SecondOrderEntry>> alpha2;
  bool operator==(const ArtinPattern&) const = default;
};

// Requires G/G' elementary abelian of rank 2 or 3.
ArtinPattern artin_pattern(GroupPtr g, bool second_order = false);
std::vector<int> transfer_kernel_type(GroupPtr g);
std::vector<char> taussky_types(GroupPtr g);
std::vector<SecondOrderEntry> second_order_pattern(GroupPtr g);

bool is_hbc(const ArtinPattern& p);
// Two positions sharing the same line kernel rule out a permutation in
// every descendant, since descendant kernels lie inside these.
bool kernels_allow_hbc(const ArtinPattern& p);

struct RankDistribution {
  int rank3 = 0;
  int rank2 = 0;
  int scenario = 0;  // 1, 2, 3 for (1,12), (4,9), (7,6); 0 otherwise
  std::string label() const;  // "3^7,2^6"
};
RankDistribution rank_distribution(const std::vector<Partition>& alpha);
// Sum of n_j over the second order pattern.
int second_order_total(const std::vector<SecondOrderEntry>& a2);

// Pattern after relabeling G/G' by g in GL(d,3) (x -> g x).
ArtinPattern relabel(const ArtinPattern& p, const f3::Matrix& g);
std::vector<f3::Matrix> general_linear_elements(int d);
// Minimum over all relabelings.
ArtinPattern canonical_pattern(const ArtinPattern& p);

struct ShafarevichBounds {
  int lower = 0;
  int upper = 0;
};
ShafarevichBounds shafarevich_bounds(int rho, int r, int theta);

// Text forms: kappa "(9,2,3,...)", alpha "211 22 ...", and the second order
// shorthand "[(21^2);(21^2)^4(21)^9]^1[(2^2);(21^2)^4]^12".
std::string format_kappa(const std::vector<int>& kappa);
std::string format_alpha(const std::vector<Partition>& alpha);
std::string format_alpha2(const std::vector<SecondOrderEntry>& a2);
// Multiset of entries parsed from the shorthand, sorted.
std::vector<SecondOrderEntry> parse_alpha2(const std::string& s);
Partition parse_partition(const std::string& s);  // "21^2" or "211"

}  // namespace hbc

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hbc/artin.hpp"
#include "hbc/pcover.hpp"

namespace hbc {

// Isomorphism invariants standing in for library identifiers.
struct Fingerprint {
  int log_order = 0;
  int pclass = 0;          // nilpotency class
  int coclass = 0;
  int derived_length = 0;
  int d1 = 0;
  int mu = 0;
  int nu = 0;
  std::optional<ArtinPattern> pattern;          // canonical, with second order; rank 2 or 3 only
  std::vector<Partition> lower_central_aqi;     // abelian invariants of each lower central term

  std::string canonical_text() const;
  std::string digest() const;                   // 16 hex digits of a hash of canonical_text()
  bool operator==(const Fingerprint& o) const { return canonical_text() == o.canonical_text(); }
};

Fingerprint fingerprint(GroupPtr g);

struct TreeNode {
  GroupPtr group;
  int parent = -1;
  int step = 0;
  int orbit_index = 0;                   // k in "#s;k" under the canonical orbit order
  int log_order = 0;
  int mu = 0;
  int nu = 0;
  std::vector<f3::Row> annihilator;      // allowable subgroup in the parent's multiplicator
  std::vector<int> children;
  bool expanded = false;
  // Per step s = 1..: number of immediate descendants and how many are
  // capable, before the retention filter (filled when expanded).
  std::vector<std::pair<int, int>> counts;
  std::vector<std::pair<int, int>> kept_counts;  // same, after the filter
  std::string error;                     // budget exhaustion while expanding
  std::shared_ptr<const ParentContext> context;  // set for expanded nodes

  std::string relative_id() const;       // "#s;k", empty for the root
};

struct TreeOptions {
  int max_log_order = 6;
  // Descendants failing this are counted but not kept.
  std::function<bool(const Descendant&)> keep;
  // Kept nodes are expanded only if this returns true (in addition to nu > 0
  // and order below the bound).
  std::function<bool(const TreeNode&)> expand;
  AutOptions aut;
  int threads = 0;  // 0: hardware concurrency
};

struct Tree {
  std::vector<TreeNode> nodes;
  std::string path(int node) const;      // "#3;11-#2;1" from the root
  std::vector<std::string> errors() const;
};

Tree grow_tree(GroupPtr root, const TreeOptions& opt);
// Automorphism group of a node (lifted from its parent when not the root).
AutGroup node_aut(const Tree& t, int node, const AutOptions& opt = {});

// Standard retention and expansion rules for closed groups with harmonically
// balanced capitulation below an elementary abelian root of rank 3.
bool keep_elementary_abelianization(const Descendant& d);
// A closed descendant of order 3^e needs e >= lo + mu - d; kernels that
// already repeat a line rule out every descendant.
std::function<bool(const TreeNode&)> may_reach_closed_hbc(int max_log_order);

int worker_count(int requested);

// For G/G' of rank 2: position j maps to the maximal subgroup whose image in
// G/Phi is the transfer kernel of M_j (-1 when the kernel is not a line).
std::vector<int> kernel_permutation(GroupPtr g);
// Two fixed points and one transposition, i.e. capitulation type G.16.
bool is_g16(const std::vector<int>& perm);

struct TowerMatch {
  std::string path;
  Fingerprint fingerprint;
  std::vector<int> permutation;
};
// Coclass-2 groups of order 3^log_order below the (3,3) root with G.16
// kernels; their relation rank is fingerprint.mu.
std::vector<TowerMatch> g16_tower_groups(int log_order = 6, const AutOptions& aut = {});

// Closed groups (Schur multiplier rank 0) with harmonically balanced
// capitulation below the elementary abelian root of rank 3.
struct ClosedHbcGroup {
  int node = -1;
  std::string path;
  GroupPtr group;
  Fingerprint fingerprint;
  ArtinPattern pattern;                  // canonical, first order
  int ancestor = -1;                     // tree node of order 3^6 on the path
  ArtinPattern ancestor_pattern;         // canonical, first order
  bool sigma = false;                    // -I lies in the induced automorphism image
};

struct HbcSearch {
  Tree tree;
  std::vector<ClosedHbcGroup> groups;
  double seconds = 0;
};
HbcSearch closed_hbc_search(int max_log_order, int threads = 0, const AutOptions& aut = {});

// Graphviz rendering; node labels carry digests and optional fixture names.
struct DotStyle {
  std::function<std::string(int)> label;
  std::function<bool(int)> filled;       // closed groups
  std::function<bool(int)> boxed;        // non-metabelian groups
};
std::string to_dot(const Tree& t, const DotStyle& style);

}  // namespace hbc

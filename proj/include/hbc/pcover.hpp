#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hbc/f3.hpp"
#include "hbc/pcgroup.hpp"

namespace hbc {

// Thrown when an enumeration would exceed its configured size limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// p-covering group

// A relation a_j^3 = ... (i == -1) or [a_j, a_i] = ... of a labelled presentation.
struct CoverRelation {
  int j = -1;
  int i = -1;
  int weight = 0;   // w_j + 1 for powers, w_j + w_i for commutators
  bool definition = false;
  f3::Row tail;     // coordinates in the multiplicator basis; zero for definitions
  bool is_power() const { return i < 0; }
  std::string label() const;
};

struct CoverData {
  GroupPtr group;                         // standard presentation of G
  GroupPtr cover;                         // G*, generators a_1..a_n then the multiplicator basis
  int mu = 0;                             // p-multiplicator rank (= relation rank d_2)
  int nu = 0;                             // nuclear rank
  std::vector<CoverRelation> relations;   // every power and commutator relation of G
  std::vector<f3::Row> nucleus;           // echelon basis of the nucleus, multiplicator coordinates
  std::vector<int> basis_relation;        // relation whose tail is the p-th basis vector

  Subgroup multiplicator() const;
  Subgroup nucleus_subgroup() const;
  // Echelon basis of the multiplicator part of the derived subgroup of G*.
  std::vector<f3::Row> derived_part() const;
  // The element of G* representing multiplicator vector v.
  Element multiplicator_element(const f3::Row& v) const;
};

// Requires a consistent presentation; relabels it to standard form first.
CoverData p_cover(GroupPtr g);

int relation_rank(GroupPtr g);
bool is_closed(GroupPtr g);
int schur_multiplier_rank(GroupPtr g);

// ---------------------------------------------------------------------------
// Automorphisms, given by images of the defining generators a_1..a_d.

using Images = std::vector<Element>;

// Images of all pc generators obtained through the definitions.
std::vector<Element> extend_images(const PcPresentation& g, const Images& img);
Element apply_images(const PcPresentation& g, const std::vector<Element>& all, const Element& x);
// Checks every relation and bijectivity.
bool is_automorphism(const PcPresentation& g, const Images& img);
// Matrix (columns = images of the basis) of the action on G/Phi(G).
f3::Matrix induced_matrix(const PcPresentation& g, const Images& img);
// Action of the extended automorphism on the multiplicator (columns = images).
f3::Matrix multiplicator_action(const CoverData& cd, const Images& img);

struct AutGroup {
  GroupPtr group;
  std::vector<Images> gens;
  std::uint64_t order = 0;

  std::vector<f3::Matrix> induced_generators() const;
};

struct AutOptions {
  std::uint64_t seed = 20240917;
  std::uint64_t max_orbit = 20'000'000;
};

AutGroup general_linear(GroupPtr elementary_abelian);
std::uint64_t gl_order(int d);
AutGroup aut_group(GroupPtr g, const AutOptions& opt = {});

// Subgroup of GL(d,3) generated by the induced matrices, listed exhaustively.
std::vector<f3::Matrix> induced_image(const AutGroup& a);
bool has_sigma_automorphism(const AutGroup& a);

// ---------------------------------------------------------------------------
// Permutation representation on the elements of G (indices sum e_k 3^k).

using Perm = std::vector<std::uint16_t>;

Perm perm_of(const PcPresentation& g, const Images& img);
Perm compose(const Perm& a, const Perm& b);  // a after b
Perm invert(const Perm& a);

// Base and strong generating set for a group of permutations; the base is
// supplied by the caller and must have trivial pointwise stabilizer.
class Bsgs {
 public:
  Bsgs(std::size_t degree, std::vector<std::uint32_t> base);
  // Sifts p; if it does not sift to the identity, the residue is added.
  bool add(const Perm& p);
  std::uint64_t order() const;
  const std::vector<Perm>& strong_generators() const { return gens_; }
  bool contains(const Perm& p) const;

 private:
  struct Level {
    std::vector<int> gens;                      // indices into gens_
    std::vector<std::int32_t> via;              // per point: generator index, -1 root, -2 absent
    std::vector<std::uint32_t> points;
  };
  std::pair<int, Perm> sift(Perm p) const;
  void rebuild(int level);

  std::size_t degree_;
  std::vector<std::uint32_t> base_;
  std::vector<Perm> gens_, gens_inv_;
  std::vector<int> gen_level_;                  // deepest level fixing base points before it
  std::vector<Level> levels_;
};

// ---------------------------------------------------------------------------
// Allowable subgroups of the multiplicator and their orbits.

// Coordinates on the multiplicator in which the nucleus is spanned by the
// last nu basis vectors; allowable subgroups of step s are ranked through
// the reduced echelon form of their annihilators.
class AllowableSpace {
 public:
  AllowableSpace(const CoverData& cd, int step);

  int mu() const { return mu_; }
  int nu() const { return nu_; }
  int step() const { return s_; }
  std::uint64_t count() const { return count_; }

  // Annihilator rows (in adapted coordinates) of the subgroup with this rank.
  std::vector<f3::Row> unrank(std::uint64_t idx) const;
  std::uint64_t rank(std::vector<f3::Row> annihilator) const;
  // Conversions between adapted and original multiplicator coordinates.
  f3::Matrix to_adapted() const { return p_inv_; }
  f3::Matrix from_adapted() const { return p_; }
  // Action matrix on annihilator rows (f -> f B) for an automorphism whose
  // multiplicator action is A (original coordinates).
  f3::Matrix row_action(const f3::Matrix& a) const;
  // Annihilator rows in original coordinates.
  std::vector<f3::Row> original_annihilator(std::uint64_t idx) const;

 private:
  struct PivotSet {
    std::vector<int> pivots;
    int free_entries;
    std::uint64_t offset;
  };
  int mu_, nu_, s_;
  std::uint64_t x_block_ = 1;   // 3^{s(mu-nu)}
  std::uint64_t count_ = 0;
  std::vector<PivotSet> sets_;
  f3::Matrix p_, p_inv_;       // columns of p_ = adapted basis in original coordinates
};

struct OrbitRep {
  std::uint64_t rank = 0;    // lexicographically minimal member
  std::uint64_t size = 0;
};

// Orbits of allowable subgroups of the given step under the matrices
// (row actions), ordered by their minimal member.
std::vector<OrbitRep> allowable_orbits(const AllowableSpace& space,
                                       const std::vector<f3::Matrix>& row_actions,
                                       std::uint64_t budget);

// ---------------------------------------------------------------------------
// Descendants

struct Descendant {
  GroupPtr group;
  int step = 0;
  int orbit_index = 0;                   // k in "#s;k", 1-based
  std::uint64_t orbit_size = 0;
  std::vector<f3::Row> annihilator;      // U^perp, original multiplicator coordinates
  bool elementary_abelianization = false;
};

// Everything about a parent needed to generate its descendants.
struct ParentContext {
  CoverData cover;
  AutGroup aut;
  std::vector<Perm> perms;               // perm_of for each automorphism generator
  std::vector<f3::Matrix> actions;       // multiplicator actions of the generators
  std::vector<f3::Row> derived;          // multiplicator part of (G*)'
};

ParentContext make_parent_context(const AutGroup& aut);

// Builds G*/U for U given by annihilator rows (original coordinates).
PcPresentation quotient_of_cover(const CoverData& cd, const std::vector<f3::Row>& annihilator);
// True if G*/U keeps an elementary abelian commutator quotient.
bool keeps_elementary_abelianization(const ParentContext& pc, const std::vector<f3::Row>& annihilator);

std::vector<Descendant> immediate_descendants(const ParentContext& pc, int step,
                                              const AutOptions& opt = {});

// Automorphism group of a descendant, from the stabilizer of its allowable subgroup.
AutGroup descendant_aut(const ParentContext& pc, const Descendant& child, const AutOptions& opt = {});

}  // namespace hbc

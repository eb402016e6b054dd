#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbc/detail/collector.hpp"
#include "hbc/element.hpp"

namespace hbc {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How a generator of weight > 1 arises: a_k = a_j^3 or a_k = [a_j, a_i].
struct Definition {
  enum class Kind : std::uint8_t { None, Power, Commutator };
  Kind kind = Kind::None;
  int j = -1;
  int i = -1;
  bool operator==(const Definition&) const = default;
};

// Power-commutator presentation of a finite 3-group with pc generators
// a_1..a_n (indices 0..n-1 in code). Relations: a_i^3 = power(i) and
// [a_j, a_i] = a_j^-1 a_i^-1 a_j a_i = commutator(j, i) for j > i.
class PcPresentation {
 public:
  PcPresentation(std::vector<int> weights, std::vector<Element> powers,
                 std::vector<Element> commutators /* flat, index j*n+i */);

  static PcPresentation elementary_abelian(int d);
  static PcPresentation cyclic(int log_order);

  int n() const { return n_; }
  int d() const { return d_; }
  int weight(int k) const { return weights_[k]; }
  const std::vector<int>& weights() const { return weights_; }
  // Lower exponent-3 central class (largest weight).
  int pclass() const;

  const Element& power(int i) const { return col_.pow(i); }
  const Element& commutator(int j, int i) const { return col_.comm(j, i); }

  // Definitions found among the relations; kind None for weight-1 generators.
  const std::vector<Definition>& definitions() const { return defs_; }
  // True when every generator of weight > 1 has a definition and weights
  // are nondecreasing with weight-1 generators first.
  bool labelled() const { return labelled_; }

  Element collect(const Word& w) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  Element pow(const Element& x, long long k) const;
  Element comm(const Element& x, const Element& y) const;   // x^-1 y^-1 x y
  Element conj(const Element& x, const Element& y) const;   // y^-1 x y
  void mul_gen(Element& x, int g) const {
    detail::NoTail t;
    col_.mul_gen(x, t, g);
  }

  // Violated consistency test words, empty iff the presentation is consistent.
  std::vector<std::string> consistency_check() const;

  // Mixed-radix index sum e_k 3^k; only meaningful for n <= 20.
  std::uint64_t index(const Element& x) const;
  Element from_index(std::uint64_t idx) const;
  std::uint64_t order() const;

  // Quotient by the generators of weight > w (the lower exponent-3 central
  // term P_w for weighted presentations).
  PcPresentation truncate(int w) const;

  std::string format(const Element& x) const;
  const detail::Collector<detail::NoTail>& collector() const { return col_; }

  bool operator==(const PcPresentation& o) const;

 private:
  void validate();
  void find_definitions();

  int n_ = 0;
  int d_ = 0;
  std::vector<int> weights_;
  std::vector<Definition> defs_;
  bool labelled_ = false;
  detail::Collector<detail::NoTail> col_;
};

using GroupPtr = std::shared_ptr<const PcPresentation>;

// Subgroup stored by an induced generating sequence: at most one element per
// leading index, each normalized to leading exponent 1 and fully reduced at
// the other leading positions.
class Subgroup {
 public:
  explicit Subgroup(GroupPtr g);

  static Subgroup generated(GroupPtr g, const std::vector<Element>& gens);
  static Subgroup whole(GroupPtr g);

  const GroupPtr& parent() const { return g_; }
  const PcPresentation& group() const { return *g_; }
  int log_order() const { return static_cast<int>(igs_.size()); }
  const std::vector<Element>& igs() const { return igs_; }
  std::vector<int> leading_indices() const;

  Element sift(Element x) const;
  bool contains(const Element& x) const { return sift(x).is_identity(); }
  // Adds elements and closes; returns true if the subgroup grew.
  bool add(const std::vector<Element>& gens);
  bool is_subgroup_of(const Subgroup& o) const;
  bool operator==(const Subgroup& o) const;

  std::vector<Element> elements() const;  // small subgroups only

 private:
  bool insert_closed(std::vector<Element> queue);
  void reduce();

  GroupPtr g_;
  std::vector<Element> igs_;                 // sorted by leading index
  std::array<int, kMaxGens> slot_{};         // leading index -> position in igs_, or -1
};

// Logarithmic abelian invariants, weakly decreasing: (2,1,1) is C9 x C3 x C3.
using Partition = std::vector<int>;

std::string partition_shorthand(const Partition& p);  // e.g. "21^2"
std::string partition_digits(const Partition& p);     // e.g. "211"

Subgroup derived_subgroup(const Subgroup& h);
Subgroup frattini_subgroup(const Subgroup& h);
Subgroup normal_closure(const Subgroup& h, const Subgroup& in);  // closure of h under conjugation by `in`
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);  // [A,B], A,B normalized by each other
Partition abelian_invariants(const Subgroup& h);

enum class SeriesKind { LowerCentral, LowerExponentCentral, Derived };
std::vector<Subgroup> series(GroupPtr g, SeriesKind kind);

int nilpotency_class(GroupPtr g);
int derived_length(GroupPtr g);
// Rank of G/Phi(G).
int generator_rank(GroupPtr g);

// Rebuilds a consistent presentation as a labelled weighted one, i.e. the
// pc generators refine the lower exponent-3 central series and every
// generator of weight > 1 is a power or a commutator with a weight-1
// generator.
PcPresentation standardize(const PcPresentation& g);
// True if g is labelled and its weights are the lower exponent-3 central layers.
bool is_standard(const PcPresentation& g);
// g itself when already standard, otherwise its standardization.
GroupPtr standard_form(GroupPtr g);

// Reads and writes the line-oriented .pc3 text format (see docs/pc3-format.md).
PcPresentation parse_pc3(const std::string& text);
PcPresentation read_pc3(const std::string& path);
std::string to_pc3(const PcPresentation& g, const std::string& comment = "");

Word parse_word(const std::string& s, int n);

}  // namespace hbc

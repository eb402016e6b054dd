#include <algorithm>
#include <sstream>

#include "hbc/pcgroup.hpp"

namespace hbc {

PcPresentation::PcPresentation(std::vector<int> weights, std::vector<Element> powers,
                               std::vector<Element> commutators)
    : n_(static_cast<int>(weights.size())), weights_(std::move(weights)) {
  if (n_ > kMaxGens) throw InputError("too many pc generators (max 32)");
  if (static_cast<int>(powers.size()) != n_ ||
      commutators.size() != static_cast<std::size_t>(n_) * n_)
    throw InputError("relation table size mismatch");
  std::vector<detail::NoTail> pt(n_), ct(commutators.size());
  // Entries with j <= i are unused; keep them trivial.
  for (int j = 0; j < n_; ++j)
    for (int i = j; i < n_; ++i) commutators[static_cast<std::size_t>(j) * n_ + i] = Element{};
  // Check index ordering before building conjugation tables.
  for (int i = 0; i < n_; ++i) {
    if (powers[i].lead() >= 0 && powers[i].lead() <= i)
      throw InputError("power relation of a" + std::to_string(i + 1) +
                       " involves a generator of index <= " + std::to_string(i + 1));
    for (int j = i + 1; j < n_; ++j) {
      const auto& c = commutators[static_cast<std::size_t>(j) * n_ + i];
      if (c.lead() >= 0 && c.lead() <= j)
        throw InputError("commutator [a" + std::to_string(j + 1) + ",a" + std::to_string(i + 1) +
                         "] involves a generator of index <= " + std::to_string(j + 1));
    }
  }
  for (int k = 0; k < n_; ++k)
    for (int t = n_; t < kMaxGens; ++t)
      if (powers[k].e[t]) throw InputError("generator index out of range");
  col_.init(n_, std::move(powers), std::move(pt), std::move(commutators), std::move(ct));
  validate();
  find_definitions();
}

PcPresentation PcPresentation::elementary_abelian(int d) {
  return PcPresentation(std::vector<int>(d, 1), std::vector<Element>(d),
                        std::vector<Element>(static_cast<std::size_t>(d) * d));
}

PcPresentation PcPresentation::cyclic(int log_order) {
  std::vector<int> w(log_order);
  std::vector<Element> pw(log_order);
  for (int k = 0; k < log_order; ++k) {
    w[k] = k + 1;
    if (k + 1 < log_order) pw[k] = Element::gen(k + 1);
  }
  return PcPresentation(w, pw, std::vector<Element>(static_cast<std::size_t>(log_order) * log_order));
}

void PcPresentation::validate() {
  for (int k = 0; k < n_; ++k) {
    if (weights_[k] < 1) throw InputError("weights must be positive");
    if (k > 0 && weights_[k] < weights_[k - 1]) throw InputError("weights must be nondecreasing");
  }
  d_ = static_cast<int>(std::count(weights_.begin(), weights_.end(), 1));
}

void PcPresentation::find_definitions() {
  defs_.assign(n_, Definition{});
  labelled_ = true;
  for (int k = 0; k < n_; ++k) {
    const int w = weights_[k];
    if (w == 1) continue;
    const Element target = Element::gen(k);
    Definition found;
    for (int j = 0; j < k && found.kind == Definition::Kind::None; ++j) {
      if (weights_[j] != w - 1) continue;
      for (int i = 0; i < j; ++i)
        if (weights_[i] == 1 && commutator(j, i) == target) {
          found = {Definition::Kind::Commutator, j, i};
          break;
        }
    }
    for (int j = 0; j < k && found.kind == Definition::Kind::None; ++j)
      if (weights_[j] == w - 1 && power(j) == target) found = {Definition::Kind::Power, j, -1};
    for (int j = 0; j < k && found.kind == Definition::Kind::None; ++j)
      for (int i = 0; i < j; ++i)
        if (weights_[i] + weights_[j] == w && commutator(j, i) == target) {
          found = {Definition::Kind::Commutator, j, i};
          break;
        }
    if (found.kind == Definition::Kind::None) labelled_ = false;
    defs_[k] = found;
  }
}

int PcPresentation::pclass() const { return n_ ? weights_.back() : 0; }

Element PcPresentation::collect(const Word& w) const {
  Element x;
  detail::NoTail t;
  for (auto [g, e] : w) {
    if (g < 0 || g >= n_) throw InputError("generator index out of range in word");
    int r = ((e % 3) + 3) % 3;
    if (e < 0) {
      // a^-m: multiply by the inverse of a^m.
      Element y = pow(Element::gen(g), -static_cast<long long>(e));
      x = multiply(x, inverse(y));
      continue;
    }
    if (e >= 3) {
      x = multiply(x, pow(Element::gen(g), e));
      continue;
    }
    for (int k = 0; k < r; ++k) col_.mul_gen(x, t, g);
  }
  return x;
}

Element PcPresentation::multiply(const Element& x, const Element& y) const {
  Element z = x;
  detail::NoTail t;
  col_.mul(z, t, y, t);
  return z;
}

Element PcPresentation::inverse(const Element& x) const {
  Element y;
  detail::NoTail t, ty;
  col_.inverse(x, t, y, ty);
  return y;
}

Element PcPresentation::pow(const Element& x, long long k) const {
  if (k < 0) return pow(inverse(x), -k);
  Element result, base = x;
  while (k) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

Element PcPresentation::comm(const Element& x, const Element& y) const {
  return multiply(inverse(multiply(y, x)), multiply(x, y));
}

Element PcPresentation::conj(const Element& x, const Element& y) const {
  return multiply(inverse(y), multiply(x, y));
}

std::vector<std::string> PcPresentation::consistency_check() const {
  std::vector<std::string> out;
  for (auto& d : col_.check()) out.push_back(d.test_word + ": " + format(d.lhs) + " != " + format(d.rhs));
  return out;
}

std::uint64_t PcPresentation::index(const Element& x) const {
  std::uint64_t idx = 0;
  for (int k = n_ - 1; k >= 0; --k) idx = idx * 3 + x.e[k];
  return idx;
}

Element PcPresentation::from_index(std::uint64_t idx) const {
  Element x;
  for (int k = 0; k < n_; ++k) {
    x.e[k] = static_cast<std::uint8_t>(idx % 3);
    idx /= 3;
  }
  return x;
}

std::uint64_t PcPresentation::order() const {
  std::uint64_t o = 1;
  for (int k = 0; k < n_; ++k) o *= 3;
  return o;
}

PcPresentation PcPresentation::truncate(int w) const {
  int m = 0;
  while (m < n_ && weights_[m] <= w) ++m;
  std::vector<int> wt(weights_.begin(), weights_.begin() + m);
  std::vector<Element> pw(m), cm(static_cast<std::size_t>(m) * m);
  auto cut = [m](Element x) {
    for (int k = m; k < kMaxGens; ++k) x.e[k] = 0;
    return x;
  };
  for (int i = 0; i < m; ++i) {
    pw[i] = cut(power(i));
    for (int j = i + 1; j < m; ++j) cm[static_cast<std::size_t>(j) * m + i] = cut(commutator(j, i));
  }
  return PcPresentation(wt, pw, cm);
}

std::string PcPresentation::format(const Element& x) const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < n_; ++k) {
    if (!x.e[k]) continue;
    if (!first) os << '*';
    first = false;
    os << 'a' << (k + 1);
    if (x.e[k] > 1) os << '^' << int(x.e[k]);
  }
  if (first) os << '1';
  return os.str();
}

bool PcPresentation::operator==(const PcPresentation& o) const {
  if (n_ != o.n_ || weights_ != o.weights_) return false;
  for (int i = 0; i < n_; ++i) {
    if (!(power(i) == o.power(i))) return false;
    for (int j = i + 1; j < n_; ++j)
      if (!(commutator(j, i) == o.commutator(j, i))) return false;
  }
  return true;
}

}  // namespace hbc

#pragma once

// Collection in weighted power-commutator presentations over F3, optionally
// tracking a central elementary abelian "tail" vector alongside each element.

#include <cstdint>
#include <string>
#include <vector>

#include "hbc/element.hpp"
#include "hbc/f3.hpp"

namespace hbc::detail {

struct NoTail {
  NoTail& operator+=(const NoTail&) { return *this; }
  NoTail operator-() const { return {}; }
  bool is_zero() const { return true; }
  bool operator==(const NoTail&) const = default;
};

// Central tail vector with up to 128 coordinates.
struct TailVec {
  f3::Row lo, hi;

  TailVec& operator+=(const TailVec& b) {
    lo += b.lo;
    hi += b.hi;
    return *this;
  }
  TailVec operator-() const { return {-lo, -hi}; }
  bool is_zero() const { return lo.is_zero() && hi.is_zero(); }
  bool operator==(const TailVec&) const = default;
  int get(int i) const { return i < 64 ? lo.get(i) : hi.get(i - 64); }
  void set(int i, int v) {
    if (i < 64)
      lo.set(i, v);
    else
      hi.set(i - 64, v);
  }
  static constexpr int kMaxLen = 128;
};

template <class Tail>
class Collector {
 public:
  Collector() = default;

  // pow[i] = a_i^3; comm[j*n+i] = [a_j, a_i] for j > i (other entries ignored).
  void init(int n, std::vector<Element> pow, std::vector<Tail> pow_tail,
            std::vector<Element> comm, std::vector<Tail> comm_tail) {
    n_ = n;
    pow_ = std::move(pow);
    pow_t_ = std::move(pow_tail);
    comm_ = std::move(comm);
    comm_t_ = std::move(comm_tail);
    noncomm_.assign(n_, 0);
    conj_.assign(static_cast<std::size_t>(n_) * n_ * 3, Element{});
    conj_t_.assign(conj_.size(), Tail{});
    for (int g = n_ - 1; g >= 0; --g) {
      for (int j = g + 1; j < n_; ++j) {
        const std::size_t c = static_cast<std::size_t>(j) * n_ + g;
        if (!comm_[c].is_identity() || !comm_t_[c].is_zero()) noncomm_[g] |= 1u << j;
        Element c1 = comm_[c];
        c1.e[j] = 1;
        conj_[c * 3 + 1] = c1;
        conj_t_[c * 3 + 1] = comm_t_[c];
        Element c2 = c1;
        Tail t2 = comm_t_[c];
        mul(c2, t2, c1, comm_t_[c]);
        conj_[c * 3 + 2] = c2;
        conj_t_[c * 3 + 2] = t2;
      }
    }
  }

  int n() const { return n_; }
  const Element& pow(int i) const { return pow_[i]; }
  const Tail& pow_tail(int i) const { return pow_t_[i]; }
  const Element& comm(int j, int i) const { return comm_[static_cast<std::size_t>(j) * n_ + i]; }
  const Tail& comm_tail(int j, int i) const {
    return comm_t_[static_cast<std::size_t>(j) * n_ + i];
  }
  bool commutes(int j, int i) const {
    return j > i ? !((noncomm_[i] >> j) & 1u) : (i == j || !((noncomm_[j] >> i) & 1u));
  }

  // x := x * a_g
  void mul_gen(Element& x, Tail& t, int g) const {
    std::uint32_t above = 0;
    for (int j = g + 1; j < n_; ++j)
      if (x.e[j]) above |= 1u << j;
    if ((above & noncomm_[g]) == 0) {
      if (++x.e[g] < 3) return;
      // x_{<g} a_g^3 x_{>g} -> x_{<g} w x_{>g}; w must be collected from the
      // left of x_{>g} since only the defining rewriting rules may be used.
      x.e[g] = 0;
      if (!above) {
        mul(x, t, pow_[g], pow_t_[g]);
        return;
      }
      Element z = pow_[g];
      Tail tz = pow_t_[g];
      Element high{};
      for (int j = g + 1; j < n_; ++j) {
        high.e[j] = x.e[j];
        x.e[j] = 0;
      }
      mul(z, tz, high, Tail{});
      for (int j = g + 1; j < n_; ++j) x.e[j] = z.e[j];
      t += tz;
      return;
    }
    Element v{};
    Tail tv{};
    for (int j = g + 1; j < n_; ++j) {
      if (!x.e[j]) continue;
      const std::size_t c = (static_cast<std::size_t>(j) * n_ + g) * 3 + x.e[j];
      mul(v, tv, conj_[c], conj_t_[c]);
      x.e[j] = 0;
    }
    if (++x.e[g] == 3) {
      x.e[g] = 0;
      Element z = pow_[g];
      Tail tz = pow_t_[g];
      mul(z, tz, v, tv);
      v = z;
      tv = tz;
    }
    for (int j = g + 1; j < n_; ++j) x.e[j] = v.e[j];
    t += tv;
  }

  // x := x * y
  void mul(Element& x, Tail& t, const Element& y, const Tail& ty) const {
    t += ty;
    for (int k = 0; k < n_; ++k) {
      if (!y.e[k]) continue;
      bool free = true;
      for (int j = k; j < n_; ++j)
        if (x.e[j]) {
          free = false;
          break;
        }
      if (free) {
        for (int j = k; j < n_; ++j) x.e[j] = y.e[j];
        return;
      }
      for (int r = 0; r < y.e[k]; ++r) mul_gen(x, t, k);
    }
  }

  void inverse(const Element& x, const Tail& tx, Element& y, Tail& ty) const {
    Element z = x;
    Tail tz = tx;
    y = Element{};
    for (int k = 0; k < n_; ++k) {
      if (!z.e[k]) continue;
      const int e = 3 - z.e[k];
      y.e[k] = static_cast<std::uint8_t>(e);
      for (int r = 0; r < e; ++r) mul_gen(z, tz, k);
    }
    ty = -tz;
  }

  struct Discrepancy {
    std::string test_word;
    Element lhs, rhs;
    Tail lhs_tail, rhs_tail;
  };

  // Evaluates the standard consistency test words; returns the ones whose two
  // collections differ (in the group part or in the tail).
  std::vector<Discrepancy> check(bool all = false) const {
    std::vector<Discrepancy> out;
    auto record = [&](std::string label, const Element& a, const Tail& ta, const Element& b,
                      const Tail& tb) {
      if (all || !(a == b) || !(ta == tb)) out.push_back({std::move(label), a, b, ta, tb});
    };
    auto g = [](int k) { return Element::gen(k); };
    auto name = [](int k) { return "a" + std::to_string(k + 1); };
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < j; ++i) {
          Element l = g(k);
          Tail tl{};
          mul_gen(l, tl, j);
          mul_gen(l, tl, i);
          Element y = g(j);
          Tail ty{};
          mul_gen(y, ty, i);
          Element r = g(k);
          Tail tr{};
          mul(r, tr, y, ty);
          record("(" + name(k) + name(j) + ")" + name(i), l, tl, r, tr);
        }
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < j; ++i) {
        {
          Element l = pow_[j];
          Tail tl = pow_t_[j];
          mul_gen(l, tl, i);
          Element y = g(j);
          Tail ty{};
          mul_gen(y, ty, i);
          Element r = Element::gen(j, 2);
          Tail tr{};
          mul(r, tr, y, ty);
          record("(" + name(j) + "^3)" + name(i), l, tl, r, tr);
        }
        {
          Element l = g(j);
          Tail tl{};
          mul(l, tl, pow_[i], pow_t_[i]);
          Element r = g(j);
          Tail tr{};
          for (int t = 0; t < 3; ++t) mul_gen(r, tr, i);
          record(name(j) + "(" + name(i) + "^3)", l, tl, r, tr);
        }
      }
    for (int i = 0; i < n_; ++i) {
      Element l = g(i);
      Tail tl{};
      mul(l, tl, pow_[i], pow_t_[i]);
      Element r = pow_[i];
      Tail tr = pow_t_[i];
      mul_gen(r, tr, i);
      record(name(i) + "(" + name(i) + "^3)", l, tl, r, tr);
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Element> pow_;
  std::vector<Tail> pow_t_;
  std::vector<Element> comm_;
  std::vector<Tail> comm_t_;
  std::vector<Element> conj_;
  std::vector<Tail> conj_t_;
  std::vector<std::uint32_t> noncomm_;
};

}  // namespace hbc::detail

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hbc {

inline constexpr int kPrime = 3;
inline constexpr int kMaxGens = 32;

// Normal form a_1^{e_1} ... a_n^{e_n}; entries past n are always zero.
struct Element {
  std::array<std::uint8_t, kMaxGens> e{};

  bool operator==(const Element&) const = default;
  auto operator<=>(const Element&) const = default;

  bool is_identity() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }
  // Index of the first nonzero exponent, or -1 for the identity.
  int lead() const {
    for (int k = 0; k < kMaxGens; ++k)
      if (e[k]) return k;
    return -1;
  }
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (int k = 0; k < kMaxGens; ++k)
      if (e[k]) s |= 1u << k;
    return s;
  }
  static Element gen(int k, int exp = 1) {
    Element x;
    x.e[k] = static_cast<std::uint8_t>(exp % 3);
    return x;
  }
};

struct ElementHash {
  std::size_t operator()(const Element& x) const noexcept {
    std::uint64_t lo = 0;
    for (int k = 0; k < 32; ++k) lo |= std::uint64_t{x.e[k]} << (2 * k);
    lo ^= lo >> 33;
    lo *= 0xff51afd7ed558ccdULL;
    lo ^= lo >> 33;
    return static_cast<std::size_t>(lo);
  }
};

// A word as a sequence of (generator index from 0, exponent) pairs.
using Word = std::vector<std::pair<int, int>>;

}  // namespace hbc

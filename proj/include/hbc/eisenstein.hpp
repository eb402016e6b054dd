#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hbc/pcgroup.hpp"

namespace hbc::eis {

using Int = boost::multiprecision::cpp_int;

// Raised for moduli outside the supported residue classes (inert or
// ramified primes, composite q).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// a + b w with w^2 + w + 1 = 0.
struct EisensteinInt {
  Int a = 0;
  Int b = 0;

  EisensteinInt() = default;
  EisensteinInt(Int a_, Int b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}

  Int norm() const { return a * a - a * b + b * b; }
  EisensteinInt conj() const { return {a - b, -b}; }
  bool is_zero() const { return a == 0 && b == 0; }

  friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) { return {x.a + y.a, x.b + y.b}; }
  friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) { return {x.a - y.a, x.b - y.b}; }
  friend EisensteinInt operator-(const EisensteinInt& x) { return {-x.a, -x.b}; }
  friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    // w^2 = -1 - w
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  bool operator==(const EisensteinInt&) const = default;
  std::string to_string() const;
};

inline const EisensteinInt kOmega{0, 1};

// Quotient rounded to the nearest lattice point; the remainder has smaller norm.
std::pair<EisensteinInt, EisensteinInt> divmod(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt gcd(EisensteinInt x, EisensteinInt y);
// x = 2 mod 3 in Z[w], i.e. a = 2, b = 0 mod 3.
bool is_primary(const EisensteinInt& x);

// Rational helpers.
Int mod(const Int& a, const Int& m);
Int powmod(Int base, Int exp, const Int& m);
bool is_prime(std::uint64_t n);
// Prime factorization by trial division, ascending.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n);
// Square root of a quadratic residue modulo an odd prime.
Int sqrt_mod(const Int& a, const Int& p);

// a^((q-1)/3) = 1 mod q. Throws DomainError unless q is a prime = 1 mod 3,
// and when q divides a.
bool is_cubic_residue(const Int& a, const Int& q);

// The primary prime of norm q (q prime, q = 1 mod 3); of the two conjugate
// primary primes, the one with b > 0.
EisensteinInt primary_prime_above(const Int& q);

// Value of the cubic residue symbol: w^k, or zero when pi divides the argument.
enum class CubicSymbolValue { Unit0 = 0, Unit1 = 1, Unit2 = 2, Zero = 3 };
int exponent(CubicSymbolValue v);  // k for w^k; -1 for Zero
CubicSymbolValue cubic_symbol(const EisensteinInt& alpha, const EisensteinInt& pi);
CubicSymbolValue cubic_symbol(const Int& a, const EisensteinInt& pi);

// 4p = L^2 + 27 M^2 with L = 1 mod 3 and M > 0.
struct FourP {
  long long L = 0;
  long long M = 0;
};
FourP four_p_decomposition(long long p);

}  // namespace hbc::eis

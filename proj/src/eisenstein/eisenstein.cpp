#include "hbc/eisenstein.hpp"

#include <cmath>
#include <limits>

namespace hbc::eis {

namespace {

// Nearest integer to n/d for d > 0.
Int round_div(const Int& n, const Int& d) {
  Int q = n / d, r = n % d;
  if (r < 0) {
    q -= 1;
    r += d;
  }
  if (2 * r >= d) q += 1;
  return q;
}

void require_split_prime(const Int& q) {
  if (q < 2 || q > Int(std::numeric_limits<std::uint64_t>::max()) || !is_prime(static_cast<std::uint64_t>(q)))
    throw DomainError("modulus " + q.str() + " is not a prime");
  if (q == 3) throw DomainError("3 is ramified in Z[w]");
  if (q % 3 != 1) throw DomainError("prime " + q.str() + " is inert in Z[w] (not 1 mod 3)");
}

}  // namespace

std::string EisensteinInt::to_string() const {
  if (b == 0) return a.str();
  std::string s = a == 0 ? "" : a.str();
  if (b < 0) s += "-";
  else if (a != 0) s += "+";
  const Int m = b < 0 ? Int(-b) : b;
  if (m != 1) s += m.str();
  return s + "w";
}

std::pair<EisensteinInt, EisensteinInt> divmod(const EisensteinInt& x, const EisensteinInt& y) {
  if (y.is_zero()) throw InputError("division by zero in Z[w]");
  // x / y = x * conj(y) / N(y)
  const EisensteinInt num = x * y.conj();
  const Int n = y.norm();
  EisensteinInt best;
  Int best_norm = -1;
  const Int qa = round_div(num.a, n), qb = round_div(num.b, n);
  // The rounded point can miss the nearest one on the hexagonal lattice.
  for (int da = -1; da <= 1; ++da)
    for (int db = -1; db <= 1; ++db) {
      const EisensteinInt q{qa + da, qb + db};
      const EisensteinInt r = x - q * y;
      const Int rn = r.norm();
      if (best_norm < 0 || rn < best_norm) {
        best_norm = rn;
        best = q;
      }
    }
  return {best, x - best * y};
}

EisensteinInt gcd(EisensteinInt x, EisensteinInt y) {
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

bool is_primary(const EisensteinInt& x) { return mod(x.a, 3) == 2 && mod(x.b, 3) == 0; }

Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int powmod(Int base, Int exp, const Int& m) {
  Int result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  using u128 = unsigned __int128;
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>(u128(a) * b % n); };
  auto pw = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  // Deterministic for 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pw(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

Int sqrt_mod(const Int& a0, const Int& p) {
  const Int a = mod(a0, p);
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) throw DomainError(a.str() + " is not a square modulo " + p.str());
  // Tonelli-Shanks.
  Int q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Int z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  Int m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    int i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (int k = 0; k < static_cast<int>(m) - i - 1; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

bool is_cubic_residue(const Int& a, const Int& q) {
  require_split_prime(q);
  if (mod(a, q) == 0) throw DomainError(q.str() + " divides " + a.str() + " (zero class)");
  return powmod(a, (q - 1) / 3, q) == 1;
}

EisensteinInt primary_prime_above(const Int& q) {
  require_split_prime(q);
  // sqrt(-3) = 1 + 2w, so w = (s - 1)/2 mod a prime above q.
  const Int s = sqrt_mod(-3, q);
  const Int r = mod((s - 1) * ((q + 1) / 2), q);
  EisensteinInt pi = gcd(EisensteinInt{q, 0}, EisensteinInt{-r, 1});
  if (pi.norm() != q) throw std::logic_error("prime above " + q.str() + " not found");
  // Exactly one of the six associates is primary.
  const EisensteinInt units[6] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}};
  for (const auto& u : units) {
    const EisensteinInt c = pi * u;
    if (!is_primary(c)) continue;
    // The conjugate is primary as well; return the member with b > 0.
    return c.b > 0 ? c : c.conj();
  }
  throw std::logic_error("no primary associate");
}

int exponent(CubicSymbolValue v) { return v == CubicSymbolValue::Zero ? -1 : static_cast<int>(v); }

CubicSymbolValue cubic_symbol(const EisensteinInt& alpha, const EisensteinInt& pi) {
  const Int q = pi.norm();
  require_split_prime(q);
  // Z[w]/pi = F_q with w -> r, where pi | (w - r): r = -a/b for pi = a + b w.
  if (mod(pi.b, q) == 0) throw DomainError("not a prime of degree one");
  const Int binv = powmod(pi.b, q - 2, q);
  const Int r = mod(-pi.a * binv, q);
  const Int x = mod(alpha.a + alpha.b * r, q);
  if (x == 0) return CubicSymbolValue::Zero;
  const Int v = powmod(x, (q - 1) / 3, q);
  if (v == 1) return CubicSymbolValue::Unit0;
  if (v == r) return CubicSymbolValue::Unit1;
  if (v == r * r % q) return CubicSymbolValue::Unit2;
  throw std::logic_error("cubic symbol outside the units");
}

CubicSymbolValue cubic_symbol(const Int& a, const EisensteinInt& pi) { return cubic_symbol(EisensteinInt{a, 0}, pi); }

FourP four_p_decomposition(long long p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw DomainError(std::to_string(p) + " is not a prime");
  if (p % 3 != 1) throw DomainError(std::to_string(p) + " is not 1 mod 3");
  for (long long M = 1; 27 * M * M < 4 * p; ++M) {
    const long long rest = 4 * p - 27 * M * M;
    long long L = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(rest))));
    while (L * L > rest) --L;
    while ((L + 1) * (L + 1) <= rest) ++L;
    if (L * L != rest) continue;
    if (((L % 3) + 3) % 3 != 1) L = -L;
    return {L, M};
  }
  throw std::logic_error("no decomposition 4p = L^2 + 27 M^2");
}

}  // namespace hbc::eis

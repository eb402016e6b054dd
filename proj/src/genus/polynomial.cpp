#include <mpfr.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

#include "hbc/genus.hpp"

namespace hbc::genus {

namespace {

using eis::Int;
using Rational = boost::multiprecision::cpp_rational;

class Real {
 public:
  explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Real periods sum_{x : chi(x) = t} cos(2 pi x / q) of the cubic character
// of a single component, indexed by t.
std::array<Real, 3> component_periods(long long q, mpfr_prec_t bits) {
  std::array<Real, 3> eta{Real(bits), Real(bits), Real(bits)};
  Real angle(bits), c(bits), twopi_q(bits);
  mpfr_const_pi(twopi_q.get(), MPFR_RNDN);
  mpfr_mul_ui(twopi_q.get(), twopi_q.get(), 2, MPFR_RNDN);
  mpfr_div_ui(twopi_q.get(), twopi_q.get(), static_cast<unsigned long>(q), MPFR_RNDN);
  // Walk the powers of the least primitive root, whose character value is 1.
  const long long g = q == 9 ? 2 : least_primitive_root(q);
  long long x = 1;
  for (long long k = 0; k < (q == 9 ? 6 : q - 1); ++k, x = x * g % q) {
    const int t = static_cast<int>(k % 3);
    mpfr_mul_ui(angle.get(), twopi_q.get(), static_cast<unsigned long>(x), MPFR_RNDN);
    mpfr_cos(c.get(), angle.get(), MPFR_RNDN);
    mpfr_add(eta[t].get(), eta[t].get(), c.get(), MPFR_RNDN);
  }
  return eta;
}

Int round_to_int(const Real& x) {
  char* s = nullptr;
  Real r(mpfr_get_prec(x.get()));
  mpfr_round(r.get(), x.get());
  mpfr_asprintf(&s, "%.0Rf", r.get());
  Int out(s);
  mpfr_free_str(s);
  return out;
}

// |x - round(x)| as a double.
double rounding_error(const Real& x) {
  Real r(mpfr_get_prec(x.get()));
  mpfr_round(r.get(), x.get());
  mpfr_sub(r.get(), x.get(), r.get(), MPFR_RNDN);
  return std::fabs(mpfr_get_d(r.get(), MPFR_RNDN));
}

bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  const Int r = boost::multiprecision::sqrt(n);
  if (root) *root = r;
  return r * r == n;
}

// ---- maximal order by enlargement --------------------------------------

using Vec3 = std::array<Rational, 3>;
using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

// Whether c0 + c1 t + c2 t^2 is integral, t a root of f: its characteristic
// polynomial (that of the multiplication matrix) must have integer coefficients.
bool integral(const Cubic& f, const Vec3& c) {
  Mat3 C{};  // multiplication by t on the basis 1, t, t^2 (columns = images)
  C[1][0] = 1;
  C[2][1] = 1;
  C[0][2] = Rational(-f.c[0]);
  C[1][2] = Rational(-f.c[1]);
  C[2][2] = Rational(-f.c[2]);
  const Mat3 C2 = mat_mul(C, C);
  Mat3 M{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = c[1] * C[i][j] + c[2] * C2[i][j] + (i == j ? c[0] : Rational(0));
  const Rational tr = M[0][0] + M[1][1] + M[2][2];
  const Mat3 M2 = mat_mul(M, M);
  const Rational s2 = (tr * tr - (M2[0][0] + M2[1][1] + M2[2][2])) / 2;
  const Rational det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                       M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                       M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  return is_integer(tr) && is_integer(s2) && is_integer(det);
}

// Hermite normal form of integer rows spanning a rank-3 lattice.
std::vector<std::array<Int, 3>> hnf(std::vector<std::array<Int, 3>> rows) {
  std::vector<std::array<Int, 3>> out;
  for (int col = 0; col < 3; ++col) {
    // Euclid on column col among the remaining rows.
    while (true) {
      int piv = -1;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        if (rows[r][col] != 0 && (piv < 0 || abs(rows[r][col]) < abs(rows[piv][col]))) piv = r;
      if (piv < 0) throw std::logic_error("order basis lost rank");
      bool done = true;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == piv || rows[r][col] == 0) continue;
        const Int q = rows[r][col] / rows[piv][col];
        for (int k = 0; k < 3; ++k) rows[r][k] -= q * rows[piv][k];
        if (rows[r][col] != 0) done = false;
      }
      if (done) {
        auto p = rows[piv];
        if (p[col] < 0)
          for (auto& x : p) x = -x;
        out.push_back(p);
        rows.erase(rows.begin() + piv);
        break;
      }
    }
  }
  return out;
}

std::vector<Int> square_divisor_primes(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  for (unsigned long p = 2; p < 1000000 && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e >= 2) out.push_back(p);
  }
  // A leftover square of a large prime.
  Int r;
  if (n > 1 && is_square(n, &r) && r > 1) out.push_back(r);
  return out;
}

}  // namespace

Int Cubic::discriminant() const {
  const Int &b = c[2], &cc = c[1], &d = c[0];
  return b * b * cc * cc - 4 * cc * cc * cc - 4 * b * b * b * d - 27 * d * d + 18 * b * cc * d;
}

Int Cubic::eval(const Int& x) const { return ((x + c[2]) * x + c[1]) * x + c[0]; }

std::string Cubic::to_string() const {
  std::ostringstream os;
  os << "x^3";
  const char* mon[3] = {"", "*x", "*x^2"};
  for (int k = 2; k >= 0; --k) {
    if (c[k] == 0) continue;
    const Int m = c[k] < 0 ? Int(-c[k]) : c[k];
    os << (c[k] < 0 ? " - " : " + ");
    if (m != 1 || k == 0) os << m << mon[k];
    else os << (k == 2 ? "x^2" : "x");
  }
  return os.str();
}

Int field_discriminant(const Cubic& f) {
  const Int D = f.discriminant();
  if (D == 0) throw InputError("polynomial has a repeated root");
  // Order basis as integer rows over a common denominator.
  std::vector<std::array<Int, 3>> B = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Int den = 1;
  Int disc = D;
  for (const Int& p : square_divisor_primes(D)) {
    if (p > 30000) throw InputError("index prime " + p.str() + " too large for the order enlargement search");
    const long pl = static_cast<long>(p);
    bool grew = true;
    while (grew && disc % (p * p) == 0) {
      grew = false;
      // Candidates (a0 b0 + a1 b1 + a2 b2)/p up to scalars: first nonzero a_i = 1.
      // Their trace must be an integer; trace(t) = -c2, trace(t^2) = c2^2 - 2 c1.
      const Int m = den * p;
      const Int t1 = -f.c[2], t2 = f.c[2] * f.c[2] - 2 * f.c[1];
      std::array<long long, 3> tr{};
      for (int i = 0; i < 3; ++i)
        tr[i] = static_cast<long long>(eis::mod(3 * B[i][0] + B[i][1] * t1 + B[i][2] * t2, m));
      const long long ml = static_cast<long long>(m);
      for (int lead = 0; lead < 3 && !grew; ++lead) {
        const long n1 = lead < 1 ? pl : 1, n2 = lead < 2 ? pl : 1;
        for (long x1 = 0; x1 < n1 && !grew; ++x1)
          for (long x2 = 0; x2 < n2 && !grew; ++x2) {
            std::array<long, 3> a{0, 0, 0};
            a[lead] = 1;
            if (lead < 1) a[1] = x1;
            if (lead < 2) a[2] = x2;
            const __int128 trace = __int128(a[0]) * tr[0] + __int128(a[1]) * tr[1] + __int128(a[2]) * tr[2];
            if (trace % ml != 0) continue;
            std::array<Int, 3> num{0, 0, 0};
            for (int i = 0; i < 3; ++i)
              for (int k = 0; k < 3; ++k) num[k] += a[i] * B[i][k];
            Vec3 c;
            for (int k = 0; k < 3; ++k) c[k] = Rational(num[k], den * p);
            if (!integral(f, c)) continue;
            std::vector<std::array<Int, 3>> rows;
            for (auto r : B) {
              for (auto& x : r) x *= p;
              rows.push_back(r);
            }
            rows.push_back(num);
            B = hnf(rows);
            den *= p;
            Int g = den;
            for (const auto& r : B)
              for (const auto& x : r) g = gcd(g, x);
            for (auto& r : B)
              for (auto& x : r) x /= g;
            den /= g;
            disc /= p * p;
            grew = true;
          }
      }
    }
  }
  // disc(O) = D * (det B / den^3)^2
  const Int det = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) - B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                  B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
  const Rational check = Rational(D) * Rational(det * det, den * den * den * den * den * den);
  if (check != Rational(disc)) throw std::logic_error("order discriminant bookkeeping mismatch");
  return disc;
}

PolynomialResult defining_polynomial(const std::vector<long long>& components, const std::vector<int>& exponents) {
  if (components.size() != exponents.size() || components.empty())
    throw InputError("components and exponents must have the same nonzero length");
  std::vector<long long> qs;
  std::vector<int> es;
  long long f = 1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!admissible_component(components[i]))
      throw InputError(std::to_string(components[i]) + " is not a conductor component");
    const int e = ((exponents[i] % 3) + 3) % 3;
    if (e == 0) continue;
    if (std::find(qs.begin(), qs.end(), components[i]) != qs.end()) throw InputError("repeated component");
    qs.push_back(components[i]);
    es.push_back(e);
    f *= components[i];
  }
  if (qs.empty()) throw InputError("trivial character");

  for (int digits = 40; digits <= 640; digits *= 2) {
    const mpfr_prec_t bits = static_cast<mpfr_prec_t>(digits * 3.33) + 16;
    // theta_u = sum over (t_i) with sum e_i t_i = u of prod eta^(i)_{t_i}.
    std::array<Real, 3> theta{Real(bits), Real(bits), Real(bits)};
    {
      const auto eta = component_periods(qs[0], bits);
      for (int t = 0; t < 3; ++t) theta[(es[0] * t) % 3] = eta[t];
    }
    for (std::size_t i = 1; i < qs.size(); ++i) {
      const auto eta = component_periods(qs[i], bits);
      std::array<Real, 3> next{Real(bits), Real(bits), Real(bits)};
      Real prod(bits);
      for (int u = 0; u < 3; ++u)
        for (int t = 0; t < 3; ++t) {
          mpfr_mul(prod.get(), theta[u].get(), eta[t].get(), MPFR_RNDN);
          auto& dst = next[(u + es[i] * t) % 3];
          mpfr_add(dst.get(), dst.get(), prod.get(), MPFR_RNDN);
        }
      theta = next;
    }
    Real e1(bits), e2(bits), e3(bits), tmp(bits);
    mpfr_add(e1.get(), theta[0].get(), theta[1].get(), MPFR_RNDN);
    mpfr_add(e1.get(), e1.get(), theta[2].get(), MPFR_RNDN);
    for (int u = 0; u < 3; ++u) {
      mpfr_mul(tmp.get(), theta[u].get(), theta[(u + 1) % 3].get(), MPFR_RNDN);
      mpfr_add(e2.get(), e2.get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_mul(e3.get(), theta[0].get(), theta[1].get(), MPFR_RNDN);
    mpfr_mul(e3.get(), e3.get(), theta[2].get(), MPFR_RNDN);
    const double tol = std::pow(10.0, -digits / 4.0);
    if (rounding_error(e1) > tol || rounding_error(e2) > tol || rounding_error(e3) > tol) continue;

    PolynomialResult res;
    res.conductor = f;
    res.digits = digits;
    res.poly.c = {-round_to_int(e3), round_to_int(e2), -round_to_int(e1)};
    res.poly_discriminant = res.poly.discriminant();
    if (res.poly_discriminant <= 0) continue;
    res.irreducible = true;
    for (const auto& th : theta)
      if (res.poly.eval(round_to_int(th)) == 0) res.irreducible = false;
    if (!res.irreducible) continue;
    res.cyclic = is_square(res.poly_discriminant);
    if (!res.cyclic) continue;
    res.field_discriminant = field_discriminant(res.poly);
    if (res.field_discriminant != Int(f) * f) continue;
    return res;
  }
  throw std::runtime_error("period polynomial for conductor " + std::to_string(f) +
                           " failed validation up to 640 digits");
}

PolynomialResult line_polynomial(const GenusLattice& lat, int line) {
  if (line < 0 || line >= static_cast<int>(lat.lines.size())) throw InputError("line index out of range");
  const auto& v = lat.lines[line].v;
  return defining_polynomial({lat.triple.q[0], lat.triple.q[1], lat.triple.q[2]}, {v.get(0), v.get(1), v.get(2)});
}

}  // namespace hbc::genus

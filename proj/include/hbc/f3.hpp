#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hbc::f3 {

inline constexpr int add(int a, int b) { return (a + b) % 3; }
inline constexpr int sub(int a, int b) { return (a + 3 - b) % 3; }
inline constexpr int mul(int a, int b) { return (a * b) % 3; }
inline constexpr int neg(int a) { return (3 - a) % 3; }
// 1 and 2 are self-inverse in F3.
inline constexpr int inv(int a) { return a; }

// Vector over F3 with at most 64 coordinates. Bit i of `one` (resp. `two`)
// is set when coordinate i equals 1 (resp. 2).
struct Row {
  std::uint64_t one = 0;
  std::uint64_t two = 0;

  static constexpr int kMaxLen = 64;

  int get(int i) const {
    return ((one >> i) & 1u) ? 1 : (((two >> i) & 1u) ? 2 : 0);
  }
  void set(int i, int v) {
    const std::uint64_t b = std::uint64_t{1} << i;
    one &= ~b;
    two &= ~b;
    v = ((v % 3) + 3) % 3;
    if (v == 1) one |= b;
    if (v == 2) two |= b;
  }
  bool is_zero() const { return (one | two) == 0; }
  std::uint64_t support() const { return one | two; }
  int lead() const { return is_zero() ? -1 : std::countr_zero(one | two); }

  Row operator-() const { return Row{two, one}; }
  Row operator+(const Row& b) const {
    const std::uint64_t za = ~(one | two), zb = ~(b.one | b.two);
    return Row{(one & zb) | (b.one & za) | (two & b.two),
               (two & zb) | (b.two & za) | (one & b.one)};
  }
  Row operator-(const Row& b) const { return *this + (-b); }
  Row& operator+=(const Row& b) { return *this = *this + b; }
  Row& operator-=(const Row& b) { return *this = *this - b; }
  Row scaled(int c) const {
    c %= 3;
    if (c == 0) return Row{};
    return c == 1 ? *this : -*this;
  }
  bool operator==(const Row&) const = default;
  bool operator<(const Row& b) const {
    return one != b.one ? one < b.one : two < b.two;
  }

  static Row unit(int i) {
    Row r;
    r.set(i, 1);
    return r;
  }
};

inline int dot(const Row& a, const Row& b) {
  const int ones = std::popcount((a.one & b.one) | (a.two & b.two));
  const int twos = std::popcount((a.one & b.two) | (a.two & b.one));
  return (ones + 2 * twos) % 3;
}

// Dense matrix over F3, row-major, at most 64 columns. Acts on column vectors.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Row> r;

  Matrix() = default;
  Matrix(int nr, int nc) : rows(nr), cols(nc), r(nr) {}

  static Matrix identity(int n);

  int get(int i, int j) const { return r[i].get(j); }
  void set(int i, int j, int v) { r[i].set(j, v); }

  Matrix operator*(const Matrix& b) const;
  Row apply(const Row& col) const;           // A x
  Row apply_left(const Row& row) const;      // x A
  Matrix transpose() const;
  bool operator==(const Matrix&) const = default;
  bool is_identity() const;

  std::string to_string() const;
};

// Reduced row echelon form in place; pivots are searched in the column order
// given by `col_order` (all columns in natural order when empty). Returns the
// pivot column of each nonzero row; zero rows are removed.
std::vector<int> rref(std::vector<Row>& rows, int ncols,
                      const std::vector<int>& col_order = {});

int rank(std::vector<Row> rows, int ncols);

// Inverse of a square matrix; throws std::domain_error if singular.
Matrix inverse(const Matrix& a);

// Basis of {x : A x = 0} as rows.
std::vector<Row> kernel(const Matrix& a);

// Basis of the annihilator {f : f(v) = 0 for all v in span(rows)} in F3^n.
std::vector<Row> annihilator(const std::vector<Row>& rows, int n);

// Reduces v against an echelonized basis (rows with pivots as returned by rref).
Row reduce(Row v, const std::vector<Row>& basis, const std::vector<int>& pivots);

bool in_span(const Row& v, const std::vector<Row>& basis,
             const std::vector<int>& pivots);

// Number of k-dimensional subspaces of F3^n.
std::uint64_t gaussian_binomial(int n, int k);

}  // namespace hbc::f3

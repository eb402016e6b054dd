#include "hbc/f3.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hbc::f3 {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::operator*(const Matrix& b) const {
  Matrix c(rows, b.cols);
  for (int i = 0; i < rows; ++i) {
    Row acc;
    std::uint64_t s = r[i].support();
    while (s) {
      const int k = std::countr_zero(s);
      s &= s - 1;
      acc += b.r[k].scaled(r[i].get(k));
    }
    c.r[i] = acc;
  }
  return c;
}

Row Matrix::apply(const Row& col) const {
  Row out;
  for (int i = 0; i < rows; ++i) out.set(i, dot(r[i], col));
  return out;
}

Row Matrix::apply_left(const Row& row) const {
  Row acc;
  std::uint64_t s = row.support();
  while (s) {
    const int k = std::countr_zero(s);
    s &= s - 1;
    acc += r[k].scaled(row.get(k));
  }
  return acc;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.set(j, i, get(i, j));
  return t;
}

bool Matrix::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    if (!(r[i] == Row::unit(i))) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) os << get(i, j);
    if (i + 1 < rows) os << '/';
  }
  return os.str();
}

std::vector<int> rref(std::vector<Row>& rows, int ncols,
                      const std::vector<int>& col_order) {
  std::vector<int> order = col_order;
  if (order.empty()) {
    order.resize(ncols);
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<int> pivots;
  std::size_t top = 0;
  for (int c : order) {
    if (top == rows.size()) break;
    std::size_t p = top;
    while (p < rows.size() && rows[p].get(c) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[top], rows[p]);
    rows[top] = rows[top].scaled(inv(rows[top].get(c)));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == top) continue;
      const int v = rows[i].get(c);
      if (v) rows[i] -= rows[top].scaled(v);
    }
    pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  return pivots;
}

int rank(std::vector<Row> rows, int ncols) {
  return static_cast<int>(rref(rows, ncols).size());
}

Matrix inverse(const Matrix& a) {
  const int n = a.rows;
  if (a.cols != n) throw std::domain_error("inverse of non-square matrix");
  // Augment [A | I] using 2n columns.
  if (2 * n > Row::kMaxLen) throw std::domain_error("matrix too large");
  std::vector<Row> aug(n);
  for (int i = 0; i < n; ++i) {
    aug[i] = a.r[i];
    aug[i].set(n + i, 1);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto piv = rref(aug, 2 * n, order);
  if (static_cast<int>(piv.size()) != n) throw std::domain_error("singular matrix");
  Matrix inv_m(n, n);
  for (int i = 0; i < n; ++i) {
    Row row;
    row.one = aug[i].one >> n;
    row.two = aug[i].two >> n;
    inv_m.r[piv[i]] = row;
  }
  return inv_m;
}

std::vector<Row> kernel(const Matrix& a) {
  std::vector<Row> rows = a.r;
  auto piv = rref(rows, a.cols);
  std::vector<bool> is_piv(a.cols, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Row> basis;
  for (int f = 0; f < a.cols; ++f) {
    if (is_piv[f]) continue;
    Row v;
    v.set(f, 1);
    for (std::size_t i = 0; i < rows.size(); ++i) v.set(piv[i], neg(rows[i].get(f)));
    basis.push_back(v);
  }
  return basis;
}

std::vector<Row> annihilator(const std::vector<Row>& rows, int n) {
  Matrix m(static_cast<int>(rows.size()), n);
  m.r = rows;
  return kernel(m);
}

Row reduce(Row v, const std::vector<Row>& basis, const std::vector<int>& pivots) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int c = v.get(pivots[i]);
    if (c) v -= basis[i].scaled(c);
  }
  return v;
}

bool in_span(const Row& v, const std::vector<Row>& basis,
             const std::vector<int>& pivots) {
  return reduce(v, basis, pivots).is_zero();
}

std::uint64_t gaussian_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  // [n,k] = [n-1,k-1] + 3^k [n-1,k], saturating at UINT64_MAX.
  constexpr std::uint64_t kMax = ~std::uint64_t{0};
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      unsigned __int128 v = row[j];
      for (int t = 0; t < j && v < kMax; ++t) v *= 3;
      v += row[j - 1];
      row[j] = v > kMax ? kMax : static_cast<std::uint64_t>(v);
    }
  }
  return row[k];
}

}  // namespace hbc::f3

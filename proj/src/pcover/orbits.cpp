#include <algorithm>
#include <deque>

#include "hbc/pcover.hpp"

namespace hbc {

namespace {

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / 3) throw BudgetExceeded("allowable subgroup count overflows");
    r *= 3;
  }
  return r;
}

void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int c = start; c < n; ++c) {
    cur.push_back(c);
    combinations(n, k, c + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

AllowableSpace::AllowableSpace(const CoverData& cd, int step) : mu_(cd.mu), nu_(cd.nu), s_(step) {
  if (s_ < 1 || s_ > nu_) throw std::logic_error("step size outside 1..nu");
  // Adapted basis: unit vectors completing the nucleus, then the nucleus basis.
  std::vector<f3::Row> nuc = cd.nucleus;
  const auto piv = f3::rref(nuc, mu_);
  std::vector<bool> is_piv(mu_, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<f3::Row> cols;
  for (int k = 0; k < mu_; ++k)
    if (!is_piv[k]) cols.push_back(f3::Row::unit(k));
  for (const auto& v : nuc) cols.push_back(v);
  p_ = f3::Matrix(mu_, mu_);
  for (int c = 0; c < mu_; ++c)
    for (int r = 0; r < mu_; ++r) p_.set(r, c, cols[c].get(r));
  p_inv_ = f3::inverse(p_);

  x_block_ = pow3(s_ * (mu_ - nu_));
  std::vector<std::vector<int>> combos;
  std::vector<int> cur;
  combinations(nu_, s_, 0, cur, combos);
  std::uint64_t total = 0;
  for (auto& pv : combos) {
    int free = 0;
    for (int i = 0; i < s_; ++i)
      for (int c = pv[i] + 1; c < nu_; ++c)
        if (std::find(pv.begin(), pv.end(), c) == pv.end()) ++free;
    sets_.push_back({pv, free, total});
    total += pow3(free);
  }
  if (total > (std::uint64_t{1} << 62) / x_block_) throw BudgetExceeded("allowable subgroup count overflows");
  count_ = total * x_block_;
}

std::vector<f3::Row> AllowableSpace::unrank(std::uint64_t idx) const {
  const int cx = mu_ - nu_;
  std::uint64_t xv = idx % x_block_, yv = idx / x_block_;
  std::size_t k = sets_.size() - 1;
  while (sets_[k].offset > yv) --k;
  const auto& ps = sets_[k];
  yv -= ps.offset;
  std::vector<f3::Row> rows(s_);
  for (int i = 0; i < s_; ++i) {
    rows[i].set(cx + ps.pivots[i], 1);
    for (int c = ps.pivots[i] + 1; c < nu_; ++c) {
      if (std::find(ps.pivots.begin(), ps.pivots.end(), c) != ps.pivots.end()) continue;
      rows[i].set(cx + c, static_cast<int>(yv % 3));
      yv /= 3;
    }
  }
  for (int i = 0; i < s_; ++i)
    for (int c = 0; c < cx; ++c) {
      rows[i].set(c, static_cast<int>(xv % 3));
      xv /= 3;
    }
  return rows;
}

std::uint64_t AllowableSpace::rank(std::vector<f3::Row> rows) const {
  const int cx = mu_ - nu_;
  std::vector<int> order;
  for (int c = cx; c < mu_; ++c) order.push_back(c);
  for (int c = 0; c < cx; ++c) order.push_back(c);
  const auto piv = f3::rref(rows, mu_, order);
  if (static_cast<int>(piv.size()) != s_) throw std::logic_error("annihilator has wrong rank");
  std::vector<int> pv;
  for (int p : piv) {
    if (p < cx) throw std::logic_error("subgroup does not supplement the nucleus");
    pv.push_back(p - cx);
  }
  // rref returns rows ordered by pivot position in `order`, i.e. increasing.
  std::size_t k = 0;
  while (sets_[k].pivots != pv) ++k;
  std::uint64_t yv = 0, mul = 1;
  for (int i = 0; i < s_; ++i)
    for (int c = pv[i] + 1; c < nu_; ++c) {
      if (std::find(pv.begin(), pv.end(), c) != pv.end()) continue;
      yv += mul * rows[i].get(cx + c);
      mul *= 3;
    }
  std::uint64_t xv = 0;
  mul = 1;
  for (int i = 0; i < s_; ++i)
    for (int c = 0; c < cx; ++c) {
      xv += mul * rows[i].get(c);
      mul *= 3;
    }
  return (sets_[k].offset + yv) * x_block_ + xv;
}

f3::Matrix AllowableSpace::row_action(const f3::Matrix& a) const {
  return f3::inverse(p_inv_ * a * p_);
}

std::vector<f3::Row> AllowableSpace::original_annihilator(std::uint64_t idx) const {
  std::vector<f3::Row> rows = unrank(idx);
  for (auto& r : rows) r = p_inv_.apply_left(r);
  return rows;
}

std::vector<OrbitRep> allowable_orbits(const AllowableSpace& space, const std::vector<f3::Matrix>& row_actions,
                                       std::uint64_t budget) {
  const std::uint64_t total = space.count();
  if (total > budget)
    throw BudgetExceeded("step " + std::to_string(space.step()) + " has " + std::to_string(total) +
                         " allowable subgroups, above the budget of " + std::to_string(budget));
  std::vector<bool> seen(total, false);
  std::vector<OrbitRep> out;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    queue.assign(1, start);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const auto rows = space.unrank(queue[q]);
      for (const auto& b : row_actions) {
        std::vector<f3::Row> img(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) img[i] = b.apply_left(rows[i]);
        const std::uint64_t y = space.rank(std::move(img));
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
    out.push_back({start, queue.size()});
  }
  return out;
}

}  // namespace hbc
